#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edvw/splitting.hpp"

namespace edvw {

/// Contents of a hypergraph text file:
///
///   H <N> <E>
///   e <kappa|-> v:gamma v:gamma ...     (E lines; '-' derives kappa)
///   mu <v> <w>                          (optional; all N or none)
///   label <v> <class>                   (optional)
///
/// Blank lines and lines starting with '#' are ignored.
struct HypergraphFile {
  RawHypergraph raw;
  std::map<int, int> labels;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// gamma rounded to the nearest multiple of 2^-20.
double quantize_gamma(double gamma);

/// Parses and validates; gamma values are quantized on the way in.
HypergraphFile parse_hypergraph_file(std::string_view text);

std::string serialize_hypergraph_file(const HypergraphFile& file);

HypergraphFile read_hypergraph_file(const std::string& path);
void write_hypergraph_file(const std::string& path, const HypergraphFile& file);

/// Raises every gamma to the power alpha (alpha = 0 gives unit weights).
/// Explicit kappa and mu are kept; derived ones stay derived.
RawHypergraph apply_alpha(const RawHypergraph& raw, double alpha);

/// Labels as a dense vector, -1 where a vertex has none.
std::vector<int> label_vector(const HypergraphFile& file);

bool operator==(const RawHyperedge& a, const RawHyperedge& b);
bool operator==(const RawHypergraph& a, const RawHypergraph& b);

}  // namespace edvw
