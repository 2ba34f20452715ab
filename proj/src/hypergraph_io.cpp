#include "edvw/hypergraph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "edvw/format.hpp"
#include "edvw/tolerances.hpp"

namespace edvw {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

double quantize_gamma(double gamma) {
  return std::round(gamma * tol::kGammaDenominator) / tol::kGammaDenominator;
}

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
  }
  return out;
}

class LineParser {
 public:
  explicit LineParser(int line) : line_(line) {}

  [[noreturn]] void fail(int column, const std::string& message) const {
    throw ParseError(line_, column, message);
  }

  long long integer(std::string_view text, int column) const {
    long long value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(column, "expected an integer, got '" + std::string(text) + "'");
    }
    return value;
  }

  double real(std::string_view text, int column) const {
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() ||
        !std::isfinite(value)) {
      fail(column, "expected a number, got '" + std::string(text) + "'");
    }
    return value;
  }

  int vertex(std::string_view text, int column, int n) const {
    const long long v = integer(text, column);
    if (v < 0 || v >= n) {
      fail(column, "vertex " + std::string(text) + " out of range [0, " +
                       std::to_string(n) + ")");
    }
    return static_cast<int>(v);
  }

 private:
  int line_;
};

}  // namespace

HypergraphFile parse_hypergraph_file(std::string_view text) {
  HypergraphFile file;
  bool have_header = false;
  int expected_edges = 0;
  std::vector<char> mu_seen;
  int mu_count = 0;
  Eigen::VectorXd mu;
  int line_no = 0;
  int last_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0].text[0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    last_line = line_no;
    LineParser p(line_no);
    const std::string_view kind = tokens[0].text;

    if (!have_header) {
      if (kind != "H" || tokens.size() != 3) {
        p.fail(tokens[0].column, "expected header 'H <N> <E>'");
      }
      const long long n = p.integer(tokens[1].text, tokens[1].column);
      const long long e = p.integer(tokens[2].text, tokens[2].column);
      if (n < 1 || n > 100000000) p.fail(tokens[1].column, "bad vertex count");
      if (e < 0 || e > 100000000) p.fail(tokens[2].column, "bad edge count");
      file.raw.num_vertices = static_cast<int>(n);
      expected_edges = static_cast<int>(e);
      mu_seen.assign(n, 0);
      mu = Eigen::VectorXd::Zero(n);
      have_header = true;
    } else if (kind == "e") {
      const int index = static_cast<int>(file.raw.edges.size());
      if (index >= expected_edges) {
        p.fail(tokens[0].column, "more hyperedges than the header declares");
      }
      if (tokens.size() < 4) {
        p.fail(tokens[0].column, "hyperedge " + std::to_string(index) +
                                     " needs kappa and at least two members");
      }
      RawHyperedge edge;
      if (tokens[1].text != "-") {
        const double kappa = p.real(tokens[1].text, tokens[1].column);
        if (!(kappa > 0.0)) {
          p.fail(tokens[1].column,
                 "hyperedge " + std::to_string(index) + ": kappa must be positive");
        }
        edge.kappa = kappa;
      }
      std::set<int> seen;
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        const auto tok = tokens[t];
        const auto colon = tok.text.find(':');
        if (colon == std::string_view::npos) {
          p.fail(tok.column, "expected 'vertex:gamma'");
        }
        const int v = p.vertex(tok.text.substr(0, colon), tok.column,
                               file.raw.num_vertices);
        const int gcol = tok.column + static_cast<int>(colon) + 1;
        const double gamma =
            quantize_gamma(p.real(tok.text.substr(colon + 1), gcol));
        if (!seen.insert(v).second) {
          p.fail(tok.column, "hyperedge " + std::to_string(index) +
                                 ": duplicate vertex " + std::to_string(v));
        }
        if (!(gamma > 0.0)) {
          p.fail(gcol, "hyperedge " + std::to_string(index) +
                           ": gamma must be positive after rounding to 2^-20");
        }
        edge.members.push_back(v);
        edge.gamma.push_back(gamma);
      }
      file.raw.edges.push_back(std::move(edge));
    } else if (kind == "mu") {
      if (tokens.size() != 3) p.fail(tokens[0].column, "expected 'mu <v> <w>'");
      const int v =
          p.vertex(tokens[1].text, tokens[1].column, file.raw.num_vertices);
      const double w = p.real(tokens[2].text, tokens[2].column);
      if (!(w > 0.0)) p.fail(tokens[2].column, "mu must be positive");
      if (mu_seen[v]) p.fail(tokens[1].column, "mu given twice for vertex");
      mu_seen[v] = 1;
      mu[v] = w;
      ++mu_count;
    } else if (kind == "label") {
      if (tokens.size() != 3) {
        p.fail(tokens[0].column, "expected 'label <v> <class>'");
      }
      const int v =
          p.vertex(tokens[1].text, tokens[1].column, file.raw.num_vertices);
      const long long c = p.integer(tokens[2].text, tokens[2].column);
      if (!file.labels.emplace(v, static_cast<int>(c)).second) {
        p.fail(tokens[1].column, "label given twice for vertex");
      }
    } else {
      p.fail(tokens[0].column, "unknown record '" + std::string(kind) + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(1, 1, "missing header 'H <N> <E>'");
  if (static_cast<int>(file.raw.edges.size()) != expected_edges) {
    throw ParseError(last_line, 1,
                     "header declares " + std::to_string(expected_edges) +
                         " hyperedges, found " +
                         std::to_string(file.raw.edges.size()));
  }
  if (mu_count != 0 && mu_count != file.raw.num_vertices) {
    throw ParseError(last_line, 1,
                     "mu must be given for all vertices or none");
  }
  if (mu_count != 0) file.raw.vertex_weights = mu;
  return file;
}

std::string serialize_hypergraph_file(const HypergraphFile& file) {
  std::ostringstream os;
  os << "H " << file.raw.num_vertices << ' ' << file.raw.edges.size() << '\n';
  for (const RawHyperedge& e : file.raw.edges) {
    os << "e " << (e.kappa ? format_double(*e.kappa) : std::string("-"));
    for (std::size_t i = 0; i < e.members.size(); ++i) {
      os << ' ' << e.members[i] << ':' << format_double(e.gamma[i]);
    }
    os << '\n';
  }
  if (file.raw.vertex_weights) {
    const auto& mu = *file.raw.vertex_weights;
    for (Eigen::Index v = 0; v < mu.size(); ++v) {
      os << "mu " << v << ' ' << format_double(mu[v]) << '\n';
    }
  }
  for (const auto& [v, c] : file.labels) os << "label " << v << ' ' << c << '\n';
  return os.str();
}

HypergraphFile read_hypergraph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_hypergraph_file(buf.str());
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_hypergraph_file(const std::string& path,
                           const HypergraphFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_hypergraph_file(file);
  if (!out) throw std::runtime_error("failed writing " + path);
}

RawHypergraph apply_alpha(const RawHypergraph& raw, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ContractViolation("alpha must be a finite non-negative number");
  }
  RawHypergraph out = raw;
  for (RawHyperedge& e : out.edges) {
    for (double& g : e.gamma) g = alpha == 1.0 ? g : std::pow(g, alpha);
  }
  return out;
}

std::vector<int> label_vector(const HypergraphFile& file) {
  std::vector<int> out(file.raw.num_vertices, -1);
  for (const auto& [v, c] : file.labels) out[v] = c;
  return out;
}

bool operator==(const RawHyperedge& a, const RawHyperedge& b) {
  return a.members == b.members && a.gamma == b.gamma && a.kappa == b.kappa;
}

bool operator==(const RawHypergraph& a, const RawHypergraph& b) {
  if (a.num_vertices != b.num_vertices || !(a.edges == b.edges)) return false;
  if (a.vertex_weights.has_value() != b.vertex_weights.has_value()) {
    return false;
  }
  return !a.vertex_weights || *a.vertex_weights == *b.vertex_weights;
}

}  // namespace edvw
