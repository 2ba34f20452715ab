#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace edvw {

struct VerifyRow {
  std::string check;
  int instances = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_violation <= tolerance; }
};

/// Oracle suite on random small instances: gadget cut identity, Lovasz-level
/// identity, Lipschitz bound of the dual gradient, random-walk cut bridge and
/// SFM through the proximal solve. `budget` is "small" or "medium".
std::vector<VerifyRow> run_verification(const std::string& budget,
                                        std::uint64_t seed);

/// "check,instances,max_violation,tolerance,status" table.
void write_verify_table(std::ostream& os, const std::vector<VerifyRow>& rows);

}  // namespace edvw
