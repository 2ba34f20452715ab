#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "edvw/pipeline.hpp"
#include "edvw/splitting.hpp"

namespace edvw {

/// Everything a clustering run needs besides the input. The JSON config file
/// uses the same field names.
struct RunConfig {
  SplittingKind splitting = SplittingKind::EdvwCapped;
  double beta = 0.2;
  std::vector<Breakpoint> custom_table;
  double alpha = 1.0;
  InnerSolverKind solver = InnerSolverKind::Pdhg;
  double epsilon = 1e-4;
  double inner_tol = 1e-8;
  int inner_max_iter = 10000;
  int max_outer = 100;
  InitMode init = InitMode::RandomWalk;
  int restarts = 0;
  std::uint64_t seed = 0;
  bool refine_by_threshold = true;
  std::vector<double> alpha_grid;
  std::vector<double> beta_grid;

  /// Throws ContractViolation on out-of-range fields.
  void validate() const;

  SplittingSpec splitting_spec() const;
  PipelineConfig pipeline() const;
};

/// Overlays the fields present in `json_text` onto `base`. Unknown fields and
/// wrong types are errors.
RunConfig parse_run_config(std::string_view json_text, RunConfig base = {});
std::string run_config_json(const RunConfig& config);

/// "start:step:stop" (inclusive), "a,b,c", or a single number.
std::vector<double> parse_grid(std::string_view text);

std::string splitting_name(SplittingKind kind);
SplittingKind parse_splitting(std::string_view name);
std::string solver_name(InnerSolverKind kind);
InnerSolverKind parse_solver(std::string_view name);
std::string init_name(InitMode mode);
InitMode parse_init(std::string_view name);

}  // namespace edvw
