#include "edvw/config.hpp"

#include <cmath>

#include <json.hpp>

namespace edvw {

using nlohmann::json;

void RunConfig::validate() const {
  if (splitting != SplittingKind::AllOrNothing &&
      splitting != SplittingKind::Custom && !(beta > 0.0 && beta <= 0.5)) {
    throw ContractViolation("beta must lie in (0, 0.5]");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ContractViolation("alpha must be non-negative");
  }
  if (!(epsilon > 0.0)) throw ContractViolation("epsilon must be positive");
  if (!(inner_tol > 0.0)) throw ContractViolation("inner_tol must be positive");
  if (inner_max_iter < 1) throw ContractViolation("inner_max_iter must be >= 1");
  if (max_outer < 1) throw ContractViolation("max_outer must be >= 1");
  if (restarts < 0) throw ContractViolation("restarts must be >= 0");
  for (double a : alpha_grid) {
    if (!(a >= 0.0)) throw ContractViolation("alpha grid values must be >= 0");
  }
  for (double b : beta_grid) {
    if (!(b > 0.0 && b <= 0.5)) {
      throw ContractViolation("beta grid values must lie in (0, 0.5]");
    }
  }
  if (splitting == SplittingKind::Custom) splitting_spec();
}

SplittingSpec RunConfig::splitting_spec() const {
  switch (splitting) {
    case SplittingKind::AllOrNothing:
      return SplittingSpec::all_or_nothing();
    case SplittingKind::CardinalityCapped:
      return SplittingSpec::cardinality_capped(beta);
    case SplittingKind::EdvwCapped:
      return SplittingSpec::edvw_capped(beta);
    case SplittingKind::Custom:
      return SplittingSpec::custom(custom_table);
  }
  throw ContractViolation("unknown splitting kind");
}

PipelineConfig RunConfig::pipeline() const {
  PipelineConfig p;
  p.ipm.epsilon = epsilon;
  p.ipm.max_outer = max_outer;
  p.ipm.solver = solver;
  p.ipm.inner.tol = inner_tol;
  p.ipm.inner.max_iter = inner_max_iter;
  p.ipm.refine_by_threshold = refine_by_threshold;
  p.init = init;
  p.restarts = restarts;
  p.seed = seed;
  return p;
}

std::string splitting_name(SplittingKind kind) {
  switch (kind) {
    case SplittingKind::AllOrNothing:
      return "all-or-nothing";
    case SplittingKind::CardinalityCapped:
      return "cardinality";
    case SplittingKind::EdvwCapped:
      return "edvw";
    case SplittingKind::Custom:
      return "custom";
  }
  return "?";
}

SplittingKind parse_splitting(std::string_view name) {
  if (name == "all-or-nothing") return SplittingKind::AllOrNothing;
  if (name == "cardinality") return SplittingKind::CardinalityCapped;
  if (name == "edvw") return SplittingKind::EdvwCapped;
  if (name == "custom") return SplittingKind::Custom;
  throw ContractViolation("unknown splitting '" + std::string(name) +
                          "' (all-or-nothing, cardinality, edvw, custom)");
}

std::string solver_name(InnerSolverKind kind) {
  return kind == InnerSolverKind::Pdhg ? "pdhg" : "fista";
}

InnerSolverKind parse_solver(std::string_view name) {
  if (name == "pdhg") return InnerSolverKind::Pdhg;
  if (name == "fista") return InnerSolverKind::Fista;
  throw ContractViolation("unknown solver '" + std::string(name) +
                          "' (pdhg, fista)");
}

std::string init_name(InitMode mode) {
  switch (mode) {
    case InitMode::RandomWalk:
      return "rw";
    case InitMode::RandomWalkIndicator:
      return "rw-indicator";
    case InitMode::Random:
      return "random";
    case InitMode::Indicator:
      return "indicator";
  }
  return "?";
}

InitMode parse_init(std::string_view name) {
  if (name == "rw") return InitMode::RandomWalk;
  if (name == "rw-indicator") return InitMode::RandomWalkIndicator;
  if (name == "random") return InitMode::Random;
  if (name == "indicator") return InitMode::Indicator;
  throw ContractViolation("unknown init mode '" + std::string(name) +
                          "' (rw, rw-indicator, random, indicator)");
}

std::vector<double> parse_grid(std::string_view text) {
  auto number = [&](std::string_view s) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != str.size() || !std::isfinite(v)) {
      throw ContractViolation("bad grid value '" + str + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw ContractViolation("grid must be start:step:stop");
    }
    const double start = number(text.substr(0, c1));
    const double step = number(text.substr(c1 + 1, c2 - c1 - 1));
    const double stop = number(text.substr(c2 + 1));
    if (!(step > 0.0) || stop < start) {
      throw ContractViolation("grid needs step > 0 and stop >= start");
    }
    const auto count =
        static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw ContractViolation("grid has too many points");
    for (long long i = 0; i < count; ++i) {
      out.push_back(std::round((start + i * step) * 1e12) / 1e12);
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(number(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

RunConfig parse_run_config(std::string_view json_text, RunConfig base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ContractViolation(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ContractViolation("config must be a JSON object");
  RunConfig c = std::move(base);
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "splitting") {
        c.splitting = parse_splitting(value.get<std::string>());
      } else if (key == "beta") {
        c.beta = value.get<double>();
      } else if (key == "custom_table") {
        c.custom_table.clear();
        for (const auto& knot : value) {
          c.custom_table.push_back(
              {knot.at(0).get<double>(), knot.at(1).get<double>()});
        }
      } else if (key == "alpha") {
        c.alpha = value.get<double>();
      } else if (key == "solver") {
        c.solver = parse_solver(value.get<std::string>());
      } else if (key == "epsilon") {
        c.epsilon = value.get<double>();
      } else if (key == "inner_tol") {
        c.inner_tol = value.get<double>();
      } else if (key == "inner_max_iter") {
        c.inner_max_iter = value.get<int>();
      } else if (key == "max_outer") {
        c.max_outer = value.get<int>();
      } else if (key == "init") {
        c.init = parse_init(value.get<std::string>());
      } else if (key == "restarts") {
        c.restarts = value.get<int>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "refine_by_threshold") {
        c.refine_by_threshold = value.get<bool>();
      } else if (key == "alpha_grid") {
        c.alpha_grid = value.is_string()
                           ? parse_grid(value.get<std::string>())
                           : value.get<std::vector<double>>();
      } else if (key == "beta_grid") {
        c.beta_grid = value.is_string() ? parse_grid(value.get<std::string>())
                                        : value.get<std::vector<double>>();
      } else {
        throw ContractViolation("unknown field");
      }
    } catch (const json::exception& e) {
      throw ContractViolation("config field '" + key + "': " + e.what());
    } catch (const ContractViolation& e) {
      throw ContractViolation("config field '" + key + "': " + e.what());
    }
  }
  c.validate();
  return c;
}

std::string run_config_json(const RunConfig& c) {
  json doc;
  doc["splitting"] = splitting_name(c.splitting);
  doc["beta"] = c.beta;
  if (!c.custom_table.empty()) {
    json table = json::array();
    for (const Breakpoint& b : c.custom_table) {
      table.push_back({b.fraction, b.value});
    }
    doc["custom_table"] = table;
  }
  doc["alpha"] = c.alpha;
  doc["solver"] = solver_name(c.solver);
  doc["epsilon"] = c.epsilon;
  doc["inner_tol"] = c.inner_tol;
  doc["inner_max_iter"] = c.inner_max_iter;
  doc["max_outer"] = c.max_outer;
  doc["init"] = init_name(c.init);
  doc["restarts"] = c.restarts;
  doc["seed"] = c.seed;
  doc["refine_by_threshold"] = c.refine_by_threshold;
  doc["alpha_grid"] = c.alpha_grid;
  doc["beta_grid"] = c.beta_grid;
  return doc.dump(2);
}

}  // namespace edvw
