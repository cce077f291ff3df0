// Small-size invariant checks run by `qdw selftest`.

#pragma once

#include "qdw/states.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qdw::cli {

struct SelftestCheck {
  std::string name;
  double residual;
  double tolerance;
  bool passed;
};

struct SelftestHooks {
  /// Evaluator under test for the commutator route; defaults to
  /// eval_commutator with the Gell-Mann basis.
  std::function<double(const BipartiteState&)> commutator;
};

std::vector<SelftestCheck> run_selftest(const SelftestHooks& hooks = {});

/// One line per check; returns true when all passed.
bool print_selftest(std::ostream& os, const std::vector<SelftestCheck>& checks);

}  // namespace qdw::cli
