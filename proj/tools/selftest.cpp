#include "selftest.hpp"

#include "qdw/circuit.hpp"
#include "qdw/discord.hpp"
#include "qdw/loo.hpp"
#include "qdw/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace qdw::cli {
namespace {

SelftestCheck make_check(std::string name, double residual, double tolerance) {
  return {std::move(name), residual, tolerance, residual <= tolerance};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestHooks& hooks) {
  const auto commutator = hooks.commutator
                              ? hooks.commutator
                              : [](const BipartiteState& s) { return eval_commutator(s); };
  std::vector<SelftestCheck> checks;

  double completeness = 0.0;
  for (int d = 2; d <= 5; ++d) completeness = std::max(completeness, check_basis(gell_mann_basis(d)).completeness);
  checks.push_back(make_check("loo-swap-completeness", completeness, 1e-10));

  // Trace form against explicit commutator norms.
  double identity = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int dA = 2 + static_cast<int>(seed % 2);
    const int dB = 2 + static_cast<int>((seed / 2) % 2);
    const auto state = random_state(dA, dB, dA * dB, 100 + seed);
    const auto expansion = partial_expansion(state, default_basis(dB));
    identity = std::max(identity, std::abs(commutator(state) - commutator_norm_form(expansion)));
  }
  checks.push_back(make_check("commutator-identity", identity, 1e-10));

  double agreement = 0.0;
  const std::array<std::pair<int, int>, 3> dims{{{2, 2}, {2, 3}, {3, 2}}};
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto [dA, dB] = dims[seed % dims.size()];
    const auto state = random_state(dA, dB, dA * dB, 200 + seed);
    const double w = commutator(state);
    agreement = std::max(agreement, std::abs(w - eval_permutation(state)));
    agreement = std::max(agreement, std::abs(w - simulate_exact(state).witness));
  }
  checks.push_back(make_check("method-agreement", agreement, 1e-9));

  checks.push_back(make_check("bell-value", std::abs(commutator(bell_state()) + 0.375), 1e-9));

  double cq_value = 0.0;
  double cq_roundtrip = 0.0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto state = assemble_cq(random_cq_spec(2 + seed % 2, 2 + (seed / 2) % 2, 300 + seed));
    cq_value = std::max(cq_value, std::abs(commutator(state)));
    const auto spec = cq_reconstruct(state);
    cq_roundtrip = std::max(cq_roundtrip, spec ? (assemble_cq(*spec).rho() - state.rho()).norm()
                                                : std::numeric_limits<double>::infinity());
  }
  checks.push_back(make_check("cq-zero-witness", cq_value, 1e-10));
  checks.push_back(make_check("cq-roundtrip", cq_roundtrip, 1e-7));
  return checks;
}

bool print_selftest(std::ostream& os, const std::vector<SelftestCheck>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "%s %-24s residual=%.3e tol=%.1e", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.residual, c.tolerance);
    os << line << '\n';
    all = all && c.passed;
  }
  os << (all ? "selftest: all checks passed" : "selftest: FAILED") << '\n';
  return all;
}

}  // namespace qdw::cli
