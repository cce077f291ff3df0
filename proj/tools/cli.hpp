// Command implementations behind the qdw executable.
//
// Exit codes: 0 success, 1 assertion failure, 2 usage or I/O error.

#pragma once

#include "qdw/states.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { Commutator, Permutation, Circuit, CircuitShots };

std::optional<Method> parse_method(std::string_view name);
std::string_view method_name(Method m);
/// Comma-separated list; throws UsageError on unknown names.
std::vector<Method> parse_methods(std::string_view list);

struct FamilyParams {
  std::string family = "random";  // random | cq | bell | werner
  int dA = 2;
  int dB = 2;
  int rank = 0;  // 0 means full rank
  double p = 0.5;
  std::uint64_t seed = 0;
};

BipartiteState generate(const FamilyParams& params);

struct EvalSettings {
  Method method = Method::Commutator;
  double threshold = 1e-9;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  bool discord = false;
};

struct ResultRecord {
  std::string state;  // file path or family+parameters
  Method method = Method::Commutator;
  double value = 0.0;  // signed Tr(W rho^(x)4)
  double threshold = 0.0;
  bool zero_discord = false;
  nlohmann::ordered_json auxiliary = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

ResultRecord evaluate(const BipartiteState& state, std::string descriptor, const EvalSettings& s);

/// parameter = from + i * step for every i with parameter <= to (+ 1e-9 * step).
std::vector<double> sweep_parameters(double from, double to, double step);

struct SweepRow {
  double parameter;
  ResultRecord record;
};

std::vector<SweepRow> sweep(const FamilyParams& base, const std::vector<double>& parameters,
                            const std::vector<Method>& methods, const EvalSettings& settings);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdw::cli
