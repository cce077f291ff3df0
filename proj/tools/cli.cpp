#include "cli.hpp"

#include "selftest.hpp"

#include "qdw/circuit.hpp"
#include "qdw/discord.hpp"
#include "qdw/state_io.hpp"
#include "qdw/witness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qdw::cli {
namespace {

std::string full_precision(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string describe(const FamilyParams& p) {
  std::ostringstream os;
  os << p.family;
  if (p.family == "werner") {
    os << "(p=" << full_precision(p.p) << ")";
  } else if (p.family == "random" || p.family == "cq") {
    os << "(dA=" << p.dA << ",dB=" << p.dB;
    if (p.family == "random") os << ",rank=" << (p.rank ? p.rank : p.dA * p.dB);
    os << ",seed=" << p.seed << ")";
  }
  return os.str();
}

bool is_seed_family(const std::string& family) { return family == "random" || family == "cq"; }

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw UsageError("write failed: " + path);
}

}  // namespace

std::optional<Method> parse_method(std::string_view name) {
  if (name == "commutator") return Method::Commutator;
  if (name == "permutation") return Method::Permutation;
  if (name == "circuit") return Method::Circuit;
  if (name == "circuit-shots") return Method::CircuitShots;
  return std::nullopt;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Commutator: return "commutator";
    case Method::Permutation: return "permutation";
    case Method::Circuit: return "circuit";
    case Method::CircuitShots: return "circuit-shots";
  }
  return "unknown";
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const auto token = list.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start);
    const auto m = parse_method(token);
    if (!m) throw UsageError("unknown method '" + std::string(token) + "'");
    out.push_back(*m);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

BipartiteState generate(const FamilyParams& p) {
  if (p.family == "bell") return bell_state();
  if (p.family == "werner") {
    if (!(p.p >= 0.0 && p.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
    return werner_family(p.p);
  }
  if (p.dA < 1 || p.dB < 1) throw UsageError("--dA and --dB must be positive");
  if (p.family == "random") {
    const int d = p.dA * p.dB;
    const int rank = p.rank ? p.rank : d;
    if (rank < 1 || rank > d) throw UsageError("--rank must lie in [1, dA*dB]");
    return random_state(p.dA, p.dB, rank, p.seed);
  }
  if (p.family == "cq") return assemble_cq(random_cq_spec(p.dA, p.dB, p.seed));
  throw UsageError("unknown family '" + p.family + "' (expected random, cq, bell or werner)");
}

nlohmann::ordered_json ResultRecord::to_json() const {
  nlohmann::ordered_json j;
  j["state"] = state;
  j["method"] = std::string(method_name(method));
  j["value"] = value;
  j["indicator"] = -value;
  j["threshold"] = threshold;
  j["zero_discord"] = zero_discord;
  j["auxiliary"] = auxiliary;
  return j;
}

ResultRecord evaluate(const BipartiteState& state, std::string descriptor, const EvalSettings& s) {
  ResultRecord r;
  r.state = std::move(descriptor);
  r.method = s.method;
  r.threshold = s.threshold;
  r.auxiliary["dims"] = {state.dA(), state.dB()};
  switch (s.method) {
    case Method::Commutator:
      r.value = eval_commutator(state);
      break;
    case Method::Permutation:
      r.value = eval_permutation(state);
      break;
    case Method::Circuit: {
      const auto readout = simulate_exact(state);
      r.value = readout.witness;
      r.auxiliary["sx1"] = readout.sx1;
      r.auxiliary["sx2"] = readout.sx2;
      r.auxiliary["dropped_weight"] = readout.dropped_weight;
      break;
    }
    case Method::CircuitShots: {
      if (s.shots == 0) throw UsageError("--shots must be positive");
      const auto readout = sample_shots(state, s.shots, s.seed);
      r.value = readout.witness;
      r.auxiliary["sx1"] = readout.sx1;
      r.auxiliary["sx2"] = readout.sx2;
      r.auxiliary["stderr1"] = *readout.stderr1;
      r.auxiliary["stderr2"] = *readout.stderr2;
      r.auxiliary["stderr"] = *readout.stderr1 + *readout.stderr2;
      r.auxiliary["shots"] = s.shots;
      r.auxiliary["seed"] = s.seed;
      r.auxiliary["dropped_weight"] = readout.dropped_weight;
      break;
    }
  }
  r.zero_discord = std::abs(r.value) <= s.threshold;
  if (s.discord) {
    if (state.dA() != 2) throw UsageError("--discord requires dA = 2");
    r.auxiliary["discord"] = discord_qubit_A(state).value;
  }
  return r;
}

std::vector<double> sweep_parameters(double from, double to, double step) {
  if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step)) {
    throw UsageError("sweep range must be finite");
  }
  if (!(step > 0.0)) throw UsageError("--step must be positive");
  if (to < from) throw UsageError("empty sweep range: --to is below --from");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = from + static_cast<double>(i) * step;
  return out;
}

std::vector<SweepRow> sweep(const FamilyParams& base, const std::vector<double>& parameters,
                            const std::vector<Method>& methods, const EvalSettings& settings) {
  if (parameters.empty()) throw UsageError("empty sweep range");
  if (methods.empty()) throw UsageError("no methods given");
  if (base.family == "bell") throw UsageError("bell has no parameter to sweep");
  std::vector<SweepRow> rows;
  for (double x : parameters) {
    FamilyParams p = base;
    if (base.family == "werner") {
      p.p = x;
    } else if (is_seed_family(base.family)) {
      if (x < 0.0 || x != std::floor(x)) throw UsageError("seed sweeps need non-negative integer parameters");
      p.seed = static_cast<std::uint64_t>(x);
    }
    const BipartiteState state = generate(p);
    for (Method m : methods) {
      EvalSettings s = settings;
      s.method = m;
      rows.push_back({x, evaluate(state, describe(p), s)});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "parameter,method,value,sx1,sx2,stderr,discord\n";
  auto field = [](const nlohmann::ordered_json& aux, const char* key) {
    return aux.contains(key) ? full_precision(aux[key].get<double>()) : std::string();
  };
  for (const auto& row : rows) {
    const auto& aux = row.record.auxiliary;
    os << full_precision(row.parameter) << ',' << method_name(row.record.method) << ','
       << full_precision(row.record.value) << ',' << field(aux, "sx1") << ',' << field(aux, "sx2")
       << ',' << field(aux, "stderr") << ',' << field(aux, "discord") << '\n';
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-copy quantum discord witness"};
  app.require_subcommand(1);

  FamilyParams gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a state file");
  gen_cmd->add_option("family", gen.family, "random | cq | bell | werner")->required();
  gen_cmd->add_option("--dA", gen.dA, "Dimension of A");
  gen_cmd->add_option("--dB", gen.dB, "Dimension of B");
  gen_cmd->add_option("--rank", gen.rank, "Rank of a random state (0 = full)");
  gen_cmd->add_option("--p", gen.p, "Werner mixing parameter");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out", gen_out, "Output path (default: stdout)");

  std::string eval_path;
  std::string eval_method = "commutator";
  std::string eval_out;
  EvalSettings eval;
  bool assert_zero = false;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the witness on a state file");
  eval_cmd->add_option("state", eval_path, "State file")->required();
  eval_cmd->add_option("--method", eval_method, "commutator | permutation | circuit | circuit-shots");
  eval_cmd->add_option("--threshold", eval.threshold, "Zero-discord threshold on |value|");
  eval_cmd->add_option("--shots", eval.shots, "Shots for circuit-shots");
  eval_cmd->add_option("--seed", eval.seed, "Seed for circuit-shots");
  eval_cmd->add_flag("--assert-zero", assert_zero, "Exit 1 unless the verdict is zero discord");
  eval_cmd->add_flag("--discord", eval.discord, "Also compute the projective discord (dA = 2)");
  eval_cmd->add_option("--out", eval_out, "Write the record here instead of stdout");

  FamilyParams sweep_family;
  double from = 0.0, to = 1.0, step = 0.1;
  std::string sweep_methods = "commutator";
  std::string sweep_out;
  EvalSettings sweep_settings;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a family over a parameter range (CSV)");
  sweep_cmd->add_option("family", sweep_family.family, "werner | random | cq")->required();
  sweep_cmd->add_option("--from", from, "First parameter");
  sweep_cmd->add_option("--to", to, "Last parameter (inclusive)");
  sweep_cmd->add_option("--step", step, "Parameter step");
  sweep_cmd->add_option("--methods,--method", sweep_methods, "Comma-separated methods");
  sweep_cmd->add_option("--dA", sweep_family.dA, "Dimension of A (random, cq)");
  sweep_cmd->add_option("--dB", sweep_family.dB, "Dimension of B (random, cq)");
  sweep_cmd->add_option("--rank", sweep_family.rank, "Rank for random states (0 = full)");
  sweep_cmd->add_option("--threshold", sweep_settings.threshold, "Zero-discord threshold");
  sweep_cmd->add_option("--shots", sweep_settings.shots, "Shots for circuit-shots");
  sweep_cmd->add_option("--seed", sweep_settings.seed, "Seed for circuit-shots");
  sweep_cmd->add_flag("--discord", sweep_settings.discord, "Fill the discord column (dA = 2)");
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (default: stdout)");

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qdw: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      write_text(gen_out, state_to_json(generate(gen)), out);
      return kExitOk;
    }
    if (eval_cmd->parsed()) {
      const auto method = parse_method(eval_method);
      if (!method) throw UsageError("unknown method '" + eval_method + "'");
      eval.method = *method;
      const BipartiteState state = load_state(eval_path);
      const ResultRecord record = evaluate(state, eval_path, eval);
      write_text(eval_out, record.to_json().dump() + "\n", out);
      if (assert_zero && !record.zero_discord) return kExitAssertion;
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      const auto methods = parse_methods(sweep_methods);
      const auto rows = sweep(sweep_family, sweep_parameters(from, to, step), methods, sweep_settings);
      std::ostringstream csv;
      write_sweep_csv(csv, rows);
      write_text(sweep_out, csv.str(), out);
      return kExitOk;
    }
    if (selftest_cmd->parsed()) {
      return print_selftest(out, run_selftest()) ? kExitOk : kExitAssertion;
    }
  } catch (const std::exception& e) {
    err << "qdw: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qdw::cli
