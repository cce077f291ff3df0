#include "qdw/state_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdw {
namespace {

void put_real(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

}  // namespace

void write_state(std::ostream& os, const BipartiteState& state) {
  const auto& m = state.rho();
  os << "{\n  \"dims\": [" << state.dA() << ", " << state.dB() << "],\n  \"matrix\": [\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << '[';
      put_real(os, m(i, j).real());
      os << ", ";
      put_real(os, m(i, j).imag());
      os << ']';
    }
    os << ']' << (i + 1 < m.rows() ? "," : "") << '\n';
  }
  os << "  ]\n}\n";
}

std::string state_to_json(const BipartiteState& state) {
  std::ostringstream os;
  write_state(os, state);
  return os.str();
}

void save_state(const std::filesystem::path& path, const BipartiteState& state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_state(out, state);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

BipartiteState parse_state(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StateFormatError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix")) {
    throw StateFormatError("state file needs \"dims\" and \"matrix\"");
  }
  const auto& dims = doc["dims"];
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() ||
      !dims[1].is_number_integer()) {
    throw StateFormatError("\"dims\" must be [dA, dB]");
  }
  const int dA = dims[0].get<int>();
  const int dB = dims[1].get<int>();
  if (dA < 1 || dB < 1) throw StateFormatError("dimensions must be positive");
  const int d = dA * dB;
  const auto& rows = doc["matrix"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw StateFormatError("\"matrix\" must have dA*dB rows");
  }
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw StateFormatError("row " + std::to_string(i) + " must have dA*dB entries");
    }
    for (int j = 0; j < d; ++j) {
      const auto& z = row[j];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw StateFormatError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") must be [re, im]");
      }
      m(i, j) = Complex{z[0].get<double>(), z[1].get<double>()};
    }
  }
  if (!m.allFinite()) throw StateFormatError("matrix has non-finite entries");
  return BipartiteState(dA, dB, std::move(m));
}

BipartiteState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

}  // namespace qdw
