// JSON state files:
//   { "dims": [dA, dB], "matrix": [[ [re, im], ... ], ...] }
// Rows are A-major composite indices; every real is written with 17
// significant digits.

#pragma once

#include "qdw/states.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace qdw {

class StateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_state(std::ostream& os, const BipartiteState& state);
std::string state_to_json(const BipartiteState& state);
void save_state(const std::filesystem::path& path, const BipartiteState& state);

/// Throws StateFormatError on malformed JSON/shape, std::invalid_argument when
/// the matrix is not a density matrix.
BipartiteState parse_state(const std::string& text);
BipartiteState load_state(const std::filesystem::path& path);

}  // namespace qdw
