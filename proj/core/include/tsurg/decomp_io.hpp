#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsurg/decomposition.hpp"

namespace tsurg {

// Malformed decomposition file; the message names the offending field, term
// and leg where applicable.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecompFile {
  Decomposition decomposition;  // always unverified on import
  std::optional<std::vector<std::size_t>> cycle_weights;
  bool claimed_verified = false;  // the file's own "verified" field, untrusted
};

// Deterministic text: fixed key order, one term per line, so identical
// decompositions give identical bytes.
std::string export_decomposition(const Decomposition& d,
                                 const std::optional<std::vector<std::size_t>>& cycle_weights = std::nullopt);
DecompFile import_decomposition(const std::string& text);

// File wrappers. Throw std::runtime_error when the file cannot be opened.
void write_decomposition_file(const std::string& path, const Decomposition& d,
                              const std::optional<std::vector<std::size_t>>& cycle_weights = std::nullopt);
DecompFile read_decomposition_file(const std::string& path);

}  // namespace tsurg
