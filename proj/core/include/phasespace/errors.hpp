#pragma once

#include <stdexcept>
#include <string>

namespace phasespace {

/// Requested operation exceeds what the implementation supports
/// (e.g. Fock index beyond the stability guard).
class capability_error : public std::runtime_error {
 public:
  explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

/// The grid cannot resolve the requested computation (aliasing detected,
/// normalization broken, momentum window too small).  Remedy: refine or
/// enlarge the grid.
class resolution_error : public std::runtime_error {
 public:
  explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace phasespace
