#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace arctest {

enum class ErrorKind {
  DegreeMismatch,
  PointOutOfRange,
  InvalidPermutation,
  BoundExceeded,
  ReflexiveArc,
  SymmetricArc,
  ArcOutOfRange,
  NotAutomorphism,
  NotSubgroup,
  InvalidConnector,
  NotNormal,
  NotTransitive,
  InvalidConstruction,
  NotProductForm,
  InvalidInput,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeMismatch: return "degree mismatch";
    case ErrorKind::PointOutOfRange: return "point out of range";
    case ErrorKind::InvalidPermutation: return "invalid permutation";
    case ErrorKind::BoundExceeded: return "bound exceeded";
    case ErrorKind::ReflexiveArc: return "irreflexivity violated";
    case ErrorKind::SymmetricArc: return "antisymmetry violated";
    case ErrorKind::ArcOutOfRange: return "arc endpoint out of range";
    case ErrorKind::NotAutomorphism: return "not an automorphism";
    case ErrorKind::NotSubgroup: return "not a subgroup";
    case ErrorKind::InvalidConnector: return "invalid connector";
    case ErrorKind::NotNormal: return "not normal";
    case ErrorKind::NotTransitive: return "not transitive";
    case ErrorKind::InvalidConstruction: return "invalid construction";
    case ErrorKind::NotProductForm: return "not of product form";
    case ErrorKind::InvalidInput: return "invalid input";
  }
  return "unknown error";
}

/// All library failures are reported through this exception; `kind()` tells them apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Size caps for explicit element sets and vertex sets, plus the seed for any sampling.
struct Limits {
  std::size_t max_elements = 100000;
  std::size_t max_vertices = 1000000;
  std::uint64_t seed = 20170301;
};

inline void check_bound(std::size_t value, std::size_t bound, const char* what) {
  if (value > bound) {
    throw Error(ErrorKind::BoundExceeded,
                std::string(what) + " " + std::to_string(value) + " exceeds bound " +
                    std::to_string(bound));
  }
}

}  // namespace arctest
