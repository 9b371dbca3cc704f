#pragma once

#include <stdexcept>
#include <string>

namespace hodgesamp {

enum class Errc {
  index_out_of_range,
  duplicate_simplex,
  non_canonical_simplex,
  missing_edge,
  dimension_mismatch,
  not_square,
  decomposition_failed,
  zero_eigenvalue,
  bandwidth_exceeded,
  negative_variance,
  retries_exhausted,
  invalid_argument,
  malformed_file,
  invalid_complex,
};

const char* to_string(Errc code) noexcept;

/// Library error. Every failure listed in a module contract is reported
/// through this type; `code()` identifies which one.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::index_out_of_range: return "index out of range";
    case Errc::duplicate_simplex: return "duplicate simplex";
    case Errc::non_canonical_simplex: return "non-canonical simplex";
    case Errc::missing_edge: return "missing edge for triangle";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::not_square: return "matrix not square";
    case Errc::decomposition_failed: return "decomposition failed";
    case Errc::zero_eigenvalue: return "zero eigenvalue";
    case Errc::bandwidth_exceeded: return "bandwidth exceeded";
    case Errc::negative_variance: return "negative variance";
    case Errc::retries_exhausted: return "retries exhausted";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::malformed_file: return "malformed file";
    case Errc::invalid_complex: return "invalid complex";
  }
  return "unknown error";
}

}  // namespace hodgesamp
