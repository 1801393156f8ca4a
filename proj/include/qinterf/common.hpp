#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qinterf {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument, malformed configuration, dimension mismatch.
struct ConfigError : Error {
  using Error::Error;
};

/// Numerical degeneracy: all-cancelling amplitude, singular covariance,
/// non-convergent quadrature.
struct DegenerateError : Error {
  using Error::Error;
};

struct QuadratureError : DegenerateError {
  using DegenerateError::DegenerateError;
};

/// Deterministic pairwise (tree) reduction of f(0) + f(1) + ... + f(n-1).
/// The reduction tree depends only on n, so the result is reproducible
/// regardless of how callers partition surrounding work.
template <typename T, typename F>
T pairwise_sum(std::size_t n, F&& f) {
  struct Rec {
    F& f;
    T run(std::size_t lo, std::size_t len) {
      if (len <= 16) {
        T acc = f(lo);
        for (std::size_t i = 1; i < len; ++i) acc += f(lo + i);
        return acc;
      }
      const std::size_t half = len / 2;
      T left = run(lo, half);
      T right = run(lo + half, len - half);
      return left + right;
    }
  } rec{f};
  if (n == 0) return T{};
  return rec.run(0, n);
}

}  // namespace qinterf
