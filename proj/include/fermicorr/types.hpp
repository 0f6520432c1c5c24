#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fermicorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Thrown when an input violates a documented precondition or invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown (or flagged) when an iterative solver hits its cap without meeting
// its tolerance.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LogBase { Natural, Two };

// Multiplicative factor converting natural-log values to the requested base.
inline double log_scale(LogBase base) {
  return base == LogBase::Two ? 1.0 / std::log(2.0) : 1.0;
}

}  // namespace fermicorr
