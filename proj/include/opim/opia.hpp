#pragma once

// First-order optimal perturbation iteration (OPIA-1).
//
// Each step solves the linear correction equation
//
//   (y_c)'' = -( y_n'' + (k/x) y_n' + beta * lin_gamma(y_n) + g ),
//   (y_c)(0) = (y_c)'(0) = 0,
//
// by double integration, then advances y_{n+1} = y_n + (C_0 + ... + C_n) (y_c)_n.
// lin_gamma is the first-order Taylor expansion of gamma about y_n(0), which
// for gamma = y reproduces the linear operator unchanged and for gamma = e^y
// (with y(0) = 0) gives 1 + y_n.
//
// The second-order variant (correction equation quadratic in y_c) is not
// implemented; the correction here is always the solution of a linear ODE.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "opim/poly.hpp"
#include "opim/problem.hpp"

namespace opim {

/// Degree cap used when none is given: 4(m+1).
constexpr std::size_t default_degree_cap(int order) { return 4 * static_cast<std::size_t>(order + 1); }

template <Scalar T>
struct IterationTrace {
  std::vector<Polynomial<T>> iterates;     // y_0 ... y_m
  std::vector<Polynomial<T>> corrections;  // (y_c)_0 ... (y_c)_{m-1}
  std::vector<T> constants;                // C_0 ... C_{m-1}
  int order = 0;
  std::size_t degree_cap = 0;

  const Polynomial<T>& final() const { return iterates.back(); }
};

/// y0 + yp0 x.
template <Scalar T>
Polynomial<T> initial_guess(const EmdenFowlerProblem<T>& p);

/// beta(x) * (gamma(c) + gamma'(c) (y - c)) with c = y(0), truncated at cap.
template <Scalar T>
Polynomial<T> linearized_nonlinearity(const Polynomial<T>& y, const EmdenFowlerProblem<T>& p, std::size_t cap);

/// (y_c)_n for the iterate y_n. Throws InternalInvariantBreach if y_n'(0) != 0
/// while k != 0.
template <Scalar T>
Polynomial<T> opia1_correction(const Polynomial<T>& y_n, const EmdenFowlerProblem<T>& p, std::size_t cap);

/// Runs m = constants.size() steps from initial_guess(p).
template <Scalar T>
IterationTrace<T> iterate(const EmdenFowlerProblem<T>& p, std::span<const T> constants, std::size_t cap);

/// Convenience overload taking doubles and converting them (exactly) to T.
template <Scalar T>
IterationTrace<T> iterate(const EmdenFowlerProblem<T>& p, const std::vector<double>& constants, std::size_t cap) {
  std::vector<T> c;
  c.reserve(constants.size());
  for (double v : constants) c.push_back(scalar_cast<T>(v));
  return iterate<T>(p, std::span<const T>(c), cap);
}

/// Text dump: one "y_n = <poly>" / "yc_n = <poly>" line per entry.
template <Scalar T>
std::string dump_trace(const IterationTrace<T>& trace);

}  // namespace opim
