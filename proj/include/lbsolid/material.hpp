#pragma once

#include <cmath>
#include <string>

#include "lbsolid/common.hpp"

namespace lbsolid {

namespace detail {
template <typename T>
[[noreturn]] void throw_inverted(T j) {
  throw numerical_error("inverted element: det(I + grad u) = " +
                        std::to_string(static_cast<double>(j)));
}
}  // namespace detail

/// Compressible neo-Hooke strain energy density under plane strain,
///   W(H) = mu/2 (I_C - 2) + lambda/4 (J^2 - 1) - (lambda/2 + mu) log J,
/// with F = I + H, J = det F and I_C = tr(F^T F). W(0) = 0 and the law is
/// polyconvex; J <= 0 raises an inverted-element failure.
template <typename T>
T neo_hooke_energy(const Eigen::Matrix<T, 2, 2>& H, T lambda, T mu) {
  using M = Eigen::Matrix<T, 2, 2>;
  const M F = M::Identity() + H;
  const T J = F.determinant();
  if (!(J > T(0))) detail::throw_inverted(J);
  const T ic = F.squaredNorm();
  return mu / 2 * (ic - 2) + lambda / 4 * (J * J - 1) - (lambda / 2 + mu) * std::log(J);
}

/// First Piola-Kirchhoff stress P = dW/dF of the neo-Hooke law,
///   P = mu F + (lambda/2 (J^2 - 1) - mu) F^{-T}.
template <typename T>
Eigen::Matrix<T, 2, 2> first_pk(const Eigen::Matrix<T, 2, 2>& H, T lambda, T mu) {
  using M = Eigen::Matrix<T, 2, 2>;
  const M F = M::Identity() + H;
  const T J = F.determinant();
  if (!(J > T(0))) detail::throw_inverted(J);
  M cof;  // J * F^{-T}
  cof << F(1, 1), -F(1, 0), -F(0, 1), F(0, 0);
  const T s = lambda / 2 * (J * J - 1) - mu;
  return mu * F + (s / J) * cof;
}

/// Poisson stress, the linear response the lattice kinetics reproduces on
/// its own: Pbar(H) = -mu (H + H^T + tr(H) I).
template <typename T>
Sym2<T> poisson_stress(const Eigen::Matrix<T, 2, 2>& H, T mu) {
  const T tr = H.trace();
  return {-mu * (2 * H(0, 0) + tr), -mu * (2 * H(1, 1) + tr),
          -mu * (H(0, 1) + H(1, 0))};
}

/// Cauchy stress sigma = J^{-1} P F^T, used for reporting only. Symmetric
/// whenever P derives from a frame-indifferent energy.
template <typename T>
Eigen::Matrix<T, 2, 2> cauchy_stress(const Eigen::Matrix<T, 2, 2>& H,
                                     const Eigen::Matrix<T, 2, 2>& P) {
  using M = Eigen::Matrix<T, 2, 2>;
  const M F = M::Identity() + H;
  const T J = F.determinant();
  if (!(J > T(0))) detail::throw_inverted(J);
  return (T(1) / J) * P * F.transpose();
}

}  // namespace lbsolid
