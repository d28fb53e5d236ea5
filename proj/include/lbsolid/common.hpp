#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lbsolid {

using Real = double;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Invalid configuration or geometry (CLI exit code 1).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: inverted element, instability, non-finite fields,
/// oracle non-convergence (CLI exit code 2).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure (CLI exit code 3).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetric 2x2 tensor stored by its three independent components, so
/// symmetry holds by construction rather than by discipline.
template <typename T>
struct Sym2 {
  T a11{};
  T a22{};
  T a12{};

  static Sym2 Zero() { return {T(0), T(0), T(0)}; }
  static Sym2 Identity() { return {T(1), T(1), T(0)}; }

  /// 0.5 * (A + A^T) of a full tensor.
  template <typename Derived>
  static Sym2 FromFull(const Eigen::MatrixBase<Derived>& a) {
    return {a(0, 0), a(1, 1), T(0.5) * (a(0, 1) + a(1, 0))};
  }

  Eigen::Matrix<T, 2, 2> full() const {
    Eigen::Matrix<T, 2, 2> m;
    m << a11, a12, a12, a22;
    return m;
  }

  T trace() const { return a11 + a22; }

  Eigen::Matrix<T, 2, 1> operator*(const Eigen::Matrix<T, 2, 1>& v) const {
    return {a11 * v[0] + a12 * v[1], a12 * v[0] + a22 * v[1]};
  }

  Sym2 operator+(const Sym2& o) const {
    return {a11 + o.a11, a22 + o.a22, a12 + o.a12};
  }
  Sym2 operator-(const Sym2& o) const {
    return {a11 - o.a11, a22 - o.a22, a12 - o.a12};
  }
  Sym2 operator*(T s) const { return {a11 * s, a22 * s, a12 * s}; }
};

using Sym2d = Sym2<Real>;

/// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
/// worker thread. Chunks must write to disjoint locations; there are no
/// reductions, so results are bitwise identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 4096) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);
  pool.reserve(nt);
  for (std::size_t w = 0; w < nt; ++w) {
    const std::size_t begin = n * w / nt;
    const std::size_t end = n * (w + 1) / nt;
    pool.emplace_back([&fn, &errors, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace lbsolid
