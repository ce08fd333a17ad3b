#pragma once

// Independent reference implementations used only by the tests. They share
// no code with the library beyond the matrix type.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "unruh/linalg.hpp"

namespace oracle {

using unruh::ComplexMatrix;
using unruh::cplx;

// Decodes a flat index into per-factor digits, leftmost most significant.
inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    d[f] = index % dims[f];
    index /= dims[f];
  }
  return d;
}

inline std::size_t encode(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
  std::size_t i = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) i = i * dims[f] + d[f];
  return i;
}

// Brute force: every (row, col) pair of the full matrix is visited and
// accumulated into the reduced entry it contributes to.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<std::size_t>& dims,
                                   const std::vector<bool>& drop) {
  std::vector<std::size_t> kept_dims;
  for (std::size_t f = 0; f < dims.size(); ++f)
    if (!drop[f]) kept_dims.push_back(dims[f]);
  std::size_t k = 1;
  for (auto d : kept_dims) k *= d;
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  const auto n = static_cast<std::size_t>(rho.rows());
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = digits(i, dims);
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = digits(j, dims);
      bool diag = true;
      std::vector<std::size_t> ki, kj;
      for (std::size_t f = 0; f < dims.size(); ++f) {
        if (drop[f]) {
          diag = diag && di[f] == dj[f];
        } else {
          ki.push_back(di[f]);
          kj.push_back(dj[f]);
        }
      }
      if (!diag) continue;
      out(static_cast<Eigen::Index>(encode(ki, kept_dims)),
          static_cast<Eigen::Index>(encode(kj, kept_dims))) +=
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                       const std::vector<std::size_t>& dims, std::size_t target) {
  ComplexMatrix out(rho.rows(), rho.cols());
  const auto n = static_cast<std::size_t>(rho.rows());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto di = digits(i, dims), dj = digits(j, dims);
      std::swap(di[target], dj[target]);
      out(static_cast<Eigen::Index>(encode(di, dims)), static_cast<Eigen::Index>(encode(dj, dims))) =
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

// Reorders tensor factors: output factor k is input factor perm[k].
inline unruh::ComplexVector permute_factors(const unruh::ComplexVector& v,
                                            const std::vector<std::size_t>& dims,
                                            const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> out_dims;
  for (auto p : perm) out_dims.push_back(dims[p]);
  unruh::ComplexVector out(v.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    const auto d = digits(i, dims);
    std::vector<std::size_t> od;
    for (auto p : perm) od.push_back(d[p]);
    out(static_cast<Eigen::Index>(encode(od, out_dims))) = v(static_cast<Eigen::Index>(i));
  }
  return out;
}

// Cyclic Jacobi on the real symmetric embedding [[Re, -Im], [Im, Re]] of a
// Hermitian matrix; each eigenvalue of the original appears twice.
inline std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h) {
  const std::size_t n = static_cast<std::size_t>(h.rows());
  const std::size_t m = 2 * n;
  std::vector<double> a(m * m);
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      A(i, j) = z.real();
      A(i + n, j + n) = z.real();
      A(i, j + n) = -z.imag();
      A(i + n, j) = z.imag();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) off += A(i, j) * A(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        if (std::abs(A(p, q)) < 1e-300) continue;
        const double theta = (A(q, q) - A(p, p)) / (2 * A(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(m);
  for (std::size_t i = 0; i < m; ++i) ev[i] = A(i, i);
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < m; i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cplx(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

// Random mixed state: G G^dagger / tr.
inline ComplexMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cplx(g(rng), g(rng));
  ComplexMatrix rho = m * m.adjoint();
  rho /= rho.trace();
  return (rho + rho.adjoint()) / 2.0;
}

}  // namespace oracle
