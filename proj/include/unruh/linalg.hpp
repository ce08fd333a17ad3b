#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "format.hpp"

namespace unruh {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Kets are stored as ComplexVector.
using ComplexMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

inline constexpr double kHermitianTolerance = 1e-10;

namespace pauli {

inline ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

inline ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

inline ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// 0 -> I, 1 -> Σ₁, 2 -> Σ₂, 3 -> Σ₃.
inline ComplexMatrix sigma(int index) {
  switch (index) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    case 3: return z();
  }
  throw std::invalid_argument("Pauli index must be in 0..3, got " +
                              std::to_string(index));
}

}  // namespace pauli

/// One tensor factor: a mode label and its local dimension.
struct Factor {
  std::string label;
  std::size_t dim = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered list of labeled tensor factors. The leftmost factor is the most
/// significant digit of a flat index; this pins the matrix realization of
/// every tensor-product expression in the library.
///
/// Labels come from {A, I, I', II, II'}: Alice's mode, Rob's region-I and
/// region-II modes, Steven's region-I' and region-II' modes.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;

  explicit SubsystemLayout(std::vector<Factor> factors)
      : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& f = factors_[i];
      if (!is_known_label(f.label)) {
        throw std::invalid_argument("unknown subsystem label '" + f.label +
                                    "'");
      }
      if (f.dim == 0) {
        throw std::invalid_argument("subsystem '" + f.label +
                                    "' has dimension 0");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (factors_[j].label == f.label) {
          throw std::invalid_argument("duplicate subsystem label '" + f.label +
                                      "'");
        }
      }
    }
  }

  static bool is_known_label(std::string_view label) {
    return label == "A" || label == "I" || label == "II" || label == "I'" ||
           label == "II'";
  }

  std::span<const Factor> factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  const Factor& operator[](std::size_t i) const { return factors_[i]; }

  std::size_t dimension() const {
    return std::accumulate(
        factors_.begin(), factors_.end(), std::size_t{1},
        [](std::size_t acc, const Factor& f) { return acc * f.dim; });
  }

  bool contains(std::string_view label) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.label == label; });
  }

  std::size_t index_of(std::string_view label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].label == label) return i;
    }
    throw std::invalid_argument("unknown subsystem label '" +
                                std::string(label) + "' in layout " +
                                describe());
  }

  /// Flat-index stride of factor i.
  std::size_t stride(std::size_t i) const {
    std::size_t s = 1;
    for (std::size_t j = i + 1; j < factors_.size(); ++j) s *= factors_[j].dim;
    return s;
  }

  /// Layout concatenation; labels must stay unique.
  SubsystemLayout then(const SubsystemLayout& right) const {
    auto f = factors_;
    f.insert(f.end(), right.factors_.begin(), right.factors_.end());
    return SubsystemLayout(std::move(f));
  }

  std::string describe() const {
    std::string out = "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += ",";
      out += factors_[i].label + ":" + std::to_string(factors_[i].dim);
    }
    return out + ")";
  }

  friend bool operator==(const SubsystemLayout&,
                         const SubsystemLayout&) = default;

 private:
  std::vector<Factor> factors_;
};

/// State vector over a layout. Truncated bosonic kets are deliberately left
/// unnormalized, so the norm is not an invariant of this type.
struct Ket {
  SubsystemLayout layout;
  ComplexVector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// A density matrix together with the layout it is expressed in.
struct LabeledDensity {
  ComplexMatrix matrix;
  SubsystemLayout layout;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

inline Ket kron(const Ket& a, const Ket& b) {
  return Ket{a.layout.then(b.layout), kron(a.amplitudes, b.amplitudes)};
}

/// Kronecker product of several 2x2 Pauli factors, e.g. pauli_string({1,2,2})
/// for Σ₁⊗Σ₂⊗Σ₂.
inline ComplexMatrix pauli_string(std::initializer_list<int> indices) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int i : indices) out = kron(out, pauli::sigma(i));
  return out;
}

namespace detail {

inline void require_square(const ComplexMatrix& m, const SubsystemLayout& l) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix is not square: " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
  if (static_cast<std::size_t>(m.rows()) != l.dimension()) {
    throw std::invalid_argument(
        "matrix dimension " + std::to_string(m.rows()) +
        " does not match layout " + l.describe() + " of dimension " +
        std::to_string(l.dimension()));
  }
}

// Flat offsets of every multi-index over the selected factors, in row-major
// order of those factors, measured in the strides of the full layout.
inline std::vector<std::size_t> offsets(const SubsystemLayout& layout,
                                        const std::vector<std::size_t>& which) {
  std::vector<std::size_t> out{0};
  for (std::size_t f : which) {
    const std::size_t s = layout.stride(f);
    std::vector<std::size_t> next;
    next.reserve(out.size() * layout[f].dim);
    for (std::size_t base : out) {
      for (std::size_t d = 0; d < layout[f].dim; ++d) next.push_back(base + d * s);
    }
    out = std::move(next);
  }
  return out;
}

struct Split {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> dropped;
};

inline Split split(const SubsystemLayout& layout,
                   std::span<const std::string> drop) {
  std::vector<bool> is_dropped(layout.size(), false);
  for (const auto& label : drop) is_dropped[layout.index_of(label)] = true;
  Split s;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    (is_dropped[i] ? s.dropped : s.kept).push_back(i);
  }
  return s;
}

inline SubsystemLayout sublayout(const SubsystemLayout& layout,
                                 const std::vector<std::size_t>& which) {
  std::vector<Factor> f;
  for (std::size_t i : which) f.push_back(layout[i]);
  return SubsystemLayout(std::move(f));
}

}  // namespace detail

/// Traces out the factors named in `drop`; kept factors retain their
/// relative order.
inline LabeledDensity partial_trace(const ComplexMatrix& rho,
                                    const SubsystemLayout& layout,
                                    std::span<const std::string> drop) {
  detail::require_square(rho, layout);
  const auto s = detail::split(layout, drop);
  const auto kept = detail::offsets(layout, s.kept);
  const auto dropped = detail::offsets(layout, s.dropped);

  const auto n = static_cast<Eigen::Index>(kept.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      cplx acc = 0.0;
      for (std::size_t d : dropped) {
        acc += rho(static_cast<Eigen::Index>(kept[a] + d),
                   static_cast<Eigen::Index>(kept[b] + d));
      }
      out(a, b) = acc;
    }
  }
  return {std::move(out), detail::sublayout(layout, s.kept)};
}

inline LabeledDensity partial_trace(const ComplexMatrix& rho,
                                    const SubsystemLayout& layout,
                                    std::initializer_list<std::string> drop) {
  std::vector<std::string> d(drop);
  return partial_trace(rho, layout, std::span<const std::string>(d));
}

/// Reduced density of a (possibly unnormalized) pure state, Tr_drop |ψ⟩⟨ψ|,
/// computed as Ψ·Ψ† with Ψ the amplitudes reshaped to (kept × dropped). The
/// full outer product is never formed.
inline LabeledDensity reduced_density(const Ket& ket,
                                      std::span<const std::string> drop) {
  const auto& layout = ket.layout;
  if (static_cast<std::size_t>(ket.amplitudes.size()) != layout.dimension()) {
    throw std::invalid_argument("ket size does not match layout " +
                                layout.describe());
  }
  const auto s = detail::split(layout, drop);
  const auto kept = detail::offsets(layout, s.kept);
  const auto dropped = detail::offsets(layout, s.dropped);

  ComplexMatrix psi(static_cast<Eigen::Index>(kept.size()),
                    static_cast<Eigen::Index>(dropped.size()));
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t d = 0; d < dropped.size(); ++d) {
      psi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(d)) =
          ket.amplitudes(static_cast<Eigen::Index>(kept[a] + dropped[d]));
    }
  }
  ComplexMatrix rho = psi * psi.adjoint();
  // Restore exact Hermitian symmetry lost to summation order.
  ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
  return {std::move(sym), detail::sublayout(layout, s.kept)};
}

inline LabeledDensity reduced_density(const Ket& ket,
                                      std::initializer_list<std::string> drop) {
  std::vector<std::string> d(drop);
  return reduced_density(ket, std::span<const std::string>(d));
}

/// Transposes the indices of the `target` factor only. Pure permutation of
/// entries, so applying it twice reproduces the input bit for bit.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                       const SubsystemLayout& layout,
                                       std::string_view target) {
  detail::require_square(rho, layout);
  const std::size_t f = layout.index_of(target);
  const std::size_t s = layout.stride(f);
  const std::size_t d = layout[f].dim;
  const auto n = static_cast<std::size_t>(rho.rows());

  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t di = (i / s) % d;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t dj = (j / s) % d;
      const std::size_t ii = i - di * s + dj * s;
      const std::size_t jj = j - dj * s + di * s;
      out(static_cast<Eigen::Index>(ii), static_cast<Eigen::Index>(jj)) =
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

inline double max_hermitian_asymmetry(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix is not square");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double max_off_diagonal(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

namespace detail {

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Connected components of the nonzero pattern. A Hermitian matrix that is
// block diagonal up to a permutation has the union of the block spectra.
inline std::vector<std::vector<std::size_t>> components(const ComplexMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) !=
              cplx(0.0) ||
          m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) !=
              cplx(0.0)) {
        const auto a = find_root(parent, i);
        const auto b = find_root(parent, j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find_root(parent, i)].push_back(i);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

}  // namespace detail

/// All eigenvalues of a Hermitian matrix, ascending.
///
/// The matrix is first split into the connected components of its nonzero
/// pattern; each block is diagonalized with a Householder/QR self-adjoint
/// solver (real arithmetic when the block has no imaginary part). Throws
/// std::invalid_argument when the input deviates from Hermitian by more than
/// 1e-10.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const double asym = max_hermitian_asymmetry(m);
  if (asym > kHermitianTolerance) {
    throw std::invalid_argument(
        "matrix is not Hermitian: max |m(i,j) - conj(m(j,i))| = " +
        format_number(asym));
  }
  std::vector<double> eig;
  eig.reserve(static_cast<std::size_t>(m.rows()));
  for (const auto& block : detail::components(m)) {
    const auto k = static_cast<Eigen::Index>(block.size());
    if (k == 1) {
      const auto i = static_cast<Eigen::Index>(block[0]);
      eig.push_back(m(i, i).real());
      continue;
    }
    ComplexMatrix sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) {
        sub(a, b) = m(static_cast<Eigen::Index>(block[a]),
                      static_cast<Eigen::Index>(block[b]));
      }
    }
    if (sub.imag().cwiseAbs().maxCoeff() == 0.0) {
      Eigen::MatrixXd re = sub.real();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
          re, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < k; ++i) eig.push_back(solver.eigenvalues()(i));
    } else {
      Eigen::MatrixXcd c = sub;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
          c, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < k; ++i) eig.push_back(solver.eigenvalues()(i));
    }
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace unruh
