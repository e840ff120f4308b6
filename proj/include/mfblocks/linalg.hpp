#pragma once

// Dense Gaussian elimination over F_{ell^d}.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mfblocks/field.hpp"

namespace mfb {

/// Row-major dense matrix over a FieldContext.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<FieldElem> data;

  Matrix() = default;
  Matrix(std::size_t m, std::size_t n) : rows(m), cols(n), data(m * n, FieldElem{0}) {}

  FieldElem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  FieldElem at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  FieldElem* row(std::size_t i) { return data.data() + i * cols; }
  const FieldElem* row(std::size_t i) const { return data.data() + i * cols; }

  static Matrix identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I.at(i, i) = FieldElem{1};
    return I;
  }
  static Matrix from_rows(const std::vector<std::vector<FieldElem>>& rs, std::size_t ncols) {
    Matrix M(rs.size(), ncols);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < ncols && j < rs[i].size(); ++j) M.at(i, j) = rs[i][j];
    return M;
  }
};

namespace linalg_detail {

// row_i <- row_i - f * row_k over columns [from, cols).
inline void axpy_row(const FieldContext& F, Matrix& M, std::size_t i, std::size_t k, FieldElem f, std::size_t from) {
  if (f.packed == 0) return;
  FieldElem* ri = M.row(i);
  const FieldElem* rk = M.row(k);
  const FieldElem nf = F.neg(f);
  for (std::size_t j = from; j < M.cols; ++j)
    if (rk[j].packed != 0) ri[j] = F.add(ri[j], F.mul(nf, rk[j]));
}

}  // namespace linalg_detail

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(const FieldContext& F, Matrix& M) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < M.cols && lead < M.rows; ++c) {
    std::size_t piv = lead;
    while (piv < M.rows && M.at(piv, c).packed == 0) ++piv;
    if (piv == M.rows) continue;
    if (piv != lead)
      for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(lead, j));
    const FieldElem inv = F.inv(M.at(lead, c));
    for (std::size_t j = c; j < M.cols; ++j) M.at(lead, j) = F.mul(M.at(lead, j), inv);
    for (std::size_t i = 0; i < M.rows; ++i)
      if (i != lead) linalg_detail::axpy_row(F, M, i, lead, M.at(i, c), c);
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

inline std::size_t rank(const FieldContext& F, Matrix M) { return rref(F, M).size(); }

/// Basis of {v : M v = 0}.
inline std::vector<std::vector<FieldElem>> nullspace(const FieldContext& F, Matrix M) {
  const auto pivots = rref(F, M);
  std::vector<bool> is_pivot(M.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<FieldElem>> basis;
  for (std::size_t free = 0; free < M.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElem> v(M.cols, FieldElem{0});
    v[free] = FieldElem{1};
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(M.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Matrix inverse(const FieldContext& F, const Matrix& A) {
  if (A.rows != A.cols) throw Error("inverse: matrix not square");
  const std::size_t n = A.rows;
  Matrix W(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
    W.at(i, n + i) = FieldElem{1};
  }
  const auto pivots = rref(F, W);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error("inverse: matrix is singular");
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = W.at(i, n + j);
  return out;
}

inline Matrix mat_mul(const FieldContext& F, const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw Error("mat_mul: shape mismatch");
  Matrix C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const FieldElem a = A.at(i, k);
      if (a.packed == 0) continue;
      const FieldElem* bk = B.row(k);
      FieldElem* ci = C.row(i);
      for (std::size_t j = 0; j < B.cols; ++j)
        if (bk[j].packed != 0) ci[j] = F.add(ci[j], F.mul(a, bk[j]));
    }
  return C;
}

inline std::vector<FieldElem> mat_vec(const FieldContext& F, const Matrix& A, const std::vector<FieldElem>& v) {
  if (A.cols != v.size()) throw Error("mat_vec: shape mismatch");
  std::vector<FieldElem> out(A.rows, FieldElem{0});
  for (std::size_t i = 0; i < A.rows; ++i) {
    const FieldElem* ai = A.row(i);
    for (std::size_t j = 0; j < A.cols; ++j)
      if (ai[j].packed != 0 && v[j].packed != 0) out[i] = F.add(out[i], F.mul(ai[j], v[j]));
  }
  return out;
}

/// Some solution of A x = b, or nothing when the system is inconsistent.
inline std::optional<std::vector<FieldElem>> solve(const FieldContext& F, const Matrix& A,
                                                   const std::vector<FieldElem>& b) {
  if (A.rows != b.size()) throw Error("solve: shape mismatch");
  Matrix W(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) W.at(i, j) = A.at(i, j);
    W.at(i, A.cols) = b[i];
  }
  const auto pivots = rref(F, W);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
  std::vector<FieldElem> x(A.cols, FieldElem{0});
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = W.at(i, A.cols);
  return x;
}

/// Incremental row-echelon basis, used for rank counting and span membership.
class EchelonBasis {
 public:
  EchelonBasis(const FieldContext& F, std::size_t dim) : F_(&F), dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

  /// Reduces v against the basis; returns true (and stores it) if independent.
  bool insert(std::vector<FieldElem> v) {
    reduce(v);
    std::size_t lead = 0;
    while (lead < dim_ && v[lead].packed == 0) ++lead;
    if (lead == dim_) return false;
    const FieldElem inv = F_->inv(v[lead]);
    for (auto& c : v) c = F_->mul(c, inv);
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

  bool contains(std::vector<FieldElem> v) const {
    reduce(v);
    for (const auto& c : v)
      if (c.packed != 0) return false;
    return true;
  }

 private:
  void reduce(std::vector<FieldElem>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const FieldElem f = v[leads_[k]];
      if (f.packed == 0) continue;
      const FieldElem nf = F_->neg(f);
      const auto& row = rows_[k];
      for (std::size_t j = leads_[k]; j < dim_; ++j)
        if (row[j].packed != 0) v[j] = F_->add(v[j], F_->mul(nf, row[j]));
    }
  }

  const FieldContext* F_;
  std::size_t dim_;
  std::vector<std::vector<FieldElem>> rows_;
  std::vector<std::size_t> leads_;
};

}  // namespace mfb
