#include "cyclerank/linalg.hpp"

#include <cassert>
#include <utility>

#include "cyclerank/errors.hpp"

namespace cyclerank {

GfMatrix::GfMatrix(std::size_t rows, std::size_t cols, Residue p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

GfMatrix GfMatrix::identity(std::size_t n, Residue p) {
  GfMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

GfMatrix GfMatrix::from_columns(std::span<const std::vector<Residue>> cols, Residue p) {
  const std::size_t rows = cols.empty() ? 0 : cols.front().size();
  GfMatrix m(rows, cols.size(), p);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    assert(cols[c].size() == rows);
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

GfMatrix GfMatrix::from_rows(std::span<const std::vector<Residue>> rows, Residue p) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  GfMatrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    assert(rows[r].size() == cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Residue> GfMatrix::column(std::size_t c) const {
  std::vector<Residue> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

GfMatrix GfMatrix::operator*(const GfMatrix& rhs) const {
  assert(cols_ == rhs.rows_ && p_ == rhs.p_);
  GfMatrix out(rows_, rhs.cols_, p_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        acc = (acc + std::uint64_t{(*this)(r, k)} * rhs(k, c)) % p_;
      }
      out(r, c) = static_cast<Residue>(acc);
    }
  }
  return out;
}

std::vector<Residue> GfMatrix::apply(std::span<const Residue> v) const {
  assert(v.size() == cols_);
  std::vector<Residue> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < cols_; ++k) {
      acc = (acc + std::uint64_t{(*this)(r, k)} * v[k]) % p_;
    }
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

GfMatrix& GfMatrix::operator+=(const GfMatrix& rhs) {
  assert(rows_ == rhs.rows_ && cols_ == rhs.cols_ && p_ == rhs.p_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = add_mod(data_[i], rhs.data_[i], p_);
  return *this;
}

GfMatrix GfMatrix::operator+(const GfMatrix& rhs) const {
  GfMatrix out = *this;
  out += rhs;
  return out;
}

GfMatrix GfMatrix::operator-(const GfMatrix& rhs) const {
  assert(rows_ == rhs.rows_ && cols_ == rhs.cols_ && p_ == rhs.p_);
  GfMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = sub_mod(data_[i], rhs.data_[i], p_);
  return out;
}

GfMatrix GfMatrix::scaled(Residue c) const {
  GfMatrix out = *this;
  for (auto& v : out.data_) v = mul_mod(v, c, p_);
  return out;
}

GfMatrix GfMatrix::transpose() const {
  GfMatrix out(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

GfMatrix GfMatrix::pow(std::uint64_t e) const {
  assert(rows_ == cols_);
  GfMatrix result = identity(rows_, p_);
  GfMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool GfMatrix::is_zero() const {
  for (auto v : data_)
    if (v != 0) return false;
  return true;
}

namespace {

// Forward elimination to row echelon form. With `reduce` set, pivots are
// normalized to 1 and cleared above as well as below.
std::vector<std::size_t> eliminate(GfMatrix& m, bool reduce) {
  const Residue p = m.prime();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    }
    const Residue inv = inv_mod(m(row, col), p);
    if (reduce) {
      for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = mul_mod(m(row, c), inv, p);
    }
    for (std::size_t r = reduce ? 0 : row + 1; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Residue factor = reduce ? m(r, col) : mul_mod(m(r, col), inv, p);
      for (std::size_t c = col; c < m.cols(); ++c) {
        m(r, c) = sub_mod(m(r, c), mul_mod(factor, m(row, c), p), p);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank_in_place(GfMatrix& m) { return eliminate(m, false).size(); }

std::size_t rank(GfMatrix m) { return rank_in_place(m); }

Residue determinant(GfMatrix m) {
  assert(m.rows() == m.cols());
  const Residue p = m.prime();
  const std::size_t n = m.rows();
  Residue det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = neg_mod(det, p);
    }
    det = mul_mod(det, m(col, col), p);
    const Residue inv = inv_mod(m(col, col), p);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Residue factor = mul_mod(m(r, col), inv, p);
      for (std::size_t c = col; c < n; ++c) {
        m(r, c) = sub_mod(m(r, c), mul_mod(factor, m(col, c), p), p);
      }
    }
  }
  return det;
}

EchelonForm rref(GfMatrix m) {
  auto pivots = eliminate(m, true);
  return {std::move(m), std::move(pivots)};
}

std::vector<std::vector<Residue>> kernel_basis(const GfMatrix& m) {
  const Residue p = m.prime();
  const auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Residue>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Residue> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = neg_mod(reduced(r, free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t span_rank(std::span<const std::vector<Residue>> vectors, Residue p) {
  if (vectors.empty()) return 0;
  return rank(GfMatrix::from_rows(vectors, p));
}

}  // namespace cyclerank
