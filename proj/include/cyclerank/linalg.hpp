#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cyclerank/modular.hpp"

namespace cyclerank {

/// Dense row-major matrix over GF(p).
class GfMatrix {
 public:
  GfMatrix() = default;
  GfMatrix(std::size_t rows, std::size_t cols, Residue p);

  static GfMatrix identity(std::size_t n, Residue p);
  /// Matrix whose columns are the given vectors (all of equal length).
  static GfMatrix from_columns(std::span<const std::vector<Residue>> cols, Residue p);
  static GfMatrix from_rows(std::span<const std::vector<Residue>> rows, Residue p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue prime() const { return p_; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<Residue> column(std::size_t c) const;

  GfMatrix operator*(const GfMatrix& rhs) const;
  std::vector<Residue> apply(std::span<const Residue> v) const;
  GfMatrix& operator+=(const GfMatrix& rhs);
  GfMatrix operator+(const GfMatrix& rhs) const;
  GfMatrix operator-(const GfMatrix& rhs) const;
  GfMatrix scaled(Residue c) const;
  GfMatrix transpose() const;
  GfMatrix pow(std::uint64_t e) const;

  bool is_zero() const;
  bool operator==(const GfMatrix&) const = default;

  const std::vector<Residue>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Residue p_ = 2;
  std::vector<Residue> data_;
};

/// Row rank by Gaussian elimination. The argument is consumed as scratch.
std::size_t rank_in_place(GfMatrix& m);
std::size_t rank(GfMatrix m);

Residue determinant(GfMatrix m);

/// Reduced row echelon form; pivot columns are returned in increasing order.
struct EchelonForm {
  GfMatrix reduced;
  std::vector<std::size_t> pivots;
};
EchelonForm rref(GfMatrix m);

/// Kernel basis read off the RREF: one vector per free column, free columns in
/// increasing order, with the free coordinate set to 1.
std::vector<std::vector<Residue>> kernel_basis(const GfMatrix& m);

/// Rank of a family of vectors of equal length.
std::size_t span_rank(std::span<const std::vector<Residue>> vectors, Residue p);

}  // namespace cyclerank
