#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cyclerank::q5 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// x + y eta + z eta^2 + w eta^3 in Q(eta), eta a primitive 5th root of unity.
/// Products are reduced with eta^4 = -1 - eta - eta^2 - eta^3.
class CycloElement {
 public:
  CycloElement() = default;
  explicit CycloElement(std::array<Rational, 4> coords) : coords_(std::move(coords)) {}
  CycloElement(Rational x, Rational y, Rational z, Rational w)
      : coords_{std::move(x), std::move(y), std::move(z), std::move(w)} {}

  static CycloElement one() { return {1, 0, 0, 0}; }
  /// eta^e for any integer exponent e.
  static CycloElement eta_power(int e);

  const std::array<Rational, 4>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  CycloElement operator+(const CycloElement& rhs) const;
  CycloElement operator-(const CycloElement& rhs) const;
  CycloElement operator*(const CycloElement& rhs) const;
  CycloElement operator*(const Rational& c) const;
  bool operator==(const CycloElement& rhs) const = default;

 private:
  std::array<Rational, 4> coords_{};
};

/// sigma^power, where sigma(eta) = eta^3 generates Gal(Q(eta)/Q).
CycloElement cyclo_sigma(const CycloElement& u, unsigned power);

/// tr_{Q(eta)/Q}(u) = 4x - y - z - w.
Rational cyclo_trace(const CycloElement& u);

/// -xy + xz + xw - yz + yw - zw: the (eta^2 + eta^3)-coordinate of
/// b sigma^2(b); f_{b,sigma} is degenerate iff it vanishes.
Rational degeneracy_coefficient(const Rational& x, const Rational& y, const Rational& z, const Rational& w);

/// xy - xz - xw + yz - yw + zw, the negation of degeneracy_coefficient.
Rational isotropy_form(const Rational& x, const Rational& y, const Rational& z, const Rational& w);

/// Coordinates of an element of L_2 = Q(eta^2 + eta^3) in the basis {1, eta^2 + eta^3}.
struct L2Coordinates {
  Rational constant;
  Rational period;
};
/// nullopt when u is not fixed by sigma^2.
std::optional<L2Coordinates> l2_coordinates(const CycloElement& u);

/// Small dense matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix transpose() const;
  bool is_symmetric() const;
  bool operator==(const RationalMatrix& rhs) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by Bareiss fraction-free elimination after clearing denominators.
std::size_t rational_rank(const RationalMatrix& m);

struct RationalGram {
  RationalMatrix entries;
  std::size_t rank = 0;
};

/// Gram matrix of f_{b,sigma} over Q(eta)/Q in the basis {1, eta, eta^2, eta^3}.
RationalGram gram_rational(const CycloElement& b);

/// Integer ternary form aX^2 + bY^2 + cZ^2 with abc nonzero and square-free.
struct TernaryForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
};

/// Throws NotSquareFree unless abc is nonzero and square-free.
void validate(const TernaryForm& f);

/// The individual conditions of Legendre's criterion.
struct LegendreVerdict {
  bool mixed_signs = false;
  bool residue_mod_a = false;  // -bc is a square mod |a|
  bool residue_mod_b = false;  // -ac is a square mod |b|
  bool residue_mod_c = false;  // -ab is a square mod |c|
  bool solvable() const { return mixed_signs && residue_mod_a && residue_mod_b && residue_mod_c; }
};

LegendreVerdict legendre_verdict(const TernaryForm& f);
bool legendre_solvable(const TernaryForm& f);

/// Whether r is a square modulo the square-free modulus m >= 1.
bool is_square_mod(std::int64_t r, std::int64_t m);

/// Square-free part of a nonzero integer, sign kept (e.g. -12 -> -3).
std::int64_t squarefree_part(std::int64_t v);

/// P^T q P = D with P invertible and D diagonal.
struct Diagonalization {
  RationalMatrix transform;
  std::vector<Rational> diagonal;
  /// Each diagonal entry times a rational square, made a square-free integer
  /// (0 stays 0).
  std::vector<std::int64_t> squarefree;
};

/// Completion of squares: the pivot is the first nonzero diagonal entry at or
/// after the current index, otherwise the first nonzero off-diagonal entry is
/// folded onto the diagonal.
Diagonalization diagonalize_ternary(const RationalMatrix& q);

/// A form with abc square-free that is isotropic over Q iff the diagonal form
/// <d_0, d_1, d_2> is. nullopt when some d_i is zero (then it is isotropic).
std::optional<TernaryForm> to_legendre_form(const std::vector<std::int64_t>& squarefree_diagonal);

/// Symmetric matrix of c1^2 + c2^2 + c3^2 + c1 c3 - 3 c2 c3.
RationalMatrix witness_quadratic_form();

/// Element c1 (eta + eta^2) + c2 (-1 + eta^3) + c3 (1 + eta).
CycloElement witness_element(const Rational& c1, const Rational& c2, const Rational& c3);

struct Section6Options {
  int grid = 10;
  std::size_t random_samples = 1000;
  std::uint64_t seed = 0;
  /// Replaces the diagonalized form in the Legendre step (test mode).
  std::optional<TernaryForm> override_form;
};

struct Section6Report {
  std::size_t coefficient_checked = 0;
  std::size_t coefficient_failures = 0;
  std::size_t parametrization_checked = 0;
  std::size_t parametrization_failures = 0;
  Diagonalization diagonalization;
  bool congruence_ok = false;
  std::optional<TernaryForm> legendre_form;
  LegendreVerdict verdict;
  bool anisotropic = false;
  int grid = 0;
  std::size_t grid_checked = 0;
  std::size_t grid_failures = 0;
  std::size_t random_checked = 0;
  std::size_t random_failures = 0;
  std::uint64_t seed = 0;

  bool pass() const;
};

/// Certificate chain that span{eta + eta^2, -1 + eta^3, 1 + eta} gives only
/// non-degenerate forms: the coefficient identity, a grid and random rank
/// check, and anisotropy of the diagonalized quadratic form via Legendre.
Section6Report verify_section6(const Section6Options& options = {});

}  // namespace cyclerank::q5
