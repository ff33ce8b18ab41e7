#include "cyclerank/cyclotomic_q5.hpp"

#include <cstdlib>
#include <numeric>
#include <random>
#include <utility>

#include "cyclerank/errors.hpp"
#include "cyclerank/modular.hpp"

namespace cyclerank::q5 {
namespace {

// Coefficients of eta^0..eta^4 (exponents mod 5) folded into the 4-term basis.
CycloElement fold(const std::array<Rational, 5>& c) {
  return {c[0] - c[4], c[1] - c[4], c[2] - c[4], c[3] - c[4]};
}

int mod5(int e) { return ((e % 5) + 5) % 5; }

Rational random_rational(std::mt19937_64& rng) {
  const auto num = static_cast<std::int64_t>(draw_below(rng, 2001)) - 1000;
  const auto den = static_cast<std::int64_t>(draw_below(rng, 1000)) + 1;
  return Rational(num, den);
}

std::int64_t to_int64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) {
    raise(ErrorCode::SizeLimit, "integer does not fit in 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace

CycloElement CycloElement::eta_power(int e) {
  std::array<Rational, 5> c{};
  c[mod5(e)] = 1;
  return fold(c);
}

bool CycloElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

CycloElement CycloElement::operator+(const CycloElement& rhs) const {
  CycloElement out = *this;
  for (std::size_t i = 0; i < 4; ++i) out.coords_[i] += rhs.coords_[i];
  return out;
}

CycloElement CycloElement::operator-(const CycloElement& rhs) const {
  CycloElement out = *this;
  for (std::size_t i = 0; i < 4; ++i) out.coords_[i] -= rhs.coords_[i];
  return out;
}

CycloElement CycloElement::operator*(const CycloElement& rhs) const {
  std::array<Rational, 5> c{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < 4; ++j) c[(i + j) % 5] += coords_[i] * rhs.coords_[j];
  }
  return fold(c);
}

CycloElement CycloElement::operator*(const Rational& s) const {
  CycloElement out = *this;
  for (auto& c : out.coords_) c *= s;
  return out;
}

CycloElement cyclo_sigma(const CycloElement& u, unsigned power) {
  int multiplier = 1;
  for (unsigned k = 0; k < power % 4; ++k) multiplier = (multiplier * 3) % 5;
  std::array<Rational, 5> c{};
  for (int j = 0; j < 4; ++j) c[mod5(j * multiplier)] += u[j];
  return fold(c);
}

Rational cyclo_trace(const CycloElement& u) { return 4 * u[0] - u[1] - u[2] - u[3]; }

Rational degeneracy_coefficient(const Rational& x, const Rational& y, const Rational& z, const Rational& w) {
  return -x * y + x * z + x * w - y * z + y * w - z * w;
}

Rational isotropy_form(const Rational& x, const Rational& y, const Rational& z, const Rational& w) {
  return x * y - x * z - x * w + y * z - y * w + z * w;
}

std::optional<L2Coordinates> l2_coordinates(const CycloElement& u) {
  // L_2 elements are A + B(eta^2 + eta^3), i.e. coordinates (A, 0, B, B).
  if (u[1] != 0 || u[2] != u[3]) return std::nullopt;
  return L2Coordinates{u[0], u[2]};
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto& row : rows) {
    if (row.size() != cols_) raise(ErrorCode::WrongShape, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) raise(ErrorCode::WrongShape, "matrix dimensions do not match");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < rhs.cols_; ++c)
      for (std::size_t k = 0; k < cols_; ++k) out(r, c) += (*this)(r, k) * rhs(k, c);
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

std::size_t rational_rank(const RationalMatrix& m) {
  // Scale each row to integers, then run Bareiss elimination.
  std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt lcm = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const BigInt d = denominator(m(r, c));
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      a[r][c] = numerator(m(r, c)) * (lcm / denominator(m(r, c)));
    }
  }

  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && a[pivot][col] == 0) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      for (std::size_t c = col + 1; c < m.cols(); ++c) {
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

RationalGram gram_rational(const CycloElement& b) {
  std::array<CycloElement, 4> basis, images;
  for (int j = 0; j < 4; ++j) {
    basis[j] = CycloElement::eta_power(j);
    images[j] = cyclo_sigma(basis[j], 1);
  }
  RationalGram out;
  out.entries = RationalMatrix(4, 4);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t s = r + 1; s < 4; ++s) {
      const Rational v = cyclo_trace(b * (basis[r] * images[s] - images[r] * basis[s]));
      out.entries(r, s) = v;
      out.entries(s, r) = -v;
    }
  }
  out.rank = rational_rank(out.entries);
  return out;
}

std::int64_t squarefree_part(std::int64_t v) {
  if (v == 0) raise(ErrorCode::NotSquareFree, "zero has no square-free part");
  const std::int64_t sign = v < 0 ? -1 : 1;
  std::int64_t out = 1;
  for (const auto& [prime, exp] : factorize(static_cast<std::uint64_t>(std::llabs(v)))) {
    if (exp % 2 == 1) out *= static_cast<std::int64_t>(prime);
  }
  return sign * out;
}

void validate(const TernaryForm& f) {
  if (f.a == 0 || f.b == 0 || f.c == 0) raise(ErrorCode::NotSquareFree, "coefficients must be nonzero");
  const BigInt product = BigInt(f.a) * f.b * f.c;
  const std::int64_t p64 = to_int64(product);
  if (squarefree_part(p64) != p64) raise(ErrorCode::NotSquareFree, "abc is not square-free");
}

bool is_square_mod(std::int64_t r, std::int64_t m) {
  if (m < 1) raise(ErrorCode::WrongShape, "modulus must be positive");
  if (m == 1) return true;
  for (const auto& [prime, exp] : factorize(static_cast<std::uint64_t>(m))) {
    if (exp > 1) raise(ErrorCode::NotSquareFree, "modulus must be square-free");
    if (prime == 2) continue;
    const auto q = static_cast<Residue>(prime);
    const Residue residue = reduce_signed(r, q);
    if (residue != 0 && pow_mod(residue, (q - 1) / 2, q) != 1) return false;
  }
  return true;
}

LegendreVerdict legendre_verdict(const TernaryForm& f) {
  validate(f);
  LegendreVerdict v;
  const bool all_positive = f.a > 0 && f.b > 0 && f.c > 0;
  const bool all_negative = f.a < 0 && f.b < 0 && f.c < 0;
  v.mixed_signs = !all_positive && !all_negative;
  v.residue_mod_a = is_square_mod(-f.b * f.c, std::llabs(f.a));
  v.residue_mod_b = is_square_mod(-f.a * f.c, std::llabs(f.b));
  v.residue_mod_c = is_square_mod(-f.a * f.b, std::llabs(f.c));
  return v;
}

bool legendre_solvable(const TernaryForm& f) { return legendre_verdict(f).solvable(); }

Diagonalization diagonalize_ternary(const RationalMatrix& q) {
  if (!q.is_symmetric()) raise(ErrorCode::WrongShape, "quadratic form matrix must be symmetric");
  const std::size_t n = q.rows();
  RationalMatrix a = q;
  RationalMatrix p = RationalMatrix::identity(n);

  // Column operation col_dst += factor * col_src, applied as a congruence.
  auto add_multiple = [&](std::size_t dst, std::size_t src, const Rational& factor) {
    for (std::size_t r = 0; r < n; ++r) a(r, dst) += factor * a(r, src);
    for (std::size_t c = 0; c < n; ++c) a(dst, c) += factor * a(src, c);
    for (std::size_t r = 0; r < n; ++r) p(r, dst) += factor * p(r, src);
  };
  auto swap_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(p(r, i), p(r, j));
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) continue;
        add_multiple(k, j, 1);  // new diagonal entry 2 a(k, j)
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j) != 0) add_multiple(j, k, -a(k, j) / a(k, k));
    }
  }

  Diagonalization out;
  out.transform = p;
  for (std::size_t i = 0; i < n; ++i) {
    out.diagonal.push_back(a(i, i));
    if (a(i, i) == 0) {
      out.squarefree.push_back(0);
    } else {
      // d = num/den ~ num * den (times den^2).
      const BigInt scaled = numerator(a(i, i)) * denominator(a(i, i));
      out.squarefree.push_back(squarefree_part(to_int64(scaled)));
    }
  }
  return out;
}

std::optional<TernaryForm> to_legendre_form(const std::vector<std::int64_t>& d) {
  if (d.size() != 3) raise(ErrorCode::WrongShape, "ternary form expected");
  std::array<std::int64_t, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (d[i] == 0) return std::nullopt;
    v[i] = squarefree_part(d[i]);
  }
  for (bool changed = true; changed;) {
    changed = false;
    const std::int64_t common = std::gcd(std::gcd(v[0], v[1]), v[2]);
    if (common > 1) {
      for (auto& x : v) x /= common;
      changed = true;
    }
    // A prime q dividing two coefficients moves onto the third:
    // <qa', qb', c> ~ <a', b', qc>.
    for (std::size_t i = 0; i < 3 && !changed; ++i) {
      const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
      const std::int64_t g = std::gcd(v[i], v[j]);
      if (g > 1) {
        v[i] /= g;
        v[j] /= g;
        v[k] = squarefree_part(v[k] * g);
        changed = true;
      }
    }
  }
  return TernaryForm{v[0], v[1], v[2]};
}

RationalMatrix witness_quadratic_form() {
  const Rational half(1, 2);
  return {{1, 0, half}, {0, 1, -3 * half}, {half, -3 * half, 1}};
}

CycloElement witness_element(const Rational& c1, const Rational& c2, const Rational& c3) {
  return CycloElement{0, 1, 1, 0} * c1 + CycloElement{-1, 0, 0, 1} * c2 + CycloElement{1, 1, 0, 0} * c3;
}

bool Section6Report::pass() const {
  return coefficient_failures == 0 && parametrization_failures == 0 && congruence_ok && anisotropic &&
         grid_failures == 0 && random_failures == 0;
}

Section6Report verify_section6(const Section6Options& options) {
  Section6Report report;
  report.seed = options.seed;
  report.grid = options.grid;
  std::mt19937_64 rng(options.seed);

  for (std::size_t t = 0; t < options.random_samples; ++t) {
    const CycloElement b(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng));
    const Rational coeff = degeneracy_coefficient(b[0], b[1], b[2], b[3]);
    const auto coords = l2_coordinates(b * cyclo_sigma(b, 2));
    const bool ok = coords && coords->period == coeff && isotropy_form(b[0], b[1], b[2], b[3]) == -coeff;
    ++report.coefficient_checked;
    if (!ok) ++report.coefficient_failures;
  }

  const RationalMatrix q = witness_quadratic_form();
  auto q_value = [&](const Rational& c1, const Rational& c2, const Rational& c3) {
    const std::array<Rational, 3> c{c1, c2, c3};
    Rational acc = 0;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t s = 0; s < 3; ++s) acc += q(r, s) * c[r] * c[s];
    return acc;
  };
  auto check_element = [&](const Rational& c1, const Rational& c2, const Rational& c3, std::size_t& checked,
                           std::size_t& failures) {
    const CycloElement b = witness_element(c1, c2, c3);
    ++report.parametrization_checked;
    if (degeneracy_coefficient(b[0], b[1], b[2], b[3]) != -q_value(c1, c2, c3)) ++report.parametrization_failures;
    ++checked;
    if (gram_rational(b).rank != 4) ++failures;
  };

  const int n = options.grid;
  for (int c1 = -n; c1 <= n; ++c1)
    for (int c2 = -n; c2 <= n; ++c2)
      for (int c3 = -n; c3 <= n; ++c3) {
        if (c1 == 0 && c2 == 0 && c3 == 0) continue;
        check_element(c1, c2, c3, report.grid_checked, report.grid_failures);
      }
  for (std::size_t t = 0; t < options.random_samples; ++t) {
    Rational c1, c2, c3;
    do {
      c1 = random_rational(rng);
      c2 = random_rational(rng);
      c3 = random_rational(rng);
    } while (c1 == 0 && c2 == 0 && c3 == 0);
    check_element(c1, c2, c3, report.random_checked, report.random_failures);
  }

  report.diagonalization = diagonalize_ternary(q);
  RationalMatrix diag(3, 3);
  for (std::size_t i = 0; i < 3; ++i) diag(i, i) = report.diagonalization.diagonal[i];
  const RationalMatrix& p = report.diagonalization.transform;
  report.congruence_ok = p.transpose() * q * p == diag && rational_rank(p) == 3;

  report.legendre_form = options.override_form ? options.override_form
                                               : to_legendre_form(report.diagonalization.squarefree);
  if (report.legendre_form) {
    report.verdict = legendre_verdict(*report.legendre_form);
    report.anisotropic = !report.verdict.solvable();
  }
  return report;
}

}  // namespace cyclerank::q5
