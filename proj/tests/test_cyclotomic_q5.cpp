#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclerank/cyclotomic_q5.hpp"
#include "cyclerank/errors.hpp"
#include "cyclerank/modular.hpp"
#include "oracles.hpp"

using namespace cyclerank;
using namespace cyclerank::q5;

namespace {

CycloElement eta() { return {0, 1, 0, 0}; }

Rational random_rational(std::mt19937_64& rng) {
  const auto num = static_cast<std::int64_t>(draw_below(rng, 41)) - 20;
  const auto den = static_cast<std::int64_t>(draw_below(rng, 9)) + 1;
  return Rational(num, den);
}

}  // namespace

TEST_CASE("arithmetic in Q(eta)") {
  CycloElement power = CycloElement::one();
  for (int k = 0; k < 5; ++k) power = power * eta();
  CHECK(power == CycloElement::one());
  CHECK(eta() * CycloElement::eta_power(4) == CycloElement::one());
  CHECK(CycloElement::eta_power(-1) == CycloElement::eta_power(4));
  CycloElement sum;
  for (int k = 0; k < 5; ++k) sum = sum + CycloElement::eta_power(k);
  CHECK(sum.is_zero());
  const CycloElement one_plus_eta{1, 1, 0, 0};
  CHECK(one_plus_eta * one_plus_eta == CycloElement{1, 2, 1, 0});
}

TEST_CASE("Galois action and trace") {
  CHECK(cyclo_sigma(eta(), 1) == CycloElement::eta_power(3));
  CHECK(cyclo_sigma(CycloElement::eta_power(2), 1) == eta());
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const CycloElement u{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
    const CycloElement v{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
    CHECK(cyclo_sigma(u, 4) == u);
    CHECK(cyclo_sigma(u * v, 1) == cyclo_sigma(u, 1) * cyclo_sigma(v, 1));
    // The trace is the sum of the four conjugates.
    CycloElement conj_sum;
    for (unsigned j = 0; j < 4; ++j) conj_sum = conj_sum + cyclo_sigma(u, j);
    CHECK(conj_sum == CycloElement{cyclo_trace(u), 0, 0, 0});
  }
}

TEST_CASE("degeneracy coefficient") {
  CHECK(degeneracy_coefficient(1, 0, 0, 0) == 0);
  CHECK(degeneracy_coefficient(0, 1, 1, 0) == -1);
  CHECK(isotropy_form(0, 1, 1, 0) == 1);
  // Against the product b sigma^2(b), expanded in exact arithmetic.
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const CycloElement b{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
    const auto prod = b * cyclo_sigma(b, 2);
    const auto coords = l2_coordinates(prod);
    REQUIRE(coords.has_value());
    CHECK(coords->period == degeneracy_coefficient(b[0], b[1], b[2], b[3]));
  }
  CHECK_FALSE(l2_coordinates(eta()).has_value());
}

TEST_CASE("rank trichotomy over Q") {
  CHECK(gram_rational(CycloElement{}).rank == 0);
  CHECK(gram_rational(CycloElement::one()).rank == 2);
  CHECK(gram_rational(CycloElement{0, 1, 1, 0}).rank == 4);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const CycloElement b{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
    const auto g = gram_rational(b);
    const auto coeff = degeneracy_coefficient(b[0], b[1], b[2], b[3]);
    if (b.is_zero()) {
      CHECK(g.rank == 0);
    } else {
      CHECK(g.rank == (coeff == 0 ? 2u : 4u));
    }
    CHECK(g.entries.transpose() == g.entries * RationalMatrix{{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}});
  }
}

TEST_CASE("matrix helpers") {
  const RationalMatrix m{{1, 2}, {3, 4}};
  CHECK(m * RationalMatrix::identity(2) == m);
  CHECK(rational_rank(m) == 2);
  CHECK(rational_rank(RationalMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(rational_rank(RationalMatrix(3, 3)) == 0);
  CHECK(m.transpose() == RationalMatrix{{1, 3}, {2, 4}});
  CHECK_FALSE(m.is_symmetric());
}

TEST_CASE("diagonalization") {
  const auto q = witness_quadratic_form();
  const auto d = diagonalize_ternary(q);
  CHECK(d.diagonal == std::vector<Rational>{1, 1, Rational(-3, 2)});
  CHECK(d.squarefree == std::vector<std::int64_t>{1, 1, -6});
  RationalMatrix diag(3, 3);
  for (std::size_t k = 0; k < 3; ++k) diag(k, k) = d.diagonal[k];
  CHECK(d.transform.transpose() * q * d.transform == diag);
  CHECK(rational_rank(d.transform) == 3);

  const auto id = diagonalize_ternary(RationalMatrix::identity(3));
  CHECK(id.transform == RationalMatrix::identity(3));
  CHECK(id.diagonal == std::vector<Rational>{1, 1, 1});

  const auto zero = diagonalize_ternary(RationalMatrix(3, 3));
  CHECK(zero.diagonal == std::vector<Rational>{0, 0, 0});

  // A form with zero diagonal needs the off-diagonal fold.
  const RationalMatrix hyperbolic{{0, 1, 0}, {1, 0, 0}, {0, 0, 5}};
  const auto h = diagonalize_ternary(hyperbolic);
  RationalMatrix hd(3, 3);
  for (std::size_t k = 0; k < 3; ++k) hd(k, k) = h.diagonal[k];
  CHECK(h.transform.transpose() * hyperbolic * h.transform == hd);
}

TEST_CASE("congruent forms share their diagonal classes") {
  std::mt19937_64 rng(4);
  const auto q = witness_quadratic_form();
  for (int t = 0; t < 20; ++t) {
    RationalMatrix m(3, 3);
    do {
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = static_cast<std::int64_t>(draw_below(rng, 7)) - 3;
    } while (rational_rank(m) < 3);
    const auto congruent = m.transpose() * q * m;
    const auto d = diagonalize_ternary(congruent);
    const auto form = to_legendre_form(d.squarefree);
    REQUIRE(form.has_value());
    CHECK_FALSE(legendre_solvable(*form));
  }
}

TEST_CASE("Legendre criterion on reference forms") {
  CHECK_FALSE(legendre_solvable({1, 1, -6}));
  const auto v = legendre_verdict({1, 1, -6});
  CHECK(v.mixed_signs);
  CHECK_FALSE(v.residue_mod_c);
  CHECK(legendre_solvable({1, 1, -2}));
  CHECK_FALSE(legendre_solvable({1, 1, 1}));
  CHECK_FALSE(legendre_verdict({1, 1, 1}).mixed_signs);
  CHECK(legendre_solvable({1, 1, -1}));
  CHECK_THROWS_AS(legendre_solvable({1, 2, -2}), MathError);
  CHECK_THROWS_AS(legendre_solvable({4, 1, -1}), MathError);
  CHECK(squarefree_part(-12) == -3);
  CHECK(squarefree_part(18) == 2);
  CHECK(is_square_mod(-1, 5));
  CHECK_FALSE(is_square_mod(-1, 6));
  CHECK(is_square_mod(0, 1));
}

TEST_CASE("Legendre criterion against bounded search") {
  // Soundness: no solution exists in the box when the criterion says none exists.
  // Completeness (heuristic): solvable forms with small |abc| have a small zero.
  std::size_t solvable = 0;
  std::size_t missed = 0;
  for (const auto& t : oracle::squarefree_triples(12)) {
    const auto [a, b, c] = t;
    const std::int64_t m = std::max({std::abs(a), std::abs(b), std::abs(c)});
    const auto found = oracle::ternary_zero_search(a, b, c, 4 * m * m);
    const bool verdict = legendre_solvable({a, b, c});
    if (!verdict) CHECK_MESSAGE(!found.has_value(), a << "," << b << "," << c);
    if (verdict) {
      ++solvable;
      if (std::abs(a * b * c) <= 200 && !found) ++missed;
    }
  }
  CHECK(solvable > 0);
  CHECK(missed == 0);
}

TEST_CASE("section6 certificate chain") {
  const auto r = verify_section6();
  CHECK(r.pass());
  CHECK(r.anisotropic);
  CHECK(r.coefficient_checked == 1000);
  CHECK(r.coefficient_failures == 0);
  CHECK(r.grid_checked == 9260);
  CHECK(r.grid_failures == 0);
  CHECK(r.congruence_ok);
  CHECK(gram_rational(witness_element(1, 0, 0)).rank == 4);

  Section6Options small;
  small.grid = 2;
  const auto s = verify_section6(small);
  CHECK(s.anisotropic);
  CHECK(s.grid_checked == 124);

  Section6Options tampered;
  tampered.override_form = TernaryForm{1, 1, -2};
  CHECK_FALSE(verify_section6(tampered).anisotropic);
}
