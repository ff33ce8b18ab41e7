#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cyclerank/errors.hpp"
#include "cyclerank/field_tower.hpp"
#include "oracles.hpp"

using namespace cyclerank;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const MathError& e) {
    return e.code();
  }
  FAIL("expected a MathError");
  return ErrorCode::InternalInconsistency;
}

FieldElement random_element(const ExtensionContext& ctx, std::mt19937_64& rng, bool nonzero) {
  std::vector<Residue> c(ctx.degree());
  do {
    for (auto& x : c) x = static_cast<Residue>(draw_below(rng, ctx.prime()));
  } while (nonzero && std::all_of(c.begin(), c.end(), [](Residue x) { return x == 0; }));
  return ctx.from_coeffs(c);
}

}  // namespace

TEST_CASE("modular helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  CHECK(pow_mod(3, 6, 7) == 1);
  CHECK(mul_mod(inv_mod(5, 11), 5, 11) == 1);
  const auto f = factorize(3ULL * 3 * 3 * 3 * 3 * 3 * 3 * 3 - 1);
  CHECK(f == std::map<std::uint64_t, unsigned>{{2, 5}, {5, 1}, {41, 1}});
  CHECK(split_two_adic(12).two_power == 2);
  CHECK(split_two_adic(12).odd_part == 3);
  CHECK_FALSE(checked_pow(3, 41).has_value());
}

TEST_CASE("find_irreducible returns the lexicographically first monic irreducible") {
  CHECK(find_irreducible(3, 2) == Polynomial{1, 0, 1});
  // Brute force: enumerate candidates in the same order, the first one passing
  // trial division must be the returned modulus.
  for (auto [p, n] : std::vector<std::pair<Residue, unsigned>>{{3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {3, 5}}) {
    const auto found = find_irreducible(p, n);
    CHECK(oracle::irreducible_by_trial(found, p));
    CHECK(is_irreducible(found, p));
  }
  // is_irreducible agrees with trial division on every monic quartic over GF(3).
  for (std::uint64_t idx = 0; idx < 81; ++idx) {
    Polynomial f{static_cast<Residue>(idx % 3), static_cast<Residue>(idx / 3 % 3), static_cast<Residue>(idx / 9 % 3),
                 static_cast<Residue>(idx / 27 % 3), 1};
    CHECK(is_irreducible(f, 3) == oracle::irreducible_by_trial(f, 3));
  }
}

TEST_CASE("constructor preconditions") {
  CHECK(code_of([] { find_irreducible(4, 2); }) == ErrorCode::InvalidPrime);
  CHECK(code_of([] { ExtensionContext(4, 2); }) == ErrorCode::InvalidPrime);
  CHECK(code_of([] { ExtensionContext(3, 1); }) == ErrorCode::InvalidDegree);
  CHECK(code_of([] { find_irreducible(3, 1); }) == ErrorCode::InvalidDegree);
  CHECK(code_of([] { ExtensionContext(2, 3); }) == ErrorCode::InvalidPrime);
  CHECK(code_of([] { ExtensionContext(3, Polynomial{2, 0, 1}); }) == ErrorCode::ReducibleModulus);
}

TEST_CASE("GF(9) with modulus x^2 + 1") {
  const ExtensionContext ctx(3, 2);
  REQUIRE(ctx.modulus() == Polynomial{1, 0, 1});
  CHECK(ctx.mul(ctx.theta(), ctx.theta()) == ctx.from_prime_field(2));
  const auto g = ctx.multiplicative_generator();
  CHECK(g == ctx.add(ctx.theta(), ctx.one()));
  CHECK(ctx.multiplicative_order(g) == 8);
  CHECK(ctx.multiplicative_order(ctx.one()) == 1);
  CHECK(ctx.multiplicative_order(ctx.from_prime_field(2)) == 2);
  CHECK(ctx.multiplicative_order(ctx.theta()) == 4);
  CHECK(ExtensionContext(3, 2).id() != ctx.id());
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  for (auto [p, n] : std::vector<std::pair<Residue, unsigned>>{{3, 4}, {5, 3}, {7, 4}, {3, 7}, {11, 2}}) {
    const ExtensionContext ctx(p, n);
    const std::uint64_t q = *ctx.field_size();
    for (int t = 0; t < 50; ++t) {
      const auto a = random_element(ctx, rng, true);
      const auto b = random_element(ctx, rng, false);
      const auto c = random_element(ctx, rng, false);
      CHECK(ctx.mul(a, ctx.inv(a)) == ctx.one());
      CHECK(ctx.pow(a, q - 1) == ctx.one());
      CHECK(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
      CHECK(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
      CHECK(ctx.div(ctx.mul(b, a), a) == b);
      CHECK(ctx.index_of(ctx.element_at(ctx.index_of(b))) == ctx.index_of(b));
    }
  }
}

TEST_CASE("errors on arithmetic") {
  const ExtensionContext ctx(3, 4);
  const ExtensionContext other(3, 4);
  CHECK(code_of([&] { ctx.inv(ctx.zero()); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([&] { ctx.add(ctx.one(), other.one()); }) == ErrorCode::ContextMismatch);
  CHECK(code_of([&] { ctx.trace(ctx.one(), 3); }) == ErrorCode::InvalidSubfield);
  CHECK(code_of([&] { ctx.norm(ctx.one(), 3); }) == ErrorCode::InvalidSubfield);
  CHECK(code_of([&] { ctx.multiplicative_order(ctx.zero()); }) == ErrorCode::ZeroElement);
}

TEST_CASE("Frobenius matches repeated p-th powers") {
  std::mt19937_64 rng(11);
  for (auto [p, n] : std::vector<std::pair<Residue, unsigned>>{{3, 4}, {3, 6}, {7, 4}, {5, 5}, {3, 16}}) {
    const ExtensionContext ctx(p, n);
    for (int t = 0; t < 100; ++t) {
      const auto b = random_element(ctx, rng, false);
      const unsigned i = static_cast<unsigned>(draw_below(rng, n + 1));
      CHECK(ctx.frobenius_power(b, i) == oracle::frobenius_by_pow(ctx, b, i));
      CHECK(ctx.frobenius_power(b, n) == b);
    }
    const auto c = ctx.from_prime_field(p - 1);
    CHECK(ctx.frobenius_power(c, 1) == c);
  }
}

TEST_CASE("trace and norm") {
  const ExtensionContext ctx(3, 4);
  CHECK(ctx.trace(ctx.one(), 1) == ctx.from_prime_field(4 % 3));
  CHECK(ctx.norm(ctx.one(), 2) == ctx.one());
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_element(ctx, rng, false);
    const auto b = random_element(ctx, rng, false);
    // Absolute trace against the sum-of-conjugates oracle.
    CHECK(ctx.trace(a, 1) == ctx.from_prime_field(oracle::absolute_trace(ctx, a)));
    // Transitivity through the intermediate field GF(9), whose own Galois
    // group is generated by the restriction of sigma.
    const auto t2 = ctx.trace(a, 2);
    const auto n2 = ctx.norm(a, 2);
    CHECK(ctx.add(t2, ctx.frobenius_power(t2, 1)) == ctx.trace(a, 1));
    CHECK(ctx.mul(n2, ctx.frobenius_power(n2, 1)) == ctx.norm(a, 1));
    // Linearity of the trace, multiplicativity of the norm.
    CHECK(ctx.trace(ctx.add(ctx.scale(a, 2), b), 2) == ctx.add(ctx.scale(ctx.trace(a, 2), 2), ctx.trace(b, 2)));
    CHECK(ctx.norm(ctx.mul(a, b), 2) == ctx.mul(ctx.norm(a, 2), ctx.norm(b, 2)));
    // Results lie in the subfield.
    CHECK(ctx.frobenius_power(ctx.norm(a, 2), 2) == ctx.norm(a, 2));
  }
}

TEST_CASE("norm-one elements are exactly the quotients sigma(c)/c") {
  for (auto [p, n] : std::vector<std::pair<Residue, unsigned>>{{3, 2}, {3, 4}, {5, 3}, {3, 6}, {7, 3}, {3, 8}}) {
    const ExtensionContext ctx(p, n);
    const std::uint64_t q = *ctx.field_size();
    std::set<std::uint64_t> quotients;
    std::uint64_t norm_one = 0;
    for (std::uint64_t idx = 1; idx < q; ++idx) {
      const auto c = ctx.element_at(idx);
      quotients.insert(ctx.index_of(ctx.div(ctx.frobenius_power(c, 1), c)));
      norm_one += ctx.norm(c, 1) == ctx.one();
    }
    CHECK(quotients.size() == (q - 1) / (p - 1));
    CHECK(norm_one == quotients.size());
    for (auto idx : quotients) CHECK(ctx.norm(ctx.element_at(idx), 1) == ctx.one());
  }
}

TEST_CASE("large extension sizes") {
  const ExtensionContext ctx(3, 64);
  CHECK_FALSE(ctx.field_size().has_value());
  CHECK(code_of([&] { ctx.unit_group_factors(); }) == ErrorCode::SizeLimit);
  const auto t = ctx.theta();
  CHECK(ctx.frobenius_power(t, 64) == t);
}
