#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclerank/decomposition.hpp"
#include "cyclerank/errors.hpp"
#include "cyclerank/skew_forms.hpp"
#include "oracles.hpp"

using namespace cyclerank;

namespace {

std::vector<std::vector<Residue>> rows_of(const GfMatrix& m) {
  std::vector<std::vector<Residue>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

FieldElement random_nonzero(const ExtensionContext& ctx, std::mt19937_64& rng) {
  const std::uint64_t q = *ctx.field_size();
  return ctx.element_at(1 + draw_below(rng, q - 1));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const MathError& e) {
    return e.code();
  }
  FAIL("expected a MathError");
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("Gram matrices agree with the defining trace formula") {
  std::mt19937_64 rng(5);
  for (auto [p, n] : std::vector<std::pair<Residue, unsigned>>{{3, 4}, {3, 5}, {5, 4}, {3, 6}, {7, 3}}) {
    const ExtensionContext ctx(p, n);
    for (unsigned i = 1; i < n; ++i) {
      for (int t = 0; t < 10; ++t) {
        const auto b = random_nonzero(ctx, rng);
        const auto g = gram(ctx, b, i);
        CHECK(rows_of(g.entries) == oracle::gram_by_definition(ctx, b, i));
        CHECK(is_alternating(g.entries));
        CHECK(g.power_i == i);
        CHECK(g.source_b == b);
      }
    }
  }
}

TEST_CASE("rank agrees with a kernel-counting oracle") {
  std::mt19937_64 rng(9);
  for (auto [p, n] : std::vector<std::pair<Residue, unsigned>>{{3, 4}, {3, 6}, {5, 4}, {3, 8}}) {
    const ExtensionContext ctx(p, n);
    for (unsigned i = 1; i < n; ++i) {
      for (int t = 0; t < 6; ++t) {
        const auto g = gram(ctx, random_nonzero(ctx, rng), i);
        CHECK(rank(g) == oracle::rank_by_kernel_count(rows_of(g.entries), p));
        CHECK(rank(g) % 2 == 0);
      }
    }
  }
}

TEST_CASE("b -> f_b is linear") {
  std::mt19937_64 rng(13);
  const ExtensionContext ctx(7, 4);
  const SkewFormMap map(ctx, 1);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_nonzero(ctx, rng);
    const auto b = random_nonzero(ctx, rng);
    const Residue c = static_cast<Residue>(draw_below(rng, 7));
    CHECK(map.entries(ctx.add(ctx.scale(a, c), b)) == map.entries(a).scaled(c) + map.entries(b));
  }
  CHECK(map.entries(ctx.zero()).is_zero());
  CHECK(map.basis_image(2) == map.entries(ctx.pow(ctx.theta(), 2)));
}

TEST_CASE("rank is invariant under change of basis") {
  std::mt19937_64 rng(17);
  const ExtensionContext ctx(3, 6);
  for (int t = 0; t < 30; ++t) {
    GfMatrix m(6, 6, 3);
    do {
      for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c) m(r, c) = static_cast<Residue>(draw_below(rng, 3));
    } while (determinant(m) == 0);
    const auto g = gram(ctx, random_nonzero(ctx, rng), 1 + static_cast<unsigned>(draw_below(rng, 5)));
    const GfMatrix congruent = m.transpose() * g.entries * m;
    CHECK(rank(congruent) == rank(g.entries));
    CHECK(is_alternating(congruent));
  }
}

TEST_CASE("flatten_upper") {
  const ExtensionContext ctx(3, 4);
  const auto g = gram(ctx, ctx.theta(), 1);
  const auto v = flatten_upper(g.entries);
  REQUIRE(v.size() == 6);
  CHECK(v[0] == g.entries(0, 1));
  CHECK(v[2] == g.entries(0, 3));
  CHECK(v[5] == g.entries(2, 3));
}

TEST_CASE("GF(3^4) reference ranks") {
  const ExtensionContext ctx(3, 4);
  CHECK(rank(gram(ctx, ctx.zero(), 1)) == 0);
  CHECK(rank(gram(ctx, ctx.one(), 1)) == 2);
  CHECK(predicted_rank(ctx, ctx.one(), 1) == 2);
  CHECK(is_degenerate_by_norm(ctx, ctx.one(), 1));
  const auto e1 = eigenspace(ctx, 2, Eigenvalue::Minus);
  for (std::uint64_t idx = 1; idx < 9; ++idx) {
    const auto b = ctx.add(ctx.scale(e1.basis[0], idx % 3), ctx.scale(e1.basis[1], idx / 3));
    CHECK(rank(gram(ctx, b, 1)) == 4);
    CHECK_FALSE(is_degenerate_by_norm(ctx, b, 1));
  }
  // Involution: every nonzero form of B^1 has full rank.
  const auto comp = build_component(ctx, 2);
  for (const auto& g : comp.basis_grams) CHECK(rank(g) == 4);
}

TEST_CASE("nonzero constants give degenerate forms when 4 | n") {
  for (auto [p, n] : std::vector<std::pair<Residue, unsigned>>{{3, 4}, {7, 8}, {3, 12}}) {
    const ExtensionContext ctx(p, n);
    for (Residue c = 1; c < p; ++c) CHECK(is_degenerate_by_norm(ctx, ctx.from_prime_field(c), 1));
  }
}

TEST_CASE("norm predicate and predicted rank match the rank on whole fields") {
  for (auto [p, n] : std::vector<std::pair<Residue, unsigned>>{{3, 4}, {3, 6}, {5, 4}, {3, 5}}) {
    const ExtensionContext ctx(p, n);
    for (unsigned i = 1; i < n; ++i) {
      const SkewFormMap map(ctx, i);
      for (std::uint64_t idx = 1; idx < *ctx.field_size(); ++idx) {
        const auto b = ctx.element_at(idx);
        const auto observed = rank(map.entries(b));
        if (map.is_involution()) {
          if (observed != 0) CHECK(observed == n);
          continue;
        }
        CHECK(predicted_rank(ctx, b, i) == observed);
        CHECK(is_degenerate_by_norm(ctx, b, i) == (observed < n));
      }
    }
  }
}

TEST_CASE("predicted_rank preconditions") {
  const ExtensionContext ctx(3, 6);
  CHECK(predicted_rank(ctx, ctx.theta(), 2) == 4);
  CHECK(predicted_rank(ctx, ctx.theta(), 3) == 6);
  CHECK(code_of([&] { predicted_rank(ctx, ctx.zero(), 1); }) == ErrorCode::ZeroElement);
  CHECK(code_of([&] { predicted_rank(ctx, ctx.one(), 6); }) == ErrorCode::IdentityAutomorphism);
  CHECK(code_of([&] { is_degenerate_by_norm(ctx, ctx.one(), 3); }) == ErrorCode::InvolutionNotSupported);
  CHECK(code_of([&] { SkewFormMap(ctx, 0); }) == ErrorCode::IdentityAutomorphism);
}

TEST_CASE("degeneracy witness on E_1 is never degenerate") {
  const ExtensionContext ctx(7, 8);
  const auto e1 = eigenspace(ctx, 4, Eigenvalue::Minus);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    FieldElement b = ctx.zero();
    for (const auto& v : e1.basis) b = ctx.add(b, ctx.scale(v, static_cast<Residue>(draw_below(rng, 7))));
    if (b.is_zero()) continue;
    const auto w = degeneracy_witness(ctx, b, 1);
    CHECK_FALSE(w.is_degenerate);
    CHECK(rank(gram(ctx, b, 1)) == 8);
  }
}

TEST_CASE("degeneracy witness on E_3 of GF(3^16) is always degenerate") {
  const ExtensionContext ctx(3, 16);
  const auto e3 = eigenspace(ctx, 2, Eigenvalue::Minus);
  REQUIRE(e3.dimension() == 2);
  for (std::uint64_t idx = 1; idx < 9; ++idx) {
    const auto b = ctx.add(ctx.scale(e3.basis[0], idx % 3), ctx.scale(e3.basis[1], idx / 3));
    const auto w = degeneracy_witness(ctx, b, 3);
    CHECK(w.is_degenerate);
    CHECK(ctx.mul(ctx.frobenius_power(w.eta, 1), w.eta) == ctx.neg(ctx.one()));
    CHECK(rank(gram(ctx, b, 1)) == 14);
  }
}

TEST_CASE("degeneracy witness preconditions") {
  const ExtensionContext ctx(3, 8);
  const auto e2 = eigenspace(ctx, 2, Eigenvalue::Minus);
  CHECK(code_of([&] { degeneracy_witness(ctx, ctx.zero(), 1); }) == ErrorCode::ZeroElement);
  CHECK(code_of([&] { degeneracy_witness(ctx, e2.basis[0], 1); }) == ErrorCode::NotInEigenspace);
  CHECK(code_of([&] { degeneracy_witness(ctx, e2.basis[0], 3); }) == ErrorCode::WrongShape);
  const ExtensionContext six(3, 6);
  CHECK(code_of([&] { degeneracy_witness(six, six.one(), 1); }) == ErrorCode::WrongShape);
}
