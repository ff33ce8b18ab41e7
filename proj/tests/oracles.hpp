// Brute-force reference computations for the test suites. None of these go
// through the cached Frobenius matrices, the Gram map or the elimination code
// of the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "cyclerank/field_tower.hpp"
#include "cyclerank/modular.hpp"

namespace oracle {

using cyclerank::ExtensionContext;
using cyclerank::FieldElement;
using cyclerank::Residue;

/// Remainder of f modulo the monic g over GF(p), coefficients low degree first.
inline std::vector<Residue> poly_mod(std::vector<Residue> f, const std::vector<Residue>& g, Residue p) {
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const Residue lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t k = 0; k <= dg; ++k) {
      f[shift + k] = cyclerank::sub_mod(f[shift + k], cyclerank::mul_mod(lead, g[k], p), p);
    }
    f.pop_back();
  }
  return f;
}

/// Irreducibility by trial division through every monic polynomial of degree
/// 1..deg/2.
inline bool irreducible_by_trial(const std::vector<Residue>& f, Residue p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < d; ++k) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Residue> g(d + 1, 0);
      g[d] = 1;
      std::uint64_t rest = idx;
      for (std::size_t k = 0; k < d; ++k) {
        g[k] = static_cast<Residue>(rest % p);
        rest /= p;
      }
      auto r = poly_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](Residue c) { return c == 0; })) return false;
    }
  }
  return true;
}

/// sigma^i(b) as b^(p^i) by repeated exponentiation.
inline FieldElement frobenius_by_pow(const ExtensionContext& ctx, const FieldElement& b, unsigned i) {
  FieldElement out = b;
  for (unsigned s = 0; s < i % ctx.degree(); ++s) out = ctx.pow(out, ctx.prime());
  return out;
}

/// Absolute trace as the sum of all conjugates, returned as a residue.
inline Residue absolute_trace(const ExtensionContext& ctx, const FieldElement& b) {
  FieldElement sum = ctx.zero();
  FieldElement conj = b;
  for (unsigned j = 0; j < ctx.degree(); ++j) {
    sum = ctx.add(sum, conj);
    conj = ctx.pow(conj, ctx.prime());
  }
  return sum[0];
}

/// Gram matrix of f_{b,sigma^i} straight from tr(b(x s(y) - s(x) y)) on the
/// power basis.
inline std::vector<std::vector<Residue>> gram_by_definition(const ExtensionContext& ctx, const FieldElement& b,
                                                            unsigned i) {
  const unsigned n = ctx.degree();
  std::vector<FieldElement> basis;
  for (unsigned k = 0; k < n; ++k) basis.push_back(ctx.pow(ctx.theta(), k));
  std::vector<FieldElement> twisted;
  for (const auto& e : basis) twisted.push_back(frobenius_by_pow(ctx, e, i));
  std::vector<std::vector<Residue>> g(n, std::vector<Residue>(n));
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned c = 0; c < n; ++c) {
      const auto inner = ctx.sub(ctx.mul(basis[r], twisted[c]), ctx.mul(twisted[r], basis[c]));
      g[r][c] = absolute_trace(ctx, ctx.mul(b, inner));
    }
  }
  return g;
}

/// Rank of a square matrix over GF(p) as n - log_p |kernel|, counting the
/// kernel by enumeration. Only for p^n up to a few hundred thousand.
inline unsigned rank_by_kernel_count(const std::vector<std::vector<Residue>>& m, Residue p) {
  const std::size_t n = m.size();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= p;
  std::uint64_t kernel = 0;
  std::vector<Residue> v(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = static_cast<Residue>(rest % p);
      rest /= p;
    }
    bool zero = true;
    for (std::size_t r = 0; r < n && zero; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < n; ++c) acc = (acc + std::uint64_t{m[r][c]} * v[c]) % p;
      zero = acc == 0;
    }
    kernel += zero;
  }
  unsigned dim = 0;
  while (kernel > 1) {
    kernel /= p;
    ++dim;
  }
  return static_cast<unsigned>(n) - dim;
}

inline bool is_perfect_square(std::int64_t v) {
  if (v < 0) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

/// Nontrivial (X, Y, Z) with aX^2 + bY^2 + cZ^2 = 0 and X, Y in [0, bound].
inline std::optional<std::tuple<std::int64_t, std::int64_t, std::int64_t>> ternary_zero_search(
    std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t bound) {
  for (std::int64_t x = 0; x <= bound; ++x) {
    for (std::int64_t y = 0; y <= bound; ++y) {
      if (x == 0 && y == 0) continue;
      const std::int64_t num = -(a * x * x + b * y * y);
      if (num % c != 0) continue;
      const std::int64_t z2 = num / c;
      if (is_perfect_square(z2)) {
        return std::tuple{x, y, static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(z2))))};
      }
    }
  }
  return std::nullopt;
}

inline bool squarefree(std::int64_t v) {
  v = v < 0 ? -v : v;
  if (v == 0) return false;
  for (std::int64_t d = 2; d * d <= v; ++d) {
    if (v % (d * d) == 0) return false;
  }
  return true;
}

/// Triples with abc square-free and |a|, |b|, |c| <= limit, one per class
/// under permutation and global sign.
inline std::vector<std::array<std::int64_t, 3>> squarefree_triples(std::int64_t limit) {
  std::set<std::array<std::int64_t, 3>> seen;
  std::vector<std::array<std::int64_t, 3>> out;
  for (std::int64_t a = -limit; a <= limit; ++a) {
    for (std::int64_t b = -limit; b <= limit; ++b) {
      for (std::int64_t c = -limit; c <= limit; ++c) {
        if (a == 0 || b == 0 || c == 0 || !squarefree(a * b * c)) continue;
        std::array<std::int64_t, 3> key{a, b, c};
        std::sort(key.begin(), key.end());
        std::array<std::int64_t, 3> flipped{-a, -b, -c};
        std::sort(flipped.begin(), flipped.end());
        key = std::min(key, flipped);
        if (seen.insert(key).second) out.push_back(key);
      }
    }
  }
  return out;
}

}  // namespace oracle
