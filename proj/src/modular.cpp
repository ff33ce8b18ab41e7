#include "cyclerank/modular.hpp"

#include <numeric>

#include "cyclerank/errors.hpp"

namespace cyclerank {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod64(result, base, m);
    base = mul_mod64(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t pollard_rho(std::uint64_t v) {
  if (v % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto step = [&](std::uint64_t t) { return (mul_mod64(t, t, v) + c) % v; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = std::gcd(x > y ? x - y : y - x, v);
    }
    if (d != v) return d;
  }
}

void factor_into(std::uint64_t v, std::map<std::uint64_t, unsigned>& out) {
  if (v == 1) return;
  if (is_prime(v)) {
    ++out[v];
    return;
  }
  const std::uint64_t d = pollard_rho(v);
  factor_into(d, out);
  factor_into(v / d, out);
}

}  // namespace

Residue pow_mod(Residue base, std::uint64_t exp, Residue p) {
  return static_cast<Residue>(pow_mod64(base, exp, p));
}

Residue inv_mod(Residue a, Residue p) {
  if (a % p == 0) raise(ErrorCode::DivisionByZero, "inverse of zero residue");
  return pow_mod(a, p - 2, p);
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (v % small == 0) return v == small;
  }
  std::uint64_t d = v - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod64(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod64(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::map<std::uint64_t, unsigned> factorize(std::uint64_t v) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t d = 2; d < 1000 && d * d <= v; ++d) {
    while (v % d == 0) {
      ++out[d];
      v /= d;
    }
  }
  factor_into(v, out);
  return out;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

TwoAdicSplit split_two_adic(std::uint64_t v) {
  TwoAdicSplit out{0, v};
  while (out.odd_part != 0 && out.odd_part % 2 == 0) {
    out.odd_part /= 2;
    ++out.two_power;
  }
  return out;
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

}  // namespace cyclerank
