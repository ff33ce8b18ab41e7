#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace cyclerank {

/// A residue in [0, p). The prime is always carried by the owning context or
/// matrix, never by the residue itself.
using Residue = std::uint32_t;

/// Upper bound (exclusive) on supported primes: residue products fit in 64 bits.
inline constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 31;

inline Residue add_mod(Residue a, Residue b, Residue p) {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Residue>(s >= p ? s - p : s);
}

inline Residue sub_mod(Residue a, Residue b, Residue p) {
  return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p - b);
}

inline Residue neg_mod(Residue a, Residue p) { return a == 0 ? 0 : p - a; }

inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(std::uint64_t{a} * b % p);
}

Residue pow_mod(Residue base, std::uint64_t exp, Residue p);

/// Inverse of a nonzero residue (Fermat). Throws DivisionByZero on 0.
Residue inv_mod(Residue a, Residue p);

/// Reduces a signed integer into [0, p).
inline Residue reduce_signed(std::int64_t v, Residue p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t v);

/// Prime factorization as {prime: exponent}. Pollard rho above the trial bound.
std::map<std::uint64_t, unsigned> factorize(std::uint64_t v);

/// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

/// Splits v > 0 as 2^two_power * odd_part.
struct TwoAdicSplit {
  unsigned two_power;
  std::uint64_t odd_part;
};
TwoAdicSplit split_two_adic(std::uint64_t v);

/// Unbiased draw in [0, bound) from raw generator output. Used instead of
/// std::uniform_int_distribution so sampled runs reproduce across standard
/// library implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound);

/// Name of the generator recorded in reports.
inline constexpr const char* kRngName = "mt19937_64";

}  // namespace cyclerank
