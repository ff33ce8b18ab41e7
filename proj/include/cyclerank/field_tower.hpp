#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cyclerank/linalg.hpp"
#include "cyclerank/modular.hpp"

namespace cyclerank {

/// Polynomial over GF(p), coefficient i multiplies x^i.
using Polynomial = std::vector<Residue>;

/// Monic irreducible test: x^(p^n) = x mod f and gcd(x^(p^d) - x, f) = 1 for
/// every proper divisor d of n = deg f.
bool is_irreducible(const Polynomial& f, Residue p);

/// Lexicographically smallest monic irreducible polynomial of degree n over
/// GF(p), comparing coefficients from the constant term upwards.
Polynomial find_irreducible(std::uint64_t p, unsigned n);

/// An element of GF(p^n) in the power basis 1, theta, ..., theta^(n-1).
/// Elements only make sense relative to the context that produced them.
class FieldElement {
 public:
  FieldElement() = default;

  std::span<const Residue> coeffs() const { return coeffs_; }
  Residue operator[](std::size_t i) const { return coeffs_[i]; }
  std::uint64_t context_id() const { return context_id_; }
  bool is_zero() const;

  bool operator==(const FieldElement& other) const = default;

 private:
  friend class ExtensionContext;
  FieldElement(std::uint64_t id, std::vector<Residue> coeffs)
      : context_id_(id), coeffs_(std::move(coeffs)) {}

  std::uint64_t context_id_ = 0;
  std::vector<Residue> coeffs_;
};

/// The extension L = GF(p^n) over K = GF(p), with sigma the Frobenius x -> x^p.
///
/// Immutable after construction. The modulus defaults to find_irreducible(p, n).
/// Powers of the Frobenius matrix are cached, so sigma^i costs one n x n
/// matrix-vector product.
class ExtensionContext {
 public:
  ExtensionContext(std::uint64_t p, unsigned n);
  ExtensionContext(std::uint64_t p, Polynomial modulus);

  Residue prime() const { return p_; }
  unsigned degree() const { return n_; }
  const Polynomial& modulus() const { return modulus_; }
  std::uint64_t id() const { return id_; }

  /// Column j holds the coordinates of sigma(theta^j).
  const GfMatrix& frobenius_matrix() const { return sigma_powers_[1 % n_]; }
  /// Matrix of sigma^i (i taken mod n).
  const GfMatrix& sigma_power(std::uint64_t i) const { return sigma_powers_[i % n_]; }

  /// p^n, when representable in 64 bits.
  std::optional<std::uint64_t> field_size() const { return field_size_; }
  /// Prime factorization of p^n - 1. Throws SizeLimit when p^n overflows.
  const std::map<std::uint64_t, unsigned>& unit_group_factors() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement theta() const;
  FieldElement from_prime_field(Residue c) const;
  FieldElement from_coeffs(std::span<const Residue> coeffs) const;
  FieldElement from_signed(std::span<const std::int64_t> coeffs) const;
  /// Element whose coefficients are the base-p digits of index, coefficient 0
  /// least significant. Index 0 is zero; 1..p^n-1 enumerate L^x.
  FieldElement element_at(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElement& a) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement scale(const FieldElement& a, Residue c) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement div(const FieldElement& a, const FieldElement& b) const;
  FieldElement pow(const FieldElement& a, std::uint64_t e) const;

  /// sigma^i(b) = b^(p^i), through the cached linear map.
  FieldElement frobenius_power(const FieldElement& b, std::uint64_t i) const;
  /// Trace from L down to GF(p^sub): sum of sigma^(sub*j)(b), j < n/sub.
  FieldElement trace(const FieldElement& b, unsigned sub) const;
  /// Norm from L down to GF(p^sub): product of sigma^(sub*j)(b), j < n/sub.
  FieldElement norm(const FieldElement& b, unsigned sub) const;

  /// Order of b in L^x. Throws ZeroElement on 0.
  std::uint64_t multiplicative_order(const FieldElement& b) const;
  /// First primitive element in element_at order.
  FieldElement multiplicative_generator() const;

  /// Absolute traces tr(theta^j) for 0 <= j <= 2n - 2, as residues.
  std::span<const Residue> power_traces() const { return power_traces_; }

  /// Throws ContextMismatch unless a was produced by this context.
  void check_owner(const FieldElement& a) const;

 private:
  void build();
  FieldElement make(std::vector<Residue> coeffs) const { return {id_, std::move(coeffs)}; }

  Residue p_;
  unsigned n_;
  Polynomial modulus_;
  std::uint64_t id_;
  std::vector<GfMatrix> sigma_powers_;
  std::vector<Residue> power_traces_;
  std::optional<std::uint64_t> field_size_;
  std::optional<std::map<std::uint64_t, unsigned>> unit_factors_;
};

}  // namespace cyclerank
