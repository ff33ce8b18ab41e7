#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclerank/field_tower.hpp"

namespace cyclerank {

enum class SubspaceKind { E, V1, V2, Lk, U, V, FixedField, Eigenspace, Custom };

/// A labelled GF(p)-subspace of L given by a basis.
struct SubspaceSpec {
  SubspaceKind kind = SubspaceKind::Custom;
  std::string label;
  std::vector<FieldElement> basis;
  /// Constant rank its nonzero skew-forms f_{b,sigma} should have, if known.
  std::optional<unsigned> expected_rank;
  std::string provenance;

  std::size_t dimension() const { return basis.size(); }
};

enum class Eigenvalue { Plus = 1, Minus = -1 };

/// Matrix of sigma^i in the power basis (equals frobenius_matrix()^i).
GfMatrix sigma_matrix(const ExtensionContext& ctx, unsigned i);

/// Basis of {b : sigma^t(b) = lambda b}, 1 <= t <= n, read off the RREF of
/// sigma^t - lambda I (free columns in increasing order).
SubspaceSpec eigenspace(const ExtensionContext& ctx, unsigned t, Eigenvalue lambda);

/// Basis of the fixed field L_i of sigma^i, 1 <= i <= n. Its dimension is gcd(n, i).
SubspaceSpec fixed_field_basis(const ExtensionContext& ctx, unsigned i);

/// Order of sigma^i in Gal(L/K) = Z/n.
unsigned order_of(unsigned n, unsigned i);
inline unsigned order_of(const ExtensionContext& ctx, unsigned i) { return order_of(ctx.degree(), i); }

/// Rank of the coefficient vectors of the given elements.
std::size_t coefficient_rank(const ExtensionContext& ctx, std::span<const FieldElement> elements);

/// All basis vectors of the given subspaces, in order.
std::vector<FieldElement> concatenate_bases(std::span<const SubspaceSpec> spaces);

}  // namespace cyclerank
