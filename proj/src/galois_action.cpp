#include "cyclerank/galois_action.hpp"

#include <numeric>

#include "cyclerank/errors.hpp"

namespace cyclerank {

GfMatrix sigma_matrix(const ExtensionContext& ctx, unsigned i) { return ctx.sigma_power(i); }

SubspaceSpec eigenspace(const ExtensionContext& ctx, unsigned t, Eigenvalue lambda) {
  const unsigned n = ctx.degree();
  if (t == 0 || t > n) raise(ErrorCode::WrongShape, "eigenspace power must lie in [1, n]");
  const Residue p = ctx.prime();
  GfMatrix shifted = ctx.sigma_power(t);
  const Residue diag = lambda == Eigenvalue::Plus ? p - 1 : 1;  // adds -lambda
  for (unsigned r = 0; r < n; ++r) shifted(r, r) = add_mod(shifted(r, r), diag, p);

  SubspaceSpec out;
  out.kind = SubspaceKind::Eigenspace;
  out.label = "ker(sigma^" + std::to_string(t) + (lambda == Eigenvalue::Plus ? " - 1)" : " + 1)");
  for (auto& v : kernel_basis(shifted)) out.basis.push_back(ctx.from_coeffs(v));
  return out;
}

SubspaceSpec fixed_field_basis(const ExtensionContext& ctx, unsigned i) {
  SubspaceSpec out = eigenspace(ctx, i, Eigenvalue::Plus);
  out.kind = SubspaceKind::FixedField;
  out.label = "L_" + std::to_string(i);
  return out;
}

unsigned order_of(unsigned n, unsigned i) {
  i %= n;
  if (i == 0) return 1;
  return n / std::gcd(n, i);
}

std::size_t coefficient_rank(const ExtensionContext& ctx, std::span<const FieldElement> elements) {
  std::vector<std::vector<Residue>> rows;
  rows.reserve(elements.size());
  for (const auto& e : elements) {
    ctx.check_owner(e);
    rows.emplace_back(e.coeffs().begin(), e.coeffs().end());
  }
  return span_rank(rows, ctx.prime());
}

std::vector<FieldElement> concatenate_bases(std::span<const SubspaceSpec> spaces) {
  std::vector<FieldElement> out;
  for (const auto& s : spaces) out.insert(out.end(), s.basis.begin(), s.basis.end());
  return out;
}

}  // namespace cyclerank
