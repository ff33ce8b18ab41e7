#pragma once

#include <optional>
#include <vector>

#include "cyclerank/field_tower.hpp"
#include "cyclerank/linalg.hpp"

namespace cyclerank {

/// Gram matrix of f_{b,sigma^i}(x, y) = tr(b (x sigma^i(y) - sigma^i(x) y)) in
/// the power basis.
struct GramMatrix {
  GfMatrix entries;
  FieldElement source_b;
  unsigned power_i = 0;
};

/// The GF(p)-linear map b -> Gram(f_{b,sigma^i}) for a fixed power i.
///
/// Stores the n Gram matrices of the basis elements theta^k, so evaluating a
/// form is n^3 multiply-adds instead of n^2 field multiplications and traces.
class SkewFormMap {
 public:
  SkewFormMap(const ExtensionContext& ctx, unsigned i);

  unsigned power() const { return i_; }
  /// Order of sigma^i.
  unsigned order() const { return order_; }
  bool is_involution() const { return order_ == 2; }

  GfMatrix entries(const FieldElement& b) const;
  GramMatrix gram(const FieldElement& b) const;
  /// Gram matrix of theta^k.
  const GfMatrix& basis_image(unsigned k) const { return images_[k]; }

 private:
  const ExtensionContext* ctx_;
  unsigned i_;
  unsigned order_;
  std::vector<GfMatrix> images_;
};

GramMatrix gram(const ExtensionContext& ctx, const FieldElement& b, unsigned i);

std::size_t rank(const GramMatrix& g);

bool is_alternating(const GfMatrix& m);

/// Strictly upper triangular entries, row by row: coordinates of an
/// alternating matrix in Alt_K(L).
std::vector<Residue> flatten_upper(const GfMatrix& m);

/// Norm criterion: f_{b,sigma^i} is degenerate iff N_{L/L_{2i}}(sigma^i(b)/b) = 1.
///
/// Also evaluates the equivalent invariance form (N_{L/L_{2i}}(b) fixed by
/// sigma^i; for i = 1 this is N_{L/L_2}(b) in K) and throws
/// InternalInconsistency if the two disagree.
/// Errors: ZeroElement for b = 0, InvolutionNotSupported when ord(sigma^i) <= 2.
bool is_degenerate_by_norm(const ExtensionContext& ctx, const FieldElement& b, unsigned i);

/// Rank of f_{b,sigma^i} predicted from the order of sigma^i and, for even
/// order above 2, the norm criterion. Involutions predict n.
unsigned predicted_rank(const ExtensionContext& ctx, const FieldElement& b, unsigned i);

struct DegeneracyWitness {
  FieldElement w;
  FieldElement eta;
  /// Multiplicative order of eta; unset when p^n exceeds 64 bits.
  std::optional<std::uint64_t> eta_order;
  bool is_degenerate = false;
};

/// For b in E_{i_index} \ {0} (n = 2^alpha k, 1 <= i_index <= alpha - 1):
/// w = b sigma^2(b) ... sigma^(n/2^i - 2)(b), eta = sigma(w)/w. The form
/// f_{b,sigma} is degenerate iff eta^(2^i) = 1.
///
/// Checks N_{L/L_2}(b) = (-1)^(n/4) w^(2^i), and sigma(eta) eta = -1 when
/// degenerate, throwing InternalInconsistency on failure.
DegeneracyWitness degeneracy_witness(const ExtensionContext& ctx, const FieldElement& b, unsigned i_index);

}  // namespace cyclerank
