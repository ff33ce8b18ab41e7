#include "cyclerank/skew_forms.hpp"

#include <numeric>
#include <string>

#include "cyclerank/errors.hpp"
#include "cyclerank/galois_action.hpp"

namespace cyclerank {

SkewFormMap::SkewFormMap(const ExtensionContext& ctx, unsigned i)
    : ctx_(&ctx), i_(i % ctx.degree()), order_(order_of(ctx, i)) {
  if (i_ == 0) raise(ErrorCode::IdentityAutomorphism, "sigma^i must not be the identity");
  const unsigned n = ctx.degree();
  const Residue p = ctx.prime();
  const auto traces = ctx.power_traces();

  std::vector<FieldElement> powers;
  std::vector<FieldElement> images;
  FieldElement power = ctx.one();
  for (unsigned r = 0; r < n; ++r) {
    powers.push_back(power);
    images.push_back(ctx.frobenius_power(power, i_));
    power = ctx.mul(power, ctx.theta());
  }

  images_.assign(n, GfMatrix(n, n, p));
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned s = r + 1; s < n; ++s) {
      const FieldElement c = ctx.sub(ctx.mul(powers[r], images[s]), ctx.mul(images[r], powers[s]));
      // tr(theta^k c) = sum_m c_m tr(theta^(k+m)).
      for (unsigned k = 0; k < n; ++k) {
        std::uint64_t acc = 0;
        for (unsigned m = 0; m < n; ++m) acc = (acc + std::uint64_t{c[m]} * traces[k + m]) % p;
        images_[k](r, s) = static_cast<Residue>(acc);
        images_[k](s, r) = neg_mod(static_cast<Residue>(acc), p);
      }
    }
  }
}

GfMatrix SkewFormMap::entries(const FieldElement& b) const {
  ctx_->check_owner(b);
  const Residue p = ctx_->prime();
  const unsigned n = ctx_->degree();
  std::vector<std::uint64_t> acc(n * n, 0);
  for (unsigned k = 0; k < n; ++k) {
    const std::uint64_t coeff = b[k];
    if (coeff == 0) continue;
    const auto& img = images_[k].data();
    for (std::size_t e = 0; e < acc.size(); ++e) acc[e] = (acc[e] + coeff * img[e]) % p;
  }
  GfMatrix out(n, n, p);
  for (unsigned r = 0; r < n; ++r)
    for (unsigned s = 0; s < n; ++s) out(r, s) = static_cast<Residue>(acc[r * n + s]);
  return out;
}

GramMatrix SkewFormMap::gram(const FieldElement& b) const { return {entries(b), b, i_}; }

GramMatrix gram(const ExtensionContext& ctx, const FieldElement& b, unsigned i) {
  return SkewFormMap(ctx, i).gram(b);
}

std::size_t rank(const GramMatrix& g) { return rank(g.entries); }

bool is_alternating(const GfMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m(r, r) != 0) return false;
    for (std::size_t s = r + 1; s < m.cols(); ++s) {
      if (add_mod(m(r, s), m(s, r), m.prime()) != 0) return false;
    }
  }
  return true;
}

std::vector<Residue> flatten_upper(const GfMatrix& m) {
  std::vector<Residue> out;
  out.reserve(m.rows() * (m.rows() - 1) / 2);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t s = r + 1; s < m.cols(); ++s) out.push_back(m(r, s));
  return out;
}

bool is_degenerate_by_norm(const ExtensionContext& ctx, const FieldElement& b, unsigned i) {
  ctx.check_owner(b);
  if (b.is_zero()) raise(ErrorCode::ZeroElement, "norm criterion needs b != 0");
  const unsigned n = ctx.degree();
  if (order_of(ctx, i) <= 2) {
    raise(ErrorCode::InvolutionNotSupported,
          "norm criterion requires ord(sigma^" + std::to_string(i) + ") > 2");
  }
  const unsigned sub = std::gcd(n, 2 * (i % n));  // L_{2i} has degree gcd(n, 2i) over K

  const FieldElement twisted = ctx.frobenius_power(b, i);
  const bool quotient_form = ctx.norm(ctx.div(twisted, b), sub) == ctx.one();

  const FieldElement partial_norm = ctx.norm(b, sub);
  const bool invariance_form = ctx.frobenius_power(partial_norm, i) == partial_norm;

  if (quotient_form != invariance_form) {
    raise(ErrorCode::InternalInconsistency, "norm-quotient and invariance forms of the criterion disagree");
  }
  return quotient_form;
}

unsigned predicted_rank(const ExtensionContext& ctx, const FieldElement& b, unsigned i) {
  ctx.check_owner(b);
  const unsigned n = ctx.degree();
  if (i % n == 0) raise(ErrorCode::IdentityAutomorphism, "sigma^i must not be the identity");
  if (b.is_zero()) raise(ErrorCode::ZeroElement, "predicted rank needs b != 0");
  const unsigned ord = order_of(ctx, i);
  if (ord % 2 == 1) return n - n / ord;
  if (ord == 2) return n;
  return is_degenerate_by_norm(ctx, b, i) ? n - 2 * n / ord : n;
}

DegeneracyWitness degeneracy_witness(const ExtensionContext& ctx, const FieldElement& b, unsigned i_index) {
  ctx.check_owner(b);
  const unsigned n = ctx.degree();
  const auto [alpha, k] = split_two_adic(n);
  if (alpha < 2) raise(ErrorCode::WrongShape, "witness requires 4 | n");
  if (i_index < 1 || i_index > alpha - 1) {
    raise(ErrorCode::WrongShape, "eigenspace index must lie in [1, alpha - 1]");
  }
  if (b.is_zero()) raise(ErrorCode::ZeroElement, "witness requires b != 0");
  const unsigned half_period = n >> i_index;  // n / 2^i
  if (ctx.frobenius_power(b, half_period) != ctx.neg(b)) {
    raise(ErrorCode::NotInEigenspace, "b is not in E_" + std::to_string(i_index));
  }

  DegeneracyWitness out;
  out.w = ctx.one();
  for (unsigned j = 0; 2 * j < half_period; ++j) out.w = ctx.mul(out.w, ctx.frobenius_power(b, 2 * j));
  out.eta = ctx.div(ctx.frobenius_power(out.w, 1), out.w);

  const std::uint64_t two_pow = std::uint64_t{1} << i_index;
  FieldElement rhs = ctx.pow(out.w, two_pow);
  if ((n / 4) % 2 == 1) rhs = ctx.neg(rhs);
  if (ctx.norm(b, 2) != rhs) {
    raise(ErrorCode::InternalInconsistency, "N_{L/L_2}(b) != (-1)^(n/4) w^(2^i)");
  }

  out.is_degenerate = ctx.pow(out.eta, two_pow) == ctx.one();
  if (ctx.field_size()) out.eta_order = ctx.multiplicative_order(out.eta);
  if (out.eta_order && (two_pow % *out.eta_order == 0) != out.is_degenerate) {
    raise(ErrorCode::InternalInconsistency, "eta order disagrees with eta^(2^i) = 1");
  }
  if (out.is_degenerate && ctx.mul(ctx.frobenius_power(out.eta, 1), out.eta) != ctx.neg(ctx.one())) {
    raise(ErrorCode::InternalInconsistency, "degenerate witness with sigma(eta) eta != -1");
  }
  return out;
}

}  // namespace cyclerank
