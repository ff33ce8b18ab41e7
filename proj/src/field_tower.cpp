#include "cyclerank/field_tower.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "cyclerank/errors.hpp"

namespace cyclerank {
namespace {

std::atomic<std::uint64_t> next_context_id{1};

void trim(Polynomial& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Polynomial poly_mod(Polynomial a, const Polynomial& f, Residue p) {
  trim(a);
  const std::size_t deg = f.size() - 1;
  const Residue lead_inv = inv_mod(f.back(), p);
  while (a.size() > deg) {
    const std::size_t shift = a.size() - 1 - deg;
    const Residue c = mul_mod(a.back(), lead_inv, p);
    for (std::size_t j = 0; j <= deg; ++j) {
      a[shift + j] = sub_mod(a[shift + j], mul_mod(c, f[j], p), p);
    }
    trim(a);
  }
  return a;
}

Polynomial poly_mulmod(const Polynomial& a, const Polynomial& b, const Polynomial& f, Residue p) {
  if (a.empty() || b.empty()) return {};
  Polynomial prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = add_mod(prod[i + j], mul_mod(a[i], b[j], p), p);
    }
  }
  return poly_mod(std::move(prod), f, p);
}

Polynomial poly_powmod(Polynomial base, std::uint64_t e, const Polynomial& f, Residue p) {
  Polynomial result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Polynomial poly_gcd(Polynomial a, Polynomial b, Residue p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Polynomial r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

void validate_prime(std::uint64_t p) {
  if (!is_prime(p) || p >= kMaxPrime) {
    raise(ErrorCode::InvalidPrime, std::to_string(p) + " is not a prime below 2^31");
  }
}

}  // namespace

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Residue c) { return c == 0; });
}

bool is_irreducible(const Polynomial& f, Residue p) {
  if (f.size() < 2 || f.back() != 1) return false;
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  const Polynomial x{0, 1};
  Polynomial frob = x;  // x^(p^d) mod f
  for (unsigned d = 1; d <= n; ++d) {
    frob = poly_powmod(frob, p, f, p);
    if (d == n) break;
    if (n % d != 0) continue;
    Polynomial diff = frob;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = sub_mod(diff[1], 1, p);
    const Polynomial g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  trim(frob);
  return frob == x;
}

Polynomial find_irreducible(std::uint64_t p, unsigned n) {
  validate_prime(p);
  if (n < 2) raise(ErrorCode::InvalidDegree, "extension degree must be at least 2");
  const auto prime = static_cast<Residue>(p);
  // Candidate digits: coefficient 0 is the most significant position. A zero
  // constant term is never irreducible, so the search starts at c0 = 1.
  std::vector<Residue> digits(n, 0);
  digits[0] = 1;
  for (;;) {
    Polynomial f(digits.begin(), digits.end());
    f.push_back(1);
    if (is_irreducible(f, prime)) return f;
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < prime) break;
      if (pos == 0) raise(ErrorCode::InternalInconsistency, "no irreducible polynomial found");
      digits[pos] = 0;
    }
  }
}

ExtensionContext::ExtensionContext(std::uint64_t p, unsigned n)
    : ExtensionContext(p, find_irreducible(p, n)) {}

ExtensionContext::ExtensionContext(std::uint64_t p, Polynomial modulus)
    : p_(0), n_(0), modulus_(std::move(modulus)), id_(next_context_id++) {
  validate_prime(p);
  if (p == 2) raise(ErrorCode::InvalidPrime, "characteristic 2 is not supported");
  p_ = static_cast<Residue>(p);
  if (modulus_.size() < 3 || modulus_.size() > 65) {
    raise(ErrorCode::InvalidDegree, "extension degree must lie in [2, 64]");
  }
  n_ = static_cast<unsigned>(modulus_.size() - 1);
  if (!is_irreducible(modulus_, p_)) {
    raise(ErrorCode::ReducibleModulus, "modulus is not monic irreducible");
  }
  build();
}

void ExtensionContext::build() {
  std::vector<std::vector<Residue>> cols;
  const Polynomial x{0, 1};
  Polynomial theta_p = poly_powmod(x, p_, modulus_, p_);
  Polynomial image{1};
  for (unsigned j = 0; j < n_; ++j) {
    std::vector<Residue> col(image.begin(), image.end());
    col.resize(n_, 0);
    cols.push_back(std::move(col));
    image = poly_mulmod(image, theta_p, modulus_, p_);
  }
  const GfMatrix frob = GfMatrix::from_columns(cols, p_);

  sigma_powers_.clear();
  sigma_powers_.push_back(GfMatrix::identity(n_, p_));
  for (unsigned i = 1; i < n_; ++i) sigma_powers_.push_back(sigma_powers_.back() * frob);
  if (sigma_powers_.back() * frob != sigma_powers_.front()) {
    raise(ErrorCode::InternalInconsistency, "Frobenius matrix does not have order dividing n");
  }
  for (unsigned d = 1; d < n_; ++d) {
    if (n_ % d == 0 && sigma_powers_[d] == sigma_powers_.front()) {
      raise(ErrorCode::InternalInconsistency, "Frobenius matrix has order below n");
    }
  }

  power_traces_.assign(2 * n_ - 1, 0);
  FieldElement power = one();
  const FieldElement t = theta();
  for (unsigned j = 0; j + 1 < 2 * n_; ++j) {
    power_traces_[j] = trace(power, 1)[0];
    power = mul(power, t);
  }

  field_size_ = checked_pow(p_, n_);
  if (field_size_) unit_factors_ = factorize(*field_size_ - 1);
}

const std::map<std::uint64_t, unsigned>& ExtensionContext::unit_group_factors() const {
  if (!unit_factors_) {
    raise(ErrorCode::SizeLimit, "p^n does not fit in 64 bits; unit group order unavailable");
  }
  return *unit_factors_;
}

void ExtensionContext::check_owner(const FieldElement& a) const {
  if (a.context_id() != id_ || a.coeffs().size() != n_) {
    raise(ErrorCode::ContextMismatch, "element belongs to a different extension context");
  }
}

FieldElement ExtensionContext::zero() const { return make(std::vector<Residue>(n_, 0)); }

FieldElement ExtensionContext::one() const { return from_prime_field(1); }

FieldElement ExtensionContext::theta() const {
  std::vector<Residue> c(n_, 0);
  c[1] = 1;
  return make(std::move(c));
}

FieldElement ExtensionContext::from_prime_field(Residue c) const {
  std::vector<Residue> coeffs(n_, 0);
  coeffs[0] = c % p_;
  return make(std::move(coeffs));
}

FieldElement ExtensionContext::from_coeffs(std::span<const Residue> coeffs) const {
  std::vector<Residue> c(n_, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i >= n_) {
      if (coeffs[i] % p_ != 0) raise(ErrorCode::ContextMismatch, "coefficient vector longer than n");
      continue;
    }
    c[i] = coeffs[i] % p_;
  }
  return make(std::move(c));
}

FieldElement ExtensionContext::from_signed(std::span<const std::int64_t> coeffs) const {
  std::vector<Residue> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(reduce_signed(v, p_));
  return from_coeffs(c);
}

FieldElement ExtensionContext::element_at(std::uint64_t index) const {
  if (field_size_ && index >= *field_size_) {
    raise(ErrorCode::SizeLimit, "element index out of range");
  }
  std::vector<Residue> c(n_, 0);
  for (unsigned i = 0; i < n_ && index > 0; ++i) {
    c[i] = static_cast<Residue>(index % p_);
    index /= p_;
  }
  return make(std::move(c));
}

std::uint64_t ExtensionContext::index_of(const FieldElement& a) const {
  check_owner(a);
  if (!field_size_) raise(ErrorCode::SizeLimit, "p^n does not fit in 64 bits");
  std::uint64_t index = 0;
  for (unsigned i = n_; i-- > 0;) index = index * p_ + a[i];
  return index;
}

FieldElement ExtensionContext::add(const FieldElement& a, const FieldElement& b) const {
  check_owner(a);
  check_owner(b);
  std::vector<Residue> c(n_);
  for (unsigned i = 0; i < n_; ++i) c[i] = add_mod(a[i], b[i], p_);
  return make(std::move(c));
}

FieldElement ExtensionContext::sub(const FieldElement& a, const FieldElement& b) const {
  check_owner(a);
  check_owner(b);
  std::vector<Residue> c(n_);
  for (unsigned i = 0; i < n_; ++i) c[i] = sub_mod(a[i], b[i], p_);
  return make(std::move(c));
}

FieldElement ExtensionContext::neg(const FieldElement& a) const {
  check_owner(a);
  std::vector<Residue> c(n_);
  for (unsigned i = 0; i < n_; ++i) c[i] = neg_mod(a[i], p_);
  return make(std::move(c));
}

FieldElement ExtensionContext::mul(const FieldElement& a, const FieldElement& b) const {
  check_owner(a);
  check_owner(b);
  std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    }
  }
  // Reduce with the monic modulus: theta^n = -(f_0 + ... + f_{n-1} theta^{n-1}).
  for (std::size_t k = prod.size(); k-- > n_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      const std::uint64_t t = c * modulus_[j] % p_;
      prod[k - n_ + j] = (prod[k - n_ + j] + p_ - t) % p_;
    }
  }
  std::vector<Residue> out(n_);
  for (unsigned i = 0; i < n_; ++i) out[i] = static_cast<Residue>(prod[i]);
  return make(std::move(out));
}

FieldElement ExtensionContext::scale(const FieldElement& a, Residue c) const {
  check_owner(a);
  std::vector<Residue> out(n_);
  for (unsigned i = 0; i < n_; ++i) out[i] = mul_mod(a[i], c % p_, p_);
  return make(std::move(out));
}

FieldElement ExtensionContext::pow(const FieldElement& a, std::uint64_t e) const {
  check_owner(a);
  FieldElement result = one();
  FieldElement base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

FieldElement ExtensionContext::inv(const FieldElement& a) const {
  check_owner(a);
  if (a.is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero");
  // a^(-1) = a^(r - 1) * N(a)^(-1) with r = (p^n - 1)/(p - 1) = 1 + p + ... + p^(n-1),
  // i.e. the product of the conjugates other than a itself over the norm.
  FieldElement others = one();
  for (unsigned i = 1; i < n_; ++i) others = mul(others, frobenius_power(a, i));
  const FieldElement full = mul(others, a);
  const Residue norm_inv = inv_mod(full[0], p_);
  return scale(others, norm_inv);
}

FieldElement ExtensionContext::div(const FieldElement& a, const FieldElement& b) const {
  return mul(a, inv(b));
}

FieldElement ExtensionContext::frobenius_power(const FieldElement& b, std::uint64_t i) const {
  check_owner(b);
  return make(sigma_power(i).apply(b.coeffs()));
}

FieldElement ExtensionContext::trace(const FieldElement& b, unsigned sub) const {
  if (sub == 0 || n_ % sub != 0) {
    raise(ErrorCode::InvalidSubfield, "subfield degree " + std::to_string(sub) + " does not divide n");
  }
  FieldElement acc = zero();
  for (unsigned j = 0; j < n_ / sub; ++j) acc = add(acc, frobenius_power(b, std::uint64_t{sub} * j));
  return acc;
}

FieldElement ExtensionContext::norm(const FieldElement& b, unsigned sub) const {
  if (sub == 0 || n_ % sub != 0) {
    raise(ErrorCode::InvalidSubfield, "subfield degree " + std::to_string(sub) + " does not divide n");
  }
  FieldElement acc = one();
  for (unsigned j = 0; j < n_ / sub; ++j) acc = mul(acc, frobenius_power(b, std::uint64_t{sub} * j));
  return acc;
}

std::uint64_t ExtensionContext::multiplicative_order(const FieldElement& b) const {
  check_owner(b);
  if (b.is_zero()) raise(ErrorCode::ZeroElement, "zero has no multiplicative order");
  const auto& factors = unit_group_factors();
  std::uint64_t order = *field_size_ - 1;
  for (const auto& [r, e] : factors) {
    for (unsigned k = 0; k < e; ++k) {
      if (pow(b, order / r) != one()) break;
      order /= r;
    }
  }
  return order;
}

FieldElement ExtensionContext::multiplicative_generator() const {
  const auto& factors = unit_group_factors();
  const std::uint64_t group = *field_size_ - 1;
  const FieldElement unit = one();
  for (std::uint64_t index = 1; index < *field_size_; ++index) {
    const FieldElement g = element_at(index);
    bool primitive = true;
    for (const auto& entry : factors) {
      if (pow(g, group / entry.first) == unit) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  raise(ErrorCode::InternalInconsistency, "no primitive element found");
}

}  // namespace cyclerank
