#include "cyclerank/decomposition.hpp"

#include <algorithm>
#include <string>

#include "cyclerank/errors.hpp"

namespace cyclerank {
namespace {

std::vector<unsigned> dichotomy(unsigned n, unsigned ord) {
  if (ord % 2 == 1) return {n - n / ord};
  return {n - 2 * n / ord, n};
}

bool within(const std::map<unsigned, std::uint64_t>& spectrum, const std::vector<unsigned>& allowed) {
  return std::all_of(spectrum.begin(), spectrum.end(), [&](const auto& entry) {
    return std::find(allowed.begin(), allowed.end(), entry.first) != allowed.end();
  });
}

void finalize(SubspaceReport& report) {
  const bool dimension_ok = !report.expected_dimension || *report.expected_dimension == report.dimension;
  const bool nonempty_checked = report.dimension == 0 || report.survey.checked > 0;
  report.pass = dimension_ok && nonempty_checked && within(report.survey.spectrum, report.allowed_ranks);
}

SubspaceReport survey_forms(std::string label, std::span<const GfMatrix> forms, Residue p,
                            std::optional<unsigned> expected, std::vector<unsigned> allowed,
                            std::optional<std::size_t> expected_dimension, const SurveyLimits& limits,
                            std::mt19937_64& rng) {
  SubspaceReport report;
  report.label = std::move(label);
  report.dimension = forms.size();
  report.expected_rank = expected;
  report.allowed_ranks = expected ? std::vector<unsigned>{*expected} : std::move(allowed);
  report.expected_dimension = expected_dimension;
  report.survey = survey_ranks(forms, p, limits, rng);
  finalize(report);
  return report;
}

std::vector<GfMatrix> forms_of(const SkewFormMap& map, std::span<const FieldElement> basis) {
  std::vector<GfMatrix> forms;
  forms.reserve(basis.size());
  for (const auto& b : basis) forms.push_back(map.entries(b));
  return forms;
}

std::size_t flattened_rank(std::span<const GfMatrix> forms, Residue p) {
  std::vector<std::vector<Residue>> rows;
  rows.reserve(forms.size());
  for (const auto& f : forms) rows.push_back(flatten_upper(f));
  return span_rank(rows, p);
}

std::string component_label(const ComponentReport& c) {
  return c.classification == ComponentClass::Involution ? "B1" : "A^" + std::to_string(c.i);
}

std::uint64_t field_size_or_throw(const ExtensionContext& ctx) {
  const auto size = ctx.field_size();
  if (!size) raise(ErrorCode::SizeLimit, "p^n does not fit in 64 bits");
  return *size;
}

}  // namespace

RankSurvey survey_ranks(std::span<const GfMatrix> basis, Residue p, const SurveyLimits& limits,
                        std::mt19937_64& rng) {
  RankSurvey out;
  if (basis.empty()) return out;
  const std::size_t dim = basis.size();
  const auto total = checked_pow(p, static_cast<unsigned>(dim));
  GfMatrix scratch;

  if (total && *total - 1 <= limits.exhaustive_limit) {
    out.mode = SurveyMode::Exhaustive;
    // Odometer over coefficient vectors; bumping digit j adds basis[j], and a
    // digit wrapping from p-1 to 0 has added basis[j] p times, i.e. nothing.
    std::vector<Residue> digits(dim, 0);
    GfMatrix current(basis[0].rows(), basis[0].cols(), p);
    for (std::uint64_t step = 1; step < *total; ++step) {
      for (std::size_t j = 0; j < dim; ++j) {
        current += basis[j];
        if (++digits[j] < p) break;
        digits[j] = 0;
      }
      scratch = current;
      ++out.spectrum[static_cast<unsigned>(rank_in_place(scratch))];
      ++out.checked;
    }
    return out;
  }

  out.mode = SurveyMode::Sampled;
  std::vector<Residue> coeffs(dim);
  for (std::uint64_t draw = 0; draw < limits.sample_cap; ++draw) {
    bool nonzero = false;
    while (!nonzero) {
      for (auto& c : coeffs) {
        c = static_cast<Residue>(draw_below(rng, p));
        nonzero = nonzero || c != 0;
      }
    }
    GfMatrix combo(basis[0].rows(), basis[0].cols(), p);
    for (std::size_t j = 0; j < dim; ++j) {
      if (coeffs[j] != 0) combo += basis[j].scaled(coeffs[j]);
    }
    ++out.spectrum[static_cast<unsigned>(rank_in_place(combo))];
    ++out.checked;
  }
  return out;
}

ComponentReport build_component(const ExtensionContext& ctx, unsigned i) {
  const unsigned n = ctx.degree();
  const SkewFormMap map(ctx, i);
  ComponentReport out;
  out.i = i % n;
  out.order = map.order();
  out.classification = map.is_involution()    ? ComponentClass::Involution
                       : out.order % 2 == 1 ? ComponentClass::OddOrder
                                            : ComponentClass::EvenOrder;

  std::vector<std::vector<Residue>> kept;
  FieldElement power = ctx.one();
  for (unsigned j = 0; j < n; ++j) {
    GramMatrix g = map.gram(power);
    kept.push_back(flatten_upper(g.entries));
    if (span_rank(kept, ctx.prime()) == kept.size()) {
      out.basis_grams.push_back(std::move(g));
    } else {
      kept.pop_back();
    }
    power = ctx.mul(power, ctx.theta());
  }
  out.dimension = out.basis_grams.size();

  const std::size_t expected = map.is_involution() ? n / 2 : n;
  if (out.dimension != expected) {
    raise(ErrorCode::InternalInconsistency,
          "component A^" + std::to_string(out.i) + " has dimension " + std::to_string(out.dimension) +
              ", expected " + std::to_string(expected));
  }
  return out;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T2: return "T2";
    case TheoremId::TA: return "TA";
    case TheoremId::TC1: return "TC1";
    case TheoremId::TC2: return "TC2";
    case TheoremId::RemarkC: return "RemarkC";
    case TheoremId::DirectSum: return "direct-sum";
    case TheoremId::OddOrder: return "odd-order";
  }
  return "unknown";
}

bool TheoremReport::pass() const {
  if (!direct_sum_ok) return false;
  if (details.count("failures") && details.at("failures") != 0) return false;
  return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.pass; });
}

TheoremReport verify_direct_sum(const ExtensionContext& ctx, const SurveyLimits& limits) {
  const unsigned n = ctx.degree();
  const Residue p = ctx.prime();
  std::mt19937_64 rng(limits.seed);

  std::vector<unsigned> powers;
  if (n % 2 == 0) powers.push_back(n / 2);
  for (unsigned i = 1; i <= (n - 1) / 2; ++i) powers.push_back(i);

  TheoremReport report;
  report.theorem = TheoremId::DirectSum;
  report.p = p;
  report.n = n;
  report.seed = limits.seed;

  std::vector<GfMatrix> all_forms;
  for (unsigned i : powers) {
    const ComponentReport component = build_component(ctx, i);
    std::vector<GfMatrix> forms;
    for (const auto& g : component.basis_grams) forms.push_back(g.entries);
    all_forms.insert(all_forms.end(), forms.begin(), forms.end());

    const unsigned ord = component.order;
    std::optional<unsigned> expected;
    if (component.classification == ComponentClass::Involution) expected = n;
    if (component.classification == ComponentClass::OddOrder) expected = n - n / ord;
    const std::size_t expected_dim = component.classification == ComponentClass::Involution ? n / 2 : n;
    report.components.push_back(survey_forms(component_label(component), forms, p, expected, dichotomy(n, ord),
                                             expected_dim, limits, rng));
  }

  const std::size_t alt_dim = std::size_t{n} * (n - 1) / 2;
  const std::size_t cert = flattened_rank(all_forms, p);
  report.details["alt_dimension"] = static_cast<std::int64_t>(alt_dim);
  report.details["total_dimension"] = static_cast<std::int64_t>(all_forms.size());
  report.details["certificate_rank"] = static_cast<std::int64_t>(cert);
  report.direct_sum_ok = all_forms.size() == alt_dim && cert == alt_dim;
  return report;
}

TheoremReport verify_theorem_1(const ExtensionContext& ctx, const SurveyLimits& limits) {
  if (ctx.degree() % 2 == 0) raise(ErrorCode::WrongShape, "n must be odd");
  TheoremReport report = verify_direct_sum(ctx, limits);
  report.theorem = TheoremId::T1;
  return report;
}

TheoremReport verify_theorem_2(const ExtensionContext& ctx, const SurveyLimits& limits) {
  if (ctx.degree() % 2 == 1) raise(ErrorCode::WrongShape, "n must be even");
  TheoremReport report = verify_direct_sum(ctx, limits);
  report.theorem = TheoremId::T2;
  return report;
}

FieldElement find_nondegenerate_b(const ExtensionContext& ctx, unsigned i) {
  const unsigned ord = order_of(ctx, i);
  if (ord % 2 == 1) raise(ErrorCode::WrongShape, "ord(sigma^i) must be even");
  const std::uint64_t units = field_size_or_throw(ctx) - 1;
  const SkewFormMap map(ctx, i);
  const FieldElement g = ctx.multiplicative_generator();
  FieldElement b = g;
  for (std::uint64_t e = 1; e <= units; ++e) {
    const bool nondegenerate =
        map.is_involution() ? rank(map.entries(b)) == ctx.degree() : !is_degenerate_by_norm(ctx, b, i);
    if (nondegenerate) return b;
    b = ctx.mul(b, g);
  }
  raise(ErrorCode::InternalInconsistency, "no non-degenerate form found");
}

TheoremASplit theorem_A_split(const ExtensionContext& ctx) {
  const unsigned n = ctx.degree();
  if (n % 2 != 0 || (n / 2) % 2 == 0) raise(ErrorCode::WrongShape, "n/2 must be odd");
  const unsigned k = n / 2;
  if (k < 3) raise(ErrorCode::WrongShape, "k = 1 (n = 2) is outside the verified range; need k >= 3");

  TheoremASplit split;
  split.v = fixed_field_basis(ctx, k);
  split.v.kind = SubspaceKind::V;
  split.v.label = "V";
  split.v.expected_rank = n - 2;
  split.v.provenance = "TA";

  split.j = find_nondegenerate_b(ctx, 1);
  split.u.kind = SubspaceKind::U;
  split.u.label = "U";
  split.u.expected_rank = n;
  split.u.provenance = "TA";
  for (const auto& v : split.v.basis) split.u.basis.push_back(ctx.mul(split.j, v));
  return split;
}

TheoremReport verify_theorem_A(const ExtensionContext& ctx, const SurveyLimits& limits) {
  const unsigned n = ctx.degree();
  const Residue p = ctx.prime();
  const TheoremASplit split = theorem_A_split(ctx);
  const unsigned k = n / 2;
  std::mt19937_64 rng(limits.seed);
  const SkewFormMap map(ctx, 1);

  TheoremReport report;
  report.theorem = TheoremId::TA;
  report.p = p;
  report.n = n;
  report.seed = limits.seed;

  const auto u_forms = forms_of(map, split.u.basis);
  const auto v_forms = forms_of(map, split.v.basis);
  report.components.push_back(
      survey_forms("U", u_forms, p, split.u.expected_rank, {}, std::size_t{k}, limits, rng));
  report.components.push_back(
      survey_forms("V", v_forms, p, split.v.expected_rank, {}, std::size_t{k}, limits, rng));

  std::vector<FieldElement> combined = split.u.basis;
  combined.insert(combined.end(), split.v.basis.begin(), split.v.basis.end());
  std::vector<GfMatrix> all_forms = u_forms;
  all_forms.insert(all_forms.end(), v_forms.begin(), v_forms.end());
  const std::size_t element_rank = coefficient_rank(ctx, combined);
  const std::size_t form_rank = flattened_rank(all_forms, p);
  report.details["coefficient_rank"] = static_cast<std::int64_t>(element_rank);
  report.details["form_rank"] = static_cast<std::int64_t>(form_rank);
  if (ctx.field_size()) report.details["j_index"] = static_cast<std::int64_t>(ctx.index_of(split.j));
  report.direct_sum_ok = element_rank == n && form_rank == n;
  return report;
}

InstanceShape instance_shape(std::uint64_t p, unsigned n) {
  const auto ps = split_two_adic(p + 1);
  const auto ns = split_two_adic(n);
  return {ps.two_power, ps.odd_part, ns.two_power, ns.odd_part};
}

std::vector<SubspaceSpec> eigenspace_chain(const ExtensionContext& ctx) {
  const unsigned n = ctx.degree();
  const auto shape = instance_shape(ctx.prime(), n);
  if (shape.alpha < 2) raise(ErrorCode::WrongShape, "4 must divide n");
  const auto k = static_cast<unsigned>(shape.k);

  std::vector<SubspaceSpec> chain;
  SubspaceSpec v1 = eigenspace(ctx, k, Eigenvalue::Plus);
  v1.kind = SubspaceKind::V1;
  v1.label = "V1";
  SubspaceSpec v2 = eigenspace(ctx, k, Eigenvalue::Minus);
  v2.kind = SubspaceKind::V2;
  v2.label = "V2";
  chain.push_back(std::move(v1));
  chain.push_back(std::move(v2));
  for (unsigned i = 1; i < shape.alpha; ++i) {
    SubspaceSpec e = eigenspace(ctx, n >> i, Eigenvalue::Minus);
    e.kind = SubspaceKind::E;
    e.label = "E_" + std::to_string(i);
    chain.push_back(std::move(e));
  }
  return chain;
}

TheoremReport verify_theorem_C(const ExtensionContext& ctx, const SurveyLimits& limits) {
  const unsigned n = ctx.degree();
  const Residue p = ctx.prime();
  if (p % 4 != 3) {
    raise(ErrorCode::HypothesisViolation,
          "-1 is a square in GF(" + std::to_string(p) + "); p = 3 mod 4 required");
  }
  const auto shape = instance_shape(p, n);
  if (shape.alpha < 2) raise(ErrorCode::WrongShape, "4 must divide n");
  const bool first_branch = shape.alpha <= shape.a + 1;
  if (!first_branch && shape.l != 1) {
    raise(ErrorCode::HypothesisViolation,
          "alpha > a + 1 with l > 1 is not covered; use the RemarkC check");
  }

  TheoremReport report;
  report.theorem = first_branch ? TheoremId::TC1 : TheoremId::TC2;
  report.p = p;
  report.n = n;
  report.seed = limits.seed;
  report.details["a"] = shape.a;
  report.details["l"] = static_cast<std::int64_t>(shape.l);
  report.details["alpha"] = shape.alpha;
  report.details["k"] = static_cast<std::int64_t>(shape.k);

  std::mt19937_64 rng(limits.seed);
  const SkewFormMap map(ctx, 1);
  auto chain = eigenspace_chain(ctx);
  std::vector<GfMatrix> all_forms;
  for (std::size_t idx = 0; idx < chain.size(); ++idx) {
    auto& space = chain[idx];
    std::size_t expected_dim = shape.k;
    if (space.kind == SubspaceKind::E) {
      const unsigned i = static_cast<unsigned>(idx - 1);  // chain = V1, V2, E_1, ...
      expected_dim = n >> i;
      space.expected_rank = (first_branch || i <= shape.a) ? n : n - 2;
    } else {
      space.expected_rank = n - 2;
    }
    space.provenance = to_string(report.theorem);
    const auto forms = forms_of(map, space.basis);
    all_forms.insert(all_forms.end(), forms.begin(), forms.end());
    report.components.push_back(
        survey_forms(space.label, forms, p, space.expected_rank, {}, expected_dim, limits, rng));
  }

  const auto elements = concatenate_bases(chain);
  const std::size_t element_rank = coefficient_rank(ctx, elements);
  const std::size_t form_rank = flattened_rank(all_forms, p);
  report.details["coefficient_rank"] = static_cast<std::int64_t>(element_rank);
  report.details["form_rank"] = static_cast<std::int64_t>(form_rank);
  report.direct_sum_ok = elements.size() == n && element_rank == n && form_rank == n;
  return report;
}

TheoremReport remark_C_check(const ExtensionContext& ctx, unsigned i_index, const SurveyLimits& limits) {
  const unsigned n = ctx.degree();
  const Residue p = ctx.prime();
  if (p % 4 != 3) {
    raise(ErrorCode::HypothesisViolation,
          "-1 is a square in GF(" + std::to_string(p) + "); p = 3 mod 4 required");
  }
  const auto shape = instance_shape(p, n);
  if (shape.l == 1) raise(ErrorCode::HypothesisViolation, "l > 1 required (p + 1 is a power of 2)");
  if (shape.alpha <= shape.a + 1) raise(ErrorCode::HypothesisViolation, "alpha > a + 1 required");
  if (i_index < shape.a + 1 || i_index > shape.alpha - 1) {
    raise(ErrorCode::HypothesisViolation, "i must lie in [a + 1, alpha - 1]");
  }
  const std::uint64_t units = field_size_or_throw(ctx) - 1;
  const unsigned m = n >> i_index;
  const std::uint64_t c_order = 2 * (*checked_pow(p, m) - 1);

  TheoremReport report;
  report.theorem = TheoremId::RemarkC;
  report.p = p;
  report.n = n;
  report.seed = limits.seed;
  report.details["i"] = i_index;
  report.details["a"] = shape.a;
  report.details["l"] = static_cast<std::int64_t>(shape.l);
  report.details["C_order"] = static_cast<std::int64_t>(c_order);

  const FieldElement u = ctx.pow(ctx.multiplicative_generator(), units / c_order);
  const std::uint64_t u_order = ctx.multiplicative_order(u);
  report.details["u_order"] = static_cast<std::int64_t>(u_order);

  const SkewFormMap map(ctx, 1);
  const FieldElement u_squared = ctx.mul(u, u);
  const FieldElement minus_one = ctx.neg(ctx.one());
  const SubspaceSpec e_i = eigenspace(ctx, m, Eigenvalue::Minus);

  SubspaceReport multiples, others;
  multiples.label = "E_" + std::to_string(i_index) + ": u^s, l | s";
  multiples.expected_rank = n - 2;
  others.label = "E_" + std::to_string(i_index) + ": u^s, l !| s";
  others.expected_rank = n;
  for (auto* r : {&multiples, &others}) {
    r->dimension = e_i.dimension();
    r->expected_dimension = m;
    r->allowed_ranks = {*r->expected_rank};
  }

  std::int64_t outside_eigenspace = 0, route_disagreements = 0, degenerate = 0, odd_count = 0;
  bool u_degenerate = false, u_l_degenerate = false;
  FieldElement b = u;
  for (std::uint64_t s = 1; s < c_order; s += 2, b = ctx.mul(b, u_squared)) {
    ++odd_count;
    if (ctx.frobenius_power(b, m) != ctx.neg(b)) {
      ++outside_eigenspace;
      continue;
    }
    const auto r = static_cast<unsigned>(rank(map.entries(b)));
    const bool by_rank = r < n;
    const bool by_witness = degeneracy_witness(ctx, b, i_index).is_degenerate;
    const bool by_norm = is_degenerate_by_norm(ctx, b, 1);
    if (by_rank != by_witness || by_rank != by_norm) ++route_disagreements;
    degenerate += by_rank ? 1 : 0;
    if (s == 1) u_degenerate = by_rank;
    if (s == shape.l) u_l_degenerate = by_rank;

    auto& bucket = s % shape.l == 0 ? multiples : others;
    ++bucket.survey.spectrum[r];
    ++bucket.survey.checked;
  }
  finalize(multiples);
  finalize(others);
  report.components.push_back(std::move(multiples));
  report.components.push_back(std::move(others));

  report.details["odd_exponents"] = odd_count;
  report.details["degenerate_count"] = degenerate;
  report.details["outside_eigenspace"] = outside_eigenspace;
  report.details["route_disagreements"] = route_disagreements;
  report.details["u_degenerate"] = u_degenerate;
  report.details["u_l_degenerate"] = u_l_degenerate;
  const bool failures = u_order != c_order || outside_eigenspace != 0 || route_disagreements != 0 ||
                        u_degenerate || !u_l_degenerate;
  report.details["failures"] = failures ? 1 : 0;
  // The odd powers of u exhaust E_i \ {0}: |E_i| - 1 = p^m - 1 = |C| / 2.
  report.direct_sum_ok = e_i.dimension() == m && outside_eigenspace == 0 && u_order == c_order &&
                         static_cast<std::uint64_t>(odd_count) == c_order / 2;
  return report;
}

TheoremReport verify_corollary_odd_order(const ExtensionContext& ctx, unsigned i, const SurveyLimits& limits) {
  const unsigned n = ctx.degree();
  const unsigned ord = order_of(ctx, i);
  if (ord % 2 == 0 || ord == 1) raise(ErrorCode::WrongShape, "ord(sigma^i) must be odd and > 1");
  std::mt19937_64 rng(limits.seed);
  const ComponentReport component = build_component(ctx, i);
  std::vector<GfMatrix> forms;
  for (const auto& g : component.basis_grams) forms.push_back(g.entries);

  TheoremReport report;
  report.theorem = TheoremId::OddOrder;
  report.p = ctx.prime();
  report.n = n;
  report.seed = limits.seed;
  report.details["i"] = i;
  report.details["order"] = ord;
  report.components.push_back(survey_forms(component_label(component), forms, ctx.prime(), n - n / ord, {},
                                           std::size_t{n}, limits, rng));
  report.direct_sum_ok = component.dimension == n;
  return report;
}

bool OracleReport::pass() const {
  return std::all_of(powers.begin(), powers.end(), [&](const PowerHistogram& h) {
    return h.support_ok && h.norm_disagreements == 0 && h.prediction_mismatches == 0 &&
           (mode == SurveyMode::Sampled || h.support_attained);
  });
}

OracleReport rank_oracle(const ExtensionContext& ctx, const SurveyLimits& limits) {
  const unsigned n = ctx.degree();
  const Residue p = ctx.prime();
  OracleReport report;
  report.seed = limits.seed;

  const auto size = ctx.field_size();
  const bool exhaustive = size && *size - 1 <= limits.exhaustive_limit;
  report.mode = exhaustive ? SurveyMode::Exhaustive : SurveyMode::Sampled;
  if (!exhaustive) report.warning = "p^n - 1 exceeds the exhaustive cap; sampled mode";

  std::vector<SkewFormMap> maps;
  for (unsigned i = 1; i < n; ++i) {
    maps.emplace_back(ctx, i);
    PowerHistogram h;
    h.i = i;
    h.order = maps.back().order();
    h.predicted_support = dichotomy(n, h.order);
    report.powers.push_back(std::move(h));
  }

  std::mt19937_64 rng(limits.seed);
  const std::uint64_t count = exhaustive ? *size - 1 : limits.sample_cap;
  std::vector<Residue> coeffs(n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    FieldElement b;
    if (exhaustive) {
      b = ctx.element_at(idx + 1);
    } else {
      bool nonzero = false;
      while (!nonzero) {
        for (auto& c : coeffs) {
          c = static_cast<Residue>(draw_below(rng, p));
          nonzero = nonzero || c != 0;
        }
      }
      b = ctx.from_coeffs(coeffs);
    }
    for (std::size_t t = 0; t < maps.size(); ++t) {
      auto& h = report.powers[t];
      const auto r = static_cast<unsigned>(rank(maps[t].entries(b)));
      ++h.histogram[r];
      if (r < n) ++h.degenerate_count;
      if (h.order > 2 && is_degenerate_by_norm(ctx, b, h.i) != (r < n)) ++h.norm_disagreements;
      const bool exempt = h.order == 2 && r == 0;
      if (!exempt && predicted_rank(ctx, b, h.i) != r) ++h.prediction_mismatches;
    }
  }
  report.checked = count;

  for (auto& h : report.powers) {
    h.support_ok = within(h.histogram, h.predicted_support);
    h.support_attained = std::all_of(h.predicted_support.begin(), h.predicted_support.end(),
                                      [&](unsigned r) { return h.histogram.count(r) > 0; });
  }
  return report;
}

}  // namespace cyclerank
