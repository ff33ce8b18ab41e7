#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cyclerank/galois_action.hpp"
#include "cyclerank/skew_forms.hpp"

namespace cyclerank {

enum class SurveyMode { Exhaustive, Sampled };

/// Controls how the rank spectrum of a subspace is collected: every nonzero
/// element when the subspace has at most `exhaustive_limit` elements,
/// otherwise `sample_cap` uniform nonzero draws.
struct SurveyLimits {
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 20;
  std::uint64_t sample_cap = 10000;
  std::uint64_t seed = 0;
};

struct RankSurvey {
  SurveyMode mode = SurveyMode::Exhaustive;
  std::uint64_t checked = 0;
  std::map<unsigned, std::uint64_t> spectrum;
};

/// Rank spectrum of the nonzero GF(p)-combinations of the given matrices.
RankSurvey survey_ranks(std::span<const GfMatrix> basis, Residue p, const SurveyLimits& limits,
                        std::mt19937_64& rng);

enum class ComponentClass { Involution, OddOrder, EvenOrder };

struct ComponentReport {
  unsigned i = 0;
  unsigned order = 0;
  ComponentClass classification = ComponentClass::OddOrder;
  std::size_t dimension = 0;
  std::vector<GramMatrix> basis_grams;
};

/// Image of b -> f_{b,sigma^i} applied to the power basis. Non-involutions must
/// give n independent forms; the involution gives n/2, chosen greedily in
/// basis order. Violations throw InternalInconsistency.
ComponentReport build_component(const ExtensionContext& ctx, unsigned i);

enum class TheoremId { T1, T2, TA, TC1, TC2, RemarkC, DirectSum, OddOrder };
std::string to_string(TheoremId id);

struct SubspaceReport {
  std::string label;
  std::size_t dimension = 0;
  /// Set when the subspace should be a constant-rank space.
  std::optional<unsigned> expected_rank;
  /// Ranks a nonzero element may take; equals {expected_rank} when that is set.
  std::vector<unsigned> allowed_ranks;
  /// Dimension the statement predicts, when it predicts one.
  std::optional<std::size_t> expected_dimension;
  RankSurvey survey;
  bool pass = false;
};

struct TheoremReport {
  TheoremId theorem = TheoremId::DirectSum;
  Residue p = 0;
  unsigned n = 0;
  std::vector<SubspaceReport> components;
  bool direct_sum_ok = false;
  std::uint64_t seed = 0;
  /// Theorem-specific integer facts (e.g. group orders, counts).
  std::map<std::string, std::int64_t> details;

  bool pass() const;
};

/// Alt_K(L) = B^1 + A^1 + ... + A^m (B^1 only for even n), with
/// representatives i = 1..floor((n-1)/2) and i = n/2. Each component's rank
/// spectrum is surveyed: involution and odd-order components are constant
/// rank, even-order ones must lie in {n - 2n/ord, n}.
TheoremReport verify_direct_sum(const ExtensionContext& ctx, const SurveyLimits& limits = {});
/// Odd n only (WrongShape otherwise).
TheoremReport verify_theorem_1(const ExtensionContext& ctx, const SurveyLimits& limits = {});
/// Even n only (WrongShape otherwise).
TheoremReport verify_theorem_2(const ExtensionContext& ctx, const SurveyLimits& limits = {});

/// First element of g, g^2, ... (g the multiplicative generator) whose form
/// f_{b,sigma^i} is non-degenerate. Requires ord(sigma^i) even.
FieldElement find_nondegenerate_b(const ExtensionContext& ctx, unsigned i);

/// A^1 = U + V for n = 2k, k odd, k >= 3: V = L_k is an (n-2)-subspace and
/// U = jV an n-subspace, both of dimension k.
TheoremReport verify_theorem_A(const ExtensionContext& ctx, const SurveyLimits& limits = {});

/// Subspaces V = L_k and U = jV used by verify_theorem_A.
struct TheoremASplit {
  SubspaceSpec u;
  SubspaceSpec v;
  FieldElement j;
};
TheoremASplit theorem_A_split(const ExtensionContext& ctx);

/// Parameters of p + 1 = 2^a l and n = 2^alpha k.
struct InstanceShape {
  unsigned a = 0;
  std::uint64_t l = 0;
  unsigned alpha = 0;
  std::uint64_t k = 0;
};
InstanceShape instance_shape(std::uint64_t p, unsigned n);

/// E_1..E_{alpha-1}, V_1, V_2 for n = 2^alpha k, alpha >= 2, with expected
/// ranks unset.
std::vector<SubspaceSpec> eigenspace_chain(const ExtensionContext& ctx);

/// A^1 = V_1 + V_2 + E_1 + ... + E_{alpha-1} over GF(p), p = 3 mod 4.
TheoremReport verify_theorem_C(const ExtensionContext& ctx, const SurveyLimits& limits = {});

/// For l > 1 and alpha > a + 1: u^s (u generating the cyclic group C of order
/// 2(p^(n/2^i) - 1), s odd) gives a degenerate form iff l | s.
TheoremReport remark_C_check(const ExtensionContext& ctx, unsigned i_index, const SurveyLimits& limits = {});

/// A^i is an (n - n/ord)-subspace when ord(sigma^i) is odd.
TheoremReport verify_corollary_odd_order(const ExtensionContext& ctx, unsigned i, const SurveyLimits& limits = {});

/// Per-power tabulation over L^x used by the oracle command.
struct PowerHistogram {
  unsigned i = 0;
  unsigned order = 0;
  std::map<unsigned, std::uint64_t> histogram;
  std::vector<unsigned> predicted_support;
  bool support_ok = false;
  /// Every predicted value observed (only demanded in exhaustive mode).
  bool support_attained = false;
  std::uint64_t degenerate_count = 0;
  /// Elements where is_degenerate_by_norm and rank < n disagree (ord > 2 only).
  std::uint64_t norm_disagreements = 0;
  /// Elements where predicted_rank differs from the observed rank (zero forms
  /// of the involution are exempt).
  std::uint64_t prediction_mismatches = 0;
};

struct OracleReport {
  SurveyMode mode = SurveyMode::Exhaustive;
  std::uint64_t checked = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> warning;
  std::vector<PowerHistogram> powers;
  bool pass() const;
};

/// Rank histogram of f_{b,sigma^i} over every b in L^x (or a sample when
/// |L^x| exceeds limits.exhaustive_limit), for i = 1..n-1.
OracleReport rank_oracle(const ExtensionContext& ctx, const SurveyLimits& limits = {});

}  // namespace cyclerank
