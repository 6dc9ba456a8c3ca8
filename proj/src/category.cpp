#include "divseq/category.hpp"

#include <algorithm>

#include "divseq/errors.hpp"

namespace divseq {
namespace {

using nlohmann::json;

Rational meta_rational(const json& j, const char* key) {
  return parse_rational(j.at(key).get<std::string>());
}

// Closed quarter-shrink of an open interval (a, b): strictly inside it.
std::pair<Rational, Rational> inner_quarter(const Rational& a, const Rational& b) {
  const Rational w = (b - a) / 4;
  return {a + w, b - w};
}

}  // namespace

BaireChain baire_witness_adaptive(
    std::uint64_t depth, const Interval& start,
    const std::function<DenseOpenOracle(std::uint64_t, const json*)>& make_oracle) {
  if (!start.bounded()) throw input_error("baire witness requires a bounded start interval");
  BaireChain chain{start, {}, start.midpoint()};
  Interval current = start;
  const json* prev_meta = nullptr;
  for (std::uint64_t t = 0; t < depth; ++t) {
    DenseOpenOracle oracle = make_oracle(t, prev_meta);
    Refinement r = oracle.refine(current);
    const std::string where = oracle.descriptor + " at stage " + std::to_string(t);
    if (!(r.lo < r.hi))
      throw verification_error("oracle returned an empty refinement: " + where);
    if (!(less_than(current.lo, r.lo) && less_than(r.hi, current.hi)))
      throw verification_error("refinement escapes the query interval: " + where);
    // Shrink to at most half the current width, staying inside [r.lo, r.hi].
    const Rational width = current.hi.value - current.lo.value;
    const Rational mid = (r.lo + r.hi) / 2;
    Rational half = std::min(Rational((r.hi - r.lo) / 2), Rational(width / 4));
    Rational lo = mid - half, hi = mid + half;
    for (const Rational& p : {lo, hi, mid})
      if (!oracle.verify_member(p, r.meta))
        throw verification_error("refined point fails set membership: " + where);
    chain.stages.push_back(BaireStage{oracle.descriptor, current, lo, hi, r.meta});
    prev_meta = &chain.stages.back().meta;
    current = Interval(lo, hi);
    chain.final_point = current.midpoint();
  }
  return chain;
}

BaireChain baire_witness(const std::vector<DenseOpenOracle>& oracles,
                         const Interval& start) {
  return baire_witness_adaptive(
      oracles.size(), start,
      [&](std::uint64_t t, const json*) { return oracles[t]; });
}

DenseOpenOracle scaled_union_oracle(const OpenSet& U, std::uint64_t n) {
  if (n < 1) throw input_error("scaled union oracle requires n >= 1");
  if (!U.clustered_at_zero())
    throw input_error("scaled union oracle requires a set clustered at zero");
  DenseOpenOracle oracle;
  oracle.descriptor = "scaled-union(n=" + std::to_string(n) + ")";
  oracle.refine = [U, n](const Interval& query) -> Refinement {
    if (!query.bounded() || !(query.lo.value > 0))
      throw input_error("scaled union query must be bounded inside (0, inf)");
    const Rational p = query.lo.value, q = query.hi.value;
    const Rational bound = std::min(Rational(q - p), Rational(p / static_cast<unsigned long>(n)));
    // Among components meeting (0, bound) — clustering guarantees one —
    // take the one reaching highest: the larger the sample x, the smaller
    // the multiplier k, keeping k growth geometric across nested stages.
    const Interval* comp = nullptr;
    std::size_t comp_idx = 0;
    Rational best_chi;
    for (std::size_t i = 0; i < U.components().size(); ++i) {
      const auto& c = U.components()[i];
      const bool lo_below = c.lo.kind == Endpoint::Kind::NegInf ||
                            (c.lo.is_finite() && c.lo.value < bound);
      if (!lo_below || !less_than(Rational(0), c.hi)) continue;
      const Rational chi = c.hi.is_finite() && c.hi.value < bound ? c.hi.value : bound;
      if (comp == nullptr || chi > best_chi) {
        comp = &c;
        comp_idx = i;
        best_chi = chi;
      }
    }
    if (comp == nullptr)
      throw verification_error("no component of U below " + rational_to_string(bound));
    const Rational clo = comp->lo.is_finite() && comp->lo.value > 0 ? comp->lo.value : Rational(0);
    const Rational& chi = best_chi;
    const Rational x = (clo + chi) / 2;  // 0 < x < bound, x in U
    const Integer k_z = floor_q(p / x) + 1;
    const unsigned long k = static_cast<unsigned long>(to_index(k_z));
    // k*x lands in (p, p + x) subset (p, q); intersect k*comp with the query.
    Rational jlo = p;
    if (comp->lo.is_finite() && comp->lo.value * k > p) jlo = comp->lo.value * k;
    Rational jhi = q;
    if (comp->hi.is_finite() && comp->hi.value * k < q) jhi = comp->hi.value * k;
    auto [rlo, rhi] = inner_quarter(jlo, jhi);
    json meta{{"k", k}, {"component", comp_idx}, {"x", rational_to_string(x)}};
    return Refinement{std::move(rlo), std::move(rhi), std::move(meta)};
  };
  oracle.verify_member = [U, n](const Rational& y, const json& meta) {
    const std::uint64_t k = meta.at("k").get<std::uint64_t>();
    if (k < n) return false;
    return U.member(y / Rational(static_cast<unsigned long>(k)));
  };
  return oracle;
}

Theorem3Witness theorem3_witness(const OpenSet& U, std::uint64_t depth,
                                 const Interval& start) {
  if (!start.bounded() || !(start.lo.is_finite() && start.lo.value > 0))
    throw input_error("theorem3 start interval must be bounded inside (0, inf)");
  auto make = [&U](std::uint64_t, const json* prev) {
    std::uint64_t n = 1;
    if (prev != nullptr) n = prev->at("k").get<std::uint64_t>() + 1;
    return scaled_union_oracle(U, n);
  };
  Theorem3Witness out{Rational(0), {}, baire_witness_adaptive(depth, start, make)};
  out.x = out.chain.final_point;
  for (const auto& stage : out.chain.stages) {
    const std::uint64_t k = stage.meta.at("k").get<std::uint64_t>();
    Rational ratio = out.x / Rational(static_cast<unsigned long>(k));
    if (!U.member(ratio))
      throw verification_error("theorem3 hit x/" + std::to_string(k) +
                               " failed exact membership");
    out.hits.emplace_back(k, std::move(ratio));
  }
  return out;
}

DenseOpenOracle translation_dense_oracle(const OpenSet& U, const DivergingSequence& s,
                                         std::uint64_t stage_min) {
  if (!U.unbounded_above())
    throw input_error("translation oracle requires an open set unbounded above");
  if (!s.has_gap_modulus())
    throw capability_error("translation oracle requires a gap modulus");
  if (!s.strictly_increasing())
    throw input_error("translation oracle requires a strictly increasing sequence");
  DenseOpenOracle oracle;
  oracle.descriptor = "translation-dense(t=" + std::to_string(stage_min) + ")";
  oracle.refine = [U, s, stage_min](const Interval& query) -> Refinement {
    if (!query.bounded()) throw input_error("translation query must be bounded");
    const Rational alpha = query.lo.value, beta = query.hi.value;
    // r + s(n) lands in component (u, v) for some r in (alpha, beta) exactly
    // when s(n) lands in the value window (u - beta, v - alpha). Once gaps
    // stay below that window's width the sequence cannot jump over it, so
    // the first term past u - beta lands inside. Leftmost component whose
    // window sits beyond the reachable terms wins.
    Rational u, v;
    bool v_infinite = false;
    std::optional<std::size_t> comp_idx;
    std::uint64_t n_from = stage_min;
    for (std::size_t i = 0; i < U.components().size(); ++i) {
      const auto& c = U.components()[i];
      if (!c.lo.is_finite()) continue;
      std::uint64_t n2 = stage_min;
      if (c.hi.is_finite()) {
        const Rational window_width = (c.hi.value - c.lo.value) + (beta - alpha);
        n2 = std::max(stage_min, s.gap_modulus(window_width));
      }
      if (c.lo.value > s.term(n2) + beta) {
        u = c.lo.value;
        if (c.hi.is_finite())
          v = c.hi.value;
        else
          v_infinite = true;
        comp_idx = i;
        n_from = n2;
        break;
      }
    }
    if (!comp_idx) {
      // Only the terminal ray reaches high enough; carve a unit window in it.
      const auto& ray = U.components().back();  // hi = +inf by precondition
      const std::uint64_t n2 = std::max(stage_min, s.gap_modulus(1 + beta - alpha));
      u = s.term(n2) + beta + 1;
      v = u + 1;
      if (!less_than(ray.lo, u))
        throw verification_error("terminal ray of U starts above its own threshold window");
      comp_idx = U.components().size() - 1;
      n_from = n2;
    }
    // Least n >= n_from with s(n) > u - beta; s(n_from) <= u - beta by the
    // selection above, so binary search over the monotone crossing.
    const Rational crossing = u - beta;
    std::uint64_t lo_idx = n_from, hi_idx = s.divergence_modulus(crossing);
    if (hi_idx <= lo_idx) hi_idx = lo_idx + 1;
    while (lo_idx < hi_idx) {
      const std::uint64_t mid = lo_idx + (hi_idx - lo_idx) / 2;
      if (s.term(mid) > crossing)
        hi_idx = mid;
      else
        lo_idx = mid + 1;
    }
    const std::uint64_t n = lo_idx;
    const Rational shift = s.term(n);
    if (!(shift > crossing) || !(v_infinite || shift < v - alpha))
      throw verification_error("translation scan missed the value window");
    const Rational ilo = std::max(alpha, Rational(u - shift));
    const Rational ihi = v_infinite ? beta : std::min(beta, Rational(v - shift));
    auto [rlo, rhi] = inner_quarter(ilo, ihi);
    json meta{{"n", n}, {"component", *comp_idx}, {"shift", rational_to_string(shift)}};
    return Refinement{std::move(rlo), std::move(rhi), std::move(meta)};
  };
  oracle.verify_member = [U, s, stage_min](const Rational& r, const json& meta) {
    const std::uint64_t n = meta.at("n").get<std::uint64_t>();
    if (n < stage_min) return false;
    return U.member(r + s.term(n));
  };
  return oracle;
}

RemarkWitness remark_witness(const OpenSet& U, const DivergingSequence& s,
                             const Interval& target, std::uint64_t min_hits) {
  auto make = [&U, &s](std::uint64_t, const json* prev) {
    std::uint64_t t = 0;
    if (prev != nullptr) t = prev->at("n").get<std::uint64_t>() + 1;
    return translation_dense_oracle(U, s, t);
  };
  RemarkWitness out{Rational(0), {}, baire_witness_adaptive(min_hits, target, make)};
  out.r = out.chain.final_point;
  for (const auto& stage : out.chain.stages) {
    const std::uint64_t n = stage.meta.at("n").get<std::uint64_t>();
    Rational value = out.r + s.term(n);
    if (!U.member(value))
      throw verification_error("remark hit at index " + std::to_string(n) +
                               " failed exact membership");
    out.hits.emplace_back(n, std::move(value));
  }
  return out;
}

std::optional<WaveProbeWitness> wave_family_probe(const OpenSet& U, const WaveShape& shape,
                                                  WaveVariant variant,
                                                  std::uint64_t max_denominator,
                                                  std::uint64_t min_hits,
                                                  std::uint64_t horizon) {
  shape.validate();
  if (min_hits == 0) throw input_error("wave probe requires hits >= 1");
  if (max_denominator == 0) throw input_error("wave probe requires a positive Farey order");
  if (!U.unbounded_above())
    throw input_error("wave probe requires an open set unbounded above");
  // Farey sequence of the given order over [0,1], ascending.
  std::vector<Rational> grid;
  {
    const long d = static_cast<long>(max_denominator);
    long a = 0, b = 1, c = 1, dd = d;
    grid.push_back(rat(0));
    while (c <= d) {
      const long k = (d + b) / dd;
      const long a2 = k * c - a, b2 = k * dd - b;
      a = c;
      b = dd;
      c = a2;
      dd = b2;
      grid.push_back(rat(a, b));
    }
  }
  for (const Rational& x : grid) {
    DivergingSequence seq = variant == WaveVariant::Wave
                                ? wave_sequence(x, shape)
                                : frac_sequence(x);
    std::vector<std::uint64_t> hits;
    for (std::uint64_t n = 0; n < horizon && hits.size() < min_hits; ++n)
      if (U.member(seq.term(n))) hits.push_back(n);
    if (hits.size() >= min_hits) return WaveProbeWitness{x, std::move(hits)};
  }
  return std::nullopt;
}

Rational BumpFunction::eval(const Rational& x) const {
  const auto idx = support.component_of(x);
  if (!idx) return 0;
  const Interval& c = support.components()[*idx];
  if (!c.bounded()) throw input_error("bump function support must be bounded");
  const Rational mid = peaks[*idx];
  const Rational half = (c.hi.value - c.lo.value) / 2;
  Rational d = abs(x - mid);
  return 1 - d / half;
}

BumpDemoReport bump_transfer_demo(const SequenceFamily& family, std::uint64_t set_horizon,
                                  std::uint64_t check_horizon) {
  if (set_horizon == 0) throw input_error("bump demo requires a positive horizon");
  DivergingSequence base = avoiding_base(family);
  SeparationProfile profile =
      separation_profile(family, std::move(base), AdversaryMode::StrongMax);
  BumpDemoReport report{BumpFunction{}, adversarial_open_set(profile, set_horizon), {}, true};
  report.f.support = report.adv.set;
  for (const auto& c : report.f.support.components())
    report.f.peaks.push_back(Interval(c.lo, c.hi).midpoint());
  for (const auto& member : family.members) {
    std::uint64_t checked = 0;
    for (std::uint64_t n = 0; n < check_horizon; ++n) {
      if (report.f.eval(member.term(n)) != 0) {
        report.all_zero = false;
        break;
      }
      ++checked;
    }
    report.zero_checked_terms.push_back(checked);
  }
  return report;
}

}  // namespace divseq
