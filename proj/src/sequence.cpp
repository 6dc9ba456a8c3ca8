#include "divseq/sequence.hpp"

#include <mpfr.h>

#include <algorithm>
#include <mutex>

#include "divseq/errors.hpp"

namespace divseq {

std::uint64_t DivergingSequence::Impl::gap_modulus(const Rational&) const {
  throw capability_error("sequence has no gap modulus");
}

Rational DivergingSequence::Impl::tail_gap_bound(const Rational&) const {
  throw capability_error("sequence has no tail gap bound");
}

namespace {

struct ArithImpl final : DivergingSequence::Impl {
  Rational step, offset;
  ArithImpl(Rational st, Rational off) : step(std::move(st)), offset(std::move(off)) {
    if (step <= 0) throw input_error("arith sequence requires step > 0");
  }
  Rational term(std::uint64_t n) const override {
    return step * Rational(static_cast<unsigned long>(n)) + offset;
  }
  std::uint64_t divergence_modulus(const Rational& bound) const override {
    // step*n + offset > bound  <=>  n > (bound - offset)/step
    const Rational q = (bound - offset) / step;
    if (q < 0) return 0;
    return to_index(floor_q(q) + 1);
  }
  bool has_gap_modulus() const override { return true; }
  std::uint64_t gap_modulus(const Rational& eps) const override {
    if (step < eps) return 0;
    throw capability_error("constant gap " + rational_to_string(step) +
                           " never drops below " + rational_to_string(eps));
  }
  bool has_tail_gap_bound() const override { return true; }
  Rational tail_gap_bound(const Rational&) const override { return step; }
  bool strictly_increasing() const override { return true; }
};

struct Theorem2Impl final : DivergingSequence::Impl {
  OmegaFunction g;
  mutable std::mutex mu;
  mutable std::vector<Integer> block_start;  // L(0)=0, L(m+1)=L(m)+g(m)+1
  mutable std::vector<Integer> g_value;

  explicit Theorem2Impl(OmegaFunction fn) : g(std::move(fn)) { block_start.push_back(0); }

  // Extends the memo through block m; rejects a decreasing g with the witness.
  void ensure_block(std::uint64_t m) const {
    while (g_value.size() <= m) {
      const std::uint64_t k = g_value.size();
      Integer v = g(k);
      if (!g_value.empty() && v < g_value.back())
        throw input_error("theorem2 sequence requires non-decreasing g; decreases at index " +
                          std::to_string(k));
      block_start.push_back(block_start.back() + v + 1);
      g_value.push_back(std::move(v));
    }
  }

  // Block containing term index n.
  std::uint64_t block_of(std::uint64_t n) const {
    while (block_start.back() <= n) ensure_block(g_value.size());
    auto it = std::upper_bound(block_start.begin(), block_start.end(), Integer(static_cast<unsigned long>(n)));
    return static_cast<std::uint64_t>(it - block_start.begin()) - 1;
  }

  Rational term(std::uint64_t n) const override {
    std::lock_guard<std::mutex> lock(mu);
    const std::uint64_t m = block_of(n);
    const Integer pos = Integer(static_cast<unsigned long>(n)) - block_start[m];
    Rational frac(pos, g_value[m] + 1);
    frac.canonicalize();
    return Rational(static_cast<unsigned long>(m)) + frac;
  }

  std::uint64_t divergence_modulus(const Rational& bound) const override {
    if (bound < 0) return 0;
    std::lock_guard<std::mutex> lock(mu);
    const std::uint64_t m = to_index(floor_q(bound) + 2);
    ensure_block(m);  // terms from block m start at value m > bound
    return to_index(block_start[m]);
  }

  bool has_gap_modulus() const override { return true; }
  std::uint64_t gap_modulus(const Rational& eps) const override {
    if (eps <= 0) throw input_error("gap modulus requires eps > 0");
    std::lock_guard<std::mutex> lock(mu);
    // All gaps in and after block m equal 1/(g(m')+1) <= 1/(g(m)+1).
    constexpr std::uint64_t kScanCap = 1u << 20;
    for (std::uint64_t m = 0; m < kScanCap; ++m) {
      ensure_block(m);
      Rational gap(1, g_value[m] + 1);
      gap.canonicalize();
      if (gap < eps) return to_index(block_start[m]);
    }
    throw capability_error("gaps did not drop below " + rational_to_string(eps) +
                           " within scan cap; g may be bounded");
  }

  bool has_tail_gap_bound() const override { return true; }
  Rational tail_gap_bound(const Rational& threshold) const override {
    std::lock_guard<std::mutex> lock(mu);
    // First gap landing above the threshold sits in block max(0, floor(x));
    // gaps are non-increasing, so it is the max.
    std::uint64_t m = 0;
    if (threshold >= 0) m = to_index(floor_q(threshold));
    ensure_block(m);
    Rational gap(1, g_value[m] + 1);
    gap.canonicalize();
    return gap;
  }

  bool strictly_increasing() const override { return true; }
};

struct TranslateImpl final : DivergingSequence::Impl {
  DivergingSequence base;
  Rational shift;
  TranslateImpl(DivergingSequence b, Rational s) : base(std::move(b)), shift(std::move(s)) {}
  Rational term(std::uint64_t n) const override { return base.term(n) + shift; }
  std::uint64_t divergence_modulus(const Rational& bound) const override {
    return base.divergence_modulus(bound - shift);
  }
  bool has_gap_modulus() const override { return base.has_gap_modulus(); }
  std::uint64_t gap_modulus(const Rational& eps) const override {
    return base.gap_modulus(eps);
  }
  bool has_tail_gap_bound() const override { return base.has_tail_gap_bound(); }
  Rational tail_gap_bound(const Rational& threshold) const override {
    return base.tail_gap_bound(threshold - shift);
  }
  bool strictly_increasing() const override { return base.strictly_increasing(); }
  bool approximate() const override { return base.approximate(); }
};

Rational mpfr_to_rational(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return 0;
  mpz_class mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rational q(mant);
  if (e >= 0) {
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

struct LogImpl final : DivergingSequence::Impl {
  Rational x;
  unsigned bits;
  LogImpl(Rational x0, unsigned precision_bits) : x(std::move(x0)), bits(precision_bits) {
    if (bits == 0) throw input_error("log sequence requires precision_bits >= 1");
  }
  Rational term(std::uint64_t n) const override {
    return log_term_enclosure(x, n, bits).first;
  }
  std::uint64_t divergence_modulus(const Rational& bound) const override {
    // n+1 >= exp(bound - x + 1) gives true term >= bound + 1, so the
    // enclosure endpoint clears the bound with room for its width.
    mpfr_t t;
    mpfr_init2(t, 128);
    Rational arg = bound - x + 1;
    mpfr_set_q(t, arg.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(t, t, MPFR_RNDU);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDU);
    mpfr_clear(t);
    if (z <= 1) return 0;
    return to_index(z - 1);
  }
  bool has_gap_modulus() const override { return true; }
  std::uint64_t gap_modulus(const Rational& eps) const override {
    if (eps <= 0) throw input_error("gap modulus requires eps > 0");
    // True gap log((n+2)/(n+1)) < 1/(n+1); take n+1 > 2/eps so the
    // enclosure slack (< 2^-bits on each side) stays inside eps too.
    return to_index(floor_q(2 / eps) + 1);
  }
  // The enclosed values x + log(n+1) strictly increase, and the enclosure
  // width (< 2^-bits) is far below the gap 1/(n+2) at every reachable index.
  bool strictly_increasing() const override { return true; }
  bool approximate() const override { return true; }
};

struct WaveImpl final : DivergingSequence::Impl {
  Rational x;
  WaveShape shape;
  WaveImpl(Rational x0, WaveShape s) : x(std::move(x0)), shape(std::move(s)) {
    shape.validate();
  }
  Rational term(std::uint64_t n) const override {
    return Rational(static_cast<unsigned long>(n)) +
           shape.eval(Rational(static_cast<unsigned long>(n)) * x);
  }
  std::uint64_t divergence_modulus(const Rational& bound) const override {
    if (bound < 0) return 0;
    return to_index(floor_q(bound) + 1);
  }
  bool strictly_increasing() const override { return false; }
};

struct FracImpl final : DivergingSequence::Impl {
  Rational x;
  explicit FracImpl(Rational x0) : x(std::move(x0)) {}
  Rational term(std::uint64_t n) const override {
    Rational y = Rational(static_cast<unsigned long>(n)) * x;
    Rational fractional = y - Rational(floor_q(y));
    return Rational(static_cast<unsigned long>(n)) + fractional;
  }
  std::uint64_t divergence_modulus(const Rational& bound) const override {
    if (bound < 0) return 0;
    return to_index(floor_q(bound) + 1);
  }
  bool strictly_increasing() const override { return false; }
};

}  // namespace

DivergingSequence arith_sequence(Rational step, Rational offset) {
  return DivergingSequence(std::make_shared<ArithImpl>(std::move(step), std::move(offset)));
}

DivergingSequence theorem2_sequence(OmegaFunction g) {
  return DivergingSequence(std::make_shared<Theorem2Impl>(std::move(g)));
}

DivergingSequence translate_sequence(DivergingSequence base, Rational shift) {
  return DivergingSequence(
      std::make_shared<TranslateImpl>(std::move(base), std::move(shift)));
}

DivergingSequence log_sequence(Rational x, unsigned precision_bits) {
  return DivergingSequence(std::make_shared<LogImpl>(std::move(x), precision_bits));
}

std::pair<Rational, Rational> log_term_enclosure(const Rational& x, std::uint64_t n,
                                                 unsigned precision_bits) {
  Rational width_cap(1);
  mpz_mul_2exp(width_cap.get_den_mpz_t(), width_cap.get_den_mpz_t(), precision_bits);
  width_cap.canonicalize();
  for (mpfr_prec_t prec = precision_bits + 16;; prec *= 2) {
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_ui(lo, static_cast<unsigned long>(n + 1), MPFR_RNDD);
    mpfr_set_ui(hi, static_cast<unsigned long>(n + 1), MPFR_RNDU);
    mpfr_log(lo, lo, MPFR_RNDD);
    mpfr_log(hi, hi, MPFR_RNDU);
    mpfr_add_q(lo, lo, x.get_mpq_t(), MPFR_RNDD);
    mpfr_add_q(hi, hi, x.get_mpq_t(), MPFR_RNDU);
    Rational qlo = mpfr_to_rational(lo);
    Rational qhi = mpfr_to_rational(hi);
    mpfr_clear(lo);
    mpfr_clear(hi);
    if (qhi - qlo < width_cap) return {std::move(qlo), std::move(qhi)};
    if (prec > 1 << 24) throw verification_error("log enclosure failed to converge");
  }
}

WaveShape WaveShape::triangle() {
  WaveShape s;
  s.breakpoints = {{rat(0), rat(0)}, {rat(1, 2), rat(1)}, {rat(1), rat(0)}};
  return s;
}

void WaveShape::validate() const {
  if (breakpoints.size() < 2) throw input_error("wave needs at least two breakpoints");
  if (breakpoints.front().first != 0 || breakpoints.back().first != 1)
    throw input_error("wave breakpoints must span [0,1]");
  if (breakpoints.front().second != breakpoints.back().second)
    throw input_error("wave must be periodic: values at 0 and 1 must match");
  bool hits_zero = false, hits_one = false;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto& [pos, val] = breakpoints[i];
    if (i > 0 && !(breakpoints[i - 1].first < pos))
      throw input_error("wave breakpoint positions must strictly increase");
    if (val < 0 || val > 1) throw input_error("wave values must lie in [0,1]");
    if (val == 0) hits_zero = true;
    if (val == 1) hits_one = true;
  }
  if (!hits_zero || !hits_one)
    throw input_error("wave must be surjective onto [0,1]: must attain 0 and 1");
}

Rational WaveShape::eval(const Rational& y) const {
  Rational t = y - Rational(floor_q(y));  // position within the period
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t,
                             [](const Rational& v, const std::pair<Rational, Rational>& bp) {
                               return v < bp.first;
                             });
  if (it == breakpoints.begin()) return breakpoints.front().second;
  const auto& right = *it;
  const auto& left = *(it - 1);
  if (t == left.first) return left.second;
  return left.second +
         (right.second - left.second) * (t - left.first) / (right.first - left.first);
}

DivergingSequence wave_sequence(Rational x, WaveShape shape) {
  return DivergingSequence(std::make_shared<WaveImpl>(std::move(x), std::move(shape)));
}

DivergingSequence frac_sequence(Rational x) {
  return DivergingSequence(std::make_shared<FracImpl>(std::move(x)));
}

std::vector<std::pair<std::uint64_t, Rational>> terms_in(const DivergingSequence& s,
                                                         const Interval& window) {
  if (!window.hi.is_finite()) throw input_error("terms_in requires a finite upper bound");
  const std::uint64_t limit = s.divergence_modulus(window.hi.value);
  std::vector<std::pair<std::uint64_t, Rational>> out;
  if (s.strictly_increasing()) {
    // First index with term > lo, then walk until the window closes.
    std::uint64_t lo_idx = 0, hi_idx = limit;
    if (window.lo.is_finite()) {
      while (lo_idx < hi_idx) {
        const std::uint64_t mid = lo_idx + (hi_idx - lo_idx) / 2;
        if (less_than(window.lo, s.term(mid)))
          hi_idx = mid;
        else
          lo_idx = mid + 1;
      }
    }
    for (std::uint64_t n = lo_idx; n < limit; ++n) {
      Rational t = s.term(n);
      if (!(t < window.hi.value)) break;
      if (less_than(window.lo, t)) out.emplace_back(n, std::move(t));
    }
  } else {
    for (std::uint64_t n = 0; n < limit; ++n) {
      Rational t = s.term(n);
      if (window.contains(t)) out.emplace_back(n, std::move(t));
    }
  }
  return out;
}

std::uint64_t coverage_functional(const DivergingSequence& s, std::uint64_t i) {
  if (!s.strictly_increasing())
    throw input_error("coverage functional requires a strictly increasing sequence");
  if (!s.has_tail_gap_bound())
    throw capability_error("coverage functional requires the tail gap bound capability");
  const Rational first = s.term(0);
  const Rational threshold(static_cast<unsigned long>(i));
  std::uint64_t best = 0;
  for (std::uint64_t j = 1;; ++j) {
    Rational radius(1, static_cast<unsigned long>(j));
    radius.canonicalize();
    // Radius r covers (i, inf) iff the first term reaches down to i and no
    // gap landing above i + r is as wide as 2r.
    const bool entry_ok = first <= threshold + radius;
    const bool gaps_ok = s.tail_gap_bound(threshold + radius) < 2 * radius;
    if (!(entry_ok && gaps_ok)) break;
    best = j;
    if (j > 100000000) throw verification_error("coverage search failed to terminate");
  }
  return best;
}

std::optional<ConditionCWitness> condition_c_probe(const SequenceFamily& family,
                                                   const OpenSet& U,
                                                   std::uint64_t min_hits,
                                                   std::uint64_t horizon) {
  if (family.members.empty()) throw input_error("probe requires a non-empty family");
  if (min_hits == 0) throw input_error("probe requires hits >= 1");
  if (!U.unbounded_above())
    throw input_error("condition (C) probe requires an open set unbounded above");
  for (std::size_t idx = 0; idx < family.members.size(); ++idx) {
    const auto& s = family.members[idx];
    std::vector<std::uint64_t> hits;
    for (std::uint64_t n = 0; n < horizon && hits.size() < min_hits; ++n)
      if (U.member(s.term(n))) hits.push_back(n);
    if (hits.size() >= min_hits) return ConditionCWitness{idx, std::move(hits)};
  }
  return std::nullopt;
}

}  // namespace divseq
