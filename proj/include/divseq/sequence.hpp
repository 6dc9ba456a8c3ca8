#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divseq/interval.hpp"
#include "divseq/omega_function.hpp"
#include "divseq/open_set.hpp"

namespace divseq {

// A sequence of rationals diverging to +inf, presented with exact term
// evaluation and a sound divergence modulus. Generators may additionally
// supply a gap modulus (gaps shrink below any eps past some index) and a
// tail gap bound (exact largest gap among terms above a threshold).
// Immutable; safe to share across threads.
class DivergingSequence {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual Rational term(std::uint64_t n) const = 0;
    // Index M with n >= M  =>  term(n) > bound.
    virtual std::uint64_t divergence_modulus(const Rational& bound) const = 0;
    // Index N with n >= N  =>  term(n+1) - term(n) < eps, or capability_error.
    virtual std::uint64_t gap_modulus(const Rational& eps) const;
    virtual bool has_gap_modulus() const { return false; }
    // Exact max of term(n+1) - term(n) over pairs with term(n+1) > threshold.
    virtual Rational tail_gap_bound(const Rational& threshold) const;
    virtual bool has_tail_gap_bound() const { return false; }
    virtual bool strictly_increasing() const = 0;
    virtual bool approximate() const { return false; }
  };

  explicit DivergingSequence(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}

  Rational term(std::uint64_t n) const { return impl_->term(n); }
  std::uint64_t divergence_modulus(const Rational& bound) const {
    return impl_->divergence_modulus(bound);
  }
  bool has_gap_modulus() const { return impl_->has_gap_modulus(); }
  std::uint64_t gap_modulus(const Rational& eps) const { return impl_->gap_modulus(eps); }
  bool has_tail_gap_bound() const { return impl_->has_tail_gap_bound(); }
  Rational tail_gap_bound(const Rational& threshold) const {
    return impl_->tail_gap_bound(threshold);
  }
  bool strictly_increasing() const { return impl_->strictly_increasing(); }
  bool approximate() const { return impl_->approximate(); }

 private:
  std::shared_ptr<const Impl> impl_;
};

// Desk-scale stand-in for a family Phi; order matters for probe witnesses.
struct SequenceFamily {
  std::vector<DivergingSequence> members;
};

// --- generators -----------------------------------------------------------

// term(n) = step*n + offset, step > 0.
DivergingSequence arith_sequence(Rational step, Rational offset);

// Block sequence assigned to a non-decreasing g: block m holds the g(m)+1
// terms m, m + 1/(g(m)+1), ..., m + g(m)/(g(m)+1).
DivergingSequence theorem2_sequence(OmegaFunction g);

// term(n) = base(n) + shift.
DivergingSequence translate_sequence(DivergingSequence base, Rational shift);

// term(n) encloses x + log(n+1) to width < 2^-precision_bits; the one
// approximate citizen, flagged as such.
DivergingSequence log_sequence(Rational x, unsigned precision_bits);
// Exact rational enclosure of x + log(n+1) at the given precision.
std::pair<Rational, Rational> log_term_enclosure(const Rational& x, std::uint64_t n,
                                                 unsigned precision_bits);

// Piecewise-linear periodic wave on [0,1] given by breakpoints; must attain
// both 0 and 1 within a period. Default is the triangle wave.
struct WaveShape {
  // (position in [0,1], value in [0,1]); first position 0, last 1, equal values.
  std::vector<std::pair<Rational, Rational>> breakpoints;
  static WaveShape triangle();
  void validate() const;
  Rational eval(const Rational& y) const;  // h(y), period 1
};

// term(n) = n + h(n*x); diverges but is not monotone in general.
DivergingSequence wave_sequence(Rational x, WaveShape shape);
// term(n) = n + frac(n*x).
DivergingSequence frac_sequence(Rational x);

// --- operations -----------------------------------------------------------

// All pairs (n, term(n)) with term(n) in the open window; window.hi finite.
std::vector<std::pair<std::uint64_t, Rational>> terms_in(const DivergingSequence& s,
                                                         const Interval& window);

// Largest j >= 1 such that radius-1/j intervals around the terms cover
// (i, inf), or 0. Requires strictly increasing s with tail_gap_bound.
std::uint64_t coverage_functional(const DivergingSequence& s, std::uint64_t i);

struct ConditionCWitness {
  std::size_t member_index;
  std::vector<std::uint64_t> hit_indices;  // sorted, all < horizon
};

// First member (family order) with >= min_hits terms in U before `horizon`;
// a semi-decision, nullopt means exhausted at this horizon.
std::optional<ConditionCWitness> condition_c_probe(const SequenceFamily& family,
                                                   const OpenSet& U,
                                                   std::uint64_t min_hits,
                                                   std::uint64_t horizon);

}  // namespace divseq
