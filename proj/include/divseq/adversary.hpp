#pragma once

#include <cstdint>
#include <vector>

#include "divseq/open_set.hpp"
#include "divseq/sequence.hpp"

namespace divseq {

enum class AdversaryMode { StrongMax, Diagonal };

// Per-member, per-center least separation radii 1/h_alpha(n) around the
// base terms, plus the combined h per mode.
struct SeparationProfile {
  SequenceFamily family;
  DivergingSequence base;
  AdversaryMode mode;
  // h_alpha(n) for n < horizon_built, grown lazily through h_member().
  std::uint64_t h_member(std::size_t alpha, std::uint64_t n) const;
  std::uint64_t h_combined(std::uint64_t n) const;
};

struct AvoidanceHit {
  std::uint64_t base_index;       // n of the interval the term landed in
  std::size_t component_index;    // component of the normalized set
  Rational term;
  std::uint64_t term_index;
};

// Recomputable evidence that one member has only finitely many (strong
// mode: zero) terms in the adversarial set.
struct AvoidanceCertificate {
  std::size_t member;
  AdversaryMode mode;
  std::vector<AvoidanceHit> hits;
  std::uint64_t tail_from_index;  // h(n) >= h_alpha(n) for n >= this
};

struct AdversarialSet {
  OpenSet set;  // normalized union of the first `horizon` intervals
  std::uint64_t horizon;
  std::vector<Interval> raw_intervals;  // (a_n - 1/h(n), a_n + 1/h(n)), per n
  std::vector<AvoidanceCertificate> certificates;
};

// Strictly increasing a_n in (n, n+1), each distinct from every term of
// every member; deterministic dyadic choice of least denominator 2^d,
// ties by least numerator.
DivergingSequence avoiding_base(const SequenceFamily& family);

// Exact least radii; rejects a base colliding with a member term.
SeparationProfile separation_profile(SequenceFamily family, DivergingSequence base,
                                     AdversaryMode mode);

AdversarialSet adversarial_open_set(const SeparationProfile& profile,
                                    std::uint64_t horizon);

// Independent re-check: enumerate member terms up to scale times the
// relevant modulus and confirm the certified hits exactly.
bool verify_certificate(const AdversarialSet& adv, const SequenceFamily& family,
                        const AvoidanceCertificate& cert, std::uint64_t scale = 10);

}  // namespace divseq
