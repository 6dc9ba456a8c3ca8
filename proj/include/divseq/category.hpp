#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "divseq/adversary.hpp"
#include "divseq/open_set.hpp"
#include "divseq/sequence.hpp"

namespace divseq {

// Closed rational subinterval [lo, hi] returned by a density oracle,
// with the witness metadata that produced it.
struct Refinement {
  Rational lo;
  Rational hi;
  nlohmann::json meta;
};

// Constructive density: maps any bounded open query interval to a closed
// rational subinterval inside both the query and the represented dense
// open set. verify_member re-checks a point against the set exactly,
// through the refinement's own witness metadata.
struct DenseOpenOracle {
  std::string descriptor;
  std::function<Refinement(const Interval&)> refine;
  std::function<bool(const Rational&, const nlohmann::json&)> verify_member;
};

struct BaireStage {
  std::string oracle;
  Interval query;
  Rational refined_lo;
  Rational refined_hi;
  nlohmann::json meta;
};

// Nested rational intervals threading finitely many density oracles;
// widths at least halve per stage and final_point lies in every stage.
struct BaireChain {
  Interval start;
  std::vector<BaireStage> stages;
  Rational final_point;
};

BaireChain baire_witness(const std::vector<DenseOpenOracle>& oracles,
                         const Interval& start);

// Oracle t is built after stage t-1 completes (its metadata may feed the
// next oracle's parameters).
BaireChain baire_witness_adaptive(
    std::uint64_t depth, const Interval& start,
    const std::function<DenseOpenOracle(std::uint64_t stage,
                                        const nlohmann::json* prev_meta)>& make_oracle);

// Oracle for the scaled union of kU over k >= n; U must cluster at zero.
// Queries must be bounded with 0 < lo.
DenseOpenOracle scaled_union_oracle(const OpenSet& U, std::uint64_t n);

struct Theorem3Witness {
  Rational x;
  std::vector<std::pair<std::uint64_t, Rational>> hits;  // (k, x/k), k increasing
  BaireChain chain;
};

Theorem3Witness theorem3_witness(const OpenSet& U, std::uint64_t depth,
                                 const Interval& start);

// Oracle for {r : exists n >= stage_min with r + s(n) in U}; needs an
// unbounded-above U and a strictly increasing s with a gap modulus.
DenseOpenOracle translation_dense_oracle(const OpenSet& U, const DivergingSequence& s,
                                         std::uint64_t stage_min);

struct RemarkWitness {
  Rational r;
  std::vector<std::pair<std::uint64_t, Rational>> hits;  // (n, r + s(n)), n increasing
  BaireChain chain;
};

RemarkWitness remark_witness(const OpenSet& U, const DivergingSequence& s,
                             const Interval& target, std::uint64_t min_hits);

enum class WaveVariant { Wave, Frac };

struct WaveProbeWitness {
  Rational x;
  std::vector<std::uint64_t> hit_indices;
};

// Scans Farey fractions of order max_denominator over [0,1] for an x whose
// sequence n + h(nx) (or n + frac(nx)) hits U at least min_hits times
// before the horizon. Demonstrational; nullopt means exhausted.
std::optional<WaveProbeWitness> wave_family_probe(const OpenSet& U, const WaveShape& shape,
                                                  WaveVariant variant,
                                                  std::uint64_t max_denominator,
                                                  std::uint64_t min_hits,
                                                  std::uint64_t horizon);

// Piecewise-linear tent function supported on a finite union of bounded
// open intervals, peaking at 1 at each component midpoint.
struct BumpFunction {
  OpenSet support;
  std::vector<Rational> peaks;  // component midpoints, strictly increasing
  Rational eval(const Rational& x) const;
};

struct BumpDemoReport {
  BumpFunction f;
  AdversarialSet adv;
  // Per member, exact check that f(term(n)) = 0 for all n < check_horizon.
  std::vector<std::uint64_t> zero_checked_terms;
  bool all_zero;
};

BumpDemoReport bump_transfer_demo(const SequenceFamily& family, std::uint64_t set_horizon,
                                  std::uint64_t check_horizon);

}  // namespace divseq
