#include "divseq/adversary.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "divseq/errors.hpp"

namespace divseq {
namespace {

// Lazily chosen dyadic points a_n in (n, n+1) avoiding all member terms.
struct AvoidingBaseImpl final : DivergingSequence::Impl {
  SequenceFamily family;
  mutable std::mutex mu;
  mutable std::vector<Rational> chosen;

  explicit AvoidingBaseImpl(SequenceFamily f) : family(std::move(f)) {
    if (family.members.empty()) throw input_error("avoiding base requires a non-empty family");
  }

  Rational term(std::uint64_t n) const override {
    std::lock_guard<std::mutex> lock(mu);
    while (chosen.size() <= n) chosen.push_back(choose(chosen.size()));
    return chosen[n];
  }

  Rational choose(std::uint64_t n) const {
    const Rational lo(static_cast<unsigned long>(n));
    const Rational hi = lo + 1;
    std::set<Rational> forbidden;
    for (const auto& member : family.members)
      for (auto& [idx, t] : terms_in(member, Interval(lo, hi))) forbidden.insert(t);
    // Least denominator 2^d, then least numerator; the finitely many
    // forbidden points cannot exhaust any dyadic level forever.
    for (unsigned d = 1; d < 63; ++d) {
      Rational step(1);
      mpz_mul_2exp(step.get_den_mpz_t(), step.get_den_mpz_t(), d);
      step.canonicalize();
      for (unsigned long k = 1; k < (1ul << d); k += 2) {
        Rational candidate = lo + step * static_cast<unsigned long>(k);
        if (!forbidden.count(candidate)) return candidate;
      }
    }
    throw verification_error("no dyadic candidate found in (" + rational_to_string(lo) +
                             ", " + rational_to_string(hi) + ")");
  }

  std::uint64_t divergence_modulus(const Rational& bound) const override {
    if (bound < 0) return 0;
    return to_index(floor_q(bound) + 1);  // a_n > n
  }
  bool strictly_increasing() const override { return true; }
};

}  // namespace

DivergingSequence avoiding_base(const SequenceFamily& family) {
  return DivergingSequence(std::make_shared<AvoidingBaseImpl>(family));
}

std::uint64_t SeparationProfile::h_member(std::size_t alpha, std::uint64_t n) const {
  const Rational center = base.term(n);
  const auto nearby = terms_in(family.members[alpha], Interval(center - 1, center + 1));
  if (nearby.empty()) return 1;
  Rational dist;
  bool first = true;
  for (const auto& [idx, t] : nearby) {
    Rational d = abs(t - center);
    if (d == 0)
      throw input_error("base collides with member " + std::to_string(alpha) +
                        " term " + std::to_string(idx) + " = " + rational_to_string(t));
    if (first || d < dist) {
      dist = std::move(d);
      first = false;
    }
  }
  return to_index(ceil_q(1 / dist));
}

std::uint64_t SeparationProfile::h_combined(std::uint64_t n) const {
  std::uint64_t best = 0;
  const std::size_t limit = mode == AdversaryMode::StrongMax
                                ? family.members.size()
                                : std::min<std::size_t>(n + 1, family.members.size());
  for (std::size_t alpha = 0; alpha < limit; ++alpha)
    best = std::max(best, h_member(alpha, n));
  return mode == AdversaryMode::StrongMax ? best : best + 1;
}

SeparationProfile separation_profile(SequenceFamily family, DivergingSequence base,
                                     AdversaryMode mode) {
  if (family.members.empty()) throw input_error("separation profile requires members");
  return SeparationProfile{std::move(family), std::move(base), mode};
}

AdversarialSet adversarial_open_set(const SeparationProfile& profile,
                                    std::uint64_t horizon) {
  AdversarialSet out;
  out.horizon = horizon;
  out.raw_intervals.reserve(horizon);
  for (std::uint64_t n = 0; n < horizon; ++n) {
    const Rational center = profile.base.term(n);
    Rational radius(1, static_cast<unsigned long>(profile.h_combined(n)));
    radius.canonicalize();
    out.raw_intervals.emplace_back(center - radius, center + radius);
  }
  out.set = OpenSet::normalize(out.raw_intervals);

  for (std::size_t alpha = 0; alpha < profile.family.members.size(); ++alpha) {
    AvoidanceCertificate cert;
    cert.member = alpha;
    cert.mode = profile.mode;
    cert.tail_from_index = profile.mode == AdversaryMode::StrongMax
                               ? 0
                               : static_cast<std::uint64_t>(alpha);
    // Only intervals below the tail bound can contain member terms; in
    // strong mode that range is empty, so the scan documents vacuity.
    const std::uint64_t candidate_range =
        std::min<std::uint64_t>(horizon, cert.tail_from_index);
    const auto& member = profile.family.members[alpha];
    for (std::uint64_t n = 0; n < candidate_range; ++n) {
      for (auto& [idx, t] : terms_in(member, out.raw_intervals[n])) {
        AvoidanceHit hit;
        hit.base_index = n;
        hit.term_index = idx;
        hit.component_index = out.set.component_of(t).value();
        hit.term = std::move(t);
        cert.hits.push_back(std::move(hit));
      }
    }
    std::sort(cert.hits.begin(), cert.hits.end(),
              [](const AvoidanceHit& a, const AvoidanceHit& b) {
                return a.term_index < b.term_index;
              });
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

bool verify_certificate(const AdversarialSet& adv, const SequenceFamily& family,
                        const AvoidanceCertificate& cert, std::uint64_t scale) {
  if (adv.set.empty()) return cert.hits.empty();
  const auto& last = adv.set.components().back();
  if (!last.hi.is_finite()) throw verification_error("adversarial set must be bounded");
  const auto& member = family.members[cert.member];
  const std::uint64_t limit = scale * std::max<std::uint64_t>(
                                          1, member.divergence_modulus(last.hi.value));
  // Deliberately a plain scan with per-term membership: independent of the
  // terms_in path used by the constructor.
  std::vector<std::pair<std::uint64_t, Rational>> found;
  for (std::uint64_t n = 0; n < limit; ++n) {
    Rational t = member.term(n);
    if (adv.set.member(t)) found.emplace_back(n, std::move(t));
  }
  if (found.size() != cert.hits.size()) return false;
  for (std::size_t k = 0; k < found.size(); ++k)
    if (found[k].first != cert.hits[k].term_index || found[k].second != cert.hits[k].term)
      return false;
  return true;
}

}  // namespace divseq
