#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "divseq/rational.hpp"

namespace divseq {

// Total map omega -> omega, immutable once built. Presentations are either
// an explicit prefix (constant after the last value) or a named formula
// with rational parameters; derived functions (dominators, envelopes)
// evaluate through their sources.
class OmegaFunction {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual Integer eval(std::uint64_t n) const = 0;
  };

  static OmegaFunction from_prefix(std::vector<Integer> values);
  // value(n) = floor(a*n + b), a, b >= 0
  static OmegaFunction linear(Rational slope, Rational intercept);
  // value(n) = floor(sum_i coeffs[i] * n^i), all coeffs >= 0
  static OmegaFunction poly(std::vector<Rational> coeffs);
  static OmegaFunction from_impl(std::shared_ptr<const Impl> impl);

  Integer operator()(std::uint64_t n) const { return impl_->eval(n); }

  // Verified pointwise non-decreasing up to `horizon`; throws input_error
  // naming the first offending index otherwise.
  void require_non_decreasing(std::uint64_t horizon) const;

 private:
  explicit OmegaFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct LeStarReport {
  std::vector<std::uint64_t> violations;  // {i < horizon : f(i) > g(i)}
  std::optional<std::uint64_t> largest;
};

LeStarReport le_star_verdict(const OmegaFunction& f, const OmegaFunction& g,
                             std::uint64_t horizon);

// g(n) = max{f_j(n) : j <= min(n, |F|-1)} + 1; dominates every member
// strictly from its own index on.
OmegaFunction diagonal_dominator(std::vector<OmegaFunction> family);

// Running maximum max{f(0..n)}: non-decreasing majorant, idempotent.
OmegaFunction monotone_envelope(OmegaFunction f);

}  // namespace divseq
