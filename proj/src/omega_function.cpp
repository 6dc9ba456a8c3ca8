#include "divseq/omega_function.hpp"

#include <algorithm>
#include <mutex>
#include <utility>

#include "divseq/errors.hpp"

namespace divseq {
namespace {

struct PrefixImpl final : OmegaFunction::Impl {
  std::vector<Integer> values;
  explicit PrefixImpl(std::vector<Integer> v) : values(std::move(v)) {
    if (values.empty()) throw input_error("prefix presentation needs at least one value");
    for (const auto& x : values)
      if (x < 0) throw input_error("omega function values must be non-negative");
  }
  Integer eval(std::uint64_t n) const override {
    return n < values.size() ? values[n] : values.back();
  }
};

struct PolyImpl final : OmegaFunction::Impl {
  std::vector<Rational> coeffs;  // low to high degree
  explicit PolyImpl(std::vector<Rational> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw input_error("poly presentation needs coefficients");
    for (const auto& q : coeffs)
      if (q < 0) throw input_error("poly coefficients must be non-negative");
  }
  Integer eval(std::uint64_t n) const override {
    Rational acc = 0;
    const Rational x(static_cast<unsigned long>(n));
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return floor_q(acc);
  }
};

struct DominatorImpl final : OmegaFunction::Impl {
  std::vector<OmegaFunction> family;
  explicit DominatorImpl(std::vector<OmegaFunction> f) : family(std::move(f)) {}
  Integer eval(std::uint64_t n) const override {
    const std::uint64_t last = std::min<std::uint64_t>(n, family.size() - 1);
    Integer best = family[0](n);
    for (std::uint64_t j = 1; j <= last; ++j) {
      Integer v = family[j](n);
      if (v > best) best = v;
    }
    return best + 1;
  }
};

struct EnvelopeImpl final : OmegaFunction::Impl {
  OmegaFunction source;
  mutable std::mutex mu;
  mutable std::vector<Integer> prefix_max;  // prefix_max[n] = max f(0..n)
  explicit EnvelopeImpl(OmegaFunction f) : source(std::move(f)) {}
  Integer eval(std::uint64_t n) const override {
    std::lock_guard<std::mutex> lock(mu);
    while (prefix_max.size() <= n) {
      Integer v = source(prefix_max.size());
      if (!prefix_max.empty() && prefix_max.back() > v) v = prefix_max.back();
      prefix_max.push_back(std::move(v));
    }
    return prefix_max[n];
  }
};

}  // namespace

OmegaFunction OmegaFunction::from_prefix(std::vector<Integer> values) {
  return OmegaFunction(std::make_shared<PrefixImpl>(std::move(values)));
}

OmegaFunction OmegaFunction::linear(Rational slope, Rational intercept) {
  return poly({std::move(intercept), std::move(slope)});
}

OmegaFunction OmegaFunction::poly(std::vector<Rational> coeffs) {
  return OmegaFunction(std::make_shared<PolyImpl>(std::move(coeffs)));
}

OmegaFunction OmegaFunction::from_impl(std::shared_ptr<const Impl> impl) {
  return OmegaFunction(std::move(impl));
}

void OmegaFunction::require_non_decreasing(std::uint64_t horizon) const {
  Integer prev = (*this)(0);
  for (std::uint64_t n = 1; n < horizon; ++n) {
    Integer cur = (*this)(n);
    if (cur < prev)
      throw input_error("function decreases at index " + std::to_string(n));
    prev = std::move(cur);
  }
}

LeStarReport le_star_verdict(const OmegaFunction& f, const OmegaFunction& g,
                             std::uint64_t horizon) {
  if (horizon < 1) throw input_error("le_star_verdict requires horizon >= 1");
  LeStarReport report;
  for (std::uint64_t i = 0; i < horizon; ++i)
    if (f(i) > g(i)) report.violations.push_back(i);
  if (!report.violations.empty()) report.largest = report.violations.back();
  return report;
}

OmegaFunction diagonal_dominator(std::vector<OmegaFunction> family) {
  if (family.empty()) throw input_error("diagonal_dominator requires a non-empty family");
  return OmegaFunction::from_impl(std::make_shared<DominatorImpl>(std::move(family)));
}

OmegaFunction monotone_envelope(OmegaFunction f) {
  return OmegaFunction::from_impl(std::make_shared<EnvelopeImpl>(std::move(f)));
}

}  // namespace divseq
