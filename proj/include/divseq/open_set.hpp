#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "divseq/interval.hpp"

namespace divseq {

// Normalized finite union of disjoint open intervals, sorted by lower
// endpoint; components sharing only an endpoint are kept separate.
// Immutable after construction.
class OpenSet {
 public:
  OpenSet() = default;  // empty set

  static OpenSet normalize(std::vector<Interval> raw);

  const std::vector<Interval>& components() const { return components_; }
  bool empty() const { return components_.empty(); }
  std::size_t size() const { return components_.size(); }

  bool member(const Rational& x) const;
  // Index of the component containing x, if any.
  std::optional<std::size_t> component_of(const Rational& x) const;

  // {scale*x + shift : x in set}; scale must be nonzero.
  OpenSet affine_image(const Rational& scale, const Rational& shift) const;

  // Sum of finite component lengths (infinite components ignored).
  Rational finite_measure() const;

  bool unbounded_above() const;
  // Every (0, eps) meets the set; for a finite union this means some
  // component has lo <= 0 < hi.
  bool clustered_at_zero() const;

 private:
  explicit OpenSet(std::vector<Interval> comps) : components_(std::move(comps)) {}
  std::vector<Interval> components_;
};

}  // namespace divseq
