#pragma once

#include <optional>
#include <string>

#include "divseq/rational.hpp"

namespace divseq {

// Extended rational: a finite value or one of the two infinities.
// Used only as interval endpoints.
struct Endpoint {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rational value;  // meaningful only when kind == Finite

  static Endpoint neg_inf() { return {Kind::NegInf, {}}; }
  static Endpoint pos_inf() { return {Kind::PosInf, {}}; }
  static Endpoint finite(Rational v) { return {Kind::Finite, std::move(v)}; }

  bool is_finite() const { return kind == Kind::Finite; }
};

int compare(const Endpoint& a, const Endpoint& b);

inline bool operator<(const Endpoint& a, const Endpoint& b) { return compare(a, b) < 0; }
inline bool operator==(const Endpoint& a, const Endpoint& b) { return compare(a, b) == 0; }
inline bool operator<=(const Endpoint& a, const Endpoint& b) { return compare(a, b) <= 0; }

// x < e / e < x for finite rationals against an endpoint.
bool less_than(const Rational& x, const Endpoint& e);
bool less_than(const Endpoint& e, const Rational& x);

// Open interval (lo, hi) with lo < hi; never empty.
struct Interval {
  Endpoint lo;
  Endpoint hi;

  Interval(Endpoint l, Endpoint h);
  Interval(Rational l, Rational h);

  bool contains(const Rational& x) const { return less_than(lo, x) && less_than(x, hi); }
  bool bounded() const { return lo.is_finite() && hi.is_finite(); }
  // Finite length, or nullopt for unbounded intervals.
  std::optional<Rational> length() const;
  Rational midpoint() const;  // requires bounded()
};

std::string endpoint_to_string(const Endpoint& e);
Endpoint parse_endpoint(const std::string& text);

}  // namespace divseq
