#include <algorithm>
#include <cstddef>

#include "divseq/interval.hpp"
#include "divseq/open_set.hpp"

namespace divseq {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw input_error("empty rational literal");
  try {
    Rational q(text, 10);
    if (q.get_den() == 0) throw input_error("zero denominator in \"" + text + "\"");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw input_error("bad rational literal: \"" + text + "\"");
  }
}

int compare(const Endpoint& a, const Endpoint& b) {
  auto rank = [](const Endpoint& e) {
    switch (e.kind) {
      case Endpoint::Kind::NegInf: return -1;
      case Endpoint::Kind::Finite: return 0;
      case Endpoint::Kind::PosInf: return 1;
    }
    return 0;
  };
  const int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra != 0) return 0;
  return cmp(a.value, b.value) < 0 ? -1 : (a.value == b.value ? 0 : 1);
}

bool less_than(const Rational& x, const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf: return false;
    case Endpoint::Kind::PosInf: return true;
    case Endpoint::Kind::Finite: return x < e.value;
  }
  return false;
}

bool less_than(const Endpoint& e, const Rational& x) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf: return true;
    case Endpoint::Kind::PosInf: return false;
    case Endpoint::Kind::Finite: return e.value < x;
  }
  return false;
}

Interval::Interval(Endpoint l, Endpoint h) : lo(std::move(l)), hi(std::move(h)) {
  if (!(lo < hi)) throw input_error("interval requires lo < hi");
}

Interval::Interval(Rational l, Rational h)
    : Interval(Endpoint::finite(std::move(l)), Endpoint::finite(std::move(h))) {}

std::optional<Rational> Interval::length() const {
  if (!bounded()) return std::nullopt;
  return hi.value - lo.value;
}

Rational Interval::midpoint() const {
  if (!bounded()) throw input_error("midpoint of unbounded interval");
  return (lo.value + hi.value) / 2;
}

std::string endpoint_to_string(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf: return "-inf";
    case Endpoint::Kind::PosInf: return "+inf";
    case Endpoint::Kind::Finite: return rational_to_string(e.value);
  }
  return {};
}

Endpoint parse_endpoint(const std::string& text) {
  if (text == "-inf") return Endpoint::neg_inf();
  if (text == "+inf" || text == "inf") return Endpoint::pos_inf();
  return Endpoint::finite(parse_rational(text));
}

OpenSet OpenSet::normalize(std::vector<Interval> raw) {
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    const int c = compare(a.lo, b.lo);
    if (c != 0) return c < 0;
    return compare(a.hi, b.hi) < 0;
  });
  std::vector<Interval> out;
  for (auto& iv : raw) {
    // Merge only on genuine overlap; touching open intervals stay apart.
    if (!out.empty() && compare(iv.lo, out.back().hi) < 0) {
      if (compare(out.back().hi, iv.hi) < 0) out.back().hi = iv.hi;
    } else {
      out.push_back(std::move(iv));
    }
  }
  return OpenSet(std::move(out));
}

bool OpenSet::member(const Rational& x) const { return component_of(x).has_value(); }

std::optional<std::size_t> OpenSet::component_of(const Rational& x) const {
  // Last component with lo < x.
  const Endpoint ex = Endpoint::finite(x);
  auto it = std::upper_bound(
      components_.begin(), components_.end(), ex,
      [](const Endpoint& v, const Interval& iv) { return compare(v, iv.lo) < 0; });
  if (it == components_.begin()) return std::nullopt;
  --it;
  if (less_than(it->lo, x) && less_than(x, it->hi))
    return static_cast<std::size_t>(it - components_.begin());
  return std::nullopt;
}

OpenSet OpenSet::affine_image(const Rational& scale, const Rational& shift) const {
  if (scale == 0) throw input_error("affine_image requires nonzero scale");
  auto map_ep = [&](const Endpoint& e) -> Endpoint {
    switch (e.kind) {
      case Endpoint::Kind::Finite: return Endpoint::finite(scale * e.value + shift);
      case Endpoint::Kind::NegInf:
        return scale > 0 ? Endpoint::neg_inf() : Endpoint::pos_inf();
      case Endpoint::Kind::PosInf:
        return scale > 0 ? Endpoint::pos_inf() : Endpoint::neg_inf();
    }
    return e;
  };
  std::vector<Interval> mapped;
  mapped.reserve(components_.size());
  for (const auto& iv : components_) {
    Endpoint a = map_ep(iv.lo), b = map_ep(iv.hi);
    if (scale > 0)
      mapped.emplace_back(std::move(a), std::move(b));
    else
      mapped.emplace_back(std::move(b), std::move(a));
  }
  return normalize(std::move(mapped));
}

Rational OpenSet::finite_measure() const {
  Rational total = 0;
  for (const auto& iv : components_)
    if (auto len = iv.length()) total += *len;
  return total;
}

bool OpenSet::unbounded_above() const {
  return !components_.empty() && components_.back().hi.kind == Endpoint::Kind::PosInf;
}

bool OpenSet::clustered_at_zero() const {
  const Rational zero = 0;
  for (const auto& iv : components_) {
    const bool lo_ok = iv.lo.kind == Endpoint::Kind::NegInf ||
                       (iv.lo.is_finite() && iv.lo.value <= 0);
    if (lo_ok && less_than(zero, iv.hi)) return true;
    if (iv.lo.is_finite() && iv.lo.value > 0) break;  // sorted; no later candidate
  }
  return false;
}

}  // namespace divseq
