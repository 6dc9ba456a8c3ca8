#include "divseq/json_io.hpp"

#include <string>

#include "divseq/errors.hpp"

namespace divseq {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const char* key) {
  if (!j.contains(key))
    throw input_error(std::string("missing field \"") + key + "\"");
  return parse_rational(j.at(key).get<std::string>());
}

unsigned precision_field(const json& j) {
  if (j.contains("precision_bits")) return j.at("precision_bits").get<unsigned>();
  if (const char* env = std::getenv("DIVSEQ_PRECISION_BITS"))
    return static_cast<unsigned>(std::stoul(env));
  return 64;
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
}

json interval_to_json(const Interval& iv) {
  return json{{"lo", endpoint_to_string(iv.lo)}, {"hi", endpoint_to_string(iv.hi)}};
}

Interval interval_from_json(const json& j) {
  try {
    return Interval(parse_endpoint(j.at("lo").get<std::string>()),
                    parse_endpoint(j.at("hi").get<std::string>()));
  } catch (const json::exception& e) {
    throw input_error(std::string("bad interval: ") + e.what());
  }
}

json open_set_to_json(const OpenSet& set) {
  json comps = json::array();
  for (const auto& iv : set.components()) comps.push_back(interval_to_json(iv));
  return json{{"components", std::move(comps)}};
}

OpenSet open_set_from_json(const json& j) {
  try {
    std::vector<Interval> raw;
    for (const auto& c : j.at("components")) raw.push_back(interval_from_json(c));
    return OpenSet::normalize(std::move(raw));
  } catch (const json::exception& e) {
    throw input_error(std::string("bad open set: ") + e.what());
  }
}

OmegaFunction omega_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "prefix") {
      std::vector<Integer> values;
      for (const auto& v : j.at("values")) {
        if (v.is_string())
          values.emplace_back(v.get<std::string>());
        else
          values.emplace_back(static_cast<unsigned long>(v.get<std::uint64_t>()));
      }
      return OmegaFunction::from_prefix(std::move(values));
    }
    if (kind == "formula") {
      const std::string name = j.at("name").get<std::string>();
      const json& params = j.at("params");
      if (name == "linear")
        return OmegaFunction::linear(rational_field(params, "a"),
                                     rational_field(params, "b"));
      if (name == "poly") {
        std::vector<Rational> coeffs;
        for (const auto& c : params.at("coeffs"))
          coeffs.push_back(parse_rational(c.get<std::string>()));
        return OmegaFunction::poly(std::move(coeffs));
      }
      throw input_error("unknown formula name \"" + name + "\"");
    }
    throw input_error("unknown omega function kind \"" + kind + "\"");
  } catch (const json::exception& e) {
    throw input_error(std::string("bad omega function: ") + e.what());
  }
}

WaveShape wave_shape_from_json(const json& j) {
  if (!j.contains("breakpoints")) return WaveShape::triangle();
  WaveShape shape;
  for (const auto& bp : j.at("breakpoints"))
    shape.breakpoints.emplace_back(parse_rational(bp.at(0).get<std::string>()),
                                   parse_rational(bp.at(1).get<std::string>()));
  shape.validate();
  return shape;
}

DivergingSequence sequence_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "arith")
      return arith_sequence(rational_field(j, "step"), rational_field(j, "offset"));
    if (kind == "theorem2") return theorem2_sequence(omega_from_json(j.at("g")));
    if (kind == "translate")
      return translate_sequence(sequence_from_json(j.at("base")), rational_field(j, "r"));
    if (kind == "log") return log_sequence(rational_field(j, "x"), precision_field(j));
    if (kind == "wave") return wave_sequence(rational_field(j, "x"), wave_shape_from_json(j));
    if (kind == "frac") return frac_sequence(rational_field(j, "x"));
    throw input_error("unknown sequence kind \"" + kind + "\"");
  } catch (const json::exception& e) {
    throw input_error(std::string("bad sequence spec: ") + e.what());
  }
}

SequenceFamily family_from_json(const json& j) {
  try {
    SequenceFamily family;
    for (const auto& m : j.at("members")) family.members.push_back(sequence_from_json(m));
    if (family.members.empty()) throw input_error("family must be non-empty");
    return family;
  } catch (const json::exception& e) {
    throw input_error(std::string("bad family: ") + e.what());
  }
}

json certificate_to_json(const AvoidanceCertificate& cert) {
  json hits = json::array();
  for (const auto& h : cert.hits)
    hits.push_back(json{{"n", h.term_index},
                        {"interval_index", h.component_index},
                        {"base_index", h.base_index},
                        {"term", rational_to_string(h.term)}});
  return json{{"member", cert.member},
              {"mode", cert.mode == AdversaryMode::StrongMax ? "strong-max" : "diagonal"},
              {"hits", std::move(hits)},
              {"tail", json{{"kind", cert.mode == AdversaryMode::StrongMax ? "strong-max"
                                                                           : "diagonal"},
                            {"from_index", cert.tail_from_index}}}};
}

json chain_to_json(const BaireChain& chain) {
  json stages = json::array();
  for (const auto& s : chain.stages)
    stages.push_back(json{{"oracle", s.oracle},
                          {"query", interval_to_json(s.query)},
                          {"refined", json{{"lo", rational_to_string(s.refined_lo)},
                                           {"hi", rational_to_string(s.refined_hi)}}},
                          {"meta", s.meta}});
  return json{{"start", interval_to_json(chain.start)},
              {"stages", std::move(stages)},
              {"final_point", rational_to_string(chain.final_point)}};
}

}  // namespace divseq
