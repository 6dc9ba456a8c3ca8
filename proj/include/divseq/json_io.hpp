#pragma once

#include "json.hpp"

#include "divseq/adversary.hpp"
#include "divseq/category.hpp"
#include "divseq/omega_function.hpp"
#include "divseq/open_set.hpp"
#include "divseq/sequence.hpp"

namespace divseq {

// Rationals travel as exact strings "p/q"; round-trips are bit-exact.

nlohmann::json interval_to_json(const Interval& iv);
Interval interval_from_json(const nlohmann::json& j);

nlohmann::json open_set_to_json(const OpenSet& set);
OpenSet open_set_from_json(const nlohmann::json& j);

// {"kind":"prefix","values":[...]} or
// {"kind":"formula","name":"linear"|"poly","params":{...}}
OmegaFunction omega_from_json(const nlohmann::json& j);

// Sequence spec kinds: arith, theorem2, translate, log, wave, frac.
DivergingSequence sequence_from_json(const nlohmann::json& j);
SequenceFamily family_from_json(const nlohmann::json& j);

WaveShape wave_shape_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const AvoidanceCertificate& cert);
nlohmann::json chain_to_json(const BaireChain& chain);

// Wraps nlohmann parse errors into input_error with the parser's location.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace divseq
