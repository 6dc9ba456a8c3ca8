#include <mpfr.h>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "divseq/adversary.hpp"
#include "divseq/category.hpp"
#include "divseq/errors.hpp"
#include "divseq/json_io.hpp"
#include "divseq/omega_function.hpp"
#include "divseq/open_set.hpp"
#include "divseq/sequence.hpp"

using nlohmann::json;
using namespace divseq;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Report {
  json body;
  bool verified = true;

  Report(const std::string& command, const std::string& input_text) {
    body["command"] = command;
    body["input_digest"] = fnv1a_hex(input_text);
    body["verification"] = json::array();
    body["flags"] = json{{"approximate", false}};
  }
  void check(const std::string& name, bool pass) {
    body["verification"].push_back(json{{"check", name}, {"pass", pass}});
    if (!pass) verified = false;
  }
  void mark_approximate() { body["flags"]["approximate"] = true; }
};

int finish(Report& report, const std::string& out_path,
           std::chrono::steady_clock::time_point t0) {
  report.body["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - t0)
          .count();
  const std::string text = report.body.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
  }
  return report.verified ? 0 : 4;
}

json le_star_to_json(const LeStarReport& r) {
  json out{{"violations", r.violations}};
  if (r.largest)
    out["largest"] = *r.largest;
  else
    out["largest"] = nullptr;
  return out;
}

// Approximate side-by-side for the logarithmic formulation: re-derive x/k
// through exp(log x - log k) enclosures and confirm the enclosure sits in
// the same open set.
json log_form_check(const Rational& x, std::uint64_t k, const OpenSet& U,
                    unsigned precision_bits) {
  for (unsigned bits = precision_bits; bits <= 4096; bits *= 2) {
    const mpfr_prec_t prec = bits + 16;
    mpfr_t lx_d, lx_u, lk_d, lk_u;
    mpfr_inits2(prec, lx_d, lx_u, lk_d, lk_u, (mpfr_ptr) nullptr);
    mpfr_set_q(lx_d, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(lx_u, x.get_mpq_t(), MPFR_RNDU);
    mpfr_log(lx_d, lx_d, MPFR_RNDD);
    mpfr_log(lx_u, lx_u, MPFR_RNDU);
    mpfr_set_ui(lk_d, static_cast<unsigned long>(k), MPFR_RNDD);
    mpfr_set_ui(lk_u, static_cast<unsigned long>(k), MPFR_RNDU);
    mpfr_log(lk_d, lk_d, MPFR_RNDD);
    mpfr_log(lk_u, lk_u, MPFR_RNDU);
    mpfr_sub(lx_d, lx_d, lk_u, MPFR_RNDD);  // lower bound of log(x/k)
    mpfr_sub(lx_u, lx_u, lk_d, MPFR_RNDU);
    mpfr_exp(lx_d, lx_d, MPFR_RNDD);
    mpfr_exp(lx_u, lx_u, MPFR_RNDU);
    mpq_class qlo, qhi;
    mpfr_get_q(qlo.get_mpq_t(), lx_d);
    mpfr_get_q(qhi.get_mpq_t(), lx_u);
    mpfr_clears(lx_d, lx_u, lk_d, lk_u, (mpfr_ptr) nullptr);
    const auto c_lo = U.component_of(qlo);
    const auto c_hi = U.component_of(qhi);
    if (c_lo && c_hi && *c_lo == *c_hi) {
      return json{{"k", k},
                  {"enclosure", json{{"lo", rational_to_string(qlo)},
                                     {"hi", rational_to_string(qhi)}}},
                  {"pass", true},
                  {"precision_bits", bits}};
    }
  }
  return json{{"k", k}, {"pass", false}};
}

int run(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for families of sequences diverging to infinity"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  std::uint64_t horizon = 100, hits = 10, depth = 25, check_horizon = 0;
  std::uint64_t imax = 50, farey_d = 16, seed = 0;
  unsigned precision_bits = 64;
  std::string mode = "strong", variant = "wave";
  if (const char* env = std::getenv("DIVSEQ_PRECISION_BITS"))
    precision_bits = static_cast<unsigned>(std::stoul(env));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", in_path, "input JSON file")->required();
    sub->add_option("--out", out_path, "output report file (default stdout)");
    sub->add_option("--seed", seed, "seed for randomized harnesses (unused by constructions)");
    sub->add_option("--precision-bits", precision_bits, "precision for log enclosures");
  };

  CLI::App* c_dominate = app.add_subcommand("dominate", "diagonal dominator for a family");
  add_common(c_dominate);
  c_dominate->add_option("--horizon", horizon);

  CLI::App* c_envelope = app.add_subcommand("envelope", "monotone envelope of a function");
  add_common(c_envelope);
  c_envelope->add_option("--horizon", horizon);

  CLI::App* c_theorem2 = app.add_subcommand("theorem2", "block sequence assigned to g");
  add_common(c_theorem2);
  c_theorem2->add_option("--horizon", horizon);

  CLI::App* c_coverage = app.add_subcommand("coverage", "coverage functional values");
  add_common(c_coverage);
  c_coverage->add_option("--imax", imax);

  CLI::App* c_probe = app.add_subcommand("probe-c", "condition (C) finite-horizon probe");
  add_common(c_probe);
  c_probe->add_option("--hits", hits);
  c_probe->add_option("--horizon", horizon);

  CLI::App* c_adv = app.add_subcommand("adversary", "adversarial open set with certificates");
  add_common(c_adv);
  c_adv->add_option("--horizon", horizon);
  c_adv->add_option("--mode", mode)->check(CLI::IsMember({"strong", "diagonal"}));

  CLI::App* c_t3 = app.add_subcommand("theorem3", "scaled-union Baire witness");
  add_common(c_t3);
  c_t3->add_option("--depth", depth);

  CLI::App* c_remark = app.add_subcommand("remark", "translation-density Baire witness");
  add_common(c_remark);
  c_remark->add_option("--hits", hits);

  CLI::App* c_wave = app.add_subcommand("wave", "wave / fractional-part family probe");
  add_common(c_wave);
  c_wave->add_option("--hits", hits);
  c_wave->add_option("--horizon", horizon);
  c_wave->add_option("--farey-d", farey_d);
  c_wave->add_option("--variant", variant)->check(CLI::IsMember({"wave", "frac"}));

  CLI::App* c_bump = app.add_subcommand("demo-bump", "bump-function counterexample demo");
  add_common(c_bump);
  c_bump->add_option("--horizon", horizon);
  c_bump->add_option("--check-horizon", check_horizon);

  CLI11_PARSE(app, argc, argv);
  const auto t0 = std::chrono::steady_clock::now();
  const std::string input_text = read_file(in_path);
  const json input = parse_json_text(input_text);

  if (app.got_subcommand(c_dominate)) {
    Report report("dominate", input_text);
    std::vector<OmegaFunction> fs;
    for (const auto& fj : input.at("functions")) fs.push_back(omega_from_json(fj));
    if (fs.empty()) throw input_error("dominate requires at least one function");
    OmegaFunction g = diagonal_dominator(fs);
    json prefix = json::array();
    for (std::uint64_t n = 0; n < horizon; ++n) prefix.push_back(g(n).get_str());
    report.body["output"]["dominator_prefix"] = std::move(prefix);
    json verdicts = json::array();
    for (const auto& f : fs) verdicts.push_back(le_star_to_json(le_star_verdict(f, g, horizon)));
    report.body["output"]["member_verdicts"] = verdicts;
    bool strict = true;
    for (std::uint64_t j = 0; j < fs.size(); ++j)
      for (std::uint64_t n = j; n < horizon; ++n)
        if (!(g(n) > fs[j](n))) strict = false;
    report.check("dominator exceeds every member from its index on", strict);
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_envelope)) {
    Report report("envelope", input_text);
    OmegaFunction f = omega_from_json(input.at("function"));
    OmegaFunction env = monotone_envelope(f);
    json prefix = json::array();
    for (std::uint64_t n = 0; n < horizon; ++n) prefix.push_back(env(n).get_str());
    report.body["output"]["envelope_prefix"] = std::move(prefix);
    bool monotone = true, majorant = true;
    for (std::uint64_t n = 0; n < horizon; ++n) {
      if (n > 0 && env(n) < env(n - 1)) monotone = false;
      if (env(n) < f(n)) majorant = false;
    }
    report.check("envelope non-decreasing", monotone);
    report.check("envelope pointwise >= f", majorant);
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_theorem2)) {
    Report report("theorem2", input_text);
    DivergingSequence s = theorem2_sequence(omega_from_json(input.at("g")));
    json terms = json::array();
    for (std::uint64_t n = 0; n < horizon; ++n) terms.push_back(rational_to_string(s.term(n)));
    report.body["output"]["terms"] = std::move(terms);
    bool increasing = true;
    for (std::uint64_t n = 1; n < horizon; ++n)
      if (!(s.term(n - 1) < s.term(n))) increasing = false;
    report.check("terms strictly increasing", increasing);
    const Rational bound = s.term(horizon > 0 ? horizon - 1 : 0) + 5;
    const std::uint64_t m = s.divergence_modulus(bound);
    bool sound = true;
    for (std::uint64_t n = m; n < m + 100; ++n)
      if (!(s.term(n) > bound)) sound = false;
    report.check("divergence modulus sound at a sampled bound", sound);
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_coverage)) {
    Report report("coverage", input_text);
    DivergingSequence s = sequence_from_json(input.at("sequence"));
    if (s.approximate()) report.mark_approximate();
    json values = json::array();
    std::uint64_t prev = 0;
    bool monotone = true;
    for (std::uint64_t i = 0; i <= imax; ++i) {
      const std::uint64_t v = coverage_functional(s, i);
      if (v < prev) monotone = false;
      prev = v;
      values.push_back(v);
    }
    report.body["output"]["values"] = std::move(values);
    report.check("coverage values non-decreasing in i", monotone);
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_probe)) {
    Report report("probe-c", input_text);
    SequenceFamily family = family_from_json(input.at("family"));
    OpenSet U = open_set_from_json(input.at("open_set"));
    for (const auto& m : family.members)
      if (m.approximate()) report.mark_approximate();
    auto witness = condition_c_probe(family, U, hits, horizon);
    if (witness) {
      report.body["output"]["witness"] =
          json{{"member", witness->member_index}, {"hit_indices", witness->hit_indices}};
      bool ok = witness->hit_indices.size() >= hits;
      for (std::uint64_t n : witness->hit_indices)
        if (!U.member(family.members[witness->member_index].term(n))) ok = false;
      report.check("all reported hits are members of U", ok);
    } else {
      report.body["output"]["exhausted"] = horizon;
    }
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_adv)) {
    Report report("adversary", input_text);
    SequenceFamily family = family_from_json(input.at("family"));
    const AdversaryMode m =
        mode == "strong" ? AdversaryMode::StrongMax : AdversaryMode::Diagonal;
    DivergingSequence base = avoiding_base(family);
    SeparationProfile profile = separation_profile(family, base, m);
    AdversarialSet adv = adversarial_open_set(profile, horizon);
    report.body["output"]["open_set"] = open_set_to_json(adv.set);
    json certs = json::array();
    for (const auto& cert : adv.certificates) certs.push_back(certificate_to_json(cert));
    report.body["output"]["certificates"] = std::move(certs);
    json base_prefix = json::array();
    for (std::uint64_t n = 0; n < std::min<std::uint64_t>(horizon, 32); ++n)
      base_prefix.push_back(rational_to_string(base.term(n)));
    report.body["output"]["base_prefix"] = std::move(base_prefix);
    for (const auto& cert : adv.certificates)
      report.check("certificate re-verified for member " + std::to_string(cert.member),
                   verify_certificate(adv, family, cert));
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_t3)) {
    Report report("theorem3", input_text);
    OpenSet U = open_set_from_json(input.at("open_set"));
    Interval start = input.contains("start") ? interval_from_json(input.at("start"))
                                             : Interval(rat(1), rat(2));
    Theorem3Witness w = theorem3_witness(U, depth, start);
    report.body["output"]["x"] = rational_to_string(w.x);
    json hit_list = json::array();
    for (const auto& [k, v] : w.hits)
      hit_list.push_back(json{{"k", k}, {"x_over_k", rational_to_string(v)}});
    report.body["output"]["hits"] = std::move(hit_list);
    report.body["output"]["chain"] = chain_to_json(w.chain);
    bool members_ok = true, increasing = true;
    for (std::size_t t = 0; t < w.hits.size(); ++t) {
      if (!U.member(w.hits[t].second)) members_ok = false;
      if (t > 0 && !(w.hits[t - 1].first < w.hits[t].first)) increasing = false;
    }
    report.check("every x/k passes exact membership", members_ok);
    report.check("k indices strictly increase", increasing);
    bool halving = true;
    Rational width = start.hi.value - start.lo.value;
    for (const auto& st : w.chain.stages) {
      const Rational sw = st.refined_hi - st.refined_lo;
      if (!(2 * sw <= width)) halving = false;
      width = sw;
    }
    report.check("chain widths halve per stage", halving);
    if (!w.hits.empty()) {
      report.mark_approximate();
      json log_side = json::array();
      bool log_ok = true;
      for (const auto& [k, v] : w.hits) {
        json c = log_form_check(w.x, k, U, precision_bits);
        log_ok = log_ok && c.at("pass").get<bool>();
        log_side.push_back(std::move(c));
      }
      report.body["output"]["log_form"] =
          json{{"approximate", true}, {"checks", std::move(log_side)}};
      report.check("approximate log-form side-by-side agrees", log_ok);
    }
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_remark)) {
    Report report("remark", input_text);
    OpenSet U = open_set_from_json(input.at("open_set"));
    DivergingSequence s = sequence_from_json(input.at("sequence"));
    Interval target = interval_from_json(input.at("target"));
    RemarkWitness w = remark_witness(U, s, target, hits);
    report.body["output"]["r"] = rational_to_string(w.r);
    json hit_list = json::array();
    for (const auto& [n, v] : w.hits)
      hit_list.push_back(json{{"n", n}, {"value", rational_to_string(v)}});
    report.body["output"]["hits"] = std::move(hit_list);
    report.body["output"]["chain"] = chain_to_json(w.chain);
    bool members_ok = true, increasing = true;
    for (std::size_t t = 0; t < w.hits.size(); ++t) {
      if (!U.member(w.hits[t].second)) members_ok = false;
      if (t > 0 && !(w.hits[t - 1].first < w.hits[t].first)) increasing = false;
    }
    report.check("every r + s(n) passes exact membership", members_ok);
    report.check("hit indices strictly increase", increasing);
    report.check("r lies in the target interval", target.contains(w.r));
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_wave)) {
    Report report("wave", input_text);
    OpenSet U = open_set_from_json(input.at("open_set"));
    WaveShape shape = input.contains("wave") ? wave_shape_from_json(input.at("wave"))
                                             : WaveShape::triangle();
    const WaveVariant wv = variant == "wave" ? WaveVariant::Wave : WaveVariant::Frac;
    auto witness = wave_family_probe(U, shape, wv, farey_d, hits, horizon);
    if (witness) {
      report.body["output"]["witness"] = json{{"x", rational_to_string(witness->x)},
                                              {"hit_indices", witness->hit_indices}};
      DivergingSequence s =
          wv == WaveVariant::Wave ? wave_sequence(witness->x, shape) : frac_sequence(witness->x);
      bool ok = witness->hit_indices.size() >= hits;
      for (std::uint64_t n : witness->hit_indices)
        if (!U.member(s.term(n))) ok = false;
      report.check("all reported hits are members of U", ok);
    } else {
      report.body["output"]["exhausted"] =
          json{{"horizon", horizon}, {"farey_order", farey_d}};
    }
    return finish(report, out_path, t0);
  }

  if (app.got_subcommand(c_bump)) {
    Report report("demo-bump", input_text);
    SequenceFamily family = family_from_json(input.at("family"));
    if (check_horizon == 0) check_horizon = horizon;
    BumpDemoReport demo = bump_transfer_demo(family, horizon, check_horizon);
    report.body["output"]["support"] = open_set_to_json(demo.f.support);
    json peaks = json::array();
    for (const auto& p : demo.f.peaks) peaks.push_back(rational_to_string(p));
    report.body["output"]["peaks"] = std::move(peaks);
    report.body["output"]["zero_checked_terms"] = demo.zero_checked_terms;
    report.check("f vanishes exactly on every member term", demo.all_zero);
    bool peaks_increasing = true, peaks_at_one = true;
    for (std::size_t i = 0; i < demo.f.peaks.size(); ++i) {
      if (i > 0 && !(demo.f.peaks[i - 1] < demo.f.peaks[i])) peaks_increasing = false;
      if (demo.f.eval(demo.f.peaks[i]) != 1) peaks_at_one = false;
    }
    report.check("peak list strictly increasing", peaks_increasing);
    report.check("f attains exactly 1 at every peak", peaks_at_one);
    return finish(report, out_path, t0);
  }

  throw input_error("unknown subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const capability_error& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 3;
  } catch (const verification_error& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 4;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
