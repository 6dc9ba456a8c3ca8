// End-to-end acceptance gate: one self-contained check per shipped
// guarantee, each printed as a single PASS/FAIL line. Exits non-zero if
// any check fails.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "divseq/adversary.hpp"
#include "divseq/category.hpp"
#include "divseq/errors.hpp"
#include "divseq/json_io.hpp"
#include "divseq/omega_function.hpp"
#include "divseq/open_set.hpp"
#include "divseq/sequence.hpp"
#include "oracles.hpp"

using namespace divseq;
using nlohmann::json;

namespace {

bool g_all_pass = true;

void criterion(int num, const std::string& name, bool pass) {
  std::printf("criterion %d: %s — %s\n", num, pass ? "PASS" : "FAIL", name.c_str());
  std::fflush(stdout);
  if (!pass) g_all_pass = false;
}

Rational random_rational(std::mt19937_64& gen, long num_lo, long num_hi, long max_den) {
  std::uniform_int_distribution<long> num(num_lo, num_hi);
  std::uniform_int_distribution<long> den(1, max_den);
  return rat(num(gen), den(gen));
}

// --- criterion 1 ----------------------------------------------------------

bool check_domination() {
  std::mt19937_64 gen(1001);
  std::uniform_int_distribution<std::size_t> size_dist(1, 50);
  for (int round = 0; round < 100; ++round) {
    const std::size_t size = size_dist(gen);
    std::vector<OmegaFunction> family;
    family.reserve(size);
    for (std::size_t j = 0; j < size; ++j)
      family.push_back(OmegaFunction::poly({random_rational(gen, 0, 6, 7),
                                            random_rational(gen, 0, 6, 7),
                                            random_rational(gen, 0, 3, 9)}));
    OmegaFunction g = diagonal_dominator(family);
    for (std::uint64_t n = 0; n < 1000; ++n) {
      const Integer gn = g(n);
      const std::size_t jmax = std::min<std::size_t>(n, size - 1);
      for (std::size_t j = 0; j <= jmax; ++j)
        if (!(gn > family[j](n))) return false;
    }
  }
  return true;
}

// --- criteria 2 and 3 -----------------------------------------------------

DivergingSequence random_member(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> pick(0, 2);
  auto base = [&]() -> DivergingSequence {
    if (pick(gen) == 0)
      return arith_sequence(random_rational(gen, 1, 8, 4), random_rational(gen, -3, 3, 5));
    // Gentle slopes keep the brute re-scan at 10x modulus quick.
    return theorem2_sequence(OmegaFunction::linear(rat(1, 8), random_rational(gen, 0, 3, 2)));
  };
  DivergingSequence s = base();
  if (pick(gen) == 0) return translate_sequence(std::move(s), random_rational(gen, -2, 2, 3));
  return s;
}

void check_vacuity_and_minimality(bool& vacuity, bool& minimality) {
  vacuity = true;
  minimality = true;
  std::mt19937_64 gen(2002);
  std::uniform_int_distribution<std::size_t> size_dist(1, 8);
  constexpr std::uint64_t kHorizon = 256;
  for (int round = 0; round < 25; ++round) {
    SequenceFamily family;
    const std::size_t size = size_dist(gen);
    for (std::size_t j = 0; j < size; ++j) family.members.push_back(random_member(gen));
    SeparationProfile profile =
        separation_profile(family, avoiding_base(family), AdversaryMode::StrongMax);
    AdversarialSet adv = adversarial_open_set(profile, kHorizon);
    for (const auto& cert : adv.certificates) {
      if (!cert.hits.empty()) vacuity = false;
      if (!verify_certificate(adv, family, cert, 10)) vacuity = false;
    }
    for (std::size_t alpha = 0; alpha < size; ++alpha) {
      for (std::uint64_t n = 0; n < kHorizon; ++n) {
        const std::uint64_t h = profile.h_member(alpha, n);
        if (h <= 1) continue;
        Rational wide(1, static_cast<unsigned long>(h - 1));
        wide.canonicalize();
        const Rational center = profile.base.term(n);
        if (terms_in(family.members[alpha], Interval(center - wide, center + wide)).empty())
          minimality = false;
      }
    }
  }
}

// --- criterion 4 ----------------------------------------------------------

bool check_block_coverage() {
  OmegaFunction g = OmegaFunction::linear(rat(1), rat(0));
  DivergingSequence s = theorem2_sequence(g);
  for (std::uint64_t i = 0; i <= 100; ++i) {
    const std::uint64_t f = coverage_functional(s, i);
    if (!(Integer(static_cast<unsigned long>(f)) >= g(i))) return false;
    // Boundary agreement with the uncovered-point search.
    if (!divseq::testing::covers_brute(s, i, f)) return false;
    if (divseq::testing::covers_brute(s, i, f + 1)) return false;
  }
  return true;
}

// --- criterion 5 ----------------------------------------------------------

OpenSet random_clustered_set(std::mt19937_64& gen) {
  std::vector<Interval> comps;
  // Innermost component pinned to 0, then >= 44 components shrinking toward
  // it along dyadic scales; disjoint because 11/8 * 2^-(j+1) < 2^-j.
  comps.emplace_back(rat(0), rat(1, 1l << 48) * random_rational(gen, 1, 7, 1));
  for (int j = 1; j <= 44; ++j) {
    Rational scale(1, 1l << j);
    Rational lo = scale * (1 + random_rational(gen, 1, 2, 8));
    comps.emplace_back(lo, lo + scale * random_rational(gen, 1, 2, 16));
  }
  return OpenSet::normalize(std::move(comps));
}

bool check_scaled_union_witness() {
  std::mt19937_64 gen(5005);
  for (int round = 0; round < 10; ++round) {
    OpenSet U = random_clustered_set(gen);
    Theorem3Witness w = theorem3_witness(U, 25, Interval(rat(1), rat(2)));
    if (w.hits.size() != 25) return false;
    std::uint64_t prev_k = 0;
    for (const auto& [k, ratio] : w.hits) {
      if (k <= prev_k) return false;
      prev_k = k;
      if (!U.member(ratio)) return false;
      if (ratio != w.x / Rational(static_cast<unsigned long>(k))) return false;
    }
    Rational width = rat(1);
    for (const auto& stage : w.chain.stages) {
      const Rational sw = stage.refined_hi - stage.refined_lo;
      if (!(2 * sw <= width)) return false;
      width = sw;
    }
  }
  return true;
}

// --- criterion 6 ----------------------------------------------------------

bool check_translation_witness() {
  std::mt19937_64 gen(6006);
  DivergingSequence s = theorem2_sequence(OmegaFunction::linear(rat(1), rat(0)));
  for (int round = 0; round < 10; ++round) {
    std::vector<Interval> comps;
    for (long m = 0; m < 120; ++m) {
      Rational lo = Rational(m) + random_rational(gen, 0, 1, 4) / 2;
      comps.emplace_back(lo, lo + rat(1, 8) + random_rational(gen, 0, 1, 4) / 4);
    }
    comps.emplace_back(Endpoint::finite(rat(100000)), Endpoint::pos_inf());
    OpenSet U = OpenSet::normalize(std::move(comps));
    Rational target_lo = random_rational(gen, 0, 9, 1);
    Interval target(target_lo, target_lo + rat(1, 2));
    RemarkWitness w = remark_witness(U, s, target, 20);
    if (w.hits.size() != 20) return false;
    if (!target.contains(w.r)) return false;
    std::uint64_t prev_n = 0;
    for (std::size_t t = 0; t < w.hits.size(); ++t) {
      const auto& [n, value] = w.hits[t];
      if (t > 0 && n <= prev_n) return false;
      prev_n = n;
      if (!U.member(value)) return false;
      if (value != w.r + s.term(n)) return false;
    }
  }
  return true;
}

// --- criterion 7 ----------------------------------------------------------

bool check_bump_demo() {
  SequenceFamily family{{arith_sequence(rat(1), rat(0)),
                         arith_sequence(rat(2, 3), rat(1, 5)),
                         theorem2_sequence(OmegaFunction::linear(rat(1, 4), rat(1)))}};
  BumpDemoReport report = bump_transfer_demo(family, 512, 512);
  if (!report.all_zero) return false;
  for (std::uint64_t checked : report.zero_checked_terms)
    if (checked != 512) return false;
  if (report.f.peaks.empty()) return false;
  for (std::size_t i = 0; i < report.f.peaks.size(); ++i) {
    if (i > 0 && !(report.f.peaks[i - 1] < report.f.peaks[i])) return false;
    if (report.f.eval(report.f.peaks[i]) != 1) return false;
  }
  // The peak list keeps climbing with the horizon: its top tracks the last
  // placed interval, far beyond any fixed bound at this scale.
  return report.f.peaks.back() > 500;
}

// --- criterion 8 ----------------------------------------------------------

// Uncovered-point search over the enumerated terms themselves: radius-1/j
// coverage of (i, inf) fails exactly when a concrete point escapes every
// interval. Works from the raw term list, never the tail-gap closed forms.
bool sweep_covers(const std::vector<Rational>& terms, std::uint64_t i, std::uint64_t j) {
  Rational r(1, static_cast<unsigned long>(j));
  r.canonicalize();
  const Rational threshold(static_cast<unsigned long>(i));
  auto uncovered = [&](const Rational& x) {
    auto it = std::lower_bound(terms.begin(), terms.end(), x);
    if (it != terms.end() && abs(*it - x) < r) return false;
    if (it != terms.begin() && abs(*(it - 1) - x) < r) return false;
    return true;
  };
  // Entry: a point just above i, below the first reachable term.
  if (terms.front() - r > threshold) {
    Rational x = std::min(Rational(threshold + r), Rational(terms.front() - r));
    if (x > threshold && uncovered(x)) return false;
  }
  for (std::size_t n = 0; n + 1 < terms.size(); ++n) {
    if (terms[n + 1] - terms[n] >= 2 * r && terms[n + 1] > threshold + r) {
      Rational mid = (terms[n] + terms[n + 1]) / 2;
      if (mid > threshold && uncovered(mid)) return false;
    }
  }
  return true;
}

bool check_oracle_equivalence() {
  // Coverage criterion vs uncovered-point search on every generator that
  // carries the tail-gap capability.
  std::vector<DivergingSequence> generators = {
      arith_sequence(rat(1), rat(0)),
      arith_sequence(rat(3, 2), rat(-2)),
      theorem2_sequence(OmegaFunction::from_prefix({2})),
      theorem2_sequence(OmegaFunction::linear(rat(1), rat(0))),
      translate_sequence(arith_sequence(rat(1, 2), rat(1, 3)), rat(5, 2)),
      translate_sequence(theorem2_sequence(OmegaFunction::linear(rat(1, 2), rat(1))), rat(-3)),
  };
  for (const auto& s : generators) {
    const std::uint64_t limit = s.divergence_modulus(rat(52)) + 8;
    std::vector<Rational> terms;
    terms.reserve(limit);
    for (std::uint64_t n = 0; n < limit; ++n) terms.push_back(s.term(n));
    for (std::uint64_t i = 0; i <= 50; ++i) {
      const std::uint64_t f = coverage_functional(s, i);
      for (std::uint64_t j = 1; j <= 100; ++j)
        if (sweep_covers(terms, i, j) != (j <= f)) return false;
    }
  }

  // Normalize/membership/affine image vs naive raw-interval semantics.
  divseq::testing::Rng rng(8008);
  int member_cases = 0;
  while (member_cases < 10000) {
    auto raw = rng.raw_intervals(1 + static_cast<std::size_t>(rng.gen() % 10));
    OpenSet u = OpenSet::normalize(raw);
    Rational scale = rng.rational(-6, 6, 4);
    if (scale == 0) scale = rat(1, 2);
    const Rational shift = rng.rational();
    OpenSet image = u.affine_image(scale, shift);
    for (int probe = 0; probe < 20; ++probe, ++member_cases) {
      Rational x = rng.rational(-130, 130, 24);
      if (u.member(x) != divseq::testing::naive_member(raw, x)) return false;
      if (image.member(scale * x + shift) != u.member(x)) return false;
    }
  }
  return true;
}

// --- criterion 9 ----------------------------------------------------------

std::string scratch_path(const std::string& dir, const std::string& name) {
  return dir + "/" + name;
}

json run_construction(const std::string& cli, const std::string& args,
                      const std::string& out_path) {
  const std::string cmd = cli + " " + args + " --out " + out_path + " >/dev/null 2>&1";
  if (std::system(cmd.c_str()) != 0) throw verification_error("construction run failed: " + args);
  std::ifstream in(out_path);
  json report;
  in >> report;
  report.erase("timing_ms");
  return report;
}

bool check_determinism() {
  const char* cli = std::getenv("DIVSEQ_CLI");
  if (cli == nullptr) {
    std::cerr << "DIVSEQ_CLI not set; cannot rerun constructions\n";
    return false;
  }
  char tmpl[] = "/tmp/divseq-acceptance-XXXXXX";
  if (mkdtemp(tmpl) == nullptr) return false;
  const std::string dir = tmpl;

  std::ostringstream windows;
  windows << R"({"components":[)";
  for (long m = 0; m < 60; ++m)
    windows << R"({"lo":")" << (4 * m + 1) << R"(/4","hi":")" << (4 * m + 2) << R"(/4"},)";
  windows << R"({"lo":"5000/1","hi":"+inf"}]})";

  struct Job {
    std::string name;
    std::string input;
    std::string args;
  };
  const std::vector<Job> jobs = {
      {"theorem2", R"({"g":{"kind":"formula","name":"linear","params":{"a":"1/1","b":"0/1"}}})",
       "theorem2 --horizon 64"},
      {"adversary",
       R"({"family":{"members":[{"kind":"arith","step":"1/1","offset":"0/1"},
            {"kind":"arith","step":"1/1","offset":"1/2"}]}})",
       "adversary --horizon 64 --mode strong"},
      {"theorem3",
       R"({"open_set":{"components":[{"lo":"0/1","hi":"1/1024"},{"lo":"1/2","hi":"3/4"}]},
            "start":{"lo":"1/1","hi":"2/1"}})",
       "theorem3 --depth 12"},
      {"remark",
       R"({"open_set":)" + windows.str() +
           R"(,"sequence":{"kind":"theorem2","g":{"kind":"formula","name":"linear","params":{"a":"1/1","b":"0/1"}}},
            "target":{"lo":"0/1","hi":"1/1"}})",
       "remark --hits 8"},
  };
  for (const auto& job : jobs) {
    const std::string in_path = scratch_path(dir, job.name + ".json");
    std::ofstream(in_path) << job.input;
    json first = run_construction(cli, job.args + " --in " + in_path,
                                  scratch_path(dir, job.name + "-a.json"));
    json second = run_construction(cli, job.args + " --in " + in_path,
                                   scratch_path(dir, job.name + "-b.json"));
    if (first.dump() != second.dump()) return false;
    for (const auto& check : first.at("verification"))
      if (!check.at("pass").get<bool>()) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "diagonal dominator strictly exceeds 100 random families", check_domination());
  bool vacuity = false, minimality = false;
  check_vacuity_and_minimality(vacuity, minimality);
  criterion(2, "strong-mode certificates are zero-hit and survive 10x brute re-scan", vacuity);
  criterion(3, "every separation radius is minimal (1/(h-1) captures a term)", minimality);
  criterion(4, "block-sequence coverage dominates g and matches the uncovered-point search",
            check_block_coverage());
  criterion(5, "depth-25 scaled-union witnesses verify on clustered random sets",
            check_scaled_union_witness());
  criterion(6, "translation witnesses land 20 increasing exact hits on random sets",
            check_translation_witness());
  criterion(7, "bump demo: zero along the family, unit peaks unbounded",
            check_bump_demo());
  criterion(8, "library vs brute-force oracles agree exactly", check_oracle_equivalence());
  criterion(9, "constructions rerun byte-identical modulo timing", check_determinism());
  return g_all_pass ? 0 : 1;
}
