#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "divseq/errors.hpp"
#include "divseq/json_io.hpp"
#include "divseq/omega_function.hpp"

using namespace divseq;

TEST_CASE("le_star verdicts") {
  OmegaFunction id = OmegaFunction::linear(rat(1), rat(0));
  OmegaFunction succ = OmegaFunction::linear(rat(1), rat(1));
  CHECK(le_star_verdict(id, succ, 100).violations.empty());

  // f(i) = 2i vs g(i) = i^2: the only strict excess is at i = 1.
  OmegaFunction dbl = OmegaFunction::linear(rat(2), rat(0));
  OmegaFunction square = OmegaFunction::poly({rat(0), rat(0), rat(1)});
  auto report = le_star_verdict(dbl, square, 100);
  REQUIRE(report.violations == std::vector<std::uint64_t>{1});
  CHECK(report.largest == 1);

  CHECK(le_star_verdict(dbl, dbl, 50).violations.empty());
  CHECK_THROWS_AS(le_star_verdict(id, succ, 0), input_error);
}

TEST_CASE("diagonal dominator on small families") {
  OmegaFunction c5 = OmegaFunction::from_prefix({5});
  OmegaFunction g1 = diagonal_dominator({c5});
  for (std::uint64_t n = 0; n < 20; ++n) CHECK(g1(n) == 6);

  OmegaFunction id = OmegaFunction::linear(rat(1), rat(0));
  OmegaFunction dbl = OmegaFunction::linear(rat(2), rat(0));
  OmegaFunction g2 = diagonal_dominator({id, dbl});
  CHECK(g2(0) == 1);
  for (std::uint64_t n = 1; n < 50; ++n) CHECK(g2(n) == 2 * n + 1);

  CHECK_THROWS_AS(diagonal_dominator({}), input_error);
}

TEST_CASE("dominator strictly exceeds each member from its own index") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<long> small(0, 6);
  for (int round = 0; round < 10; ++round) {
    std::vector<OmegaFunction> family;
    const std::size_t size = 1 + gen() % 50;
    for (std::size_t k = 0; k < size; ++k)
      family.push_back(OmegaFunction::poly(
          {rat(small(gen)), rat(small(gen), 1 + small(gen)), rat(small(gen), 7)}));
    OmegaFunction g = diagonal_dominator(family);
    for (std::size_t j = 0; j < size; ++j)
      for (std::uint64_t n = j; n < 200; ++n)
        REQUIRE(g(n) > family[j](n));
  }
}

TEST_CASE("monotone envelope") {
  OmegaFunction f = OmegaFunction::from_prefix({3, 1, 4, 1, 5});
  OmegaFunction env = monotone_envelope(f);
  const long expected[] = {3, 3, 4, 4, 5};
  for (std::uint64_t n = 0; n < 5; ++n) CHECK(env(n) == expected[n]);
  CHECK(env(40) == 5);  // constant extension after the prefix

  // Non-decreasing input is a fixed point; envelope is idempotent.
  OmegaFunction mono = OmegaFunction::linear(rat(3, 2), rat(1));
  OmegaFunction env2 = monotone_envelope(mono);
  OmegaFunction env3 = monotone_envelope(env2);
  for (std::uint64_t n = 0; n < 100; ++n) {
    CHECK(env2(n) == mono(n));
    CHECK(env3(n) == env2(n));
  }
}

TEST_CASE("envelope is the minimal non-decreasing majorant at each index") {
  OmegaFunction f = OmegaFunction::from_prefix({2, 9, 1, 7, 7, 0, 12});
  OmegaFunction env = monotone_envelope(f);
  for (std::uint64_t n = 0; n < 12; ++n) {
    CHECK(env(n) >= f(n));
    if (n > 0) CHECK(env(n) >= env(n - 1));
    // Lowering env(n) by one would break majorization over the prefix.
    Integer best = f(0);
    for (std::uint64_t k = 1; k <= n; ++k) best = std::max(best, Integer(f(k)));
    CHECK(env(n) == best);
  }
}

TEST_CASE("prefix extension rule survives JSON") {
  auto j = nlohmann::json::parse(R"({"kind":"prefix","values":[3,1,4]})");
  OmegaFunction f = omega_from_json(j);
  CHECK(f(2) == 4);
  CHECK(f(1000) == 4);
  auto big = nlohmann::json::parse(R"({"kind":"prefix","values":["123456789012345678901234567890"]})");
  CHECK(omega_from_json(big)(5) == Integer("123456789012345678901234567890"));
  CHECK_THROWS_AS(omega_from_json(nlohmann::json::parse(R"({"kind":"mystery"})")),
                  input_error);
}
