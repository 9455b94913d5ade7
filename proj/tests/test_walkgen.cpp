#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "walklis/walk.hpp"
#include "walklis/walk_io.hpp"

using namespace walklis;

namespace {

const StepLaw kSimple{LawKind::simple, 1, 1};

double step_mean(const Walk& w) {
  double sum = 0;
  for (std::int64_t t = 1; t <= w.steps; ++t) sum += w.at(t) - w.at(t - 1);
  return sum / static_cast<double>(w.steps);
}

double step_second_moment(const Walk& w) {
  double sum = 0;
  for (std::int64_t t = 1; t <= w.steps; ++t) {
    const double s = w.at(t) - w.at(t - 1);
    sum += s * s;
  }
  return sum / static_cast<double>(w.steps);
}

}  // namespace

TEST_CASE("zero-step walk is the origin") {
  const Walk w = generate_walk(kSimple, 0, 12345);
  REQUIRE(w.steps == 0);
  REQUIRE(w.values.size() == 1);
  CHECK(w.at(0) == 0.0);
}

TEST_CASE("same (law, n, seed) regenerates bit-identical positions") {
  for (std::uint64_t seed : {0ULL, 7ULL, 0xdeadbeefULL}) {
    const Walk a = generate_walk(kSimple, 5, seed);
    const Walk b = generate_walk(kSimple, 5, seed);
    CHECK(a.values == b.values);
  }
  const StepLaw normal2{LawKind::normal, 2, 1};
  const Walk a = generate_walk(normal2, 333, 99);
  const Walk b = generate_walk(normal2, 333, 99);
  CHECK(a.values == b.values);
}

TEST_CASE("trial streams are order-independent") {
  const auto value_of = [](std::uint64_t trial) {
    Rng rng = Rng::keyed(42, {trial});
    return rng.next_u64();
  };
  const std::uint64_t five_first = value_of(5);
  (void)value_of(3);
  (void)value_of(11);
  CHECK(value_of(5) == five_first);
}

TEST_CASE("simple steps are +-1 with exact unit second moment") {
  const Walk w = generate_walk(kSimple, 10000, 515);
  CHECK(w.at(0) == 0.0);
  for (std::int64_t t = 1; t <= w.steps; ++t) {
    CHECK(std::abs(w.at(t) - w.at(t - 1)) == 1.0);
  }
  CHECK(step_second_moment(w) == 1.0);
  CHECK(std::abs(step_mean(w)) <= 3.0 / std::sqrt(10000.0));
}

TEST_CASE("rescaled laws have zero mean and unit variance") {
  for (const char* name : {"lazy", "uniform:1", "uniform:3", "normal"}) {
    const StepLaw law = StepLaw::parse(name);
    const std::int64_t n = 200000;
    const Walk w = generate_walk(law, n, 2024);
    const double se_mean = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(step_mean(w)) <= 4.0 * se_mean);
    // Var(X^2) <= E X^4 <= 3 for these laws, so 4*sqrt(3/n) is a safe band.
    CHECK(std::abs(step_second_moment(w) - 1.0) <= 4.0 * std::sqrt(3.0 / static_cast<double>(n)));
  }
}

TEST_CASE("plus-one step counts pass a binomial chi-square at 0.001") {
  const int steps = 16;
  const std::int64_t trials = 100000;
  std::vector<std::int64_t> observed(steps + 1, 0);
  for (std::int64_t t = 0; t < trials; ++t) {
    const Walk w = generate_walk(kSimple, steps, derive_seed(8181, {static_cast<std::uint64_t>(t)}));
    const auto ups = static_cast<std::int64_t>((w.at(steps) + steps) / 2);
    ++observed[static_cast<std::size_t>(ups)];
  }
  // binomial(16, 1/2) pmf numerators over 2^16
  std::vector<double> expected(steps + 1);
  double binom = 1.0;
  for (int j = 0; j <= steps; ++j) {
    expected[static_cast<std::size_t>(j)] =
        binom / 65536.0 * static_cast<double>(trials);
    binom = binom * (steps - j) / (j + 1);
  }
  // merge sparse extreme bins so every expected count is >= 5
  double chi2 = 0.0;
  double obs_acc = 0.0, exp_acc = 0.0;
  int bins = 0;
  for (int j = 0; j <= steps; ++j) {
    obs_acc += static_cast<double>(observed[static_cast<std::size_t>(j)]);
    exp_acc += expected[static_cast<std::size_t>(j)];
    const bool tail_ahead = j < steps && expected[static_cast<std::size_t>(j + 1)] < 5.0;
    if (exp_acc >= 5.0 && !(j == steps - 1 && tail_ahead)) {
      chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
      obs_acc = exp_acc = 0.0;
      ++bins;
    }
  }
  if (exp_acc > 0.0) {
    chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
    ++bins;
  }
  // chi-square 0.999 quantiles for df 10..14
  const double critical[] = {29.588, 31.264, 32.909, 34.528, 36.123};
  REQUIRE(bins - 1 >= 10);
  REQUIRE(bins - 1 <= 14);
  CHECK(chi2 <= critical[bins - 1 - 10]);
}

TEST_CASE("maximal inequality holds empirically (scaled-down probe)") {
  const std::int64_t n = 2500, trials = 20000;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (double lambda : {2.0, 3.0, 4.0}) {
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
      StepSampler s(kSimple, Rng::keyed(606, {static_cast<std::uint64_t>(t)}));
      double pos = 0, max_abs = 0;
      for (std::int64_t i = 0; i < n; ++i) {
        pos += s.next_coord();
        max_abs = std::max(max_abs, std::abs(pos));
      }
      if (max_abs >= lambda * sqrt_n) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(trials));
    CHECK(p <= 1.0 / (lambda * lambda) + 3 * se);
  }
}

TEST_CASE("hitting_time finds the first attainment") {
  const Walk w = Walk::from_values({0, -1, 0, 1});
  CHECK(hitting_time(w, 1) == 3);
  CHECK(hitting_time(w, 0) == 0);
  CHECK(!hitting_time(w, 2).has_value());
}

TEST_CASE("generate_until_hit stops exactly at the level") {
  SUBCASE("one-step hit") {
    // find a seed whose first step is +1
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
      const Walk probe = generate_walk(kSimple, 1, seed);
      if (probe.at(1) == 1.0) {
        const HitResult r = generate_until_hit(kSimple, 1, seed, 10);
        REQUIRE(r.hit);
        CHECK(r.walk.values == std::vector<double>{0.0, 1.0});
        break;
      }
    }
  }
  SUBCASE("level 2: final value 2, never attained earlier") {
    for (std::uint64_t t = 0; t < 200; ++t) {
      const HitResult r = generate_until_hit(kSimple, 2, derive_seed(99, {t}), 100000);
      if (!r.hit) continue;
      CHECK(r.walk.values.back() == 2.0);
      for (std::size_t i = 0; i + 1 < r.walk.values.size(); ++i) {
        CHECK(r.walk.values[i] < 2.0);
      }
    }
  }
  SUBCASE("cap exceeded is reported, not truncated away") {
    const HitResult r = generate_until_hit(kSimple, 1000, 5, 10);
    CHECK(!r.hit);
    CHECK(r.walk.steps == 10);
  }
  SUBCASE("non-integer laws are rejected") {
    CHECK_THROWS_AS(generate_until_hit(StepLaw::parse("lazy"), 2, 1, 10), std::invalid_argument);
  }
}

TEST_CASE("hitting-time tail is within the 12*2^m/sqrt(n) envelope") {
  const int m = 2;
  const std::int64_t n = 10000, trials = 20000;
  std::int64_t censored = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    StepSampler s(kSimple, Rng::keyed(7321, {static_cast<std::uint64_t>(t)}));
    std::int64_t pos = 0;
    bool hit = false;
    for (std::int64_t i = 1; i <= n; ++i) {
      pos += static_cast<std::int64_t>(s.next_coord());
      if (pos == (1 << m)) {
        hit = true;
        break;
      }
    }
    if (!hit) ++censored;
  }
  const double p = static_cast<double>(censored) / static_cast<double>(trials);
  const double bound = 12.0 * (1 << m) / std::sqrt(static_cast<double>(n));
  CHECK(p <= bound);
}

TEST_CASE("binary round trip preserves the walk exactly") {
  const StepLaw law{LawKind::normal, 3, 1};
  const Walk w = generate_walk(law, 257, 4242);
  const auto path = std::filesystem::temp_directory_path() / "walklis_roundtrip.wlk";
  save_walk_binary(w, path.string());
  const Walk r = load_walk_binary(path.string());
  CHECK(r.law == w.law);
  CHECK(r.seed == w.seed);
  CHECK(r.steps == w.steps);
  CHECK(r.values == w.values);
  std::filesystem::remove(path);
}

TEST_CASE("sequence files parse and reject junk with a line number") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "walklis_seq.txt";
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    std::fputs("0 1\n2 3\n", f);
    std::fclose(f);
  }
  CHECK(parse_sequence_file(path.string(), 2) == std::vector<double>{0, 1, 2, 3});
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    std::fputs("0 1\n2 oops\n", f);
    std::fclose(f);
  }
  try {
    parse_sequence_file(path.string());
    FAIL("expected parse failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  fs::remove(path);
}

TEST_CASE("csv dump has one row per time point") {
  const Walk w = generate_walk(StepLaw{LawKind::simple, 2, 1}, 4, 1);
  const auto path = std::filesystem::temp_directory_path() / "walklis_walk.csv";
  save_walk_csv(w, path.string());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,x1,x2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
  std::filesystem::remove(path);
}
