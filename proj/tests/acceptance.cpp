// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include "fixtures.hpp"
#include "oracles.hpp"

#include <fracgame/fracgame.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace fracgame;
using fixtures::q;

namespace {

using RSpan = std::span<const Rational>;

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome core_inclusion() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::size_t checked = 0, in_strong = 0, violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 4;
    auto g = random_game<Rational>(rng, n);
    std::vector<std::vector<Rational>> points = vertices(strong_core_system(g));
    for (int k = 0; k < 100; ++k)
      if (auto f = sample_block_point(g, g.grand(), rng)) points.push_back(std::move(*f));
    for (const auto& f : points) {
      ++checked;
      if (!core_contains(g, RSpan(f), Strength::Strong)) continue;
      ++in_strong;
      if (!core_contains(g, RSpan(f), Strength::Weak)) ++violations;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << checked << " allocations, " << in_strong << " in the strong core, " << violations << " violations, " << secs
     << " s";
  return {violations == 0 && in_strong > 0 && secs < 120, os.str()};
}

template <class Check>
Outcome inclusion_pairs(Check&& check) {
  std::size_t failed = 0, unmet = 0, claims = 0;
  std::string first;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 4;
    const std::uint64_t seed = 7000 + static_cast<std::uint64_t>(i);
    auto [v1, v2] = generate_ordered_pair(seed, n);
    VerifyOptions opts{200, seed, {5, 2000, seed}};
    InclusionReport report = check(v1, v2, opts);
    if (!report.precondition_met) ++unmet;
    for (const auto& c : report.claims) {
      ++claims;
      if (c.status == ClaimStatus::Fail) {
        ++failed;
        if (first.empty()) first = c.id + ": " + c.counterexample;
      }
    }
  }
  std::ostringstream os;
  os << "200 pairs, " << claims << " claim checks, " << failed << " failures";
  if (!first.empty()) os << " (first " << first << ")";
  return {failed == 0 && unmet == 0, os.str()};
}

Outcome universality() {
  std::mt19937_64 rng(303);
  int nonempty = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto g = random_game<Rational>(rng, 1 + trial % 4);
    auto report = stable_sets(g, StabilityOptions{4, 2000, 303});
    bool ok = !report.weak_stable.empty();
    for (const auto& e : report.weak_stable)
      ok = ok && is_stable(g, Solution<Rational>{e.partition, e.witness}, Strength::Weak);
    nonempty += ok;
  }
  return {nonempty == 100, std::to_string(nonempty) + "/100 games with a revalidated weak stable solution"};
}

Outcome fusion_equivalence() {
  std::mt19937_64 rng(404);
  std::size_t partitions = 0, mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_game<Rational>(rng, 1 + trial % 5);
    for (const auto& p : enumerate_partitions(g.size())) {
      ++partitions;
      const bool direct = fusion_resistant(g, p);
      if (direct != fusion_resistant_by_total(g, p) || direct != oracle::fusion(g, oracle::masks(p))) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(partitions) + " partitions, " + std::to_string(mismatches) + " mismatches"};
}

Outcome weak_core_oracle() {
  std::mt19937_64 rng(505);
  int pairs = 0, mismatches = 0;
  for (int trial = 0; pairs < 1000; ++trial) {
    auto g = random_game<Rational>(rng, 1 + trial % 5);
    auto f = sample_block_point(g, g.grand(), rng);
    if (!f) continue;
    ++pairs;
    if (core_contains(g, RSpan(*f), Strength::Weak) != oracle::weak_core(g, *f)) ++mismatches;
  }
  int grid_points = 0, grid_mismatches = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_game<Rational>(rng, 1 + trial % 3);
    for (const auto& f : oracle::simplex_grid(g.size(), 20)) {
      ++grid_points;
      if (core_contains(g, RSpan(f), Strength::Weak) != oracle::in_boundary(g, f)) ++grid_mismatches;
    }
  }
  std::ostringstream os;
  os << pairs << " DP/naive pairs with " << mismatches << " mismatches; " << grid_points << " grid points with "
     << grid_mismatches << " mismatches";
  return {mismatches == 0 && grid_mismatches == 0, os.str()};
}

Outcome fixtures_exact() {
  std::vector<std::string> issues;
  auto add = fixtures::additive3();
  auto verts = vertices(strong_core_system(add));
  const auto third = fixtures::point({q(1, 3), q(1, 3), q(1, 3)});
  if (verts.size() != 1 || verts[0] != third) issues.push_back("additive strong core is not the single point");
  if (!core_contains(add, RSpan(third), Strength::Strong)) issues.push_back("additive centre rejected");

  auto gap = fixtures::g4gap();
  if (core_region(gap, Strength::Strong).status != RegionStatus::Empty) issues.push_back("G4gap strong core not empty");
  auto weak = core_region(gap, Strength::Weak);
  if (weak.status != RegionStatus::Nonempty || !weak.witness || !oracle::weak_core(gap, *weak.witness))
    issues.push_back("G4gap weak core not shown nonempty");
  const auto accepted = fixtures::point({q(5, 12), q(5, 12), q(1, 12), q(1, 12)});
  const auto rejected = fixtures::point({q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
  if (!core_contains(gap, RSpan(accepted), Strength::Weak)) issues.push_back("(5/12,5/12,1/12,1/12) rejected");
  if (core_contains(gap, RSpan(rejected), Strength::Weak)) issues.push_back("(1/4,1/4,1/4,1/4) accepted");
  std::string detail = issues.empty() ? "additive and G4gap fixtures exact" : issues.front();
  return {issues.empty(), detail};
}

Outcome proposition1() {
  std::vector<double> grid;
  for (int k = 0; k < 8; ++k) grid.push_back(0.25 * k);
  std::vector<Game<double>> games;
  for (double r : grid) games.push_back(build_meanstd_game(MeanStdScenario{4, 1.0, 0.5, r, {}, 1.0, {}}));
  int ordered = 0;
  for (std::size_t i = 0; i < games.size(); ++i)
    for (std::size_t k = i + 1; k < games.size(); ++k) ordered += leq_cp(games[i], games[k], 1e-9).holds;
  bool monotone = true;
  std::size_t prev_pu = SIZE_MAX, prev_minus = 0;
  for (const auto& g : games) {
    auto report = stable_sets(g);
    const std::size_t pu = report.count_fusion_resistant(), minus = report.count_patched(Strength::Weak);
    monotone = monotone && pu <= prev_pu && minus >= prev_minus;
    prev_pu = pu;
    prev_minus = minus;
  }
  const auto& g1 = games[4];
  const double ratio = g1(Coalition::of({0, 1})) / g1(Coalition::singleton(0));
  const double expected = (2 - std::sqrt(2.0) * 0.5) / (1 - 0.5);
  const bool ratio_ok = std::abs(ratio - 2.585786) <= 1e-6 && std::abs(ratio - expected) <= 1e-12;
  const bool library_ok = verify_prop1(4, 1.0, 0.5, {}, 1.0, grid).all_pass();
  std::ostringstream os;
  os.precision(9);
  os << ordered << "/28 pairs ordered, consolidation " << (monotone ? "monotone" : "not monotone") << ", ratio "
     << ratio;
  return {ordered == 28 && monotone && ratio_ok && library_ok, os.str()};
}

Outcome proposition2() {
  auto curves = uniform_family(4, [](int s) { return double(s); }, [](int s) { return s + std::sqrt(double(s)); });
  std::array<Density, 3> mus{Density::beta_like(1), Density::beta_like(2), Density::beta_like(3)};
  std::array<Game<double>, 3> games{build_cvar_game(curves, mus[0]), build_cvar_game(curves, mus[1]),
                                    build_cvar_game(curves, mus[2])};
  bool lr = true, cp = true;
  for (int a = 0; a < 2; ++a) {
    lr = lr && leq_lr(mus[a], mus[a + 1]).holds;
    cp = cp && leq_cp(games[a], games[a + 1], 1e-9).holds;
  }
  const double v1 = games[0](Coalition::singleton(0)), v2 = games[1](Coalition::singleton(0));
  const bool closed = std::abs(v1 - 1.25) <= 1e-8 && std::abs(v2 - (1.0 + 1.0 / 6)) <= 1e-8;

  // One extra unit of a coalition's size raises the CVaR ratio against it as alpha grows.
  bool unit = true;
  for (int s = 1; s < 4; ++s) {
    Coalition c;
    for (int i = 0; i < s; ++i) c = c | Coalition::singleton(i);
    const auto& lo = curves[c];
    const auto& hi = curves[c | Coalition::singleton(s)];
    double prev = -1;
    for (int j = 0; j < 21; ++j) {
      const double alpha = j / 21.0;
      const double r = cvar(hi, alpha) / cvar(lo, alpha);
      unit = unit && r >= prev - 1e-12;
      prev = r;
    }
  }
  std::vector<double> alphas;
  for (int j = 0; j < 21; ++j) alphas.push_back(j / 21.0);
  bool library_ok = true;
  for (int a = 0; a < 2; ++a) library_ok = library_ok && verify_prop2(curves, mus[a], mus[a + 1], alphas).all_pass();
  std::ostringstream os;
  os.precision(10);
  os << std::boolalpha << "leq_lr " << lr << ", leq_cp " << cp << ", v(1) = " << v1 << " and " << v2 << ", one-unit ratio "
     << (unit ? "monotone" : "not monotone");
  return {lr && cp && closed && unit && library_ok, os.str()};
}

std::pair<int, std::string> capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  const std::string cmd = std::string(FRACGAME_CLI) + " --seed 17 verify all";
  auto a = capture(cmd), b = capture(cmd);
  const bool same = a.second == b.second && !a.second.empty();
  std::ostringstream os;
  os << "exit codes " << a.first << "/" << b.first << ", " << a.second.size() << " bytes, "
     << (same ? "identical" : "different");
  return {same && a.first == 0 && b.first == 0, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"core inclusion", core_inclusion},
      {"theorem suite",
       [] { return inclusion_pairs([](const auto& a, const auto& b, const auto& o) { return verify_theorem1(a, b, o); }); }},
      {"corollary suite",
       [] { return inclusion_pairs([](const auto& a, const auto& b, const auto& o) { return verify_corollary(a, b, o); }); }},
      {"universality", universality},
      {"fusion equivalence", fusion_equivalence},
      {"weak-core oracle", weak_core_oracle},
      {"exact fixtures", fixtures_exact},
      {"mean-std chain", proposition1},
      {"cvar chain", proposition2},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out{false, ""};
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += !out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << out.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
