// fracgame: load, analyze and verify fractional-form coalitional games.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <fracgame/fracgame.hpp>
#include <fracgame/io.hpp>

namespace fs = std::filesystem;
using namespace fracgame;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  int max_exact_weak_core_n = 4;
  int samples = 200;
  std::string format = "json";
  std::string out;
  bool use_float = false;

  StabilityOptions stability() const { return {max_exact_weak_core_n, 2000, seed}; }
};

void emit(const Common& common, const std::string& name, const json& report, const std::string& csv = {}) {
  std::string text;
  std::string ext;
  if (common.format == "csv") {
    if (csv.empty()) throw UsageError("--format csv is only available for analyze and sweep");
    text = csv;
    ext = ".csv";
  } else {
    text = report.dump(2) + "\n";
    ext = ".json";
  }
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(common.out);
  const fs::path path = fs::path(common.out) / (name + ext);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path.string());
  file << text;
}

template <Scalar T>
json describe_game(const Game<T>& game) {
  return {{"players", game.players()}, {"digest", io::game_digest(game)}, {"exact", Game<T>::exact}};
}

// --- validate / analyze / core / compare -----------------------------------

template <Scalar T>
int run_validate(const Common& common, const std::string& path) {
  auto raw = io::game_candidate_from_json<T>(io::read_json_file(path));
  auto report = validate_game(raw);
  emit(common, "validate", io::validation_to_json(raw, report));
  return report.ok() ? 0 : 1;
}

template <Scalar T>
int run_analyze(const Common& common, const std::string& path) {
  auto game = io::load_game<T>(path, common.tolerance);
  auto report = stable_sets(game, common.stability());
  json out = {{"game", describe_game(game)}, {"stability", io::stability_to_json(game, report)}};
  emit(common, "analyze", out, io::stability_to_csv(game, report));
  return 0;
}

template <Scalar T>
json core_section(const Game<T>& game, Strength kind, const Common& common) {
  json out = io::region_to_json(core_region(game, kind, common.stability()));
  if (kind == Strength::Strong && game.size() <= kMaxVertexDim && boundary_nonempty(game, game.grand())) {
    json vs = json::array();
    for (const auto& v : vertices(strong_core_system(game))) vs.push_back(io::point_to_json(std::span<const T>(v)));
    out["vertices"] = vs;
  }
  return out;
}

template <Scalar T>
int run_core(const Common& common, const std::string& path, const std::string& kind) {
  auto game = io::load_game<T>(path, common.tolerance);
  json out = {{"game", describe_game(game)}};
  if (kind == "strong" || kind == "both") out["strong"] = core_section(game, Strength::Strong, common);
  if (kind == "weak" || kind == "both") out["weak"] = core_section(game, Strength::Weak, common);
  emit(common, "core", out);
  return 0;
}

template <Scalar T>
int run_compare(const Common& common, const std::string& first, const std::string& second) {
  auto v1 = io::load_game<T>(first, common.tolerance);
  auto v2 = io::load_game<T>(second, common.tolerance);
  if (v1.size() != v2.size()) throw UsageError("games have different player counts");
  auto verdict = leq_cp(v1, v2);
  json out = {{"order", io::order_to_json(v1, verdict)}};
  if (v1.size() <= kMaxVertexDim) {
    VerifyOptions opts{common.samples, common.seed, {std::max(5, common.max_exact_weak_core_n), 2000, common.seed}};
    out["theorem1"] = io::inclusion_to_json(verify_theorem1(v1, v2, opts));
    out["corollary"] = io::inclusion_to_json(verify_corollary(v1, v2, opts));
  } else {
    out["theorem1"] = "skipped: inclusion checks need at most 5 players";
  }
  emit(common, "compare", out);
  return verdict.holds ? 0 : 1;
}

// --- scenarios ---------------------------------------------------------------

constexpr int kReportStabilityUpTo = 6;

json stability_if_small(const Game<double>& game, const Common& common) {
  if (game.size() > kReportStabilityUpTo) return "skipped: more than 6 players";
  return io::stability_to_json(game, stable_sets(game, common.stability()));
}

int run_scenario_meanstd(const Common& common, const std::string& path, std::optional<double> r) {
  auto s = io::meanstd_from_json(io::read_json_file(path));
  if (r) s.r = *r;
  auto game = build_meanstd_game(s, common.tolerance);
  json out = {{"scenario", {{"n", s.n}, {"mu", s.mu}, {"sigma", s.sigma}, {"r", s.r}}},
              {"game", io::game_to_json(game)},
              {"digest", io::game_digest(game)},
              {"stability", stability_if_small(game, common)}};
  emit(common, "scenario-meanstd", out);
  return 0;
}

int run_scenario_cvar(const Common& common, const std::string& path) {
  auto s = io::cvar_from_json(io::read_json_file(path));
  auto game = build_cvar_game(s.curves, s.density, s.players, common.tolerance);
  json out = {{"tail_dominance", io::tail_to_json(check_tail_dominance(s.curves), s.players)},
              {"game", io::game_to_json(game)},
              {"digest", io::game_digest(game)},
              {"stability", stability_if_small(game, common)}};
  emit(common, "scenario-cvar", out);
  return 0;
}

// --- sweep -----------------------------------------------------------------

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad range '" + text + "', expected start:stop:step");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw UsageError("bad range '" + text + "', expected start:stop:step with step > 0");
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double x = parts[0] + k * parts[2];
    if (x > parts[1] + 1e-12) break;
    grid.push_back(x);
  }
  return grid;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad integer list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::string join_partitions(const Game<double>& game, const std::vector<StableEntry<double>>& entries) {
  std::string out;
  for (const auto& e : entries) {
    if (!out.empty()) out += ';';
    out += game.name(e.partition);
  }
  return out;
}

struct SweepOptions {
  std::string scenario;
  std::string file;
  std::string r_range = "0:1.5:0.5";
  std::optional<double> mu, sigma, phi_default;
  std::optional<int> n;
  std::string beta_a = "1,2,3";
};

int run_sweep(const Common& common, const SweepOptions& so) {
  std::vector<std::string> labels;
  std::vector<json> params;
  std::vector<Game<double>> games;
  if (so.scenario == "meanstd") {
    MeanStdScenario base;
    if (!so.file.empty()) base = io::meanstd_from_json(io::read_json_file(so.file));
    if (so.n) {
      base.n = *so.n;
      base.players = default_player_names(base.n);
    }
    if (so.mu) base.mu = *so.mu;
    if (so.sigma) base.sigma = *so.sigma;
    if (so.phi_default) base.phi_default = *so.phi_default;
    if (base.n < 1) throw UsageError("meanstd sweep needs --n or --file");
    if (!(base.mu > 0.0) || !(base.sigma > 0.0)) throw UsageError("meanstd sweep needs positive --mu and --sigma");
    for (double r : parse_range(so.r_range)) {
      auto s = base;
      s.r = r;
      games.push_back(build_meanstd_game(s, common.tolerance));
      labels.push_back("r=" + to_string(r));
      params.push_back(r);
    }
  } else if (so.scenario == "cvar") {
    if (so.file.empty()) throw UsageError("cvar sweep needs --file with quantile curves");
    auto j = io::read_json_file(so.file);
    if (!j.contains("density")) j["density"] = {{"beta_a", 1}};
    auto s = io::cvar_from_json(j);
    for (int a : parse_int_list(so.beta_a)) {
      games.push_back(build_cvar_game(s.curves, Density::beta_like(a), s.players, common.tolerance));
      labels.push_back("beta_a=" + std::to_string(a));
      params.push_back(a);
    }
  } else {
    throw UsageError("--scenario must be meanstd or cvar");
  }
  if (games.front().size() > kReportStabilityUpTo) throw UsageError("sweeps enumerate partitions; use at most 6 players");

  json points = json::array();
  std::string csv =
      "param,digest,Pi_plus,Pi_minus,Pu,Pi_minus_unknown,strong_core,weak_core,most_consolidated,S_plus,S_minus\n";
  std::vector<StabilityReport<double>> reports;
  for (std::size_t k = 0; k < games.size(); ++k) {
    const auto& g = games[k];
    auto report = stable_sets(g, common.stability());
    auto strong = core_region(g, Strength::Strong, common.stability());
    auto weak = core_region(g, Strength::Weak, common.stability());
    auto best = most_consolidated_stable(g, report);
    json point = {{"param", params[k]},
                  {"label", labels[k]},
                  {"digest", io::game_digest(g)},
                  {"counts",
                   {{"Pi_plus", report.count_patched(Strength::Strong)},
                    {"Pi_minus", report.count_patched(Strength::Weak)},
                    {"Pu", report.count_fusion_resistant()},
                    {"Pi_minus_unknown", report.count_patched_unknown()}}},
                  {"strong_core", to_string(strong.status)},
                  {"weak_core", to_string(weak.status)},
                  {"S_plus", json::array()},
                  {"S_minus", json::array()}};
    for (const auto& e : report.strong_stable) point["S_plus"].push_back(g.name(e.partition));
    for (const auto& e : report.weak_stable) point["S_minus"].push_back(g.name(e.partition));
    point["most_consolidated_stable"] = best ? json(g.name(*best)) : json(nullptr);
    points.push_back(point);
    csv += point["param"].dump() + "," + io::game_digest(g) + "," + std::to_string(report.count_patched(Strength::Strong)) +
           "," + std::to_string(report.count_patched(Strength::Weak)) + "," +
           std::to_string(report.count_fusion_resistant()) + "," + std::to_string(report.count_patched_unknown()) + "," +
           to_string(strong.status) + "," + to_string(weak.status) + "," + io::csv_field(best ? g.name(*best) : "") +
           "," + io::csv_field(join_partitions(g, report.strong_stable)) + "," +
           io::csv_field(join_partitions(g, report.weak_stable)) + "\n";
    reports.push_back(std::move(report));
  }

  json matrix = json::array();
  std::vector<std::vector<bool>> ordered(games.size(), std::vector<bool>(games.size()));
  for (std::size_t i = 0; i < games.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < games.size(); ++j) {
      ordered[i][j] = leq_cp(games[i], games[j]).holds;
      row.push_back(ordered[i][j]);
    }
    matrix.push_back(row);
  }
  // Along ≤cp-ordered neighbours, P^u may only shrink and P^{i±} only grow.
  bool pu_ok = true, plus_ok = true, minus_ok = true;
  for (std::size_t k = 0; k + 1 < games.size(); ++k) {
    if (!ordered[k][k + 1]) continue;
    pu_ok = pu_ok && reports[k + 1].count_fusion_resistant() <= reports[k].count_fusion_resistant();
    plus_ok = plus_ok && reports[k + 1].count_patched(Strength::Strong) >= reports[k].count_patched(Strength::Strong);
    minus_ok = minus_ok && reports[k + 1].count_patched(Strength::Weak) >= reports[k].count_patched(Strength::Weak);
  }
  json out = {{"scenario", so.scenario},
              {"grid", params},
              {"points", points},
              {"leq_cp", matrix},
              {"monotone",
               {{"Pu_nonincreasing", pu_ok}, {"Pi_plus_nondecreasing", plus_ok}, {"Pi_minus_nondecreasing", minus_ok}}}};
  emit(common, "sweep", out, csv);
  return pu_ok && plus_ok && minus_ok ? 0 : 1;
}

// --- verify ----------------------------------------------------------------

struct VerifySettings {
  std::string what = "all";
  int pairs = 200;
  int games = 100;
  int max_n = 5;
};

constexpr std::size_t kMaxListedFailures = 10;

template <class Check>
json inclusion_suite(const Common& common, const VerifySettings& vs, Check&& check) {
  std::map<std::string, std::pair<int, int>> tally;  // claim -> (pass, fail)
  json failures = json::array();
  int unmet = 0;
  for (int i = 0; i < vs.pairs; ++i) {
    const int n = 2 + i % (vs.max_n - 1);
    const std::uint64_t seed = common.seed + static_cast<std::uint64_t>(i);
    auto [v1, v2] = generate_ordered_pair(seed, n);
    VerifyOptions opts{common.samples, seed, {std::max(5, common.max_exact_weak_core_n), 2000, seed}};
    InclusionReport report = check(v1, v2, opts);
    if (!report.precondition_met) ++unmet;
    for (const auto& c : report.claims) {
      auto& t = tally[c.id];
      if (c.status == ClaimStatus::Pass) {
        ++t.first;
      } else {
        ++t.second;
        if (failures.size() < kMaxListedFailures)
          failures.push_back({{"seed", seed}, {"n", n}, {"claim", c.id}, {"counterexample", c.counterexample}});
      }
    }
  }
  json claims = json::object();
  bool ok = unmet == 0;
  for (const auto& [id, t] : tally) {
    claims[id] = {{"pass", t.first}, {"fail", t.second}};
    ok = ok && t.second == 0;
  }
  return {{"pairs", vs.pairs},           {"n_range", {2, vs.max_n}}, {"samples", common.samples},
          {"precondition_unmet", unmet}, {"claims", claims},         {"failures", failures},
          {"status", ok ? "PASS" : "FAIL"}};
}

json universality_suite(const Common& common, const VerifySettings& vs) {
  StabilityOptions opts{std::max(4, common.max_exact_weak_core_n), 2000, common.seed};
  json failures = json::array();
  int nonempty = 0;
  for (int i = 0; i < vs.games; ++i) {
    const int n = 1 + i % 4;
    std::mt19937_64 rng(common.seed + static_cast<std::uint64_t>(i));
    auto game = random_game<Rational>(rng, n);
    auto report = stable_sets(game, opts);
    if (!report.weak_stable.empty()) {
      ++nonempty;
    } else if (failures.size() < kMaxListedFailures) {
      failures.push_back(io::game_to_json(game));
    }
  }
  return {{"games", vs.games},
          {"n_range", {1, 4}},
          {"S_minus_nonempty", nonempty},
          {"failures", failures},
          {"status", nonempty == vs.games ? "PASS" : "FAIL"}};
}

json props_suite(const Common& common) {
  bool ok = true;
  // Mean/std chain.
  std::vector<double> grid;
  for (int k = 0; k < 8; ++k) grid.push_back(0.25 * k);
  auto p1 = verify_prop1(4, 1.0, 0.5, {}, 1.0, grid);
  ok = ok && p1.all_pass() && p1.precondition_met;
  json chain = json::array();
  std::size_t prev_pu = SIZE_MAX, prev_minus = 0;
  bool monotone = true;
  for (double r : grid) {
    MeanStdScenario s{4, 1.0, 0.5, r, {}, 1.0, {}};
    auto g = build_meanstd_game(s, common.tolerance);
    auto report = stable_sets(g, common.stability());
    monotone = monotone && report.count_fusion_resistant() <= prev_pu && report.count_patched(Strength::Weak) >= prev_minus;
    prev_pu = report.count_fusion_resistant();
    prev_minus = report.count_patched(Strength::Weak);
    chain.push_back({{"r", r}, {"Pu", prev_pu}, {"Pi_minus", prev_minus}});
  }
  ok = ok && monotone;
  MeanStdScenario at_one{4, 1.0, 0.5, 1.0, {}, 1.0, {}};
  auto g1 = build_meanstd_game(at_one);
  const double ratio = g1(Coalition::of({0, 1})) / g1(Coalition::singleton(0));
  const bool ratio_ok = std::abs(ratio - 2.585786) <= 1e-6;
  ok = ok && ratio_ok;

  // CVaR chain along beta exponents.
  auto curves = uniform_family(4, [](int s) { return double(s); }, [](int s) { return s + std::sqrt(double(s)); });
  std::vector<double> alphas;
  for (int j = 0; j < 21; ++j) alphas.push_back(j / 21.0);
  json steps = json::array();
  for (int a = 1; a < 3; ++a) {
    auto mu1 = Density::beta_like(a), mu2 = Density::beta_like(a + 1);
    auto p2 = verify_prop2(curves, mu1, mu2, alphas);
    const bool lr = leq_lr(mu1, mu2).holds;
    ok = ok && lr && p2.all_pass() && p2.precondition_met;
    steps.push_back({{"from_a", a}, {"to_a", a + 1}, {"leq_lr", lr}, {"report", io::proposition_to_json(p2)}});
  }
  const double v_a1 = mixture_reward(curves[Coalition::singleton(0)], Density::beta_like(1));
  const double v_a2 = mixture_reward(curves[Coalition::singleton(0)], Density::beta_like(2));
  const bool closed_ok = std::abs(v_a1 - 1.25) <= 1e-8 && std::abs(v_a2 - (1.0 + 1.0 / 6)) <= 1e-8;
  ok = ok && closed_ok;

  return {{"prop1",
           {{"grid", grid},
            {"report", io::proposition_to_json(p1)},
            {"consolidation", chain},
            {"consolidation_monotone", monotone},
            {"pair_to_singleton_ratio_at_r1", ratio},
            {"ratio_matches", ratio_ok}}},
          {"prop2",
           {{"steps", steps},
            {"v1_a1", v_a1},
            {"v1_a2", v_a2},
            {"closed_forms_match", closed_ok}}},
          {"status", ok ? "PASS" : "FAIL"}};
}

int run_verify(const Common& common, const VerifySettings& vs) {
  static const std::vector<std::string> kSections{"theorem", "corollary", "props", "universality"};
  if (vs.what != "all" && std::find(kSections.begin(), kSections.end(), vs.what) == kSections.end())
    throw UsageError("verify target must be theorem, corollary, props, universality or all");
  if (vs.max_n < 2 || vs.max_n > kMaxVertexDim) throw UsageError("--max-n must lie in [2, 5]");
  if (vs.pairs < 0 || vs.games < 0) throw UsageError("counts must be nonnegative");
  json sections = json::object();
  auto wanted = [&](const std::string& s) { return vs.what == "all" || vs.what == s; };
  if (wanted("theorem"))
    sections["theorem"] = inclusion_suite(common, vs, [](const auto& a, const auto& b, const VerifyOptions& o) {
      return verify_theorem1(a, b, o);
    });
  if (wanted("corollary"))
    sections["corollary"] = inclusion_suite(common, vs, [](const auto& a, const auto& b, const VerifyOptions& o) {
      return verify_corollary(a, b, o);
    });
  if (wanted("props")) sections["props"] = props_suite(common);
  if (wanted("universality")) sections["universality"] = universality_suite(common, vs);
  bool ok = true;
  for (const auto& [name, section] : sections.items()) ok = ok && section["status"] == "PASS";
  json out = {{"seed", common.seed}, {"sections", sections}, {"status", ok ? "PASS" : "FAIL"}};
  emit(common, "verify", out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-form coalitional games: cores, stability and centripetality"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Seed for all sampling and random games");
  app.add_option("--tolerance", common.tolerance, "Tolerance for float-mode comparisons")->check(CLI::PositiveNumber);
  app.add_option("--max-exact-weak-core-n", common.max_exact_weak_core_n,
                 "Largest block size for the exact weak-core search")
      ->check(CLI::Range(1, kWeakCoreHardCap));
  app.add_option("--samples", common.samples, "Random feasible allocations per partition in inclusion checks")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", common.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", common.out, "Write the report into this directory instead of stdout");
  app.add_flag("--float", common.use_float, "Read games in floating point instead of exact rationals");

  std::string game_path, second_path, kind = "both";
  std::optional<double> r_override;
  SweepOptions sweep;
  VerifySettings verify;

  auto* validate = app.add_subcommand("validate", "Check a game file against the value-table rules");
  validate->add_option("game", game_path, "Game JSON file")->required();
  auto* analyze = app.add_subcommand("analyze", "Partition classification and stable sets");
  analyze->add_option("game", game_path, "Game JSON file")->required();
  auto* core = app.add_subcommand("core", "Strong and weak core of the grand coalition");
  core->add_option("game", game_path, "Game JSON file")->required();
  core->add_option("--kind", kind, "strong, weak or both")->check(CLI::IsMember({"strong", "weak", "both"}));
  auto* compare = app.add_subcommand("compare", "Centripetality order and inclusion checks between two games");
  compare->add_option("first", game_path, "Less centripetal game")->required();
  compare->add_option("second", second_path, "More centripetal game")->required();
  auto* meanstd = app.add_subcommand("scenario-meanstd", "Build and analyze a mean/std scenario game");
  meanstd->add_option("scenario", game_path, "Scenario JSON file")->required();
  meanstd->add_option("--r", r_override, "Override the risk weight");
  auto* cvar_cmd = app.add_subcommand("scenario-cvar", "Build and analyze a CVaR-mixture scenario game");
  cvar_cmd->add_option("scenario", game_path, "Scenario JSON file")->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "Stability counts along a risk-aversion grid");
  sweep_cmd->add_option("--scenario", sweep.scenario, "meanstd or cvar")
      ->required()
      ->check(CLI::IsMember({"meanstd", "cvar"}));
  sweep_cmd->add_option("--file", sweep.file, "Scenario JSON file");
  sweep_cmd->add_option("--r", sweep.r_range, "Risk weights start:stop:step (meanstd)");
  sweep_cmd->add_option("--mu", sweep.mu, "Input mean (meanstd)");
  sweep_cmd->add_option("--sigma", sweep.sigma, "Input standard deviation (meanstd)");
  sweep_cmd->add_option("--n", sweep.n, "Player count (meanstd)")->check(CLI::Range(1, 6));
  sweep_cmd->add_option("--phi-default", sweep.phi_default, "Amplifier for coalitions not listed (meanstd)");
  sweep_cmd->add_option("--beta-a", sweep.beta_a, "Comma-separated density exponents (cvar)");
  auto* verify_cmd = app.add_subcommand("verify", "Run the inclusion, proposition and universality suites");
  verify_cmd->add_option("target", verify.what, "theorem, corollary, props, universality or all");
  verify_cmd->add_option("--pairs", verify.pairs, "Ordered game pairs for theorem/corollary");
  verify_cmd->add_option("--games", verify.games, "Random games for universality");
  verify_cmd->add_option("--max-n", verify.max_n, "Largest player count for ordered pairs");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*validate) return common.use_float ? run_validate<double>(common, game_path) : run_validate<Rational>(common, game_path);
    if (*analyze) return common.use_float ? run_analyze<double>(common, game_path) : run_analyze<Rational>(common, game_path);
    if (*core)
      return common.use_float ? run_core<double>(common, game_path, kind) : run_core<Rational>(common, game_path, kind);
    if (*compare)
      return common.use_float ? run_compare<double>(common, game_path, second_path)
                              : run_compare<Rational>(common, game_path, second_path);
    if (*meanstd) return run_scenario_meanstd(common, game_path, r_override);
    if (*cvar_cmd) return run_scenario_cvar(common, game_path);
    if (*sweep_cmd) return run_sweep(common, sweep);
    if (*verify_cmd) return run_verify(common, verify);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
