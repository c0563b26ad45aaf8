#pragma once

// JSON game/scenario files and JSON/CSV report serialization.

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "centripetality.hpp"
#include "game.hpp"
#include "risk.hpp"
#include "stability.hpp"

namespace fracgame {

using json = nlohmann::ordered_json;

namespace io {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

/// Exact value of a JSON number or numeric string.
inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a number or a rational string, got " + j.dump());
}

inline double double_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).convert_to<double>();
  throw ParseError("expected a number, got " + j.dump());
}

template <Scalar T>
json scalar_to_json(const T& v) {
  if constexpr (is_exact_v<T>) return v.str();
  else return v;
}

template <Scalar T>
json point_to_json(std::span<const T> f) {
  json out = json::array();
  for (const T& x : f) out.push_back(scalar_to_json(x));
  return out;
}

/// Coalition named by a comma-joined list of player names, in any order.
inline Coalition parse_coalition(const std::string& key, const std::vector<std::string>& players) {
  Coalition c;
  std::stringstream ss(key);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto first = name.find_first_not_of(" \t");
    auto last = name.find_last_not_of(" \t");
    name = first == std::string::npos ? std::string() : name.substr(first, last - first + 1);
    auto it = std::find(players.begin(), players.end(), name);
    if (it == players.end()) throw ParseError("unknown player '" + name + "' in coalition '" + key + "'");
    auto idx = static_cast<int>(it - players.begin());
    if (c.contains(idx)) throw ParseError("player '" + name + "' repeated in coalition '" + key + "'");
    c = c | Coalition::singleton(idx);
  }
  if (c.empty()) throw ParseError("empty coalition key");
  return c;
}

inline std::vector<std::string> players_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("\"players\" must be a nonempty array");
  std::vector<std::string> players;
  for (const auto& p : j) {
    if (!p.is_string()) throw ParseError("player names must be strings");
    auto name = p.get<std::string>();
    if (name.empty() || name.find_first_of(",|") != std::string::npos)
      throw ParseError("player name '" + name + "' is empty or contains ',' or '|'");
    if (std::find(players.begin(), players.end(), name) != players.end())
      throw ParseError("duplicate player '" + name + "'");
    players.push_back(std::move(name));
  }
  if (players.size() > static_cast<std::size_t>(kMaxPlayers)) throw ParseError("too many players");
  return players;
}

/// Candidate table from `{"players": [...], "values": {"a": 1, "a,b": "3/2", ...}}`.
template <Scalar T>
GameCandidate<T> game_candidate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("players") || !j.contains("values"))
    throw ParseError("game file needs \"players\" and \"values\"");
  GameCandidate<T> raw;
  raw.players = players_from_json(j.at("players"));
  raw.values.assign(std::size_t{1} << raw.players.size(), std::nullopt);
  const auto& values = j.at("values");
  if (!values.is_object()) throw ParseError("\"values\" must be an object");
  for (const auto& [key, value] : values.items()) {
    Coalition c = parse_coalition(key, raw.players);
    if (raw.values[c.bits()]) throw ParseError("coalition '" + key + "' listed twice");
    raw.values[c.bits()] = scalar_from_rational<T>(rational_from_json(value));
  }
  return raw;
}

template <Scalar T>
Game<T> game_from_json(const json& j, double tolerance = kDefaultTolerance) {
  return Game<T>(game_candidate_from_json<T>(j), tolerance);
}

template <Scalar T>
Game<T> load_game(const std::string& path, double tolerance = kDefaultTolerance) {
  return game_from_json<T>(read_json_file(path), tolerance);
}

template <Scalar T>
json game_to_json(const Game<T>& game) {
  json values = json::object();
  const std::size_t slots = std::size_t{1} << game.size();
  for (std::size_t m = 1; m < slots; ++m) {
    Coalition c(static_cast<Coalition::Mask>(m));
    values[game.name(c)] = scalar_to_json(game(c));
  }
  return {{"players", game.players()}, {"values", values}};
}

/// FNV-1a over the canonical JSON text of the game.
template <Scalar T>
std::string game_digest(const Game<T>& game) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : game_to_json(game).dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

template <Scalar T>
json validation_to_json(const GameCandidate<T>& raw, const ValidationReport& report) {
  json issues = json::array();
  for (const auto& issue : report.issues)
    issues.push_back({{"coalition", coalition_name(issue.coalition, raw.players)}, {"kind", to_string(issue.kind)}});
  return {{"valid", report.ok()}, {"issues", issues}};
}

template <Scalar T>
json patched_to_json(const PatchedCore<T>& pc) {
  json out = {{"status", to_string(pc.status)}};
  if (pc.witness) out["witness"] = point_to_json(std::span<const T>(*pc.witness));
  return out;
}

template <Scalar T>
json region_to_json(const CoreRegion<T>& region) {
  json out = {{"status", to_string(region.status)}, {"description", region.description}};
  if (region.witness) out["witness"] = point_to_json(std::span<const T>(*region.witness));
  if (region.slack) out["slack"] = scalar_to_json(*region.slack);
  return out;
}

template <Scalar T>
json stability_to_json(const Game<T>& game, const StabilityReport<T>& report) {
  json partitions = json::object();
  for (const auto& st : report.partitions) {
    partitions[game.name(st.partition)] = {{"in_Pu", st.fusion_resistant},
                                           {"in_Pi_plus", st.strong.status == RegionStatus::Nonempty},
                                           {"in_Pi_minus", st.weak.status == RegionStatus::Nonempty},
                                           {"strong_patched_core", patched_to_json(st.strong)},
                                           {"weak_patched_core", patched_to_json(st.weak)}};
  }
  auto stable = [&](const std::vector<StableEntry<T>>& entries) {
    json out = json::array();
    for (const auto& e : entries)
      out.push_back({{"partition", game.name(e.partition)},
                     {"witness", point_to_json(std::span<const T>(e.witness))}});
    return out;
  };
  json unknown = json::array();
  for (const auto& p : report.weak_unknown) unknown.push_back(game.name(p));
  json out = {{"partitions", partitions},
              {"counts",
               {{"Pi_plus", report.count_patched(Strength::Strong)},
                {"Pi_minus", report.count_patched(Strength::Weak)},
                {"Pu", report.count_fusion_resistant()},
                {"Pi_minus_unknown", report.count_patched_unknown()}}},
              {"S_plus", stable(report.strong_stable)},
              {"S_minus", stable(report.weak_stable)},
              {"S_minus_unknown", unknown}};
  if (auto best = most_consolidated_stable(game, report)) out["most_consolidated_stable"] = game.name(*best);
  return out;
}

/// Quotes a CSV field when it holds a comma, quote or newline.
inline std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

template <Scalar T>
std::string join_point(std::span<const T> f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ';';
    out += to_string(f[i]);
  }
  return out;
}

template <Scalar T>
std::string stability_to_csv(const Game<T>& game, const StabilityReport<T>& report) {
  std::string out = "partition,in_Pi_plus,in_Pi_minus,in_Pu,strong_witness,weak_witness\n";
  for (const auto& st : report.partitions) {
    out += csv_field(game.name(st.partition));
    out += st.strong.status == RegionStatus::Nonempty ? ",1" : ",0";
    out += st.weak.status == RegionStatus::Nonempty ? ",1" : (st.weak.status == RegionStatus::Unknown ? ",?" : ",0");
    out += st.fusion_resistant ? ",1," : ",0,";
    if (st.strong.witness) out += join_point(std::span<const T>(*st.strong.witness));
    out += ',';
    if (st.weak.witness) out += join_point(std::span<const T>(*st.weak.witness));
    out += '\n';
  }
  return out;
}

template <Scalar T>
json order_to_json(const Game<T>& v1, const OrderVerdict<T>& verdict) {
  json violations = json::array();
  for (const auto& v : verdict.violations)
    violations.push_back({{"smaller", v1.name(v.smaller)},
                          {"larger", v1.name(v.larger)},
                          {"lhs", scalar_to_json(v.lhs)},
                          {"rhs", scalar_to_json(v.rhs)}});
  return {{"holds", verdict.holds}, {"violations", violations}};
}

inline json claims_to_json(const std::vector<ClaimResult>& claims) {
  json out = json::array();
  for (const auto& c : claims) {
    json entry = {{"id", c.id},           {"statement", c.statement}, {"status", to_string(c.status)},
                  {"scope", c.scope},     {"checked", c.checked}};
    if (!c.counterexample.empty()) entry["counterexample"] = c.counterexample;
    out.push_back(std::move(entry));
  }
  return out;
}

inline json inclusion_to_json(const InclusionReport& report) {
  return {{"precondition_met", report.precondition_met},
          {"all_pass", report.all_pass()},
          {"claims", claims_to_json(report.claims)}};
}

inline json proposition_to_json(const PropositionReport& report) {
  return {{"precondition_met", report.precondition_met},
          {"all_pass", report.all_pass()},
          {"claims", claims_to_json(report.claims)}};
}

// --- scenarios --------------------------------------------------------------

/// `{"n":4,"mu":1.0,"sigma":0.5,"r":0.8,"phi":{"a,b":1.1,"default":1.0}}`, optional "players".
inline MeanStdScenario meanstd_from_json(const json& j) {
  MeanStdScenario s;
  if (!j.is_object()) throw ParseError("scenario must be an object");
  if (j.contains("players")) {
    s.players = players_from_json(j.at("players"));
    s.n = static_cast<int>(s.players.size());
    if (j.contains("n") && j.at("n").get<int>() != s.n) throw ParseError("\"n\" disagrees with \"players\"");
  } else {
    if (!j.contains("n")) throw ParseError("scenario needs \"n\" or \"players\"");
    s.n = j.at("n").get<int>();
    if (s.n < 1 || s.n > kMaxPlayers) throw ParseError("\"n\" out of range");
    s.players = default_player_names(s.n);
  }
  s.mu = double_from_json(j.at("mu"));
  s.sigma = double_from_json(j.at("sigma"));
  s.r = j.contains("r") ? double_from_json(j.at("r")) : 0.0;
  if (j.contains("phi")) {
    for (const auto& [key, value] : j.at("phi").items()) {
      if (key == "default") s.phi_default = double_from_json(value);
      else s.phi[parse_coalition(key, s.players)] = double_from_json(value);
    }
  }
  return s;
}

inline std::vector<std::pair<double, double>> knots_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("knots must be an array of [alpha, value] pairs");
  std::vector<std::pair<double, double>> knots;
  for (const auto& k : j) {
    if (!k.is_array() || k.size() != 2) throw ParseError("each knot must be [alpha, value]");
    knots.emplace_back(double_from_json(k[0]), double_from_json(k[1]));
  }
  return knots;
}

/// A curve given as knots, or as `{"samples": [...], "knots": 101}` (empirical quantiles).
inline QuantileCurve curve_from_json(const json& j) {
  if (j.is_object() && j.contains("samples")) {
    int count = j.value("knots", 101);
    return QuantileCurve::from_samples(j.at("samples").get<std::vector<double>>(), count);
  }
  return QuantileCurve(knots_from_json(j));
}

/// `{"knots": [[0, y0], ...]}` (rescaled to unit mass) or `{"beta_a": a}`.
inline Density density_from_json(const json& j) {
  if (j.contains("beta_a")) return Density::beta_like(j.at("beta_a").get<int>(), j.value("knot_count", 201));
  if (j.contains("knots")) return Density::normalized(knots_from_json(j.at("knots")));
  throw ParseError("density needs \"knots\" or \"beta_a\"");
}

struct CvarScenario {
  std::vector<std::string> players;
  CurveTable curves;
  Density density;
};

/// `{"curves": {"a": [[0,1],[1,2]], ...}, "density": {...}}`; curves may instead be
/// given per coalition size as `"curves_by_size": {"1": [...], "2": [...]}` with "n".
inline CvarScenario cvar_from_json(const json& j) {
  CvarScenario s;
  if (!j.is_object() || !j.contains("density")) throw ParseError("CVaR scenario needs \"density\"");
  if (j.contains("players")) {
    s.players = players_from_json(j.at("players"));
  } else if (j.contains("n")) {
    s.players = default_player_names(j.at("n").get<int>());
  } else if (j.contains("curves")) {
    for (const auto& [key, value] : j.at("curves").items())
      if (key.find(',') == std::string::npos) s.players.push_back(key);
    std::sort(s.players.begin(), s.players.end());
  }
  if (s.players.empty() || s.players.size() > static_cast<std::size_t>(kMaxPlayers))
    throw ParseError("CVaR scenario needs between 1 and 16 players");
  const int n = static_cast<int>(s.players.size());
  s.curves = CurveTable(n);
  std::vector<char> seen(std::size_t{1} << n, 0);
  if (j.contains("curves_by_size")) {
    for (const auto& [key, value] : j.at("curves_by_size").items()) {
      const int size = std::stoi(key);
      auto curve = curve_from_json(value);
      for (std::size_t m = 1; m < seen.size(); ++m)
        if (std::popcount(m) == size) {
          s.curves[Coalition(static_cast<Coalition::Mask>(m))] = curve;
          seen[m] = 1;
        }
    }
  }
  if (j.contains("curves")) {
    for (const auto& [key, value] : j.at("curves").items()) {
      Coalition c = parse_coalition(key, s.players);
      s.curves[c] = curve_from_json(value);
      seen[c.bits()] = 1;
    }
  }
  for (std::size_t m = 1; m < seen.size(); ++m)
    if (!seen[m])
      throw InvalidGame("MissingCoalition: no quantile curve for {" +
                        coalition_name(Coalition(static_cast<Coalition::Mask>(m)), s.players) + "}");
  s.density = density_from_json(j.at("density"));
  return s;
}

inline json tail_to_json(const TailVerdict& verdict, const std::vector<std::string>& players) {
  json violations = json::array();
  for (const auto& v : verdict.violations)
    violations.push_back({{"smaller", coalition_name(v.smaller, players)},
                          {"larger", coalition_name(v.larger, players)},
                          {"interval", {v.from, v.to}},
                          {"trend", v.slope_sign}});
  return {{"holds", verdict.holds}, {"violations", violations}};
}

}  // namespace io
}  // namespace fracgame
