#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "sumfree/counting.hpp"
#include "sumfree/int_set.hpp"
#include "sumfree/optlab.hpp"
#include "sumfree/oracles.hpp"
#include "sumfree/schur.hpp"
#include "sumfree/structure.hpp"

// JSON forms of every result type. nlohmann::json keeps object keys sorted
// and prints doubles in shortest round-trip form, so dump() is canonical.

namespace sumfree::report {

using nlohmann::json;

inline json set_json(const IntSet& s) { return json(s.elements()); }

inline json big_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return json(v.convert_to<std::uint64_t>());
  return json(v.str());
}

inline json rational_json(const Rational& q) {
  if (q.denominator() == 1) return json(q.numerator());
  return json(std::to_string(q.numerator()) + "/" + std::to_string(q.denominator()));
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 15];
  return out;
}

// --- schur -------------------------------------------------------------------

inline json to_json(const PartitionWitness& w) {
  json parts = json::array();
  for (const IntSet& p : w.parts) parts.push_back(set_json(p));
  json j = {{"r", w.r}, {"parts", parts}};
  j["modulus"] = w.modulus ? json(*w.modulus) : json(nullptr);
  return j;
}

inline json to_json(const WitnessResult& w) {
  json j = {{"status", to_string(w.status)}, {"nodes", w.nodes}};
  j["witness"] = w.witness ? to_json(*w.witness) : json(nullptr);
  return j;
}

inline json to_json(const MuResult& m) {
  return {{"n", m.n},
          {"r", m.r},
          {"value", m.value},
          {"exact", m.exact},
          {"witness_set", set_json(m.witness_set)},
          {"witness", to_json(m.witness)},
          {"subsets_checked", m.subsets_checked},
          {"nodes", m.nodes}};
}

inline json to_json(const ModularSchurResult& h) {
  json j = {{"r", h.r},
            {"lower", h.lower},
            {"certified", h.certified},
            {"refuted_plain_at", h.refuted_plain_at},
            {"nodes", h.nodes}};
  j["upper"] = h.upper ? json(*h.upper) : json(nullptr);
  j["value"] = h.certified ? json(h.lower) : json(nullptr);
  j["status"] = h.certified ? "certified" : "budget_exhausted";
  j["witness"] = h.witness ? to_json(*h.witness) : json(nullptr);
  return j;
}

// --- structure ---------------------------------------------------------------

inline json to_json(const Window& w) {
  return {{"lower", {w.a_lo, w.a_hi}}, {"upper", {w.b_lo, w.b_hi}}};
}

inline json to_json(const ClassificationReport& r) {
  return {{"n", r.n},
          {"eta", r.eta},
          {"satisfied", r.satisfied.names()},
          {"interval_slack", r.interval_slack},
          {"window", to_json(r.window)},
          {"vacuous_v", r.vacuous_v},
          {"trivial", r.trivial}};
}

inline json to_json(const FreimanVerdict& v) {
  return {{"n", v.n},
          {"size", v.size},
          {"premise_met", v.premise_met},
          {"odd", v.odd},
          {"min_at_least_size", v.min_at_least_size},
          {"holds", v.holds},
          {"verdict", !v.premise_met ? "premise not met"
                      : v.odd && v.min_at_least_size ? "i,ii"
                      : v.odd ? "i"
                      : v.min_at_least_size ? "ii"
                      : "violated"}};
}

inline json to_json(const DfstReport& r) {
  return {{"n", r.n},
          {"x", r.x},
          {"K", r.k},
          {"premise_met", r.premise_met},
          {"satisfied", r.satisfied.names()},
          {"window", to_json(r.window)}};
}

inline json to_json(const StabilityReport& r) {
  json verdict = json::array();
  if (r.verdict_i) verdict.push_back("i");
  if (r.verdict_ii) verdict.push_back("ii");
  if (verdict.empty()) verdict.push_back("neither");
  return {{"n", r.n},
          {"eta", r.eta},
          {"premise_met", r.premise_met},
          {"union_size", r.union_size},
          {"defect_a", r.defect_a},
          {"defect_b", r.defect_b},
          {"threshold_a", r.threshold_a},
          {"threshold_b", r.threshold_b},
          {"verdict", verdict}};
}

inline json to_json(const TypeReport& r) {
  return {{"n", r.n},
          {"delta", r.delta},
          {"defect_a", r.defect_a},
          {"defect_b", r.defect_b},
          {"verdict", to_string(r.verdict)}};
}

inline json to_json(const ScanReport& r) {
  json per = json::object();
  for (int k = 1; k <= 5; ++k) {
    if (r.params.theorem == Theorem::freiman && k != 1 && k != 4) continue;
    const char* name = r.params.theorem == Theorem::freiman ? (k == 1 ? "i" : "ii") : Alternatives::kNames[k - 1];
    per[name] = r.per_alternative[static_cast<std::size_t>(k - 1)];
  }
  json violators = json::array();
  for (const IntSet& s : r.violators) violators.push_back(set_json(s));
  json params = {{"theorem", to_string(r.params.theorem)}};
  if (r.params.theorem == Theorem::structure) params["eta"] = r.params.eta;
  if (r.params.theorem == Theorem::dfst) {
    params["x"] = r.params.x;
    params["K"] = r.params.k;
  }
  return {{"n", r.n},
          {"params", params},
          {"sets_enumerated", r.sets_enumerated},
          {"premise_count", r.premise_count},
          {"per_alternative", per},
          {"violator_count", r.violator_count},
          {"violators", violators},
          {"vacuous_v", r.vacuous_v},
          {"label", r.label}};
}

// --- oracles -----------------------------------------------------------------

inline json to_json(const Violation& v) {
  json sets = json::object();
  for (auto& [name, s] : v.sets) sets[name] = set_json(s);
  return {{"part", v.part},
          {"sets", sets},
          {"params", v.params},
          {"lhs", rational_json(v.lhs)},
          {"rhs", rational_json(v.rhs)},
          {"relation", v.relation}};
}

inline json to_json(const VerificationReport& r) {
  json parts = json::object();
  for (auto& [name, t] : r.parts) {
    json hist = json::object();
    for (auto& [k, c] : t.slack_histogram) hist[std::to_string(k)] = c;
    json ex = json::array();
    for (const Violation& v : t.examples) ex.push_back(to_json(v));
    parts[name] = {{"instances", t.instances}, {"violations", t.violations}, {"slack_histogram", hist},
                   {"examples", ex}};
  }
  return {{"lemma_id", r.lemma_id},
          {"domain", r.domain},
          {"sets_enumerated", r.sets_enumerated},
          {"instances_checked", r.instances_checked()},
          {"total_violations", r.total_violations()},
          {"parts", parts},
          {"counters", r.counters}};
}

inline json to_json(const Progression& p) { return {{"start", p.start}, {"step", p.step}, {"length", p.length}}; }

inline json to_json(const ApCover& c) {
  json j = {{"found", c.found}, {"count", c.count}, {"step", c.step}, {"p1", to_json(c.p1)},
            {"total_length", c.total_length}};
  j["p2"] = c.p2 ? to_json(*c.p2) : json(nullptr);
  return j;
}

inline json to_json(const Conjecture41Candidate& c) {
  return {{"set", set_json(c.set)},       {"r", c.r},
          {"difference_size", c.difference_size},
          {"ap_length", c.ap_length},     {"two_ap_total", c.two_ap_total},
          {"conclusion_i", c.conclusion_i}, {"conclusion_ii", c.conclusion_ii}};
}

inline json to_json(const Conjecture41Report& r) {
  json cand = json::array(), bound = json::array();
  for (auto& c : r.candidates) cand.push_back(to_json(c));
  for (auto& c : r.boundary_witnesses) bound.push_back(to_json(c));
  return {{"max_size", r.max_size},
          {"max_span", r.max_span},
          {"sets_examined", r.sets_examined},
          {"in_range", r.in_range},
          {"boundary", r.boundary},
          {"candidates", cand},
          {"boundary_witnesses", bound},
          {"label", r.label}};
}

inline json to_json(const Example42Record& e) {
  return {{"x", e.x},
          {"y", e.y},
          {"set", set_json(e.set)},
          {"size", e.size},
          {"difference_size", e.difference_size},
          {"expected_difference_size", e.expected_difference_size},
          {"r", e.r},
          {"ap_length_allowed", e.ap_length_allowed},
          {"two_ap_allowed", e.two_ap_allowed},
          {"difference_gcd", e.difference_gcd},
          {"conclusion_i", e.conclusion_i},
          {"conclusion_ii", e.conclusion_ii}};
}

// --- counting ----------------------------------------------------------------

inline json to_json(const CountRecord& r) {
  return {{"n", r.n},
          {"family", to_string(r.family)},
          {"exact_count", r.exact_count},
          {"benchmark_exponent", std::to_string(r.benchmark_num) + "/" + std::to_string(r.benchmark_den)},
          {"ratio", r.ratio},
          {"lower_bound", r.lower_bound},
          {"lower_bound_holds", r.lower_bound_holds},
          {"engine", r.engine}};
}

inline json to_json(const BoundReport& b) {
  json j = {{"bound_name", b.bound_name},
            {"parameters", b.parameters},
            {"bound_value", b.bound_value},
            {"advisory", b.advisory},
            {"quantities", b.quantities},
            {"notes", b.notes}};
  j["exact_value"] = b.exact_value ? big_json(*b.exact_value) : json("not computed");
  j["satisfied"] = b.satisfied ? json(*b.satisfied) : json("n/a");
  return j;
}

inline json to_json(const ForbiddenGraph& g) {
  json edges = json::array();
  for (auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"n", g.n},
          {"vertices", set_json(g.vertices)},
          {"edges", edges},
          {"edge_count", g.edge_count},
          {"edge_formula", g.edge_formula},
          {"max_degree", g.max_degree},
          {"degree_bound", g.degree_bound},
          {"mu", g.mu},
          {"delta", g.delta},
          {"delta_upper", g.delta_upper},
          {"degree_bound_holds", g.degree_bound_holds},
          {"delta_bound_holds", g.delta_bound_holds},
          {"mu_matches", g.mu_matches}};
}

// --- optlab ------------------------------------------------------------------

inline json to_json(const opt::Point& p) { return {{"x", p.x}, {"p_over_ell", p.q}, {"y", p.y}, {"z", p.z}}; }

inline json to_json(const opt::OptimumReport& r) {
  return {{"argmax", to_json(r.argmax)},
          {"max_value_per_ell", r.max_value_per_ell},
          {"delta", r.delta},
          {"slack_coefficient", r.slack_coefficient},
          {"method", r.method},
          {"tolerance", r.tolerance},
          {"p_on_upper_boundary", r.p_on_upper_boundary}};
}

inline json to_json(const opt::GradientCheck& g) {
  return {{"step", g.step}, {"d_x_along_boundary", g.d_x}, {"d_y", g.d_y}, {"d_z", g.d_z},
          {"d_q_inward", g.d_q_inward}, {"passes", g.passes}};
}

inline json to_json(const opt::OptimizationRun& r) {
  return {{"closed_form", to_json(r.closed_form)},
          {"grid", to_json(r.grid)},
          {"gradient", to_json(r.gradient)},
          {"argmax_gap", r.argmax_gap},
          {"value_gap", r.value_gap},
          {"agree", r.agree}};
}

inline json to_json(const opt::LineOptimum& l) {
  return {{"argmax", l.argmax}, {"value", l.value}, {"argmax_numeric", l.argmax_numeric},
          {"value_numeric", l.value_numeric}};
}

}  // namespace sumfree::report
