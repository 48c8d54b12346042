#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumfree/counting.hpp"
#include "sumfree/enumerate.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/int_set.hpp"
#include "sumfree/optlab.hpp"
#include "sumfree/oracles.hpp"
#include "sumfree/report.hpp"
#include "sumfree/schur.hpp"
#include "sumfree/structure.hpp"

// Verb dispatch for the `sumfree` tool. Every verb writes one JSON document
//   {verb, parameters, result, manifest}
// where manifest.result_digest is FNV-1a over the canonical dump of
// {verb, parameters, result}. Thread count and timing live only in the manifest.

namespace sumfree::cli {

using nlohmann::json;

inline constexpr const char* kEngineVersion = "sumfree 1.0.0";

enum Exit : int { ok = 0, usage = 1, precondition = 2, budget = 3 };

inline const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v = {"classify", "stability", "types", "mu",     "h",     "witness",
                                             "count",    "verify",    "search", "example42", "bound", "opt"};
  return v;
}

inline std::string usage_text() {
  std::ostringstream s;
  s << "usage: sumfree <verb> [options] [--threads k]\n\nverbs:\n"
    << "  classify   --set A --n N [--theorem structure|freiman|dfst] [--eta E] [--x X --K K] [--scan]\n"
    << "  stability  --c1 C1 --c2 C2 --n N --eta E\n"
    << "  types      --a1 A1 --a2 A2 --n N --delta D\n"
    << "  mu         --n N --r R [--budget NODES]\n"
    << "  h          --r R [--budget NODES] [--long-run]\n"
    << "  witness    --set A --r R [--modulus M] [--budget NODES]\n"
    << "  count      --family sf1|sf2 --n N [--n-min M] [--engine dfs|naive] [--format json|csv]\n"
    << "  verify     --lemma long-interval|summation|bootstrap|lev-smeliansky|plunnecke --max N\n"
    << "  search     [--max-size S] [--max-span L]\n"
    << "  example42  --x X [--y Y]\n"
    << "  bound      --name entropy|entropy-binomial|restricted-partitions|green-morris|janson|forbidden-graph\n"
    << "  opt        --claim h310|g|f [--delta D] [--tol T] [--rho R]\n\n"
    << "Sets are given inline (--set 1,4,6) or by file (--set-file path, one integer per line).\n"
    << "SUMFREE_MAX_N overrides the enumeration caps of count and classify --scan.\n"
    << "Exit codes: 0 ok, 1 unknown verb, 2 precondition violation, 3 budget exhausted.\n";
  return s.str();
}

/// SUMFREE_MAX_N, when set to a non-negative integer.
inline std::optional<int> cap_override() {
  const char* v = std::getenv("SUMFREE_MAX_N");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0 || n > 1'000'000) throw precondition_error("SUMFREE_MAX_N must be a non-negative integer");
  return static_cast<int>(n);
}

struct VerbOutput {
  json parameters = json::object();
  json result;
  int status = Exit::ok;  // ok or budget
  std::size_t shard_count = 1;
  std::optional<std::string> text;  // replaces the JSON document (csv tables)
};

struct Common {
  unsigned threads = 1;
  std::string format = "json";
};

// Set flags shared by several verbs.
struct SetArg {
  std::string literal;
  std::string file;
  bool given_literal = false;

  void add(CLI::App& app, const std::string& name, const std::string& help, bool with_file) {
    app.add_option("--" + name, literal, help);
    if (with_file) app.add_option("--" + name + "-file", file, help + " (file, one integer per line)");
  }
  IntSet value(const CLI::App& app, const std::string& name) const {
    if (app.count("--" + name)) return parse_set_literal(literal);
    if (!file.empty()) return read_set_file(file);
    throw precondition_error("--" + name + " is required");
  }
};

using Runner = std::function<VerbOutput()>;

// Each builder registers its flags on `app` and returns the runner.
inline Runner build_classify(CLI::App& app, const Common& common) {
  struct S {
    SetArg set;
    int n = 0;
    double eta = 0.01, x = 0.0;
    int k = 0;
    std::string theorem = "structure";
    bool scan = false;
  };
  auto s = std::make_shared<S>();
  s->set.add(app, "set", "the set A", true);
  app.add_option("--n", s->n, "universe [1, n]")->required();
  app.add_option("--eta", s->eta, "slack parameter eta");
  app.add_option("--x", s->x, "size slack x (dfst)");
  app.add_option("--K", s->k, "absolute window slack K (dfst)");
  app.add_option("--theorem", s->theorem, "structure | freiman | dfst")
      ->check(CLI::IsMember({"structure", "freiman", "dfst"}));
  app.add_flag("--scan", s->scan, "scan every sum-free subset of [n]");
  return [s, &app, &common] {
    VerbOutput o;
    o.parameters = {{"n", s->n}, {"theorem", s->theorem}, {"scan", s->scan}};
    if (s->theorem == "structure") o.parameters["eta"] = s->eta;
    if (s->theorem == "dfst") {
      o.parameters["x"] = s->x;
      o.parameters["K"] = s->k;
    }
    if (s->scan) {
      ScanParams p;
      p.theorem = s->theorem == "freiman" ? Theorem::freiman : s->theorem == "dfst" ? Theorem::dfst : Theorem::structure;
      p.eta = s->eta;
      p.x = s->x;
      p.k = s->k;
      o.result = report::to_json(structure_scan(s->n, p, common.threads, cap_override()));
      o.shard_count = enumerate::roots(std::min(s->n, kScanPrefix)).size();
      return o;
    }
    const IntSet a = s->set.value(app, "set");
    o.parameters["set"] = report::set_json(a);
    if (s->theorem == "structure")
      o.result = report::to_json(classify(a, s->n, s->eta));
    else if (s->theorem == "freiman")
      o.result = report::to_json(freiman_check(a, s->n));
    else
      o.result = report::to_json(dfst_check(a, s->n, s->x, s->k));
    return o;
  };
}

inline Runner build_stability(CLI::App& app, const Common&) {
  struct S {
    SetArg c1, c2;
    int n = 0;
    double eta = 0.01;
  };
  auto s = std::make_shared<S>();
  s->c1.add(app, "c1", "first sum-free set", true);
  s->c2.add(app, "c2", "second sum-free set", true);
  app.add_option("--n", s->n, "universe [1, n]")->required();
  app.add_option("--eta", s->eta, "slack parameter eta");
  return [s, &app] {
    VerbOutput o;
    const IntSet c1 = s->c1.value(app, "c1"), c2 = s->c2.value(app, "c2");
    o.parameters = {{"c1", report::set_json(c1)}, {"c2", report::set_json(c2)}, {"n", s->n}, {"eta", s->eta}};
    o.result = report::to_json(stability_classify(c1, c2, s->n, s->eta));
    return o;
  };
}

inline Runner build_types(CLI::App& app, const Common&) {
  struct S {
    SetArg a1, a2;
    int n = 0;
    double delta = 0.0;
  };
  auto s = std::make_shared<S>();
  s->a1.add(app, "a1", "first sum-free set", true);
  s->a2.add(app, "a2", "second sum-free set", true);
  app.add_option("--n", s->n, "universe [1, n]")->required();
  app.add_option("--delta", s->delta, "defect allowance delta");
  return [s, &app] {
    VerbOutput o;
    const IntSet a1 = s->a1.value(app, "a1"), a2 = s->a2.value(app, "a2");
    o.parameters = {{"a1", report::set_json(a1)}, {"a2", report::set_json(a2)}, {"n", s->n}, {"delta", s->delta}};
    o.result = report::to_json(type_ab_classify(a1, a2, s->n, s->delta));
    return o;
  };
}

inline Runner build_mu(CLI::App& app, const Common&) {
  struct S {
    int n = 0, r = 1;
    std::uint64_t budget = 2'000'000'000ull;
  };
  auto s = std::make_shared<S>();
  app.add_option("--n", s->n, "universe [1, n]")->required();
  app.add_option("--r", s->r, "number of parts")->required();
  app.add_option("--budget", s->budget, "search node budget");
  return [s] {
    VerbOutput o;
    o.parameters = {{"n", s->n}, {"r", s->r}, {"budget", s->budget}};
    const MuResult m = mu(s->n, s->r, s->budget);
    o.result = report::to_json(m);
    if (!m.exact) o.status = Exit::budget;
    return o;
  };
}

inline Runner build_h(CLI::App& app, const Common&) {
  struct S {
    int r = 2;
    std::uint64_t budget = kUnlimitedNodes;
    bool long_run = false;
  };
  auto s = std::make_shared<S>();
  app.add_option("--r", s->r, "number of classes")->required();
  app.add_option("--budget", s->budget, "search node budget");
  app.add_flag("--long-run", s->long_run, "allow r >= 4 (long computation)");
  return [s] {
    VerbOutput o;
    require(s->r < 4 || s->long_run, "h(r) for r >= 4 is a long computation; pass --long-run");
    o.parameters = {{"r", s->r}, {"long_run", s->long_run}};
    o.parameters["budget"] = s->budget == kUnlimitedNodes ? json("unlimited") : json(s->budget);
    const ModularSchurResult h = modular_schur_number(s->r, s->budget);
    o.result = report::to_json(h);
    if (!h.certified) o.status = Exit::budget;
    return o;
  };
}

inline Runner build_witness(CLI::App& app, const Common&) {
  struct S {
    SetArg set;
    int r = 2;
    std::optional<int> modulus;
    std::uint64_t budget = kUnlimitedNodes;
  };
  auto s = std::make_shared<S>();
  s->set.add(app, "set", "the set A", true);
  app.add_option("--r", s->r, "number of parts")->required();
  app.add_option("--modulus", s->modulus, "sum-free modulo this value");
  app.add_option("--budget", s->budget, "search node budget");
  return [s, &app] {
    VerbOutput o;
    const IntSet a = s->set.value(app, "set");
    o.parameters = {{"set", report::set_json(a)}, {"r", s->r}};
    o.parameters["modulus"] = s->modulus ? json(*s->modulus) : json(nullptr);
    o.parameters["budget"] = s->budget == kUnlimitedNodes ? json("unlimited") : json(s->budget);
    const WitnessResult w = r_wise_witness(a, s->r, s->modulus, s->budget);
    o.result = report::to_json(w);
    if (w.status == SearchStatus::budget_exhausted) o.status = Exit::budget;
    return o;
  };
}

inline Runner build_count(CLI::App& app, const Common& common) {
  struct S {
    std::string family = "sf1";
    int n = 0;
    std::optional<int> n_min;
    std::string engine = "dfs";
  };
  auto s = std::make_shared<S>();
  app.add_option("--family", s->family, "sf1 | sf2")->required()->check(CLI::IsMember({"sf1", "sf2"}));
  app.add_option("--n", s->n, "largest n")->required();
  app.add_option("--n-min", s->n_min, "tabulate from this n");
  app.add_option("--engine", s->engine, "dfs | naive")->check(CLI::IsMember({"dfs", "naive"}));
  return [s, &common] {
    VerbOutput o;
    const int lo = s->n_min.value_or(s->n);
    require(lo >= 0 && lo <= s->n, "need 0 <= n-min <= n");
    o.parameters = {{"family", s->family}, {"n", s->n}, {"n_min", lo}, {"engine", s->engine}};
    const auto cap = cap_override();
    const bool sf1 = s->family == "sf1";
    std::vector<CountRecord> records;
    for (int n = lo; n <= s->n; ++n) {
      if (s->engine == "naive") {
        const std::uint64_t c = sf1 ? count_sum_free_naive(n) : count_two_wise_naive(n);
        CountRecord r = detail::make_record(n, sf1 ? Family::sf1 : Family::sf2, c, "naive");
        records.push_back(r);
      } else {
        records.push_back(sf1 ? count_sum_free(n, common.threads, cap) : count_two_wise_sum_free(n, common.threads, cap));
      }
    }
    json rows = json::array();
    double max_ratio = 0.0;
    for (const CountRecord& r : records) {
      rows.push_back(report::to_json(r));
      max_ratio = std::max(max_ratio, r.ratio);
    }
    o.result = {{"records", rows}, {"max_ratio", max_ratio}};
    o.shard_count = s->engine == "naive" ? 1
                    : sf1 ? enumerate::roots(enumerate::default_prefix(s->n)).size()
                          : detail::two_wise_roots(std::min(s->n, 12)).size();
    if (common.format == "csv") {
      std::ostringstream csv;
      csv << "n,family,exact_count,ratio\n";
      for (const CountRecord& r : records)
        csv << r.n << ',' << to_string(r.family) << ',' << r.exact_count << ',' << json(r.ratio).dump() << '\n';
      o.text = csv.str();
    }
    return o;
  };
}

inline Runner build_verify(CLI::App& app, const Common& common) {
  struct S {
    std::string lemma;
    int max = 0;
    int max_span = 12;
    int k_max = 4;
    SetArg set;
  };
  auto s = std::make_shared<S>();
  app.add_option("--lemma", s->lemma, "lemma id")
      ->required()
      ->check(CLI::IsMember({"long-interval", "summation", "bootstrap", "lev-smeliansky", "plunnecke"}));
  app.add_option("--max", s->max, "domain size (max_n, max_k, max_span or max element)");
  app.add_option("--max-span", s->max_span, "span cap for B (summation)");
  app.add_option("--k-max", s->k_max, "largest k (plunnecke)");
  s->set.add(app, "set", "single set S (plunnecke)", false);
  return [s, &app, &common] {
    VerbOutput o;
    o.parameters = {{"lemma", s->lemma}, {"max", s->max}};
    const unsigned t = common.threads;
    VerificationReport rep;
    if (s->lemma == "long-interval") {
      rep = verify_long_interval(s->max, t);
    } else if (s->lemma == "summation") {
      o.parameters["max_span"] = s->max_span;
      rep = verify_summation(s->max, s->max_span, t);
    } else if (s->lemma == "bootstrap") {
      rep = verify_bootstrap(s->max, t);
    } else if (s->lemma == "lev-smeliansky") {
      rep = verify_lev_smeliansky_diff(s->max, t);
    } else {
      o.parameters["k_max"] = s->k_max;
      if (app.count("--set")) {
        const IntSet set = s->set.value(app, "set");
        o.parameters["set"] = report::set_json(set);
        rep = plunnecke_check(set, s->k_max);
      } else {
        rep = verify_plunnecke(s->max, s->k_max, t);
      }
    }
    o.result = report::to_json(rep);
    return o;
  };
}

inline Runner build_search(CLI::App& app, const Common& common) {
  struct S {
    int max_size = 12, max_span = 20;
  };
  auto s = std::make_shared<S>();
  app.add_option("--max-size", s->max_size, "largest |A|");
  app.add_option("--max-span", s->max_span, "A inside [0, max_span]");
  return [s, &common] {
    VerbOutput o;
    o.parameters = {{"max_size", s->max_size}, {"max_span", s->max_span}};
    o.result = report::to_json(conjecture41_search(s->max_size, s->max_span, common.threads));
    o.shard_count = std::size_t{1} << std::min(s->max_span, 10);
    return o;
  };
}

inline Runner build_example42(CLI::App& app, const Common&) {
  struct S {
    int x = 3;
    std::optional<int> y;
  };
  auto s = std::make_shared<S>();
  app.add_option("--x", s->x, "block length x")->required();
  app.add_option("--y", s->y, "block spacing y >= 4x (default 4x)");
  return [s] {
    VerbOutput o;
    const int y = s->y.value_or(4 * s->x);
    o.parameters = {{"x", s->x}, {"y", y}};
    o.result = report::to_json(example42(s->x, y));
    return o;
  };
}

/// "0,1;1,2;4" -> three sets.
inline std::vector<IntSet> parse_set_family(const std::string& text) {
  std::vector<IntSet> out;
  std::string_view rest = text;
  while (true) {
    const auto semi = rest.find(';');
    out.push_back(parse_set_literal(rest.substr(0, semi)));
    if (semi == std::string_view::npos) break;
    rest.remove_prefix(semi + 1);
  }
  return out;
}

inline Runner build_bound(CLI::App& app, const Common&) {
  struct S {
    std::string name;
    int n = 10, k = 5, l = 3, s = 3, d = 8, gamma = 3;
    double alpha = 0.25, delta = 0.5, r = 3.0, x = 0.5;
    std::string sets;
    SetArg set;
    bool no_brute = false;
  };
  auto s = std::make_shared<S>();
  app.add_option("--name", s->name, "bound name")
      ->required()
      ->check(CLI::IsMember({"entropy", "entropy-binomial", "restricted-partitions", "green-morris", "janson",
                             "forbidden-graph"}));
  app.add_option("--n", s->n, "n");
  app.add_option("--k", s->k, "k");
  app.add_option("--l", s->l, "number of parts l");
  app.add_option("--alpha", s->alpha, "alpha in [0, 1/2]");
  app.add_option("--x", s->x, "entropy argument");
  app.add_option("--delta", s->delta, "delta");
  app.add_option("--R", s->r, "doubling R");
  app.add_option("--s", s->s, "set size s");
  app.add_option("--D", s->d, "universe [D]");
  app.add_option("--gamma", s->gamma, "|Gamma|");
  app.add_option("--sets", s->sets, "family U_i as '0,1;1,2'");
  s->set.add(app, "set", "step set S (forbidden-graph)", false);
  app.add_flag("--no-brute-force", s->no_brute, "skip the exact comparison");
  return [s, &app] {
    VerbOutput o;
    const std::string& nm = s->name;
    o.parameters = {{"name", nm}};
    if (nm == "entropy") {
      o.parameters["x"] = s->x;
      o.result = {{"H", entropy(s->x)}};
    } else if (nm == "entropy-binomial") {
      o.parameters.update({{"n", s->n}, {"k", s->k}, {"alpha", s->alpha}});
      const auto r = entropy_binomial_check(s->n, s->k, s->alpha);
      o.result = {{"binomial", report::to_json(r.binomial)}, {"partial_sum", report::to_json(r.partial_sum)}};
    } else if (nm == "restricted-partitions") {
      o.parameters.update({{"k", s->k}, {"l", s->l}});
      o.result = report::to_json(restricted_partitions(s->k, s->l));
    } else if (nm == "green-morris") {
      o.parameters.update({{"delta", s->delta}, {"R", s->r}, {"s", s->s}, {"D", s->d}});
      o.result = report::to_json(green_morris_bound(s->delta, s->r, s->s, s->d, !s->no_brute));
    } else if (nm == "janson") {
      const auto family = parse_set_family(s->sets);
      json fam = json::array();
      for (const IntSet& u : family) fam.push_back(report::set_json(u));
      o.parameters.update({{"gamma", s->gamma}, {"sets", fam}});
      o.result = report::to_json(janson_bound(family, s->gamma, !s->no_brute));
    } else {
      const IntSet steps = s->set.value(app, "set");
      o.parameters.update({{"n", s->n}, {"set", report::set_json(steps)}});
      o.result = report::to_json(forbidden_graph(steps, s->n));
    }
    return o;
  };
}

inline Runner build_opt(CLI::App& app, const Common& common) {
  struct S {
    std::string claim = "h310";
    double delta = 0.0, tol = 1e-6, rho = 1.0, slack = 0.0;
  };
  auto s = std::make_shared<S>();
  app.add_option("--claim", s->claim, "h310 | g | f")->check(CLI::IsMember({"h310", "g", "f"}));
  app.add_option("--delta", s->delta, "delta in [0, 0.01]");
  app.add_option("--tol", s->tol, "value agreement tolerance");
  app.add_option("--rho", s->rho, "rho > 0 (claim g)");
  app.add_option("--slack-coefficient", s->slack, "coefficient of the delta-order term");
  return [s, &common] {
    VerbOutput o;
    o.parameters = {{"claim", s->claim}};
    if (s->claim == "g") {
      o.parameters["rho"] = s->rho;
      o.result = report::to_json(opt::maximize_g(s->rho));
    } else if (s->claim == "f") {
      o.result = report::to_json(opt::maximize_f());
    } else {
      o.parameters.update({{"delta", s->delta}, {"tol", s->tol}, {"slack_coefficient", s->slack}});
      const auto run = opt::maximize_h(s->delta, s->slack, common.threads, s->tol);
      o.result = report::to_json(run);
      o.result["value_per_ell"] = run.closed_form.max_value_per_ell;
      o.shard_count = 400;
    }
    return o;
  };
}

inline Runner build(const std::string& verb, CLI::App& app, const Common& common) {
  static const std::map<std::string, Runner (*)(CLI::App&, const Common&)> table = {
      {"classify", build_classify}, {"stability", build_stability}, {"types", build_types},
      {"mu", build_mu},             {"h", build_h},                 {"witness", build_witness},
      {"count", build_count},       {"verify", build_verify},       {"search", build_search},
      {"example42", build_example42}, {"bound", build_bound},       {"opt", build_opt}};
  return table.at(verb)(app, common);
}

/// Canonical document and digest; also used by tests to compare runs.
inline json make_document(const std::string& verb, const VerbOutput& o, double wall_time, unsigned threads) {
  json body = {{"verb", verb}, {"parameters", o.parameters}, {"result", o.result}};
  const std::string digest = report::hex64(report::fnv1a(body.dump()));
  body["manifest"] = {{"engine_version", kEngineVersion},
                      {"wall_time", wall_time},
                      {"shard_count", o.shard_count},
                      {"threads", threads},
                      {"result_digest", digest}};
  return body;
}

/// Runs argv[1..] (verb first); returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage_text();
    return Exit::usage;
  }
  const std::string& verb = args[0];
  if (verb == "--help" || verb == "-h" || verb == "help") {
    out << usage_text();
    return Exit::ok;
  }
  if (std::find(verbs().begin(), verbs().end(), verb) == verbs().end()) {
    err << "unknown verb '" << verb << "'\n\n" << usage_text();
    return Exit::usage;
  }
  CLI::App app{"sumfree " + verb, "sumfree " + verb};
  Common common;
  app.add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", common.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  Runner runner = build(verb, app, common);
  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "sumfree " << verb << ": " << e.what() << '\n';
    return Exit::precondition;
  }
  try {
    if (common.format == "csv" && verb != "count") throw precondition_error("csv output is offered for count only");
    const auto start = std::chrono::steady_clock::now();
    VerbOutput o = runner();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.text) {
      out << *o.text;
    } else {
      out << make_document(verb, o, wall, common.threads).dump(2) << '\n';
    }
    if (o.status == Exit::budget) err << "sumfree " << verb << ": search budget exhausted\n";
    return o.status;
  } catch (const precondition_error& e) {
    err << "sumfree " << verb << ": " << e.what() << '\n';
    return Exit::precondition;
  }
}

}  // namespace sumfree::cli
