#ifndef DIAMDEG_TOOLS_CLI_HPP
#define DIAMDEG_TOOLS_CLI_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diamdeg/builder.hpp"
#include "diamdeg/oracle.hpp"
#include "diamdeg/search_chi.hpp"
#include "diamdeg/search_omega.hpp"

#ifndef DIAMDEG_DATA_DIR
#define DIAMDEG_DATA_DIR "data"
#endif

namespace diamdeg::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kError = 1, kNoWitness = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Json ratio_json(const std::optional<Ratio> &r) { return r ? Json(r->str()) : Json(nullptr); }

/// Report skeleton. Everything outside "run" is deterministic.
inline Json report(const std::string &command) {
  Json j;
  j["schema"] = "1";
  j["command"] = command;
  return j;
}

inline Json strip_run(Json j) {
  j.erase("run");
  return j;
}

inline ClumpMatrix load_block(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ClumpMatrix::parse(in);
}

/// Layered text (graph6 + "layers" line), a bare graph6 line, or an edge list.
inline LayeredGraph load_graph(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.rfind("n ", 0) == 0) {
    std::istringstream is(text);
    return LayeredGraph{read_edge_list(is), {}, std::nullopt};
  }
  if (text.find("\nlayers") != std::string::npos) {
    std::istringstream is(text);
    return read_layered(is);
  }
  return LayeredGraph{from_graph6(text.substr(0, text.find('\n'))), {}, std::nullopt};
}

inline Json matrix_json(const ClumpMatrix &m) {
  Json j;
  j["chi"] = m.chi();
  j["mode"] = m.mode() == ClumpMode::Block ? "block" : "repeatable";
  j["rows"] = m.rows();
  return j;
}

inline Json construction_json(const ConstructionReport &r) {
  Json j;
  j["order"] = r.order;
  j["diameter"] = r.diameter;
  j["min_degree"] = r.min_degree;
  j["interior_min_degree"] = r.interior_min_degree;
  j["degree_ok"] = r.degree_ok;
  j["mode"] = mode_name(r.mode);
  j[r.mode == ConstraintMode::Omega ? "k4_free" : "three_colorable"] = r.constraint_ok;
  j["ratio"] = ratio_json(r.achieved_ratio);
  j["failure"] = r.failure ? Json(*r.failure) : Json(nullptr);
  return j;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

inline void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// ---- commands ----

struct ChiArgs {
  ChiSearchConfig cfg;
  std::string strategy = "auto";
  std::string witness_out;
};

inline int cmd_search_chi(const ChiArgs &a, Json &out) {
  ChiSearchConfig cfg = a.cfg;
  if (cfg.delta < 4) throw UsageError("search-chi needs --delta >= 4");
  if (a.strategy == "dp")
    cfg.strategy = ChiStrategy::DynamicProgram;
  else if (a.strategy != "auto")
    throw UsageError("--strategy must be auto or dp");
  Timer t;
  const auto r = search_chi(cfg);
  out = report("search-chi");
  out["config"] = {{"delta", cfg.delta},
                   {"max_period", cfg.max_period},
                   {"max_column_sum", cfg.column_sum_cap()},
                   {"max_class_size", cfg.class_size_cap()},
                   {"chi", cfg.chi},
                   {"strategy", a.strategy}};
  out["conditional"] = {{"assume_missing_color", cfg.assume_missing_color},
                        {"require_singleton_layer", cfg.require_singleton_layer},
                        {"period_bound", cfg.max_period},
                        {"lower_bound_only", cfg.conditional()}};
  Json res;
  res["ratio"] = ratio_json(r.best_ratio);
  if (r.witness) {
    res["period"] = r.witness_period;
    res["seam"] = r.seam.perm;
    res["witness"] = matrix_json(*r.witness);
    if (!a.witness_out.empty()) write_text(a.witness_out, r.witness->serialize());
  }
  out["result"] = res;
  out["run"] = {{"threads", cfg.threads}, {"states_expanded", r.states_expanded}, {"wall_time_seconds", t.seconds()}};
  return r.best_ratio ? kOk : kNoWitness;
}

struct OmegaArgs {
  OmegaSearchConfig cfg;
  std::string profile = "none";
  bool no_seed = false;
  std::string witness_out;
};

inline int cmd_search_omega(const OmegaArgs &a, Json &out) {
  OmegaSearchConfig cfg = a.cfg;
  if (cfg.delta < 4 || cfg.delta > 6) throw UsageError("search-omega needs --delta in {4, 5, 6}");
  if (cfg.max_layer_size > 2 * cfg.delta) throw UsageError("--max-layer-size must be at most 2 * delta");
  try {
    cfg.profile = AssumptionProfile::parse(a.profile);
    cfg.profile.validate(cfg.delta);
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  cfg.seed_with_clump = !a.no_seed;
  Timer t;
  const auto r = search_omega(cfg);
  out = report("search-omega");
  out["config"] = {{"delta", cfg.delta},
                   {"max_period", cfg.max_period},
                   {"max_layer_size", cfg.layer_cap()},
                   {"seed_with_clump", cfg.seed_with_clump}};
  out["conditional"] = {{"profile", cfg.profile.flags()}, {"lower_bound_only", cfg.profile.any()}};
  Json res;
  res["ratio"] = ratio_json(r.best_ratio);
  if (r.witness) {
    res["period"] = r.witness_period;
    res["layer_sizes"] = r.witness->layer_sizes();
    res["graph6"] = to_graph6(r.witness->graph);
    if (!a.witness_out.empty()) write_text(a.witness_out, layered_to_string(*r.witness));
  }
  out["result"] = res;
  out["run"] = {{"threads", cfg.threads},
                {"seed", ratio_json(r.seed)},
                {"states_expanded", r.states_expanded},
                {"interfaces", r.interfaces},
                {"wall_time_seconds", t.seconds()}};
  return r.best_ratio ? kOk : kNoWitness;
}

struct VerifyBlockArgs {
  std::string block;
  int delta = 4;
  std::string exceeds;
};

inline int cmd_verify_block(const VerifyBlockArgs &a, Json &out) {
  Timer t;
  out = report("verify-block");
  out["config"] = {{"block", std::filesystem::path(a.block).filename().string()}, {"delta", a.delta}};
  const ClumpMatrix m = load_block(a.block);
  Json res;
  res["columns"] = m.length();
  res["order"] = m.total();
  const auto deficit = m.first_deficit(a.delta);
  res["feasible"] = !deficit && m.length() > 0;
  if (deficit) res["deficit"] = {{"column", deficit->column}, {"color", deficit->color}, {"degree", deficit->degree}};
  if (m.mode() == ClumpMode::Repeatable) {
    const auto pi = m.length() >= 3 ? m.repeatable_permutation() : std::nullopt;
    res["repeatable_permutation"] = pi ? Json(pi->perm) : Json(nullptr);
  }
  res["ratio"] = deficit ? Json(nullptr) : Json(m.ratio().str());
  if (!a.exceeds.empty() && !deficit) {
    const Ratio bound = Ratio::parse(a.exceeds);
    res["exceeds"] = {{"bound", bound.str()}, {"holds", m.ratio() > bound}};
  }
  out["result"] = res;
  out["run"] = {{"wall_time_seconds", t.seconds()}};
  return deficit ? kError : kOk;
}

struct BuildArgs {
  std::string block, graph, output, format = "graph6", mode = "omega";
  int reps = 1;
  int delta = 4;
  bool cap = false;
  int threads = 1;
};

inline std::string format_graph(const LayeredGraph &g, const std::string &format) {
  if (format == "graph6") return to_graph6(g.graph) + "\n";
  if (format == "layered") return layered_to_string(g);
  std::ostringstream os;
  write_edge_list(os, g.graph);
  return os.str();
}

inline int cmd_build(const BuildArgs &a, Json &out, std::ostream &stdout_stream) {
  if (a.block.empty() == a.graph.empty()) throw UsageError("build needs exactly one of --block or --graph");
  const ConstraintMode mode = parse_mode(a.mode);
  ConstructionSpec spec;
  if (!a.block.empty())
    spec.block = load_block(a.block);
  else
    spec.block = load_graph(a.graph);
  spec.repetitions = a.reps;
  spec.delta = a.delta;
  spec.cap_ends = a.cap;
  spec.mode = mode;
  Timer t;
  const LayeredGraph g = concatenate(spec);
  const std::string text = format_graph(g, a.format);
  if (a.output.empty() || a.output == "-") {
    stdout_stream << text;
    out = Json();
    return kOk;
  }
  write_text(a.output, text);
  out = report("build");
  out["config"] = {{"reps", a.reps}, {"delta", a.delta}, {"cap", a.cap}, {"format", a.format}};
  const auto r = verify_construction(g, a.delta, mode, !a.cap, a.threads);
  out["result"] = construction_json(r);
  out["result"]["layer_count"] = g.layer_count();
  out["run"] = {{"threads", a.threads}, {"wall_time_seconds", t.seconds()}};
  return r.ok() ? kOk : kError;
}

struct VerifyArgs {
  std::string graph, mode = "omega";
  int delta = 4;
  bool ends_exempt = false;
  int threads = 1;
};

inline int cmd_verify(const VerifyArgs &a, Json &out) {
  const ConstraintMode mode = parse_mode(a.mode);
  Timer t;
  const LayeredGraph g = load_graph(a.graph);
  if (a.ends_exempt && g.layer_count() < 3) throw UsageError("--ends-exempt needs a layered graph");
  const auto r = verify_construction(g, a.delta, mode, a.ends_exempt, a.threads);
  out = report("verify");
  out["config"] = {{"delta", a.delta}, {"mode", a.mode}, {"ends_exempt", a.ends_exempt}};
  out["result"] = construction_json(r);
  out["run"] = {{"threads", a.threads}, {"wall_time_seconds", t.seconds()}};
  return r.ok() ? kOk : kError;
}

// Quick cross-check of the searches against the brute-force references.
inline int cmd_selftest(int threads, Json &out) {
  Timer t;
  out = report("selftest");
  Json checks = Json::array();
  bool all = true;
  auto record = [&](const std::string &name, bool ok, const std::string &detail) {
    checks.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
    all = all && ok;
  };
  std::mt19937 rng(20240601);
  int agree = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 4 + static_cast<int>(rng() % 9);
    oracle::EdgeList edges;
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 100 < 55) {
          edges.emplace_back(u, v);
          g.add_edge(u, v);
        }
    const bool k4 = oracle::naive_clique_number(n, edges) >= 4;
    int d = -1;
    try {
      d = diameter(g);
    } catch (const GraphError &) {
    }
    agree += (k4 == !is_k4_free(g)) && d == oracle::naive_diameter(n, edges);
  }
  record("k4_and_diameter", agree == 50, std::to_string(agree) + "/50");
  for (int delta : {4, 5}) {
    ChiSearchConfig cfg;
    cfg.delta = delta;
    cfg.max_period = 6;
    cfg.max_column_sum = 5;
    cfg.threads = threads;
    oracle::NaiveChiConfig naive{delta, 6, 5};
    const auto fast = search_chi(cfg).best_ratio;
    const auto slow = oracle::naive_search_chi(naive);
    record("chi_delta" + std::to_string(delta), fast == slow,
           (fast ? fast->str() : "none") + " vs " + (slow ? slow->str() : "none"));
  }
  out["result"] = {{"checks", checks}, {"passed", all}};
  out["run"] = {{"threads", threads}, {"wall_time_seconds", t.seconds()}};
  return all ? kOk : kError;
}

struct Table1Args {
  std::string blocks_dir = DIAMDEG_DATA_DIR "/blocks";
  std::string expected = DIAMDEG_DATA_DIR "/table1_expected.json";
  bool include_slow = false;
  int threads = 1;
};

/// Runs every cell of the frozen table and diffs the ratios.
inline int cmd_reproduce_table1(const Table1Args &a, Json &out) {
  Timer t;
  std::ifstream in(a.expected);
  if (!in) throw std::runtime_error("cannot open " + a.expected);
  const Json expected = Json::parse(in);
  Json cells = Json::array();
  bool all = true;
  for (const auto &cell : expected.at("cells")) {
    const bool slow = cell.value("slow", false);
    if (slow && !a.include_slow) continue;
    const std::string kind = cell.at("kind");
    const int delta = cell.at("delta");
    Json got;
    if (kind == "block") {
      got = Json();
      cmd_verify_block({a.blocks_dir + "/" + cell.at("block").get<std::string>(), delta, ""}, got);
    } else if (kind == "chi") {
      ChiArgs c;
      c.cfg.delta = delta;
      c.cfg.max_period = cell.at("max_period");
      c.cfg.max_column_sum = cell.value("max_column_sum", 0);
      c.cfg.assume_missing_color = cell.value("assume_missing_color", false);
      c.cfg.require_singleton_layer = cell.value("require_singleton_layer", false);
      c.cfg.threads = a.threads;
      cmd_search_chi(c, got);
    } else if (kind == "omega") {
      OmegaArgs o;
      o.cfg.delta = delta;
      o.cfg.max_period = cell.at("max_period");
      o.cfg.max_layer_size = cell.value("max_layer_size", 0);
      o.profile = cell.value("profile", "none");
      o.cfg.threads = a.threads;
      cmd_search_omega(o, got);
    } else {
      throw std::runtime_error("unknown cell kind '" + kind + "'");
    }
    const Json ratio = got["result"]["ratio"];
    const bool match = ratio == cell.at("ratio");
    all = all && match;
    cells.push_back({{"name", cell.at("name")},
                     {"kind", kind},
                     {"delta", delta},
                     {"expected", cell.at("ratio")},
                     {"got", ratio},
                     {"match", match},
                     {"conditional", cell.value("conditional", false)}});
  }
  out = report("reproduce-table1");
  out["config"] = {{"include_slow", a.include_slow}};
  out["result"] = {{"cells", cells}, {"all_match", all}};
  out["run"] = {{"threads", a.threads}, {"wall_time_seconds", t.seconds()}};
  return all ? kOk : kError;
}

/// Parses argv and runs one subcommand. The JSON report goes to `out`.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact searches for diameter / order ratios of graphs with given minimum degree", "diamdeg"};
  app.require_subcommand(1);
  int threads = default_threads();
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON report");

  ChiArgs chi;
  auto *sc = app.add_subcommand("search-chi", "best ratio over repeatable 3-colorable clump graphs");
  sc->add_option("--delta", chi.cfg.delta)->required();
  sc->add_option("--max-period", chi.cfg.max_period)->check(CLI::PositiveNumber);
  sc->add_option("--max-column-sum", chi.cfg.max_column_sum, "0: floor(3 delta / 2)")->check(CLI::NonNegativeNumber);
  sc->add_option("--max-class-size", chi.cfg.max_class_size)->check(CLI::NonNegativeNumber);
  sc->add_option("--chi", chi.cfg.chi)->check(CLI::Range(2, 4));
  sc->add_flag("--assume-missing-color", chi.cfg.assume_missing_color);
  sc->add_flag("--require-singleton-layer", chi.cfg.require_singleton_layer);
  sc->add_option("--strategy", chi.strategy, "auto or dp");
  sc->add_option("--witness-out", chi.witness_out);

  OmegaArgs om;
  auto *so = app.add_subcommand("search-omega", "best ratio over repeatable K4-free graphs");
  so->add_option("--delta", om.cfg.delta)->required();
  so->add_option("--max-period", om.cfg.max_period)->check(CLI::PositiveNumber);
  so->add_option("--max-layer-size", om.cfg.max_layer_size, "0: 2 delta")->check(CLI::Range(0, 16));
  so->add_option("--profile", om.profile, "none, delta5, delta6 or a comma list of size4,size5,cap5,adj44");
  so->add_flag("--no-seed", om.no_seed);
  so->add_option("--witness-out", om.witness_out);

  VerifyBlockArgs vb;
  auto *svb = app.add_subcommand("verify-block", "feasibility and ratio of a clump matrix file");
  svb->add_option("--block", vb.block)->required();
  svb->add_option("--delta", vb.delta)->required()->check(CLI::PositiveNumber);
  svb->add_option("--exceeds", vb.exceeds, "also check ratio > p/q");

  BuildArgs b;
  auto *sb = app.add_subcommand("build", "concatenate a block and optionally cap the ends");
  sb->add_option("--block", b.block);
  sb->add_option("--graph", b.graph, "repeatable layered graph");
  sb->add_option("--reps", b.reps)->check(CLI::Range(1, 100000));
  sb->add_option("--delta", b.delta)->check(CLI::PositiveNumber);
  sb->add_flag("--cap", b.cap);
  sb->add_option("--mode", b.mode)->check(CLI::IsMember({"omega", "chi"}));
  sb->add_option("--format", b.format)->check(CLI::IsMember({"graph6", "layered", "edges"}));
  sb->add_option("--output,-o", b.output);

  VerifyArgs v;
  auto *sv = app.add_subcommand("verify", "diameter, degrees and constraint of a graph file");
  sv->add_option("--graph", v.graph)->required();
  sv->add_option("--delta", v.delta)->required()->check(CLI::PositiveNumber);
  sv->add_option("--mode", v.mode)->check(CLI::IsMember({"omega", "chi"}));
  sv->add_flag("--ends-exempt", v.ends_exempt);

  auto *sst = app.add_subcommand("selftest", "compare the searches with brute force on small cases");

  Table1Args tb;
  auto *st = app.add_subcommand("reproduce-table1", "run every table cell and diff against the frozen values");
  st->add_option("--blocks-dir", tb.blocks_dir);
  st->add_option("--expected", tb.expected);
  st->add_flag("--include-slow", tb.include_slow);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kError;
  }

  Json rep;
  int code = kOk;
  try {
    if (*sc) {
      chi.cfg.threads = threads;
      code = cmd_search_chi(chi, rep);
    } else if (*so) {
      om.cfg.threads = threads;
      code = cmd_search_omega(om, rep);
    } else if (*svb) {
      code = cmd_verify_block(vb, rep);
    } else if (*sb) {
      b.threads = threads;
      code = cmd_build(b, rep, out);
    } else if (*sv) {
      v.threads = threads;
      code = cmd_verify(v, rep);
    } else if (*sst) {
      code = cmd_selftest(threads, rep);
    } else if (*st) {
      tb.threads = threads;
      code = cmd_reproduce_table1(tb, rep);
    }
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  if (!rep.is_null()) out << (pretty ? rep.dump(2) : rep.dump()) << "\n";
  return code;
}

} // namespace diamdeg::cli

#endif
