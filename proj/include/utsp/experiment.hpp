#pragma once

#include <cstdint>
#include <exception>
#include <limits>
#include <filesystem>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "utsp/copies.hpp"
#include "utsp/figures.hpp"
#include "utsp/gluing.hpp"
#include "utsp/io.hpp"
#include "utsp/order_ratio.hpp"
#include "utsp/parallel.hpp"
#include "utsp/random.hpp"
#include "utsp/snake.hpp"
#include "utsp/square.hpp"
#include "utsp/star.hpp"
#include "utsp/tiling.hpp"
#include "utsp/tree.hpp"

namespace utsp::experiment {

using json = nlohmann::json;

// 64-bit FNV-1a.
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
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[std::size_t(i)] = digits[v & 15];
  return s;
}

// Hash of the canonical (key-sorted, compact) form of a spec. The output
// block only says where files go and is left out.
inline std::string spec_hash(json spec) {
  if (spec.is_object()) spec.erase("output");
  return hex64(fnv1a(spec.dump()));
}

template <typename T>
T param(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw format_error(std::string("parameter \"") + key + "\" has the wrong type");
  }
}

// A generated space with the order its builder produces.
struct Instance {
  MetricSpace space;
  TotalOrder order;
  json info = json::object();           // generator metadata recorded in reports
  std::optional<double> or_bound;       // proven bound on OR(k) for this builder, if any
  std::optional<TilingWindow> window;   // tiling instances only
  std::vector<std::pair<std::int64_t, std::int64_t>> window_base;
};

inline const std::set<std::string>& generator_types() {
  static const std::set<std::string> t = {"tree",  "circle", "tripod", "domino", "square", "gluing",
                                          "star",  "random", "six-point", "tiling", "copies", "file"};
  return t;
}

inline MetricSpace six_point_space() {
  return MetricSpace({"1", "2", "3", "4", "5", "6"}, {{0, 1, 1.5, 1.7, 1.5, 2},
                                                      {1, 0, 1.8, 1.6, 1.5, 1.6},
                                                      {1.5, 1.8, 0, 1, 1.7, 2},
                                                      {1.7, 1.6, 1, 0, 1.3, 1.6},
                                                      {1.5, 1.5, 1.7, 1.3, 0, 1.7},
                                                      {2, 1.6, 2, 1.6, 1.7, 0}});
}

// Builds the instance described by a generator object {"type": ..., params}.
// All randomness comes from `seed`.
inline Instance generate(const json& g, std::uint64_t seed) {
  if (!g.is_object() || !g.contains("type")) throw format_error("generator needs a \"type\"");
  const auto type = g.at("type").get<std::string>();
  std::mt19937_64 rng(seed);
  Instance out;
  out.info = {{"type", type}};
  if (type == "tree") {
    const auto n = param<std::size_t>(g, "n", 10);
    const auto tree = random_tree(n, rng, param(g, "min_length", 0.1), param(g, "max_length", 2.0));
    out.space = tree.metric();
    out.order = rooted_order(tree);
    out.or_bound = 2.0;
    out.info["n"] = n;
  } else if (type == "circle" || type == "tripod") {
    const auto n = param<std::size_t>(g, "n", 8);
    const double len = param(g, "length", 1.0);
    out.space = type == "circle" ? circle_space(n, len) : tripod_space(n, len);
    out.order = TotalOrder::identity(out.space.size());
    if (type == "circle") out.or_bound = 2.0;
    out.info["n"] = n;
    out.info["length"] = len;
  } else if (type == "domino") {
    const double density = param(g, "density", 20.0);
    const double len = param(g, "length", 1.0);
    auto d = domino_space(density, len);
    out.space = std::move(d.space);
    out.order = TotalOrder::identity(out.space.size());
    out.info["density"] = density;
    out.info["length"] = len;
  } else if (type == "square") {
    const int m = param(g, "m", 3);
    auto sq = interleave_square_order(m);
    out.space = std::move(sq.space);
    out.order = std::move(sq.order);
    out.info["m"] = m;
  } else if (type == "gluing") {
    const auto sizes = param<std::vector<std::size_t>>(g, "sizes", {4, 4, 4});
    const auto gl = random_gluing(sizes, rng);
    const auto base = param<std::size_t>(g, "base", 0);
    out.space = gl.metric();
    out.order = clockwise_order(gl, base);
    out.info["sizes"] = sizes;
    out.info["base"] = base;
  } else if (type == "star") {
    const int m = param(g, "m", 3);
    Graph graph = g.contains("graph") ? io::graph_from_json(io::read_json_file(g.at("graph").get<std::string>()))
                                      : random_connected_graph(param<std::size_t>(g, "n", 5),
                                                               param<std::size_t>(g, "extra", 1), rng);
    const TotalOrder tv = random_order(graph.vertex_count, rng);
    auto [star, t] = star_order(graph, tv, m);
    out.space = std::move(star.space);
    out.order = std::move(t);
    json vo = json::array();
    for (std::size_t r = 0; r < tv.size(); ++r) vo.push_back(graph.labels.empty() ? std::to_string(tv.at(r)) : graph.labels[tv.at(r)]);
    out.info["m"] = m;
    out.info["vertex_order"] = vo;
  } else if (type == "random") {
    const auto n = param<std::size_t>(g, "n", 8);
    out.space = random_euclidean_space(n, rng, param<std::size_t>(g, "dim", 2));
    out.order = random_order(n, rng);
    out.info["n"] = n;
  } else if (type == "six-point") {
    out.space = six_point_space();
    out.order = TotalOrder::identity(6);
  } else if (type == "tiling") {
    const auto d = param<std::size_t>(g, "d", 1);
    const int levels = param(g, "levels", 6);
    const auto span = param<std::int64_t>(g, "span", std::int64_t{1} << levels);
    auto w = build_column_window(d, levels, span, param(g, "metric", true));
    out.window_base.assign(d, {0, span - 1});
    out.order = branch_convex_order(w);
    out.space = w.metric;
    out.window = std::move(w);
    out.info["d"] = d;
    out.info["levels"] = levels;
    out.info["span"] = span;
  } else if (type == "copies") {
    const auto n = param<std::size_t>(g, "n", 5);
    const auto s = param<std::size_t>(g, "s", 2);
    const auto tree = random_tree(n, rng);
    std::vector<std::size_t> omega = param<std::vector<std::size_t>>(g, "omega", {0});
    auto c = glue_copies(tree.metric(), rooted_order(tree), omega, s);
    out.space = std::move(c.space);
    out.order = std::move(c.order);
    out.info["n"] = n;
    out.info["s"] = s;
  } else if (type == "file") {
    out.space = io::read_space(g.at("space").get<std::string>());
    out.order = g.contains("order") ? io::read_order(g.at("order").get<std::string>(), out.space)
                                    : TotalOrder::identity(out.space.size());
  } else {
    throw format_error("unknown generator type '" + type + "'");
  }
  out.info["points"] = out.space.size();
  return out;
}

inline const std::set<std::string>& analysis_types() {
  static const std::set<std::string> t = {"or", "or-cyclic", "best", "br", "snake", "audit"};
  return t;
}

// Checks a spec before anything runs: known types, nonempty analyses,
// readable referenced files.
inline void validate_spec(const json& spec) {
  if (!spec.is_object()) throw format_error("experiment spec must be a JSON object");
  if (!spec.contains("generator")) throw format_error("experiment spec needs a \"generator\"");
  const auto& g = spec.at("generator");
  if (!g.is_object() || !g.contains("type") || !g.at("type").is_string())
    throw format_error("generator needs a string \"type\"");
  if (!generator_types().count(g.at("type").get<std::string>()))
    throw format_error("unknown generator type '" + g.at("type").get<std::string>() + "'");
  for (const char* key : {"space", "order", "graph"})
    if (g.contains(key) && !std::filesystem::exists(g.at(key).get<std::string>()))
      throw format_error("generator references missing file " + g.at(key).get<std::string>());
  if (spec.contains("order")) {
    const auto& o = spec.at("order");
    const auto type = param<std::string>(o, "type", "builtin");
    if (type != "builtin" && type != "identity" && type != "reverse" && type != "random" && type != "file")
      throw format_error("unknown order type '" + type + "'");
    if (type == "file" && !std::filesystem::exists(param<std::string>(o, "path", "")))
      throw format_error("order references missing file " + param<std::string>(o, "path", ""));
  }
  if (!spec.contains("analyses") || !spec.at("analyses").is_array() || spec.at("analyses").empty())
    throw invalid_input("experiment spec has an empty analysis list");
  for (const auto& a : spec.at("analyses")) {
    const auto type = param<std::string>(a, "type", "");
    if (!analysis_types().count(type)) throw format_error("unknown analysis type '" + type + "'");
    if (type == "audit" && g.at("type") != "tiling") throw invalid_input("audit analysis needs a tiling generator");
    const auto mode = param<std::string>(a, "mode", "exact");
    if (mode != "exact" && mode != "sampled") throw format_error("unknown mode '" + mode + "'");
  }
}

inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "sampled") return Mode::sampled;
  throw format_error("unknown mode '" + s + "'");
}

struct AnalysisOutput {
  json result = json::object();
  std::optional<std::string> csv;  // k,value,bound series
};

inline std::string series_csv(const std::vector<ORReport>& reports, const std::vector<double>& bounds) {
  std::string s = "k,value,bound\n";
  for (std::size_t i = 0; i < reports.size(); ++i)
    s += std::to_string(reports[i].k) + "," + io::fmt(reports[i].value) + "," + io::fmt(bounds[i]) + "\n";
  return s;
}

inline AnalysisOutput run_analysis(const json& a, const Instance& inst, const TotalOrder& t, std::uint64_t seed) {
  const auto type = a.at("type").get<std::string>();
  const auto& m = inst.space;
  AnalysisOutput out;
  out.result = {{"type", type}};
  RatioOptions ro;
  ro.mode = parse_mode(param<std::string>(a, "mode", "exact"));
  ro.budget = param(a, "budget", kDefaultExactBudget);
  ro.sampled.seed = param<std::uint64_t>(a, "seed", seed);
  ro.sampled.subsets = param<std::size_t>(a, "subsets", ro.sampled.subsets);
  ro.workers = 1;
  const int kmax_default = int(std::max<std::size_t>(1, m.size() - 1));
  if (type == "or" || type == "or-cyclic") {
    ro.cyclic = type == "or-cyclic" || param(a, "cyclic", false);
    const int k = std::min(param(a, "k", kmax_default), kmax_default);
    const auto reports = ratio_profile(m, t, k, ro);
    std::vector<double> bounds;
    json rows = json::array();
    for (const auto& r : reports) {
      const double fallback = inst.or_bound && !ro.cyclic ? *inst.or_bound : double(r.k);
      bounds.push_back(param(a, "bound", fallback));
      rows.push_back(io::report_to_json(r, m));
    }
    out.result["series"] = rows;
    out.result["mode"] = to_string(ro.mode);
    if (ro.mode == Mode::sampled) out.result["seed"] = ro.sampled.seed;
    out.csv = series_csv(reports, bounds);
  } else if (type == "best") {
    BestOrderOptions bo;
    bo.seed = seed;
    const int k = param(a, "k", 2);
    const auto best = best_order_ratio(m, k, bo);
    json mins = json::array();
    for (const auto& o : best.minimizers) mins.push_back(io::order_to_json(o, m));
    out.result.update({{"k", k},
                       {"value", best.value},
                       {"exact", best.exact},
                       {"orders_examined", best.orders_examined},
                       {"minimizers", mins}});
    if (!best.exact) out.result["seed"] = best.seed;
  } else if (type == "br") {
    BreakpointOptions bo;
    bo.max_s = param(a, "max_s", 4);
    bo.elongation_threshold = param(a, "elongation_threshold", bo.elongation_threshold);
    bo.window = param(a, "window", inst.window.has_value());
    bo.ratio = ro;
    bo.snake.seed = seed;
    const auto rep = order_breakpoint(m, t, bo);
    json per = json::array();
    for (std::size_t i = 0; i < rep.s_values.size(); ++i) {
      json row{{"s", rep.s_values[i]}, {"value", rep.per_s[i]}};
      if (i < rep.witness_snakes.size()) {
        row["snake"] = io::snake_to_json(rep.witness_snakes[i], m);
        row["exceeds_threshold"] = bool(rep.exceeds_threshold[i]);
      }
      per.push_back(row);
    }
    out.result["br"] = rep.br ? json(*rep.br) : json(nullptr);
    out.result["per_s"] = per;
  } else if (type == "snake") {
    const auto s = param<std::size_t>(a, "s", 3);
    if (a.contains("min_diameter") || a.contains("max_width")) {
      const auto found = find_snake_with_bounds(m, t, s, param(a, "min_diameter", 0.0),
                                                param(a, "max_width", std::numeric_limits<double>::infinity()));
      out.result["found"] = found.has_value();
      if (found) out.result["snake"] = io::snake_to_json(*found, m);
    } else {
      SnakeSearchOptions so;
      so.seed = seed;
      so.exact_budget = param(a, "budget", so.exact_budget);
      const auto r = find_max_elongation_snake(m, t, s, so);
      out.result["snake"] = io::snake_to_json(r.snake, m);
      out.result["mode"] = to_string(r.mode);
      if (r.mode == Mode::sampled) out.result["seed"] = r.seed;
    }
  } else if (type == "audit") {
    const auto& w = *inst.window;
    const auto samples = param<std::size_t>(a, "samples", 100);
    const auto max_size = std::min(param<std::size_t>(a, "max_size", 12), w.size());
    std::mt19937_64 rng(seed);
    std::size_t violations = 0, truncated = 0, paths = 0, vertical = 0, vertex = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const auto size = std::uniform_int_distribution<std::size_t>(std::min<std::size_t>(2, max_size), max_size)(rng);
      const auto r = multiplicity_audit(w, t, detail::random_subset(rng, w.size(), size));
      violations += r.violations;
      truncated += r.truncated;
      paths += r.paths;
      vertical = std::max(vertical, r.max_vertical_use);
      vertex = std::max(vertex, r.max_vertex_paths);
    }
    const auto fit = fit_up_down_constants(w);
    out.result.update({{"samples", samples},
                       {"paths", paths},
                       {"truncated", truncated},
                       {"violations", violations},
                       {"max_vertical_use", vertical},
                       {"max_vertex_paths", vertex},
                       {"fit", {{"slope_only_A", fit.slope_only},
                                {"offset_only_B", fit.offset_only},
                                {"pairs", fit.pairs},
                                {"truncated", fit.truncated}}}});
  }
  return out;
}

struct ExperimentResult {
  json report;                                               // the JSON report
  std::vector<std::pair<std::string, std::string>> files;   // (path, contents) written
};

// Runs a spec. Analyses run in parallel; files are written afterwards in
// analysis order, so output is byte-identical for identical specs.
inline ExperimentResult run_experiment(const json& spec, bool write = true) {
  validate_spec(spec);
  const std::uint64_t seed = param<std::uint64_t>(spec, "seed", 1);
  const auto name = param<std::string>(spec, "name", "experiment");
  const auto dir = param<std::string>(spec.value("output", json::object()), "dir", ".");
  const Instance inst = generate(spec.at("generator"), seed);

  TotalOrder t = inst.order;
  const json ospec = spec.value("order", json::object());
  const auto otype = param<std::string>(ospec, "type", "builtin");
  if (otype == "identity") t = TotalOrder::identity(inst.space.size());
  else if (otype == "reverse") t = inst.order.reversed();
  else if (otype == "random") {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    t = random_order(inst.space.size(), rng);
  } else if (otype == "file") t = io::read_order(ospec.at("path").get<std::string>(), inst.space);

  const auto& analyses = spec.at("analyses");
  std::vector<AnalysisOutput> outputs(analyses.size());
  std::vector<std::exception_ptr> errors(analyses.size());
  std::mutex mu;
  std::size_t next = 0;
  const unsigned workers = std::min<unsigned>(worker_count(), unsigned(analyses.size()));
  run_workers(workers, [&](unsigned) {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next >= analyses.size()) return;
        i = next++;
      }
      try {
        outputs[i] = run_analysis(analyses[i], inst, t, seed + i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentResult res;
  json results = json::array();
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    auto r = outputs[i].result;
    if (outputs[i].csv) {
      const auto file = name + "." + std::to_string(i) + "." + analyses[i].at("type").get<std::string>() + ".csv";
      r["csv"] = file;
      res.files.emplace_back((std::filesystem::path(dir) / file).string(), *outputs[i].csv);
    }
    results.push_back(r);
  }
  res.report = {{"name", name},
                {"spec_hash", spec_hash(spec)},
                {"seed", seed},
                {"generator", inst.info},
                {"order", io::order_to_json(t, inst.space)},
                {"results", results}};
  res.files.emplace_back((std::filesystem::path(dir) / (name + ".json")).string(), res.report.dump(2) + "\n");
  if (write) {
    std::filesystem::create_directories(dir);
    for (const auto& [path, text] : res.files) io::write_text_file(path, text);
  }
  return res;
}

}  // namespace utsp::experiment
