// utsp: command-line front end.
// Exit codes: 0 ok, 1 failed criterion or rejected input, 2 usage or format error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "utsp/utsp.hpp"

namespace {

using json = nlohmann::json;
using namespace utsp;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else io::write_text_file(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Common {
  std::string space, order, out;
  std::uint64_t seed = 1;
};

int run(int argc, char** argv) {
  CLI::App app{"Universal TSP orders: constructions and order-ratio analysis"};
  app.require_subcommand(1);
  Common c;
  int result = 0;

  // ---- space
  auto* space = app.add_subcommand("space", "Validate or convert space files");
  space->require_subcommand(1);
  auto* sv = space->add_subcommand("validate", "Check that a space file is a finite metric space");
  std::string sv_file;
  sv->add_option("file", sv_file, "space file")->required();
  sv->callback([&] {
    const auto m = io::read_space(sv_file);
    std::cout << "ok: " << m.size() << " points, diameter " << io::fmt(m.diameter()) << "\n";
  });
  auto* sg = space->add_subcommand("from-graph", "Shortest-path metric of a weighted graph file");
  std::string sg_file;
  sg->add_option("file", sg_file, "graph file")->required();
  sg->add_option("-o,--out", c.out, "output space file (default stdout)");
  sg->callback([&] {
    const auto g = io::graph_from_json(io::read_json_file(sg_file));
    emit(c.out, dump(io::space_to_json(shortest_path_metric(g))));
  });

  // ---- gen
  auto* gen = app.add_subcommand("gen", "Generate a space together with its builder order");
  std::string gen_type, out_space, out_order;
  json gparams = json::object();
  std::size_t g_n = 0, g_extra = 1, g_s = 2;
  double g_length = 1.0, g_density = 20.0;
  int g_m = 3;
  std::vector<std::size_t> g_sizes;
  gen->add_option("type", gen_type, "tree|circle|tripod|domino|square|gluing|star|random|copies|six-point")
      ->required()
      ->check(CLI::IsMember({"tree", "circle", "tripod", "domino", "square", "gluing", "star", "random", "copies",
                             "six-point"}));
  auto* gn = gen->add_option("--n", g_n, "number of points (tree, circle, tripod legs, random, copies; star vertices)");
  auto* gl = gen->add_option("--length", g_length, "circle length, tripod leg or domino edge length");
  auto* gd = gen->add_option("--density", g_density, "domino points per unit length");
  auto* gm = gen->add_option("--m", g_m, "square exponent or star sampling parameter");
  auto* gz = gen->add_option("--sizes", g_sizes, "gluing component sizes");
  auto* ge = gen->add_option("--extra", g_extra, "extra edges of the random star graph");
  auto* gs = gen->add_option("--s", g_s, "number of glued copies");
  std::string g_graph;
  auto* gg = gen->add_option("--graph", g_graph, "graph file for star");
  gen->add_option("--seed", c.seed, "seed");
  gen->add_option("--out-space", out_space, "space output file")->required();
  gen->add_option("--out-order", out_order, "order output file")->required();
  gen->callback([&] {
    json g{{"type", gen_type}};
    if (*gn) g["n"] = g_n;
    if (*gl) g["length"] = g_length;
    if (*gd) g["density"] = g_density;
    if (*gm) g["m"] = g_m;
    if (*gz) g["sizes"] = g_sizes;
    if (*ge) g["extra"] = g_extra;
    if (*gs) g["s"] = g_s;
    if (*gg) g["graph"] = g_graph;
    const auto inst = experiment::generate(g, c.seed);
    io::write_text_file(out_space, dump(io::space_to_json(inst.space)));
    io::write_text_file(out_order, dump(io::order_to_json(inst.order, inst.space)));
    std::cout << dump(inst.info);
  });

  // ---- order
  auto* order = app.add_subcommand("order", "Order utilities");
  order->require_subcommand(1);
  auto* oc = order->add_subcommand("cyclic-shift", "Cyclic shift making a point minimal");
  std::string point;
  oc->add_option("--space", c.space)->required();
  oc->add_option("--order", c.order)->required();
  oc->add_option("--point", point, "label of the new first point")->required();
  oc->add_option("-o,--out", c.out);
  oc->callback([&] {
    const auto m = io::read_space(c.space);
    const auto t = io::read_order(c.order, m);
    const auto p = m.index_of(point);
    if (!p) throw invalid_input("unknown point '" + point + "'");
    emit(c.out, dump(io::order_to_json(cyclic_shift(t, *p), m)));
  });
  auto* orand = order->add_subcommand("random", "Uniformly random order");
  orand->add_option("--space", c.space)->required();
  orand->add_option("--seed", c.seed);
  orand->add_option("-o,--out", c.out);
  orand->callback([&] {
    const auto m = io::read_space(c.space);
    std::mt19937_64 rng(c.seed);
    emit(c.out, dump(io::order_to_json(random_order(m.size(), rng), m)));
  });
  auto* oval = order->add_subcommand("validate", "Check an order file against a space");
  oval->add_option("--space", c.space)->required();
  oval->add_option("--order", c.order)->required();
  oval->callback([&] {
    const auto m = io::read_space(c.space);
    io::read_order(c.order, m);
    std::cout << "ok: order on " << m.size() << " points\n";
  });

  // ---- or
  auto* orc = app.add_subcommand("or", "Order ratio function");
  orc->require_subcommand(1);
  auto* ocomp = orc->add_subcommand("compute", "OR_{M,T}(k) for k = 1..K as CSV k,value,witness");
  int k = 2;
  std::string mode = "exact";
  bool cyclic = false;
  double budget = kDefaultExactBudget;
  std::size_t subsets = SampledParams{}.subsets;
  ocomp->add_option("--space", c.space)->required();
  ocomp->add_option("--order", c.order)->required();
  ocomp->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  ocomp->add_option("--mode", mode)->check(CLI::IsMember({"exact", "sampled"}));
  ocomp->add_flag("--cyclic", cyclic, "cyclic order ratio");
  ocomp->add_option("--budget", budget, "exact-mode budget (elementary operations)");
  ocomp->add_option("--subsets", subsets, "sampled-mode random subsets");
  ocomp->add_option("--seed", c.seed, "sampled-mode seed");
  ocomp->add_option("-o,--out", c.out);
  ocomp->callback([&] {
    const auto m = io::read_space(c.space);
    const auto t = io::read_order(c.order, m);
    RatioOptions o;
    o.mode = experiment::parse_mode(mode);
    o.cyclic = cyclic;
    o.budget = budget;
    o.sampled.subsets = subsets;
    o.sampled.seed = c.seed;
    emit(c.out, io::ratio_csv(ratio_profile(m, t, k, o), m));
  });
  auto* obest = orc->add_subcommand("best", "OR_M(k): minimum over all orders");
  obest->add_option("--space", c.space)->required();
  obest->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  obest->add_option("--seed", c.seed, "annealing seed (spaces above 8 points)");
  obest->add_option("-o,--out", c.out);
  obest->callback([&] {
    const auto m = io::read_space(c.space);
    BestOrderOptions bo;
    bo.seed = c.seed;
    const auto best = best_order_ratio(m, k, bo);
    json mins = json::array();
    for (const auto& t : best.minimizers) mins.push_back(io::order_to_json(t, m));
    json j{{"k", best.k}, {"value", best.value}, {"exact", best.exact}, {"orders_examined", best.orders_examined},
           {"minimizers", mins}};
    if (!best.exact) j["seed"] = best.seed;
    emit(c.out, dump(j));
  });

  // ---- br
  auto* br = app.add_subcommand("br", "Order breakpoint");
  br->require_subcommand(1);
  auto* brc = br->add_subcommand("compute", "Br(M,T) with per-s values and snake evidence");
  int max_s = 4;
  bool window = false;
  double threshold = BreakpointOptions{}.elongation_threshold;
  brc->add_option("--space", c.space)->required();
  brc->add_option("--order", c.order)->required();
  brc->add_option("--max-s", max_s)->check(CLI::Range(2, 64));
  brc->add_option("--threshold", threshold, "snake elongation threshold");
  brc->add_flag("--window", window, "space is a window of an infinite space; no exponent is claimed");
  brc->add_option("-o,--out", c.out);
  brc->callback([&] {
    json spec{{"generator", {{"type", "file"}, {"space", c.space}, {"order", c.order}}},
              {"analyses", {{{"type", "br"}, {"max_s", max_s}, {"window", window}, {"elongation_threshold", threshold}}}}};
    const auto res = experiment::run_experiment(spec, false);
    emit(c.out, dump(res.report.at("results").at(0)));
  });

  // ---- snake
  auto* snake = app.add_subcommand("snake", "Snakes");
  snake->require_subcommand(1);
  auto* sf = snake->add_subcommand("find", "Most elongated snake on s points, or one meeting bounds");
  std::size_t s = 3;
  bool exact = false;
  double sbudget = SnakeSearchOptions{}.exact_budget, min_d = 0, max_w = 0;
  sf->add_option("--space", c.space)->required();
  sf->add_option("--order", c.order)->required();
  sf->add_option("--s", s)->required()->check(CLI::Range(2, 64));
  auto* fe = sf->add_flag("--exact", exact, "force exhaustive search");
  sf->add_option("--budget", sbudget, "exhaustive-search budget (subsequences)")->excludes(fe);
  auto* fd = sf->add_option("--min-diameter", min_d, "bounded search: minimal diameter");
  auto* fw = sf->add_option("--max-width", max_w, "bounded search: maximal width");
  sf->add_option("--seed", c.seed, "annealing seed");
  sf->add_option("-o,--out", c.out);
  sf->callback([&] {
    const auto m = io::read_space(c.space);
    const auto t = io::read_order(c.order, m);
    json j;
    if (*fd || *fw) {
      const auto found = find_snake_with_bounds(m, t, s, min_d, *fw ? max_w : std::numeric_limits<double>::infinity());
      j = found ? io::snake_to_json(*found, m) : json{{"found", false}};
      if (!found) result = 1;
    } else {
      SnakeSearchOptions so;
      so.force_exact = exact;
      so.exact_budget = sbudget;
      so.seed = c.seed;
      const auto r = find_max_elongation_snake(m, t, s, so);
      j = io::snake_to_json(r.snake, m);
      j["mode"] = to_string(r.mode);
      if (r.mode == Mode::sampled) j["seed"] = r.seed;
    }
    emit(c.out, dump(j));
  });

  // ---- tiling
  auto* tiling = app.add_subcommand("tiling", "Binary tiling windows");
  tiling->require_subcommand(1);
  auto* tg = tiling->add_subcommand("gen", "Column window with its branch-convex order");
  std::size_t d = 1;
  int levels = 4;
  std::int64_t span = 16;
  std::string dot, wfile;
  tg->add_option("--d", d)->check(CLI::Range(1, 8));
  tg->add_option("--levels", levels)->check(CLI::Range(0, 30));
  tg->add_option("--span", span)->check(CLI::PositiveNumber);
  tg->add_option("-o,--out", wfile, "window file")->required();
  tg->add_option("--out-order", out_order, "branch-convex order file");
  tg->add_option("--dot", dot, "DOT export with levels as ranks");
  tg->callback([&] {
    if (span < (std::int64_t{1} << levels))
      throw invalid_input("span must be at least 2^levels so that the window has one root per column");
    const auto w = build_column_window(d, levels, span, !out_order.empty());
    const std::vector<std::pair<std::int64_t, std::int64_t>> base(d, {0, span - 1});
    io::write_text_file(wfile, dump(io::window_to_json(w, base)));
    if (!out_order.empty()) io::write_text_file(out_order, dump(io::order_to_json(branch_convex_order(w), w.metric)));
    if (!dot.empty()) io::write_text_file(dot, window_to_dot(w));
    std::cout << "window: " << w.size() << " tiles, levels " << w.level_lo << ".." << w.level_hi << "\n";
  });
  auto* ta = tiling->add_subcommand("audit", "Multiplicity audit of random subsets (CSV)");
  std::size_t samples = 100, max_size = 12;
  ta->add_option("--window", wfile)->required();
  ta->add_option("--order", c.order)->required();
  ta->add_option("--samples", samples)->check(CLI::PositiveNumber);
  ta->add_option("--max-size", max_size)->check(CLI::Range(2, 1000));
  ta->add_option("--seed", c.seed);
  ta->add_option("-o,--out", c.out);
  ta->callback([&] {
    const auto w = io::window_from_json(io::read_json_file(wfile));
    const auto t = io::read_order(c.order, w.metric);
    std::mt19937_64 rng(c.seed);
    std::string csv = "sample,size,paths,truncated,violations,max_vertical_use,max_vertex_paths\n";
    std::size_t violations = 0;
    const std::size_t top = std::min(max_size, w.size());
    for (std::size_t i = 0; i < samples; ++i) {
      const auto size = std::uniform_int_distribution<std::size_t>(std::min<std::size_t>(2, top), top)(rng);
      const auto a = multiplicity_audit(w, t, utsp::detail::random_subset(rng, w.size(), size));
      violations += a.violations;
      csv += std::to_string(i) + "," + std::to_string(size) + "," + std::to_string(a.paths) + "," +
             std::to_string(a.truncated) + "," + std::to_string(a.violations) + "," +
             std::to_string(a.max_vertical_use) + "," + std::to_string(a.max_vertex_paths) + "\n";
    }
    emit(c.out, csv);
    if (violations) result = 1;
  });

  // ---- experiment
  auto* ex = app.add_subcommand("experiment", "Reproducible experiments");
  ex->require_subcommand(1);
  auto* er = ex->add_subcommand("run", "Run an experiment spec");
  std::string spec_file, out_dir;
  er->add_option("spec", spec_file, "experiment spec (JSON)")->required();
  er->add_option("--out-dir", out_dir, "override the spec's output directory");
  er->callback([&] {
    auto spec = io::read_json_file(spec_file);
    if (!out_dir.empty()) spec["output"]["dir"] = out_dir;
    const auto res = experiment::run_experiment(spec);
    for (const auto& f : res.files) std::cout << "wrote " << f.first << "\n";
  });
  auto* era = ex->add_subcommand("reproduce-all", "Run every acceptance criterion");
  std::string summary;
  std::vector<int> only;
  era->add_option("--seed", c.seed);
  era->add_option("--only", only, "criterion ids");
  era->add_option("--summary", summary, "also write the table to this file");
  era->callback([&] {
    acceptance::Config cfg;
    cfg.seed = c.seed;
    std::string table;
    int failed = 0;
    for (const auto& cr : acceptance::criteria()) {
      if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
      const auto r = acceptance::run_criterion(cr, cfg);
      const auto line = acceptance::format_line(r) + "\n";
      std::cout << line << std::flush;
      table += line;
      failed += !r.passed;
    }
    table += failed ? std::to_string(failed) + " criteria failed\n" : std::string("all criteria passed\n");
    std::cout << table.substr(table.rfind('\n', table.size() - 2) + 1);
    if (!summary.empty()) io::write_text_file(summary, table);
    if (failed) result = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const utsp::format_error& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const utsp::budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const utsp::disconnected_error& e) {
    std::cerr << "disconnected: " << e.what() << "\n";
    return 1;
  } catch (const utsp::invalid_input& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
