#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"
#include "utsp/order_ratio.hpp"
#include "utsp/snake.hpp"
#include "utsp/tiling.hpp"

namespace utsp::io {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw format_error("cannot write " + path);
  out << text;
}

// ---- spaces

// Graph form of a space file, before the shortest-path metric is taken.
inline Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("edges")) throw format_error("graph file needs an \"edges\" array");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  std::size_t n = labels.size();
  if (j.contains("n")) n = j.at("n").get<std::size_t>();
  if (labels.empty()) {
    if (!j.contains("n")) throw format_error("graph file needs \"labels\" or \"n\"");
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) throw format_error("label count does not match n");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[labels[i]] = i;
  auto endpoint = [&](const json& v) -> std::size_t {
    if (v.is_number_unsigned() || v.is_number_integer()) {
      const auto i = v.get<long long>();
      if (i < 0 || std::size_t(i) >= n) throw format_error("edge endpoint " + std::to_string(i) + " out of range");
      return std::size_t(i);
    }
    if (v.is_string()) {
      auto it = index.find(v.get<std::string>());
      if (it == index.end()) throw format_error("edge endpoint '" + v.get<std::string>() + "' is not a label");
      return it->second;
    }
    throw format_error("edge endpoints must be indices or labels");
  };
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw format_error("edges must be [u, v] or [u, v, w]");
    edges.push_back({endpoint(e[0]), endpoint(e[1]), e.size() == 3 ? e[2].get<double>() : 1.0});
  }
  return Graph(n, std::move(edges), std::move(labels));
}

inline MetricSpace space_from_json(const json& j) {
  try {
    if (!j.is_object()) throw format_error("space file must be a JSON object");
    if (j.contains("matrix")) {
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return MetricSpace(std::move(labels), j.at("matrix").get<std::vector<std::vector<double>>>());
    }
    if (j.contains("edges")) return shortest_path_metric(graph_from_json(j));
    throw format_error("space file needs \"matrix\" or \"edges\"");
  } catch (const json::exception& e) {
    throw format_error(std::string("malformed space file: ") + e.what());
  }
}

inline json space_to_json(const MetricSpace& m) {
  return json{{"labels", m.labels()}, {"matrix", m.rows()}};
}

inline MetricSpace read_space(const std::string& path) {
  try {
    return space_from_json(read_json_file(path));
  } catch (const format_error& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw format_error(path + ": " + msg);
  }
}

// ---- orders: JSON array of labels, increasing

inline TotalOrder order_from_json(const json& j, const MetricSpace& m) {
  if (!j.is_array()) throw format_error("order file must be a JSON array of labels");
  std::vector<std::size_t> seq;
  for (const auto& v : j) {
    const std::string label = v.is_string() ? v.get<std::string>() : v.dump();
    auto idx = m.index_of(label);
    if (!idx) throw format_error("order names unknown point '" + label + "'");
    seq.push_back(*idx);
  }
  if (seq.size() != m.size())
    throw format_error("order lists " + std::to_string(seq.size()) + " points, space has " + std::to_string(m.size()));
  try {
    return TotalOrder::from_sequence(std::move(seq));
  } catch (const invalid_input&) {
    throw format_error("order repeats a point");
  }
}

inline json order_to_json(const TotalOrder& t, const MetricSpace& m) {
  json j = json::array();
  for (std::size_t r = 0; r < t.size(); ++r) j.push_back(m.label(t.at(r)));
  return j;
}

inline TotalOrder read_order(const std::string& path, const MetricSpace& m) {
  try {
    return order_from_json(read_json_file(path), m);
  } catch (const format_error& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw format_error(path + ": " + msg);
  }
}

// ---- numbers

// Shortest round-trip decimal form, so output is byte-stable.
inline std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---- reports

inline std::string labels_joined(const MetricSpace& m, const std::vector<std::size_t>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + m.label(pts[i]);
  return s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// CSV with header k,value,witness; witness labels space-separated.
inline std::string ratio_csv(const std::vector<ORReport>& reports, const MetricSpace& m) {
  std::string out = "k,value,witness\n";
  for (const auto& r : reports)
    out += std::to_string(r.k) + "," + fmt(r.value) + "," + csv_field(labels_joined(m, r.witness)) + "\n";
  return out;
}

inline json report_to_json(const ORReport& r, const MetricSpace& m) {
  json w = json::array();
  for (auto p : r.witness) w.push_back(m.label(p));
  json j{{"k", r.k},
         {"value", r.value},
         {"witness", w},
         {"mode", to_string(r.mode)},
         {"cyclic", r.cyclic},
         {"subsets_examined", r.subsets_examined}};
  if (r.mode == Mode::sampled) j["seed"] = r.seed;
  return j;
}

inline json snake_to_json(const Snake& s, const MetricSpace& m) {
  json pts = json::array();
  for (auto p : s.points) pts.push_back(m.label(p));
  return json{{"points", pts},
              {"diameter", s.diameter},
              {"width", s.width},
              {"elongation", std::isinf(s.elongation) ? json("inf") : json(s.elongation)}};
}

// ---- tiling windows

inline json window_to_json(const TilingWindow& w, const std::vector<std::pair<std::int64_t, std::int64_t>>& base) {
  json b = json::array();
  for (auto [lo, hi] : base) b.push_back({lo, hi});
  json tiles = json::array();
  for (const auto& t : w.tiles) tiles.push_back(to_string(t));
  return json{{"d", w.d}, {"level_lo", w.level_lo}, {"level_hi", w.level_hi}, {"base", b}, {"tiles", tiles}};
}

inline TilingWindow window_from_json(const json& j, bool with_metric = true) {
  try {
    std::vector<std::pair<std::int64_t, std::int64_t>> base;
    for (const auto& r : j.at("base")) base.emplace_back(r.at(0).get<std::int64_t>(), r.at(1).get<std::int64_t>());
    return build_window(j.at("d").get<std::size_t>(), j.at("level_lo").get<int>(), j.at("level_hi").get<int>(), base,
                        with_metric);
  } catch (const json::exception& e) {
    throw format_error(std::string("malformed window file: ") + e.what());
  }
}

}  // namespace utsp::io
