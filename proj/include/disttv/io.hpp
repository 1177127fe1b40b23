#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "disttv/centrality.hpp"
#include "disttv/graph.hpp"
#include "disttv/marginals.hpp"

namespace disttv {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

/// %.{digits}g formatting; 17 significant digits round-trip doubles exactly.
inline std::string format_double(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

inline Graph load_graph(const std::string& path) {
  try {
    return parse_graph(read_text_file(path));
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Marginal-set files (JSON): {"kind": ..., ...}
//   gaussian:  "marginals": [{"mean": m, "std": s}, ...]
//   empirical: "samples":   [[x11, ...], ...]        (equal lengths)
//   discrete:  "support":   ["s1", ...], "weights": [[p11, ...], ...]
// ---------------------------------------------------------------------------

namespace detail {

inline double json_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
  return j.get<double>();
}

}  // namespace detail

inline MarginalSet parse_marginal_set(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("marginal file: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw ParseError("marginal file: missing string field 'kind'");
  const std::string kind = doc["kind"].get<std::string>();
  try {
    if (kind == "gaussian") {
      if (!doc.contains("marginals") || !doc["marginals"].is_array())
        throw ParseError("marginal file: gaussian kind needs array 'marginals'");
      std::vector<GaussianMarginal> ms;
      for (const auto& item : doc["marginals"]) {
        if (!item.is_object() || !item.contains("mean") || !item.contains("std"))
          throw ParseError("marginal file: each gaussian needs 'mean' and 'std'");
        ms.push_back(GaussianMarginal{detail::json_number(item["mean"], "mean"),
                                      detail::json_number(item["std"], "std")});
      }
      return MarginalSet::gaussian(std::move(ms));
    }
    if (kind == "empirical") {
      if (!doc.contains("samples") || !doc["samples"].is_array() || doc["samples"].empty())
        throw ParseError("marginal file: empirical kind needs array 'samples'");
      const auto& rows = doc["samples"];
      const size_t n = rows.size();
      const size_t cols = rows[0].is_array() ? rows[0].size() : 0;
      if (cols == 0) throw ParseError("marginal file: empty sample row");
      Eigen::MatrixXd samples(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
      for (size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != cols)
          throw ParseError("marginal file: sample rows must share one length");
        for (size_t k = 0; k < cols; ++k)
          samples(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
              detail::json_number(rows[i][k], "sample");
      }
      return MarginalSet::empirical(std::move(samples));
    }
    if (kind == "discrete") {
      if (!doc.contains("support") || !doc["support"].is_array())
        throw ParseError("marginal file: discrete kind needs array 'support'");
      if (!doc.contains("weights") || !doc["weights"].is_array() || doc["weights"].empty())
        throw ParseError("marginal file: discrete kind needs array 'weights'");
      std::vector<std::string> support;
      for (const auto& s : doc["support"]) {
        if (!s.is_string()) throw ParseError("marginal file: support labels must be strings");
        support.push_back(s.get<std::string>());
      }
      const auto& rows = doc["weights"];
      Eigen::MatrixXd weights(static_cast<Eigen::Index>(rows.size()),
                              static_cast<Eigen::Index>(support.size()));
      for (size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != support.size())
          throw ParseError("marginal file: weight rows must match support size");
        for (size_t k = 0; k < support.size(); ++k)
          weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
              detail::json_number(rows[i][k], "weight");
      }
      return MarginalSet::discrete(std::move(support), std::move(weights));
    }
  } catch (const std::invalid_argument& err) {
    throw ParseError(std::string("marginal file: ") + err.what());
  }
  throw ParseError("marginal file: unknown kind '" + kind + "'");
}

/// Canonical single-line serialization: fixed key order, 17-digit floats.
/// parse(format(ms)) reproduces ms, and format(parse(text)) is a fixed point
/// on files this library writes.
inline std::string format_marginal_set(const MarginalSet& ms) {
  std::string out = "{\"kind\":\"" + to_string(ms.kind()) + "\",";
  const auto num = [](double v) { return format_double(v, 17); };
  switch (ms.kind()) {
    case MarginalKind::gaussian: {
      out += "\"marginals\":[";
      const auto& gs = ms.gaussians();
      for (size_t i = 0; i < gs.size(); ++i) {
        if (i) out += ",";
        out += "{\"mean\":" + num(gs[i].mean) + ",\"std\":" + num(gs[i].stddev) + "}";
      }
      out += "]}";
      return out;
    }
    case MarginalKind::empirical: {
      out += "\"samples\":[";
      for (Eigen::Index i = 0; i < ms.samples().rows(); ++i) {
        if (i) out += ",";
        out += "[";
        for (Eigen::Index k = 0; k < ms.samples().cols(); ++k) {
          if (k) out += ",";
          out += num(ms.samples()(i, k));
        }
        out += "]";
      }
      out += "]}";
      return out;
    }
    case MarginalKind::discrete: {
      out += "\"support\":[";
      for (size_t k = 0; k < ms.support().size(); ++k) {
        if (k) out += ",";
        out += "\"" + ms.support()[k] + "\"";
      }
      out += "],\"weights\":[";
      for (Eigen::Index i = 0; i < ms.weights().rows(); ++i) {
        if (i) out += ",";
        out += "[";
        for (Eigen::Index k = 0; k < ms.weights().cols(); ++k) {
          if (k) out += ",";
          out += num(ms.weights()(i, k));
        }
        out += "]";
      }
      out += "]}";
      return out;
    }
  }
  throw std::logic_error("format_marginal_set: bad kind");
}

inline MarginalSet load_marginal_set(const std::string& path) {
  try {
    return parse_marginal_set(read_text_file(path));
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Explicit eta files (JSON): [{"edges": [[i,j], ...], "p": x}, ...]
// Atoms with an empty edge list are single-node trees; they are kept with
// their mass (they contribute nothing) and reported so callers can warn.
// ---------------------------------------------------------------------------

struct EtaFileContent {
  std::vector<SubtreeAtom> atoms;
  int edgeless = 0;
};

inline EtaFileContent parse_eta_file(const std::string& text, const Graph& g) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("eta file: ") + err.what());
  }
  if (!doc.is_array()) throw ParseError("eta file: expected a top-level array");
  EtaFileContent content;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("edges") || !item.contains("p") ||
        !item["edges"].is_array())
      throw ParseError("eta file: each atom needs 'edges' and 'p'");
    SubtreeAtom atom;
    atom.p = detail::json_number(item["p"], "p");
    std::vector<int> indices;
    for (const auto& pair : item["edges"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer())
        throw ParseError("eta file: each edge must be a pair [i, j]");
      const int u = pair[0].get<int>();
      const int v = pair[1].get<int>();
      const int e = g.find_edge(u, v);
      if (e < 0)
        throw ParseError("eta file: [" + std::to_string(u) + ", " + std::to_string(v) +
                         "] is not an edge of the graph");
      indices.push_back(e);
    }
    atom.edges = make_edge_subset(std::move(indices), g.edge_count());
    if (atom.edges.empty()) ++content.edgeless;
    content.atoms.push_back(std::move(atom));
  }
  return content;
}

inline std::string format_eta_file(const Graph& g, const SubtreeDistribution& eta) {
  std::string out = "[";
  bool first = true;
  for (const auto& atom : eta.atoms()) {
    if (!first) out += ",";
    first = false;
    out += "{\"edges\":[";
    for (size_t i = 0; i < atom.edges.indices.size(); ++i) {
      if (i) out += ",";
      const Edge& e = g.edge(atom.edges.indices[i]);
      out += "[" + std::to_string(e.u) + "," + std::to_string(e.v) + "]";
    }
    out += "],\"p\":" + format_double(atom.p, 17) + "}";
  }
  out += "]";
  return out;
}

inline SubtreeDistribution load_eta(const std::string& path, const Graph& g,
                                    int* edgeless_out = nullptr) {
  EtaFileContent content;
  try {
    content = parse_eta_file(read_text_file(path), g);
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what());
  }
  if (edgeless_out) *edgeless_out = content.edgeless;
  try {
    return SubtreeDistribution(g, std::move(content.atoms));
  } catch (const std::invalid_argument& err) {
    throw ParseError(path + ": " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Edge-value files: one "i j value" line per edge (commas also accepted).
// Every edge of the graph must appear exactly once.
// ---------------------------------------------------------------------------

inline EdgeVector parse_edge_values(const std::string& text, const Graph& g) {
  EdgeVector values(g.edge_count());
  std::vector<char> seen(static_cast<size_t>(g.edge_count()), 0);
  int line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    for (auto& ch : raw)
      if (ch == ',') ch = ' ';
    if (const size_t hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    int u, v;
    double value;
    if (!(line >> u)) continue;  // blank
    if (!(line >> v >> value))
      throw ParseError("edge values line " + std::to_string(line_no) + ": expected 'i j value'");
    std::string rest;
    if (line >> rest)
      throw ParseError("edge values line " + std::to_string(line_no) + ": trailing tokens");
    if (!std::isfinite(value))
      throw ParseError("edge values line " + std::to_string(line_no) + ": non-finite value");
    const int e = g.find_edge(u, v);
    if (e < 0)
      throw ParseError("edge values line " + std::to_string(line_no) + ": not an edge");
    if (seen[static_cast<size_t>(e)])
      throw ParseError("edge values line " + std::to_string(line_no) + ": duplicate edge");
    seen[static_cast<size_t>(e)] = 1;
    values(e) = value;
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (!seen[static_cast<size_t>(e)])
      throw ParseError("edge values: missing edge " + std::to_string(g.edge(e).u) + " " +
                       std::to_string(g.edge(e).v));
  return values;
}

inline EdgeVector load_edge_values(const std::string& path, const Graph& g) {
  try {
    return parse_edge_values(read_text_file(path), g);
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what());
  }
}

}  // namespace disttv
