#pragma once

// Text and JSON encodings of Graph.
//
// Text format, one statement per line:
//   vertex <name>
//   edge <src> <dst> [<k>|inf]     (k defaults to 1; repeated lines accumulate)
//   # comment
//
// JSON mirror:
//   {"vertices": [...], "edges": [{"src": .., "dst": .., "mult": <int>|"inf"}]}

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fkgraph/graph.hpp"
#include "json.hpp"

namespace fkgraph {

namespace detail {

inline std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

inline Multiplicity parse_multiplicity(std::string_view word, std::size_t line) {
  if (word == "inf") return Multiplicity::infinite();
  std::uint64_t k = 0;
  const auto* end = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(word.data(), end, k);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "bad multiplicity '" + std::string(word) + "'");
  return Multiplicity(k);
}

}  // namespace detail

inline Graph parse_graph(std::istream& in) {
  Graph g;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = detail::split_words(line);
    if (words.empty()) continue;
    if (words[0] == "vertex") {
      if (words.size() != 2) throw ParseError(line_no, "expected 'vertex <name>'");
      if (g.find(words[1])) throw ParseError(line_no, "duplicate vertex '" + words[1] + "'");
      try {
        g.add_vertex(words[1]);
      } catch (const CapExceeded& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (words[0] == "edge") {
      if (words.size() != 3 && words.size() != 4) throw ParseError(line_no, "expected 'edge <src> <dst> [<k>|inf]'");
      const auto src = g.find(words[1]);
      if (!src) throw ParseError(line_no, "unknown vertex '" + words[1] + "'");
      const auto dst = g.find(words[2]);
      if (!dst) throw ParseError(line_no, "unknown vertex '" + words[2] + "'");
      const Multiplicity k = words.size() == 4 ? detail::parse_multiplicity(words[3], line_no) : Multiplicity(1);
      try {
        g.add_edges(*src, *dst, k);
      } catch (const std::overflow_error& e) {
        throw ParseError(line_no, e.what());
      }
    } else {
      throw ParseError(line_no, "unknown statement '" + words[0] + "'");
    }
  }
  return g;
}

inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

inline Graph graph_from_json(const nlohmann::json& j) {
  try {
    Graph g;
    for (const auto& name : j.at("vertices")) {
      const auto s = name.get<std::string>();
      if (g.find(s)) throw ParseError(0, "duplicate vertex '" + s + "'");
      g.add_vertex(s);
    }
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        const auto src = e.at("src").get<std::string>();
        const auto dst = e.at("dst").get<std::string>();
        const auto v = g.find(src);
        if (!v) throw ParseError(0, "unknown vertex '" + src + "'");
        const auto w = g.find(dst);
        if (!w) throw ParseError(0, "unknown vertex '" + dst + "'");
        Multiplicity k(1);
        if (e.contains("mult")) {
          const auto& m = e.at("mult");
          if (m.is_string()) {
            if (m.get<std::string>() != "inf") throw ParseError(0, "bad multiplicity " + m.dump());
            k = Multiplicity::infinite();
          } else if (m.is_number_unsigned()) {
            k = Multiplicity(m.get<std::uint64_t>());
          } else {
            throw ParseError(0, "bad multiplicity " + m.dump());
          }
        }
        g.add_edges(*v, *w, k);
      }
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed graph JSON: ") + e.what());
  } catch (const std::overflow_error& e) {
    throw ParseError(0, e.what());
  } catch (const CapExceeded& e) {
    throw ParseError(0, e.what());
  }
}

inline Graph parse_graph_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  return graph_from_json(j);
}

/// Accepts either encoding; JSON is recognised by a leading '{'.
inline Graph parse_graph_any(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_graph_json(text);
  return parse_graph(text);
}

inline std::string to_text(const Graph& g) {
  std::ostringstream out;
  for (const auto& name : g.names()) out << "vertex " << name << '\n';
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t w = 0; w < g.size(); ++w) {
      const auto m = g.mult(v, w);
      if (m.is_zero()) continue;
      out << "edge " << g.name(v) << ' ' << g.name(w);
      if (m != Multiplicity(1)) out << ' ' << m.to_string();
      out << '\n';
    }
  return out.str();
}

inline nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t w = 0; w < g.size(); ++w) {
      const auto m = g.mult(v, w);
      if (m.is_zero()) continue;
      nlohmann::json e = {{"src", g.name(v)}, {"dst", g.name(w)}};
      if (m.is_infinite())
        e["mult"] = "inf";
      else
        e["mult"] = m.count();
      edges.push_back(std::move(e));
    }
  return {{"vertices", g.names()}, {"edges", std::move(edges)}};
}

}  // namespace fkgraph
