#include "stallings/graph_io.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "stallings/errors.hpp"
#include "stallings/text.hpp"

namespace stallings {
namespace {

std::string dot_body(Alphabet alphabet, int num_vertices, int basepoint, std::span<const Edge> edges,
                     std::string_view name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  node [shape=circle];\n";
  for (int v = 0; v < num_vertices; ++v) {
    out << "  " << v;
    if (v == basepoint) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (const Edge& e : edges) {
    out << "  " << e.source << " -> " << e.target << " [label=\"" << format_letter(Letter(e.label, 1), alphabet)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string to_dot(const LabeledGraph& g, std::string_view name) {
  return dot_body(g.alphabet(), g.num_vertices(), g.basepoint(), g.edges(), name);
}

std::string to_dot(const StallingsGraph& g, std::string_view name) {
  return dot_body(g.alphabet(), g.num_vertices(), g.basepoint(), g.edges(), name);
}

LabeledGraph parse_graph(std::string_view text) {
  struct RawEdge {
    int source;
    int target;
    std::string label;
  };
  std::optional<int> rank;
  std::optional<int> vertices;
  int base = 0;
  int max_id = 0;
  std::vector<RawEdge> raw;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    auto fail = [&](const std::string& why) {
      return MalformedInput("graph fixture line " + std::to_string(line_no) + ": " + why);
    };
    if (key == "rank") {
      int r = 0;
      if (!(fields >> r) || r < 1) throw fail("expected a positive rank");
      rank = r;
    } else if (key == "vertices") {
      int n = 0;
      if (!(fields >> n) || n < 1) throw fail("expected a positive vertex count");
      vertices = n;
    } else if (key == "base") {
      if (!(fields >> base) || base < 0) throw fail("expected a vertex id");
      max_id = std::max(max_id, base);
    } else if (key == "edge") {
      RawEdge e{};
      if (!(fields >> e.source >> e.target >> e.label) || e.source < 0 || e.target < 0) {
        throw fail("expected 'edge <source> <target> <label>'");
      }
      max_id = std::max({max_id, e.source, e.target});
      raw.push_back(std::move(e));
    } else {
      throw fail("unknown directive '" + key + "'");
    }
  }

  int r = rank.value_or(1);
  if (!rank) {
    for (const auto& e : raw) r = std::max(r, infer_rank(e.label));
  }
  LabeledGraph g(Alphabet(r), vertices.value_or(max_id + 1), base);
  for (const auto& e : raw) {
    const Word w = parse_word(e.label, r);
    if (w.length() != 1 || w[0].is_inverse()) {
      throw MalformedInput("edge label '" + e.label + "' must be a single positive generator");
    }
    g.add_edge(e.source, e.target, w[0].generator());
  }
  return g;
}

}  // namespace stallings
