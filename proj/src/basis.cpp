#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>

#include "stallings/errors.hpp"
#include "stallings/graph.hpp"
#include "stallings/text.hpp"

namespace stallings {
namespace {

Word oriented(const Word& w) {
  Word inv = invert(w);
  return shortlex_less(inv, w) ? inv : w;
}

Word edge_word(Alphabet alphabet, int label) { return Word::generator(alphabet, label); }

// Breadth-first spanning tree continuing from an already spanned seed.
// `seed_order` lists the seed vertices in the order they were discovered;
// `seed_tree` spans exactly them. With seed_order = {0} and no seed edges this
// is the plain tree from the basepoint.
SpanningTreeBasis grow_basis(const StallingsGraph& g, const std::vector<int>& seed_order,
                             const std::vector<int>& seed_tree) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  const Alphabet alphabet = g.alphabet();
  std::vector<std::optional<Word>> path(n);
  std::vector<char> in_tree(g.edges().size(), 0);
  for (int e : seed_tree) in_tree[static_cast<std::size_t>(e)] = 1;

  // Path words of the seed vertices through the seed tree.
  path[0] = Word(alphabet);
  std::vector<int> frontier{0};
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const int v = frontier[head];
    for (int label = 1; label <= alphabet.rank(); ++label) {
      for (int sign : {1, -1}) {
        const Letter l(label, sign);
        const auto e = g.edge_at(v, l);
        if (!e || !in_tree[static_cast<std::size_t>(*e)]) continue;
        const int u = *g.follow(v, l);
        if (path[static_cast<std::size_t>(u)]) continue;
        path[static_cast<std::size_t>(u)] = *path[static_cast<std::size_t>(v)] * Word::generator(alphabet, label, sign);
        frontier.push_back(u);
      }
    }
  }

  SpanningTreeBasis out;
  out.tree = seed_tree;
  std::vector<int> queue = seed_order;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int label = 1; label <= alphabet.rank(); ++label) {
      for (int sign : {1, -1}) {
        const Letter l(label, sign);
        const auto e = g.edge_at(v, l);
        if (!e) continue;
        const int u = *g.follow(v, l);
        if (path[static_cast<std::size_t>(u)]) continue;
        path[static_cast<std::size_t>(u)] = *path[static_cast<std::size_t>(v)] * Word::generator(alphabet, label, sign);
        in_tree[static_cast<std::size_t>(*e)] = 1;
        out.tree.push_back(*e);
        queue.push_back(u);
      }
    }
  }

  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (in_tree[i]) continue;
    const Edge& e = edges[i];
    const Word cycle = *path[static_cast<std::size_t>(e.source)] * edge_word(alphabet, e.label) *
                       invert(*path[static_cast<std::size_t>(e.target)]);
    out.basis.push_back({static_cast<int>(i), oriented(cycle)});
  }
  return out;
}

}  // namespace

std::vector<Word> SpanningTreeBasis::words() const {
  std::vector<Word> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(b.word);
  return out;
}

SpanningTreeBasis spanning_tree_basis(const StallingsGraph& g) { return grow_basis(g, {0}, {}); }

std::optional<GraphMorphism> subgroup_of(const StallingsGraph& sub, const StallingsGraph& super) {
  if (sub.alphabet() != super.alphabet()) throw AlphabetMismatch("graphs over different ranks");
  GraphMorphism m;
  m.vertex_map.assign(static_cast<std::size_t>(sub.num_vertices()), -1);
  m.edge_map.assign(sub.edges().size(), -1);
  m.vertex_map[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    const int image = m.vertex_map[static_cast<std::size_t>(v)];
    for (int label = 1; label <= sub.alphabet().rank(); ++label) {
      for (int sign : {1, -1}) {
        const Letter l(label, sign);
        const auto e = sub.edge_at(v, l);
        if (!e) continue;
        const auto f = super.edge_at(image, l);
        if (!f) return std::nullopt;
        const int u = *sub.follow(v, l);
        const int w = *super.follow(image, l);
        auto& slot = m.vertex_map[static_cast<std::size_t>(u)];
        if (slot < 0) {
          slot = w;
          queue.push_back(u);
        } else if (slot != w) {
          return std::nullopt;
        }
        m.edge_map[static_cast<std::size_t>(*e)] = *f;
      }
    }
  }
  return m;
}

bool is_injective(const GraphMorphism& m) {
  auto injective = [](std::vector<int> values) {
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) == values.end();
  };
  return injective(m.vertex_map) && injective(m.edge_map);
}

StallingsGraph image_graph(const GraphMorphism& m, const StallingsGraph& target) {
  LabeledGraph g(target.alphabet(), target.num_vertices(), 0);
  std::vector<int> edges = m.edge_map;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (int e : edges) {
    const Edge& edge = target.edges()[static_cast<std::size_t>(e)];
    g.add_edge(edge.source, edge.target, edge.label);
  }
  return fold(g);
}

std::optional<FreeFactorCertificate> free_factor_certificate(const StallingsGraph& h, const StallingsGraph& n) {
  auto morphism = subgroup_of(h, n);
  if (!morphism || !is_injective(*morphism)) return std::nullopt;

  const SpanningTreeBasis basis_h = spanning_tree_basis(h);
  // Canonical numbering is breadth-first, so 0..V-1 is already discovery order.
  std::vector<int> seed_order = morphism->vertex_map;
  std::vector<int> seed_tree;
  for (int e : basis_h.tree) seed_tree.push_back(morphism->edge_map[static_cast<std::size_t>(e)]);
  const SpanningTreeBasis basis_n = grow_basis(n, seed_order, seed_tree);

  FreeFactorCertificate cert{basis_h.words(), basis_n.words(), std::move(*morphism)};
  for (const Word& w : cert.basis_h) {
    if (std::find(cert.basis_n.begin(), cert.basis_n.end(), w) == cert.basis_n.end()) {
      throw std::logic_error("extended spanning tree lost the basis word " + format_word(w));
    }
  }
  return cert;
}

StallingsGraph intersect(const StallingsGraph& a, const StallingsGraph& b) {
  if (a.alphabet() != b.alphabet()) throw AlphabetMismatch("graphs over different ranks");
  std::map<std::pair<int, int>, int> index{{{0, 0}, 0}};
  std::vector<std::pair<int, int>> queue{{0, 0}};
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [u, v] = queue[head];
    const int from = static_cast<int>(head);
    for (int label = 1; label <= a.alphabet().rank(); ++label) {
      for (int sign : {1, -1}) {
        const Letter l(label, sign);
        const auto ua = a.follow(u, l);
        const auto vb = b.follow(v, l);
        if (!ua || !vb) continue;
        const auto [it, inserted] = index.try_emplace({*ua, *vb}, static_cast<int>(queue.size()));
        if (inserted) queue.emplace_back(*ua, *vb);
        // Record each product edge once, from its source.
        if (sign > 0) edges.push_back({from, it->second, label});
      }
    }
  }
  LabeledGraph g(a.alphabet(), static_cast<int>(queue.size()), 0);
  for (const Edge& e : edges) g.add_edge(e.source, e.target, e.label);
  return fold(g);
}

DirectedFactor directed_family_factor(std::span<const Word> s, std::span<const StallingsGraph> family) {
  if (family.empty()) throw PreconditionViolation("directed_family_factor needs a nonempty family");
  if (family.size() > 12) throw GuardViolation("family closure limited to 12 members");
  const Alphabet alphabet = family.front().alphabet();
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (family[j].alphabet() != alphabet) throw AlphabetMismatch("family members over different ranks");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!membership(family[j], s[i])) {
        throw PreconditionViolation("element s[" + std::to_string(i) + "] = " + format_word(s[i]) +
                                    " is not in family member " + std::to_string(j));
      }
    }
  }

  // Close under intersection: members first, then by subset size.
  std::vector<std::uint32_t> masks;
  const std::uint32_t full = (std::uint32_t{1} << family.size()) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t x, std::uint32_t y) {
    return std::popcount(x) < std::popcount(y);
  });
  std::map<std::uint32_t, StallingsGraph> closure;
  auto member = [&](std::uint32_t mask) -> const StallingsGraph& {
    if (auto it = closure.find(mask); it != closure.end()) return it->second;
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    StallingsGraph g = rest == 0 ? family[static_cast<std::size_t>(low)]
                                 : intersect(closure.at(std::uint32_t{1} << low), closure.at(rest));
    return closure.emplace(mask, std::move(g)).first->second;
  };
  for (std::uint32_t mask : masks) member(mask);

  const StallingsGraph& intersection = closure.at(full);
  const StallingsGraph gamma_s = graph_from_generators(alphabet, s);
  const auto into_n = subgroup_of(gamma_s, intersection);
  if (!into_n) throw std::logic_error("S lies in every member but not in their intersection");
  StallingsGraph h = image_graph(*into_n, intersection);

  for (std::size_t j = 0; j < masks.size(); ++j) {
    const StallingsGraph& candidate = closure.at(masks[j]);
    const auto m = subgroup_of(h, candidate);
    if (!m || !is_injective(*m)) continue;
    auto cert = free_factor_certificate(h, candidate);
    if (!cert) throw std::logic_error("injective morphism without a certificate");
    std::vector<std::size_t> members;
    for (std::size_t b = 0; b < family.size(); ++b) {
      if (masks[j] >> b & 1U) members.push_back(b);
    }
    for (const Word& w : s) {
      if (!membership(h, w)) throw std::logic_error("H lost an element of S");
    }
    return DirectedFactor{std::move(h), intersection, j, std::move(members), std::move(*cert)};
  }
  throw std::logic_error("Gamma_H does not embed in Gamma_N");
}

}  // namespace stallings
