#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <string>

#include "stallings/errors.hpp"
#include "stallings/graph.hpp"

namespace stallings {

LabeledGraph::LabeledGraph(Alphabet alphabet, int num_vertices, int basepoint)
    : alphabet_(alphabet), num_vertices_(num_vertices), basepoint_(basepoint) {
  if (num_vertices < 1) throw MalformedInput("a labeled graph needs at least one vertex");
  if (basepoint < 0 || basepoint >= num_vertices) throw MalformedInput("basepoint out of range");
}

int LabeledGraph::add_vertex() { return num_vertices_++; }

void LabeledGraph::add_edge(int source, int target, int label) {
  if (source < 0 || source >= num_vertices_ || target < 0 || target >= num_vertices_) {
    throw MalformedInput("edge endpoint out of range");
  }
  if (!alphabet_.contains(label)) {
    throw MalformedInput("edge label " + std::to_string(label) + " outside rank " + std::to_string(alphabet_.rank()));
  }
  edges_.push_back({source, target, label});
}

void LabeledGraph::add_petal(const Word& w) {
  if (w.alphabet() != alphabet_) throw AlphabetMismatch("petal word over a different rank");
  if (w.is_identity()) return;
  int current = basepoint_;
  const auto letters = w.letters();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const int next = i + 1 == letters.size() ? basepoint_ : add_vertex();
    const Letter l = letters[i];
    if (l.is_inverse()) {
      add_edge(next, current, l.generator());
    } else {
      add_edge(current, next, l.generator());
    }
    current = next;
  }
}

bool LabeledGraph::is_folded() const {
  const int k = alphabet_.rank();
  std::vector<char> out(static_cast<std::size_t>(num_vertices_ * k), 0);
  std::vector<char> in(out.size(), 0);
  for (const Edge& e : edges_) {
    auto& o = out[static_cast<std::size_t>(e.source * k + e.label - 1)];
    auto& i = in[static_cast<std::size_t>(e.target * k + e.label - 1)];
    if (o || i) return false;
    o = i = 1;
  }
  return true;
}

StallingsGraph::StallingsGraph(Alphabet alphabet, int num_vertices, std::vector<Edge> edges)
    : alphabet_(alphabet), num_vertices_(num_vertices), edges_(std::move(edges)) {
  const int k = alphabet_.rank();
  out_.assign(static_cast<std::size_t>(num_vertices_ * k), -1);
  in_.assign(out_.size(), -1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    out_[static_cast<std::size_t>(e.source * k + e.label - 1)] = static_cast<int>(i);
    in_[static_cast<std::size_t>(e.target * k + e.label - 1)] = static_cast<int>(i);
  }
}

std::optional<int> StallingsGraph::edge_at(int vertex, Letter l) const {
  if (!alphabet_.contains(l.generator())) return std::nullopt;
  const auto slot = static_cast<std::size_t>(vertex * alphabet_.rank() + l.generator() - 1);
  const int e = l.is_inverse() ? in_[slot] : out_[slot];
  if (e < 0) return std::nullopt;
  return e;
}

std::optional<int> StallingsGraph::follow(int vertex, Letter l) const {
  const auto e = edge_at(vertex, l);
  if (!e) return std::nullopt;
  const Edge& edge = edges_[static_cast<std::size_t>(*e)];
  return l.is_inverse() ? edge.source : edge.target;
}

std::optional<int> StallingsGraph::read(int vertex, const Word& w) const {
  int v = vertex;
  for (Letter l : w.letters()) {
    const auto next = follow(v, l);
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

LabeledGraph StallingsGraph::to_labeled() const {
  LabeledGraph g(alphabet_, num_vertices_, 0);
  for (const Edge& e : edges_) g.add_edge(e.source, e.target, e.label);
  return g;
}

// Worklist folding over a union-find of vertices. Each root keeps the list
// of edges incident to its class; scanning a root finds two live edges with
// the same (direction, label) and identifies their far endpoints.
class Folder {
 public:
  Folder(const LabeledGraph& g, std::mt19937_64* rng)
      : alphabet_(g.alphabet()), basepoint_(g.basepoint()), rng_(rng) {
    const auto n = static_cast<std::size_t>(g.num_vertices());
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(n, 1);
    incident_.resize(n);
    edges_.assign(g.edges().begin(), g.edges().end());
    alive_.assign(edges_.size(), 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      incident_[static_cast<std::size_t>(e.source)].push_back(static_cast<int>(i));
      if (e.target != e.source) incident_[static_cast<std::size_t>(e.target)].push_back(static_cast<int>(i));
    }
  }

  StallingsGraph run() {
    std::vector<int> work(parent_.size());
    std::iota(work.begin(), work.end(), 0);
    if (rng_) std::shuffle(work.begin(), work.end(), *rng_);
    while (!work.empty()) {
      std::size_t pick = work.size() - 1;
      if (rng_) pick = std::uniform_int_distribution<std::size_t>(0, work.size() - 1)(*rng_);
      const int v = find(work[pick]);
      work[pick] = work.back();
      work.pop_back();
      if (const auto merged = scan(v)) {
        work.push_back(*merged);
        work.push_back(find(v));
      }
    }
    return finish();
  }

 private:
  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }

  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    auto& into = incident_[static_cast<std::size_t>(a)];
    auto& from = incident_[static_cast<std::size_t>(b)];
    into.insert(into.end(), from.begin(), from.end());
    from.clear();
    from.shrink_to_fit();
    return a;
  }

  // Returns the new root if an identification of vertices happened.
  std::optional<int> scan(int v) {
    auto& list = incident_[static_cast<std::size_t>(v)];
    std::erase_if(list, [&](int e) { return !alive_[static_cast<std::size_t>(e)]; });
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (rng_) std::shuffle(list.begin(), list.end(), *rng_);

    const auto k = static_cast<std::size_t>(alphabet_.rank());
    std::vector<int> out_slot(k, -1);
    std::vector<int> in_slot(k, -1);
    for (int e : std::vector<int>(list)) {
      const Edge& edge = edges_[static_cast<std::size_t>(e)];
      const auto label = static_cast<std::size_t>(edge.label - 1);
      if (find(edge.source) == v) {
        if (const auto merged = place(e, out_slot[label], /*outgoing=*/true)) return merged;
      }
      if (alive_[static_cast<std::size_t>(e)] && find(edge.target) == v) {
        if (const auto merged = place(e, in_slot[label], /*outgoing=*/false)) return merged;
      }
    }
    return std::nullopt;
  }

  std::optional<int> place(int e, int& slot, bool outgoing) {
    if (slot < 0) {
      slot = e;
      return std::nullopt;
    }
    if (slot == e) return std::nullopt;
    const Edge& kept = edges_[static_cast<std::size_t>(slot)];
    const Edge& dropped = edges_[static_cast<std::size_t>(e)];
    const int a = find(outgoing ? kept.target : kept.source);
    const int b = find(outgoing ? dropped.target : dropped.source);
    alive_[static_cast<std::size_t>(e)] = 0;
    if (a == b) return std::nullopt;
    return unite(a, b);
  }

  StallingsGraph finish() {
    const int n = static_cast<int>(parent_.size());
    const int base = find(basepoint_);
    std::vector<Edge> live;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!alive_[i]) continue;
      live.push_back({find(edges_[i].source), find(edges_[i].target), edges_[i].label});
    }

    // Restrict to the component of the basepoint, then strip hanging trees.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < live.size(); ++i) {
      adj[static_cast<std::size_t>(live[i].source)].push_back(static_cast<int>(i));
      if (live[i].target != live[i].source) adj[static_cast<std::size_t>(live[i].target)].push_back(static_cast<int>(i));
    }
    std::vector<char> keep_vertex(static_cast<std::size_t>(n), 0);
    std::vector<char> keep_edge(live.size(), 0);
    std::vector<int> stack{base};
    keep_vertex[static_cast<std::size_t>(base)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : adj[static_cast<std::size_t>(v)]) {
        keep_edge[static_cast<std::size_t>(e)] = 1;
        for (int u : {live[static_cast<std::size_t>(e)].source, live[static_cast<std::size_t>(e)].target}) {
          if (!keep_vertex[static_cast<std::size_t>(u)]) {
            keep_vertex[static_cast<std::size_t>(u)] = 1;
            stack.push_back(u);
          }
        }
      }
    }
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (!keep_edge[i]) continue;
      ++degree[static_cast<std::size_t>(live[i].source)];
      ++degree[static_cast<std::size_t>(live[i].target)];
    }
    std::deque<int> leaves;
    for (int v = 0; v < n; ++v) {
      if (v != base && keep_vertex[static_cast<std::size_t>(v)] && degree[static_cast<std::size_t>(v)] <= 1) leaves.push_back(v);
    }
    while (!leaves.empty()) {
      const int v = leaves.front();
      leaves.pop_front();
      if (!keep_vertex[static_cast<std::size_t>(v)]) continue;
      keep_vertex[static_cast<std::size_t>(v)] = 0;
      for (int e : adj[static_cast<std::size_t>(v)]) {
        if (!keep_edge[static_cast<std::size_t>(e)]) continue;
        keep_edge[static_cast<std::size_t>(e)] = 0;
        const Edge& edge = live[static_cast<std::size_t>(e)];
        const int other = edge.source == v ? edge.target : edge.source;
        if (--degree[static_cast<std::size_t>(other)] <= 1 && other != base && keep_vertex[static_cast<std::size_t>(other)]) {
          leaves.push_back(other);
        }
      }
    }

    // Canonical breadth-first numbering.
    const auto k = static_cast<std::size_t>(alphabet_.rank());
    std::vector<int> out(static_cast<std::size_t>(n) * k, -1);
    std::vector<int> in(out.size(), -1);
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (!keep_edge[i]) continue;
      const auto label = static_cast<std::size_t>(live[i].label - 1);
      out[static_cast<std::size_t>(live[i].source) * k + label] = live[i].target;
      in[static_cast<std::size_t>(live[i].target) * k + label] = live[i].source;
    }
    std::vector<int> number(static_cast<std::size_t>(n), -1);
    std::vector<int> order{base};
    number[static_cast<std::size_t>(base)] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const auto v = static_cast<std::size_t>(order[head]);
      for (std::size_t label = 0; label < k; ++label) {
        for (int u : {out[v * k + label], in[v * k + label]}) {
          if (u >= 0 && number[static_cast<std::size_t>(u)] < 0) {
            number[static_cast<std::size_t>(u)] = static_cast<int>(order.size());
            order.push_back(u);
          }
        }
      }
    }
    std::vector<Edge> canonical;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (!keep_edge[i]) continue;
      canonical.push_back({number[static_cast<std::size_t>(live[i].source)],
                           number[static_cast<std::size_t>(live[i].target)], live[i].label});
    }
    std::sort(canonical.begin(), canonical.end(), [](const Edge& a, const Edge& b) {
      return a.source != b.source ? a.source < b.source : a.label < b.label;
    });
    return StallingsGraph(alphabet_, static_cast<int>(order.size()), std::move(canonical));
  }

  Alphabet alphabet_;
  int basepoint_;
  std::mt19937_64* rng_;
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<std::vector<int>> incident_;
  std::vector<Edge> edges_;
  std::vector<char> alive_;
};

StallingsGraph fold(const LabeledGraph& g) { return Folder(g, nullptr).run(); }

StallingsGraph fold(const LabeledGraph& g, std::uint64_t order_seed) {
  std::mt19937_64 rng(order_seed);
  return Folder(g, &rng).run();
}

StallingsGraph graph_from_generators(Alphabet alphabet, std::span<const Word> generators) {
  LabeledGraph g(alphabet);
  for (const Word& w : generators) g.add_petal(w);
  return fold(g);
}

bool membership(const StallingsGraph& g, const Word& w) {
  if (w.alphabet() != g.alphabet()) throw AlphabetMismatch("word and graph over different ranks");
  const auto end = g.read(g.basepoint(), w);
  return end && *end == g.basepoint();
}

}  // namespace stallings
