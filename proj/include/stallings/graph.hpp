#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stallings/word.hpp"

namespace stallings {

/// A positively oriented edge source --x_label--> target.
/// Crossing it backwards reads x_label^-1.
struct Edge {
  int source = 0;
  int target = 0;
  int label = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A basepointed directed graph with generator-labeled edges.
class LabeledGraph {
 public:
  explicit LabeledGraph(Alphabet alphabet, int num_vertices = 1, int basepoint = 0);

  int add_vertex();
  void add_edge(int source, int target, int label);
  /// Adds a closed path at the basepoint spelling `w` (a petal).
  void add_petal(const Word& w);

  Alphabet alphabet() const { return alphabet_; }
  int num_vertices() const { return num_vertices_; }
  int basepoint() const { return basepoint_; }
  std::span<const Edge> edges() const { return edges_; }

  /// At most one outgoing and one incoming edge per (vertex, label).
  bool is_folded() const;

 private:
  Alphabet alphabet_;
  int num_vertices_;
  int basepoint_;
  std::vector<Edge> edges_;
};

/// A folded core graph in canonical form.
///
/// Vertices are numbered in breadth-first order from the basepoint (vertex 0),
/// exploring letters x_1, x_1^-1, x_2, ...; edges are sorted by (source,
/// label). Two StallingsGraphs compare equal exactly when they are isomorphic
/// as basepointed labeled graphs, i.e. when they represent the same subgroup.
class StallingsGraph {
 public:
  Alphabet alphabet() const { return alphabet_; }
  int num_vertices() const { return num_vertices_; }
  int basepoint() const { return 0; }
  std::span<const Edge> edges() const { return edges_; }

  /// Index of the edge leaving `vertex` along letter `l`, if any.
  std::optional<int> edge_at(int vertex, Letter l) const;
  /// Endpoint reached from `vertex` by reading `l`, if any.
  std::optional<int> follow(int vertex, Letter l) const;
  /// Endpoint reached by reading all of `w`, if the path exists.
  std::optional<int> read(int vertex, const Word& w) const;

  /// Rank of the represented subgroup, |E| - |V| + 1.
  int subgroup_rank() const { return static_cast<int>(edges_.size()) - num_vertices_ + 1; }

  LabeledGraph to_labeled() const;

  friend bool operator==(const StallingsGraph&, const StallingsGraph&) = default;

 private:
  friend class Folder;
  StallingsGraph(Alphabet alphabet, int num_vertices, std::vector<Edge> edges);

  Alphabet alphabet_;
  int num_vertices_ = 1;
  std::vector<Edge> edges_;
  std::vector<int> out_;  // [vertex * rank + label - 1] -> edge index or -1
  std::vector<int> in_;
};

/// Folds until locally injective, trims to the core at the basepoint and
/// renumbers canonically.
StallingsGraph fold(const LabeledGraph& g);
/// Same result, but identifications are processed in an order drawn from
/// `order_seed`. Used to exercise confluence.
StallingsGraph fold(const LabeledGraph& g, std::uint64_t order_seed);

/// The Stallings graph of <S>. Identity entries are ignored.
StallingsGraph graph_from_generators(Alphabet alphabet, std::span<const Word> generators);

/// Whether w is read by a closed path at the basepoint.
bool membership(const StallingsGraph& g, const Word& w);

struct BasisElement {
  int edge = 0;
  Word word;
};

/// Spanning tree T and the cycle words C_e for the edges outside T.
struct SpanningTreeBasis {
  std::vector<int> tree;
  std::vector<BasisElement> basis;

  std::vector<Word> words() const;
};

/// Breadth-first spanning tree from the basepoint, scanning letters in the
/// order x_1, x_1^-1, x_2, ... at each vertex. Non-tree edges are listed by
/// edge index. Each C_e is reported in whichever orientation (C_e or its
/// inverse) is shortlex-smaller.
SpanningTreeBasis spanning_tree_basis(const StallingsGraph& g);

/// Label- and basepoint-preserving map between Stallings graphs.
struct GraphMorphism {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

/// The unique morphism from `sub` into `super`, which exists iff sub <= super.
std::optional<GraphMorphism> subgroup_of(const StallingsGraph& sub, const StallingsGraph& super);

bool is_injective(const GraphMorphism& m);

/// The subgraph of `target` hit by `m`, as a Stallings graph.
StallingsGraph image_graph(const GraphMorphism& m, const StallingsGraph& target);

struct FreeFactorCertificate {
  std::vector<Word> basis_h;
  std::vector<Word> basis_n;
  GraphMorphism morphism;
};

/// Bases with basis_h a subset of basis_n, from a spanning tree of the image
/// of Gamma_H extended to Gamma_N.
///
/// Returns nullopt when H is not contained in N or the morphism is not
/// injective. A nullopt is not evidence that H fails to be a free factor.
std::optional<FreeFactorCertificate> free_factor_certificate(const StallingsGraph& h, const StallingsGraph& n);

/// Product-graph intersection A ∩ B.
StallingsGraph intersect(const StallingsGraph& a, const StallingsGraph& b);

struct DirectedFactor {
  StallingsGraph subgroup;       // Gamma_H
  StallingsGraph intersection;   // Gamma_N, N the intersection of the family
  std::size_t j0 = 0;            // index into the intersection-closed family
  std::vector<std::size_t> j0_members;  // original members intersected to form j0
  FreeFactorCertificate certificate;
};

/// Given S inside every N_j, finds S <= H <= N = ∩ N_j with Gamma_H -> Gamma_{N_j0}
/// injective.
///
/// The family is closed under intersection first; indices below
/// family.size() are the original members and are tried first. Throws
/// PreconditionViolation naming the first (s, j) with s not in N_j.
DirectedFactor directed_family_factor(std::span<const Word> s, std::span<const StallingsGraph> family);

}  // namespace stallings
