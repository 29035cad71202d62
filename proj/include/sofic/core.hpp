// Core substrate: graphs with explicit edge ids, integer count matrices,
// alphabetic (degree-1 polynomial) matrices, periodic words and sliding
// block maps.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sofic {

using Int = std::int64_t;

// A symbol is a nonempty printable token without whitespace.
using Symbol = std::string;

// Dense nonnegative integer matrix (adjacency counts, division matrices,
// SSE certificate entries).
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Graphs

struct Edge {
  std::string id;
  std::string src;
  std::string dst;
};

// A finite multigraph. Parallel edges are permitted and distinguished by id.
struct Graph {
  std::vector<std::string> states;
  std::vector<Edge> edges;

  bool has_state(const std::string& q) const;
  int state_index(const std::string& q) const;  // -1 if absent
  const Edge* find_edge(const std::string& id) const;
  void check() const;  // endpoints exist, edge ids unique

  bool empty() const { return states.empty(); }
};

// Adjacency count matrix in the order of g.states.
IntMatrix adjacency(const Graph& g);

// Graph with states q0..q{n-1} (or the supplied names) realizing the given
// adjacency counts; edge ids are deterministic ("<src>-><dst>:<k>").
Graph graph_from_adjacency(const IntMatrix& m,
                           const std::vector<std::string>& names = {});

// Maximal subgraph in which every state lies on a biinfinite path.
Graph essential_part(const Graph& g);

bool is_essential(const Graph& g);

// States = paths of length n-1, edges = paths of length n. For n = 1
// returns g unchanged. Path states/edges are named by joining edge ids
// with '|'.
Graph higher_edge_graph(const Graph& g, int n);

// All paths of g with exactly n edges, as sequences of indices into g.edges.
std::vector<std::vector<int>> paths_of_length(const Graph& g, int n);

// Strongly connected components (Tarjan); each component is a sorted list of
// state indices, returned in a deterministic order.
std::vector<std::vector<int>> strongly_connected_components(const Graph& g);

bool is_strongly_connected(const Graph& g);

// A trivial graph is a single cycle (every state has exactly one incoming
// and one outgoing edge, and the graph is strongly connected).
bool is_trivial_cycle(const Graph& g);

// ---------------------------------------------------------------------------
// Alphabetic matrices

// Homogeneous degree-1 polynomial: symbol -> nonnegative coefficient.
using Poly = std::map<Symbol, Int>;
// Homogeneous degree-2 polynomial over two-symbol words.
using Word2 = std::pair<Symbol, Symbol>;
using Poly2 = std::map<Word2, Int>;

struct AlphMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Poly> a;  // row-major

  AlphMatrix() = default;
  AlphMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Poly& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Poly& at(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }
  bool operator==(const AlphMatrix& o) const = default;
};

// Degree-2 alphabetic matrix: a distinct value kind; relabel() is the only
// bridge back to degree 1.
struct Alph2Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Poly2> a;

  Alph2Matrix() = default;
  Alph2Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Poly2& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Poly2& at(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }
  bool operator==(const Alph2Matrix& o) const = default;
};

// Entrywise product with word concatenation; inner dimensions must agree.
Alph2Matrix matrix_product(const AlphMatrix& a, const AlphMatrix& b);

// Substitute each two-symbol word by its image. The bijection must be total
// on the words occurring in m and injective.
AlphMatrix relabel(const Alph2Matrix& m, const std::map<Word2, Symbol>& bij);

// Sum of coefficients per entry.
IntMatrix forget_labels(const AlphMatrix& m);
IntMatrix forget_labels(const Alph2Matrix& m);

// ---------------------------------------------------------------------------
// Periodic words

// The biinfinite repetition of a nonempty word, stored canonically as the
// lexicographically least rotation of the least repeating root.
struct PeriodicWord {
  std::vector<Symbol> root;

  explicit PeriodicWord(std::vector<Symbol> w);
  bool operator==(const PeriodicWord& o) const = default;
  bool operator<(const PeriodicWord& o) const { return root < o.root; }
};

// ---------------------------------------------------------------------------
// Sliding block maps

struct BlockMap {
  int memory = 0;        // m
  int anticipation = 0;  // n
  std::map<std::vector<Symbol>, Symbol> table;  // (m+1+n)-blocks -> symbol

  int window() const { return memory + 1 + anticipation; }
};

// Apply a sliding block map to a periodic point. Every window of the
// repetition must be in the table.
PeriodicWord apply_block_map(const BlockMap& bm, const PeriodicWord& w);

// ---------------------------------------------------------------------------
// Small utilities shared across modules

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace sofic
