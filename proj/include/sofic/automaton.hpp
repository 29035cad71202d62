// Labeled automata over finite alphabets: presentations of sofic shifts.
// All states are both initial and final; the recognized object is the set of
// labels of biinfinite paths (and, for block languages, of finite paths).
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sofic/core.hpp"

namespace sofic {

struct Automaton {
  Graph graph;
  std::map<std::string, Symbol> labels;  // edge id -> symbol
  std::vector<Symbol> alphabet;

  void check() const;
  bool deterministic() const;
  bool essential() const;
  Automaton essential_part() const;

  const Symbol& label(const std::string& edge_id) const;

  // Adjacency over degree-1 polynomials, rows/cols in state order.
  AlphMatrix alphabetic_adjacency() const;
  // Count adjacency of the underlying graph.
  IntMatrix count_adjacency() const;

  // Deterministic transition: index of target state, or -1.
  // Valid only when deterministic() holds; built on demand.
  int step(int state, const Symbol& a) const;

  bool empty() const { return graph.empty(); }
};

// Build an automaton from an alphabetic adjacency matrix. Entry (p,q) with
// coefficient c at symbol a yields c parallel edges p -a-> q. Deterministic
// edge ids.
Automaton automaton_from_alphabetic(const AlphMatrix& m,
                                    const std::vector<std::string>& names = {});

// View a graph as an automaton over its own edge ids (edge shift as a
// 1-to-1 labeled automaton).
Automaton edge_automaton(const Graph& g);

// Structural isomorphism respecting labels (graded backtracking search;
// automata here are desk-sized).
bool automata_isomorphic(const Automaton& a, const Automaton& b);

// Reverse all edges (labels kept).
Automaton reverse(const Automaton& a);

// ---------------------------------------------------------------------------
// Shift presentations

struct ShiftPresentation {
  // Exactly one of the two cases is populated.
  std::optional<std::vector<std::vector<Symbol>>> forbidden;  // case (a)
  std::vector<Symbol> alphabet;                               // case (a)
  std::optional<Automaton> automaton;                         // case (b)

  static ShiftPresentation from_forbidden(std::vector<Symbol> alphabet,
                                          std::vector<std::vector<Symbol>> w);
  static ShiftPresentation from_automaton(Automaton a);

  // A presenting automaton: the forbidden-word construction for case (a),
  // the essential part of the automaton for case (b).
  Automaton presentation() const;
};

// Deterministic (n,0)-local automaton with states A^n \ W (words padded to a
// common length n); recognizes X^(W). Empty W yields the one-state full
// shift automaton.
Automaton presentation_from_forbidden(const std::vector<Symbol>& alphabet,
                                      std::vector<std::vector<Symbol>> w);

// ---------------------------------------------------------------------------
// Determinization, reduction, covers

struct SubsetAutomaton {
  Automaton automaton;
  // For each state of `automaton` (by index), the base states it stands for.
  std::vector<std::vector<std::string>> subsets;
};

// Subset construction from the full state set; accessible nonempty subsets.
SubsetAutomaton determinize_full(const Automaton& a);

struct ReducedAutomaton {
  Automaton automaton;
  std::map<std::string, std::string> quotient;  // input state -> class state
};

// Moore partition refinement with defined-letter signatures: merge states
// with equal right languages. Exact on partial deterministic automata.
ReducedAutomaton reduce(const Automaton& a);

// Krieger cover: states are the right-context sets of left-infinite words,
// computed from idempotent-anchored subsets of the base presentation and
// quotiented by right-language equality. State names record the base subset.
Automaton krieger(const ShiftPresentation& p);

// Unique minimal strongly connected component of the Krieger cover
// (irreducible presentations only; error otherwise).
Automaton fischer(const ShiftPresentation& p);

// Word w with |Q.w| = 1 if one exists (greedy pair merging), else nullopt.
std::optional<std::vector<Symbol>> synchronizing_word(const Automaton& a);

struct ReductionResult {
  std::optional<std::map<std::string, std::string>> map;  // state -> state
  std::vector<Symbol> distinguishing_word;  // when languages differ
};

// Edge-respecting surjection from a strongly connected deterministic
// automaton onto the Fischer automaton of the same shift.
ReductionResult reduction_map(const Automaton& a, const Automaton& fischer);

// Exact block-language comparison; returns a word in exactly one language
// (shortest, by BFS on the pair of subset automata) or nullopt if equal.
std::optional<std::vector<Symbol>> block_language_difference(
    const Automaton& a, const Automaton& b);

// Number of distinct blocks of each length 1..n.
std::vector<Int> block_counts(const Automaton& a, int n);

// ---------------------------------------------------------------------------
// Bipartite automata

// Automaton C with M(C) = [[0,R],[S,0]]; alphabets of R and S must be
// disjoint. States are r0..  /  s0.. (or the supplied names).
Automaton bipartite_compose(const AlphMatrix& r, const AlphMatrix& s,
                            const std::vector<std::string>& names1 = {},
                            const std::vector<std::string>& names2 = {});

struct BipartitePartition {
  std::set<std::string> states1, states2;
  std::set<Symbol> alphabet1, alphabet2;
};

// Components of a bipartite automaton over the two-symbol-word alphabets
// A1A2 and A2A1 (words written by concatenating the two symbol names).
std::pair<Automaton, Automaton> bipartite_components(
    const Automaton& a, const BipartitePartition& partition);

// ---------------------------------------------------------------------------
// Extension automata

// A^[m,n]: underlying graph = higher edge graph of order m+n+1; the label of
// the edge (e_1..e_{m+n+1}) is the label of e_{m+1}. A^[0,0] = a.
Automaton extension_automaton(const Automaton& a, int m, int n);

}  // namespace sofic
