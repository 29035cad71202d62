// Transition semigroups of deterministic automata as ordered semigroups of
// partial maps; Green relations, structure groups, syntactic graphs, and
// local pseudovariety membership tests.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sofic/automaton.hpp"
#include "sofic/core.hpp"

namespace sofic {

// Partial map on {0..n-1}; -1 encodes "undefined".
struct PartialMap {
  std::vector<int> img;

  int rank() const;
  bool is_zero() const;  // everywhere undefined
  bool operator==(const PartialMap& o) const = default;
  bool operator<(const PartialMap& o) const { return img < o.img; }
};

PartialMap compose(const PartialMap& f, const PartialMap& g);  // f then g
bool idempotent(const PartialMap& f);
// Graph-of-map inclusion: f <= g iff f(q) defined implies g(q) = f(q).
bool map_leq(const PartialMap& f, const PartialMap& g);

struct TransitionSemigroup {
  int nstates = 0;
  std::vector<Symbol> alphabet;
  std::vector<PartialMap> elements;
  std::map<Symbol, int> generator;            // letter -> element index
  std::vector<std::vector<Symbol>> words;     // shortlex representative
  std::vector<std::vector<int>> right_cayley; // element x generator -> element
  std::vector<std::vector<int>> left_cayley;  // generator applied on the left
  std::map<PartialMap, int> index_map;

  int index_of(const PartialMap& m) const;  // -1 if absent
  int multiply(int i, int j) const;         // full product via words
};

TransitionSemigroup transition_semigroup(const Automaton& a);

// Canonicalized finite group: order, canonical multiplication table, and a
// human name when recognized (abelian invariant factors).
struct GroupDescriptor {
  int order = 0;
  std::vector<std::vector<int>> table;  // canonical form for order <= 64
  std::string name;                     // "Z/1Z", "Z/2Z", "Z/2ZxZ/4Z", or ""

  bool operator==(const GroupDescriptor& o) const {
    return order == o.order && table == o.table;
  }
  bool operator<(const GroupDescriptor& o) const {
    return std::tie(order, table) < std::tie(o.order, o.table);
  }
};

struct GreenStructure {
  std::vector<int> r_class, l_class, h_class, d_class;  // per element
  std::vector<char> is_idempotent;                      // per element
  struct DClass {
    std::vector<int> elements;
    int rank = 0;
    bool regular = false;
    std::optional<GroupDescriptor> group;  // structure group, regular classes
  };
  std::vector<DClass> d_classes;
  // j_leq[i][j] = true iff D_i <=_J D_j (two-sided ideal containment).
  std::vector<std::vector<char>> j_leq;
};

GreenStructure green_structure(const TransitionSemigroup& s);

struct SyntacticGraph {
  struct Node {
    int rank = 0;
    GroupDescriptor group;
  };
  std::vector<Node> nodes;  // regular D-classes
  // Reflexive-transitive comparability pairs: (i,j) present iff node i >=_J j.
  std::vector<std::pair<int, int>> edges;
};

// Syntactic graph of an automaton. Nondeterministic inputs are determinized
// from the full state set and reduced first (this yields the syntactic
// semigroup of the recognized shift); the essential part is taken first.
SyntacticGraph syntactic_graph(const Automaton& a);

SyntacticGraph syntactic_graph_of(const GreenStructure& g);

bool syntactic_graph_isomorphic(const SyntacticGraph& g1,
                                const SyntacticGraph& g2);

// True iff phi1(w) -> phi2(w) is a well-defined, bijective, order-compatible
// isomorphism (same alphabet required).
bool semigroups_generator_isomorphic(const TransitionSemigroup& s1,
                                     const TransitionSemigroup& s2);

enum class LocalProperty { commutative, idempotents_commute };

// For every idempotent e, test the local submonoid eSe for the property.
bool local_pseudovariety_check(const TransitionSemigroup& s,
                               LocalProperty property);

// Canonical descriptor of the group formed by the H-class of an idempotent
// (elements given as indices into s.elements). Caps at order 64.
GroupDescriptor group_descriptor(const TransitionSemigroup& s,
                                 const std::vector<int>& h_class);

}  // namespace sofic
