// Shared corpus of small automata, graphs and matrices used across the test
// suites, plus brute-force oracles independent of the library algorithms.
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sofic/automaton.hpp"
#include "sofic/core.hpp"

namespace corpus {

using namespace sofic;

struct EdgeSpec {
  std::string src, sym, dst;
};

inline Automaton mk_automaton(std::vector<Symbol> alphabet,
                              std::vector<std::string> states,
                              std::vector<EdgeSpec> edges) {
  Automaton a;
  a.alphabet = std::move(alphabet);
  a.graph.states = std::move(states);
  int k = 0;
  for (const EdgeSpec& e : edges) {
    std::string id = "e" + std::to_string(++k);
    a.graph.edges.push_back({id, e.src, e.dst});
    a.labels[id] = e.sym;
  }
  a.check();
  return a;
}

inline Graph mk_graph(std::vector<std::string> states,
                      std::vector<std::pair<std::string, std::string>> edges) {
  Graph g;
  g.states = std::move(states);
  int k = 0;
  for (auto& [s, d] : edges) g.edges.push_back({"e" + std::to_string(++k), s, d});
  g.check();
  return g;
}

inline IntMatrix mk_matrix(int r, int c, std::vector<Int> entries) {
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = entries[i * c + j];
  return m;
}

inline AlphMatrix mk_alph(int r, int c, std::vector<std::string> entries) {
  AlphMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      const std::string& t = entries[i * c + j];
      if (t == "0") continue;
      size_t pos = 0;
      while (pos <= t.size()) {
        size_t plus = t.find('+', pos);
        std::string term = t.substr(
            pos, plus == std::string::npos ? std::string::npos : plus - pos);
        m.at(i, j)[term] += 1;
        if (plus == std::string::npos) break;
        pos = plus + 1;
      }
    }
  return m;
}

// --- Shifts and their covers ------------------------------------------------

// Deterministic 2-state presentation of the even shift.
inline Automaton even_fischer() {
  return mk_automaton({"a", "b"}, {"1", "2"},
                      {{"1", "a", "1"}, {"1", "b", "2"}, {"2", "b", "1"}});
}

// 3-state Krieger cover of the even shift.
inline Automaton even_krieger_expected() {
  return mk_automaton({"a", "b"}, {"0", "1", "2"},
                      {{"0", "b", "0"},
                       {"0", "a", "1"},
                       {"1", "a", "1"},
                       {"1", "b", "2"},
                       {"2", "b", "1"}});
}

inline ShiftPresentation golden_mean() {
  return ShiftPresentation::from_forbidden({"a", "b"}, {{"b", "b"}});
}

inline ShiftPresentation xba() {
  return ShiftPresentation::from_forbidden({"a", "b"}, {{"b", "a"}});
}

inline ShiftPresentation full_shift(int k) {
  std::vector<Symbol> alphabet;
  for (int i = 0; i < k; ++i) alphabet.push_back(std::string(1, 'a' + i));
  return ShiftPresentation::from_forbidden(alphabet, {});
}

// Strongly connected 4-state automaton whose Krieger cover has 5 states and
// whose full determinization has 7.
inline Automaton nasu_base() {
  return mk_automaton({"a", "b", "c", "d", "e"}, {"1", "2", "3", "4"},
                      {{"1", "a", "1"},
                       {"1", "b", "3"},
                       {"1", "d", "2"},
                       {"2", "b", "4"},
                       {"3", "a", "3"},
                       {"3", "c", "1"},
                       {"3", "e", "4"},
                       {"4", "a", "4"},
                       {"4", "c", "1"}});
}

// Two conjugate presentations with one-step symbolic-equivalent matrices:
// M(A) = [[a+b, c], [c, 0]], M(B) = [[d, e+f], [f, g]].
inline Automaton conjugate_a() {
  return mk_automaton({"a", "b", "c"}, {"1", "2"},
                      {{"1", "a", "1"}, {"1", "b", "1"}, {"1", "c", "2"},
                       {"2", "c", "1"}});
}

inline Automaton conjugate_b() {
  return mk_automaton({"d", "e", "f", "g"}, {"1", "2"},
                      {{"1", "d", "1"}, {"1", "e", "2"}, {"1", "f", "2"},
                       {"2", "f", "1"}, {"2", "g", "2"}});
}

// --- Locality and delay examples ---------------------------------------------

// Local automaton admitting exactly (3,0), (2,1), (1,2), (0,3).
inline Automaton figure_local() {
  return mk_automaton({"a", "b"}, {"1", "2", "3"},
                      {{"1", "a", "2"}, {"1", "b", "2"}, {"2", "b", "3"},
                       {"3", "a", "1"}});
}

// Right delay 1 (two a-edges from state 1).
inline Automaton fig_right_delay() {
  return mk_automaton({"a", "b"}, {"1", "2"},
                      {{"1", "a", "1"}, {"1", "a", "2"}, {"2", "b", "1"}});
}

// Deterministic with infinite left delay (b-cycles at 1 and 2 merge on a).
inline Automaton fig_infinite_left_delay() {
  return mk_automaton({"a", "b", "c"}, {"1", "2"},
                      {{"1", "a", "1"}, {"1", "b", "1"}, {"1", "c", "2"},
                       {"2", "a", "1"}, {"2", "b", "2"}});
}

// --- Masking worked example ---------------------------------------------------

// Deterministic complete automaton containing figure_local's out-split.
inline Automaton masking_b() {
  return mk_automaton({"a", "b"}, {"1", "2", "3", "4"},
                      {{"1", "a", "2"}, {"1", "b", "3"}, {"2", "b", "4"},
                       {"3", "b", "4"}, {"4", "a", "1"}});
}

// masking_b plus a loop a at 2, a loop b at 4 and an edge 3 -a-> 1.
inline Automaton masking_bprime() {
  Automaton b = masking_b();
  b.graph.edges.push_back({"x1", "2", "2"});
  b.labels["x1"] = "a";
  b.graph.edges.push_back({"x2", "4", "4"});
  b.labels["x2"] = "b";
  b.graph.edges.push_back({"x3", "3", "1"});
  b.labels["x3"] = "a";
  b.check();
  return b;
}

inline AlphMatrix masking_n() {
  return mk_alph(3, 4, {"0", "a", "b", "0",
                        "0", "0", "0", "b",
                        "a", "0", "0", "0"});
}

inline IntMatrix masking_d() {
  return mk_matrix(4, 3, {1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1});
}

// --- Flow equivalence examples ------------------------------------------------

inline Automaton flow_automaton_a() {
  return mk_automaton({"a", "b"}, {"1", "2"},
                      {{"1", "a", "2"}, {"2", "a", "1"}, {"2", "b", "2"}});
}

// Replaces every a-edge of flow_automaton_a by a -w-subdivided pair.
inline Automaton flow_automaton_b() {
  return mk_automaton({"a", "b", "w"}, {"3", "4", "5", "6"},
                      {{"3", "a", "4"}, {"4", "w", "6"}, {"5", "w", "3"},
                       {"6", "a", "5"}, {"6", "b", "6"}});
}

// --- Split factorization examples ----------------------------------------------

// Graph in-split: M(G) = E D, M(H) = D E.
inline IntMatrix split_in_e() { return mk_matrix(2, 3, {2, 0, 1, 1, 1, 0}); }
inline IntMatrix split_in_d() { return mk_matrix(3, 2, {1, 0, 1, 0, 0, 1}); }

// Graph out-split: M(G) = D E, M(H) = E D.
inline IntMatrix split_out_d() { return mk_matrix(2, 3, {1, 1, 0, 0, 0, 1}); }
inline IntMatrix split_out_e() { return mk_matrix(3, 2, {1, 1, 2, 0, 1, 0}); }

// Labeled in-split: M(A) = N D, M(B) = D N.
inline AlphMatrix lsplit_in_n() {
  return mk_alph(2, 3, {"a+c", "0", "b", "0", "a", "0"});
}
inline IntMatrix lsplit_in_d() {
  return mk_matrix(3, 2, {1, 0, 1, 0, 0, 1});
}

// Labeled out-split: M(A) = D N, M(B) = N D.
inline AlphMatrix lsplit_out_n() {
  return mk_alph(3, 2, {"a", "b", "c", "0", "a", "0"});
}
inline IntMatrix lsplit_out_d() {
  return mk_matrix(2, 3, {1, 1, 0, 0, 0, 1});
}

// One-step symbolic equivalence data for conjugate_a / conjugate_b.
inline AlphMatrix sse_r() { return mk_alph(2, 2, {"x", "y", "0", "x"}); }
inline AlphMatrix sse_s() { return mk_alph(2, 2, {"z", "t", "t", "0"}); }
inline std::map<Word2, Symbol> sse_bij_first() {
  return {{{"x", "z"}, "a"}, {{"y", "t"}, "b"}, {{"x", "t"}, "c"}};
}
inline std::map<Word2, Symbol> sse_bij_second() {
  return {{{"z", "x"}, "d"}, {{"z", "y"}, "e"}, {{"t", "x"}, "f"},
          {{"t", "y"}, "g"}};
}

// --- Bowen-Franks example matrices ---------------------------------------------

inline IntMatrix bf_m1() { return mk_matrix(2, 2, {4, 1, 1, 0}); }
inline IntMatrix bf_m2() { return mk_matrix(2, 2, {3, 2, 1, 0}); }
inline IntMatrix bf_m3() { return mk_matrix(1, 1, {5}); }

// All labeled corpus automata, for sweep-style criteria.
inline std::vector<Automaton> all_automata() {
  return {even_fischer(),   even_krieger_expected(),
          golden_mean().presentation(), xba().presentation(),
          full_shift(2).presentation(), full_shift(3).presentation(),
          nasu_base(),      conjugate_a(),
          conjugate_b(),    figure_local(),
          fig_right_delay(), fig_infinite_left_delay(),
          masking_b(),      masking_bprime(),
          flow_automaton_a(), flow_automaton_b()};
}

// --- Brute-force oracles --------------------------------------------------------

// p_n by direct enumeration: a length-n word w yields a point of period
// dividing n iff the relation "q -w-> q'" contains a cycle.
inline std::vector<Int> oracle_periodic_counts(const Automaton& a, int n) {
  const int nq = static_cast<int>(a.graph.states.size());
  std::vector<Int> counts;
  for (int len = 1; len <= n; ++len) {
    Int total = 0;
    std::vector<int> word(len, 0);
    const int k = static_cast<int>(a.alphabet.size());
    while (true) {
      // Relation after reading the word.
      std::vector<std::vector<char>> rel(nq, std::vector<char>(nq, 0));
      for (int q = 0; q < nq; ++q) rel[q][q] = 1;
      for (int pos = 0; pos < len; ++pos) {
        std::vector<std::vector<char>> next(nq, std::vector<char>(nq, 0));
        for (const Edge& e : a.graph.edges) {
          if (a.label(e.id) != a.alphabet[word[pos]]) continue;
          int s = a.graph.state_index(e.src), d = a.graph.state_index(e.dst);
          for (int q = 0; q < nq; ++q)
            if (rel[q][s]) next[q][d] = 1;
        }
        rel = next;
      }
      // Cycle in the relation digraph <=> the repeated word is a point.
      std::vector<std::vector<char>> reach = rel;
      for (int m = 0; m < nq; ++m)
        for (int q = 0; q < nq; ++q)
          for (int r = 0; r < nq; ++r)
            for (int s2 = 0; s2 < nq; ++s2)
              if (reach[q][r] && rel[r][s2]) reach[q][s2] = 1;
      bool cyc = false;
      for (int q = 0; q < nq; ++q) cyc |= reach[q][q];
      total += cyc;
      int pos = 0;
      while (pos < len && word[pos] == k - 1) word[pos++] = 0;
      if (pos == len) break;
      ++word[pos];
    }
    counts.push_back(total);
  }
  return counts;
}

// trace(M^n) by explicit closed-path enumeration on the graph.
inline std::vector<Int> oracle_edge_periodic_counts(const Graph& g, int n) {
  const int nq = static_cast<int>(g.states.size());
  std::vector<std::vector<Int>> step(nq, std::vector<Int>(nq, 0));
  for (const Edge& e : g.edges)
    ++step[g.state_index(e.src)][g.state_index(e.dst)];
  std::vector<Int> counts;
  auto cur = step;
  for (int len = 1; len <= n; ++len) {
    if (len > 1) {
      std::vector<std::vector<Int>> next(nq, std::vector<Int>(nq, 0));
      for (int i = 0; i < nq; ++i)
        for (int j = 0; j < nq; ++j)
          for (int k = 0; k < nq; ++k) next[i][j] += cur[i][k] * step[k][j];
      cur = next;
    }
    Int tr = 0;
    for (int i = 0; i < nq; ++i) tr += cur[i][i];
    counts.push_back(tr);
  }
  return counts;
}

// Eventually periodic left-context oracle for the Krieger cover: subsets
// S = omega-image of one transition relation followed by another, quotiented
// by right-language equality; edges S -x-> S.x.
namespace detail {

using Rel = std::vector<std::vector<char>>;  // state x state reachability

inline Rel rel_compose(const Rel& f, const Rel& g) {
  int n = static_cast<int>(f.size());
  Rel h(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f[i][j])
        for (int k = 0; k < n; ++k)
          if (g[j][k]) h[i][k] = 1;
  return h;
}

inline std::set<int> image(const Rel& f, const std::set<int>& s) {
  std::set<int> out;
  for (int q : s)
    for (size_t j = 0; j < f.size(); ++j)
      if (f[q][j]) out.insert(static_cast<int>(j));
  return out;
}

// Right language equality of two state subsets, by BFS on subset pairs.
inline bool same_right_language(const Automaton& a, const std::set<int>& s1,
                                const std::set<int>& s2) {
  std::set<std::pair<std::set<int>, std::set<int>>> seen;
  std::deque<std::pair<std::set<int>, std::set<int>>> queue{{s1, s2}};
  seen.insert({s1, s2});
  while (!queue.empty()) {
    auto [t1, t2] = queue.front();
    queue.pop_front();
    if (t1.empty() != t2.empty()) return false;
    for (const Symbol& x : a.alphabet) {
      std::set<int> u1, u2;
      for (const Edge& e : a.graph.edges) {
        if (a.label(e.id) != x) continue;
        int s = a.graph.state_index(e.src), d = a.graph.state_index(e.dst);
        if (t1.count(s)) u1.insert(d);
        if (t2.count(s)) u2.insert(d);
      }
      if (seen.insert({u1, u2}).second && !(u1.empty() && u2.empty()))
        queue.push_back({u1, u2});
    }
  }
  return true;
}

}  // namespace detail

inline Automaton oracle_krieger(const Automaton& input) {
  using namespace detail;
  Automaton a = input.essential_part();
  const int nq = static_cast<int>(a.graph.states.size());
  // All distinct transition relations of words (closure under composition).
  std::map<Symbol, Rel> gen;
  for (const Symbol& x : a.alphabet) {
    Rel r(nq, std::vector<char>(nq, 0));
    for (const Edge& e : a.graph.edges)
      if (a.label(e.id) == x)
        r[a.graph.state_index(e.src)][a.graph.state_index(e.dst)] = 1;
    gen[x] = r;
  }
  std::set<Rel> rels;
  std::deque<Rel> queue;
  for (auto& [x, r] : gen)
    if (rels.insert(r).second) queue.push_back(r);
  while (!queue.empty()) {
    Rel r = queue.front();
    queue.pop_front();
    for (auto& [x, g] : gen) {
      Rel h = rel_compose(r, g);
      if (rels.insert(h).second) queue.push_back(h);
    }
  }
  std::set<int> all;
  for (int q = 0; q < nq; ++q) all.insert(q);
  // Candidate contexts: omega-image of t, then an arbitrary tail s.
  std::set<std::set<int>> contexts;
  for (const Rel& t : rels) {
    std::set<int> s = all;
    for (int k = 0; k < nq + 1; ++k) s = image(t, s);  // stabilized image
    if (!s.empty()) contexts.insert(s);
    for (const Rel& tail : rels) {
      std::set<int> s2;
      for (int q : s)
        for (int j = 0; j < nq; ++j)
          if (tail[q][j]) s2.insert(j);
      if (!s2.empty()) contexts.insert(s2);
    }
  }
  // Close under letter transitions (a periodic tail followed by more letters
  // is still eventually periodic).
  std::deque<std::set<int>> cq(contexts.begin(), contexts.end());
  while (!cq.empty()) {
    std::set<int> s = cq.front();
    cq.pop_front();
    for (auto& [x, g] : gen) {
      std::set<int> s2 = image(g, s);
      if (!s2.empty() && contexts.insert(s2).second) cq.push_back(s2);
    }
  }
  // Quotient by right-language equality.
  std::vector<std::set<int>> classes;
  std::map<std::set<int>, int> cls;
  for (const std::set<int>& s : contexts) {
    int found = -1;
    for (size_t i = 0; i < classes.size() && found < 0; ++i)
      if (same_right_language(a, s, classes[i])) found = static_cast<int>(i);
    if (found < 0) {
      found = static_cast<int>(classes.size());
      classes.push_back(s);
    }
    cls[s] = found;
  }
  Automaton out;
  out.alphabet = a.alphabet;
  for (size_t i = 0; i < classes.size(); ++i)
    out.graph.states.push_back("c" + std::to_string(i));
  int k = 0;
  std::set<std::tuple<int, Symbol, int>> added;
  for (const auto& [s, i] : cls) {
    for (auto& [x, g] : gen) {
      std::set<int> s2 = image(g, s);
      if (s2.empty()) continue;
      int j = cls.at(s2);
      if (!added.insert({i, x, j}).second) continue;
      std::string id = "k" + std::to_string(++k);
      out.graph.edges.push_back(
          {id, out.graph.states[i], out.graph.states[j]});
      out.labels[id] = x;
    }
  }
  out.check();
  return out;
}

// Deterministic RNG for the property suites (64-bit splitmix).
struct Rng {
  unsigned long long state;
  explicit Rng(unsigned long long seed) : state(seed) {}
  unsigned long long next() {
    unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % (hi - lo + 1));
  }
};

}  // namespace corpus
