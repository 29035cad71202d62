#include "sofic/automaton.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace sofic {

void Automaton::check() const {
  graph.check();
  std::set<Symbol> alpha(alphabet.begin(), alphabet.end());
  if (alpha.size() != alphabet.size()) throw error("duplicate alphabet symbol");
  for (const Edge& e : graph.edges) {
    auto it = labels.find(e.id);
    if (it == labels.end()) throw error("unlabeled edge: " + e.id);
    if (!alpha.count(it->second))
      throw error("edge " + e.id + " labeled with unknown symbol " + it->second);
  }
}

bool Automaton::deterministic() const {
  std::set<std::pair<std::string, Symbol>> seen;
  for (const Edge& e : graph.edges)
    if (!seen.insert({e.src, label(e.id)}).second) return false;
  return true;
}

bool Automaton::essential() const { return is_essential(graph); }

Automaton Automaton::essential_part() const {
  Automaton out;
  out.graph = sofic::essential_part(graph);
  out.alphabet = alphabet;
  for (const Edge& e : out.graph.edges) out.labels[e.id] = label(e.id);
  return out;
}

const Symbol& Automaton::label(const std::string& edge_id) const {
  auto it = labels.find(edge_id);
  if (it == labels.end()) throw error("unlabeled edge: " + edge_id);
  return it->second;
}

AlphMatrix Automaton::alphabetic_adjacency() const {
  const int n = static_cast<int>(graph.states.size());
  AlphMatrix m(n, n);
  for (const Edge& e : graph.edges)
    m.at(graph.state_index(e.src), graph.state_index(e.dst))[label(e.id)] += 1;
  return m;
}

IntMatrix Automaton::count_adjacency() const { return adjacency(graph); }

int Automaton::step(int state, const Symbol& a) const {
  const std::string& q = graph.states[state];
  for (const Edge& e : graph.edges)
    if (e.src == q && label(e.id) == a) return graph.state_index(e.dst);
  return -1;
}

Automaton automaton_from_alphabetic(const AlphMatrix& m,
                                    const std::vector<std::string>& names) {
  if (m.rows != m.cols) throw error("alphabetic adjacency must be square");
  Automaton a;
  std::set<Symbol> alpha;
  for (int i = 0; i < m.rows; ++i)
    a.graph.states.push_back(names.empty() ? "q" + std::to_string(i)
                                           : names[i]);
  if (!names.empty() && static_cast<int>(names.size()) != m.rows)
    throw error("state name count does not match matrix dimension");
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      for (const auto& [sym, c] : m.at(i, j)) {
        if (c < 0) throw error("negative coefficient in alphabetic matrix");
        alpha.insert(sym);
        for (Int k = 0; k < c; ++k) {
          std::string id = a.graph.states[i] + "-" + sym + "->" +
                           a.graph.states[j] + ":" + std::to_string(k);
          a.graph.edges.push_back({id, a.graph.states[i], a.graph.states[j]});
          a.labels[id] = sym;
        }
      }
  a.alphabet.assign(alpha.begin(), alpha.end());
  return a;
}

Automaton edge_automaton(const Graph& g) {
  Automaton a;
  a.graph = g;
  for (const Edge& e : g.edges) {
    a.labels[e.id] = e.id;
    a.alphabet.push_back(e.id);
  }
  std::sort(a.alphabet.begin(), a.alphabet.end());
  return a;
}

Automaton reverse(const Automaton& a) {
  Automaton out;
  out.alphabet = a.alphabet;
  out.graph.states = a.graph.states;
  for (const Edge& e : a.graph.edges) {
    out.graph.edges.push_back({e.id, e.dst, e.src});
    out.labels[e.id] = a.label(e.id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

// Multiset of labels per ordered state pair, as index into states.
using PairLabels = std::map<std::pair<int, int>, std::multiset<Symbol>>;

PairLabels pair_labels(const Automaton& a) {
  PairLabels out;
  for (const Edge& e : a.graph.edges)
    out[{a.graph.state_index(e.src), a.graph.state_index(e.dst)}].insert(
        a.label(e.id));
  return out;
}

std::multiset<std::pair<Symbol, int>> state_signature(const Automaton& a,
                                                      int q, bool out_side) {
  std::multiset<std::pair<Symbol, int>> sig;
  for (const Edge& e : a.graph.edges) {
    const std::string& s = out_side ? e.src : e.dst;
    if (a.graph.state_index(s) == q) sig.insert({a.label(e.id), 0});
  }
  return sig;
}

}  // namespace

bool automata_isomorphic(const Automaton& a, const Automaton& b) {
  const int n = static_cast<int>(a.graph.states.size());
  if (n != static_cast<int>(b.graph.states.size())) return false;
  if (a.graph.edges.size() != b.graph.edges.size()) return false;
  PairLabels pa = pair_labels(a), pb = pair_labels(b);
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  // Precomputed degree/label signatures prune the search.
  std::vector<std::multiset<std::pair<Symbol, int>>> sa_out(n), sa_in(n),
      sb_out(n), sb_in(n);
  for (int i = 0; i < n; ++i) {
    sa_out[i] = state_signature(a, i, true);
    sa_in[i] = state_signature(a, i, false);
    sb_out[i] = state_signature(b, i, true);
    sb_in[i] = state_signature(b, i, false);
  }
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || sa_out[i] != sb_out[j] || sa_in[i] != sb_in[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        auto get = [](const PairLabels& p, int x, int y)
            -> const std::multiset<Symbol>* {
          auto it = p.find({x, y});
          return it == p.end() ? nullptr : &it->second;
        };
        auto cmp = [&](const std::multiset<Symbol>* x,
                       const std::multiset<Symbol>* y) {
          if (!x && !y) return true;
          if (!x || !y) return false;
          return *x == *y;
        };
        ok = cmp(get(pa, i, k), get(pb, j, map[k])) &&
             cmp(get(pa, k, i), get(pb, map[k], j));
      }
      {
        auto it_a = pa.find({i, i});
        auto it_b = pb.find({j, j});
        bool la = it_a != pa.end(), lb = it_b != pb.end();
        if (la != lb || (la && it_a->second != it_b->second)) ok = false;
      }
      if (!ok) continue;
      used[j] = 1;
      map[i] = j;
      if (go(i + 1)) return true;
      used[j] = 0;
      map[i] = -1;
    }
    return false;
  };
  return go(0);
}

// ---------------------------------------------------------------------------
// Shift presentations

ShiftPresentation ShiftPresentation::from_forbidden(
    std::vector<Symbol> alphabet, std::vector<std::vector<Symbol>> w) {
  ShiftPresentation p;
  p.alphabet = std::move(alphabet);
  p.forbidden = std::move(w);
  return p;
}

ShiftPresentation ShiftPresentation::from_automaton(Automaton a) {
  ShiftPresentation p;
  p.automaton = std::move(a);
  return p;
}

Automaton ShiftPresentation::presentation() const {
  if (forbidden) return presentation_from_forbidden(alphabet, *forbidden);
  Automaton a = automaton->essential_part();
  if (a.empty()) throw error("empty shift: presentation has no biinfinite path");
  return a;
}

Automaton presentation_from_forbidden(const std::vector<Symbol>& alphabet,
                                      std::vector<std::vector<Symbol>> w) {
  if (alphabet.empty()) throw error("empty alphabet");
  for (const auto& word : w)
    if (word.empty()) throw error("forbidden words must be nonempty");
  if (w.empty()) {
    // Full shift: one state, one loop per letter.
    Automaton a;
    a.alphabet = alphabet;
    a.graph.states = {"q"};
    for (const Symbol& s : alphabet) {
      a.graph.edges.push_back({"loop:" + s, "q", "q"});
      a.labels["loop:" + s] = s;
    }
    return a;
  }
  size_t n = 0;
  for (const auto& word : w) n = std::max(n, word.size());
  // Pad to common length: a word forbids all its extensions.
  std::set<std::vector<Symbol>> forbidden;
  for (const auto& word : w) {
    std::vector<std::vector<Symbol>> ext{word};
    while (ext.front().size() < n) {
      std::vector<std::vector<Symbol>> next;
      for (const auto& u : ext)
        for (const Symbol& s : alphabet) {
          auto v = u;
          v.push_back(s);
          next.push_back(std::move(v));
        }
      ext = std::move(next);
    }
    forbidden.insert(ext.begin(), ext.end());
  }
  // States: allowed words of length n; edge u -a-> v when u,v overlap on
  // n-1 letters and v = u[1..]a.
  std::vector<std::vector<Symbol>> states{{}};
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Symbol>> next;
    for (const auto& u : states)
      for (const Symbol& s : alphabet) {
        auto v = u;
        v.push_back(s);
        next.push_back(std::move(v));
      }
    states = std::move(next);
  }
  Automaton a;
  a.alphabet = alphabet;
  auto name = [](const std::vector<Symbol>& u) { return join(u, ""); };
  std::set<std::vector<Symbol>> allowed;
  for (const auto& u : states)
    if (!forbidden.count(u)) {
      allowed.insert(u);
      a.graph.states.push_back(name(u));
    }
  for (const auto& u : allowed)
    for (const Symbol& s : alphabet) {
      std::vector<Symbol> v(u.begin() + 1, u.end());
      v.push_back(s);
      if (!allowed.count(v)) continue;
      std::string id = name(u) + "-" + s + "->" + name(v);
      a.graph.edges.push_back({id, name(u), name(v)});
      a.labels[id] = s;
    }
  return a.essential_part();
}

}  // namespace sofic
