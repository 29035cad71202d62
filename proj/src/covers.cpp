// Determinization, reduction, Krieger/Fischer covers, synchronizing words,
// bipartite (de)composition and extension automata.
#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "sofic/automaton.hpp"

namespace sofic {

namespace {

constexpr size_t kSemigroupGuard = 100000;

// Boolean relation on <=64 states, one row bitmask per state.
using Relation = std::vector<std::uint64_t>;

Relation compose(const Relation& r, const Relation& s) {
  const size_t n = r.size();
  Relation out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    std::uint64_t row = r[i];
    while (row) {
      int j = std::countr_zero(row);
      row &= row - 1;
      out[i] |= s[j];
    }
  }
  return out;
}

std::uint64_t image_of(std::uint64_t set, const Relation& r) {
  std::uint64_t out = 0;
  while (set) {
    int j = std::countr_zero(set);
    set &= set - 1;
    out |= r[j];
  }
  return out;
}

struct LetterRelations {
  std::vector<Relation> rel;  // per alphabet index
  std::map<Symbol, int> letter_index;
  int nstates = 0;
};

LetterRelations letter_relations(const Automaton& a) {
  LetterRelations lr;
  lr.nstates = static_cast<int>(a.graph.states.size());
  if (lr.nstates > 64)
    throw error("automaton too large for subset computations (>64 states)");
  for (size_t i = 0; i < a.alphabet.size(); ++i)
    lr.letter_index[a.alphabet[i]] = static_cast<int>(i);
  lr.rel.assign(a.alphabet.size(), Relation(lr.nstates, 0));
  for (const Edge& e : a.graph.edges) {
    int p = a.graph.state_index(e.src);
    int q = a.graph.state_index(e.dst);
    lr.rel[lr.letter_index.at(a.label(e.id))][p] |= std::uint64_t{1} << q;
  }
  return lr;
}

std::string subset_name(const Automaton& base, std::uint64_t set) {
  std::vector<std::string> members;
  for (int i = 0; i < static_cast<int>(base.graph.states.size()); ++i)
    if (set & (std::uint64_t{1} << i)) members.push_back(base.graph.states[i]);
  return "{" + join(members, ",") + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// Determinization

SubsetAutomaton determinize_full(const Automaton& a) {
  if (a.empty()) throw error("determinize_full: empty automaton");
  LetterRelations lr = letter_relations(a);
  std::uint64_t full = 0;
  for (int i = 0; i < lr.nstates; ++i) full |= std::uint64_t{1} << i;

  std::map<std::uint64_t, int> index;
  std::vector<std::uint64_t> sets;
  std::deque<std::uint64_t> queue{full};
  index[full] = 0;
  sets.push_back(full);
  SubsetAutomaton out;
  out.automaton.alphabet = a.alphabet;
  while (!queue.empty()) {
    std::uint64_t s = queue.front();
    queue.pop_front();
    for (size_t li = 0; li < lr.rel.size(); ++li) {
      std::uint64_t t = image_of(s, lr.rel[li]);
      if (!t) continue;
      if (!index.count(t)) {
        index[t] = static_cast<int>(sets.size());
        sets.push_back(t);
        queue.push_back(t);
      }
    }
  }
  for (std::uint64_t s : sets) {
    out.automaton.graph.states.push_back(subset_name(a, s));
    std::vector<std::string> members;
    for (int i = 0; i < lr.nstates; ++i)
      if (s & (std::uint64_t{1} << i)) members.push_back(a.graph.states[i]);
    out.subsets.push_back(std::move(members));
  }
  for (size_t si = 0; si < sets.size(); ++si)
    for (size_t li = 0; li < lr.rel.size(); ++li) {
      std::uint64_t t = image_of(sets[si], lr.rel[li]);
      if (!t) continue;
      const Symbol& sym = a.alphabet[li];
      std::string id = out.automaton.graph.states[si] + "-" + sym + "->" +
                       out.automaton.graph.states[index.at(t)];
      out.automaton.graph.edges.push_back(
          {id, out.automaton.graph.states[si],
           out.automaton.graph.states[index.at(t)]});
      out.automaton.labels[id] = sym;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Reduction (right-language quotient of a partial deterministic automaton)

namespace {

// Class ids of the right-language partition (Moore refinement, defined-letter
// initial signature).
std::vector<int> right_language_partition(const Automaton& a) {
  const int n = static_cast<int>(a.graph.states.size());
  const int k = static_cast<int>(a.alphabet.size());
  // next[q][letter] = target or -1
  std::vector<std::vector<int>> next(n, std::vector<int>(k, -1));
  std::map<Symbol, int> li;
  for (int i = 0; i < k; ++i) li[a.alphabet[i]] = i;
  for (const Edge& e : a.graph.edges) {
    int p = a.graph.state_index(e.src);
    int q = a.graph.state_index(e.dst);
    int l = li.at(a.label(e.id));
    if (next[p][l] != -1 && next[p][l] != q)
      throw error("reduce: automaton is not deterministic");
    next[p][l] = q;
  }
  std::vector<int> cls(n, 0);
  {
    std::map<std::vector<char>, int> sig_ids;
    for (int q = 0; q < n; ++q) {
      std::vector<char> sig(k);
      for (int l = 0; l < k; ++l) sig[l] = next[q][l] != -1;
      auto [it, fresh] = sig_ids.insert({sig, static_cast<int>(sig_ids.size())});
      cls[q] = it->second;
    }
  }
  while (true) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> fresh(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{cls[q]};
      for (int l = 0; l < k; ++l)
        sig.push_back(next[q][l] == -1 ? -1 : cls[next[q][l]]);
      auto [it, ins] = sig_ids.insert({sig, static_cast<int>(sig_ids.size())});
      fresh[q] = it->second;
    }
    if (fresh == cls) break;
    cls = std::move(fresh);
  }
  return cls;
}

}  // namespace

ReducedAutomaton reduce(const Automaton& a) {
  std::vector<int> cls = right_language_partition(a);
  const int n = static_cast<int>(a.graph.states.size());
  int nc = n ? *std::max_element(cls.begin(), cls.end()) + 1 : 0;
  // Name each class by its lexicographically least member.
  std::vector<std::string> names(nc);
  for (int q = 0; q < n; ++q) {
    const std::string& s = a.graph.states[q];
    if (names[cls[q]].empty() || s < names[cls[q]]) names[cls[q]] = s;
  }
  ReducedAutomaton out;
  out.automaton.alphabet = a.alphabet;
  out.automaton.graph.states = names;
  std::set<std::tuple<int, Symbol, int>> seen;
  for (const Edge& e : a.graph.edges) {
    int p = cls[a.graph.state_index(e.src)];
    int q = cls[a.graph.state_index(e.dst)];
    if (!seen.insert({p, a.label(e.id), q}).second) continue;
    std::string id = names[p] + "-" + a.label(e.id) + "->" + names[q];
    out.automaton.graph.edges.push_back({id, names[p], names[q]});
    out.automaton.labels[id] = a.label(e.id);
  }
  for (int q = 0; q < n; ++q) out.quotient[a.graph.states[q]] = names[cls[q]];
  return out;
}

// ---------------------------------------------------------------------------
// Krieger and Fischer covers

Automaton krieger(const ShiftPresentation& p) {
  Automaton base = p.presentation();
  if (base.empty()) throw error("krieger: empty shift");
  LetterRelations lr = letter_relations(base);
  const int ngen = static_cast<int>(lr.rel.size());

  // Semigroup of letter-generated relations with shortlex representatives.
  std::map<Relation, int> index;
  std::vector<Relation> elems;
  std::deque<int> queue;
  for (int g = 0; g < ngen; ++g)
    if (!index.count(lr.rel[g])) {
      index[lr.rel[g]] = static_cast<int>(elems.size());
      elems.push_back(lr.rel[g]);
      queue.push_back(index[lr.rel[g]]);
    }
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int g = 0; g < ngen; ++g) {
      Relation r = compose(elems[i], lr.rel[g]);
      if (!index.count(r)) {
        if (elems.size() >= kSemigroupGuard)
          throw error("krieger: relation semigroup exceeds size guard");
        index[r] = static_cast<int>(elems.size());
        elems.push_back(r);
        queue.push_back(index[r]);
      }
    }
  }

  std::uint64_t full = 0;
  for (int i = 0; i < lr.nstates; ++i) full |= std::uint64_t{1} << i;

  // Context sets: images of Q under e (idempotent) then s in S u {id}.
  std::set<std::uint64_t> contexts;
  for (const Relation& e : elems) {
    if (compose(e, e) != e) continue;
    std::uint64_t u = image_of(full, e);
    if (!u) continue;
    contexts.insert(u);
    for (const Relation& s : elems) {
      std::uint64_t v = image_of(u, s);
      if (v) contexts.insert(v);
    }
  }
  if (contexts.empty()) throw error("krieger: empty shift");

  Automaton cover;
  cover.alphabet = base.alphabet;
  std::vector<std::uint64_t> sets(contexts.begin(), contexts.end());
  for (std::uint64_t s : sets)
    cover.graph.states.push_back(subset_name(base, s));
  for (size_t si = 0; si < sets.size(); ++si)
    for (int g = 0; g < ngen; ++g) {
      std::uint64_t t = image_of(sets[si], lr.rel[g]);
      if (!t) continue;
      // Closure under the letter action holds: Q.e.s.a = Q.e.(sa).
      if (!contexts.count(t))
        throw error("krieger: internal closure violation");
      const Symbol& sym = base.alphabet[g];
      std::string id = cover.graph.states[si] + "-" + sym + "->" +
                       subset_name(base, t);
      cover.graph.edges.push_back({id, cover.graph.states[si],
                                   subset_name(base, t)});
      cover.labels[id] = sym;
    }
  // Distinct context sets with equal right languages present the same
  // left-infinite context: quotient them away.
  return reduce(cover).automaton;
}

namespace {

// Strongly connected components with no edges leaving them (sink components).
std::vector<std::vector<int>> sink_components(const Graph& g) {
  auto comps = strongly_connected_components(g);
  std::vector<int> comp_of(g.states.size(), -1);
  for (size_t c = 0; c < comps.size(); ++c)
    for (int q : comps[c]) comp_of[q] = static_cast<int>(c);
  std::vector<char> has_exit(comps.size(), 0);
  for (const Edge& e : g.edges) {
    int cs = comp_of[g.state_index(e.src)];
    int cd = comp_of[g.state_index(e.dst)];
    if (cs != cd) has_exit[cs] = 1;
  }
  std::vector<std::vector<int>> out;
  for (size_t c = 0; c < comps.size(); ++c)
    if (!has_exit[c]) out.push_back(comps[c]);
  return out;
}

Automaton subautomaton(const Automaton& a, const std::vector<int>& states) {
  std::set<std::string> keep;
  for (int q : states) keep.insert(a.graph.states[q]);
  Automaton out;
  out.alphabet = a.alphabet;
  for (const std::string& q : a.graph.states)
    if (keep.count(q)) out.graph.states.push_back(q);
  for (const Edge& e : a.graph.edges)
    if (keep.count(e.src) && keep.count(e.dst)) {
      out.graph.edges.push_back(e);
      out.labels[e.id] = a.label(e.id);
    }
  return out;
}

}  // namespace

Automaton fischer(const ShiftPresentation& p) {
  Automaton cover = krieger(p);
  auto sinks = sink_components(cover.graph);
  if (sinks.size() != 1)
    throw error("fischer: presentation is not irreducible "
                "(Krieger cover has " + std::to_string(sinks.size()) +
                " minimal components)");
  Automaton f = subautomaton(cover, sinks[0]);
  if (block_language_difference(f, cover))
    throw error("fischer: presentation is not irreducible "
                "(minimal component does not recognize the full shift)");
  return f;
}

// ---------------------------------------------------------------------------
// Synchronizing words

std::optional<std::vector<Symbol>> synchronizing_word(const Automaton& a) {
  if (!a.deterministic()) throw error("synchronizing_word: nondeterministic");
  if (a.empty()) return std::nullopt;
  const int n = static_cast<int>(a.graph.states.size());
  const int k = static_cast<int>(a.alphabet.size());
  std::vector<std::vector<int>> next(n, std::vector<int>(k, -1));
  std::map<Symbol, int> li;
  for (int i = 0; i < k; ++i) li[a.alphabet[i]] = i;
  for (const Edge& e : a.graph.edges)
    next[a.graph.state_index(e.src)][li.at(a.label(e.id))] =
        a.graph.state_index(e.dst);

  std::set<int> current;
  for (int q = 0; q < n; ++q) current.insert(q);
  std::vector<Symbol> word;
  if (current.size() == 1) {
    // Convention: a single-state automaton synchronizes on any defined letter.
    for (int l = 0; l < k; ++l)
      if (next[0][l] != -1) return std::vector<Symbol>{a.alphabet[l]};
    return std::nullopt;
  }
  auto apply_word = [&](const std::vector<Symbol>& w) {
    std::set<int> out;
    bool dead = false;
    for (int q : current) {
      int cur = q;
      for (const Symbol& s : w) {
        cur = next[cur][li.at(s)];
        if (cur == -1) break;
      }
      if (cur == -1)
        dead = true;  // partial automaton: paths may die; survivors remain
      else
        out.insert(cur);
    }
    (void)dead;
    return out;
  };
  while (current.size() > 1) {
    // Shortest word merging (or killing) some pair, by BFS on state pairs.
    auto it = current.begin();
    int p = *it++;
    int q = *it;
    std::map<std::pair<int, int>, std::pair<std::pair<int, int>, Symbol>> par;
    std::deque<std::pair<int, int>> bfs{{p, q}};
    par[{p, q}] = {{-1, -1}, ""};
    std::optional<std::pair<int, int>> goal;
    while (!bfs.empty() && !goal) {
      auto [x, y] = bfs.front();
      bfs.pop_front();
      for (int l = 0; l < k; ++l) {
        int nx = x == -1 ? -1 : next[x][l];
        int ny = y == -1 ? -1 : next[y][l];
        if (nx == -1 && ny == -1) continue;
        std::pair<int, int> np{nx, ny};
        if (par.count(np)) continue;
        par[np] = {{x, y}, a.alphabet[l]};
        if (nx == ny || nx == -1 || ny == -1) {
          goal = np;
          break;
        }
        bfs.push_back(np);
      }
    }
    if (!goal) return std::nullopt;
    std::vector<Symbol> w;
    for (auto cur = *goal; par.at(cur).second != "";
         cur = par.at(cur).first)
      w.push_back(par.at(cur).second);
    std::reverse(w.begin(), w.end());
    std::set<int> after = apply_word(w);
    if (after.empty()) return std::nullopt;  // word kills everything: no use
    if (after.size() >= current.size() && after == current)
      return std::nullopt;  // no progress (defensive; BFS guarantees merging)
    current = std::move(after);
    word.insert(word.end(), w.begin(), w.end());
  }
  return word;
}

// ---------------------------------------------------------------------------
// Block languages

std::optional<std::vector<Symbol>> block_language_difference(
    const Automaton& a, const Automaton& b) {
  Automaton ea = a.essential_part(), eb = b.essential_part();
  if (ea.empty() || eb.empty())
    throw error("block_language_difference: empty automaton");
  LetterRelations ra = letter_relations(ea), rb = letter_relations(eb);
  std::set<Symbol> alphabet(ea.alphabet.begin(), ea.alphabet.end());
  alphabet.insert(eb.alphabet.begin(), eb.alphabet.end());
  std::uint64_t fa = 0, fb = 0;
  for (int i = 0; i < ra.nstates; ++i) fa |= std::uint64_t{1} << i;
  for (int i = 0; i < rb.nstates; ++i) fb |= std::uint64_t{1} << i;
  using State = std::pair<std::uint64_t, std::uint64_t>;
  std::map<State, std::pair<State, Symbol>> par;
  std::deque<State> bfs{{fa, fb}};
  par[{fa, fb}] = {{0, 0}, ""};
  while (!bfs.empty()) {
    State s = bfs.front();
    bfs.pop_front();
    for (const Symbol& sym : alphabet) {
      auto ita = ra.letter_index.find(sym);
      auto itb = rb.letter_index.find(sym);
      std::uint64_t na =
          ita == ra.letter_index.end() ? 0 : image_of(s.first, ra.rel[ita->second]);
      std::uint64_t nb =
          itb == rb.letter_index.end() ? 0 : image_of(s.second, rb.rel[itb->second]);
      if (!na && !nb) continue;
      State ns{na, nb};
      if (par.count(ns)) continue;
      par[ns] = {s, sym};
      if (!na || !nb) {
        std::vector<Symbol> w;
        for (State cur = ns; par.at(cur).second != ""; cur = par.at(cur).first)
          w.push_back(par.at(cur).second);
        std::reverse(w.begin(), w.end());
        return w;
      }
      bfs.push_back(ns);
    }
  }
  return std::nullopt;
}

std::vector<Int> block_counts(const Automaton& a, int n) {
  SubsetAutomaton det = determinize_full(a.essential_part());
  const Automaton& d = det.automaton;
  const int ns = static_cast<int>(d.graph.states.size());
  IntMatrix t = IntMatrix::Zero(ns, ns);
  for (const Edge& e : d.graph.edges)
    t(d.graph.state_index(e.src), d.graph.state_index(e.dst)) += 1;
  Eigen::Matrix<Int, 1, Eigen::Dynamic> v =
      Eigen::Matrix<Int, 1, Eigen::Dynamic>::Zero(ns);
  v(0) = 1;  // the full start subset is state 0
  std::vector<Int> out;
  for (int i = 1; i <= n; ++i) {
    v = v * t;
    out.push_back(v.sum());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduction onto the Fischer automaton

ReductionResult reduction_map(const Automaton& a, const Automaton& fischer) {
  ReductionResult res;
  if (auto w = block_language_difference(a, fischer)) {
    res.distinguishing_word = *w;
    return res;
  }
  // Right-language classes across the disjoint union; every state of `a`
  // must share a class with exactly one Fischer state.
  Automaton uni;
  std::set<Symbol> alpha(a.alphabet.begin(), a.alphabet.end());
  alpha.insert(fischer.alphabet.begin(), fischer.alphabet.end());
  uni.alphabet.assign(alpha.begin(), alpha.end());
  for (const std::string& q : a.graph.states) uni.graph.states.push_back("A." + q);
  for (const std::string& q : fischer.graph.states)
    uni.graph.states.push_back("F." + q);
  for (const Edge& e : a.graph.edges) {
    uni.graph.edges.push_back({"A." + e.id, "A." + e.src, "A." + e.dst});
    uni.labels["A." + e.id] = a.label(e.id);
  }
  for (const Edge& e : fischer.graph.edges) {
    uni.graph.edges.push_back({"F." + e.id, "F." + e.src, "F." + e.dst});
    uni.labels["F." + e.id] = fischer.label(e.id);
  }
  ReducedAutomaton red = reduce(uni);
  std::map<std::string, std::string> class_to_f;
  for (const std::string& q : fischer.graph.states) {
    const std::string& cls = red.quotient.at("F." + q);
    if (class_to_f.count(cls))
      throw error("reduction_map: fischer automaton is not reduced");
    class_to_f[cls] = q;
  }
  std::map<std::string, std::string> h;
  for (const std::string& q : a.graph.states) {
    auto it = class_to_f.find(red.quotient.at("A." + q));
    if (it == class_to_f.end()) {
      // Equal languages but a state with no Fischer twin: not a valid
      // strongly connected presentation of the same shift.
      res.distinguishing_word = {};
      return res;
    }
    h[q] = it->second;
  }
  // Edge condition: (p,x,q) is an edge iff (h(p),x,h(q)) is.
  std::set<std::tuple<std::string, Symbol, std::string>> fe;
  for (const Edge& e : fischer.graph.edges)
    fe.insert({e.src, fischer.label(e.id), e.dst});
  for (const Edge& e : a.graph.edges)
    if (!fe.count({h.at(e.src), a.label(e.id), h.at(e.dst)})) {
      res.distinguishing_word = {};
      return res;
    }
  res.map = std::move(h);
  return res;
}

// ---------------------------------------------------------------------------
// Bipartite automata

Automaton bipartite_compose(const AlphMatrix& r, const AlphMatrix& s,
                            const std::vector<std::string>& names1,
                            const std::vector<std::string>& names2) {
  if (r.cols != s.rows || r.rows != s.cols)
    throw error("bipartite_compose: dimension mismatch");
  std::set<Symbol> a1, a2;
  for (const Poly& p : r.a)
    for (const auto& [sym, c] : p) a1.insert(sym);
  for (const Poly& p : s.a)
    for (const auto& [sym, c] : p) a2.insert(sym);
  for (const Symbol& sym : a1)
    if (a2.count(sym))
      throw error("bipartite_compose: alphabets overlap at " + sym);
  const int n1 = r.rows, n2 = r.cols;
  std::vector<std::string> st1, st2;
  for (int i = 0; i < n1; ++i)
    st1.push_back(names1.empty() ? "r" + std::to_string(i) : names1[i]);
  for (int i = 0; i < n2; ++i)
    st2.push_back(names2.empty() ? "s" + std::to_string(i) : names2[i]);
  Automaton out;
  out.alphabet.assign(a1.begin(), a1.end());
  out.alphabet.insert(out.alphabet.end(), a2.begin(), a2.end());
  out.graph.states = st1;
  out.graph.states.insert(out.graph.states.end(), st2.begin(), st2.end());
  auto add = [&](const std::string& p, const std::string& q, const Symbol& sym,
                 Int c) {
    for (Int k = 0; k < c; ++k) {
      std::string id = p + "-" + sym + "->" + q + ":" + std::to_string(k);
      out.graph.edges.push_back({id, p, q});
      out.labels[id] = sym;
    }
  };
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (const auto& [sym, c] : r.at(i, j)) add(st1[i], st2[j], sym, c);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n1; ++j)
      for (const auto& [sym, c] : s.at(i, j)) add(st2[i], st1[j], sym, c);
  return out;
}

std::pair<Automaton, Automaton> bipartite_components(
    const Automaton& a, const BipartitePartition& partition) {
  for (const Edge& e : a.graph.edges) {
    const Symbol& sym = a.label(e.id);
    bool ok1 = partition.states1.count(e.src) && partition.states2.count(e.dst) &&
               partition.alphabet1.count(sym);
    bool ok2 = partition.states2.count(e.src) && partition.states1.count(e.dst) &&
               partition.alphabet2.count(sym);
    if (!ok1 && !ok2)
      throw error("bipartite_components: edge " + e.id +
                  " violates the bipartite partition");
  }
  auto component = [&](const std::set<std::string>& side) {
    Automaton c;
    std::set<Symbol> alpha;
    for (const std::string& q : a.graph.states)
      if (side.count(q)) c.graph.states.push_back(q);
    for (const Edge& e1 : a.graph.edges) {
      if (!side.count(e1.src)) continue;
      for (const Edge& e2 : a.graph.edges) {
        if (e2.src != e1.dst || !side.count(e2.dst)) continue;
        Symbol sym = a.label(e1.id) + a.label(e2.id);
        alpha.insert(sym);
        std::string id = e1.id + "|" + e2.id;
        c.graph.edges.push_back({id, e1.src, e2.dst});
        c.labels[id] = sym;
      }
    }
    c.alphabet.assign(alpha.begin(), alpha.end());
    return c;
  };
  return {component(partition.states1), component(partition.states2)};
}

// ---------------------------------------------------------------------------
// Extension automata

Automaton extension_automaton(const Automaton& a, int m, int n) {
  if (m < 0 || n < 0) throw error("extension_automaton: negative order");
  if (m == 0 && n == 0) return a;
  const int k = m + n + 1;
  auto name = [&](const std::vector<int>& p, int from, int count) {
    std::vector<std::string> ids;
    for (int i = from; i < from + count; ++i)
      ids.push_back(a.graph.edges[p[i]].id);
    return join(ids, "|");
  };
  Automaton out;
  out.alphabet = a.alphabet;
  std::set<std::string> seen;
  for (const auto& p : paths_of_length(a.graph, k - 1)) {
    std::string s = name(p, 0, k - 1);
    if (seen.insert(s).second) out.graph.states.push_back(s);
  }
  for (const auto& p : paths_of_length(a.graph, k)) {
    std::string id = name(p, 0, k);
    out.graph.edges.push_back({id, name(p, 0, k - 1), name(p, 1, k - 1)});
    out.labels[id] = a.label(a.graph.edges[p[m]].id);
  }
  return out;
}

}  // namespace sofic
