#include "sofic/transforms.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "sofic/classify.hpp"

namespace sofic {

namespace {

// ---------------------------------------------------------------------------
// Small matrix helpers

void prune(Poly& p) {
  for (auto it = p.begin(); it != p.end();)
    it = it->second == 0 ? p.erase(it) : std::next(it);
}

}  // namespace

AlphMatrix matrix_product(const AlphMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows()) throw error("matrix product: dimension mismatch");
  AlphMatrix out(a.rows, static_cast<int>(b.cols()));
  for (int i = 0; i < out.rows; ++i)
    for (int k = 0; k < a.cols; ++k)
      for (const auto& [sym, c] : a.at(i, k))
        for (int j = 0; j < out.cols; ++j)
          if (b(k, j) != 0) out.at(i, j)[sym] += c * b(k, j);
  for (Poly& p : out.a) prune(p);
  return out;
}

AlphMatrix matrix_product(const IntMatrix& a, const AlphMatrix& b) {
  if (a.cols() != b.rows) throw error("matrix product: dimension mismatch");
  AlphMatrix out(static_cast<int>(a.rows()), b.cols);
  for (int i = 0; i < out.rows; ++i)
    for (int k = 0; k < b.rows; ++k)
      if (a(i, k) != 0)
        for (int j = 0; j < out.cols; ++j)
          for (const auto& [sym, c] : b.at(k, j))
            out.at(i, j)[sym] += a(i, k) * c;
  for (Poly& p : out.a) prune(p);
  return out;
}

namespace {

AlphMatrix alph_int_product(const AlphMatrix& a, const IntMatrix& b) {
  return matrix_product(a, b);
}

AlphMatrix int_alph_product(const IntMatrix& a, const AlphMatrix& b) {
  return matrix_product(a, b);
}

AlphMatrix alph_transpose(const AlphMatrix& m) {
  AlphMatrix out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
  return out;
}

AlphMatrix int_to_alph(const IntMatrix& m, const Symbol& unit) {
  AlphMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < out.rows; ++i)
    for (int j = 0; j < out.cols; ++j)
      if (m(i, j) != 0) out.at(i, j)[unit] = m(i, j);
  return out;
}

std::string entry_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void require_equal(const IntMatrix& got, const IntMatrix& want,
                   const std::string& what) {
  if (got.rows() != want.rows() || got.cols() != want.cols())
    throw error(what + ": dimension mismatch");
  for (int i = 0; i < got.rows(); ++i)
    for (int j = 0; j < got.cols(); ++j)
      if (got(i, j) != want(i, j))
        throw error(what + ": factorization mismatch at entry " +
                    entry_name(i, j));
}

void require_equal(const AlphMatrix& got, const AlphMatrix& want,
                   const std::string& what) {
  if (got.rows != want.rows || got.cols != want.cols)
    throw error(what + ": dimension mismatch");
  for (int i = 0; i < got.rows; ++i)
    for (int j = 0; j < got.cols; ++j)
      if (got.at(i, j) != want.at(i, j))
        throw error(what + ": factorization mismatch at entry " +
                    entry_name(i, j));
}

// Division matrices. In-splits use one 1 per row (at least one per column);
// out-splits the transposed condition.
std::vector<int> row_division(const IntMatrix& d) {
  std::vector<int> h(d.rows(), -1);
  for (int r = 0; r < d.rows(); ++r)
    for (int q = 0; q < d.cols(); ++q) {
      if (d(r, q) != 0 && d(r, q) != 1)
        throw error("division matrix has entry outside {0,1}");
      if (d(r, q) == 1) {
        if (h[r] != -1) throw error("division matrix row has two 1s");
        h[r] = q;
      }
    }
  std::vector<char> hit(d.cols(), 0);
  for (int r = 0; r < d.rows(); ++r) {
    if (h[r] == -1) throw error("division matrix row has no 1");
    hit[h[r]] = 1;
  }
  for (int q = 0; q < d.cols(); ++q)
    if (!hit[q]) throw error("division matrix column has no 1");
  return h;
}

std::vector<int> column_division(const IntMatrix& d) {
  return row_division(d.transpose());
}

// The separator used to write words as single tokens: empty when every
// symbol is one character (no ambiguity), "." otherwise.
std::string word_separator(const std::vector<Symbol>& alphabet) {
  for (const Symbol& s : alphabet)
    if (s.size() != 1) return ".";
  return "";
}

std::string word_name(const std::vector<Symbol>& w, const std::string& sep) {
  return join(w, sep);
}

std::string fresh_token(const std::string& base,
                        const std::set<std::string>& used) {
  for (int k = 1;; ++k) {
    std::string cand = base + "#" + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Elementary splits

GraphSplitResult graph_split(const Graph& g, const SplitSpec& spec) {
  g.check();
  const int nq = static_cast<int>(g.states.size());
  const IntMatrix m = adjacency(g);
  const bool in = spec.orientation == SplitSpec::Orientation::in;
  const IntMatrix& d = spec.d;
  const IntMatrix& e = spec.e;
  std::vector<int> h;  // split state -> original state
  int nr;
  if (in) {
    if (d.rows() != e.cols() || d.cols() != nq || e.rows() != nq)
      throw error("graph_split: dimension mismatch");
    h = row_division(d);
    nr = static_cast<int>(d.rows());
    require_equal(IntMatrix(e * d), m, "graph_split(in)");
  } else {
    if (d.cols() != e.rows() || d.rows() != nq || e.cols() != nq)
      throw error("graph_split: dimension mismatch");
    h = column_division(d);
    nr = static_cast<int>(d.cols());
    require_equal(IntMatrix(d * e), m, "graph_split(out)");
  }

  // Assign each original edge to a class: (target split state, copy) for
  // in-splits, (source split state, copy) for out-splits.
  std::map<std::tuple<int, int, int>, std::string> class_edge;  // q,r,k -> id
  {
    std::vector<std::vector<std::string>> per_pair(nq * nq);
    for (const Edge& ed : g.edges)
      per_pair[g.state_index(ed.src) * nq + g.state_index(ed.dst)].push_back(
          ed.id);
    for (int q = 0; q < nq; ++q)
      for (int q2 = 0; q2 < nq; ++q2) {
        const auto& ids = per_pair[q * nq + q2];
        size_t next = 0;
        for (int r = 0; r < nr; ++r) {
          if (h[r] != (in ? q2 : q)) continue;
          Int cnt = in ? e(q, r) : e(r, q2);
          for (Int k = 0; k < cnt; ++k) {
            if (next >= ids.size())
              throw error("graph_split: factorization mismatch at entry " +
                          entry_name(q, q2));
            class_edge[{in ? q : q2, r, static_cast<int>(k)}] = ids[next++];
          }
        }
        if (next != ids.size())
          throw error("graph_split: factorization mismatch at entry " +
                      entry_name(q, q2));
      }
  }

  GraphSplitResult res;
  for (int r = 0; r < nr; ++r) {
    std::string name = g.states[h[r]] + "_" + std::to_string(r);
    res.h.states.push_back(name);
    res.merge.states[name] = g.states[h[r]];
  }
  for (int r = 0; r < nr; ++r)
    for (int r2 = 0; r2 < nr; ++r2) {
      Int cnt = in ? e(h[r], r2) : e(r, h[r2]);
      for (Int k = 0; k < cnt; ++k) {
        std::string id = res.h.states[r] + "->" + res.h.states[r2] + ":" +
                         std::to_string(k);
        res.h.edges.push_back({id, res.h.states[r], res.h.states[r2]});
        res.merge.edges[id] = in ? class_edge.at({h[r], r2, static_cast<int>(k)})
                                 : class_edge.at({h[r2], r, static_cast<int>(k)});
      }
    }
  res.h.check();
  return res;
}

LabeledSplitResult labeled_split(const Automaton& a, const SplitSpec& spec) {
  a.check();
  const int nq = static_cast<int>(a.graph.states.size());
  const AlphMatrix m = a.alphabetic_adjacency();
  const bool in = spec.orientation == SplitSpec::Orientation::in;
  const IntMatrix& d = spec.d;
  const AlphMatrix& n = spec.n;
  std::vector<int> h;
  int nr;
  if (in) {
    if (d.rows() != n.cols || d.cols() != nq || n.rows != nq)
      throw error("labeled_split: dimension mismatch");
    h = row_division(d);
    nr = static_cast<int>(d.rows());
    require_equal(alph_int_product(n, d), m, "labeled_split(in)");
  } else {
    if (d.cols() != n.rows || d.rows() != nq || n.cols != nq)
      throw error("labeled_split: dimension mismatch");
    h = column_division(d);
    nr = static_cast<int>(d.cols());
    require_equal(int_alph_product(d, n), m, "labeled_split(out)");
  }

  // q, r, symbol, copy -> original edge id.
  std::map<std::tuple<int, int, Symbol, int>, std::string> class_edge;
  {
    std::map<std::tuple<int, int, Symbol>, std::vector<std::string>> per;
    for (const Edge& ed : a.graph.edges)
      per[{a.graph.state_index(ed.src), a.graph.state_index(ed.dst),
           a.label(ed.id)}]
          .push_back(ed.id);
    for (auto& [key, ids] : per) {
      auto [q, q2, sym] = key;
      size_t next = 0;
      for (int r = 0; r < nr; ++r) {
        if (h[r] != (in ? q2 : q)) continue;
        const Poly& p = in ? n.at(q, r) : n.at(r, q2);
        auto it = p.find(sym);
        Int cnt = it == p.end() ? 0 : it->second;
        for (Int k = 0; k < cnt; ++k) {
          if (next >= ids.size())
            throw error("labeled_split: factorization mismatch at entry " +
                        entry_name(q, q2));
          class_edge[{in ? q : q2, r, sym, static_cast<int>(k)}] = ids[next++];
        }
      }
      if (next != ids.size())
        throw error("labeled_split: factorization mismatch at entry " +
                    entry_name(q, q2));
    }
  }

  LabeledSplitResult res;
  res.b.alphabet = a.alphabet;
  for (int r = 0; r < nr; ++r) {
    std::string name = a.graph.states[h[r]] + "_" + std::to_string(r);
    res.b.graph.states.push_back(name);
    res.merge.states[name] = a.graph.states[h[r]];
  }
  for (int r = 0; r < nr; ++r)
    for (int r2 = 0; r2 < nr; ++r2) {
      const Poly& p = in ? n.at(h[r], r2) : n.at(r, h[r2]);
      for (const auto& [sym, cnt] : p)
        for (Int k = 0; k < cnt; ++k) {
          std::string id = res.b.graph.states[r] + "-" + sym + "->" +
                           res.b.graph.states[r2] + ":" + std::to_string(k);
          res.b.graph.edges.push_back(
              {id, res.b.graph.states[r], res.b.graph.states[r2]});
          res.b.labels[id] = sym;
          res.merge.edges[id] =
              in ? class_edge.at({h[r], r2, sym, static_cast<int>(k)})
                 : class_edge.at({h[r2], r, sym, static_cast<int>(k)});
        }
    }
  res.b.check();
  return res;
}

ConjugacyMaps elementary_conjugacy_maps(const IntMatrix& d,
                                        const AlphMatrix& n) {
  const int nq = n.rows;
  const int nr = n.cols;
  if (d.rows() != nr || d.cols() != nq)
    throw error("elementary_conjugacy_maps: dimension mismatch");
  std::vector<int> h = row_division(d);  // uniqueness of the selection

  ConjugacyMaps maps;
  std::vector<std::string> qnames, rnames;
  for (int i = 0; i < nq; ++i) qnames.push_back("q" + std::to_string(i));
  for (int r = 0; r < nr; ++r) rnames.push_back("r" + std::to_string(r));
  maps.a = automaton_from_alphabetic(alph_int_product(n, d), qnames);
  maps.b = automaton_from_alphabetic(int_alph_product(d, n), rnames);

  // Class of an A-edge: the split target state and copy index it stands for.
  std::map<std::string, std::pair<int, int>> a_class;  // edge id -> (r, copy)
  std::map<std::tuple<int, int, Symbol, int>, std::string> class_to_edge;
  {
    std::map<std::tuple<int, int, Symbol>, std::vector<std::string>> per;
    for (const Edge& ed : maps.a.graph.edges)
      per[{maps.a.graph.state_index(ed.src), maps.a.graph.state_index(ed.dst),
           maps.a.label(ed.id)}]
          .push_back(ed.id);
    for (auto& [key, ids] : per) {
      auto [q, q2, sym] = key;
      size_t next = 0;
      for (int r = 0; r < nr; ++r) {
        if (h[r] != q2) continue;
        auto it = n.at(q, r).find(sym);
        Int cnt = it == n.at(q, r).end() ? 0 : it->second;
        for (Int k = 0; k < cnt; ++k) {
          if (next >= ids.size())
            throw error("elementary_conjugacy_maps: selection mismatch");
          a_class[ids[next]] = {r, static_cast<int>(k)};
          class_to_edge[{q, r, sym, static_cast<int>(k)}] = ids[next++];
        }
      }
      if (next != ids.size())
        throw error("elementary_conjugacy_maps: selection mismatch");
    }
  }

  maps.phi.memory = 1;
  maps.phi.anticipation = 0;
  for (const Edge& e0 : maps.a.graph.edges)
    for (const Edge& e1 : maps.a.graph.edges) {
      if (e0.dst != e1.src) continue;
      auto [r0, k0] = a_class.at(e0.id);
      auto [r1, k1] = a_class.at(e1.id);
      std::string bid = rnames[r0] + "-" + maps.a.label(e1.id) + "->" +
                        rnames[r1] + ":" + std::to_string(k1);
      if (!maps.b.graph.find_edge(bid))
        throw error("elementary_conjugacy_maps: selection mismatch");
      maps.phi.table[{e0.id, e1.id}] = bid;
    }

  maps.gamma.memory = 0;
  maps.gamma.anticipation = 1;
  // B-edge id format is r-sym->r':k; recover (r, r', sym, k) via lookups.
  std::map<std::tuple<int, int, Symbol>, int> b_copy_seen;
  std::map<std::string, std::string> b_to_a;
  {
    std::map<std::tuple<int, int, Symbol>, int> seen;
    for (const Edge& ed : maps.b.graph.edges) {
      int s = maps.b.graph.state_index(ed.src);
      int s2 = maps.b.graph.state_index(ed.dst);
      Symbol sym = maps.b.label(ed.id);
      int k = seen[{s, s2, sym}]++;
      b_to_a[ed.id] = class_to_edge.at({h[s], s2, sym, k});
    }
  }
  for (const Edge& b0 : maps.b.graph.edges)
    for (const Edge& b1 : maps.b.graph.edges) {
      if (b0.dst != b1.src) continue;
      maps.gamma.table[{b0.id, b1.id}] = b_to_a.at(b0.id);
    }
  return maps;
}

// ---------------------------------------------------------------------------
// Symbolic splitting maps and expansions

namespace {

ShiftPresentation symbolic_split(const ShiftPresentation& p,
                                 const std::map<Symbol, Symbol>& f, bool in) {
  Automaton base = p.presentation();
  std::vector<Symbol> involved = base.alphabet;
  for (const Symbol& s : base.alphabet) {
    auto it = f.find(s);
    if (it == f.end())
      throw error("symbolic split: map undefined on symbol " + s);
    involved.push_back(it->second);
  }
  std::string sep = word_separator(involved);
  Automaton out;
  std::set<Symbol> alpha;
  for (const Edge& e : base.graph.edges) out.graph.states.push_back(e.id);
  for (const Edge& e1 : base.graph.edges)
    for (const Edge& e2 : base.graph.edges) {
      if (e1.dst != e2.src) continue;
      Symbol sym = in ? word_name({f.at(base.label(e1.id)), base.label(e2.id)},
                                  sep)
                      : word_name({base.label(e1.id), f.at(base.label(e2.id))},
                                  sep);
      std::string id = e1.id + "|" + e2.id;
      out.graph.edges.push_back({id, e1.id, e2.id});
      out.labels[id] = sym;
      alpha.insert(sym);
    }
  out.alphabet.assign(alpha.begin(), alpha.end());
  return ShiftPresentation::from_automaton(out.essential_part());
}

}  // namespace

ShiftPresentation symbolic_in_split(const ShiftPresentation& p,
                                    const std::map<Symbol, Symbol>& f) {
  return symbolic_split(p, f, true);
}

ShiftPresentation symbolic_out_split(const ShiftPresentation& p,
                                     const std::map<Symbol, Symbol>& f) {
  return symbolic_split(p, f, false);
}

ExpansionResult symbol_expansion(const ShiftPresentation& p, const Symbol& a) {
  Automaton base = p.presentation();
  if (std::find(base.alphabet.begin(), base.alphabet.end(), a) ==
      base.alphabet.end())
    throw error("symbol_expansion: symbol not in alphabet: " + a);
  std::set<std::string> used(base.alphabet.begin(), base.alphabet.end());
  Symbol fresh = fresh_token(a, used);

  Automaton out;
  out.graph.states = base.graph.states;
  std::set<std::string> names(out.graph.states.begin(),
                              out.graph.states.end());
  for (const Edge& e : base.graph.edges) {
    if (base.label(e.id) != a) {
      out.graph.edges.push_back(e);
      out.labels[e.id] = base.label(e.id);
      continue;
    }
    std::string mid = e.id + "^";
    while (names.count(mid)) mid += "^";
    names.insert(mid);
    out.graph.states.push_back(mid);
    out.graph.edges.push_back({e.id + "/1", e.src, mid});
    out.labels[e.id + "/1"] = a;
    out.graph.edges.push_back({e.id + "/2", mid, e.dst});
    out.labels[e.id + "/2"] = fresh;
  }
  out.alphabet = base.alphabet;
  out.alphabet.push_back(fresh);
  std::sort(out.alphabet.begin(), out.alphabet.end());
  out.check();
  return {ShiftPresentation::from_automaton(out), fresh};
}

ShiftPresentation symbol_contraction(const ShiftPresentation& p,
                                     const Symbol& a, const Symbol& fresh) {
  Automaton base = p.presentation();
  if (std::find(base.alphabet.begin(), base.alphabet.end(), fresh) ==
      base.alphabet.end())
    throw error("symbol_contraction: unknown symbol " + fresh);
  const int nq = static_cast<int>(base.graph.states.size());
  std::vector<std::vector<const Edge*>> out_edges(nq), in_edges(nq);
  for (const Edge& e : base.graph.edges) {
    out_edges[base.graph.state_index(e.src)].push_back(&e);
    in_edges[base.graph.state_index(e.dst)].push_back(&e);
  }
  std::vector<char> mid(nq, 0);
  for (int q = 0; q < nq; ++q) {
    if (out_edges[q].empty() || in_edges[q].empty()) continue;
    bool all_fresh = true, all_a = true;
    for (const Edge* e : out_edges[q])
      all_fresh &= base.label(e->id) == fresh;
    for (const Edge* e : in_edges[q]) all_a &= base.label(e->id) == a;
    mid[q] = all_fresh && all_a;
  }
  for (const Edge& e : base.graph.edges)
    if (base.label(e.id) == fresh && !mid[base.graph.state_index(e.src)])
      throw error("symbol_contraction: not an expansion image at edge " +
                  e.id);

  Automaton out;
  for (int q = 0; q < nq; ++q)
    if (!mid[q]) out.graph.states.push_back(base.graph.states[q]);
  for (const Edge& e : base.graph.edges) {
    Symbol sym = base.label(e.id);
    if (sym == fresh) continue;
    int dst = base.graph.state_index(e.dst);
    if (sym == a && mid[dst]) {
      for (const Edge* w : out_edges[dst]) {
        std::string id = e.id + "&" + w->id;
        out.graph.edges.push_back({id, e.src, w->dst});
        out.labels[id] = a;
      }
    } else {
      out.graph.edges.push_back(e);
      out.labels[e.id] = sym;
    }
  }
  for (const Symbol& s : base.alphabet)
    if (s != fresh) out.alphabet.push_back(s);
  out.check();
  return ShiftPresentation::from_automaton(out);
}

Graph graph_expansion(const Graph& g, const std::string& p) {
  g.check();
  if (!g.has_state(p)) throw error("graph_expansion: unknown state " + p);
  std::set<std::string> used(g.states.begin(), g.states.end());
  std::string pp = fresh_token(p, used);
  Graph out;
  for (const std::string& q : g.states) {
    out.states.push_back(q);
    if (q == p) out.states.push_back(pp);
  }
  std::set<std::string> ids;
  for (const Edge& e : g.edges) ids.insert(e.id);
  for (const Edge& e : g.edges)
    out.edges.push_back({e.id, e.src, e.dst == p ? pp : e.dst});
  std::string nid = pp + "->" + p;
  while (ids.count(nid)) nid += "+";
  out.edges.push_back({nid, pp, p});
  out.check();
  return out;
}

Automaton automaton_expansion(const Automaton& a, const std::string& p,
                              const Symbol& fresh) {
  a.check();
  if (!a.graph.has_state(p))
    throw error("automaton_expansion: unknown state " + p);
  if (std::find(a.alphabet.begin(), a.alphabet.end(), fresh) !=
      a.alphabet.end())
    throw error("automaton_expansion: symbol already in use: " + fresh);
  std::optional<Symbol> in_label;
  for (const Edge& e : a.graph.edges) {
    if (e.dst != p) continue;
    if (in_label && *in_label != a.label(e.id))
      throw error("automaton_expansion: in-edges of " + p +
                  " carry distinct labels");
    in_label = a.label(e.id);
  }
  if (!in_label)
    throw error("automaton_expansion: state " + p + " has no in-edge");
  for (const Edge& e : a.graph.edges)
    if (a.label(e.id) == *in_label && e.dst != p)
      throw error("automaton_expansion: label " + *in_label +
                  " occurs outside the in-edges of " + p);

  Automaton out;
  out.graph = graph_expansion(a.graph, p);
  out.labels = a.labels;
  for (const Edge& e : out.graph.edges)
    if (!out.labels.count(e.id)) out.labels[e.id] = fresh;  // the new edge
  out.alphabet = a.alphabet;
  out.alphabet.push_back(fresh);
  std::sort(out.alphabet.begin(), out.alphabet.end());
  out.check();
  return out;
}

// ---------------------------------------------------------------------------
// Strong shift equivalence certificates

namespace {

std::string dim_name(Int r, Int c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

std::optional<std::string> int_step_check(const IntMatrix& cur,
                                          const SSECertificate::Step& st,
                                          IntMatrix& next) {
  if (st.r.rows() != cur.rows() || st.s.cols() != cur.cols() ||
      st.r.cols() != st.s.rows())
    return "dimension mismatch: M is " + dim_name(cur.rows(), cur.cols()) +
           ", R is " + dim_name(st.r.rows(), st.r.cols()) + ", S is " +
           dim_name(st.s.rows(), st.s.cols());
  if (st.r.minCoeff() < 0 || st.s.minCoeff() < 0)
    return "negative entry in R or S";
  IntMatrix rs = st.r * st.s;
  for (int i = 0; i < cur.rows(); ++i)
    for (int j = 0; j < cur.cols(); ++j)
      if (rs(i, j) != cur(i, j))
        return "product mismatch: (RS)" + entry_name(i, j) + " = " +
               std::to_string(rs(i, j)) + ", M" + entry_name(i, j) + " = " +
               std::to_string(cur(i, j));
  next = st.s * st.r;
  return std::nullopt;
}

std::optional<std::string> sym_step_check(const AlphMatrix& cur,
                                          const SSECertificate::Step& st,
                                          AlphMatrix& next) {
  if (st.sym_r.rows != cur.rows || st.sym_s.cols != cur.cols ||
      st.sym_r.cols != st.sym_s.rows)
    return std::string("dimension mismatch between M, R and S");
  AlphMatrix rs;
  try {
    rs = relabel(matrix_product(st.sym_r, st.sym_s), st.bij_first);
  } catch (const error& e) {
    return "first bijection failure: " + std::string(e.what());
  }
  for (int i = 0; i < cur.rows; ++i)
    for (int j = 0; j < cur.cols; ++j)
      if (rs.at(i, j) != cur.at(i, j))
        return "product mismatch at entry " + entry_name(i, j);
  try {
    next = relabel(matrix_product(st.sym_s, st.sym_r), st.bij_second);
  } catch (const error& e) {
    return "second bijection failure: " + std::string(e.what());
  }
  return std::nullopt;
}

}  // namespace

SSEVerdict verify_sse(const SSECertificate& cert) {
  SSEVerdict v;
  if (cert.kind == SSECertificate::Kind::integer) {
    IntMatrix cur = cert.first_int;
    for (size_t i = 0; i < cert.steps.size(); ++i) {
      IntMatrix next;
      if (auto why = int_step_check(cur, cert.steps[i], next)) {
        v.step = static_cast<int>(i);
        v.reason = *why;
        return v;
      }
      cur = next;
    }
    if (cur.rows() != cert.last_int.rows() ||
        cur.cols() != cert.last_int.cols() || cur != cert.last_int) {
      v.reason = "endpoint mismatch: chain does not reach the final matrix";
      return v;
    }
  } else {
    AlphMatrix cur = cert.first_sym;
    for (size_t i = 0; i < cert.steps.size(); ++i) {
      AlphMatrix next;
      if (auto why = sym_step_check(cur, cert.steps[i], next)) {
        v.step = static_cast<int>(i);
        v.reason = *why;
        return v;
      }
      cur = next;
    }
    if (!(cur == cert.last_sym)) {
      v.reason = "endpoint mismatch: chain does not reach the final matrix";
      return v;
    }
  }
  v.valid = true;
  return v;
}

SSECertificate certificate_for_splits(const IntMatrix& m0,
                                      const std::vector<SplitSpec>& specs) {
  SSECertificate cert;
  cert.kind = SSECertificate::Kind::integer;
  cert.first_int = m0;
  IntMatrix cur = m0;
  for (const SplitSpec& spec : specs) {
    SSECertificate::Step st;
    if (spec.orientation == SplitSpec::Orientation::in) {
      require_equal(IntMatrix(spec.e * spec.d), cur, "certificate_for_splits");
      st.r = spec.e;
      st.s = spec.d;
      cur = spec.d * spec.e;
    } else {
      require_equal(IntMatrix(spec.d * spec.e), cur, "certificate_for_splits");
      st.r = spec.d;
      st.s = spec.e;
      cur = spec.e * spec.d;
    }
    cert.steps.push_back(st);
  }
  cert.last_int = cur;
  return cert;
}

SSECertificate certificate_for_splits(const Automaton& a,
                                      const std::vector<SplitSpec>& specs) {
  const Symbol unit = "1";
  if (std::find(a.alphabet.begin(), a.alphabet.end(), unit) !=
      a.alphabet.end())
    throw error("certificate_for_splits: alphabet symbol '1' is reserved");
  SSECertificate cert;
  cert.kind = SSECertificate::Kind::symbolic;
  cert.first_sym = a.alphabetic_adjacency();
  AlphMatrix cur = cert.first_sym;
  for (const SplitSpec& spec : specs) {
    SSECertificate::Step st;
    AlphMatrix one = int_to_alph(spec.d, unit);
    auto word_bijection = [&](const Alph2Matrix& prod, bool unit_first) {
      std::map<Word2, Symbol> bij;
      for (const Poly2& p : prod.a)
        for (const auto& [w, c] : p)
          bij[w] = unit_first ? w.second : w.first;
      return bij;
    };
    if (spec.orientation == SplitSpec::Orientation::in) {
      require_equal(alph_int_product(spec.n, spec.d), cur,
                    "certificate_for_splits");
      st.sym_r = spec.n;
      st.sym_s = one;
      st.bij_first = word_bijection(matrix_product(spec.n, one), false);
      st.bij_second = word_bijection(matrix_product(one, spec.n), true);
      cur = int_alph_product(spec.d, spec.n);
    } else {
      require_equal(int_alph_product(spec.d, spec.n), cur,
                    "certificate_for_splits");
      st.sym_r = one;
      st.sym_s = spec.n;
      st.bij_first = word_bijection(matrix_product(one, spec.n), true);
      st.bij_second = word_bijection(matrix_product(spec.n, one), false);
      cur = alph_int_product(spec.n, spec.d);
    }
    cert.steps.push_back(st);
  }
  cert.last_sym = cur;
  return cert;
}

// ---------------------------------------------------------------------------
// Standard local automata, masking, completion

Automaton standard_local_automaton(const std::vector<Symbol>& alphabet, int m,
                                   int n) {
  if (m < 0 || n < 0 || m + n < 1)
    throw error("standard_local_automaton: need m+n >= 1");
  if (alphabet.empty()) throw error("standard_local_automaton: empty alphabet");
  const int len = m + n;
  const int k = static_cast<int>(alphabet.size());
  std::string sep = word_separator(alphabet);

  std::vector<std::vector<Symbol>> words;
  std::vector<int> idx(len, 0);
  while (true) {
    std::vector<Symbol> w;
    for (int i : idx) w.push_back(alphabet[i]);
    words.push_back(w);
    int pos = len - 1;
    while (pos >= 0 && idx[pos] == k - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }

  Automaton out;
  out.alphabet = alphabet;
  std::map<std::string, int> index;
  for (const auto& w : words) {
    index[word_name(w, sep)] = static_cast<int>(out.graph.states.size());
    out.graph.states.push_back(word_name(w, sep));
  }
  for (const auto& w : words)
    for (const Symbol& c : alphabet) {
      std::vector<Symbol> target(w.begin() + 1, w.end());
      target.push_back(c);
      Symbol lab = n >= 1 ? w[m] : c;
      std::string src = word_name(w, sep), dst = word_name(target, sep);
      std::string id = src + "-" + lab + "->" + dst;
      out.graph.edges.push_back({id, src, dst});
      out.labels[id] = lab;
    }
  out.check();
  return out;
}

bool is_complete(const Automaton& a) {
  a.check();
  if (a.empty()) return false;
  const int nq = static_cast<int>(a.graph.states.size());
  std::map<Symbol, std::vector<std::pair<int, int>>> arcs;
  for (const Edge& e : a.graph.edges)
    arcs[a.label(e.id)].push_back(
        {a.graph.state_index(e.src), a.graph.state_index(e.dst)});
  std::set<std::vector<char>> seen;
  std::deque<std::vector<char>> work;
  std::vector<char> full(nq, 1);
  seen.insert(full);
  work.push_back(full);
  while (!work.empty()) {
    std::vector<char> cur = work.front();
    work.pop_front();
    for (const Symbol& sym : a.alphabet) {
      std::vector<char> img(nq, 0);
      bool nonempty = false;
      auto it = arcs.find(sym);
      if (it != arcs.end())
        for (auto [s, t] : it->second)
          if (cur[s]) {
            img[t] = 1;
            nonempty = true;
          }
      if (!nonempty) return false;
      if (seen.insert(img).second) work.push_back(img);
    }
  }
  return true;
}

MaskingResult masking_step(const Automaton& a, const Automaton& b,
                           const Automaton& bprime, const IntMatrix& d,
                           const AlphMatrix& n) {
  a.check();
  b.check();
  bprime.check();
  const int nq = static_cast<int>(a.graph.states.size());
  const int nrb = static_cast<int>(b.graph.states.size());
  if (n.rows != nq || n.cols != nrb || d.rows() != nrb || d.cols() != nq)
    throw error("masking_step: dimension mismatch");
  require_equal(alph_int_product(n, d), a.alphabetic_adjacency(),
                "masking_step: M(A) = N D");
  require_equal(int_alph_product(d, n), b.alphabetic_adjacency(),
                "masking_step: M(B) = D N");

  for (const std::string& q : b.graph.states)
    if (!bprime.graph.has_state(q))
      throw error("masking_step: B' does not contain state " + q);

  // Match B edges into B' by (src, symbol, dst) multiset; leftovers are the
  // added edges, kept in B' edge order and identified by their B' edge ids.
  std::map<std::tuple<std::string, Symbol, std::string>, Int> want;
  for (const Edge& e : b.graph.edges) ++want[{e.src, b.label(e.id), e.dst}];
  std::vector<const Edge*> added;
  for (const Edge& e : bprime.graph.edges) {
    auto key = std::make_tuple(e.src, bprime.label(e.id), e.dst);
    auto it = want.find(key);
    if (it != want.end() && it->second > 0)
      --it->second;
    else
      added.push_back(&e);
  }
  for (const auto& [key, c] : want)
    if (c > 0)
      throw error("masking_step: B' does not contain edge " +
                  std::get<0>(key) + " -" + std::get<1>(key) + "-> " +
                  std::get<2>(key));

  const int nrp = static_cast<int>(bprime.graph.states.size());
  const int nqp = nq + static_cast<int>(added.size());

  MaskingResult res;
  res.aprime.alphabet = a.alphabet;
  {
    std::set<Symbol> alpha(a.alphabet.begin(), a.alphabet.end());
    for (const Symbol& s : bprime.alphabet) alpha.insert(s);
    res.aprime.alphabet.assign(alpha.begin(), alpha.end());
  }
  res.aprime.graph.states = a.graph.states;
  res.aprime.graph.edges = a.graph.edges;
  res.aprime.labels = a.labels;
  std::set<std::string> names(a.graph.states.begin(), a.graph.states.end());
  std::vector<std::string> added_names;
  for (const Edge* e : added) {
    std::string name = e->id;
    while (names.count(name)) name += "'";
    names.insert(name);
    added_names.push_back(name);
    res.aprime.graph.states.push_back(name);
  }

  res.dprime = IntMatrix::Zero(nrp, nqp);
  res.nprime = AlphMatrix(nqp, nrp);
  std::vector<int> b_index(nrp, -1);  // B' state -> B state index
  for (int r = 0; r < nrp; ++r)
    b_index[r] = b.graph.state_index(bprime.graph.states[r]);
  for (int r = 0; r < nrp; ++r)
    if (b_index[r] >= 0)
      for (int q = 0; q < nq; ++q) res.dprime(r, q) = d(b_index[r], q);
  for (size_t u = 0; u < added.size(); ++u)
    res.dprime(bprime.graph.state_index(added[u]->src),
               nq + static_cast<int>(u)) = 1;
  for (int q = 0; q < nq; ++q)
    for (int r = 0; r < nrp; ++r)
      if (b_index[r] >= 0) res.nprime.at(q, r) = n.at(q, b_index[r]);
  for (size_t u = 0; u < added.size(); ++u)
    res.nprime.at(nq + static_cast<int>(u),
                  bprime.graph.state_index(added[u]->dst))
        [bprime.label(added[u]->id)] = 1;

  // Realize M(A') = N' D', keeping A's edges verbatim.
  AlphMatrix madj = alph_int_product(res.nprime, res.dprime);
  std::map<std::tuple<int, int, Symbol>, Int> have;
  for (const Edge& e : a.graph.edges)
    ++have[{a.graph.state_index(e.src), a.graph.state_index(e.dst),
            a.label(e.id)}];
  std::set<std::string> ids;
  for (const Edge& e : res.aprime.graph.edges) ids.insert(e.id);
  for (int i = 0; i < nqp; ++i)
    for (int j = 0; j < nqp; ++j)
      for (const auto& [sym, c] : madj.at(i, j)) {
        Int existing = 0;
        if (auto it = have.find({i, j, sym}); it != have.end())
          existing = it->second;
        if (existing > c)
          throw error("masking_step: A edges exceed N'D' at entry " +
                      entry_name(i, j));
        for (Int k = existing; k < c; ++k) {
          std::string id = "+" + res.aprime.graph.states[i] + "-" + sym +
                           "->" + res.aprime.graph.states[j] + ":" +
                           std::to_string(k);
          while (ids.count(id)) id += "+";
          ids.insert(id);
          res.aprime.graph.edges.push_back(
              {id, res.aprime.graph.states[i], res.aprime.graph.states[j]});
          res.aprime.labels[id] = sym;
        }
      }
  res.aprime.check();
  require_equal(int_alph_product(res.dprime, res.nprime),
                bprime.alphabetic_adjacency(), "masking_step: M(B') = D'N'");
  return res;
}

// ---------------------------------------------------------------------------
// Completion of local automata

namespace {

// One level of the completion chain: states are triples (u, q, v) where u
// labels a path of length i into q and v a path of length j out of q.
struct ChainLevel {
  Automaton aut;
  std::vector<std::vector<Symbol>> us, vs;
  std::vector<int> qs;
  std::map<std::tuple<std::string, std::string, std::string>, int> index;
};

std::vector<std::set<std::vector<Symbol>>> words_into(const Automaton& a,
                                                      int len, bool out) {
  const int nq = static_cast<int>(a.graph.states.size());
  std::vector<std::set<std::vector<Symbol>>> res(nq);
  if (len == 0) {
    // insert({}) would pick the initializer-list overload and insert nothing;
    // we want the empty word.
    for (int q = 0; q < nq; ++q) res[q].insert(std::vector<Symbol>{});
    return res;
  }
  for (const auto& path : paths_of_length(a.graph, len)) {
    std::vector<Symbol> w;
    for (int ei : path) w.push_back(a.label(a.graph.edges[ei].id));
    const std::string& anchor =
        out ? a.graph.edges[path.front()].src : a.graph.edges[path.back()].dst;
    res[a.graph.state_index(anchor)].insert(w);
  }
  return res;
}

ChainLevel build_level(const Automaton& a, int i, int j,
                       const std::string& sep) {
  ChainLevel lv;
  if (i == 0 && j == 0) {
    lv.aut = a;
    for (int q = 0; q < static_cast<int>(a.graph.states.size()); ++q) {
      lv.us.push_back({});
      lv.vs.push_back({});
      lv.qs.push_back(q);
      lv.index[{"", a.graph.states[q], ""}] = q;
    }
    return lv;
  }
  auto in_words = words_into(a, i, false);
  auto out_words = words_into(a, j, true);
  lv.aut.alphabet = a.alphabet;
  const int nq = static_cast<int>(a.graph.states.size());
  for (int q = 0; q < nq; ++q)
    for (const auto& u : in_words[q])
      for (const auto& v : out_words[q]) {
        lv.index[{word_name(u, sep), a.graph.states[q], word_name(v, sep)}] =
            static_cast<int>(lv.aut.graph.states.size());
        lv.aut.graph.states.push_back(word_name(u, sep) + "|" +
                                      a.graph.states[q] + "|" +
                                      word_name(v, sep));
        lv.us.push_back(u);
        lv.vs.push_back(v);
        lv.qs.push_back(q);
      }
  auto shifted = [&](const std::vector<Symbol>& u, const Symbol& c) {
    std::vector<Symbol> r = u;
    r.push_back(c);
    if (static_cast<int>(r.size()) > i) r.erase(r.begin());
    return r;
  };
  for (size_t s = 0; s < lv.qs.size(); ++s) {
    int q = lv.qs[s];
    const auto& u = lv.us[s];
    const auto& v = lv.vs[s];
    for (const Edge& e : a.graph.edges) {
      if (a.graph.state_index(e.src) != q) continue;
      Symbol c = a.label(e.id);
      if (j >= 1 && c != v[0]) continue;
      int q2 = a.graph.state_index(e.dst);
      std::vector<Symbol> u2 = shifted(u, c);
      if (j == 0) {
        auto it = lv.index.find(
            {word_name(u2, sep), a.graph.states[q2], ""});
        if (it == lv.index.end()) throw error("completion: missing state");
        std::string src = lv.aut.graph.states[s];
        std::string dst = lv.aut.graph.states[it->second];
        std::string id = src + "-" + c + "->" + dst;
        lv.aut.graph.edges.push_back({id, src, dst});
        lv.aut.labels[id] = c;
      } else {
        std::vector<Symbol> v2(v.begin() + 1, v.end());
        for (const Symbol& x : a.alphabet) {
          std::vector<Symbol> vx = v2;
          vx.push_back(x);
          auto it = lv.index.find(
              {word_name(u2, sep), a.graph.states[q2], word_name(vx, sep)});
          if (it == lv.index.end()) continue;
          std::string src = lv.aut.graph.states[s];
          std::string dst = lv.aut.graph.states[it->second];
          std::string id = src + "-" + c + "->" + dst;
          lv.aut.graph.edges.push_back({id, src, dst});
          lv.aut.labels[id] = c;
        }
      }
    }
  }
  lv.aut.check();
  return lv;
}

// Count of c-labeled edges between two base states (parallel equal-label
// edges are rejected upstream, so this is 0 or 1).
Int edge_count(const Automaton& a, int q, const Symbol& c, int q2) {
  Int cnt = 0;
  for (const Edge& e : a.graph.edges)
    if (a.graph.state_index(e.src) == q && a.graph.state_index(e.dst) == q2 &&
        a.label(e.id) == c)
      ++cnt;
  return cnt;
}

// Elementary factorization between consecutive chain levels.
void level_matrices(const Automaton& base, const ChainLevel& prev,
                    const ChainLevel& cur, bool in_step,
                    const std::string& sep, IntMatrix& d, AlphMatrix& n) {
  const int np = static_cast<int>(prev.qs.size());
  const int nc = static_cast<int>(cur.qs.size());
  if (in_step) {
    d = IntMatrix::Zero(nc, np);
    n = AlphMatrix(np, nc);
    for (int s = 0; s < nc; ++s) {
      const auto& u = cur.us[s];
      std::vector<Symbol> utail(u.begin() + 1, u.end());
      d(s, prev.index.at({word_name(utail, sep),
                          base.graph.states[cur.qs[s]],
                          word_name(cur.vs[s], sep)})) = 1;
      // N_{(u',p),(u,q)} = c * #(c-edges p -> q), c the last letter of u.
      Symbol c = u.back();
      std::vector<Symbol> uhead(u.begin(), u.end() - 1);
      for (int p = 0; p < static_cast<int>(base.graph.states.size()); ++p) {
        Int cnt = edge_count(base, p, c, cur.qs[s]);
        if (cnt == 0) continue;
        auto it = prev.index.find({word_name(uhead, sep),
                                   base.graph.states[p],
                                   word_name(cur.vs[s], sep)});
        if (it == prev.index.end()) continue;
        n.at(it->second, s)[c] += cnt;
      }
    }
  } else {
    d = IntMatrix::Zero(np, nc);
    n = AlphMatrix(nc, np);
    for (int s = 0; s < nc; ++s) {
      const auto& v = cur.vs[s];
      std::vector<Symbol> vhead(v.begin(), v.end() - 1);
      d(prev.index.at({word_name(cur.us[s], sep),
                       base.graph.states[cur.qs[s]], word_name(vhead, sep)}),
        s) = 1;
      // N_{(u,q,v),(u'',q'',v'')} = c * #(c-edges q -> q''), c = v[0].
      Symbol c = v.front();
      std::vector<Symbol> vtail(v.begin() + 1, v.end());
      std::vector<Symbol> u2 = cur.us[s];
      u2.push_back(c);
      while (static_cast<int>(u2.size()) > static_cast<int>(cur.us[s].size()))
        u2.erase(u2.begin());
      for (int q2 = 0; q2 < static_cast<int>(base.graph.states.size());
           ++q2) {
        Int cnt = edge_count(base, cur.qs[s], c, q2);
        if (cnt == 0) continue;
        auto it = prev.index.find({word_name(u2, sep),
                                   base.graph.states[q2],
                                   word_name(vtail, sep)});
        if (it == prev.index.end()) continue;
        n.at(s, it->second)[c] += cnt;
      }
    }
  }
}

bool has_parallel_equal_label(const Automaton& a) {
  std::set<std::tuple<std::string, Symbol, std::string>> seen;
  for (const Edge& e : a.graph.edges)
    if (!seen.insert({e.src, a.label(e.id), e.dst}).second) return true;
  return false;
}

}  // namespace

Automaton complete_local(const Automaton& a) {
  a.check();
  if (!a.essential()) throw error("complete_local: automaton not essential");
  if (has_parallel_equal_label(a))
    throw error("complete_local: parallel equal-label edges");
  LocalityWitness lw = locality(a);
  if (!lw.local) throw error("complete_local: automaton is not local");
  if (is_complete(a)) return a;

  std::string sep = word_separator(a.alphabet);
  int m = -1, n = -1;
  for (auto [pm, pn] : lw.minimal_pairs)
    if (m == -1 || pm + pn < m + n || (pm + pn == m + n && pm < m)) {
      m = pm;
      n = pn;
    }
  if (m + n == 0) m = 1;

  std::string failure;
  for (int attempt = 0; attempt < 3; ++attempt, ++m, ++n) {
    // Chain of levels: m in-steps, then n out-steps.
    std::vector<ChainLevel> levels;
    std::vector<bool> is_in;  // step k: levels[k-1] -> levels[k]
    for (int i = 0; i <= m; ++i) {
      levels.push_back(build_level(a, i, 0, sep));
      if (i > 0) is_in.push_back(true);
    }
    for (int j = 1; j <= n; ++j) {
      levels.push_back(build_level(a, m, j, sep));
      is_in.push_back(false);
    }
    std::vector<IntMatrix> ds(levels.size());
    std::vector<AlphMatrix> ns(levels.size());
    for (size_t k = 1; k < levels.size(); ++k)
      level_matrices(a, levels[k - 1], levels[k], is_in[k - 1], sep, ds[k],
                     ns[k]);

    // Rename the top level to label words; injective by (m,n)-locality.
    ChainLevel& top = levels.back();
    {
      std::map<std::string, std::string> rename;
      std::set<std::string> used;
      bool injective = true;
      for (size_t s = 0; s < top.qs.size(); ++s) {
        std::vector<Symbol> w = top.us[s];
        w.insert(w.end(), top.vs[s].begin(), top.vs[s].end());
        std::string name = word_name(w, sep);
        if (!used.insert(name).second) injective = false;
        rename[top.aut.graph.states[s]] = name;
      }
      if (!injective) {
        failure = "state naming not injective";
        continue;
      }
      for (std::string& q : top.aut.graph.states) q = rename.at(q);
      for (Edge& e : top.aut.graph.edges) {
        e.src = rename.at(e.src);
        e.dst = rename.at(e.dst);
      }
    }

    try {
      Automaton cur = standard_local_automaton(a.alphabet, m, n);
      for (size_t k = levels.size() - 1; k >= 1; --k) {
        if (is_in[k - 1]) {
          cur = masking_step(levels[k - 1].aut, levels[k].aut, cur, ds[k],
                             ns[k])
                    .aprime;
        } else {
          IntMatrix dt = ds[k].transpose();
          cur = reverse(masking_step(reverse(levels[k - 1].aut),
                                     reverse(levels[k].aut), reverse(cur),
                                     dt, alph_transpose(ns[k]))
                            .aprime);
        }
      }
      // Audits: contains a, complete, local.
      bool ok = cur.essential();
      for (const std::string& q : a.graph.states)
        ok = ok && cur.graph.has_state(q);
      for (const Edge& e : a.graph.edges) {
        const Edge* f = cur.graph.find_edge(e.id);
        ok = ok && f && f->src == e.src && f->dst == e.dst &&
             cur.label(e.id) == a.label(e.id);
      }
      ok = ok && is_complete(cur) && locality(cur).local;
      if (ok) return cur;
      failure = "postcondition audit failed";
    } catch (const error& e) {
      failure = e.what();
    }
  }
  throw error("complete_local: completion failed: " + failure);
}

}  // namespace sofic
