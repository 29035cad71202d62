// Randomized, seeded property suite: invariance of zeta prefixes,
// Bowen-Franks data and syntactic graphs under splits and expansions, and
// the masking-step postconditions.
#include "doctest.h"

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "sofic/classify.hpp"
#include "sofic/invariants.hpp"
#include "sofic/semigroup.hpp"
#include "sofic/transforms.hpp"

using namespace sofic;
using corpus::Rng;

namespace {

// Random division matrix: rows R, columns Q <= R, one 1 per row, every
// column hit.
IntMatrix random_division(Rng& rng, int r, int q) {
  IntMatrix d = IntMatrix::Zero(r, q);
  for (int j = 0; j < q; ++j) d(j, j) = 1;  // each column hit once
  for (int i = q; i < r; ++i) d(i, rng.uniform(0, q - 1)) = 1;
  return d;
}

IntMatrix random_count(Rng& rng, int r, int c, int hi) {
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.uniform(0, hi);
  return m;
}

AlphMatrix random_alphabetic(Rng& rng, int r, int c,
                             const std::vector<Symbol>& alphabet) {
  AlphMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      int terms = rng.uniform(0, 2);
      for (int t = 0; t < terms; ++t)
        m.at(i, j)[alphabet[rng.uniform(0, static_cast<int>(alphabet.size()) -
                                               1)]] += 1;
    }
  return m;
}

// Every state must touch an edge, or invariants that take essential parts
// degenerate; retry generation until the product graph has no zero rows and
// columns overall (cheap surrogate: nonzero matrix).
bool degenerate(const IntMatrix& m) {
  return m.isZero() || spectral_radius(m) < 1.0;
}

Int det_i_minus(const IntMatrix& m) {
  return integer_determinant(IntMatrix(IntMatrix::Identity(m.rows(), m.cols()) - m));
}

// Round-trip: quotient the split object through the merge map and compare
// with the original.
void check_merge_round_trip(const Graph& g, const Graph& h,
                            const MergeMap& merge) {
  std::set<std::string> edge_images;
  for (const Edge& f : h.edges) {
    const std::string& orig_id = merge.edges.at(f.id);
    const Edge* orig = g.find_edge(orig_id);
    REQUIRE(orig != nullptr);
    CHECK(merge.states.at(f.src) == orig->src);
    CHECK(merge.states.at(f.dst) == orig->dst);
    edge_images.insert(orig_id);
  }
  CHECK(edge_images.size() == g.edges.size());
  std::set<std::string> state_images;
  for (const auto& [hs, gs] : merge.states) state_images.insert(gs);
  CHECK(state_images.size() == g.states.size());
}

}  // namespace

TEST_CASE("zeta, Bowen-Franks and merge round-trips under graph splits") {
  Rng rng(2024);
  int done = 0;
  while (done < 100) {
    int q = rng.uniform(1, 3), r = rng.uniform(q, 4);
    bool in_split = rng.uniform(0, 1) == 0;
    SplitSpec spec;
    spec.orientation =
        in_split ? SplitSpec::Orientation::in : SplitSpec::Orientation::out;
    IntMatrix m;
    if (in_split) {
      spec.e = random_count(rng, q, r, 2);
      spec.d = random_division(rng, r, q);
      m = spec.e * spec.d;
    } else {
      spec.d = IntMatrix(random_division(rng, r, q).transpose());
      spec.e = random_count(rng, r, q, 2);
      m = spec.d * spec.e;
    }
    if (degenerate(m)) continue;
    ++done;
    Graph g = graph_from_adjacency(m);
    GraphSplitResult res = graph_split(g, spec);
    IntMatrix mh = adjacency(res.h);
    // p_1..p_6 preserved.
    CHECK(periodic_counts_edge(m, 6).counts ==
          periodic_counts_edge(mh, 6).counts);
    // Bowen-Franks data preserved.
    CHECK(bowen_franks(m).group == bowen_franks(mh).group);
    CHECK(det_i_minus(m) == det_i_minus(mh));
    check_merge_round_trip(g, res.h, res.merge);
  }
}

TEST_CASE("syntactic graphs and zeta preserved under labeled splits") {
  Rng rng(77);
  std::vector<Symbol> alphabet = {"a", "b"};
  int done = 0;
  while (done < 60) {
    int q = rng.uniform(1, 3), r = rng.uniform(q, 4);
    bool in_split = rng.uniform(0, 1) == 0;
    SplitSpec spec;
    AlphMatrix m(0, 0);
    if (in_split) {
      spec.orientation = SplitSpec::Orientation::in;
      spec.n = random_alphabetic(rng, q, r, alphabet);
      spec.d = random_division(rng, r, q);
      m = matrix_product(spec.n, spec.d);
    } else {
      spec.orientation = SplitSpec::Orientation::out;
      spec.d = IntMatrix(random_division(rng, r, q).transpose());
      spec.n = random_alphabetic(rng, r, q, alphabet);
      m = matrix_product(spec.d, spec.n);
    }
    if (degenerate(forget_labels(m))) continue;
    Automaton a = automaton_from_alphabetic(m);
    if (a.essential_part().empty()) continue;
    ++done;
    LabeledSplitResult res = labeled_split(a, spec);
    CHECK(syntactic_graph_isomorphic(syntactic_graph(a),
                                     syntactic_graph(res.b)));
    ShiftPresentation pa = ShiftPresentation::from_automaton(a);
    ShiftPresentation pb = ShiftPresentation::from_automaton(res.b);
    CHECK(periodic_counts(pa, 4).counts == periodic_counts(pb, 4).counts);
    check_merge_round_trip(a.graph, res.b.graph, res.merge);
    // Labels carried through the merge.
    for (const Edge& f : res.b.graph.edges)
      CHECK(res.b.label(f.id) == a.label(res.merge.edges.at(f.id)));
  }
}

TEST_CASE("Bowen-Franks data preserved under graph expansions") {
  Rng rng(31337);
  int done = 0;
  while (done < 40) {
    int n = rng.uniform(1, 4);
    IntMatrix m = random_count(rng, n, n, 2);
    if (degenerate(m)) continue;
    ++done;
    Graph g = graph_from_adjacency(m);
    Graph g2 = graph_expansion(g, g.states[rng.uniform(0, n - 1)]);
    IntMatrix m2 = adjacency(g2);
    CHECK(bowen_franks(m).group == bowen_franks(m2).group);
    CHECK(det_i_minus(m) == det_i_minus(m2));
  }
}

TEST_CASE("syntactic graphs preserved under automaton expansions") {
  Rng rng(99);
  std::vector<Symbol> alphabet = {"a", "b"};
  int done = 0;
  while (done < 25) {
    int n = rng.uniform(2, 3);
    AlphMatrix m = random_alphabetic(rng, n, n, alphabet);
    if (degenerate(forget_labels(m))) continue;
    Automaton a = automaton_from_alphabetic(m);
    a = a.essential_part();
    if (a.empty()) continue;
    // Pick a state and relabel its in-edges with a dedicated letter so the
    // expansion precondition holds.
    std::string p = a.graph.states[rng.uniform(
        0, static_cast<int>(a.graph.states.size()) - 1)];
    bool has_in = false;
    for (auto& e : a.graph.edges)
      if (e.dst == p) {
        a.labels[e.id] = "c";
        has_in = true;
      }
    if (!has_in) continue;
    if (std::find(a.alphabet.begin(), a.alphabet.end(), "c") ==
        a.alphabet.end())
      a.alphabet.push_back("c");
    ++done;
    Automaton a2 = automaton_expansion(a, p, "z");
    CHECK(a2.graph.states.size() == a.graph.states.size() + 1);
    CHECK(syntactic_graph_isomorphic(syntactic_graph(a),
                                     syntactic_graph(a2)));
  }
}

TEST_CASE("masking-step postconditions on random instances") {
  Rng rng(4242);
  std::vector<Symbol> alphabet = {"a", "b", "c"};
  int done = 0;
  while (done < 100) {
    int qa = rng.uniform(1, 3), qb = rng.uniform(qa, 4);
    IntMatrix d = random_division(rng, qb, qa);
    AlphMatrix n = random_alphabetic(rng, qa, qb, alphabet);
    AlphMatrix ma = matrix_product(n, d);
    if (degenerate(forget_labels(ma))) continue;
    Automaton a = automaton_from_alphabetic(ma);
    Automaton b = automaton_from_alphabetic(matrix_product(d, n));
    // Extend b with a few random edges.
    Automaton bp = b;
    int extra = rng.uniform(1, 3);
    for (int t = 0; t < extra; ++t) {
      int s = rng.uniform(0, qb - 1), e = rng.uniform(0, qb - 1);
      std::string id = "add" + std::to_string(t);
      bp.graph.edges.push_back(
          {id, bp.graph.states[s], bp.graph.states[e]});
      Symbol sym =
          alphabet[rng.uniform(0, static_cast<int>(alphabet.size()) - 1)];
      bp.labels[id] = sym;
      if (std::find(bp.alphabet.begin(), bp.alphabet.end(), sym) ==
          bp.alphabet.end())
        bp.alphabet.push_back(sym);
    }
    bp.check();
    ++done;
    MaskingResult res = masking_step(a, b, bp, d, n);
    // aprime contains a verbatim; the factorizations are audited inside
    // masking_step, so surviving the call is the other postcondition.
    for (const std::string& q : a.graph.states)
      CHECK(res.aprime.graph.has_state(q));
    for (const Edge& e : a.graph.edges) {
      const Edge* f = res.aprime.graph.find_edge(e.id);
      REQUIRE(f != nullptr);
      CHECK(res.aprime.label(e.id) == a.label(e.id));
    }
    CHECK(forget_labels(res.aprime.alphabetic_adjacency()) ==
          forget_labels(matrix_product(res.nprime, res.dprime)));
  }
}

TEST_CASE("local automata have delay bounded by the window") {
  // Random subautomata of standard local automata stay local; their delays
  // respect right <= n and left <= m.
  Rng rng(555);
  for (int t = 0; t < 25; ++t) {
    int m = rng.uniform(0, 2), n = rng.uniform(0, 2);
    if (m + n == 0) m = 1;
    Automaton s = standard_local_automaton({"a", "b"}, m, n);
    // Drop a couple of random edges, keep the automaton essential.
    Automaton sub = s;
    for (int d = rng.uniform(0, 3); d > 0 && sub.graph.edges.size() > 4; --d) {
      int k = rng.uniform(0, static_cast<int>(sub.graph.edges.size()) - 1);
      sub.labels.erase(sub.graph.edges[k].id);
      sub.graph.edges.erase(sub.graph.edges.begin() + k);
    }
    sub = sub.essential_part();
    if (sub.empty()) continue;
    LocalityWitness w = locality(sub);
    REQUIRE(w.local);
    CHECK(w.admits(m, n));
    DelayResult rd = delay(sub, Side::right);
    DelayResult ld = delay(sub, Side::left);
    REQUIRE(!rd.infinite);
    REQUIRE(!ld.infinite);
    CHECK(rd.value <= n);
    CHECK(ld.value <= m);
  }
}

TEST_CASE("split certificates verify across random chains") {
  Rng rng(808);
  int done = 0;
  while (done < 25) {
    int q = rng.uniform(1, 2), r = rng.uniform(q, 3);
    SplitSpec s1;
    s1.orientation = SplitSpec::Orientation::in;
    s1.e = random_count(rng, q, r, 2);
    s1.d = random_division(rng, r, q);
    IntMatrix m0 = s1.e * s1.d;
    if (degenerate(m0)) continue;
    // Second step: out-split of the in-split result.
    int r2 = rng.uniform(r, r + 1);
    SplitSpec s2;
    s2.orientation = SplitSpec::Orientation::out;
    s2.d = IntMatrix(random_division(rng, r2, r).transpose());
    s2.e = random_count(rng, r2, r, 2);
    IntMatrix m1 = s1.d * s1.e;
    // Constrain the second factorization to match m1.
    if (IntMatrix(s2.d * s2.e) != m1) {
      // Rebuild e column by column to satisfy d*e = m1 when possible: with a
      // transposed division, d*e sums rows of e in groups; just put each
      // group's total in its first member.
      s2.e = IntMatrix::Zero(r2, r);
      for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) {
          // d is r x r2; find first k with d(i,k)=1.
          for (int k = 0; k < r2; ++k)
            if (s2.d(i, k) == 1) {
              s2.e(k, j) = m1(i, j);
              break;
            }
        }
      if (IntMatrix(s2.d * s2.e) != m1) continue;
    }
    ++done;
    SSECertificate cert = certificate_for_splits(m0, {s1, s2});
    CHECK(verify_sse(cert).valid);
  }
}
