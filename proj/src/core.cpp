#include "sofic/core.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace sofic {

// ---------------------------------------------------------------------------
// Graph basics

bool Graph::has_state(const std::string& q) const {
  return std::find(states.begin(), states.end(), q) != states.end();
}

int Graph::state_index(const std::string& q) const {
  auto it = std::find(states.begin(), states.end(), q);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

const Edge* Graph::find_edge(const std::string& id) const {
  for (const Edge& e : edges)
    if (e.id == id) return &e;
  return nullptr;
}

void Graph::check() const {
  std::unordered_set<std::string> st(states.begin(), states.end());
  if (st.size() != states.size()) throw error("duplicate state identifier");
  std::unordered_set<std::string> ids;
  for (const Edge& e : edges) {
    if (!ids.insert(e.id).second) throw error("duplicate edge id: " + e.id);
    if (!st.count(e.src)) throw error("edge " + e.id + ": unknown source " + e.src);
    if (!st.count(e.dst)) throw error("edge " + e.id + ": unknown target " + e.dst);
  }
}

IntMatrix adjacency(const Graph& g) {
  const int n = static_cast<int>(g.states.size());
  IntMatrix m = IntMatrix::Zero(n, n);
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[g.states[i]] = i;
  for (const Edge& e : g.edges) m(idx.at(e.src), idx.at(e.dst)) += 1;
  return m;
}

Graph graph_from_adjacency(const IntMatrix& m,
                           const std::vector<std::string>& names) {
  if (m.rows() != m.cols()) throw error("adjacency matrix must be square");
  const int n = static_cast<int>(m.rows());
  Graph g;
  for (int i = 0; i < n; ++i)
    g.states.push_back(names.empty() ? "q" + std::to_string(i) : names[i]);
  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw error("state name count does not match matrix dimension");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m(i, j) < 0) throw error("negative adjacency entry");
      for (Int k = 0; k < m(i, j); ++k)
        g.edges.push_back({g.states[i] + "->" + g.states[j] + ":" +
                               std::to_string(k),
                           g.states[i], g.states[j]});
    }
  return g;
}

Graph essential_part(const Graph& g) {
  std::set<std::string> alive(g.states.begin(), g.states.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::string> has_in, has_out;
    for (const Edge& e : g.edges)
      if (alive.count(e.src) && alive.count(e.dst)) {
        has_out.insert(e.src);
        has_in.insert(e.dst);
      }
    for (auto it = alive.begin(); it != alive.end();) {
      if (!has_in.count(*it) || !has_out.count(*it)) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  Graph h;
  for (const std::string& q : g.states)
    if (alive.count(q)) h.states.push_back(q);
  for (const Edge& e : g.edges)
    if (alive.count(e.src) && alive.count(e.dst)) h.edges.push_back(e);
  return h;
}

bool is_essential(const Graph& g) {
  Graph h = essential_part(g);
  return h.states.size() == g.states.size() && h.edges.size() == g.edges.size();
}

std::vector<std::vector<int>> paths_of_length(const Graph& g, int n) {
  // Paths as edge-index sequences; n = 0 yields one empty path per state,
  // which callers rarely want, so require n >= 1.
  if (n < 1) throw error("paths_of_length: n must be >= 1");
  std::vector<std::vector<int>> cur;
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) cur.push_back({i});
  for (int len = 2; len <= n; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& p : cur) {
      const std::string& end = g.edges[p.back()].dst;
      for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        if (g.edges[i].src == end) {
          auto q = p;
          q.push_back(i);
          next.push_back(std::move(q));
        }
    }
    cur = std::move(next);
  }
  return cur;
}

Graph higher_edge_graph(const Graph& g, int n) {
  if (n < 1) throw error("higher_edge_graph: n must be >= 1");
  if (n == 1) return g;
  auto path_name = [&](const std::vector<int>& p, int from, int count) {
    std::vector<std::string> ids;
    for (int i = from; i < from + count; ++i) ids.push_back(g.edges[p[i]].id);
    return join(ids, "|");
  };
  Graph h;
  std::set<std::string> seen;
  for (const auto& p : paths_of_length(g, n - 1)) {
    std::string s = path_name(p, 0, n - 1);
    if (seen.insert(s).second) h.states.push_back(s);
  }
  for (const auto& p : paths_of_length(g, n)) {
    h.edges.push_back({path_name(p, 0, n), path_name(p, 0, n - 1),
                       path_name(p, 1, n - 1)});
  }
  return h;
}

std::vector<std::vector<int>> strongly_connected_components(const Graph& g) {
  const int n = static_cast<int>(g.states.size());
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[g.states[i]] = i;
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : g.edges) adj[idx.at(e.src)].push_back(idx.at(e.dst));

  // Iterative Tarjan.
  std::vector<int> low(n, -1), num(n, -1), stk;
  std::vector<char> on(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (num[root] != -1) continue;
    std::vector<std::pair<int, size_t>> frame{{root, 0}};
    while (!frame.empty()) {
      auto& [v, ei] = frame.back();
      if (ei == 0) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        on[v] = 1;
      }
      if (ei < adj[v].size()) {
        int w = adj[v][ei++];
        if (num[w] == -1) {
          frame.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          std::vector<int> comp;
          while (true) {
            int w = stk.back();
            stk.pop_back();
            on[w] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
        int vv = v;
        frame.pop_back();
        if (!frame.empty())
          low[frame.back().first] = std::min(low[frame.back().first], low[vv]);
      }
    }
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

bool is_strongly_connected(const Graph& g) {
  if (g.states.empty()) return false;
  return strongly_connected_components(g).size() == 1;
}

bool is_trivial_cycle(const Graph& g) {
  if (!is_strongly_connected(g)) return false;
  std::map<std::string, int> din, dout;
  for (const Edge& e : g.edges) {
    ++dout[e.src];
    ++din[e.dst];
  }
  for (const std::string& q : g.states)
    if (din[q] != 1 || dout[q] != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Alphabetic matrices

Alph2Matrix matrix_product(const AlphMatrix& a, const AlphMatrix& b) {
  if (a.cols != b.rows) throw error("matrix_product: dimension mismatch");
  Alph2Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      Poly2& dst = out.at(i, j);
      for (int k = 0; k < a.cols; ++k)
        for (const auto& [x, cx] : a.at(i, k))
          for (const auto& [y, cy] : b.at(k, j)) dst[{x, y}] += cx * cy;
    }
  return out;
}

AlphMatrix relabel(const Alph2Matrix& m, const std::map<Word2, Symbol>& bij) {
  std::set<Symbol> images;
  for (const auto& [w, s] : bij)
    if (!images.insert(s).second)
      throw error("relabel: bijection not injective at symbol " + s);
  AlphMatrix out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      for (const auto& [w, c] : m.at(i, j)) {
        auto it = bij.find(w);
        if (it == bij.end())
          throw error("relabel: no image for word " + w.first + "." + w.second);
        out.at(i, j)[it->second] += c;
      }
  return out;
}

IntMatrix forget_labels(const AlphMatrix& m) {
  IntMatrix out = IntMatrix::Zero(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      for (const auto& [s, c] : m.at(i, j)) out(i, j) += c;
  return out;
}

IntMatrix forget_labels(const Alph2Matrix& m) {
  IntMatrix out = IntMatrix::Zero(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      for (const auto& [s, c] : m.at(i, j)) out(i, j) += c;
  return out;
}

// ---------------------------------------------------------------------------
// Periodic words

namespace {

std::vector<Symbol> least_root(const std::vector<Symbol>& w) {
  const int n = static_cast<int>(w.size());
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (int i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return {w.begin(), w.begin() + d};
  }
  return w;
}

std::vector<Symbol> least_rotation(std::vector<Symbol> w) {
  std::vector<Symbol> best = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(w.begin(), w.begin() + 1, w.end());
    if (w < best) best = w;
  }
  return best;
}

}  // namespace

PeriodicWord::PeriodicWord(std::vector<Symbol> w) {
  if (w.empty()) throw error("PeriodicWord: empty word");
  root = least_rotation(least_root(w));
}

PeriodicWord apply_block_map(const BlockMap& bm, const PeriodicWord& w) {
  const int p = static_cast<int>(w.root.size());
  std::vector<Symbol> out(p);
  for (int i = 0; i < p; ++i) {
    std::vector<Symbol> window(bm.window());
    for (int k = 0; k < bm.window(); ++k) {
      int pos = i - bm.memory + k;
      window[k] = w.root[((pos % p) + p) % p];
    }
    auto it = bm.table.find(window);
    if (it == bm.table.end())
      throw error("apply_block_map: window outside table domain: " +
                  join(window, " "));
    out[i] = it->second;
  }
  return PeriodicWord(out);
}

std::string join(const std::vector<std::string>& parts,
                 const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace sofic
