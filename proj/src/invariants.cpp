#include "sofic/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace sofic {

// ---------------------------------------------------------------------------
// Spectral radius and entropy

double spectral_radius(const IntMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 0.0;
  // Power iteration on M + I: spectral radius 1 + rho(M), and the shift
  // makes the iteration immune to cyclic (periodic) spectra.
  Eigen::MatrixXd a = m.cast<double>();
  for (int i = 0; i < n; ++i) a(i, i) += 1.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  double rayleigh = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd w = a * v;
    double r = v.dot(w) / v.dot(v);
    double norm = w.norm();
    if (norm == 0.0) return 0.0;  // nilpotent part only
    v = w / norm;
    if (it > 0 && std::abs(r - rayleigh) < 1e-12) {
      rayleigh = r;
      break;
    }
    rayleigh = r;
  }
  return rayleigh - 1.0;
}

double entropy(const ShiftPresentation& p) {
  Automaton cover;
  try {
    cover = fischer(p);
  } catch (const error&) {
    cover = krieger(p).essential_part();  // reducible sofic case
  }
  if (cover.empty()) throw error("entropy: empty shift");
  return std::log(spectral_radius(cover.count_adjacency()));
}

// ---------------------------------------------------------------------------
// Periodic points

ZetaPrefix periodic_counts_edge(const IntMatrix& m, int n) {
  ZetaPrefix z;
  IntMatrix p = m;
  for (int i = 1; i <= n; ++i) {
    z.counts.push_back(p.trace());
    if (i < n) p = (p * m).eval();
  }
  return z;
}

namespace {

// Boolean adjacency of the relation "reads w" as dense 0/1 matrix.
using BoolMatrix = std::vector<std::vector<char>>;

BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  const size_t n = a.size();
  BoolMatrix out(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (size_t j = 0; j < n; ++j) out[i][j] |= b[k][j];
  return out;
}

bool bool_nonzero(const BoolMatrix& a) {
  for (const auto& row : a)
    for (char v : row)
      if (v) return true;
  return false;
}

}  // namespace

ZetaPrefix periodic_counts(const ShiftPresentation& p, int n) {
  if (n < 1) throw error("periodic_counts: n must be >= 1");
  Automaton a = p.presentation();
  if (a.empty()) {
    ZetaPrefix z;
    z.counts.assign(n, 0);
    return z;
  }
  const int nq = static_cast<int>(a.graph.states.size());
  std::map<Symbol, BoolMatrix> letter;
  for (const Symbol& s : a.alphabet)
    letter[s] = BoolMatrix(nq, std::vector<char>(nq, 0));
  for (const Edge& e : a.graph.edges)
    letter[a.label(e.id)][a.graph.state_index(e.src)]
          [a.graph.state_index(e.dst)] = 1;

  ZetaPrefix z;
  for (int len = 1; len <= n; ++len) {
    // Enumerate words of length len; (w)^inf is in X iff the relation of w
    // still has a nonzero |Q|-th power (pigeonhole: a surviving length-|Q|
    // path contains a cycle).
    Int count = 0;
    std::vector<int> idx(len, 0);
    const int k = static_cast<int>(a.alphabet.size());
    while (true) {
      BoolMatrix r = letter[a.alphabet[idx[0]]];
      for (int i = 1; i < len; ++i)
        r = bool_multiply(r, letter[a.alphabet[idx[i]]]);
      // r^nq via repeated squaring up to >= nq
      BoolMatrix pw = r;
      int e = 1;
      while (e < nq) {
        pw = bool_multiply(pw, pw);
        e *= 2;
      }
      if (bool_nonzero(pw)) ++count;
      int pos = len - 1;
      while (pos >= 0 && idx[pos] == k - 1) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
    z.counts.push_back(count);
  }
  return z;
}

// ---------------------------------------------------------------------------
// Smith normal form, Bowen-Franks, Franks' theorem

Int integer_determinant(IntMatrix m) {
  // Fraction-free Bareiss elimination.
  const int n = static_cast<int>(m.rows());
  if (n != m.cols()) throw error("determinant: matrix not square");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv == -1) return 0;
      m.row(k).swap(m.row(piv));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<Int> smith_normal_form(IntMatrix m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  const int n = std::min(rows, cols);
  std::vector<Int> diag;
  int t = 0;
  while (t < n) {
    // Find the smallest-magnitude nonzero pivot in the remaining block.
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m(i, j) != 0 &&
            (pi == -1 || std::abs(m(i, j)) < std::abs(m(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == -1) break;  // all zero
    m.row(t).swap(m.row(pi));
    m.col(t).swap(m.col(pj));
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i)
        if (m(i, t) != 0) {
          Int q = m(i, t) / m(t, t);
          m.row(i) -= q * m.row(t);
          if (m(i, t) != 0) {  // remainder smaller than pivot: swap up
            m.row(t).swap(m.row(i));
            clean = false;
          }
        }
      for (int j = t + 1; j < cols; ++j)
        if (m(t, j) != 0) {
          Int q = m(t, j) / m(t, t);
          m.col(j) -= q * m.col(t);
          if (m(t, j) != 0) {
            m.col(t).swap(m.col(j));
            clean = false;
          }
        }
      if (!clean) continue;
      // Divisibility: pivot must divide every remaining entry.
      for (int i = t + 1; i < rows && clean; ++i)
        for (int j = t + 1; j < cols && clean; ++j)
          if (m(i, j) % m(t, t) != 0) {
            m.row(t) += m.row(i);
            clean = false;
          }
    }
    diag.push_back(std::abs(m(t, t)));
    ++t;
  }
  while (static_cast<int>(diag.size()) < n) diag.push_back(0);
  return diag;
}

std::string AbelianGroupInvariants::to_string() const {
  if (factors.empty()) return "0";
  std::vector<std::string> parts;
  for (Int d : factors)
    parts.push_back(d == 0 ? "Z" : "Z/" + std::to_string(d) + "Z");
  return join(parts, " + ");
}

BowenFranks bowen_franks(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw error("bowen_franks: matrix not square");
  const int n = static_cast<int>(m.rows());
  IntMatrix x = IntMatrix::Identity(n, n) - m;
  BowenFranks bf;
  bf.det = integer_determinant(x);
  for (Int d : smith_normal_form(x))
    if (d != 1) bf.group.factors.push_back(d);
  return bf;
}

FlowVerdict franks_flow_equivalent(const Graph& g1, const Graph& g2) {
  if (!is_essential(g1) || !is_essential(g2) || !is_strongly_connected(g1) ||
      !is_strongly_connected(g2))
    return FlowVerdict::out_of_scope;
  bool t1 = is_trivial_cycle(g1), t2 = is_trivial_cycle(g2);
  if (t1 && t2) return FlowVerdict::equivalent;
  if (t1 != t2) return FlowVerdict::not_equivalent;
  BowenFranks b1 = bowen_franks(adjacency(g1));
  BowenFranks b2 = bowen_franks(adjacency(g2));
  return (b1.det == b2.det && b1.group == b2.group)
             ? FlowVerdict::equivalent
             : FlowVerdict::not_equivalent;
}

}  // namespace sofic
