// Entropy, periodic-point counts, Bowen-Franks groups (exact integer Smith
// normal form) and Franks' flow-equivalence decision.
#pragma once

#include <string>
#include <vector>

#include "sofic/automaton.hpp"
#include "sofic/core.hpp"

namespace sofic {

// Natural-log entropy of the presented shift: log of the spectral radius of
// the count adjacency of the Krieger cover's essential part (Fischer cover
// when irreducible), by power iteration on M + I.
double entropy(const ShiftPresentation& p);

// Spectral radius of a nonnegative integer matrix (power iteration on M+I;
// all-ones start, 1e-12 Rayleigh threshold, 10000 iteration cap).
double spectral_radius(const IntMatrix& m);

struct ZetaPrefix {
  std::vector<Int> counts;  // p_1..p_N; p_n = #points with sigma^n x = x
};

// Exact periodic-point counts. Edge shifts use traces of matrix powers; a
// labeled presentation counts length-n words w such that some state survives
// reading w^|Q| (pigeonhole yields a cycle).
ZetaPrefix periodic_counts(const ShiftPresentation& p, int n);

// p_n = trace(M^n) for the edge shift of the graph.
ZetaPrefix periodic_counts_edge(const IntMatrix& m, int n);

struct AbelianGroupInvariants {
  // Invariant factors d1 | d2 | ... with di >= 0; 0 encodes an infinite
  // cyclic summand; unit factors omitted.
  std::vector<Int> factors;

  std::string to_string() const;  // "Z/4Z", "Z", "Z/2Z + Z", "0"
  bool operator==(const AbelianGroupInvariants& o) const = default;
};

struct BowenFranks {
  AbelianGroupInvariants group;  // coker(I - M)
  Int det;                       // det(I - M), exact
};

BowenFranks bowen_franks(const IntMatrix& m);

// Smith normal form diagonal of an integer matrix (nonnegative, divisibility
// chain, zeros last). Exact integer arithmetic.
std::vector<Int> smith_normal_form(IntMatrix m);

// Exact integer determinant (fraction-free Bareiss).
Int integer_determinant(IntMatrix m);

enum class FlowVerdict { equivalent, not_equivalent, out_of_scope };

// Franks' theorem for essential strongly connected graphs; single cycles
// (trivial graphs) are the special case the theorem excludes.
FlowVerdict franks_flow_equivalent(const Graph& g1, const Graph& g2);

}  // namespace sofic
