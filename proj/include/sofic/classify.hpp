// Locality, delays, irreducibility, finite type and almost finite type,
// with redundant independent tests cross-checked.
#pragma once

#include <optional>
#include <vector>

#include "sofic/automaton.hpp"

namespace sofic {

struct LocalityWitness {
  bool local = false;
  // Pareto frontier of admissible (m,n) with m+n <= bound, when local.
  std::vector<std::pair<int, int>> minimal_pairs;
  // Two distinct equal-label cycles (as edge-id paths), when not local.
  std::vector<std::string> cycle1, cycle2;

  // Is (m,n) admissible given the frontier? (monotone in both arguments)
  bool admits(int m, int n) const;
};

// An automaton is (m,n)-local when the m labels before and n labels after a
// position pin down the state there. Default bound |Q|^2.
LocalityWitness locality(const Automaton& a, int bound = -1);

enum class Side { right, left };

struct DelayResult {
  Side side = Side::right;
  bool infinite = false;
  int value = 0;  // when finite
  // When infinite: states q, q' and the cycling word u of the witness
  // configuration (paths p -v-> q -u-> q and p -v-> q' -u-> q').
  std::vector<Symbol> witness_word;
  std::string witness_q, witness_q2;
};

DelayResult delay(const Automaton& a, Side side);

bool is_irreducible(const ShiftPresentation& p);

struct DualVerdict {
  bool verdict = false;
  bool test_a = false;  // locality / left-delay based
  bool test_b = false;  // syntactic-semigroup based
};

// Finite type: locality of the canonical cover vs. syntactic-graph ranks <= 1.
// The two tests must agree; disagreement throws (implementation bug trap).
DualVerdict is_finite_type(const ShiftPresentation& p);

// Almost finite type (irreducible only): finite left delay of the Fischer
// cover vs. commuting idempotents in every local submonoid.
DualVerdict is_almost_finite_type(const ShiftPresentation& p);

}  // namespace sofic
