// State splitting and merging, symbol/graph/automaton expansions, strong
// shift equivalence certificates, standard local automata, the masking step
// and completion of local automata.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "sofic/automaton.hpp"
#include "sofic/core.hpp"

namespace sofic {

// Mixed products of alphabetic and count matrices (zero terms pruned).
AlphMatrix matrix_product(const AlphMatrix& a, const IntMatrix& b);
AlphMatrix matrix_product(const IntMatrix& a, const AlphMatrix& b);

// ---------------------------------------------------------------------------
// Elementary splits

struct SplitSpec {
  enum class Orientation { in, out };
  Orientation orientation = Orientation::in;
  IntMatrix d;   // division matrix
  IntMatrix e;   // count matrix (graph splits)
  AlphMatrix n;  // alphabetic matrix (labeled splits)
};

// Split object -> original object, on states and on edge ids.
struct MergeMap {
  std::map<std::string, std::string> states;
  std::map<std::string, std::string> edges;
};

struct GraphSplitResult {
  Graph h;
  MergeMap merge;
};

// In: M(g) = E D, returns h with M(h) = D E (D an |R|x|Q| matrix with one 1
// per row and at least one per column). Out: M(g) = D E, returns h with
// M(h) = E D (transposed division condition). The factorization is verified
// entrywise; a mismatch is an error naming the offending entry.
GraphSplitResult graph_split(const Graph& g, const SplitSpec& spec);

struct LabeledSplitResult {
  Automaton b;
  MergeMap merge;
};

// Labeled variant: in: M(a) = N D, M(b) = D N; out: M(a) = D N, M(b) = N D.
// Labels are preserved edgewise through the merge map.
LabeledSplitResult labeled_split(const Automaton& a, const SplitSpec& spec);

// The mutually inverse sliding block maps of an elementary in-split
// factorization M(A) = N D, M(B) = D N, over the edge-id alphabets of the
// canonical automata built from the two products (returned for reference).
struct ConjugacyMaps {
  BlockMap phi;    // paths of A -> paths of B, memory 1
  BlockMap gamma;  // paths of B -> paths of A, anticipation 1
  Automaton a, b;  // canonical automata of N D and D N
};

ConjugacyMaps elementary_conjugacy_maps(const IntMatrix& d, const AlphMatrix& n);

// ---------------------------------------------------------------------------
// Symbolic splitting maps and expansions

// Presentation of the image of the 2-block in-splitting map a1 a2 -> f(a1)a2;
// the output alphabet is the set of such two-letter images. f must be total
// on the alphabet.
ShiftPresentation symbolic_in_split(const ShiftPresentation& p,
                                    const std::map<Symbol, Symbol>& f);

// Dual out-splitting map a1 a2 -> a1 f(a2).
ShiftPresentation symbolic_out_split(const ShiftPresentation& p,
                                     const std::map<Symbol, Symbol>& f);

struct ExpansionResult {
  ShiftPresentation shift;
  Symbol fresh;  // the new symbol (base + "#k", deterministic)
};

// Replace every occurrence of `a` by `a` followed by a fresh symbol: each
// a-labeled edge p -> q becomes p -a-> (new state) -fresh-> q.
ExpansionResult symbol_expansion(const ShiftPresentation& p, const Symbol& a);

// Inverse of symbol_expansion: contract a -fresh- pairs back. Errors when the
// presentation is not an expansion image for (a, fresh).
ShiftPresentation symbol_contraction(const ShiftPresentation& p,
                                     const Symbol& a, const Symbol& fresh);

// New state p' (named p + "#k") receives all former in-edges of p; a single
// new edge p' -> p. The adjacency matrix acquires a bordered row/column with
// a 1 below the new zero diagonal entry.
Graph graph_expansion(const Graph& g, const std::string& p);

// Labeled counterpart: requires all in-edges of p to carry one common label
// and that label to occur on no other edge (so the move is simultaneously a
// graph expansion and a symbol expansion); the new edge p' -> p is labeled
// `fresh`, which must be unused.
Automaton automaton_expansion(const Automaton& a, const std::string& p,
                              const Symbol& fresh);

// ---------------------------------------------------------------------------
// Strong shift equivalence certificates

struct SSECertificate {
  enum class Kind { integer, symbolic };

  struct Step {
    // Integer kind: M_i = r s and M_{i+1} = s r.
    IntMatrix r, s;
    // Symbolic kind: M_i <-> r s under bij_first, M_{i+1} <-> s r under
    // bij_second (bijections from two-symbol words to symbols).
    AlphMatrix sym_r, sym_s;
    std::map<Word2, Symbol> bij_first, bij_second;
  };

  Kind kind = Kind::integer;
  std::vector<Step> steps;
  IntMatrix first_int, last_int;   // endpoints (integer kind)
  AlphMatrix first_sym, last_sym;  // endpoints (symbolic kind)
};

struct SSEVerdict {
  bool valid = false;
  int step = -1;  // failing step (0-based), -1 when valid or endpoint failure
  std::string reason;
};

SSEVerdict verify_sse(const SSECertificate& cert);

// Certificates produced by applying a chain of splits, for round-tripping
// through verify_sse.
SSECertificate certificate_for_splits(const IntMatrix& m0,
                                      const std::vector<SplitSpec>& specs);
SSECertificate certificate_for_splits(const Automaton& a,
                                      const std::vector<SplitSpec>& specs);

// ---------------------------------------------------------------------------
// Standard local automata, masking, completion

// States = all words of length m+n; from uv on letter c there is an edge to
// (uv c) minus its first letter, labeled by the first letter of vc. Complete
// and (m,n)-local. Requires m+n >= 1.
Automaton standard_local_automaton(const std::vector<Symbol>& alphabet, int m,
                                   int n);

// Every word over the alphabet labels some path.
bool is_complete(const Automaton& a);

struct MaskingResult {
  Automaton aprime;
  IntMatrix dprime;
  AlphMatrix nprime;
};

// Masking step: given M(a) = n d, M(b) = d n and b contained in bprime,
// builds aprime containing a with M(aprime) = nprime * dprime and
// dprime * nprime = M(bprime). New states of aprime are named by the
// edge ids of the edges bprime adds to b.
MaskingResult masking_step(const Automaton& a, const Automaton& b,
                           const Automaton& bprime, const IntMatrix& d,
                           const AlphMatrix& n);

// Embeds a local automaton into a complete local automaton: a chain of
// elementary context splits lifts `a` into (a sub-automaton of) the standard
// local automaton, and masking steps carry the completion back down.
// Postconditions audited: output contains `a` (states and edges verbatim),
// is complete, and is local.
Automaton complete_local(const Automaton& a);

}  // namespace sofic
