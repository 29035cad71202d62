// Line-oriented text format for automata, shifts, graphs, matrices and
// certificates; DOT export; deterministic JSON serialization helpers.
#pragma once

#include <string>
#include <vector>

#include "sofic/automaton.hpp"
#include "sofic/core.hpp"
#include "sofic/semigroup.hpp"
#include "sofic/transforms.hpp"

namespace sofic {

struct InputDocument {
  enum class Kind { automaton, shift_forbidden, graph, matrix, certificate };
  Kind kind = Kind::automaton;
  Automaton automaton;            // Kind::automaton
  std::vector<Symbol> alphabet;   // Kind::shift_forbidden
  std::vector<std::vector<Symbol>> forbidden;
  Graph graph;                    // Kind::graph
  IntMatrix matrix;               // Kind::matrix
  SSECertificate certificate;     // Kind::certificate

  // A shift presentation for the kinds that define one.
  ShiftPresentation shift() const;
};

// Parse the line-oriented format. Errors carry a 1-based line number.
InputDocument parse_document(const std::string& text);

// Canonical printer; parse(print(doc)) reproduces the document. Always
// emits the `format 1` header (optional on input).
std::string print_document(const InputDocument& doc);

// Poly <-> token ("0", "a", "a+c", "2*a+b").
Poly parse_poly(const std::string& token);
std::string print_poly(const Poly& p);

// Word tokens: symbols joined without separator when the alphabet is all
// one-character symbols, with '.' otherwise.
std::vector<Symbol> parse_word(const std::string& token,
                               const std::vector<Symbol>& alphabet);
std::string print_word(const std::vector<Symbol>& w,
                       const std::vector<Symbol>& alphabet);

// DOT export (deterministic node order).
std::string export_dot(const Graph& g);
std::string export_dot(const Automaton& a);
std::string export_dot(const SyntacticGraph& sg);

// Shortest double that prints identically at 12 significant digits; keeps
// JSON reports byte-deterministic.
double round12(double v);

}  // namespace sofic
