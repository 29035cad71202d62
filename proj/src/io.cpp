#include "sofic/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace sofic {

namespace {

std::vector<std::vector<std::string>> tokenize(const std::string& text,
                                               std::vector<int>& line_no) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto pos = line.find('#'); pos != std::string::npos)
      line.erase(pos);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    lines.push_back(toks);
    line_no.push_back(no);
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& why) {
  throw error("parse error at line " + std::to_string(line) + ": " + why);
}

Int to_int(const std::string& t, int line) {
  try {
    size_t pos;
    Int v = std::stoll(t, &pos);
    if (pos != t.size()) fail(line, "not an integer: " + t);
    return v;
  } catch (const std::invalid_argument&) {
    fail(line, "not an integer: " + t);
  } catch (const std::out_of_range&) {
    fail(line, "integer out of range: " + t);
  }
}

// Inline matrix: <rows> <cols> <entries...>; returns tokens consumed.
size_t parse_int_matrix(const std::vector<std::string>& t, size_t at, int line,
                        IntMatrix& out) {
  if (at + 2 > t.size()) fail(line, "matrix dimensions expected");
  Int r = to_int(t[at], line), c = to_int(t[at + 1], line);
  if (r < 0 || c < 0) fail(line, "negative matrix dimension");
  if (at + 2 + r * c > t.size()) fail(line, "matrix entries missing");
  out = IntMatrix(r, c);
  for (Int i = 0; i < r; ++i)
    for (Int j = 0; j < c; ++j)
      out(i, j) = to_int(t[at + 2 + i * c + j], line);
  return 2 + static_cast<size_t>(r * c);
}

size_t parse_alph_matrix(const std::vector<std::string>& t, size_t at,
                         int line, AlphMatrix& out) {
  if (at + 2 > t.size()) fail(line, "matrix dimensions expected");
  Int r = to_int(t[at], line), c = to_int(t[at + 1], line);
  if (r < 0 || c < 0) fail(line, "negative matrix dimension");
  if (at + 2 + r * c > t.size()) fail(line, "matrix entries missing");
  out = AlphMatrix(static_cast<int>(r), static_cast<int>(c));
  for (Int i = 0; i < r; ++i)
    for (Int j = 0; j < c; ++j)
      out.at(static_cast<int>(i), static_cast<int>(j)) =
          parse_poly(t[at + 2 + i * c + j]);
  return 2 + static_cast<size_t>(r * c);
}

std::string print_int_matrix(const IntMatrix& m) {
  std::string s = std::to_string(m.rows()) + " " + std::to_string(m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += " " + std::to_string(m(i, j));
  return s;
}

std::string print_alph_matrix(const AlphMatrix& m) {
  std::string s = std::to_string(m.rows) + " " + std::to_string(m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) s += " " + print_poly(m.at(i, j));
  return s;
}

std::map<Word2, Symbol> parse_bij(const std::vector<std::string>& t,
                                  size_t& at, int line) {
  std::map<Word2, Symbol> bij;
  while (at < t.size() && t[at] != "bij") {
    const std::string& pair = t[at];
    auto eq = pair.find('=');
    auto dot = pair.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      fail(line, "bijection pair expected (w1.w2=sym): " + pair);
    Word2 w{pair.substr(0, dot), pair.substr(dot + 1, eq - dot - 1)};
    if (w.first.empty() || w.second.empty() || eq + 1 >= pair.size())
      fail(line, "bijection pair expected (w1.w2=sym): " + pair);
    bij[w] = pair.substr(eq + 1);
    ++at;
  }
  return bij;
}

std::string print_bij(const std::map<Word2, Symbol>& bij) {
  std::string s;
  for (const auto& [w, sym] : bij)
    s += " " + w.first + "." + w.second + "=" + sym;
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Poly parse_poly(const std::string& token) {
  Poly p;
  if (token == "0") return p;
  size_t pos = 0;
  while (pos <= token.size()) {
    size_t plus = token.find('+', pos);
    std::string term = token.substr(
        pos, plus == std::string::npos ? std::string::npos : plus - pos);
    if (term.empty()) throw error("empty term in polynomial: " + token);
    Int coeff = 1;
    if (auto star = term.find('*'); star != std::string::npos) {
      try {
        coeff = std::stoll(term.substr(0, star));
      } catch (...) {
        throw error("bad coefficient in polynomial: " + token);
      }
      term = term.substr(star + 1);
      if (term.empty()) throw error("empty symbol in polynomial: " + token);
    }
    if (coeff <= 0) throw error("nonpositive coefficient in polynomial");
    p[term] += coeff;
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return p;
}

std::string print_poly(const Poly& p) {
  if (p.empty()) return "0";
  std::vector<std::string> terms;
  for (const auto& [sym, c] : p) {
    if (c == 1)
      terms.push_back(sym);
    else
      terms.push_back(std::to_string(c) + "*" + sym);
  }
  return join(terms, "+");
}

std::vector<Symbol> parse_word(const std::string& token,
                               const std::vector<Symbol>& alphabet) {
  bool chars = true;
  for (const Symbol& s : alphabet) chars &= s.size() == 1;
  std::vector<Symbol> w;
  if (chars) {
    for (char c : token) w.push_back(std::string(1, c));
  } else {
    size_t pos = 0;
    while (pos <= token.size()) {
      size_t dot = token.find('.', pos);
      w.push_back(token.substr(
          pos, dot == std::string::npos ? std::string::npos : dot - pos));
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
  }
  for (const Symbol& s : w)
    if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
      throw error("unknown symbol in word: " + s);
  return w;
}

std::string print_word(const std::vector<Symbol>& w,
                       const std::vector<Symbol>& alphabet) {
  bool chars = true;
  for (const Symbol& s : alphabet) chars &= s.size() == 1;
  return join(w, chars ? "" : ".");
}

ShiftPresentation InputDocument::shift() const {
  switch (kind) {
    case Kind::automaton:
      return ShiftPresentation::from_automaton(automaton);
    case Kind::shift_forbidden:
      return ShiftPresentation::from_forbidden(alphabet, forbidden);
    case Kind::graph:
      return ShiftPresentation::from_automaton(edge_automaton(graph));
    default:
      throw error("document does not define a shift");
  }
}

InputDocument parse_document(const std::string& text) {
  std::vector<int> at;
  auto lines = tokenize(text, at);
  size_t i = 0;
  if (i < lines.size() && lines[i][0] == "format") {
    if (lines[i].size() != 2 || lines[i][1] != "1")
      fail(at[i], "unsupported format version");
    ++i;
  }
  if (i >= lines.size()) throw error("parse error: empty document");
  InputDocument doc;
  const std::string& kind = lines[i][0];

  if (kind == "automaton" || kind == "graph") {
    bool labeled = kind == "automaton";
    doc.kind = labeled ? InputDocument::Kind::automaton
                       : InputDocument::Kind::graph;
    ++i;
    Automaton a;
    Graph g;
    for (; i < lines.size(); ++i) {
      const auto& t = lines[i];
      if (t[0] == "alphabet" && labeled) {
        a.alphabet.assign(t.begin() + 1, t.end());
      } else if (t[0] == "states") {
        auto& states = labeled ? a.graph.states : g.states;
        states.assign(t.begin() + 1, t.end());
      } else if (t[0] == "edge") {
        if (labeled) {
          if (t.size() != 5) fail(at[i], "edge <id> <src> <sym> <dst>");
          if (std::find(a.alphabet.begin(), a.alphabet.end(), t[3]) ==
              a.alphabet.end())
            fail(at[i], "unknown symbol: " + t[3]);
          if (a.graph.find_edge(t[1])) fail(at[i], "duplicate edge id " + t[1]);
          a.graph.edges.push_back({t[1], t[2], t[4]});
          a.labels[t[1]] = t[3];
        } else {
          if (t.size() != 4) fail(at[i], "edge <id> <src> <dst>");
          if (g.find_edge(t[1])) fail(at[i], "duplicate edge id " + t[1]);
          g.edges.push_back({t[1], t[2], t[3]});
        }
      } else {
        fail(at[i], "unknown directive: " + t[0]);
      }
    }
    try {
      if (labeled) {
        a.check();
        doc.automaton = a;
      } else {
        g.check();
        doc.graph = g;
      }
    } catch (const error& e) {
      throw error("parse error: " + std::string(e.what()));
    }
    return doc;
  }

  if (kind == "shift") {
    doc.kind = InputDocument::Kind::shift_forbidden;
    ++i;
    for (; i < lines.size(); ++i) {
      const auto& t = lines[i];
      if (t[0] == "alphabet") {
        doc.alphabet.assign(t.begin() + 1, t.end());
      } else if (t[0] == "forbidden") {
        for (size_t k = 1; k < t.size(); ++k) {
          try {
            doc.forbidden.push_back(parse_word(t[k], doc.alphabet));
          } catch (const error& e) {
            fail(at[i], e.what());
          }
        }
      } else {
        fail(at[i], "unknown directive: " + t[0]);
      }
    }
    if (doc.alphabet.empty()) throw error("parse error: shift needs alphabet");
    return doc;
  }

  if (kind == "matrix") {
    doc.kind = InputDocument::Kind::matrix;
    const auto& hd = lines[i];
    if (hd.size() != 3) fail(at[i], "matrix <rows> <cols>");
    Int r = to_int(hd[1], at[i]), c = to_int(hd[2], at[i]);
    doc.matrix = IntMatrix::Zero(r, c);
    ++i;
    for (Int row = 0; row < r; ++row, ++i) {
      if (i >= lines.size()) throw error("parse error: matrix row missing");
      if (static_cast<Int>(lines[i].size()) != c)
        fail(at[i], "expected " + std::to_string(c) + " entries");
      for (Int col = 0; col < c; ++col)
        doc.matrix(row, col) = to_int(lines[i][col], at[i]);
    }
    if (i != lines.size()) fail(at[i], "trailing content after matrix");
    return doc;
  }

  if (kind == "certificate") {
    doc.kind = InputDocument::Kind::certificate;
    const auto& hd = lines[i];
    if (hd.size() != 2 || (hd[1] != "integer" && hd[1] != "symbolic"))
      fail(at[i], "certificate integer|symbolic");
    bool integer = hd[1] == "integer";
    doc.certificate.kind = integer ? SSECertificate::Kind::integer
                                   : SSECertificate::Kind::symbolic;
    ++i;
    bool saw_start = false, saw_end = false;
    for (; i < lines.size(); ++i) {
      const auto& t = lines[i];
      try {
        if (t[0] == "start" || t[0] == "end") {
          if (integer) {
            IntMatrix m;
            if (1 + parse_int_matrix(t, 1, at[i], m) != t.size())
              fail(at[i], "trailing tokens");
            (t[0] == "start" ? doc.certificate.first_int
                             : doc.certificate.last_int) = m;
          } else {
            AlphMatrix m;
            if (1 + parse_alph_matrix(t, 1, at[i], m) != t.size())
              fail(at[i], "trailing tokens");
            (t[0] == "start" ? doc.certificate.first_sym
                             : doc.certificate.last_sym) = m;
          }
          (t[0] == "start" ? saw_start : saw_end) = true;
        } else if (t[0] == "step") {
          SSECertificate::Step st;
          size_t p = 1;
          if (p >= t.size() || t[p] != "R") fail(at[i], "step R ... S ...");
          ++p;
          if (integer)
            p += parse_int_matrix(t, p, at[i], st.r);
          else
            p += parse_alph_matrix(t, p, at[i], st.sym_r);
          if (p >= t.size() || t[p] != "S") fail(at[i], "step R ... S ...");
          ++p;
          if (integer)
            p += parse_int_matrix(t, p, at[i], st.s);
          else
            p += parse_alph_matrix(t, p, at[i], st.sym_s);
          if (!integer) {
            if (p >= t.size() || t[p] != "bij")
              fail(at[i], "symbolic step needs two bij groups");
            ++p;
            st.bij_first = parse_bij(t, p, at[i]);
            if (p >= t.size() || t[p] != "bij")
              fail(at[i], "symbolic step needs two bij groups");
            ++p;
            st.bij_second = parse_bij(t, p, at[i]);
          }
          if (p != t.size()) fail(at[i], "trailing tokens in step");
          doc.certificate.steps.push_back(st);
        } else {
          fail(at[i], "unknown directive: " + t[0]);
        }
      } catch (const error&) {
        throw;
      }
    }
    if (!saw_start || !saw_end)
      throw error("parse error: certificate needs start and end lines");
    return doc;
  }

  fail(at[i], "unknown document kind: " + kind);
}

std::string print_document(const InputDocument& doc) {
  std::string out = "format 1\n";
  switch (doc.kind) {
    case InputDocument::Kind::automaton: {
      const Automaton& a = doc.automaton;
      out += "automaton\n";
      out += "alphabet " + join(a.alphabet, " ") + "\n";
      out += "states " + join(a.graph.states, " ") + "\n";
      for (const Edge& e : a.graph.edges)
        out += "edge " + e.id + " " + e.src + " " + a.label(e.id) + " " +
               e.dst + "\n";
      break;
    }
    case InputDocument::Kind::graph: {
      out += "graph\n";
      out += "states " + join(doc.graph.states, " ") + "\n";
      for (const Edge& e : doc.graph.edges)
        out += "edge " + e.id + " " + e.src + " " + e.dst + "\n";
      break;
    }
    case InputDocument::Kind::shift_forbidden: {
      out += "shift\n";
      out += "alphabet " + join(doc.alphabet, " ") + "\n";
      if (!doc.forbidden.empty()) {
        std::vector<std::string> words;
        for (const auto& w : doc.forbidden)
          words.push_back(print_word(w, doc.alphabet));
        out += "forbidden " + join(words, " ") + "\n";
      }
      break;
    }
    case InputDocument::Kind::matrix: {
      out += "matrix " + std::to_string(doc.matrix.rows()) + " " +
             std::to_string(doc.matrix.cols()) + "\n";
      for (int i = 0; i < doc.matrix.rows(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < doc.matrix.cols(); ++j)
          row.push_back(std::to_string(doc.matrix(i, j)));
        out += join(row, " ") + "\n";
      }
      break;
    }
    case InputDocument::Kind::certificate: {
      const SSECertificate& c = doc.certificate;
      bool integer = c.kind == SSECertificate::Kind::integer;
      out += std::string("certificate ") + (integer ? "integer" : "symbolic") +
             "\n";
      out += "start " +
             (integer ? print_int_matrix(c.first_int)
                      : print_alph_matrix(c.first_sym)) +
             "\n";
      for (const auto& st : c.steps) {
        out += "step R " +
               (integer ? print_int_matrix(st.r)
                        : print_alph_matrix(st.sym_r)) +
               " S " +
               (integer ? print_int_matrix(st.s)
                        : print_alph_matrix(st.sym_s));
        if (!integer)
          out += " bij" + print_bij(st.bij_first) + " bij" +
                 print_bij(st.bij_second);
        out += "\n";
      }
      out += "end " +
             (integer ? print_int_matrix(c.last_int)
                      : print_alph_matrix(c.last_sym)) +
             "\n";
      break;
    }
  }
  return out;
}

std::string export_dot(const Graph& g) {
  std::string out = "digraph {\n";
  for (const std::string& q : g.states) out += "  " + quote(q) + ";\n";
  for (const Edge& e : g.edges)
    out += "  " + quote(e.src) + " -> " + quote(e.dst) + " [label=" +
           quote(e.id) + "];\n";
  return out + "}\n";
}

std::string export_dot(const Automaton& a) {
  std::string out = "digraph {\n";
  for (const std::string& q : a.graph.states) out += "  " + quote(q) + ";\n";
  for (const Edge& e : a.graph.edges)
    out += "  " + quote(e.src) + " -> " + quote(e.dst) + " [label=" +
           quote(a.label(e.id)) + "];\n";
  return out + "}\n";
}

std::string export_dot(const SyntacticGraph& sg) {
  std::string out = "digraph {\n";
  for (size_t i = 0; i < sg.nodes.size(); ++i)
    out += "  d" + std::to_string(i) + " [label=" +
           quote("rank=" + std::to_string(sg.nodes[i].rank) +
                 " G=" + sg.nodes[i].group.name) +
           "];\n";
  for (auto [i, j] : sg.edges)
    if (i != j)
      out += "  d" + std::to_string(i) + " -> d" + std::to_string(j) + ";\n";
  return out + "}\n";
}

double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace sofic
