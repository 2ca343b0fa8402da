#ifndef DPL_SYNTAX_PRINTER_HPP_
#define DPL_SYNTAX_PRINTER_HPP_

#include <string>

#include "dpl/syntax/ast.hpp"

namespace dpl {

namespace detail {

// Binding strength; higher binds tighter.
inline int precedence(const ActionTerm& t) {
  switch (t.kind()) {
    case ActionTerm::Kind::Join: return 1;
    case ActionTerm::Kind::Meet: return 2;
    case ActionTerm::Kind::Compl: return 3;
    default: return 4;
  }
}

inline int precedence(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Iff: return 1;
    case K::Implies: return 2;
    case K::Or: return 3;
    case K::And: return 4;
    case K::Not:
    case K::Box:
    case K::Diamond: return 5;
    default: return 6;
  }
}

inline void print_term(const ActionTerm& t, int min_prec, std::string& out);

inline void print_term_binary(const ActionTerm& t, const char* op, std::string& out) {
  int p = precedence(t);
  print_term(t.lhs(), p, out);
  out += op;
  print_term(t.rhs(), p + 1, out);
}

inline void print_term(const ActionTerm& t, int min_prec, std::string& out) {
  bool parens = precedence(t) < min_prec;
  if (parens) out += '(';
  switch (t.kind()) {
    case ActionTerm::Kind::Prim: out += t.name(); break;
    case ActionTerm::Kind::Empty: out += '0'; break;
    case ActionTerm::Kind::Univ: out += 'U'; break;
    case ActionTerm::Kind::Compl:
      out += '!';
      print_term(t.operand(), 3, out);
      break;
    case ActionTerm::Kind::Meet: print_term_binary(t, " & ", out); break;
    case ActionTerm::Kind::Join: print_term_binary(t, " + ", out); break;
  }
  if (parens) out += ')';
}

inline void print_formula(const Formula& f, int min_prec, std::string& out) {
  using K = Formula::Kind;
  int p = precedence(f);
  bool parens = p < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case K::Prop: out += f.name(); break;
    case K::True: out += "true"; break;
    case K::False: out += "false"; break;
    case K::Not:
      out += '~';
      print_formula(f.operand(), 5, out);
      break;
    case K::Box:
      out += '[';
      print_term(f.action(), 0, out);
      out += ']';
      print_formula(f.body(), 5, out);
      break;
    case K::Diamond:
      out += '<';
      print_term(f.action(), 0, out);
      out += '>';
      print_formula(f.body(), 5, out);
      break;
    case K::PermS:
      out += "P(";
      print_term(f.action(), 0, out);
      out += ')';
      break;
    case K::PermW:
      out += "Pw(";
      print_term(f.action(), 0, out);
      out += ')';
      break;
    case K::Eq:
    case K::Neq:
      print_term(f.left_term(), 0, out);
      out += f.kind() == K::Eq ? " = " : " != ";
      print_term(f.right_term(), 0, out);
      break;
    case K::Implies:  // right associative
      print_formula(f.lhs(), p + 1, out);
      out += " -> ";
      print_formula(f.rhs(), p, out);
      break;
    case K::And:
    case K::Or:
    case K::Iff: {
      const char* op = f.kind() == K::And ? " && " : f.kind() == K::Or ? " || " : " <-> ";
      print_formula(f.lhs(), p, out);
      out += op;
      print_formula(f.rhs(), p + 1, out);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string to_string(const ActionTerm& t) {
  std::string out;
  detail::print_term(t, 0, out);
  return out;
}

// Renders in the surface grammar accepted by parse_formula, with the minimum
// parentheses needed to reparse to the same tree.
inline std::string pretty_print(const Formula& f) {
  std::string out;
  detail::print_formula(f, 0, out);
  return out;
}

inline std::string to_string(const Formula& f) { return pretty_print(f); }

}  // namespace dpl

#endif  // DPL_SYNTAX_PRINTER_HPP_
