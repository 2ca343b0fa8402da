#ifndef DPL_SYNTAX_PARSER_HPP_
#define DPL_SYNTAX_PARSER_HPP_

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dpl/errors.hpp"
#include "dpl/syntax/ast.hpp"
#include "dpl/syntax/vocabulary.hpp"

namespace dpl {

namespace detail {

enum class Tok {
  Ident, Zero, LBracket, RBracket, Less, Greater, LParen, RParen,
  Amp, AmpAmp, Plus, Bang, BangEq, Equal, Tilde, Arrow, DArrow, PipePipe, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t start = i;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    // Longest match first.
    static constexpr Sym kSymbols[] = {
        {"<->", Tok::DArrow}, {"->", Tok::Arrow}, {"&&", Tok::AmpAmp}, {"||", Tok::PipePipe},
        {"!=", Tok::BangEq},  {"&", Tok::Amp},    {"+", Tok::Plus},    {"!", Tok::Bang},
        {"=", Tok::Equal},    {"~", Tok::Tilde},  {"[", Tok::LBracket}, {"]", Tok::RBracket},
        {"<", Tok::Less},     {">", Tok::Greater}, {"(", Tok::LParen}, {")", Tok::RParen},
        {"0", Tok::Zero},
    };
    bool matched = false;
    for (const auto& s : kSymbols) {
      if (starts(s.text)) {
        out.push_back({s.kind, std::string(s.text), i});
        i += s.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + src[i] + "'", i);
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

inline bool is_keyword(std::string_view s) {
  return s == "true" || s == "false" || s == "U" || s == "P" || s == "Pw";
}

class Parser {
 public:
  // `vocab == nullptr` selects inference mode: identifiers in action
  // positions are actions, those in formula positions are propositions.
  Parser(std::string_view text, const Vocabulary* vocab) : tokens_(tokenize(text)), vocab_(vocab) {}

  Formula parse_formula_text() {
    Formula f = parse_iff();
    expect(Tok::End, "end of input");
    if (!vocab_) check_roles();
    return f;
  }

  ActionTerm parse_action_text() {
    ActionTerm t = parse_join();
    expect(Tok::End, "end of input");
    if (!vocab_) check_roles();
    return t;
  }

 private:
  struct Use {
    std::string name;
    bool as_action;
    std::size_t pos;
  };

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view s) const { return at(Tok::Ident) && peek().text == s; }
  const Token& advance() { return tokens_[pos_++]; }

  const Token& expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what + ", found " + describe(peek()), peek().pos);
    return advance();
  }

  void check_identifier(const Token& t) const {
    if (is_reserved_name(t.text) && !(vocab_ && vocab_->has_action(t.text)))
      throw ParseError("identifiers starting with '_' are reserved: '" + t.text + "'", t.pos);
  }

  // ---- formulas ----

  Formula parse_iff() {
    Formula f = parse_implies();
    while (at(Tok::DArrow)) {
      advance();
      f = Formula::iff(std::move(f), parse_implies());
    }
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (at(Tok::Arrow)) {
      advance();
      return Formula::implies(std::move(f), parse_implies());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (at(Tok::PipePipe)) {
      advance();
      f = Formula::disj(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (at(Tok::AmpAmp)) {
      advance();
      f = Formula::conj(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    if (at(Tok::Tilde)) {
      advance();
      return Formula::negation(parse_unary());
    }
    if (at(Tok::LBracket) || at(Tok::Less)) {
      bool box = at(Tok::LBracket);
      advance();
      ActionTerm a = parse_join();
      expect(box ? Tok::RBracket : Tok::Greater, box ? "']'" : "'>'");
      ++modal_depth_;
      Formula body = parse_unary();
      --modal_depth_;
      return box ? Formula::box(std::move(a), std::move(body)) : Formula::diamond(std::move(a), std::move(body));
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false")) {
      advance();
      return t.text == "true" ? Formula::truth() : Formula::falsity();
    }
    if (t.kind == Tok::Ident && (t.text == "P" || t.text == "Pw") && peek(1).kind == Tok::LParen) {
      bool weak = t.text == "Pw";
      advance();
      advance();
      ActionTerm a = parse_join();
      expect(Tok::RParen, "')'");
      return weak ? Formula::perm_weak(std::move(a)) : Formula::perm_strong(std::move(a));
    }
    if (auto eq = try_equation()) return *eq;
    if (t.kind == Tok::LParen) {
      advance();
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      check_identifier(t);
      if (vocab_) {
        if (vocab_->has_action(t.text))
          throw ParseError("action '" + t.text + "' used where a formula is expected", t.pos);
        Tok next = peek(1).kind;
        if (next == Tok::Equal || next == Tok::BangEq || next == Tok::Amp || next == Tok::Plus)
          throw ParseError("undeclared action '" + t.text + "'", t.pos);
        if (!vocab_->accepts_proposition(t.text))
          throw ParseError("undeclared proposition '" + t.text + "'", t.pos);
      } else {
        uses_.push_back({t.text, false, t.pos});
      }
      advance();
      return Formula::prop(t.text);
    }
    throw ParseError("expected a formula, found " + describe(t), t.pos);
  }

  // Attempts `action (= | !=) action` at the current position; restores the
  // position when the tokens do not form an equation.
  std::optional<Formula> try_equation() {
    std::size_t saved = pos_;
    std::size_t saved_uses = uses_.size();
    std::size_t start = peek().pos;
    std::optional<ActionTerm> lhs;
    try {
      lhs = parse_join();
    } catch (const ParseError&) {
      lhs.reset();
    }
    if (!lhs || !(at(Tok::Equal) || at(Tok::BangEq))) {
      pos_ = saved;
      uses_.resize(saved_uses);
      return std::nullopt;
    }
    bool eq = advance().kind == Tok::Equal;
    ActionTerm rhs = parse_join();
    if (modal_depth_ > 0) throw ParseError("equation inside a modal scope is not allowed", start);
    return eq ? Formula::equal(std::move(*lhs), std::move(rhs)) : Formula::not_equal(std::move(*lhs), std::move(rhs));
  }

  // ---- actions ----

  ActionTerm parse_join() {
    ActionTerm t = parse_meet();
    while (at(Tok::Plus)) {
      advance();
      t = ActionTerm::join(std::move(t), parse_meet());
    }
    return t;
  }

  ActionTerm parse_meet() {
    ActionTerm t = parse_compl();
    while (at(Tok::Amp)) {
      advance();
      t = ActionTerm::meet(std::move(t), parse_compl());
    }
    return t;
  }

  ActionTerm parse_compl() {
    if (at(Tok::Bang)) {
      advance();
      return ActionTerm::compl_of(parse_compl());
    }
    return parse_action_atom();
  }

  ActionTerm parse_action_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Zero) {
      advance();
      return ActionTerm::empty();
    }
    if (t.kind == Tok::LParen) {
      advance();
      ActionTerm inner = parse_join();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident && t.text == "U") {
      advance();
      return ActionTerm::univ();
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      check_identifier(t);
      if (vocab_) {
        if (!vocab_->has_action(t.text)) throw ParseError("undeclared action '" + t.text + "'", t.pos);
      } else {
        uses_.push_back({t.text, true, t.pos});
      }
      advance();
      return ActionTerm::prim(t.text);
    }
    throw ParseError("expected an action term, found " + describe(t), t.pos);
  }

  void check_roles() const {
    std::map<std::string, const Use*> first;
    for (const auto& u : uses_) {
      auto [it, inserted] = first.emplace(u.name, &u);
      if (!inserted && it->second->as_action != u.as_action)
        throw ParseError("'" + u.name + "' is used both as an action and as a proposition", u.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Vocabulary* vocab_;
  int modal_depth_ = 0;
  std::vector<Use> uses_;
};

}  // namespace detail

// Parses against a declared vocabulary: every action name must be declared.
inline Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  return detail::Parser(text, &vocab).parse_formula_text();
}

// Parses without a vocabulary; names in action positions are taken as actions.
inline Formula parse_formula(std::string_view text) { return detail::Parser(text, nullptr).parse_formula_text(); }

inline ActionTerm parse_action(std::string_view text, const Vocabulary& vocab) {
  return detail::Parser(text, &vocab).parse_action_text();
}

inline ActionTerm parse_action(std::string_view text) { return detail::Parser(text, nullptr).parse_action_text(); }

}  // namespace dpl

#endif  // DPL_SYNTAX_PARSER_HPP_
