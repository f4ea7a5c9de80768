#include "qst/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qst {

namespace {

Formula node(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

}  // namespace

Formula make_not(Formula a) {
  return node({FormulaKind::Not, std::move(a), nullptr, "", {}, AtomRel::Eq, {}, {}});
}
Formula make_and(Formula a, Formula b) {
  return node({FormulaKind::And, std::move(a), std::move(b), "", {}, AtomRel::Eq, {}, {}});
}
Formula make_or(Formula a, Formula b) {
  return node({FormulaKind::Or, std::move(a), std::move(b), "", {}, AtomRel::Eq, {}, {}});
}
Formula make_imp(Formula a, Formula b) {
  return node({FormulaKind::Imp, std::move(a), std::move(b), "", {}, AtomRel::Eq, {}, {}});
}
Formula make_iff(Formula a, Formula b) {
  return node({FormulaKind::Iff, std::move(a), std::move(b), "", {}, AtomRel::Eq, {}, {}});
}
Formula make_forall_in(std::string var, Term range, Formula body) {
  return node({FormulaKind::ForallIn, std::move(body), nullptr, std::move(var),
               std::move(range), AtomRel::Eq, {}, {}});
}
Formula make_exists_in(std::string var, Term range, Formula body) {
  return node({FormulaKind::ExistsIn, std::move(body), nullptr, std::move(var),
               std::move(range), AtomRel::Eq, {}, {}});
}
Formula make_forall(std::string var, Formula body) {
  return node({FormulaKind::Forall, std::move(body), nullptr, std::move(var), {},
               AtomRel::Eq, {}, {}});
}
Formula make_exists(std::string var, Formula body) {
  return node({FormulaKind::Exists, std::move(body), nullptr, std::move(var), {},
               AtomRel::Eq, {}, {}});
}
Formula make_atom(AtomRel rel, Term t1, Term t2) {
  return node({FormulaKind::Atom, nullptr, nullptr, "", {}, rel, std::move(t1),
               std::move(t2)});
}

namespace {

struct Token {
  enum Kind { Ident, KwA, KwE, KwIn, KwSub, Not, And, Or, Imp, Iff, LPar, RPar, Dot, Eq, End };
  Kind kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : t_(text) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) {
      if (t_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++i_;
    }
    int line = line_, col = col_;
    auto mk = [&](Token::Kind k, std::string s) {
      tok_ = Token{k, std::move(s), line, col};
    };
    if (i_ >= t_.size()) return mk(Token::End, "");
    char c = t_[i_];
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < t_.size() && t_[i_ + 1] == b;
    };
    if (two('<', '-') && i_ + 2 < t_.size() && t_[i_ + 2] == '>') {
      i_ += 3;
      col_ += 3;
      return mk(Token::Iff, "<->");
    }
    if (two('-', '>')) {
      i_ += 2;
      col_ += 2;
      return mk(Token::Imp, "->");
    }
    switch (c) {
      case '!': ++i_; ++col_; return mk(Token::Not, "!");
      case '&': ++i_; ++col_; return mk(Token::And, "&");
      case '|': ++i_; ++col_; return mk(Token::Or, "|");
      case '(': ++i_; ++col_; return mk(Token::LPar, "(");
      case ')': ++i_; ++col_; return mk(Token::RPar, ")");
      case '.': ++i_; ++col_; return mk(Token::Dot, ".");
      case '=': ++i_; ++col_; return mk(Token::Eq, "=");
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < t_.size() &&
             (std::isalnum(static_cast<unsigned char>(t_[j])) || t_[j] == '_'))
        ++j;
      std::string word = t_.substr(i_, j - i_);
      col_ += int(j - i_);
      i_ = j;
      if (word == "A") return mk(Token::KwA, word);
      if (word == "E") return mk(Token::KwE, word);
      if (word == "in") return mk(Token::KwIn, word);
      if (word == "sub") return mk(Token::KwSub, word);
      return mk(Token::Ident, word);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

  const std::string& t_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_{Token::End, "", 1, 1};
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Formula run() {
    Formula f = formula();
    const Token& t = lex_.peek();
    if (t.kind != Token::End) throw ParseError("trailing input", t.line, t.col);
    return f;
  }

 private:
  Formula formula() { return iff(); }

  Formula iff() {
    Formula a = imp();
    if (lex_.peek().kind == Token::Iff) {
      lex_.take();
      return make_iff(std::move(a), iff());  // right-associative
    }
    return a;
  }

  Formula imp() {
    Formula a = disj();
    if (lex_.peek().kind == Token::Imp) {
      lex_.take();
      return make_imp(std::move(a), imp());  // right-associative
    }
    return a;
  }

  Formula disj() {
    Formula a = conj();
    while (lex_.peek().kind == Token::Or) {
      lex_.take();
      a = make_or(std::move(a), conj());
    }
    return a;
  }

  Formula conj() {
    Formula a = unary();
    while (lex_.peek().kind == Token::And) {
      lex_.take();
      a = make_and(std::move(a), unary());
    }
    return a;
  }

  Formula unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Not:
        lex_.take();
        return make_not(unary());
      case Token::KwA:
      case Token::KwE:
        return quant();
      case Token::LPar: {
        lex_.take();
        Formula f = formula();
        expect(Token::RPar, ")");
        return f;
      }
      case Token::Ident:
        return atom();
      default:
        throw ParseError("expected a formula", t.line, t.col);
    }
  }

  Formula quant() {
    Token q = lex_.take();
    Token name = expect(Token::Ident, "variable");
    if (std::find(scope_.begin(), scope_.end(), name.text) != scope_.end())
      throw ParseError("variable '" + name.text + "' already bound on this path",
                       name.line, name.col);
    bool bounded = lex_.peek().kind == Token::KwIn;
    Term range;
    if (bounded) {
      lex_.take();
      range = term();
    }
    expect(Token::Dot, ".");
    scope_.push_back(name.text);
    Formula body = unary();
    scope_.pop_back();
    if (q.kind == Token::KwA)
      return bounded ? make_forall_in(name.text, range, std::move(body))
                     : make_forall(name.text, std::move(body));
    return bounded ? make_exists_in(name.text, range, std::move(body))
                   : make_exists(name.text, std::move(body));
  }

  Formula atom() {
    Term a = term();
    const Token& t = lex_.peek();
    AtomRel rel;
    if (t.kind == Token::Eq)
      rel = AtomRel::Eq;
    else if (t.kind == Token::KwIn)
      rel = AtomRel::In;
    else if (t.kind == Token::KwSub)
      rel = AtomRel::Sub;
    else
      throw ParseError("expected '=', 'in' or 'sub'", t.line, t.col);
    lex_.take();
    Term b = term();
    return make_atom(rel, std::move(a), std::move(b));
  }

  Term term() {
    Token t = expect(Token::Ident, "term");
    bool bound = std::find(scope_.begin(), scope_.end(), t.text) != scope_.end();
    return Term{bound, t.text};
  }

  Token expect(Token::Kind k, const char* what) {
    const Token& t = lex_.peek();
    if (t.kind != k) throw ParseError(std::string("expected ") + what, t.line, t.col);
    return lex_.take();
  }

  Lexer lex_;
  std::vector<std::string> scope_;
};

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Imp: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    default: return 5;
  }
}

void print_at(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f->kind);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f->kind) {
    case FormulaKind::Not:
      out += "!(";
      print_at(f->lhs, 0, out);
      out += ')';
      break;
    case FormulaKind::And:
      print_at(f->lhs, 4, out);
      out += " & ";
      print_at(f->rhs, 5, out);
      break;
    case FormulaKind::Or:
      print_at(f->lhs, 3, out);
      out += " | ";
      print_at(f->rhs, 4, out);
      break;
    case FormulaKind::Imp:
      print_at(f->lhs, 3, out);
      out += " -> ";
      print_at(f->rhs, 2, out);
      break;
    case FormulaKind::Iff:
      print_at(f->lhs, 2, out);
      out += " <-> ";
      print_at(f->rhs, 1, out);
      break;
    case FormulaKind::ForallIn:
    case FormulaKind::ExistsIn:
      out += f->kind == FormulaKind::ForallIn ? "A " : "E ";
      out += f->var + " in " + f->bound.name + " . ";
      print_at(f->lhs, 5, out);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f->kind == FormulaKind::Forall ? "A " : "E ";
      out += f->var + " . ";
      print_at(f->lhs, 5, out);
      break;
    case FormulaKind::Atom:
      out += f->t1.name;
      out += f->rel == AtomRel::Eq ? " = " : f->rel == AtomRel::In ? " in " : " sub ";
      out += f->t2.name;
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Formula& f) {
  std::string out;
  print_at(f, 0, out);
  return out;
}

namespace {
void collect_free(const Formula& f, std::vector<std::string>& out) {
  auto add = [&](const Term& t) {
    if (!t.bound && std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
  };
  switch (f->kind) {
    case FormulaKind::Atom:
      add(f->t1);
      add(f->t2);
      return;
    case FormulaKind::ForallIn:
    case FormulaKind::ExistsIn:
      add(f->bound);
      collect_free(f->lhs, out);
      return;
    default:
      if (f->lhs) collect_free(f->lhs, out);
      if (f->rhs) collect_free(f->rhs, out);
      return;
  }
}
}  // namespace

std::vector<std::string> free_names(const Formula& f) {
  std::vector<std::string> out;
  collect_free(f, out);
  return out;
}

bool is_delta0(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return false;
    case FormulaKind::Atom:
      return true;
    default:
      if (f->lhs && !is_delta0(f->lhs)) return false;
      if (f->rhs && !is_delta0(f->rhs)) return false;
      return true;
  }
}

Formula desugar(const Formula& f, const DesugarOptions& opt) {
  auto rec = [&opt](const Formula& g) { return desugar(g, opt); };
  switch (f->kind) {
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Not:
      return make_not(rec(f->lhs));
    case FormulaKind::And:
      return make_and(rec(f->lhs), rec(f->rhs));
    case FormulaKind::Imp:
      return make_imp(rec(f->lhs), rec(f->rhs));
    case FormulaKind::Iff: {
      Formula a = rec(f->lhs), b = rec(f->rhs);
      Formula both = make_and(a, b);
      Formula neither = make_and(make_not(a), make_not(b));
      return opt.self_dual_basis
                 ? make_not(make_and(make_not(both), make_not(neither)))
                 : make_or(both, neither);
    }
    case FormulaKind::Or: {
      Formula a = rec(f->lhs), b = rec(f->rhs);
      return opt.self_dual_basis ? make_not(make_and(make_not(a), make_not(b)))
                                 : make_or(a, b);
    }
    case FormulaKind::ForallIn:
      return make_forall_in(f->var, f->bound, rec(f->lhs));
    case FormulaKind::ExistsIn: {
      Formula body = rec(f->lhs);
      return opt.self_dual_basis
                 ? make_not(make_forall_in(f->var, f->bound, make_not(body)))
                 : make_exists_in(f->var, f->bound, body);
    }
    case FormulaKind::Forall:
      return make_forall(f->var, rec(f->lhs));
    case FormulaKind::Exists: {
      Formula body = rec(f->lhs);
      return opt.self_dual_basis ? make_not(make_forall(f->var, make_not(body)))
                                 : make_exists(f->var, body);
    }
  }
  throw Error("bad formula node");
}

namespace {
const HFSet& resolve(const Term& t, const std::map<std::string, HFSet>& env) {
  auto it = env.find(t.name);
  if (it == env.end())
    throw Error((t.bound ? "unbound variable: " : "unresolved constant: ") + t.name);
  return it->second;
}

bool sat(const Formula& f, std::map<std::string, HFSet>& env) {
  switch (f->kind) {
    case FormulaKind::Not:
      return !sat(f->lhs, env);
    case FormulaKind::And:
      return sat(f->lhs, env) && sat(f->rhs, env);
    case FormulaKind::Or:
      return sat(f->lhs, env) || sat(f->rhs, env);
    case FormulaKind::Imp:
      return !sat(f->lhs, env) || sat(f->rhs, env);
    case FormulaKind::Iff:
      return sat(f->lhs, env) == sat(f->rhs, env);
    case FormulaKind::ForallIn:
    case FormulaKind::ExistsIn: {
      HFSet range = resolve(f->bound, env);
      bool exists = f->kind == FormulaKind::ExistsIn;
      auto saved = env.find(f->var) != env.end()
                       ? std::optional<HFSet>(env[f->var])
                       : std::nullopt;
      bool out = !exists;
      for (const HFSet& m : range.members()) {
        env[f->var] = m;
        bool v = sat(f->lhs, env);
        if (exists && v) {
          out = true;
          break;
        }
        if (!exists && !v) {
          out = false;
          break;
        }
      }
      if (saved)
        env[f->var] = *saved;
      else
        env.erase(f->var);
      return out;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      throw Error("unbounded quantifier over an infinite universe");
    case FormulaKind::Atom: {
      const HFSet& a = resolve(f->t1, env);
      const HFSet& b = resolve(f->t2, env);
      switch (f->rel) {
        case AtomRel::Eq: return a == b;
        case AtomRel::In: return b.contains(a);
        case AtomRel::Sub: return a.subset_of(b);
      }
    }
  }
  throw Error("bad formula node");
}
}  // namespace

bool classical_satisfaction(const Formula& f, const std::map<std::string, HFSet>& env) {
  std::map<std::string, HFSet> scratch = env;
  return sat(f, scratch);
}

}  // namespace qst
