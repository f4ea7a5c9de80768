#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qst/hf.hpp"
#include "qst/lattice.hpp"

namespace qst {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int col)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

/// A term is a variable bound by an enclosing quantifier or a named constant
/// to be resolved against an environment.
struct Term {
  bool bound = false;
  std::string name;
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

enum class FormulaKind : std::uint8_t {
  Not, And, Or, Imp, Iff, ForallIn, ExistsIn, Forall, Exists, Atom
};
enum class AtomRel : std::uint8_t { Eq, In, Sub };

struct FormulaNode {
  FormulaKind kind;
  Formula lhs, rhs;   // children of connectives; lhs is the quantifier body
  std::string var;    // quantifier variable
  Term bound;         // range of a bounded quantifier
  AtomRel rel = AtomRel::Eq;
  Term t1, t2;        // atom arguments
  int line = 0, col = 0;
};

Formula make_not(Formula a);
Formula make_and(Formula a, Formula b);
Formula make_or(Formula a, Formula b);
Formula make_imp(Formula a, Formula b);
Formula make_iff(Formula a, Formula b);
Formula make_forall_in(std::string var, Term range, Formula body);
Formula make_exists_in(std::string var, Term range, Formula body);
Formula make_forall(std::string var, Formula body);
Formula make_exists(std::string var, Formula body);
Formula make_atom(AtomRel rel, Term t1, Term t2);

/// Recursive-descent parser for the surface grammar:
///   formula := iff ; iff := imp {"<->" imp} ; imp := or {"->" or} ;
///   or := and {"|" and} ; and := unary {"&" unary} ;
///   unary := "!" unary | quant | atom | "(" formula ")" ;
///   quant := ("A"|"E") ident ["in" term] "." unary ;
///   atom := term ("="|"in"|"sub") term ; term := ident .
/// "->" and "<->" associate to the right. Quantifier bodies bind tighter
/// than binary connectives. Rebinding a variable in scope is an error.
Formula parse(const std::string& text);

/// Canonical rendering; parse(print(f)) reproduces f.
std::string print(const Formula& f);

/// Free names, in order of first appearance.
std::vector<std::string> free_names(const Formula& f);

/// True iff the formula has no unbounded quantifiers once sugar is expanded.
bool is_delta0(const Formula& f);

struct DesugarOptions {
  /// Keep only the self-dual primitive basis: Or, ExistsIn and Exists are
  /// rewritten through negation and the universal forms.
  bool self_dual_basis = false;
};

/// Expands Iff unconditionally (it abbreviates (a&b)|(!a&!b)); Sub stays a
/// primitive atom evaluated by its defining formula. With the basis flag the
/// dual connectives are eliminated as well.
Formula desugar(const Formula& f, const DesugarOptions& opt = {});

/// Two-valued satisfaction over honest hereditarily finite sets; the
/// classical side of the elementary-equivalence checks. Rejects unbounded
/// quantifiers (the universe is not finite).
bool classical_satisfaction(const Formula& f, const std::map<std::string, HFSet>& env);

}  // namespace qst
