#ifndef SOID_AST_HPP
#define SOID_AST_HPP

#include "soid/symbol.hpp"
#include "soid/values.hpp"
#include "soid/vocabulary.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace soid {

struct SourceLoc {
	int line = 0;
	int column = 0;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// A term: a variable or constant name, an integer literal, or integer arithmetic.
struct Term {
	enum class Kind : std::uint8_t { Name, Int, Add, Sub };
	Kind kind = Kind::Name;
	Symbol name;           //!< Name
	std::int64_t value = 0; //!< Int
	TermPtr lhs;           //!< Add, Sub
	TermPtr rhs;

	static TermPtr make_name(Symbol s);
	static TermPtr make_int(std::int64_t v);
	static TermPtr make_binary(Kind k, TermPtr a, TermPtr b);
};

bool operator==(const Term& a, const Term& b);
bool same_term(const TermPtr& a, const TermPtr& b);

/// A symbol introduced by a binder together with its type.
struct TypedVar {
	Symbol name;
	Type type;
	friend bool operator==(const TypedVar&, const TypedVar&) = default;
};

enum class NodeKind : std::uint8_t {
	True,
	False,
	Atom,    //!< p(t1..tn); first or second order, decided by the type of p
	Compare, //!< t1 op t2 over the interpreted integer slice
	Not,
	And, //!< n-ary
	Or,  //!< n-ary
	Implies,
	Iff,
	Quant,      //!< first or second order, decided by the type of the variable
	Aggregate,  //!< #{x̄ : φ} op t  or  sum{x̄ : φ} op t
	Definition, //!< {rules}
	Let,        //!< let {rules} in φ
};

enum class CompareOp : std::uint8_t { Eq, Ne, Lt, Gt, Le, Ge };

struct Node;
using Expr = std::shared_ptr<const Node>;
struct RuleSet;
using RuleSetPtr = std::shared_ptr<const RuleSet>;

struct Node {
	NodeKind kind = NodeKind::True;
	SourceLoc loc;

	Symbol pred;                //!< Atom
	std::vector<TermPtr> args;  //!< Atom
	CompareOp cmp = CompareOp::Eq; //!< Compare
	TermPtr lhs;                //!< Compare
	TermPtr rhs;                //!< Compare; Aggregate bound
	std::vector<Expr> children; //!< connectives; body of Quant, Aggregate, Let
	Quantifier quant = Quantifier::Exists; //!< Quant
	TypedVar var;                          //!< Quant
	AggregateKind agg = AggregateKind::Card;
	Comparison agg_cmp = Comparison::Eq;
	std::vector<TypedVar> agg_vars;
	RuleSetPtr rules; //!< Definition, Let

	const Expr& body() const { return children.front(); }
	bool is_second_order_quant() const { return kind == NodeKind::Quant && var.type.is_predicate(); }
};

/// ∀x̄ (head(head_args) ← body); `vars` are the x̄, in order of first occurrence in the head.
struct Rule {
	Symbol head;
	std::vector<TermPtr> head_args;
	std::vector<TypedVar> vars;
	Expr body;
	SourceLoc loc;
};

struct RuleSet {
	std::vector<Rule> rules;

	std::vector<Symbol> defined() const; //!< head symbols, sorted by name
	bool defines(Symbol s) const;
};

/// Type of a rule's head symbol as fixed by its head arguments.
Type head_type(const Rule& r);

// Constructors. Locations default to 0:0.
Expr make_true(SourceLoc loc = {});
Expr make_false(SourceLoc loc = {});
Expr make_atom(Symbol pred, std::vector<TermPtr> args, SourceLoc loc = {});
Expr make_compare(CompareOp op, TermPtr a, TermPtr b, SourceLoc loc = {});
Expr make_not(Expr e, SourceLoc loc = {});
Expr make_nary(NodeKind k, std::vector<Expr> children, SourceLoc loc = {}); //!< And, Or
Expr make_and(std::vector<Expr> children, SourceLoc loc = {});
Expr make_or(std::vector<Expr> children, SourceLoc loc = {});
Expr make_implies(Expr a, Expr b, SourceLoc loc = {});
Expr make_iff(Expr a, Expr b, SourceLoc loc = {});
Expr make_quant(Quantifier q, TypedVar v, Expr body, SourceLoc loc = {});
Expr make_aggregate(AggregateKind agg, Comparison cmp, std::vector<TypedVar> vars, Expr body, TermPtr bound,
                    SourceLoc loc = {});
Expr make_definition(RuleSetPtr rules, SourceLoc loc = {});
Expr make_let(RuleSetPtr rules, Expr body, SourceLoc loc = {});

/// Structural equality; source locations are ignored.
bool equal(const Expr& a, const Expr& b);
bool equal(const Rule& a, const Rule& b);
bool equal(const RuleSet& a, const RuleSet& b);

/// Number of AST nodes, counting terms and rule heads.
std::size_t expr_size(const Expr& e);
std::size_t ruleset_size(const RuleSet& d);
std::size_t expr_depth(const Expr& e);

} // namespace soid

#endif
