#ifndef SOID_SRC_PARSER_IMPL_HPP
#define SOID_SRC_PARSER_IMPL_HPP

#include "lexer.hpp"
#include "soid/ast.hpp"

#include <vector>

namespace soid::detail {

/// Recursive descent parser over a shared token stream.
class Parser {
public:
	/// `registry` receives the inferred types of rule heads not declared in `vocab`.
	Parser(TokenStream& ts, const Vocabulary* vocab, Vocabulary* registry);

	Expr formula();
	/// Rule items up to (not including) a closing '}' or the end of input.
	RuleSet rule_items();
	Type parse_type(); //!< `const`, `bool`, `pred/2`, `so-pred(pred/2, elem)`, `(δ,δ)`, `((δ²→𝔹),δ)`

private:
	struct PendingRule {
		Symbol head;
		std::vector<TermPtr> args;
		std::vector<Symbol> vars;
		std::vector<int> annotated; //!< arity annotation per var, -1 if none
		std::vector<Expr> body;
		SourceLoc loc;
	};

	Expr iff();
	Expr implies();
	Expr disjunction();
	Expr conjunction();
	Expr unary();
	Expr quantifier();
	Expr primary();
	Expr aggregate(AggregateKind k, SourceLoc loc);
	TermPtr term();
	TermPtr term_primary();
	RuleSetPtr braced_rules();

	bool item_is_rule() const;
	bool item_is_fact() const;
	PendingRule head(bool allow_annotations);
	Rule finish(PendingRule&& p);

	const Type* known_type(Symbol s) const;
	bool is_bound(Symbol s) const;
	bool is_constant(Symbol s) const;
	Type infer(Symbol v, const std::vector<const Expr*>& bodies, const std::vector<const Rule*>& extra) const;

	TokenStream& ts_;
	const Vocabulary* vocab_;
	Vocabulary* registry_;
	std::vector<Symbol> scope_;
};

SourceLoc loc_of(const Token& t);

} // namespace soid::detail

#endif
