#ifndef SOID_SRC_REWRITER_HPP
#define SOID_SRC_REWRITER_HPP

#include "soid/ast.hpp"

#include <optional>
#include <vector>

namespace soid::detail {

/**
 * Structural copy of an expression that tracks binders. Subclasses rename
 * binders, rewrite free names and atoms, or take over whole nodes.
 */
class Rewriter {
public:
	virtual ~Rewriter() = default;

	virtual Expr expr(const Expr& e) { return rebuild(e); }
	Expr rebuild(const Expr& e);
	RuleSetPtr rules(const RuleSet& d);
	TermPtr term(const TermPtr& t);

protected:
	struct Entry {
		Symbol from;
		Symbol to;
		int tag = -1; //!< subclass data
	};

	virtual std::optional<Symbol> rename_binder(Symbol) { return std::nullopt; }
	virtual TermPtr free_name(const TermPtr& t) { return t; }
	virtual Expr free_atom(const Node& n, std::vector<TermPtr> args);
	virtual Expr bound_atom(const Entry& b, const Node& n, std::vector<TermPtr> args);
	virtual TermPtr bound_name(const Entry& b, const TermPtr& t);
	/// `built` has renamed variables, rewritten arguments and body; the head symbol is free.
	virtual Rule free_head(const Rule& original, Rule built);

	const Entry* lookup(Symbol s) const;
	Symbol push(Symbol s, int tag = -1);
	std::size_t mark() const { return scope_.size(); }
	void pop_to(std::size_t m) { scope_.resize(m); }

	std::vector<Entry> scope_;
};

} // namespace soid::detail

#endif
