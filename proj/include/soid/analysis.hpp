#ifndef SOID_ANALYSIS_HPP
#define SOID_ANALYSIS_HPP

#include "soid/ast.hpp"

#include <set>
#include <string>
#include <vector>

namespace soid {

/// Symbols occurring free; binders are quantifiers, aggregates, rule variables and let.
std::set<Symbol> free_symbols(const Expr& e);
/// def(Δ) ∪ pars(Δ).
std::set<Symbol> free_symbols(const RuleSet& d);
/// Free symbols of Δ other than its defined symbols.
std::set<Symbol> parameters(const RuleSet& d);

struct Diagnostic {
	SourceLoc loc;
	std::string message;
};

/// Arity and type errors; empty when `e` is well typed over `sigma`.
std::vector<Diagnostic> typecheck(const Expr& e, const Vocabulary& sigma);
std::vector<Diagnostic> typecheck(const RuleSet& d, const Vocabulary& sigma);

enum class Fragment { FO, ESO, ASO, SO };

/// Printed name, e.g. "ESO(ID*)" or "SO(ID*)-only".
std::string to_string(Fragment f);

/**
 * Smallest fragment containing `e`, by the mutually recursive FO/ESO/ASO
 * grammars with Or, Implies, Iff and the universal quantifiers read through
 * their classical definitions. A formula in both ESO and ASO but not FO
 * is reported as ESO.
 */
Fragment classify(const Expr& e, const Vocabulary& sigma);
bool in_fo(const Expr& e, const Vocabulary& sigma);
bool in_eso(const Expr& e, const Vocabulary& sigma);
bool in_aso(const Expr& e, const Vocabulary& sigma);

/**
 * Types of the free symbols of `e` not declared in `known`, inferred from
 * their uses. Throws InputError on contradicting uses.
 */
Vocabulary infer_vocabulary(const std::vector<Expr>& formulas, const std::vector<const RuleSet*>& rule_sets,
                            const Vocabulary& known);

} // namespace soid

#endif
