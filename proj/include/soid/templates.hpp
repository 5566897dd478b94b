#ifndef SOID_TEMPLATES_HPP
#define SOID_TEMPLATES_HPP

#include "soid/ast.hpp"
#include "soid/interpretation.hpp"
#include "soid/limits.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace soid {

struct Template {
	std::string name;
	RuleSetPtr rules;
};

/// Templates plus Σ_Temp: the template symbols and the interpreted symbols they may use.
struct TemplateLibrary {
	std::vector<Template> templates;
	Vocabulary vocab; //!< types of template symbols (flag kTemplate) and interpreted symbols (kInterpreted)

	/// Symbols defined by some template, sorted by name.
	std::vector<Symbol> template_symbols() const;
	bool is_template_symbol(Symbol s) const;
	/// Template defining `s`, or nullptr.
	const Template* defining(Symbol s) const;
};

/// Builds a library, registering defined symbols with the kTemplate flag and their head types.
TemplateLibrary make_library(std::vector<Template> templates, const Vocabulary& interpreted = {});

struct LibraryIssue {
	enum class Kind { DuplicateDefinition, ForeignSymbol, Cycle, NotTotal, Invalid };
	Kind kind;
	std::string message;
};

std::string to_string(LibraryIssue::Kind k);

struct LibraryReport {
	bool valid = false;
	std::vector<LibraryIssue> issues;
	std::vector<Symbol> order;          //!< template symbols, lower strata first
	std::size_t contexts_checked = 0;   //!< parameter contexts tested for paradox-freeness
};

/**
 * Checks unique definition, Σ_Temp purity, stratification (a topological
 * order of the dependency relation, or a cycle as witness) and
 * paradox-freeness on each test domain. Paradox-freeness is tested in every
 * exact context of the template's parameters when they have at most
 * `limits.max_subset_atoms` atoms, otherwise in the context given by the
 * lower strata.
 */
LibraryReport validate_library(const TemplateLibrary& l, const std::vector<DomainPtr>& test_domains,
                               const Limits& limits = {});

/// Template symbols in an order where every template comes after the ones it uses. Throws InputError on a cycle.
std::vector<Symbol> stratify(const TemplateLibrary& l);

/**
 * The exact expansion of `i` to the template symbols, stratum by stratum,
 * each template symbol taking the well-founded model of its template.
 * Throws InputError if `i` interprets a template symbol and NonTotalDefinition
 * when a template has no exact well-founded model on this domain.
 */
Interpretation apply_library(const Interpretation& i, const TemplateLibrary& l, const Limits& limits = {});

// -- templification ---------------------------------------------------------

struct Templified {
	RuleSet rules;
	std::vector<std::pair<Symbol, Symbol>> renamed; //!< P ↦ P'
	std::vector<Symbol> open;                        //!< ō, the appended arguments in order
	Vocabulary vocab;                                //!< types of the P'
};

/// pars(Δ) minus the symbols flagged template or interpreted in `sigma`, sorted by name.
std::vector<Symbol> open_symbols(const RuleSet& d, const Vocabulary& sigma);

/**
 * Δ_Temp: every atom P(t̄) of a defined P becomes P'(t̄, ō) and each rule is
 * universally closed over ō, which become relation-typed rule variables
 * keeping their names. Throws InputError when an open symbol is not a first
 * order predicate of `sigma`. With no open symbols the defined symbols keep their names.
 */
Templified templify(const RuleSet& d, const std::vector<Symbol>& open, const Vocabulary& sigma);

/**
 * Whether `i` corresponds to `it`: identical on shared symbols and, for each
 * defined P, P^i(d̄) = P'^it(d̄, ō^i) for every d̄. Open symbols must be exact in `i`.
 */
bool check_correspondence(const RuleSet& d, const Templified& t, const Interpretation& i, const Interpretation& it);

// -- rewriting ----------------------------------------------------------------

/// Whether `tpl` is one rule P(x̄) <- φ with distinct variables x̄, a second order P and φ in FO(ID*).
bool is_simple_template(const Template& tpl, const Vocabulary& sigma);

/// Deterministic fresh names `<base>_<k>` avoiding a set of used names.
class NameGenerator {
public:
	void reserve(Symbol s) { used_.insert(s.name()); }
	void reserve_all(const Expr& e);
	void reserve_all(const RuleSet& d);
	Symbol fresh(const std::string& base);

private:
	std::set<std::string> used_;
	std::map<std::string, int> next_;
};

/**
 * Replaces template atoms by the instantiated bodies of their simple
 * templates until none is left, freshening bound symbols of each
 * instance. Throws InputError for a template that is not simple or is used
 * recursively.
 */
Expr macro_expand(const Expr& phi, const TemplateLibrary& l);

struct Skolemized {
	Expr formula;
	Vocabulary added;                                //!< the fresh predicate symbols of Σ₁
	std::vector<std::pair<Symbol, Symbol>> replaced; //!< quantified symbol ↦ fresh symbol
};

/**
 * Removes second order quantifiers from an ESO(ID*) formula: each
 * existential (in polarity) SO quantifier over P/n becomes a fresh free
 * symbol of arity n+m, extended by the m universal first order variables
 * in scope, innermost first. Throws InputError on a universal SO quantifier
 * or an SO quantifier under ⇔.
 */
Skolemized eliminate_so(const Expr& phi, const Vocabulary& sigma);

struct EquivalenceReport {
	bool equivalent = true;
	std::size_t structures = 0; //!< Σ-structures checked
	std::string counterexample; //!< structure text when not equivalent
};

/**
 * Σ-equivalence by model enumeration: on every exact Σ-structure over each
 * domain, `lhs` holds iff some expansion to the symbols of `rhs_extra`
 * satisfies `rhs`. Both sides see the template symbols of `lib`.
 */
EquivalenceReport check_sigma_equivalence(const Expr& lhs, const TemplateLibrary* lib, const Expr& rhs,
                                          const Vocabulary& rhs_extra, const Vocabulary& sigma,
                                          const std::vector<DomainPtr>& domains, const Limits& limits = {});

/// Calls `visit` with every exact interpretation of `sigma` over `dom` extending `base`; stops when it returns false.
void for_each_structure(const Interpretation& base, const Vocabulary& sigma,
                        const std::function<bool(const Interpretation&)>& visit, const Limits& limits = {});

} // namespace soid

#endif
