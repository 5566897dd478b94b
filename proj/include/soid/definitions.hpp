#ifndef SOID_DEFINITIONS_HPP
#define SOID_DEFINITIONS_HPP

#include "soid/ast.hpp"
#include "soid/interpretation.hpp"
#include "soid/limits.hpp"

#include <optional>
#include <vector>

namespace soid {

/// Outcome of the three-condition partial stable test, with witnesses for failed conditions.
struct StableReport {
	bool supported = false; //!< condition 1: each defined atom equals the Max of its rule bodies
	bool prudent = false;   //!< condition 2
	bool brave = false;     //!< condition 3
	bool is_partial_stable = false;
	bool is_wfm = false;
	bool is_stable_exact = false;
	std::vector<DomainAtom> unsupported;  //!< atoms violating condition 1
	std::vector<DomainAtom> prudence_t;   //!< T of a closed I[T:u][U:t]
	std::vector<DomainAtom> prudence_u;   //!< U of the same
	std::vector<DomainAtom> unfounded;    //!< a nonempty unfounded set
};

/// Types of the defined symbols, from their rule heads. Throws InputError when two rules disagree.
std::vector<std::pair<Symbol, Type>> defined_types(const RuleSet& d);

/// True bodies force true heads: every defined atom with a t body is t in `i`.
bool is_closed(const RuleSet& d, const Interpretation& i, const Limits& limits = {});

/**
 * Whether `u_set` is a set of u-atoms of `i` whose rule bodies all evaluate to
 * f in I[U:f]. Throws InputError for atoms of symbols `d` does not define.
 */
bool is_unfounded(const RuleSet& d, const Interpretation& i, const std::vector<DomainAtom>& u_set,
                  const Limits& limits = {});

/// Literal check of supportedness, prudence and braveness; `is_wfm` compares with the well-founded model.
StableReport is_partial_stable(const RuleSet& d, const Interpretation& i, const Limits& limits = {});

/**
 * Every partial stable expansion of the context `o`, found by testing all 3^n
 * assignments to the n defined atoms (n capped by max_partial_stable_atoms).
 * `o` must interpret the parameters and none of the defined symbols.
 */
std::vector<Interpretation> partial_stable_models(const RuleSet& d, const Interpretation& o,
                                                  const Limits& limits = {});

/// Well-founded model by the alternating fixpoint. Never empty for a rule set that evaluates.
std::optional<Interpretation> well_founded_model(const RuleSet& d, const Interpretation& o,
                                                 const Limits& limits = {});

/// The ≤p-least partial stable model found by enumeration, or nullopt if there is no least one.
std::optional<Interpretation> well_founded_model_bruteforce(const RuleSet& d, const Interpretation& o,
                                                            const Limits& limits = {});

/// Exact partial stable models, by the lfp test over all 2^n exact candidates.
std::vector<Interpretation> stable_models(const RuleSet& d, const Interpretation& o, const Limits& limits = {});

/// Whether the well-founded model in context `o` is exact.
bool is_total(const RuleSet& d, const Interpretation& o, const Limits& limits = {});

enum class DefSemantics { W, St };

/**
 * Truth value of Δ in `i`: on exact `i`, t iff `i` is the exact well-founded
 * model (W) or a stable model (St) of Δ; on partial `i`, the glb over the
 * completions of the free symbols of Δ.
 */
TV eval_definition(const RuleSet& d, const Interpretation& i, DefSemantics sem, const Limits& limits = {});

} // namespace soid

#endif
