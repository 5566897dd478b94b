/** \file
 * Reference implementations used by the acceptance suite. None of them goes
 * through the library's evaluator or fixpoint code.
 */
#ifndef SOID_TESTS_ORACLES_HPP
#define SOID_TESTS_ORACLES_HPP

#include "soid/ast.hpp"
#include "soid/interpretation.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace soid::oracle {

/// glb in the precision order of f over every exact completion of x.
TV glb_completions(const std::function<bool(std::span<const bool>)>& f, std::span<const TV> x);

/// Supervaluation by hand: glb of eval_exact over all completions of the free predicates of e.
TV supervaluation(const Expr& e, const Interpretation& i);

/// Relations on n elements as bitmasks, bit i*n+j for (i,j).
std::uint64_t transitive_closure(std::uint64_t rel, int n);
bool is_equivalence(std::uint64_t rel, int n);

struct GameValue {
	std::uint32_t win = 0; //!< bit per position
	std::uint32_t lose = 0;
	friend bool operator==(const GameValue&, const GameValue&) = default;
};

/// Backward induction on an acyclic move graph; nullopt when the graph has a cycle.
std::optional<GameValue> backward_induction(std::uint64_t move, std::uint32_t won, int n);
/// Retrograde analysis: the least fixpoint, so positions on cycles with no forced outcome are neither.
GameValue retrograde(std::uint64_t move, std::uint32_t won, int n);

/// A propositional rule set with atoms numbered in order of first appearance.
class PropProgram {
public:
	explicit PropProgram(const RuleSet& d);

	int atom_count() const { return static_cast<int>(atoms_.size()); }
	const std::vector<Symbol>& atoms() const { return atoms_; }
	int index(Symbol s) const { return index_.at(s); }

	/// Bodies with positive occurrences read from `pos` and negative ones from `neg`.
	std::uint32_t step(std::uint32_t pos, std::uint32_t neg) const;
	/// lfp of x -> step(x, neg).
	std::uint32_t lfp(std::uint32_t neg) const;
	/// Exact stable models: the M with lfp(M) = M.
	std::vector<std::uint32_t> stable_models() const;
	/// Alternating fixpoint; returns (true atoms, possibly true atoms).
	std::pair<std::uint32_t, std::uint32_t> well_founded() const;
	/// Least model by classical iteration from the empty set; meaningful for monotone bodies.
	std::uint32_t least_model() const;

	/// Kleene value of a body under one value per atom.
	TV kleene(const Expr& e, const std::vector<TV>& values) const;

	std::string show(std::uint32_t t, std::uint32_t u = 0) const; //!< e.g. `p=t q=u`

private:
	bool polar(const Expr& e, std::uint32_t pos, std::uint32_t neg) const;

	std::vector<Symbol> atoms_;
	std::map<Symbol, int> index_;
	std::vector<std::pair<int, Expr>> rules_;
};

} // namespace soid::oracle

#endif
