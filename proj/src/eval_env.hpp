#ifndef SOID_EVAL_ENV_HPP
#define SOID_EVAL_ENV_HPP

#include "soid/ast.hpp"
#include "soid/errors.hpp"
#include "soid/interpretation.hpp"
#include "soid/limits.hpp"

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace soid::detail {

/// Value of a symbol bound during evaluation.
struct Binding {
	enum class Kind : std::uint8_t { Element, Mask, Table };
	Symbol sym;
	Kind kind = Kind::Element;
	int arity = 0;           //!< Mask: relation arity
	Element element = 0;     //!< Element
	std::uint64_t mask = 0;  //!< Mask: exact relation
	const PredTable* table = nullptr; //!< Table
};

/// Thrown when a covered u-cell is read before its completion value was chosen.
struct NeedAtom {
	std::size_t context;
	std::size_t slot;
	std::size_t index;
};

/// One lazily enumerated set of completions: the tables it covers and the cell values chosen so far.
struct CompletionContext {
	std::vector<const PredTable*> covered;
	std::unordered_map<std::uint64_t, TV> chosen;
};

struct TermValue {
	bool defined = false;
	Element element = -1; //!< -1 when not a domain element
	std::optional<std::int64_t> number;
};

/// A relation-valued symbol: either an exact mask or a (possibly partial) first order table.
struct RelationRef {
	int arity = 0;
	bool is_mask = false;
	std::uint64_t mask = 0;
	const PredTable* table = nullptr;
};

enum class DefSemanticsKind { WellFounded, Stable };

class Evaluator {
public:
	Evaluator(const Interpretation& base, const Limits& limits);

	const Domain& domain() const { return dom_; }
	const DomainPtr& domain_ptr() const { return base_.domain_ptr(); }
	const Limits& limits() const { return limits_; }

	TV eval(const Expr& e);
	TV eval_definition(const RuleSet& d, DefSemanticsKind sem);

	/// glb of `fn` over the completions of the u-cells of `covered` that `fn` reads.
	template <class Fn>
	TV enumerate(std::vector<const PredTable*> covered, Fn&& fn);

	// frames
	std::size_t mark() const { return frames_.size(); }
	void pop_to(std::size_t m) { frames_.resize(m); }
	void bind_element(Symbol s, Element e) { frames_.push_back({s, Binding::Kind::Element, 0, e, 0, nullptr}); }
	void bind_mask(Symbol s, int arity, std::uint64_t m) { frames_.push_back({s, Binding::Kind::Mask, arity, 0, m, nullptr}); }
	void bind_table(Symbol s, const PredTable* t) { frames_.push_back({s, Binding::Kind::Table, t->arity(), 0, 0, t}); }

	/// Cell value through the active completion contexts.
	TV read(const PredTable* t, std::size_t index);

	TermValue term(const TermPtr& t);
	std::optional<RelationRef> relation(Symbol s);
	/// Table or mask currently bound to `s`, if it denotes a table-valued symbol.
	const Binding* frame(Symbol s) const;
	const SymbolValue* base(Symbol s) const;

	/// Type of a defined symbol from the current binding, else from its rules.
	Type defined_type(Symbol s, const RuleSet& d);

private:
	TV atom(const Node& n);
	TV compare(const Node& n);
	TV quant(const Node& n);
	TV aggregate(const Node& n);
	TV let(const Node& n);
	TV relation_cell(const RelationRef& r, std::size_t bit);
	std::vector<const PredTable*> partial_tables(const std::vector<Symbol>& syms);
	TV check_definition(const RuleSet& d, DefSemanticsKind sem);

	const Interpretation& base_;
	const Domain& dom_;
	Limits limits_;
	std::unordered_map<Symbol, const SymbolValue*> base_index_;
	std::vector<Binding> frames_;
	std::vector<CompletionContext> contexts_;
};

/**
 * Working tables for the defined symbols of a rule set, with the per-cell
 * body evaluation, the alternating fixpoint and the stable test.
 */
class RuleSolver {
public:
	RuleSolver(Evaluator& ev, const RuleSet& d, const std::vector<std::pair<Symbol, Type>>& defined);

	/// Reads and writes these tables; bind them with `bind()` before evaluating bodies.
	std::vector<std::unique_ptr<PredTable>> tables;
	std::vector<Symbol> symbols;

	void bind();
	/// Max over the bodies of the rules applicable to cell `index` of defined symbol `k`.
	TV body_value(std::size_t k, std::size_t index);

	/// Well-founded model by the alternating fixpoint; leaves the result in `tables`.
	void well_founded();
	/// Whether the exact content of `tables` is a stable model. Restores the tables.
	bool is_stable();

private:
	struct HeadSlot {
		int var = -1; //!< index into the rule's vars, or -1 for a term
		TermPtr term;
	};
	struct CompiledRule {
		const Rule* rule;
		std::vector<HeadSlot> slots;
	};

	bool lower_phase();
	bool upper_phase();

	Evaluator& ev_;
	std::vector<std::vector<CompiledRule>> rules_; //!< per defined symbol
	std::vector<ArgValue> args_;
	std::vector<ArgValue> assigned_;
	std::vector<char> has_;
};

template <class Fn>
TV Evaluator::enumerate(std::vector<const PredTable*> covered, Fn&& fn) {
	if (covered.empty()) {
		return fn();
	}
	const std::size_t ctx = contexts_.size();
	contexts_.push_back({std::move(covered), {}});
	struct Pop {
		std::vector<CompletionContext>& c;
		~Pop() { c.pop_back(); }
	} pop{contexts_};
	GlbAccumulator acc;
	std::uint64_t leaves = 0;
	auto branch = [&](auto&& self) -> void {
		const std::size_t m = mark();
		try {
			acc.add(fn());
			if (++leaves > limits_.max_completions) {
				throw CapExceeded("more than " + std::to_string(limits_.max_completions) + " completions");
			}
		} catch (const NeedAtom& need) {
			pop_to(m);
			if (need.context != ctx) {
				throw;
			}
			const std::uint64_t key = (static_cast<std::uint64_t>(need.slot) << 40) | need.index;
			for (TV v : {TV::T, TV::F}) {
				contexts_[ctx].chosen[key] = v;
				self(self);
				if (acc.done()) {
					break;
				}
			}
			contexts_[ctx].chosen.erase(key);
		}
	};
	branch(branch);
	return acc.value();
}

} // namespace soid::detail

#endif
