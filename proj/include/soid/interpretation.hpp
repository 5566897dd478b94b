#ifndef SOID_INTERPRETATION_HPP
#define SOID_INTERPRETATION_HPP

#include "soid/domain.hpp"
#include "soid/limits.hpp"
#include "soid/symbol.hpp"
#include "soid/values.hpp"
#include "soid/vocabulary.hpp"

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace soid {

/// Value of one argument position: an element index, or the bitmask of an exact
/// relation (bit k is the k-th tuple of D^n in lexicographic order).
using ArgValue = std::uint64_t;

/// Number of tuples of D^n; throws CapExceeded above `limits.max_relation_cells`.
std::uint64_t relation_cells(std::size_t domain_size, int arity, const Limits& limits = {});

/// Number of values an argument position ranges over.
std::uint64_t arg_radix(std::size_t domain_size, const ArgType& a, const Limits& limits = {});

/**
 * Partial truth table of a predicate or boolean symbol over a finite domain.
 * Cells are indexed in mixed radix with argument 0 most significant, so index
 * order is lexicographic tuple order.
 */
class PredTable {
public:
	PredTable(DomainPtr domain, Type type, TV init = TV::U, const Limits& limits = {});

	const Type& type() const { return type_; }
	const Domain& domain() const { return *domain_; }
	const DomainPtr& domain_ptr() const { return domain_; }
	int arity() const { return type_.arity(); }
	std::size_t size() const { return cells_.size(); }
	std::uint64_t radix(int i) const { return radix_[static_cast<std::size_t>(i)]; }
	std::size_t stride(int i) const { return stride_[static_cast<std::size_t>(i)]; }

	std::size_t index(std::span<const ArgValue> args) const;
	void decode(std::size_t index, std::span<ArgValue> out) const;
	std::vector<ArgValue> decode(std::size_t index) const;

	TV at(std::size_t index) const { return cells_[index]; }
	void set(std::size_t index, TV v) { cells_[index] = v; }
	TV get(std::span<const ArgValue> args) const { return cells_[index(args)]; }
	void fill(TV v);

	const std::vector<TV>& cells() const { return cells_; }
	std::vector<TV>& cells() { return cells_; }
	std::size_t count(TV v) const;
	bool is_exact() const { return count(TV::U) == 0; }

	/// Bitmask of the t-cells; requires a first order type with at most 64 cells.
	std::uint64_t true_mask() const;

	friend bool operator==(const PredTable& a, const PredTable& b);

private:
	DomainPtr domain_;
	Type type_;
	std::vector<std::uint64_t> radix_;
	std::vector<std::size_t> stride_;
	std::vector<TV> cells_;
};

using TablePtr = std::shared_ptr<const PredTable>;

/// The value assigned to one symbol: an element for constants, a table otherwise.
struct SymbolValue {
	Type type;
	Element element = 0;
	TablePtr table;

	friend bool operator==(const SymbolValue& a, const SymbolValue& b);
};

/// P(d1..dn): a predicate symbol applied to argument values.
struct DomainAtom {
	Symbol pred;
	std::vector<ArgValue> args;

	friend bool operator==(const DomainAtom&, const DomainAtom&) = default;
	friend auto operator<=>(const DomainAtom&, const DomainAtom&) = default;
};

/// A partial interpretation: a domain plus values for a set of typed symbols.
class Interpretation {
public:
	Interpretation() = default;
	explicit Interpretation(DomainPtr domain) : domain_(std::move(domain)) {}

	const Domain& domain() const { return *domain_; }
	const DomainPtr& domain_ptr() const { return domain_; }

	bool interprets(Symbol s) const { return values_.count(s) != 0; }
	const SymbolValue* find(Symbol s) const;
	const SymbolValue& value(Symbol s) const; //!< throws InputError if absent
	const PredTable& table(Symbol s) const;   //!< throws InputError if absent or a constant
	Element element(Symbol s) const;          //!< throws InputError if absent or not a constant

	void set(Symbol s, SymbolValue v); //!< checks v against the domain
	void set_element(Symbol s, Element e);
	void set_table(Symbol s, PredTable t);
	void set_table(Symbol s, TablePtr t);
	void erase(Symbol s) { values_.erase(s); }
	/// Mutable access to a table; copies it first when shared.
	PredTable& mutable_table(Symbol s);

	TV atom_value(const DomainAtom& a) const;
	void set_atom(const DomainAtom& a, TV v);

	std::vector<Symbol> symbols() const; //!< sorted by name
	Vocabulary vocabulary() const;
	const std::map<Symbol, SymbolValue>& values() const { return values_; }
	bool is_exact() const;

	friend bool operator==(const Interpretation& a, const Interpretation& b);

private:
	DomainPtr domain_;
	std::map<Symbol, SymbolValue> values_;
};

/// I|sub. Throws InputError when sub is not a subset of I's vocabulary.
Interpretation restrict(const Interpretation& i, const Vocabulary& sub);
Interpretation restrict(const Interpretation& i, const std::set<Symbol>& sub);

/// I[sym:v], replacing any previous value of sym.
Interpretation expand(const Interpretation& i, Symbol sym, const SymbolValue& v);

/// I[X:v]. Throws InputError for atoms of symbols I does not interpret as tables.
Interpretation revise(const Interpretation& i, std::span<const DomainAtom> atoms, TV v);

/**
 * Calls `visit` on every interpretation that is exact on `over`, at least as
 * precise as `i`, and equal to `i` elsewhere. Stops early when `visit`
 * returns false. More than `limits.max_completions` completions raise CapExceeded.
 */
void for_each_completion(const Interpretation& i, const std::set<Symbol>& over,
                         const std::function<bool(const Interpretation&)>& visit, const Limits& limits = {});
std::vector<Interpretation> completions(const Interpretation& i, const std::set<Symbol>& over,
                                        const Limits& limits = {});

std::vector<DomainAtom> atoms_with_value(const Interpretation& i, const std::set<Symbol>& preds, TV v);

/// Pointwise orders; false unless both have the same domain, symbols and constants.
bool leq_prec(const Interpretation& a, const Interpretation& b);
bool leq_truth(const Interpretation& a, const Interpretation& b);

/// Text of an argument value, e.g. `a` or `{(a,b),(b,c)}`.
std::string arg_to_string(const Domain& d, const ArgType& t, ArgValue v);
std::string atom_to_string(const Interpretation& i, const DomainAtom& a);
/// Text of the tuple of cell `index`, e.g. `(a,{(b)})`.
std::string tuple_to_string(const PredTable& t, std::size_t index);

} // namespace soid

#endif
