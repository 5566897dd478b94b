#ifndef SOID_VALUES_HPP
#define SOID_VALUES_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

/**
 * \file values.hpp
 *
 *		Three-valued truth values, the truth and precision orders, partial sets,
 *		and the ultimate approximation of boolean functions (connectives,
 *		quantifiers, aggregates).
 */

namespace soid {

/// Truth value in {f, u, t}. The numeric order of the enumerators is the truth order.
enum class TV : std::uint8_t { F = 0, U = 1, T = 2 };

char to_char(TV v);
std::string to_string(TV v);
TV tv_from_char(char c); //!< accepts 't', 'u', 'f'; throws std::invalid_argument otherwise
inline TV tv_of(bool b) { return b ? TV::T : TV::F; }
inline bool is_exact(TV v) { return v != TV::U; }

bool leq_truth(TV a, TV b);
bool leq_prec(TV a, TV b);

/// Greatest lower bound in the precision order. Throws std::invalid_argument on empty input.
TV glb_prec(std::span<const TV> values);
TV glb_prec(std::initializer_list<TV> values);

/// Running glb_prec; `done()` reports when the result can no longer change.
class GlbAccumulator {
public:
	void add(TV v);
	bool empty() const { return !seen_; }
	bool done() const { return seen_ && value_ == TV::U; }
	TV value() const; //!< throws std::logic_error when nothing was added
private:
	bool seen_ = false;
	TV value_ = TV::U;
};

enum class Connective { Not, And, Or, Implies, Iff };

TV kleene_not(TV a);
TV kleene_and(TV a, TV b);
TV kleene_or(TV a, TV b);
TV kleene_implies(TV a, TV b);
TV kleene_iff(TV a, TV b);

/// Kleene table of `c`. And/Or accept any arity >= 1; Not needs 1, Implies/Iff need 2.
TV kleene_connective(Connective c, std::span<const TV> args);

/// The two-valued table of `c`, with the same arity rules.
bool classical_connective(Connective c, std::span<const bool> args);

using Tuple = std::vector<std::int64_t>;

/// A function from a finite carrier of tuples to TV.
class PartialSet {
public:
	PartialSet() = default;
	PartialSet(std::initializer_list<std::pair<Tuple, TV>> entries);

	void set(const Tuple& key, TV v); //!< inserts or overwrites
	TV at(const Tuple& key) const;    //!< throws std::out_of_range if key is not in the carrier

	std::size_t size() const { return keys_.size(); }
	bool empty() const { return keys_.empty(); }
	const std::vector<Tuple>& carrier() const { return keys_; }
	const std::vector<TV>& values() const { return values_; }
	bool is_exact() const;

	/// Same carrier and values (independent of insertion order).
	bool operator==(const PartialSet& other) const;

private:
	std::vector<Tuple> keys_;
	std::vector<TV> values_;
};

bool leq_truth(const PartialSet& a, const PartialSet& b); //!< pointwise; false if carriers differ
bool leq_prec(const PartialSet& a, const PartialSet& b);

/// Boolean function over exact inputs, given as one bool per position.
using BoolFn = std::function<bool(std::span<const bool>)>;

/**
 * glb_prec of F over every exact completion of `x`. Completions are enumerated,
 * so more than `max_unknown` u-positions raise CapExceeded.
 */
TV ultimate_approx(const BoolFn& f, std::span<const TV> x, unsigned max_unknown = 20);
TV ultimate_approx(const BoolFn& f, const PartialSet& x, unsigned max_unknown = 20);

enum class Quantifier { Forall, Exists };

/// Min (forall) or Max (exists) in the truth order; vacuous t / f on an empty carrier.
TV approx_quantifier(Quantifier q, const PartialSet& s);
TV approx_quantifier(Quantifier q, std::span<const TV> values);

enum class AggregateKind { Card, Sum };
enum class Comparison { Eq, Lt, Gt };

/**
 * Ultimate approximation of `Agg(S) cmp n` where Agg sums the first tuple
 * component (Sum) or counts members (Card). Computed without enumerating
 * completions: card uses the [#t, #t + #u] interval, sum uses the reachable
 * subset sums of the unknown members.
 */
TV approx_aggregate(AggregateKind agg, Comparison cmp, const PartialSet& s, std::int64_t n);

} // namespace soid

#endif
