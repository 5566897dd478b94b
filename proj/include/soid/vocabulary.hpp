#ifndef SOID_VOCABULARY_HPP
#define SOID_VOCABULARY_HPP

#include "soid/symbol.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace soid {

/// Type of one argument position of a predicate: a domain element, a first order
/// relation of some arity, or a boolean (only legal for declaring that it is illegal).
struct ArgType {
	enum class Kind : std::uint8_t { Element, Relation, Boolean };
	Kind kind = Kind::Element;
	int arity = 0; //!< relation arity; 0 otherwise

	static ArgType element() { return {}; }
	static ArgType relation(int n) { return {Kind::Relation, n}; }
	static ArgType boolean() { return {Kind::Boolean, 0}; }

	bool is_element() const { return kind == Kind::Element; }
	bool is_relation() const { return kind == Kind::Relation; }
	friend bool operator==(const ArgType&, const ArgType&) = default;
};

/**
 * The simple type system: the domain type (constants and element variables),
 * the boolean type, and predicate types. A predicate whose arguments are all
 * elements is first order; one with a relation argument is second order.
 */
struct Type {
	enum class Kind : std::uint8_t { Element, Boolean, Predicate };
	Kind kind = Kind::Element;
	std::vector<ArgType> args;

	static Type element() { return {}; }
	static Type boolean() { return {Kind::Boolean, {}}; }
	static Type predicate(int arity) { return {Kind::Predicate, std::vector<ArgType>(static_cast<std::size_t>(arity))}; }
	static Type predicate(std::vector<ArgType> args) { return {Kind::Predicate, std::move(args)}; }
	static Type of(const ArgType& a); //!< the type of a symbol that fills an argument position

	bool is_element() const { return kind == Kind::Element; }
	bool is_predicate() const { return kind == Kind::Predicate; }
	/// Predicates and booleans: symbols whose value is a (partial) truth table.
	bool has_table() const { return kind != Kind::Element; }
	bool is_first_order_predicate() const;
	bool is_second_order_predicate() const { return is_predicate() && !is_first_order_predicate(); }
	int arity() const { return static_cast<int>(args.size()); }

	friend bool operator==(const Type&, const Type&) = default;
};

std::string to_string(const ArgType& a);
std::string to_string(const Type& t);

/// Flags carried per vocabulary entry.
enum SymbolFlag : unsigned {
	kUser = 0,
	kInterpreted = 1U << 0,
	kTemplate = 1U << 1,
};

/// Vocabulary: a set of typed symbols with unique names.
class Vocabulary {
public:
	struct Entry {
		Type type;
		unsigned flags = kUser;
	};

	/// Adds `s`. Throws InputError if `s` exists with another type, or if a
	/// second order type mentions a boolean argument.
	void add(Symbol s, Type type, unsigned flags = kUser);
	bool contains(Symbol s) const { return entries_.count(s) != 0; }
	const Entry* find(Symbol s) const;
	const Type& type(Symbol s) const; //!< throws InputError if absent

	std::vector<Symbol> symbols() const; //!< sorted by name
	std::size_t size() const { return entries_.size(); }
	bool empty() const { return entries_.empty(); }
	bool subset_of(const Vocabulary& other) const;

	/// Union; throws InputError on conflicting types.
	void merge(const Vocabulary& other);

	friend bool operator==(const Vocabulary& a, const Vocabulary& b);

private:
	std::map<Symbol, Entry> entries_;
};

/// Checks the argument types of a declared type; returns an error message or nullopt.
std::optional<std::string> validate_type(const Type& t);

} // namespace soid

#endif
