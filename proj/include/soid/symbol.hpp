#ifndef SOID_SYMBOL_HPP
#define SOID_SYMBOL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace soid {

/**
 * Interned symbol name. Equality and hashing use the intern id; `by_name`
 * gives the order used for all printed output.
 */
class Symbol {
public:
	Symbol() = default;
	explicit Symbol(std::string_view name);

	const std::string& name() const;
	std::uint32_t id() const { return id_; }
	bool valid() const { return id_ != 0; }

	friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
	friend std::strong_ordering operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

private:
	std::uint32_t id_ = 0;
};

struct SymbolNameLess {
	bool operator()(Symbol a, Symbol b) const { return a.name() < b.name(); }
};

inline std::ostream& operator<<(std::ostream& os, Symbol s) { return os << s.name(); }

} // namespace soid

template <>
struct std::hash<soid::Symbol> {
	std::size_t operator()(soid::Symbol s) const noexcept { return std::hash<std::uint32_t>{}(s.id()); }
};

#endif
