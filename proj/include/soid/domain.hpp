#ifndef SOID_DOMAIN_HPP
#define SOID_DOMAIN_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace soid {

/// Index of a domain element; the index order is the domain's total order.
using Element = std::int32_t;

/**
 * A finite, ordered set of named elements. Elements whose name is a decimal
 * integer also carry that integer, which gives the interpreted integer slice
 * used by arithmetic terms and numeric comparisons.
 */
class Domain {
public:
	explicit Domain(std::vector<std::string> names); //!< throws InputError on duplicates
	static std::shared_ptr<const Domain> make(std::vector<std::string> names);
	static std::shared_ptr<const Domain> integers(std::int64_t lo, std::int64_t hi);

	std::size_t size() const { return names_.size(); }
	const std::string& name(Element e) const { return names_.at(static_cast<std::size_t>(e)); }
	const std::vector<std::string>& names() const { return names_; }
	std::optional<Element> find(std::string_view name) const;
	std::optional<std::int64_t> int_value(Element e) const { return ints_.at(static_cast<std::size_t>(e)); }
	std::optional<Element> find_int(std::int64_t v) const;

	bool operator==(const Domain& other) const { return names_ == other.names_; }

private:
	std::vector<std::string> names_;
	std::vector<std::optional<std::int64_t>> ints_;
	std::unordered_map<std::string, Element> index_;
	std::unordered_map<std::int64_t, Element> int_index_;
};

using DomainPtr = std::shared_ptr<const Domain>;

} // namespace soid

#endif
