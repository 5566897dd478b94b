#include "soid/domain.hpp"

#include "soid/errors.hpp"

#include <charconv>

namespace soid {

namespace {

std::optional<std::int64_t> parse_int(const std::string& s) {
	std::int64_t v = 0;
	const char* begin = s.data();
	const char* end = s.data() + s.size();
	if (s.empty()) {
		return std::nullopt;
	}
	auto [ptr, ec] = std::from_chars(begin, end, v);
	if (ec != std::errc() || ptr != end) {
		return std::nullopt;
	}
	// reject non-canonical spellings such as "007" so names and values stay 1:1
	if (std::to_string(v) != s) {
		return std::nullopt;
	}
	return v;
}

} // namespace

Domain::Domain(std::vector<std::string> names) : names_(std::move(names)) {
	ints_.reserve(names_.size());
	for (std::size_t i = 0; i < names_.size(); ++i) {
		if (!index_.emplace(names_[i], static_cast<Element>(i)).second) {
			throw InputError("duplicate domain element '" + names_[i] + "'");
		}
		ints_.push_back(parse_int(names_[i]));
		if (ints_.back()) {
			int_index_.emplace(*ints_.back(), static_cast<Element>(i));
		}
	}
}

std::shared_ptr<const Domain> Domain::make(std::vector<std::string> names) {
	return std::make_shared<const Domain>(std::move(names));
}

std::shared_ptr<const Domain> Domain::integers(std::int64_t lo, std::int64_t hi) {
	std::vector<std::string> names;
	for (std::int64_t v = lo; v <= hi; ++v) {
		names.push_back(std::to_string(v));
	}
	return make(std::move(names));
}

std::optional<Element> Domain::find(std::string_view name) const {
	auto it = index_.find(std::string(name));
	if (it == index_.end()) {
		return std::nullopt;
	}
	return it->second;
}

std::optional<Element> Domain::find_int(std::int64_t v) const {
	auto it = int_index_.find(v);
	if (it == int_index_.end()) {
		return std::nullopt;
	}
	return it->second;
}

} // namespace soid
