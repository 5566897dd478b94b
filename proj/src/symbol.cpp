#include "soid/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace soid {

namespace {

struct InternTable {
	std::shared_mutex mutex;
	std::deque<std::string> names{std::string()}; // id 0 is the invalid symbol
	std::unordered_map<std::string_view, std::uint32_t> ids;
};

InternTable& table() {
	static InternTable t;
	return t;
}

} // namespace

Symbol::Symbol(std::string_view name) {
	InternTable& t = table();
	{
		std::shared_lock lock(t.mutex);
		auto it = t.ids.find(name);
		if (it != t.ids.end()) {
			id_ = it->second;
			return;
		}
	}
	std::unique_lock lock(t.mutex);
	auto it = t.ids.find(name);
	if (it != t.ids.end()) {
		id_ = it->second;
		return;
	}
	t.names.emplace_back(name);
	id_ = static_cast<std::uint32_t>(t.names.size() - 1);
	t.ids.emplace(t.names.back(), id_);
}

const std::string& Symbol::name() const {
	InternTable& t = table();
	std::shared_lock lock(t.mutex);
	// deque never relocates existing elements, so the reference stays valid
	return t.names[id_];
}

} // namespace soid
