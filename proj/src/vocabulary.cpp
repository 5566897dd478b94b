#include "soid/vocabulary.hpp"

#include "soid/errors.hpp"

#include <algorithm>

namespace soid {

Type Type::of(const ArgType& a) {
	switch (a.kind) {
	case ArgType::Kind::Element: return element();
	case ArgType::Kind::Relation: return predicate(a.arity);
	case ArgType::Kind::Boolean: return boolean();
	}
	return element();
}

bool Type::is_first_order_predicate() const {
	return is_predicate() && std::all_of(args.begin(), args.end(), [](const ArgType& a) { return a.is_element(); });
}

std::string to_string(const ArgType& a) {
	switch (a.kind) {
	case ArgType::Kind::Element: return "elem";
	case ArgType::Kind::Relation: return "pred/" + std::to_string(a.arity);
	case ArgType::Kind::Boolean: return "bool";
	}
	return "?";
}

std::string to_string(const Type& t) {
	switch (t.kind) {
	case Type::Kind::Element: return "const";
	case Type::Kind::Boolean: return "bool";
	case Type::Kind::Predicate: break;
	}
	if (t.is_first_order_predicate()) {
		return "pred/" + std::to_string(t.arity());
	}
	std::string s = "so-pred(";
	for (std::size_t i = 0; i < t.args.size(); ++i) {
		if (i > 0) {
			s += ", ";
		}
		s += to_string(t.args[i]);
	}
	return s + ")";
}

std::optional<std::string> validate_type(const Type& t) {
	for (const ArgType& a : t.args) {
		if (a.kind == ArgType::Kind::Boolean) {
			return "second order argument types exclude bool";
		}
		if (a.kind == ArgType::Kind::Relation && a.arity < 0) {
			return "negative relation arity";
		}
	}
	return std::nullopt;
}

void Vocabulary::add(Symbol s, Type type, unsigned flags) {
	if (auto err = validate_type(type)) {
		throw InputError("symbol '" + s.name() + "': " + *err);
	}
	auto it = entries_.find(s);
	if (it != entries_.end()) {
		if (!(it->second.type == type)) {
			throw InputError("symbol '" + s.name() + "' declared as " + to_string(it->second.type) + " and as " +
			                 to_string(type));
		}
		it->second.flags |= flags;
		return;
	}
	entries_.emplace(s, Entry{std::move(type), flags});
}

const Vocabulary::Entry* Vocabulary::find(Symbol s) const {
	auto it = entries_.find(s);
	return it == entries_.end() ? nullptr : &it->second;
}

const Type& Vocabulary::type(Symbol s) const {
	const Entry* e = find(s);
	if (e == nullptr) {
		throw InputError("unknown symbol '" + s.name() + "'");
	}
	return e->type;
}

std::vector<Symbol> Vocabulary::symbols() const {
	std::vector<Symbol> out;
	out.reserve(entries_.size());
	for (const auto& [s, e] : entries_) {
		out.push_back(s);
	}
	std::sort(out.begin(), out.end(), SymbolNameLess{});
	return out;
}

bool Vocabulary::subset_of(const Vocabulary& other) const {
	return std::all_of(entries_.begin(), entries_.end(), [&](const auto& kv) {
		const Entry* e = other.find(kv.first);
		return e != nullptr && e->type == kv.second.type;
	});
}

void Vocabulary::merge(const Vocabulary& other) {
	for (const auto& [s, e] : other.entries_) {
		add(s, e.type, e.flags);
	}
}

bool operator==(const Vocabulary& a, const Vocabulary& b) {
	return a.subset_of(b) && b.subset_of(a);
}

} // namespace soid
