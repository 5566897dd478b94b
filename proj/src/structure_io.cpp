#include "soid/structure_io.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>

namespace soid {

using detail::Token;
using detail::TokenStream;

namespace {

struct RawArg {
	bool is_relation = false;
	std::string name;
	std::vector<std::vector<std::string>> tuples;
	Token where;
};

struct RawEntry {
	bool star = false;
	std::vector<RawArg> key;
	TV value = TV::U;
};

std::string read_name(TokenStream& ts) {
	const Token& t = ts.peek();
	if (t.kind == Token::Kind::Ident || t.kind == Token::Kind::Int) {
		return ts.next().text;
	}
	if (t.is("-") && ts.peek(1).kind == Token::Kind::Int) {
		ts.next();
		return "-" + ts.next().text;
	}
	ts.fail("expected a domain element but found " + detail::describe(t));
}

TV read_tv(TokenStream& ts) {
	const Token& t = ts.peek();
	if (t.kind == Token::Kind::Ident && t.text.size() == 1 && (t.text == "t" || t.text == "u" || t.text == "f")) {
		ts.next();
		return tv_from_char(t.text[0]);
	}
	if (t.is_ident("true")) {
		ts.next();
		return TV::T;
	}
	if (t.is_ident("false")) {
		ts.next();
		return TV::F;
	}
	ts.fail("expected t, u or f but found " + detail::describe(t));
}

std::vector<std::string> read_tuple(TokenStream& ts) {
	std::vector<std::string> out;
	if (ts.accept("(")) {
		if (ts.accept(")")) {
			return out;
		}
		do {
			out.push_back(read_name(ts));
		} while (ts.accept(","));
		ts.expect(")");
		return out;
	}
	out.push_back(read_name(ts));
	return out;
}

RawArg read_arg(TokenStream& ts) {
	RawArg a;
	a.where = ts.peek();
	if (ts.accept("{")) {
		a.is_relation = true;
		if (!ts.accept("}")) {
			do {
				a.tuples.push_back(read_tuple(ts));
			} while (ts.accept(","));
			ts.expect("}");
		}
		return a;
	}
	a.name = read_name(ts);
	return a;
}

std::vector<RawArg> read_key(TokenStream& ts) {
	std::vector<RawArg> key;
	if (ts.accept("(")) {
		if (ts.accept(")")) {
			return key;
		}
		do {
			key.push_back(read_arg(ts));
		} while (ts.accept(","));
		ts.expect(")");
		return key;
	}
	key.push_back(read_arg(ts));
	return key;
}

std::optional<Type> infer_type(const std::vector<RawEntry>& entries, TokenStream& ts, const std::string& sym) {
	std::optional<std::size_t> arity;
	for (const RawEntry& e : entries) {
		if (e.star) {
			continue;
		}
		if (arity && *arity != e.key.size()) {
			ts.fail("entries of '" + sym + "' have different arities");
		}
		arity = e.key.size();
	}
	if (!arity) {
		return std::nullopt;
	}
	std::vector<ArgType> args(*arity);
	for (std::size_t k = 0; k < *arity; ++k) {
		std::optional<ArgType> pos;
		bool saw_relation = false;
		for (const RawEntry& e : entries) {
			if (e.star) {
				continue;
			}
			const RawArg& a = e.key[k];
			if (!a.is_relation) {
				if (saw_relation) {
					ts.fail_at(a.where, "mixed element and relation values in '" + sym + "'");
				}
				pos = ArgType::element();
				continue;
			}
			if (pos && pos->is_element()) {
				ts.fail_at(a.where, "mixed element and relation values in '" + sym + "'");
			}
			saw_relation = true;
			if (!a.tuples.empty()) {
				pos = ArgType::relation(static_cast<int>(a.tuples.front().size()));
			}
		}
		if (!pos) {
			ts.fail("cannot infer the relation arity of '" + sym + "' from empty relations; declare it");
		}
		args[k] = *pos;
	}
	return Type::predicate(std::move(args));
}

Element resolve_element(const Domain& d, const std::string& name, TokenStream& ts, const Token& where) {
	auto e = d.find(name);
	if (!e) {
		ts.fail_at(where, "unknown domain element '" + name + "'");
	}
	return *e;
}

ArgValue resolve_arg(const Domain& d, const ArgType& t, const RawArg& a, TokenStream& ts) {
	if (t.is_element()) {
		if (a.is_relation) {
			ts.fail_at(a.where, "expected a domain element, found a relation");
		}
		return static_cast<ArgValue>(resolve_element(d, a.name, ts, a.where));
	}
	if (!a.is_relation) {
		ts.fail_at(a.where, "expected a relation literal, found '" + a.name + "'");
	}
	ArgValue mask = 0;
	for (const auto& tuple : a.tuples) {
		if (static_cast<int>(tuple.size()) != t.arity) {
			ts.fail_at(a.where, "relation tuple of wrong arity");
		}
		std::uint64_t idx = 0;
		for (const std::string& n : tuple) {
			idx = idx * d.size() + static_cast<std::uint64_t>(resolve_element(d, n, ts, a.where));
		}
		mask |= ArgValue{1} << idx;
	}
	return mask;
}

DomainPtr read_domain(TokenStream& ts) {
	auto range = [&]() {
		auto lo_s = read_name(ts);
		ts.expect("..");
		auto hi_s = read_name(ts);
		try {
			return Domain::integers(std::stoll(lo_s), std::stoll(hi_s));
		} catch (const std::logic_error&) {
			ts.fail("integer range bounds expected");
		}
	};
	if (ts.accept("{")) {
		if ((ts.peek().kind == Token::Kind::Int || ts.peek().is("-")) &&
		    (ts.peek(1).is("..") || ts.peek(2).is(".."))) {
			auto d = range();
			ts.expect("}");
			return d;
		}
		std::vector<std::string> names;
		if (!ts.accept("}")) {
			do {
				names.push_back(read_name(ts));
			} while (ts.accept(","));
			ts.expect("}");
		}
		try {
			return Domain::make(std::move(names));
		} catch (const InputError& e) {
			ts.fail(e.what());
		}
	}
	return range();
}

} // namespace

Interpretation read_structure(std::string_view text, const Vocabulary* vocab, const Limits& limits) {
	TokenStream ts(detail::tokenize(text));
	if (!ts.accept_ident("domain")) {
		ts.fail("a structure starts with 'domain = ...'");
	}
	ts.expect("=");
	DomainPtr dom = read_domain(ts);
	ts.accept(";");
	Interpretation out(dom);
	while (!ts.at_end()) {
		const Token head = ts.peek();
		std::string name = ts.expect_ident("a symbol name");
		Symbol sym(name);
		if (out.interprets(sym)) {
			ts.fail_at(head, "symbol '" + name + "' assigned twice");
		}
		ts.expect("=");
		const Vocabulary::Entry* declared = vocab != nullptr ? vocab->find(sym) : nullptr;
		if (!ts.peek().is("{")) {
			const Token vt = ts.peek();
			bool tv_word = vt.kind == Token::Kind::Ident &&
			               (vt.text == "t" || vt.text == "u" || vt.text == "f" || vt.text == "true" || vt.text == "false");
			bool as_constant = declared != nullptr ? declared->type.is_element() : !tv_word;
			if (as_constant) {
				std::string el = read_name(ts);
				out.set_element(sym, resolve_element(*dom, el, ts, vt));
			} else {
				Type type = declared != nullptr ? declared->type : Type::predicate(0);
				if (type.arity() != 0) {
					ts.fail_at(vt, "'" + name + "' has arity " + std::to_string(type.arity()) + "; expected a table");
				}
				PredTable t(dom, type, read_tv(ts), limits);
				out.set_table(sym, std::move(t));
			}
			ts.accept(";");
			continue;
		}
		ts.expect("{");
		std::vector<RawEntry> entries;
		if (!ts.accept("}")) {
			do {
				RawEntry e;
				if (ts.accept("*")) {
					e.star = true;
				} else {
					e.key = read_key(ts);
				}
				ts.expect(":");
				e.value = read_tv(ts);
				entries.push_back(std::move(e));
			} while (ts.accept(","));
			ts.expect("}");
		}
		ts.accept(";");
		Type type;
		if (declared != nullptr) {
			type = declared->type;
			if (type.is_element()) {
				ts.fail_at(head, "'" + name + "' is a constant");
			}
		} else {
			auto inferred = infer_type(entries, ts, name);
			if (!inferred) {
				ts.fail_at(head, "cannot infer the type of '" + name + "'; declare it in a vocabulary");
			}
			type = *inferred;
		}
		TV def = TV::U;
		int stars = 0;
		for (const RawEntry& e : entries) {
			if (e.star) {
				def = e.value;
				++stars;
			}
		}
		if (stars > 1) {
			ts.fail_at(head, "more than one default for '" + name + "'");
		}
		PredTable table(dom, type, def, limits);
		std::vector<ArgValue> args(static_cast<std::size_t>(type.arity()));
		std::vector<bool> seen(table.size(), false);
		for (const RawEntry& e : entries) {
			if (e.star) {
				continue;
			}
			if (static_cast<int>(e.key.size()) != type.arity()) {
				ts.fail_at(head, "tuple of wrong arity for '" + name + "'");
			}
			for (std::size_t k = 0; k < e.key.size(); ++k) {
				args[k] = resolve_arg(*dom, type.args[k], e.key[k], ts);
			}
			std::size_t idx = table.index(args);
			if (seen[idx]) {
				ts.fail_at(e.key.empty() ? head : e.key.front().where, "tuple listed twice for '" + name + "'");
			}
			seen[idx] = true;
			table.set(idx, e.value);
		}
		out.set_table(sym, std::move(table));
	}
	return out;
}

std::string write_symbol(Symbol s, const SymbolValue& v, const Domain& d) {
	std::string out = s.name() + " = ";
	if (v.type.is_element()) {
		return out + d.name(v.element);
	}
	const PredTable& t = *v.table;
	if (t.arity() == 0) {
		return out + to_char(t.at(0));
	}
	std::array<std::size_t, 3> counts{t.count(TV::F), t.count(TV::T), t.count(TV::U)};
	std::array<TV, 3> order{TV::F, TV::T, TV::U};
	std::size_t best = 0;
	for (std::size_t k = 1; k < 3; ++k) {
		if (counts[k] > counts[best]) {
			best = k;
		}
	}
	const TV def = order[best];
	out += "{";
	for (std::size_t k = 0; k < t.size(); ++k) {
		if (t.at(k) == def) {
			continue;
		}
		out += tuple_to_string(t, k);
		out += ": ";
		out += to_char(t.at(k));
		out += ", ";
	}
	out += "*: ";
	out += to_char(def);
	return out + "}";
}

std::string write_structure(const Interpretation& i) {
	std::string out = "domain = {";
	const Domain& d = i.domain();
	for (std::size_t k = 0; k < d.size(); ++k) {
		if (k > 0) {
			out += ", ";
		}
		out += d.name(static_cast<Element>(k));
	}
	out += "}\n";
	for (Symbol s : i.symbols()) {
		out += write_symbol(s, i.value(s), d);
		out += "\n";
	}
	return out;
}

} // namespace soid
