#include "soid/interpretation.hpp"

#include "soid/errors.hpp"

#include <algorithm>

namespace soid {

std::uint64_t relation_cells(std::size_t domain_size, int arity, const Limits& limits) {
	std::uint64_t n = 1;
	for (int k = 0; k < arity; ++k) {
		n *= domain_size;
		if (n > limits.max_relation_cells) {
			throw CapExceeded("relation of arity " + std::to_string(arity) + " over " + std::to_string(domain_size) +
			                  " elements exceeds max_relation_cells=" + std::to_string(limits.max_relation_cells));
		}
	}
	if (n > limits.max_relation_cells) {
		throw CapExceeded("relation exceeds max_relation_cells=" + std::to_string(limits.max_relation_cells));
	}
	return n;
}

std::uint64_t arg_radix(std::size_t domain_size, const ArgType& a, const Limits& limits) {
	switch (a.kind) {
	case ArgType::Kind::Element: return domain_size;
	case ArgType::Kind::Relation: {
		std::uint64_t cells = relation_cells(domain_size, a.arity, limits);
		if (cells >= 63) {
			throw CapExceeded("relation argument with " + std::to_string(cells) + " cells");
		}
		return std::uint64_t{1} << cells;
	}
	case ArgType::Kind::Boolean: break;
	}
	throw InputError("boolean argument position");
}

PredTable::PredTable(DomainPtr domain, Type type, TV init, const Limits& limits)
	: domain_(std::move(domain)), type_(std::move(type)) {
	if (type_.is_element()) {
		throw InputError("a constant has no truth table");
	}
	const std::size_t n = type_.args.size();
	radix_.resize(n);
	stride_.resize(n);
	std::uint64_t total = 1;
	for (std::size_t k = n; k-- > 0;) {
		radix_[k] = arg_radix(domain_->size(), type_.args[k], limits);
		stride_[k] = static_cast<std::size_t>(total);
		if (radix_[k] != 0 && total > limits.max_table_cells / radix_[k]) {
			throw CapExceeded("table of type " + to_string(type_) + " exceeds max_table_cells=" +
			                  std::to_string(limits.max_table_cells));
		}
		total *= radix_[k];
	}
	cells_.assign(static_cast<std::size_t>(total), init);
}

std::size_t PredTable::index(std::span<const ArgValue> args) const {
	std::size_t idx = 0;
	for (std::size_t k = 0; k < radix_.size(); ++k) {
		idx += static_cast<std::size_t>(args[k]) * stride_[k];
	}
	return idx;
}

void PredTable::decode(std::size_t index, std::span<ArgValue> out) const {
	for (std::size_t k = 0; k < radix_.size(); ++k) {
		out[k] = index / stride_[k];
		index %= stride_[k];
	}
}

std::vector<ArgValue> PredTable::decode(std::size_t index) const {
	std::vector<ArgValue> out(radix_.size());
	decode(index, out);
	return out;
}

void PredTable::fill(TV v) { std::fill(cells_.begin(), cells_.end(), v); }

std::size_t PredTable::count(TV v) const { return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), v)); }

std::uint64_t PredTable::true_mask() const {
	if (cells_.size() > 64) {
		throw CapExceeded("relation with more than 64 cells used as a value");
	}
	std::uint64_t m = 0;
	for (std::size_t k = 0; k < cells_.size(); ++k) {
		if (cells_[k] == TV::T) {
			m |= std::uint64_t{1} << k;
		}
	}
	return m;
}

bool operator==(const PredTable& a, const PredTable& b) {
	return a.type_ == b.type_ && *a.domain_ == *b.domain_ && a.cells_ == b.cells_;
}

bool operator==(const SymbolValue& a, const SymbolValue& b) {
	if (!(a.type == b.type)) {
		return false;
	}
	if (a.type.is_element()) {
		return a.element == b.element;
	}
	return a.table && b.table && *a.table == *b.table;
}

const SymbolValue* Interpretation::find(Symbol s) const {
	auto it = values_.find(s);
	return it == values_.end() ? nullptr : &it->second;
}

const SymbolValue& Interpretation::value(Symbol s) const {
	const SymbolValue* v = find(s);
	if (v == nullptr) {
		throw InputError("symbol '" + s.name() + "' is not interpreted");
	}
	return *v;
}

const PredTable& Interpretation::table(Symbol s) const {
	const SymbolValue& v = value(s);
	if (!v.table) {
		throw InputError("symbol '" + s.name() + "' is a constant");
	}
	return *v.table;
}

Element Interpretation::element(Symbol s) const {
	const SymbolValue& v = value(s);
	if (!v.type.is_element()) {
		throw InputError("symbol '" + s.name() + "' is not a constant");
	}
	return v.element;
}

void Interpretation::set(Symbol s, SymbolValue v) {
	if (v.type.is_element()) {
		if (v.element < 0 || static_cast<std::size_t>(v.element) >= domain_->size()) {
			throw InputError("value of '" + s.name() + "' is not a domain element");
		}
		v.table.reset();
	} else {
		if (!v.table || !(v.table->type() == v.type) || !(v.table->domain() == *domain_)) {
			throw InputError("ill-typed value for '" + s.name() + "'");
		}
	}
	values_[s] = std::move(v);
}

void Interpretation::set_element(Symbol s, Element e) { set(s, SymbolValue{Type::element(), e, nullptr}); }

void Interpretation::set_table(Symbol s, PredTable t) {
	Type ty = t.type();
	set(s, SymbolValue{std::move(ty), 0, std::make_shared<const PredTable>(std::move(t))});
}

void Interpretation::set_table(Symbol s, TablePtr t) {
	if (!t) {
		throw InputError("null table for '" + s.name() + "'");
	}
	Type ty = t->type();
	set(s, SymbolValue{std::move(ty), 0, std::move(t)});
}

PredTable& Interpretation::mutable_table(Symbol s) {
	auto it = values_.find(s);
	if (it == values_.end() || !it->second.table) {
		throw InputError("symbol '" + s.name() + "' has no table");
	}
	if (it->second.table.use_count() > 1) {
		it->second.table = std::make_shared<const PredTable>(*it->second.table);
	}
	// the table is owned exclusively at this point
	return const_cast<PredTable&>(*it->second.table);
}

TV Interpretation::atom_value(const DomainAtom& a) const {
	const PredTable& t = table(a.pred);
	if (static_cast<int>(a.args.size()) != t.arity()) {
		throw InputError("arity mismatch for '" + a.pred.name() + "'");
	}
	for (int k = 0; k < t.arity(); ++k) {
		if (a.args[static_cast<std::size_t>(k)] >= t.radix(k)) {
			throw InputError("argument out of range for '" + a.pred.name() + "'");
		}
	}
	return t.get(a.args);
}

void Interpretation::set_atom(const DomainAtom& a, TV v) {
	(void)atom_value(a);
	PredTable& t = mutable_table(a.pred);
	t.set(t.index(a.args), v);
}

std::vector<Symbol> Interpretation::symbols() const {
	std::vector<Symbol> out;
	for (const auto& [s, v] : values_) {
		out.push_back(s);
	}
	std::sort(out.begin(), out.end(), SymbolNameLess{});
	return out;
}

Vocabulary Interpretation::vocabulary() const {
	Vocabulary v;
	for (const auto& [s, val] : values_) {
		v.add(s, val.type);
	}
	return v;
}

bool Interpretation::is_exact() const {
	return std::all_of(values_.begin(), values_.end(),
	                   [](const auto& kv) { return !kv.second.table || kv.second.table->is_exact(); });
}

bool operator==(const Interpretation& a, const Interpretation& b) {
	if (!a.domain_ || !b.domain_) {
		return a.domain_ == b.domain_ && a.values_ == b.values_;
	}
	return *a.domain_ == *b.domain_ && a.values_ == b.values_;
}

Interpretation restrict(const Interpretation& i, const Vocabulary& sub) {
	Interpretation out(i.domain_ptr());
	for (Symbol s : sub.symbols()) {
		const SymbolValue* v = i.find(s);
		if (v == nullptr || !(v->type == sub.type(s))) {
			throw InputError("restrict: '" + s.name() + "' is not in the interpretation's vocabulary");
		}
		out.set(s, *v);
	}
	return out;
}

Interpretation restrict(const Interpretation& i, const std::set<Symbol>& sub) {
	Interpretation out(i.domain_ptr());
	for (Symbol s : sub) {
		const SymbolValue* v = i.find(s);
		if (v == nullptr) {
			throw InputError("restrict: '" + s.name() + "' is not in the interpretation's vocabulary");
		}
		out.set(s, *v);
	}
	return out;
}

Interpretation expand(const Interpretation& i, Symbol sym, const SymbolValue& v) {
	Interpretation out = i;
	out.set(sym, v);
	return out;
}

Interpretation revise(const Interpretation& i, std::span<const DomainAtom> atoms, TV v) {
	Interpretation out = i;
	for (const DomainAtom& a : atoms) {
		out.set_atom(a, v);
	}
	return out;
}

namespace {

struct OpenCell {
	Symbol sym;
	std::size_t index;
};

} // namespace

void for_each_completion(const Interpretation& i, const std::set<Symbol>& over,
                         const std::function<bool(const Interpretation&)>& visit, const Limits& limits) {
	std::vector<OpenCell> open;
	for (Symbol s : over) {
		const SymbolValue* v = i.find(s);
		if (v == nullptr) {
			throw InputError("completions: '" + s.name() + "' is not interpreted");
		}
		if (!v->table) {
			continue;
		}
		for (std::size_t k = 0; k < v->table->size(); ++k) {
			if (v->table->at(k) == TV::U) {
				open.push_back({s, k});
			}
		}
	}
	if (open.size() >= 63 || (std::uint64_t{1} << open.size()) > limits.max_completions) {
		throw CapExceeded(std::to_string(open.size()) + " unknown atoms exceed max_completions=" +
		                  std::to_string(limits.max_completions));
	}
	Interpretation work = i;
	const std::uint64_t n = std::uint64_t{1} << open.size();
	for (std::uint64_t bits = 0; bits < n; ++bits) {
		for (std::size_t k = 0; k < open.size(); ++k) {
			work.mutable_table(open[k].sym).set(open[k].index, tv_of(((bits >> k) & 1U) != 0));
		}
		if (!visit(work)) {
			return;
		}
	}
}

std::vector<Interpretation> completions(const Interpretation& i, const std::set<Symbol>& over, const Limits& limits) {
	std::vector<Interpretation> out;
	for_each_completion(
		i, over,
		[&](const Interpretation& j) {
			out.push_back(j);
			// detach tables so later revisions in the enumerator do not alias
			for (auto& [s, v] : j.values()) {
				if (v.table) {
					out.back().set_table(s, PredTable(*v.table));
				}
			}
			return true;
		},
		limits);
	return out;
}

std::vector<DomainAtom> atoms_with_value(const Interpretation& i, const std::set<Symbol>& preds, TV v) {
	std::vector<DomainAtom> out;
	std::vector<Symbol> sorted(preds.begin(), preds.end());
	std::sort(sorted.begin(), sorted.end(), SymbolNameLess{});
	for (Symbol s : sorted) {
		const PredTable& t = i.table(s);
		for (std::size_t k = 0; k < t.size(); ++k) {
			if (t.at(k) == v) {
				out.push_back({s, t.decode(k)});
			}
		}
	}
	return out;
}

namespace {

bool pointwise(const Interpretation& a, const Interpretation& b, bool (*leq)(TV, TV)) {
	if (!(a.domain() == b.domain()) || a.values().size() != b.values().size()) {
		return false;
	}
	for (const auto& [s, va] : a.values()) {
		const SymbolValue* vb = b.find(s);
		if (vb == nullptr || !(va.type == vb->type)) {
			return false;
		}
		if (va.type.is_element()) {
			if (va.element != vb->element) {
				return false;
			}
			continue;
		}
		const auto& ca = va.table->cells();
		const auto& cb = vb->table->cells();
		for (std::size_t k = 0; k < ca.size(); ++k) {
			if (!leq(ca[k], cb[k])) {
				return false;
			}
		}
	}
	return true;
}

} // namespace

bool leq_prec(const Interpretation& a, const Interpretation& b) {
	return pointwise(a, b, static_cast<bool (*)(TV, TV)>(&leq_prec));
}

bool leq_truth(const Interpretation& a, const Interpretation& b) {
	return pointwise(a, b, static_cast<bool (*)(TV, TV)>(&leq_truth));
}

std::string arg_to_string(const Domain& d, const ArgType& t, ArgValue v) {
	if (t.is_element()) {
		return d.name(static_cast<Element>(v));
	}
	Limits wide;
	wide.max_relation_cells = 64;
	const std::uint64_t cells = relation_cells(d.size(), t.arity, wide);
	std::string s = "{";
	bool first = true;
	std::vector<std::size_t> digits(static_cast<std::size_t>(t.arity));
	for (std::uint64_t k = 0; k < cells; ++k) {
		if (((v >> k) & 1U) == 0) {
			continue;
		}
		std::uint64_t rest = k;
		for (std::size_t j = digits.size(); j-- > 0;) {
			digits[j] = static_cast<std::size_t>(rest % d.size());
			rest /= d.size();
		}
		if (!first) {
			s += ",";
		}
		first = false;
		s += "(";
		for (std::size_t j = 0; j < digits.size(); ++j) {
			if (j > 0) {
				s += ",";
			}
			s += d.name(static_cast<Element>(digits[j]));
		}
		s += ")";
	}
	return s + "}";
}

std::string tuple_to_string(const PredTable& t, std::size_t index) {
	std::vector<ArgValue> args = t.decode(index);
	std::string s = "(";
	for (std::size_t k = 0; k < args.size(); ++k) {
		if (k > 0) {
			s += ",";
		}
		s += arg_to_string(t.domain(), t.type().args[k], args[k]);
	}
	return s + ")";
}

std::string atom_to_string(const Interpretation& i, const DomainAtom& a) {
	const PredTable& t = i.table(a.pred);
	if (a.args.empty()) {
		return a.pred.name();
	}
	return a.pred.name() + tuple_to_string(t, t.index(a.args));
}

} // namespace soid
