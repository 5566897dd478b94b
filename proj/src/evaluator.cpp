#include "soid/evaluator.hpp"

#include "eval_env.hpp"
#include "soid/analysis.hpp"
#include "soid/errors.hpp"

#include <algorithm>

namespace soid {

namespace detail {

namespace {

TV max_truth(TV a, TV b) { return a < b ? b : a; }
TV min_truth(TV a, TV b) { return a < b ? a : b; }

std::size_t element_bit(const Domain& dom, const std::vector<Element>& elems) {
	std::size_t idx = 0;
	for (Element e : elems) {
		idx = idx * dom.size() + static_cast<std::size_t>(e);
	}
	return idx;
}

} // namespace

Evaluator::Evaluator(const Interpretation& base, const Limits& limits)
	: base_(base), dom_(base.domain()), limits_(limits) {
	for (const auto& [s, v] : base.values()) {
		base_index_.emplace(s, &v);
	}
}

const Binding* Evaluator::frame(Symbol s) const {
	for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
		if (it->sym == s) {
			return &*it;
		}
	}
	return nullptr;
}

const SymbolValue* Evaluator::base(Symbol s) const {
	auto it = base_index_.find(s);
	return it == base_index_.end() ? nullptr : it->second;
}

TV Evaluator::read(const PredTable* t, std::size_t index) {
	const TV v = t->at(index);
	if (v != TV::U) {
		return v;
	}
	for (std::size_t c = 0; c < contexts_.size(); ++c) {
		const auto& cov = contexts_[c].covered;
		for (std::size_t s = 0; s < cov.size(); ++s) {
			if (cov[s] != t) {
				continue;
			}
			const std::uint64_t key = (static_cast<std::uint64_t>(s) << 40) | index;
			auto it = contexts_[c].chosen.find(key);
			if (it != contexts_[c].chosen.end()) {
				return it->second;
			}
			throw NeedAtom{c, s, index};
		}
	}
	return v;
}

TermValue Evaluator::term(const TermPtr& t) {
	TermValue out;
	switch (t->kind) {
	case Term::Kind::Name: {
		Element e = -1;
		if (const Binding* b = frame(t->name)) {
			if (b->kind != Binding::Kind::Element) {
				throw InputError("'" + t->name.name() + "' is a predicate, not an element");
			}
			e = b->element;
		} else if (const SymbolValue* v = base(t->name)) {
			if (!v->type.is_element()) {
				throw InputError("'" + t->name.name() + "' is a predicate, not an element");
			}
			e = v->element;
		} else if (auto found = dom_.find(t->name.name())) {
			e = *found;
		} else {
			throw InputError("unknown symbol '" + t->name.name() + "'");
		}
		out.defined = true;
		out.element = e;
		out.number = dom_.int_value(e);
		return out;
	}
	case Term::Kind::Int:
		out.defined = true;
		out.number = t->value;
		out.element = dom_.find_int(t->value).value_or(-1);
		return out;
	case Term::Kind::Add:
	case Term::Kind::Sub: {
		TermValue a = term(t->lhs);
		TermValue b = term(t->rhs);
		if (!a.number || !b.number) {
			return out;
		}
		out.defined = true;
		out.number = t->kind == Term::Kind::Add ? *a.number + *b.number : *a.number - *b.number;
		out.element = dom_.find_int(*out.number).value_or(-1);
		return out;
	}
	}
	return out;
}

std::optional<RelationRef> Evaluator::relation(Symbol s) {
	if (const Binding* b = frame(s)) {
		switch (b->kind) {
		case Binding::Kind::Mask: return RelationRef{b->arity, true, b->mask, nullptr};
		case Binding::Kind::Table:
			if (!b->table->type().is_first_order_predicate()) {
				return std::nullopt;
			}
			return RelationRef{b->arity, false, 0, b->table};
		case Binding::Kind::Element: return std::nullopt;
		}
	}
	const SymbolValue* v = base(s);
	if (v == nullptr || !v->type.is_first_order_predicate()) {
		return std::nullopt;
	}
	return RelationRef{v->type.arity(), false, 0, v->table.get()};
}

TV Evaluator::relation_cell(const RelationRef& r, std::size_t bit) {
	if (r.is_mask) {
		return tv_of(((r.mask >> bit) & 1U) != 0);
	}
	return read(r.table, bit);
}

TV Evaluator::atom(const Node& n) {
	const PredTable* table = nullptr;
	if (const Binding* b = frame(n.pred)) {
		if (b->kind == Binding::Kind::Element) {
			throw InputError("constant '" + n.pred.name() + "' used as a predicate");
		}
		if (b->kind == Binding::Kind::Mask) {
			std::vector<Element> elems;
			elems.reserve(n.args.size());
			for (const TermPtr& t : n.args) {
				TermValue v = term(t);
				if (v.element < 0) {
					return TV::F;
				}
				elems.push_back(v.element);
			}
			return tv_of(((b->mask >> element_bit(dom_, elems)) & 1U) != 0);
		}
		table = b->table;
	} else if (const SymbolValue* v = base(n.pred)) {
		if (!v->table) {
			throw InputError("constant '" + n.pred.name() + "' used as a predicate");
		}
		table = v->table.get();
	} else {
		throw InputError("unknown symbol '" + n.pred.name() + "'");
	}

	const Type& ty = table->type();
	if (ty.arity() != static_cast<int>(n.args.size())) {
		throw InputError("'" + n.pred.name() + "' expects " + std::to_string(ty.arity()) + " arguments");
	}
	ArgValue vals[16];
	if (n.args.size() > 16) {
		throw InputError("too many arguments for '" + n.pred.name() + "'");
	}
	struct Partial {
		std::size_t pos;
		std::vector<std::size_t> bits;
	};
	std::vector<Partial> partial;
	for (std::size_t k = 0; k < n.args.size(); ++k) {
		const ArgType& at = ty.args[k];
		if (at.is_element()) {
			TermValue v = term(n.args[k]);
			if (v.element < 0) {
				return TV::F;
			}
			vals[k] = static_cast<ArgValue>(v.element);
			continue;
		}
		if (n.args[k]->kind != Term::Kind::Name) {
			throw InputError("argument " + std::to_string(k + 1) + " of '" + n.pred.name() + "' must be a relation");
		}
		auto r = relation(n.args[k]->name);
		if (!r || r->arity != at.arity) {
			throw InputError("argument " + std::to_string(k + 1) + " of '" + n.pred.name() + "' must be pred/" +
			                 std::to_string(at.arity));
		}
		if (r->is_mask) {
			vals[k] = r->mask;
			continue;
		}
		const std::uint64_t cells = relation_cells(dom_.size(), at.arity, limits_);
		ArgValue mask = 0;
		Partial p{k, {}};
		for (std::size_t bit = 0; bit < cells; ++bit) {
			TV c = read(r->table, bit);
			if (c == TV::T) {
				mask |= ArgValue{1} << bit;
			} else if (c == TV::U) {
				p.bits.push_back(bit);
			}
		}
		vals[k] = mask;
		if (!p.bits.empty()) {
			partial.push_back(std::move(p));
		}
	}
	const std::span<const ArgValue> args(vals, n.args.size());
	if (partial.empty()) {
		return read(table, table->index(args));
	}
	// a partial relation argument: glb over its completions
	std::size_t unknown = 0;
	for (const Partial& p : partial) {
		unknown += p.bits.size();
	}
	if (unknown >= 63 || (std::uint64_t{1} << unknown) > limits_.max_completions) {
		throw CapExceeded("partial relation argument with " + std::to_string(unknown) + " unknown tuples");
	}
	ArgValue fixed[16];
	std::copy(vals, vals + n.args.size(), fixed);
	GlbAccumulator acc;
	for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << unknown) && !acc.done(); ++combo) {
		std::size_t used = 0;
		for (const Partial& p : partial) {
			ArgValue m = fixed[p.pos];
			for (std::size_t bit : p.bits) {
				if ((combo >> used++) & 1U) {
					m |= ArgValue{1} << bit;
				}
			}
			vals[p.pos] = m;
		}
		acc.add(read(table, table->index(args)));
	}
	return acc.value();
}

TV Evaluator::compare(const Node& n) {
	const TermValue a = term(n.lhs);
	const TermValue b = term(n.rhs);
	const bool both_num = a.number && b.number;
	const bool both_elem = a.element >= 0 && b.element >= 0;
	switch (n.cmp) {
	case CompareOp::Eq:
		if (both_elem) {
			return tv_of(a.element == b.element);
		}
		return tv_of(both_num && *a.number == *b.number);
	case CompareOp::Ne:
		if (both_elem) {
			return tv_of(a.element != b.element);
		}
		return tv_of(both_num && *a.number != *b.number);
	default: break;
	}
	std::int64_t x = 0;
	std::int64_t y = 0;
	if (both_num) {
		x = *a.number;
		y = *b.number;
	} else if (both_elem) {
		x = a.element;
		y = b.element;
	} else {
		return TV::F;
	}
	switch (n.cmp) {
	case CompareOp::Lt: return tv_of(x < y);
	case CompareOp::Gt: return tv_of(x > y);
	case CompareOp::Le: return tv_of(x <= y);
	case CompareOp::Ge: return tv_of(x >= y);
	default: break;
	}
	return TV::F;
}

TV Evaluator::quant(const Node& n) {
	const bool forall = n.quant == Quantifier::Forall;
	TV acc = forall ? TV::T : TV::F;
	const std::size_t m = mark();
	auto step = [&](TV v) {
		acc = forall ? min_truth(acc, v) : max_truth(acc, v);
		return acc == (forall ? TV::F : TV::T);
	};
	if (n.var.type.is_element()) {
		for (Element d = 0; d < static_cast<Element>(dom_.size()); ++d) {
			bind_element(n.var.name, d);
			TV v = eval(n.body());
			pop_to(m);
			if (step(v)) {
				break;
			}
		}
		return acc;
	}
	if (!n.var.type.is_first_order_predicate()) {
		throw InputError("cannot quantify over '" + n.var.name.name() + "' of type " + to_string(n.var.type));
	}
	const int arity = n.var.type.arity();
	const std::uint64_t cells = relation_cells(dom_.size(), arity, limits_);
	const std::uint64_t count = std::uint64_t{1} << cells;
	for (std::uint64_t mask = 0; mask < count; ++mask) {
		bind_mask(n.var.name, arity, mask);
		TV v = eval(n.body());
		pop_to(m);
		if (step(v)) {
			break;
		}
	}
	return acc;
}

TV Evaluator::aggregate(const Node& n) {
	const TermValue bound = term(n.rhs);
	if (!bound.number) {
		return TV::F;
	}
	const std::size_t k = n.agg_vars.size();
	for (const TypedVar& v : n.agg_vars) {
		if (!v.type.is_element()) {
			throw InputError("aggregate variable '" + v.name.name() + "' must be an element");
		}
	}
	PartialSet set;
	std::vector<Element> tuple(k, 0);
	const std::size_t m = mark();
	const std::size_t dsize = dom_.size();
	bool more = dsize > 0 || k == 0;
	while (more) {
		for (std::size_t j = 0; j < k; ++j) {
			bind_element(n.agg_vars[j].name, tuple[j]);
		}
		TV v = eval(n.body());
		pop_to(m);
		Tuple key;
		if (n.agg == AggregateKind::Sum) {
			if (k == 0) {
				throw InputError("sum aggregate needs at least one variable");
			}
			auto num = dom_.int_value(tuple[0]);
			if (!num) {
				throw InputError("sum over non-integer element '" + dom_.name(tuple[0]) + "'");
			}
			key.push_back(*num);
		}
		for (Element e : tuple) {
			key.push_back(e);
		}
		set.set(key, v);
		// next tuple in lexicographic order
		more = false;
		for (std::size_t j = k; j-- > 0;) {
			if (static_cast<std::size_t>(++tuple[j]) < dsize) {
				more = true;
				break;
			}
			tuple[j] = 0;
		}
	}
	return approx_aggregate(n.agg, n.agg_cmp, set, *bound.number);
}

std::vector<const PredTable*> Evaluator::partial_tables(const std::vector<Symbol>& syms) {
	std::vector<const PredTable*> out;
	for (Symbol s : syms) {
		const PredTable* t = nullptr;
		if (const Binding* b = frame(s)) {
			t = b->kind == Binding::Kind::Table ? b->table : nullptr;
		} else if (const SymbolValue* v = base(s)) {
			t = v->table.get();
		}
		if (t != nullptr && !t->is_exact() && std::find(out.begin(), out.end(), t) == out.end()) {
			out.push_back(t);
		}
	}
	return out;
}

Type Evaluator::defined_type(Symbol s, const RuleSet& d) {
	if (const Binding* b = frame(s)) {
		if (b->kind == Binding::Kind::Table) {
			return b->table->type();
		}
		if (b->kind == Binding::Kind::Mask) {
			return Type::predicate(b->arity);
		}
		throw InputError("defined symbol '" + s.name() + "' is bound to an element");
	}
	if (const SymbolValue* v = base(s)) {
		return v->type;
	}
	for (const Rule& r : d.rules) {
		if (r.head == s) {
			return head_type(r);
		}
	}
	throw InputError("symbol '" + s.name() + "' has no rules");
}

TV Evaluator::check_definition(const RuleSet& d, DefSemanticsKind sem) {
	const std::vector<Symbol> defs = d.defined();
	std::vector<std::pair<Symbol, Type>> types;
	std::vector<RelationRef> outer;
	for (Symbol s : defs) {
		types.emplace_back(s, defined_type(s, d));
		if (const Binding* b = frame(s); b != nullptr && b->kind == Binding::Kind::Mask) {
			outer.push_back({b->arity, true, b->mask, nullptr});
			continue;
		}
		const PredTable* t = nullptr;
		if (const Binding* b = frame(s)) {
			t = b->table;
		} else if (const SymbolValue* v = base(s)) {
			t = v->table.get();
		}
		if (t == nullptr) {
			throw InputError("defined symbol '" + s.name() + "' is not interpreted");
		}
		outer.push_back({t->arity(), false, 0, t});
	}

	RuleSolver solver(*this, d, types);
	const std::size_t m = mark();
	if (sem == DefSemanticsKind::WellFounded) {
		solver.bind();
		solver.well_founded();
		pop_to(m);
		for (std::size_t k = 0; k < defs.size(); ++k) {
			const PredTable& w = *solver.tables[k];
			for (std::size_t idx = 0; idx < w.size(); ++idx) {
				const TV wv = w.at(idx);
				if (wv == TV::U || relation_cell(outer[k], idx) != wv) {
					return TV::F;
				}
			}
		}
		return TV::T;
	}
	for (std::size_t k = 0; k < defs.size(); ++k) {
		PredTable& w = *solver.tables[k];
		for (std::size_t idx = 0; idx < w.size(); ++idx) {
			w.set(idx, relation_cell(outer[k], idx));
		}
	}
	solver.bind();
	const bool stable = solver.is_stable();
	pop_to(m);
	return tv_of(stable);
}

TV Evaluator::eval_definition(const RuleSet& d, DefSemanticsKind sem) {
	const std::set<Symbol> fs = free_symbols(d);
	return enumerate(partial_tables({fs.begin(), fs.end()}), [&] { return check_definition(d, sem); });
}

TV Evaluator::let(const Node& n) {
	const RuleSet& d = *n.rules;
	const std::set<Symbol> pars = parameters(d);
	return enumerate(partial_tables({pars.begin(), pars.end()}), [&] {
		std::vector<std::pair<Symbol, Type>> types;
		for (Symbol s : d.defined()) {
			auto it = std::find_if(d.rules.begin(), d.rules.end(), [&](const Rule& r) { return r.head == s; });
			types.emplace_back(s, head_type(*it));
		}
		RuleSolver solver(*this, d, types);
		const std::size_t m = mark();
		solver.bind();
		solver.well_founded();
		for (std::size_t k = 0; k < solver.tables.size(); ++k) {
			if (!solver.tables[k]->is_exact()) {
				throw NonTotalDefinition("let definition of '" + solver.symbols[k].name() +
				                         "' has no exact well-founded model");
			}
		}
		TV v = eval(n.body());
		pop_to(m);
		return v;
	});
}

TV Evaluator::eval(const Expr& e) {
	const Node& n = *e;
	switch (n.kind) {
	case NodeKind::True: return TV::T;
	case NodeKind::False: return TV::F;
	case NodeKind::Atom: return atom(n);
	case NodeKind::Compare: return compare(n);
	case NodeKind::Not: return kleene_not(eval(n.body()));
	case NodeKind::And: {
		TV acc = TV::T;
		for (const Expr& c : n.children) {
			acc = min_truth(acc, eval(c));
			if (acc == TV::F) {
				break;
			}
		}
		return acc;
	}
	case NodeKind::Or: {
		TV acc = TV::F;
		for (const Expr& c : n.children) {
			acc = max_truth(acc, eval(c));
			if (acc == TV::T) {
				break;
			}
		}
		return acc;
	}
	case NodeKind::Implies: {
		TV a = eval(n.children[0]);
		if (a == TV::F) {
			return TV::T;
		}
		return kleene_implies(a, eval(n.children[1]));
	}
	case NodeKind::Iff: return kleene_iff(eval(n.children[0]), eval(n.children[1]));
	case NodeKind::Quant: return quant(n);
	case NodeKind::Aggregate: return aggregate(n);
	case NodeKind::Definition: return eval_definition(*n.rules, DefSemanticsKind::WellFounded);
	case NodeKind::Let: return let(n);
	}
	return TV::U;
}

// ---------------------------------------------------------------------------

RuleSolver::RuleSolver(Evaluator& ev, const RuleSet& d, const std::vector<std::pair<Symbol, Type>>& defined)
	: ev_(ev) {
	std::size_t max_arity = 0;
	std::size_t max_vars = 0;
	for (const auto& [s, ty] : defined) {
		if (!ty.has_table()) {
			throw InputError("defined symbol '" + s.name() + "' must be a predicate");
		}
		symbols.push_back(s);
		tables.push_back(std::make_unique<PredTable>(ev.domain_ptr(), ty, TV::U, ev.limits()));
		std::vector<CompiledRule> compiled;
		for (const Rule& r : d.rules) {
			if (r.head != s) {
				continue;
			}
			if (r.head_args.size() != ty.args.size()) {
				throw InputError("rule for '" + s.name() + "' has " + std::to_string(r.head_args.size()) +
				                 " arguments, expected " + std::to_string(ty.args.size()));
			}
			CompiledRule cr{&r, {}};
			for (const TermPtr& t : r.head_args) {
				HeadSlot slot;
				if (t->kind == Term::Kind::Name) {
					for (std::size_t v = 0; v < r.vars.size(); ++v) {
						if (r.vars[v].name == t->name) {
							slot.var = static_cast<int>(v);
						}
					}
				}
				if (slot.var < 0) {
					slot.term = t;
				}
				cr.slots.push_back(std::move(slot));
			}
			max_vars = std::max(max_vars, r.vars.size());
			compiled.push_back(std::move(cr));
		}
		max_arity = std::max(max_arity, ty.args.size());
		rules_.push_back(std::move(compiled));
	}
	args_.resize(max_arity);
	assigned_.resize(max_vars);
	has_.resize(max_vars);
}

void RuleSolver::bind() {
	for (std::size_t k = 0; k < symbols.size(); ++k) {
		ev_.bind_table(symbols[k], tables[k].get());
	}
}

TV RuleSolver::body_value(std::size_t k, std::size_t index) {
	const PredTable& table = *tables[k];
	const Type& ty = table.type();
	table.decode(index, std::span<ArgValue>(args_.data(), ty.args.size()));
	TV best = TV::F;
	for (const CompiledRule& cr : rules_[k]) {
		const Rule& r = *cr.rule;
		std::fill(has_.begin(), has_.begin() + static_cast<std::ptrdiff_t>(r.vars.size()), 0);
		bool match = true;
		for (std::size_t j = 0; j < cr.slots.size() && match; ++j) {
			const HeadSlot& slot = cr.slots[j];
			if (slot.var >= 0) {
				const auto v = static_cast<std::size_t>(slot.var);
				if (has_[v] != 0) {
					match = assigned_[v] == args_[j];
				} else {
					has_[v] = 1;
					assigned_[v] = args_[j];
				}
				continue;
			}
			if (ty.args[j].is_element()) {
				TermValue tv = ev_.term(slot.term);
				match = tv.element >= 0 && static_cast<ArgValue>(tv.element) == args_[j];
				continue;
			}
			auto rel = slot.term->kind == Term::Kind::Name ? ev_.relation(slot.term->name) : std::nullopt;
			if (!rel) {
				throw InputError("head argument " + std::to_string(j + 1) + " of '" + r.head.name() +
				                 "' must be a relation");
			}
			ArgValue mask = rel->mask;
			if (!rel->is_mask) {
				if (!rel->table->is_exact()) {
					throw InputError("partial relation '" + slot.term->name.name() + "' in a rule head");
				}
				mask = rel->table->true_mask();
			}
			match = mask == args_[j];
		}
		if (!match) {
			continue;
		}
		const std::size_t m = ev_.mark();
		for (std::size_t v = 0; v < r.vars.size(); ++v) {
			const TypedVar& var = r.vars[v];
			if (var.type.is_element()) {
				ev_.bind_element(var.name, static_cast<Element>(assigned_[v]));
			} else {
				ev_.bind_mask(var.name, var.type.arity(), assigned_[v]);
			}
		}
		const TV v = ev_.eval(r.body);
		ev_.pop_to(m);
		if (v > best) {
			best = v;
			if (best == TV::T) {
				break;
			}
		}
	}
	return best;
}

bool RuleSolver::lower_phase() {
	bool any = false;
	bool changed = true;
	while (changed) {
		changed = false;
		for (std::size_t k = 0; k < tables.size(); ++k) {
			PredTable& t = *tables[k];
			for (std::size_t idx = 0; idx < t.size(); ++idx) {
				if (t.at(idx) == TV::U && body_value(k, idx) == TV::T) {
					t.set(idx, TV::T);
					changed = true;
				}
			}
		}
		any = any || changed;
	}
	return any;
}

bool RuleSolver::upper_phase() {
	bool any = false;
	for (auto& t : tables) {
		for (TV& c : t->cells()) {
			if (c == TV::U) {
				c = TV::F;
			}
		}
	}
	bool changed = true;
	while (changed) {
		changed = false;
		for (std::size_t k = 0; k < tables.size(); ++k) {
			PredTable& t = *tables[k];
			for (std::size_t idx = 0; idx < t.size(); ++idx) {
				if (t.at(idx) == TV::F && body_value(k, idx) != TV::F) {
					t.set(idx, TV::U);
					changed = true;
				}
			}
		}
		any = any || changed;
	}
	return any;
}

void RuleSolver::well_founded() {
	for (auto& t : tables) {
		t->fill(TV::U);
	}
	std::size_t prev_t = 0;
	std::size_t prev_u = 0;
	for (auto& t : tables) {
		prev_u += t->size();
	}
	for (;;) {
		lower_phase();
		upper_phase();
		std::size_t nt = 0;
		std::size_t nu = 0;
		for (auto& t : tables) {
			nt += t->count(TV::T);
			nu += t->count(TV::U);
		}
		if (nt == prev_t && nu == prev_u) {
			return;
		}
		prev_t = nt;
		prev_u = nu;
	}
}

bool RuleSolver::is_stable() {
	std::vector<std::vector<TV>> saved;
	for (auto& t : tables) {
		saved.push_back(t->cells());
		if (!t->is_exact()) {
			throw InputError("stable test needs an exact candidate");
		}
		for (TV& c : t->cells()) {
			if (c == TV::T) {
				c = TV::U;
			}
		}
	}
	lower_phase();
	bool stable = true;
	for (auto& t : tables) {
		stable = stable && t->is_exact();
	}
	for (std::size_t k = 0; k < tables.size() && stable; ++k) {
		for (std::size_t idx = 0; idx < tables[k]->size() && stable; ++idx) {
			stable = tables[k]->at(idx) == TV::T || body_value(k, idx) != TV::T;
		}
	}
	for (std::size_t k = 0; k < tables.size(); ++k) {
		tables[k]->cells() = std::move(saved[k]);
	}
	return stable;
}

} // namespace detail

namespace {

std::vector<const PredTable*> free_tables(const Expr& e, const Interpretation& i) {
	std::vector<const PredTable*> out;
	for (Symbol s : free_symbols(e)) {
		const SymbolValue* v = i.find(s);
		if (v != nullptr && v->table && !v->table->is_exact()) {
			out.push_back(v->table.get());
		}
	}
	return out;
}

} // namespace

TV eval(const Expr& e, const Interpretation& i, EvalMode m, const Limits& limits) {
	detail::Evaluator ev(i, limits);
	if (m == EvalMode::Kleene) {
		return ev.eval(e);
	}
	return ev.enumerate(free_tables(e, i), [&] { return ev.eval(e); });
}

TV eval_exact(const Expr& e, const Interpretation& i, const Limits& limits) {
	if (!free_tables(e, i).empty()) {
		throw InputError("eval_exact needs an interpretation that is exact on the free symbols");
	}
	detail::Evaluator ev(i, limits);
	return ev.eval(e);
}

} // namespace soid
