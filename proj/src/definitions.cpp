#include "soid/definitions.hpp"

#include "eval_env.hpp"
#include "soid/errors.hpp"

#include <algorithm>

namespace soid {

namespace {

using detail::Evaluator;
using detail::RuleSolver;

struct Cell {
	std::size_t k;
	std::size_t idx;
};

Interpretation without_defined(const RuleSet& d, const Interpretation& i) {
	Interpretation o = i;
	for (Symbol s : d.defined()) {
		o.erase(s);
	}
	return o;
}

void require_context(const RuleSet& d, const Interpretation& o) {
	if (!o.domain_ptr()) {
		throw InputError("context has no domain");
	}
	for (Symbol s : d.defined()) {
		if (o.interprets(s)) {
			throw InputError("context interprets the defined symbol '" + s.name() + "'");
		}
	}
}

/// The defined symbols of Δ as working tables over a fixed context.
class Workspace {
public:
	Workspace(const RuleSet& d, Interpretation context, const Limits& limits)
		: ctx_(std::move(context)), limits_(limits), ev_(ctx_, limits), solver_(ev_, d, defined_types(d)) {
		solver_.bind();
	}

	RuleSolver& solver() { return solver_; }
	const Limits& limits() const { return limits_; }

	std::size_t atom_count() const {
		std::size_t n = 0;
		for (const auto& t : solver_.tables) {
			n += t->size();
		}
		return n;
	}

	std::vector<Cell> cells() const {
		std::vector<Cell> out;
		for (std::size_t k = 0; k < solver_.tables.size(); ++k) {
			for (std::size_t idx = 0; idx < solver_.tables[k]->size(); ++idx) {
				out.push_back({k, idx});
			}
		}
		return out;
	}

	std::vector<Cell> cells_with(TV v) const {
		std::vector<Cell> out;
		for (const Cell& c : cells()) {
			if (get(c) == v) {
				out.push_back(c);
			}
		}
		return out;
	}

	TV get(const Cell& c) const { return solver_.tables[c.k]->at(c.idx); }
	void set(const Cell& c, TV v) { solver_.tables[c.k]->set(c.idx, v); }

	void load(const Interpretation& i) {
		for (std::size_t k = 0; k < solver_.symbols.size(); ++k) {
			const SymbolValue* v = i.find(solver_.symbols[k]);
			if (v == nullptr) {
				throw InputError("interpretation does not interpret the defined symbol '" + solver_.symbols[k].name() + "'");
			}
			if (!(v->type == solver_.tables[k]->type())) {
				throw InputError("defined symbol '" + solver_.symbols[k].name() + "' has type " + to_string(v->type) +
				                 " but its rules give " + to_string(solver_.tables[k]->type()));
			}
			solver_.tables[k]->cells() = v->table->cells();
		}
	}

	Interpretation result() const {
		Interpretation out = ctx_;
		for (std::size_t k = 0; k < solver_.symbols.size(); ++k) {
			out.set_table(solver_.symbols[k], PredTable(*solver_.tables[k]));
		}
		return out;
	}

	DomainAtom atom(const Cell& c) const {
		return {solver_.symbols[c.k], solver_.tables[c.k]->decode(c.idx)};
	}

	Cell cell(const DomainAtom& a) const {
		for (std::size_t k = 0; k < solver_.symbols.size(); ++k) {
			if (solver_.symbols[k] == a.pred) {
				const PredTable& t = *solver_.tables[k];
				if (a.args.size() != static_cast<std::size_t>(t.arity())) {
					throw InputError("atom of '" + a.pred.name() + "' has the wrong number of arguments");
				}
				for (int j = 0; j < t.arity(); ++j) {
					if (a.args[static_cast<std::size_t>(j)] >= t.radix(j)) {
						throw InputError("atom argument out of range for '" + a.pred.name() + "'");
					}
				}
				return {k, t.index(a.args)};
			}
		}
		throw InputError("'" + a.pred.name() + "' is not defined by the rule set");
	}

	TV body(const Cell& c) { return solver_.body_value(c.k, c.idx); }

	bool closed() {
		for (const Cell& c : cells()) {
			if (get(c) != TV::T && body(c) == TV::T) {
				return false;
			}
		}
		return true;
	}

	/// Requires every member of `u` to be a u-cell; restores the tables.
	bool unfounded(const std::vector<Cell>& u) {
		for (const Cell& c : u) {
			set(c, TV::F);
		}
		bool result = true;
		for (const Cell& c : u) {
			if (body(c) != TV::F) {
				result = false;
				break;
			}
		}
		for (const Cell& c : u) {
			set(c, TV::U);
		}
		return result;
	}

	std::vector<Cell> unsupported(bool stop_at_first) {
		std::vector<Cell> out;
		for (const Cell& c : cells()) {
			if (body(c) != get(c)) {
				out.push_back(c);
				if (stop_at_first) {
					break;
				}
			}
		}
		return out;
	}

	/// A pair (T, U) with I[T:u][U:t] closed, T nonempty; nullopt when prudent.
	std::optional<std::pair<std::vector<Cell>, std::vector<Cell>>> prudence_witness() {
		const auto ts = cells_with(TV::T);
		const auto us = cells_with(TV::U);
		check_subset_cap(ts.size() + us.size());
		for (std::uint64_t tm = 1; tm < (std::uint64_t{1} << ts.size()); ++tm) {
			for (std::uint64_t um = 0; um < (std::uint64_t{1} << us.size()); ++um) {
				auto t = pick(ts, tm);
				auto u = pick(us, um);
				for (const Cell& c : t) {
					set(c, TV::U);
				}
				for (const Cell& c : u) {
					set(c, TV::T);
				}
				const bool is_closed = closed();
				for (const Cell& c : t) {
					set(c, TV::T);
				}
				for (const Cell& c : u) {
					set(c, TV::U);
				}
				if (is_closed) {
					return std::make_pair(std::move(t), std::move(u));
				}
			}
		}
		return std::nullopt;
	}

	std::optional<std::vector<Cell>> unfounded_witness() {
		const auto us = cells_with(TV::U);
		check_subset_cap(us.size());
		for (std::uint64_t um = 1; um < (std::uint64_t{1} << us.size()); ++um) {
			auto u = pick(us, um);
			if (unfounded(u)) {
				return u;
			}
		}
		return std::nullopt;
	}

	bool partial_stable() {
		return unsupported(true).empty() && !prudence_witness() && !unfounded_witness();
	}

private:
	void check_subset_cap(std::size_t n) const {
		if (n > limits_.max_subset_atoms) {
			throw CapExceeded("subset search over " + std::to_string(n) + " atoms exceeds max_subset_atoms=" +
			                  std::to_string(limits_.max_subset_atoms));
		}
	}

	static std::vector<Cell> pick(const std::vector<Cell>& from, std::uint64_t mask) {
		std::vector<Cell> out;
		for (std::size_t j = 0; j < from.size(); ++j) {
			if ((mask >> j) & 1U) {
				out.push_back(from[j]);
			}
		}
		return out;
	}

	Interpretation ctx_;
	Limits limits_;
	Evaluator ev_;
	RuleSolver solver_;
};

std::vector<DomainAtom> atoms_of(const Workspace& w, const std::vector<Cell>& cells) {
	std::vector<DomainAtom> out;
	for (const Cell& c : cells) {
		out.push_back(w.atom(c));
	}
	return out;
}

} // namespace

std::vector<std::pair<Symbol, Type>> defined_types(const RuleSet& d) {
	std::vector<std::pair<Symbol, Type>> out;
	for (Symbol s : d.defined()) {
		std::optional<Type> ty;
		for (const Rule& r : d.rules) {
			if (r.head != s) {
				continue;
			}
			Type t = head_type(r);
			if (ty && !(*ty == t)) {
				throw InputError("rules for '" + s.name() + "' disagree on its type: " + to_string(*ty) + " vs " +
				                 to_string(t));
			}
			ty = std::move(t);
		}
		out.emplace_back(s, *ty);
	}
	return out;
}

bool is_closed(const RuleSet& d, const Interpretation& i, const Limits& limits) {
	Workspace w(d, without_defined(d, i), limits);
	w.load(i);
	return w.closed();
}

bool is_unfounded(const RuleSet& d, const Interpretation& i, const std::vector<DomainAtom>& u_set,
                  const Limits& limits) {
	Workspace w(d, without_defined(d, i), limits);
	w.load(i);
	std::vector<Cell> u;
	for (const DomainAtom& a : u_set) {
		u.push_back(w.cell(a));
	}
	for (const Cell& c : u) {
		if (w.get(c) != TV::U) {
			return false;
		}
	}
	return w.unfounded(u);
}

StableReport is_partial_stable(const RuleSet& d, const Interpretation& i, const Limits& limits) {
	const Interpretation o = without_defined(d, i);
	Workspace w(d, o, limits);
	w.load(i);
	StableReport r;
	r.unsupported = atoms_of(w, w.unsupported(false));
	r.supported = r.unsupported.empty();
	if (auto p = w.prudence_witness()) {
		r.prudence_t = atoms_of(w, p->first);
		r.prudence_u = atoms_of(w, p->second);
	} else {
		r.prudent = true;
	}
	if (auto u = w.unfounded_witness()) {
		r.unfounded = atoms_of(w, *u);
	} else {
		r.brave = true;
	}
	r.is_partial_stable = r.supported && r.prudent && r.brave;
	auto wfm = well_founded_model(d, o, limits);
	r.is_wfm = wfm && restrict(*wfm, i.vocabulary()) == i;
	r.is_stable_exact = r.is_partial_stable && w.cells_with(TV::U).empty();
	return r;
}

std::vector<Interpretation> partial_stable_models(const RuleSet& d, const Interpretation& o, const Limits& limits) {
	require_context(d, o);
	Workspace w(d, o, limits);
	const std::vector<Cell> cells = w.cells();
	if (cells.size() > limits.max_partial_stable_atoms) {
		throw CapExceeded(std::to_string(cells.size()) + " defined atoms exceed max_partial_stable_atoms=" +
		                  std::to_string(limits.max_partial_stable_atoms));
	}
	static constexpr TV kDigits[3] = {TV::F, TV::U, TV::T};
	std::vector<int> digit(cells.size(), 0);
	std::vector<Interpretation> out;
	for (;;) {
		for (std::size_t j = 0; j < cells.size(); ++j) {
			w.set(cells[j], kDigits[digit[j]]);
		}
		if (w.partial_stable()) {
			out.push_back(w.result());
		}
		std::size_t j = cells.size();
		while (j > 0 && digit[j - 1] == 2) {
			digit[--j] = 0;
		}
		if (j == 0) {
			break;
		}
		++digit[j - 1];
	}
	return out;
}

std::optional<Interpretation> well_founded_model(const RuleSet& d, const Interpretation& o, const Limits& limits) {
	require_context(d, o);
	Workspace w(d, o, limits);
	w.solver().well_founded();
	return w.result();
}

std::optional<Interpretation> well_founded_model_bruteforce(const RuleSet& d, const Interpretation& o,
                                                            const Limits& limits) {
	const auto models = partial_stable_models(d, o, limits);
	for (const Interpretation& m : models) {
		if (std::all_of(models.begin(), models.end(), [&](const Interpretation& other) { return leq_prec(m, other); })) {
			return m;
		}
	}
	return std::nullopt;
}

std::vector<Interpretation> stable_models(const RuleSet& d, const Interpretation& o, const Limits& limits) {
	require_context(d, o);
	Workspace w(d, o, limits);
	const std::vector<Cell> cells = w.cells();
	if (cells.size() > limits.max_stable_atoms) {
		throw CapExceeded(std::to_string(cells.size()) + " defined atoms exceed max_stable_atoms=" +
		                  std::to_string(limits.max_stable_atoms));
	}
	std::vector<Interpretation> out;
	const std::uint64_t count = std::uint64_t{1} << cells.size();
	for (std::uint64_t m = 0; m < count; ++m) {
		for (std::size_t j = 0; j < cells.size(); ++j) {
			// first cell most significant, so candidates come in lexicographic order with f < t
			const bool bit = ((m >> (cells.size() - 1 - j)) & 1U) != 0;
			w.set(cells[j], tv_of(bit));
		}
		if (w.solver().is_stable()) {
			out.push_back(w.result());
		}
	}
	return out;
}

bool is_total(const RuleSet& d, const Interpretation& o, const Limits& limits) {
	auto wfm = well_founded_model(d, o, limits);
	if (!wfm) {
		return false;
	}
	for (Symbol s : d.defined()) {
		if (!wfm->table(s).is_exact()) {
			return false;
		}
	}
	return true;
}

TV eval_definition(const RuleSet& d, const Interpretation& i, DefSemantics sem, const Limits& limits) {
	Evaluator ev(i, limits);
	return ev.eval_definition(d, sem == DefSemantics::W ? detail::DefSemanticsKind::WellFounded
	                                                    : detail::DefSemanticsKind::Stable);
}

} // namespace soid
