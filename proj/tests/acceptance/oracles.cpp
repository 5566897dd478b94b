#include "oracles.hpp"

#include "soid/analysis.hpp"
#include "soid/errors.hpp"
#include "soid/evaluator.hpp"

#include <functional>
#include <memory>
#include <stdexcept>

namespace soid::oracle {

TV glb_completions(const std::function<bool(std::span<const bool>)>& f, std::span<const TV> x) {
	std::vector<std::size_t> unknown;
	std::unique_ptr<bool[]> v(new bool[x.size() + 1]);
	for (std::size_t k = 0; k < x.size(); ++k) {
		v[k] = x[k] == TV::T;
		if (x[k] == TV::U) {
			unknown.push_back(k);
		}
	}
	bool seen_t = false;
	bool seen_f = false;
	for (std::uint64_t m = 0; m < (std::uint64_t{1} << unknown.size()); ++m) {
		for (std::size_t j = 0; j < unknown.size(); ++j) {
			v[unknown[j]] = ((m >> j) & 1U) != 0;
		}
		(f(std::span<const bool>(v.get(), x.size())) ? seen_t : seen_f) = true;
	}
	if (seen_t && seen_f) {
		return TV::U;
	}
	return seen_t ? TV::T : TV::F;
}

TV supervaluation(const Expr& e, const Interpretation& i) {
	struct Slot {
		Symbol s;
		std::size_t idx;
	};
	std::vector<Slot> slots;
	for (Symbol s : free_symbols(e)) {
		const SymbolValue* v = i.find(s);
		if (v == nullptr || !v->table) {
			continue;
		}
		for (std::size_t k = 0; k < v->table->size(); ++k) {
			if (v->table->at(k) == TV::U) {
				slots.push_back({s, k});
			}
		}
	}
	if (slots.size() > 20) {
		throw CapExceeded("oracle completions");
	}
	bool seen_t = false;
	bool seen_f = false;
	Interpretation c = i;
	for (std::uint64_t m = 0; m < (std::uint64_t{1} << slots.size()); ++m) {
		for (std::size_t j = 0; j < slots.size(); ++j) {
			c.mutable_table(slots[j].s).set(slots[j].idx, ((m >> j) & 1U) ? TV::T : TV::F);
		}
		(eval_exact(e, c) == TV::T ? seen_t : seen_f) = true;
		if (seen_t && seen_f) {
			return TV::U;
		}
	}
	return seen_t ? TV::T : TV::F;
}

std::uint64_t transitive_closure(std::uint64_t rel, int n) {
	auto bit = [n](int i, int j) { return std::uint64_t{1} << (i * n + j); };
	for (int k = 0; k < n; ++k) {
		for (int i = 0; i < n; ++i) {
			for (int j = 0; j < n; ++j) {
				if ((rel & bit(i, k)) && (rel & bit(k, j))) {
					rel |= bit(i, j);
				}
			}
		}
	}
	return rel;
}

bool is_equivalence(std::uint64_t rel, int n) {
	auto has = [&](int i, int j) { return ((rel >> (i * n + j)) & 1U) != 0; };
	for (int i = 0; i < n; ++i) {
		if (!has(i, i)) {
			return false;
		}
		for (int j = 0; j < n; ++j) {
			if (has(i, j) != has(j, i)) {
				return false;
			}
			for (int k = 0; k < n; ++k) {
				if (has(i, j) && has(j, k) && !has(i, k)) {
					return false;
				}
			}
		}
	}
	return true;
}

std::optional<GameValue> backward_induction(std::uint64_t move, std::uint32_t won, int n) {
	auto edge = [&](int i, int j) { return ((move >> (i * n + j)) & 1U) != 0; };
	std::vector<int> state(static_cast<std::size_t>(n), 0); // 0 new, 1 on stack, 2 done
	GameValue g;
	bool cyclic = false;
	std::function<void(int)> visit = [&](int v) {
		state[static_cast<std::size_t>(v)] = 1;
		bool some_losing = false;
		bool all_winning = true;
		for (int w = 0; w < n; ++w) {
			if (!edge(v, w)) {
				continue;
			}
			if (state[static_cast<std::size_t>(w)] == 1) {
				cyclic = true;
				continue;
			}
			if (state[static_cast<std::size_t>(w)] == 0) {
				visit(w);
			}
			some_losing = some_losing || ((g.lose >> w) & 1U);
			all_winning = all_winning && ((g.win >> w) & 1U);
		}
		const bool is_won = ((won >> v) & 1U) != 0;
		if (is_won || some_losing) {
			g.win |= 1U << v;
		}
		if (!is_won && all_winning) {
			g.lose |= 1U << v;
		}
		state[static_cast<std::size_t>(v)] = 2;
	};
	for (int v = 0; v < n; ++v) {
		if (state[static_cast<std::size_t>(v)] == 0) {
			visit(v);
		}
	}
	if (cyclic) {
		return std::nullopt;
	}
	return g;
}

GameValue retrograde(std::uint64_t move, std::uint32_t won, int n) {
	auto edge = [&](int i, int j) { return ((move >> (i * n + j)) & 1U) != 0; };
	GameValue g;
	for (bool changed = true; changed;) {
		changed = false;
		for (int v = 0; v < n; ++v) {
			const bool is_won = ((won >> v) & 1U) != 0;
			bool some_losing = false;
			bool all_winning = true;
			for (int w = 0; w < n; ++w) {
				if (edge(v, w)) {
					some_losing = some_losing || ((g.lose >> w) & 1U);
					all_winning = all_winning && ((g.win >> w) & 1U);
				}
			}
			if ((is_won || some_losing) && !((g.win >> v) & 1U)) {
				g.win |= 1U << v;
				changed = true;
			}
			if (!is_won && all_winning && !((g.lose >> v) & 1U)) {
				g.lose |= 1U << v;
				changed = true;
			}
		}
	}
	return g;
}

namespace {

void collect_atoms(const Expr& e, std::vector<Symbol>& out, std::map<Symbol, int>& index) {
	if (e->kind == NodeKind::Atom) {
		if (!e->args.empty()) {
			throw std::invalid_argument("not propositional: " + e->pred.name());
		}
		if (index.emplace(e->pred, static_cast<int>(out.size())).second) {
			out.push_back(e->pred);
		}
		return;
	}
	for (const Expr& c : e->children) {
		collect_atoms(c, out, index);
	}
}

} // namespace

PropProgram::PropProgram(const RuleSet& d) {
	for (const Rule& r : d.rules) {
		if (!r.head_args.empty()) {
			throw std::invalid_argument("not propositional: " + r.head.name());
		}
		if (index_.emplace(r.head, static_cast<int>(atoms_.size())).second) {
			atoms_.push_back(r.head);
		}
	}
	for (const Rule& r : d.rules) {
		collect_atoms(r.body, atoms_, index_);
		rules_.emplace_back(index_.at(r.head), r.body);
	}
}

bool PropProgram::polar(const Expr& e, std::uint32_t pos, std::uint32_t neg) const {
	switch (e->kind) {
	case NodeKind::True: return true;
	case NodeKind::False: return false;
	case NodeKind::Atom: return ((pos >> index_.at(e->pred)) & 1U) != 0;
	case NodeKind::Not: return !polar(e->body(), neg, pos);
	case NodeKind::And:
		for (const Expr& c : e->children) {
			if (!polar(c, pos, neg)) {
				return false;
			}
		}
		return true;
	case NodeKind::Or:
		for (const Expr& c : e->children) {
			if (polar(c, pos, neg)) {
				return true;
			}
		}
		return false;
	case NodeKind::Implies: return !polar(e->children[0], neg, pos) || polar(e->children[1], pos, neg);
	case NodeKind::Iff: {
		const Expr& a = e->children[0];
		const Expr& b = e->children[1];
		return (!polar(a, neg, pos) || polar(b, pos, neg)) && (!polar(b, neg, pos) || polar(a, pos, neg));
	}
	default: throw std::invalid_argument("not a propositional body");
	}
}

std::uint32_t PropProgram::step(std::uint32_t pos, std::uint32_t neg) const {
	std::uint32_t out = 0;
	for (const auto& [h, body] : rules_) {
		if (polar(body, pos, neg)) {
			out |= 1U << h;
		}
	}
	return out;
}

std::uint32_t PropProgram::lfp(std::uint32_t neg) const {
	std::uint32_t x = 0;
	for (;;) {
		const std::uint32_t next = step(x, neg);
		if (next == x) {
			return x;
		}
		x = next;
	}
}

std::vector<std::uint32_t> PropProgram::stable_models() const {
	std::vector<std::uint32_t> out;
	std::uint32_t defined = 0;
	for (const auto& r : rules_) {
		defined |= 1U << r.first;
	}
	for (std::uint32_t m = 0; m < (1U << atoms_.size()); ++m) {
		if ((m & ~defined) == 0 && lfp(m) == m) {
			out.push_back(m);
		}
	}
	return out;
}

std::pair<std::uint32_t, std::uint32_t> PropProgram::well_founded() const {
	std::uint32_t lo = 0;
	std::uint32_t hi = (1U << atoms_.size()) - 1;
	for (;;) {
		const std::uint32_t lo2 = lfp(hi);
		const std::uint32_t hi2 = lfp(lo2);
		if (lo2 == lo && hi2 == hi) {
			return {lo, hi};
		}
		lo = lo2;
		hi = hi2;
	}
}

std::uint32_t PropProgram::least_model() const {
	std::uint32_t x = 0;
	for (;;) {
		const std::uint32_t next = step(x, x);
		if (next == x) {
			return x;
		}
		x = next;
	}
}

TV PropProgram::kleene(const Expr& e, const std::vector<TV>& v) const {
	switch (e->kind) {
	case NodeKind::True: return TV::T;
	case NodeKind::False: return TV::F;
	case NodeKind::Atom: return v.at(static_cast<std::size_t>(index_.at(e->pred)));
	case NodeKind::Not: {
		TV a = kleene(e->body(), v);
		return a == TV::U ? TV::U : (a == TV::T ? TV::F : TV::T);
	}
	case NodeKind::And: {
		TV r = TV::T;
		for (const Expr& c : e->children) {
			r = std::min(r, kleene(c, v));
		}
		return r;
	}
	case NodeKind::Or: {
		TV r = TV::F;
		for (const Expr& c : e->children) {
			r = std::max(r, kleene(c, v));
		}
		return r;
	}
	case NodeKind::Implies: {
		TV a = kleene(e->children[0], v);
		TV na = a == TV::U ? TV::U : (a == TV::T ? TV::F : TV::T);
		return std::max(na, kleene(e->children[1], v));
	}
	case NodeKind::Iff: {
		TV a = kleene(e->children[0], v);
		TV b = kleene(e->children[1], v);
		if (a == TV::U || b == TV::U) {
			return TV::U;
		}
		return a == b ? TV::T : TV::F;
	}
	default: throw std::invalid_argument("not a propositional body");
	}
}

std::string PropProgram::show(std::uint32_t t, std::uint32_t u) const {
	std::string out;
	for (std::size_t k = 0; k < atoms_.size(); ++k) {
		if (!out.empty()) {
			out += ' ';
		}
		const bool is_t = ((t >> k) & 1U) != 0;
		const bool is_u = ((u >> k) & 1U) != 0;
		out += atoms_[k].name() + "=" + (is_t ? "t" : (is_u ? "u" : "f"));
	}
	return out;
}

} // namespace soid::oracle
