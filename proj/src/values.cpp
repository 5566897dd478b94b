#include "soid/values.hpp"

#include "soid/errors.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>

namespace soid {

char to_char(TV v) {
	switch (v) {
	case TV::T: return 't';
	case TV::U: return 'u';
	case TV::F: return 'f';
	}
	return '?';
}

std::string to_string(TV v) { return std::string(1, to_char(v)); }

TV tv_from_char(char c) {
	switch (c) {
	case 't': return TV::T;
	case 'u': return TV::U;
	case 'f': return TV::F;
	default: throw std::invalid_argument(std::string("not a truth value: ") + c);
	}
}

bool leq_truth(TV a, TV b) { return static_cast<int>(a) <= static_cast<int>(b); }

bool leq_prec(TV a, TV b) { return a == b || a == TV::U; }

TV glb_prec(std::span<const TV> values) {
	if (values.empty()) {
		throw std::invalid_argument("glb_prec of an empty multiset");
	}
	TV first = values.front();
	for (TV v : values) {
		if (v != first) {
			return TV::U;
		}
	}
	return first;
}

TV glb_prec(std::initializer_list<TV> values) { return glb_prec(std::span<const TV>(values.begin(), values.size())); }

void GlbAccumulator::add(TV v) {
	if (!seen_) {
		seen_ = true;
		value_ = v;
	} else if (v != value_) {
		value_ = TV::U;
	}
}

TV GlbAccumulator::value() const {
	if (!seen_) {
		throw std::logic_error("glb of an empty multiset");
	}
	return value_;
}

TV kleene_not(TV a) { return static_cast<TV>(2 - static_cast<int>(a)); }
TV kleene_and(TV a, TV b) { return std::min(a, b); }
TV kleene_or(TV a, TV b) { return std::max(a, b); }
TV kleene_implies(TV a, TV b) { return kleene_or(kleene_not(a), b); }

TV kleene_iff(TV a, TV b) {
	if (a == TV::U || b == TV::U) {
		return TV::U;
	}
	return tv_of(a == b);
}

namespace {

void check_arity(Connective c, std::size_t n) {
	bool ok = false;
	switch (c) {
	case Connective::Not: ok = n == 1; break;
	case Connective::And:
	case Connective::Or: ok = n >= 1; break;
	case Connective::Implies:
	case Connective::Iff: ok = n == 2; break;
	}
	if (!ok) {
		throw std::invalid_argument("connective applied to " + std::to_string(n) + " arguments");
	}
}

} // namespace

TV kleene_connective(Connective c, std::span<const TV> args) {
	check_arity(c, args.size());
	switch (c) {
	case Connective::Not: return kleene_not(args[0]);
	case Connective::And: return *std::min_element(args.begin(), args.end());
	case Connective::Or: return *std::max_element(args.begin(), args.end());
	case Connective::Implies: return kleene_implies(args[0], args[1]);
	case Connective::Iff: return kleene_iff(args[0], args[1]);
	}
	return TV::U;
}

bool classical_connective(Connective c, std::span<const bool> args) {
	check_arity(c, args.size());
	switch (c) {
	case Connective::Not: return !args[0];
	case Connective::And: return std::all_of(args.begin(), args.end(), [](bool b) { return b; });
	case Connective::Or: return std::any_of(args.begin(), args.end(), [](bool b) { return b; });
	case Connective::Implies: return !args[0] || args[1];
	case Connective::Iff: return args[0] == args[1];
	}
	return false;
}

PartialSet::PartialSet(std::initializer_list<std::pair<Tuple, TV>> entries) {
	for (const auto& [k, v] : entries) {
		set(k, v);
	}
}

void PartialSet::set(const Tuple& key, TV v) {
	auto it = std::find(keys_.begin(), keys_.end(), key);
	if (it != keys_.end()) {
		values_[static_cast<std::size_t>(it - keys_.begin())] = v;
		return;
	}
	keys_.push_back(key);
	values_.push_back(v);
}

TV PartialSet::at(const Tuple& key) const {
	auto it = std::find(keys_.begin(), keys_.end(), key);
	if (it == keys_.end()) {
		throw std::out_of_range("tuple not in carrier");
	}
	return values_[static_cast<std::size_t>(it - keys_.begin())];
}

bool PartialSet::is_exact() const {
	return std::none_of(values_.begin(), values_.end(), [](TV v) { return v == TV::U; });
}

bool PartialSet::operator==(const PartialSet& other) const {
	if (size() != other.size()) {
		return false;
	}
	for (std::size_t i = 0; i < keys_.size(); ++i) {
		auto it = std::find(other.keys_.begin(), other.keys_.end(), keys_[i]);
		if (it == other.keys_.end() || other.values_[static_cast<std::size_t>(it - other.keys_.begin())] != values_[i]) {
			return false;
		}
	}
	return true;
}

namespace {

template <class Order>
bool pointwise(const PartialSet& a, const PartialSet& b, Order leq) {
	if (a.size() != b.size()) {
		return false;
	}
	for (std::size_t i = 0; i < a.size(); ++i) {
		TV other;
		try {
			other = b.at(a.carrier()[i]);
		} catch (const std::out_of_range&) {
			return false;
		}
		if (!leq(a.values()[i], other)) {
			return false;
		}
	}
	return true;
}

} // namespace

bool leq_truth(const PartialSet& a, const PartialSet& b) {
	return pointwise(a, b, [](TV x, TV y) { return leq_truth(x, y); });
}

bool leq_prec(const PartialSet& a, const PartialSet& b) {
	return pointwise(a, b, [](TV x, TV y) { return leq_prec(x, y); });
}

TV ultimate_approx(const BoolFn& f, std::span<const TV> x, unsigned max_unknown) {
	std::vector<std::size_t> unknown;
	std::vector<bool> base(x.size());
	for (std::size_t i = 0; i < x.size(); ++i) {
		if (x[i] == TV::U) {
			unknown.push_back(i);
		}
		base[i] = x[i] == TV::T;
	}
	if (unknown.size() > max_unknown || unknown.size() >= 63) {
		throw CapExceeded(std::to_string(unknown.size()) + " unknown positions (max " + std::to_string(max_unknown) + ")");
	}
	// std::vector<bool> is not contiguous, so completions are written into a plain array
	auto buffer = std::make_unique<bool[]>(x.size());
	auto as_bools = [&]() { return std::span<const bool>(buffer.get(), x.size()); };
	GlbAccumulator glb;
	const std::uint64_t count = std::uint64_t{1} << unknown.size();
	for (std::uint64_t mask = 0; mask < count && !glb.done(); ++mask) {
		for (std::size_t i = 0; i < x.size(); ++i) {
			buffer[i] = base[i];
		}
		for (std::size_t j = 0; j < unknown.size(); ++j) {
			buffer[unknown[j]] = (mask >> j) & 1U;
		}
		glb.add(tv_of(f(as_bools())));
	}
	return glb.value();
}

TV ultimate_approx(const BoolFn& f, const PartialSet& x, unsigned max_unknown) {
	return ultimate_approx(f, std::span<const TV>(x.values()), max_unknown);
}

TV approx_quantifier(Quantifier q, std::span<const TV> values) {
	if (values.empty()) {
		return q == Quantifier::Forall ? TV::T : TV::F;
	}
	return q == Quantifier::Forall ? *std::min_element(values.begin(), values.end())
	                               : *std::max_element(values.begin(), values.end());
}

TV approx_quantifier(Quantifier q, const PartialSet& s) {
	return approx_quantifier(q, std::span<const TV>(s.values()));
}

namespace {

TV from_bounds(bool all, bool none) {
	if (all) {
		return TV::T;
	}
	if (none) {
		return TV::F;
	}
	return TV::U;
}

} // namespace

TV approx_aggregate(AggregateKind agg, Comparison cmp, const PartialSet& s, std::int64_t n) {
	if (agg == AggregateKind::Card) {
		std::int64_t sure = 0;
		std::int64_t maybe = 0;
		for (TV v : s.values()) {
			sure += v == TV::T;
			maybe += v == TV::U;
		}
		const std::int64_t lo = sure;
		const std::int64_t hi = sure + maybe;
		switch (cmp) {
		case Comparison::Eq: return from_bounds(lo == n && hi == n, n < lo || n > hi);
		case Comparison::Lt: return from_bounds(hi < n, lo >= n);
		case Comparison::Gt: return from_bounds(lo > n, hi <= n);
		}
	}

	std::int64_t base = 0;
	std::vector<std::int64_t> unknown;
	for (std::size_t i = 0; i < s.size(); ++i) {
		const Tuple& key = s.carrier()[i];
		if (key.empty()) {
			throw InputError("sum aggregate over a tuple without a numeric first component");
		}
		if (s.values()[i] == TV::T) {
			base += key[0];
		} else if (s.values()[i] == TV::U) {
			unknown.push_back(key[0]);
		}
	}
	std::int64_t lo = base;
	std::int64_t hi = base;
	for (std::int64_t w : unknown) {
		(w < 0 ? lo : hi) += w;
	}
	switch (cmp) {
	case Comparison::Lt: return from_bounds(hi < n, lo >= n);
	case Comparison::Gt: return from_bounds(lo > n, hi <= n);
	case Comparison::Eq: break;
	}
	const bool all = lo == n && hi == n;
	if (all) {
		return TV::T;
	}
	if (n < lo || n > hi) {
		return TV::F;
	}
	// n is inside [lo, hi]: decide reachability by subset sums
	std::set<std::int64_t> reachable{base};
	for (std::int64_t w : unknown) {
		if (w == 0) {
			continue;
		}
		std::vector<std::int64_t> shifted;
		shifted.reserve(reachable.size());
		for (std::int64_t r : reachable) {
			shifted.push_back(r + w);
		}
		reachable.insert(shifted.begin(), shifted.end());
		if (reachable.size() > (std::size_t{1} << 22)) {
			throw CapExceeded("subset sums of a sum aggregate");
		}
	}
	return reachable.count(n) != 0 ? TV::U : TV::F;
}

} // namespace soid
