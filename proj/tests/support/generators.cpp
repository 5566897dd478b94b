#include "generators.hpp"

namespace soid::testing {

TV Rng::tv(double p_unknown) {
	if (chance(p_unknown)) {
		return TV::U;
	}
	return chance(0.5) ? TV::T : TV::F;
}

namespace {

class FormulaGen {
public:
	FormulaGen(Rng& rng, const FormulaShape& shape) : rng_(rng), shape_(shape) {}

	std::string node(int depth) {
		if (depth == 0 || rng_.chance(0.2)) {
			return leaf();
		}
		const int n = 9;
		switch (rng_.below(n)) {
		case 0: return "~" + node(depth - 1);
		case 1: return "(" + node(depth - 1) + " & " + node(depth - 1) + ")";
		case 2: return "(" + node(depth - 1) + " | " + node(depth - 1) + ")";
		case 3: return "(" + node(depth - 1) + " => " + node(depth - 1) + ")";
		case 4: return "(" + node(depth - 1) + " <=> " + node(depth - 1) + ")";
		case 5:
		case 6: {
			const std::string v = bind();
			std::string body = node(depth - 1);
			vars_.pop_back();
			return std::string("(") + (rng_.chance(0.5) ? "!" : "?") + v + ": " + body + ")";
		}
		case 7: {
			if (shape_.aggregates) {
				const std::string v = bind();
				std::string body = node(depth - 1);
				vars_.pop_back();
				static const char* ops[] = {"=", "<", ">"};
				return "(#{" + v + ": " + body + "} " + ops[rng_.below(3)] + " " + std::to_string(rng_.below(3)) + ")";
			}
			return node(depth - 1);
		}
		default: {
			if (shape_.second_order && so_.empty() && rng_.chance(0.5)) {
				so_.push_back("S");
				std::string body = node(depth - 1);
				so_.pop_back();
				return std::string("(") + (rng_.chance(0.5) ? "??" : "!!") + "S/1: " + body + ")";
			}
			if (shape_.definitions && vars_.empty() && so_.empty() && rng_.chance(0.5)) {
				vars_.push_back("x");
				in_definition_ = true;
				std::string body = node(std::min(depth - 1, 2));
				in_definition_ = false;
				vars_.pop_back();
				return "{t(x) <- " + body + ".}";
			}
			return node(depth - 1);
		}
		}
	}

private:
	std::string bind() {
		static const char* names[] = {"x", "y", "z", "w", "v"};
		std::string v = names[vars_.size() % 5];
		vars_.push_back(v);
		return v;
	}

	std::string var() { return rng_.pick(vars_); }

	std::string leaf() {
		if (vars_.empty()) {
			switch (rng_.below(4)) {
			case 0: return "s";
			case 1: return rng_.chance(0.5) ? "true" : "false";
			case 2: return "(?x: p(x))";
			default: return "(!x: q(x))";
			}
		}
		switch (rng_.below(in_definition_ ? 7 : 6)) {
		case 0: return "s";
		case 1: return "p(" + var() + ")";
		case 2: return "q(" + var() + ")";
		case 3: return "r(" + var() + ", " + var() + ")";
		case 4: return var() + " = " + var();
		case 5: return so_.empty() ? "p(" + var() + ")" : "S(" + var() + ")";
		default: return "t(" + var() + ")";
		}
	}

	Rng& rng_;
	FormulaShape shape_;
	std::vector<std::string> vars_;
	std::vector<std::string> so_;
	bool in_definition_ = false;
};

} // namespace

std::string random_formula(Rng& rng, const FormulaShape& shape) {
	FormulaGen g(rng, shape);
	return g.node(shape.depth);
}

Vocabulary formula_vocabulary() {
	Vocabulary v;
	v.add(Symbol("p"), Type::predicate(1));
	v.add(Symbol("q"), Type::predicate(1));
	v.add(Symbol("r"), Type::predicate(2));
	v.add(Symbol("s"), Type::predicate(0));
	v.add(Symbol("t"), Type::predicate(1));
	return v;
}

Interpretation random_structure(Rng& rng, const DomainPtr& dom, const Vocabulary& v, double p_unknown) {
	Interpretation i(dom);
	for (Symbol s : v.symbols()) {
		const Type& ty = v.type(s);
		if (ty.is_element()) {
			i.set_element(s, rng.below(static_cast<int>(dom->size())));
			continue;
		}
		PredTable t(dom, ty, TV::U);
		for (std::size_t k = 0; k < t.size(); ++k) {
			t.set(k, rng.tv(p_unknown));
		}
		i.set_table(s, std::move(t));
	}
	return i;
}

Interpretation refine(Rng& rng, const Interpretation& i, double p) {
	Interpretation out = i;
	for (Symbol s : i.symbols()) {
		if (i.value(s).type.is_element()) {
			continue;
		}
		PredTable& t = out.mutable_table(s);
		for (std::size_t k = 0; k < t.size(); ++k) {
			if (t.at(k) == TV::U && rng.chance(p)) {
				t.set(k, rng.chance(0.5) ? TV::T : TV::F);
			}
		}
	}
	return out;
}

std::string random_prop_body(Rng& rng, const std::vector<std::string>& atoms, int depth, bool monotone) {
	if (depth == 0 || rng.chance(0.3)) {
		if (rng.chance(0.08)) {
			return rng.chance(0.5) ? "true" : "false";
		}
		return rng.pick(atoms);
	}
	const int choice = rng.below(monotone ? 2 : 5);
	auto sub = [&] { return random_prop_body(rng, atoms, depth - 1, monotone); };
	switch (choice) {
	case 0: return "(" + sub() + " & " + sub() + ")";
	case 1: return "(" + sub() + " | " + sub() + ")";
	case 2: return "~" + sub();
	case 3: return "(" + sub() + " => " + sub() + ")";
	default: return "(" + sub() + " <=> " + sub() + ")";
	}
}

std::string random_prop_rules(Rng& rng, const std::vector<std::string>& heads, const std::vector<std::string>& atoms,
                              int depth, bool monotone) {
	std::string out = "{";
	for (const std::string& h : heads) {
		const int n = 1 + rng.below(2);
		for (int k = 0; k < n; ++k) {
			out += h + " <- " + random_prop_body(rng, atoms, depth, monotone) + ". ";
		}
	}
	return out + "}";
}

} // namespace soid::testing
