#include "soid/analysis.hpp"

#include "soid/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace soid {

namespace {

void free_in_term(const TermPtr& t, const std::vector<Symbol>& bound, std::set<Symbol>& out) {
	if (!t) {
		return;
	}
	if (t->kind == Term::Kind::Name) {
		if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) {
			out.insert(t->name);
		}
		return;
	}
	free_in_term(t->lhs, bound, out);
	free_in_term(t->rhs, bound, out);
}

void free_in(const Expr& e, std::vector<Symbol>& bound, std::set<Symbol>& out);

void free_in_rules(const RuleSet& d, std::vector<Symbol>& bound, std::set<Symbol>& out) {
	for (const Rule& r : d.rules) {
		if (std::find(bound.begin(), bound.end(), r.head) == bound.end()) {
			out.insert(r.head);
		}
		const std::size_t mark = bound.size();
		for (const TypedVar& v : r.vars) {
			bound.push_back(v.name);
		}
		for (const TermPtr& t : r.head_args) {
			free_in_term(t, bound, out);
		}
		free_in(r.body, bound, out);
		bound.resize(mark);
	}
}

void free_in(const Expr& e, std::vector<Symbol>& bound, std::set<Symbol>& out) {
	switch (e->kind) {
	case NodeKind::Atom:
		if (std::find(bound.begin(), bound.end(), e->pred) == bound.end()) {
			out.insert(e->pred);
		}
		for (const TermPtr& t : e->args) {
			free_in_term(t, bound, out);
		}
		return;
	case NodeKind::Compare:
		free_in_term(e->lhs, bound, out);
		free_in_term(e->rhs, bound, out);
		return;
	case NodeKind::Quant: {
		bound.push_back(e->var.name);
		free_in(e->body(), bound, out);
		bound.pop_back();
		return;
	}
	case NodeKind::Aggregate: {
		free_in_term(e->rhs, bound, out);
		const std::size_t mark = bound.size();
		for (const TypedVar& v : e->agg_vars) {
			bound.push_back(v.name);
		}
		free_in(e->body(), bound, out);
		bound.resize(mark);
		return;
	}
	case NodeKind::Definition: free_in_rules(*e->rules, bound, out); return;
	case NodeKind::Let: {
		const std::size_t mark = bound.size();
		for (Symbol s : e->rules->defined()) {
			bound.push_back(s);
		}
		free_in_rules(*e->rules, bound, out);
		free_in(e->body(), bound, out);
		bound.resize(mark);
		return;
	}
	default:
		for (const Expr& c : e->children) {
			free_in(c, bound, out);
		}
	}
}

/// Symbol types under a stack of binders, falling back to a vocabulary.
class Scope {
public:
	explicit Scope(const Vocabulary& sigma) : sigma_(sigma) {}

	const Type* lookup(Symbol s) const {
		for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
			if (it->first == s) {
				return &it->second;
			}
		}
		const auto* e = sigma_.find(s);
		return e != nullptr ? &e->type : nullptr;
	}
	std::size_t mark() const { return stack_.size(); }
	void push(Symbol s, Type t) { stack_.emplace_back(s, std::move(t)); }
	void pop_to(std::size_t m) { stack_.resize(m); }

private:
	const Vocabulary& sigma_;
	std::vector<std::pair<Symbol, Type>> stack_;
};

/// Type of each symbol defined by a let block, from the first rule for it.
std::vector<std::pair<Symbol, Type>> let_types(const RuleSet& d) {
	std::vector<std::pair<Symbol, Type>> out;
	for (const Rule& r : d.rules) {
		if (std::none_of(out.begin(), out.end(), [&](const auto& p) { return p.first == r.head; })) {
			out.emplace_back(r.head, head_type(r));
		}
	}
	return out;
}

class Checker {
public:
	explicit Checker(const Vocabulary& sigma) : scope_(sigma) {}

	std::vector<Diagnostic> diags;

	void error(SourceLoc loc, std::string msg) { diags.push_back({loc, std::move(msg)}); }

	void element_term(const TermPtr& t, SourceLoc loc) {
		switch (t->kind) {
		case Term::Kind::Int: return;
		case Term::Kind::Name: {
			const Type* ty = scope_.lookup(t->name);
			if (ty == nullptr) {
				error(loc, "unknown symbol '" + t->name.name() + "'");
			} else if (!ty->is_element()) {
				error(loc, "'" + t->name.name() + "' has type " + to_string(*ty) + " where an element is expected");
			}
			return;
		}
		default: element_term(t->lhs, loc); element_term(t->rhs, loc);
		}
	}

	void application(Symbol pred, const std::vector<TermPtr>& args, SourceLoc loc, const Type* ty) {
		if (ty == nullptr) {
			error(loc, "unknown symbol '" + pred.name() + "'");
			return;
		}
		if (ty->is_element()) {
			error(loc, "constant '" + pred.name() + "' used as a predicate");
			return;
		}
		if (ty->arity() != static_cast<int>(args.size())) {
			error(loc, "'" + pred.name() + "' expects " + std::to_string(ty->arity()) + " arguments, got " +
			               std::to_string(args.size()));
			return;
		}
		for (std::size_t k = 0; k < args.size(); ++k) {
			const ArgType& at = ty->args[k];
			if (at.is_element()) {
				element_term(args[k], loc);
				continue;
			}
			if (at.kind == ArgType::Kind::Boolean) {
				error(loc, "'" + pred.name() + "' has a boolean argument position");
				continue;
			}
			if (args[k]->kind != Term::Kind::Name) {
				error(loc, "argument " + std::to_string(k + 1) + " of '" + pred.name() + "' must be a relation symbol");
				continue;
			}
			const Type* arg_ty = scope_.lookup(args[k]->name);
			if (arg_ty == nullptr) {
				error(loc, "unknown symbol '" + args[k]->name.name() + "'");
			} else if (!arg_ty->is_predicate() || !arg_ty->is_first_order_predicate() || arg_ty->arity() != at.arity) {
				error(loc, "argument " + std::to_string(k + 1) + " of '" + pred.name() + "' must be pred/" +
				               std::to_string(at.arity) + ", got " + to_string(*arg_ty) + " '" +
				               args[k]->name.name() + "'");
			}
		}
	}

	void expr(const Expr& e) {
		switch (e->kind) {
		case NodeKind::True:
		case NodeKind::False: return;
		case NodeKind::Atom: application(e->pred, e->args, e->loc, scope_.lookup(e->pred)); return;
		case NodeKind::Compare:
			element_term(e->lhs, e->loc);
			element_term(e->rhs, e->loc);
			return;
		case NodeKind::Quant: {
			if (e->var.type.kind == Type::Kind::Boolean ||
			    (e->var.type.is_predicate() && !e->var.type.is_first_order_predicate())) {
				error(e->loc, "quantified variable '" + e->var.name.name() + "' must be an element or a first order "
				              "predicate");
			}
			auto m = scope_.mark();
			scope_.push(e->var.name, e->var.type);
			expr(e->body());
			scope_.pop_to(m);
			return;
		}
		case NodeKind::Aggregate: {
			element_term(e->rhs, e->loc);
			auto m = scope_.mark();
			for (const TypedVar& v : e->agg_vars) {
				scope_.push(v.name, v.type);
			}
			expr(e->body());
			scope_.pop_to(m);
			return;
		}
		case NodeKind::Definition: rules(*e->rules); return;
		case NodeKind::Let: {
			auto m = scope_.mark();
			for (auto& [s, t] : let_types(*e->rules)) {
				scope_.push(s, t);
			}
			rules(*e->rules);
			expr(e->body());
			scope_.pop_to(m);
			return;
		}
		default:
			for (const Expr& c : e->children) {
				expr(c);
			}
		}
	}

	void rules(const RuleSet& d) {
		for (const Rule& r : d.rules) {
			auto m = scope_.mark();
			for (const TypedVar& v : r.vars) {
				scope_.push(v.name, v.type);
			}
			const Type* ty = scope_.lookup(r.head);
			if (ty != nullptr && std::any_of(r.vars.begin(), r.vars.end(), [&](const TypedVar& v) { return v.name == r.head; })) {
				error(r.loc, "rule head '" + r.head.name() + "' is also a rule variable");
			}
			application(r.head, r.head_args, r.loc, ty);
			expr(r.body);
			scope_.pop_to(m);
		}
	}

private:
	Scope scope_;
};

enum class Grammar { FO, ESO, ASO };

class Classifier {
public:
	explicit Classifier(const Vocabulary& sigma) : scope_(sigma) {}

	bool in(const Expr& e, Grammar g) {
		switch (e->kind) {
		case NodeKind::True:
		case NodeKind::False:
		case NodeKind::Compare: return true;
		case NodeKind::Atom: {
			const Type* t = scope_.lookup(e->pred);
			bool second_order = t != nullptr && t->is_second_order_predicate();
			return !second_order || g != Grammar::FO;
		}
		case NodeKind::Not: return in(e->body(), dual(g));
		case NodeKind::And:
		case NodeKind::Or:
			return std::all_of(e->children.begin(), e->children.end(), [&](const Expr& c) { return in(c, g); });
		case NodeKind::Implies: return in(e->children[0], dual(g)) && in(e->children[1], g);
		case NodeKind::Iff:
			return in(e->children[0], g) && in(e->children[0], dual(g)) && in(e->children[1], g) &&
			       in(e->children[1], dual(g));
		case NodeKind::Quant: {
			bool ok = true;
			if (e->is_second_order_quant()) {
				Quantifier allowed = g == Grammar::ESO ? Quantifier::Exists : Quantifier::Forall;
				ok = g != Grammar::FO && e->quant == allowed;
			}
			if (!ok) {
				return false;
			}
			auto m = scope_.mark();
			scope_.push(e->var.name, e->var.type);
			bool r = in(e->body(), g);
			scope_.pop_to(m);
			return r;
		}
		case NodeKind::Aggregate: {
			auto m = scope_.mark();
			for (const TypedVar& v : e->agg_vars) {
				scope_.push(v.name, v.type);
			}
			bool r = in(e->body(), Grammar::FO);
			scope_.pop_to(m);
			return r;
		}
		case NodeKind::Definition: return fo_rules(*e->rules);
		case NodeKind::Let: {
			auto m = scope_.mark();
			for (auto& [s, t] : let_types(*e->rules)) {
				scope_.push(s, t);
			}
			bool r = fo_rules(*e->rules) && in(e->body(), g);
			scope_.pop_to(m);
			return r;
		}
		}
		return false;
	}

private:
	static Grammar dual(Grammar g) {
		switch (g) {
		case Grammar::ESO: return Grammar::ASO;
		case Grammar::ASO: return Grammar::ESO;
		case Grammar::FO: break;
		}
		return Grammar::FO;
	}

	bool fo_rules(const RuleSet& d) {
		for (const Rule& r : d.rules) {
			const Type* t = scope_.lookup(r.head);
			Type ht = t != nullptr ? *t : head_type(r);
			if (ht.is_second_order_predicate()) {
				return false;
			}
			auto m = scope_.mark();
			for (const TypedVar& v : r.vars) {
				scope_.push(v.name, v.type);
			}
			bool ok = in(r.body, Grammar::FO);
			scope_.pop_to(m);
			if (!ok) {
				return false;
			}
		}
		return true;
	}

	Scope scope_;
};

/// Collects type constraints on free symbols for vocabulary inference.
class Inference {
public:
	Inference(const Vocabulary& known, const Vocabulary& guessed) : known_(known), guessed_(guessed), scope_(known) {}

	struct Constraint {
		std::optional<Type> definite; //!< from uses that fix the type
		bool weak_element = false;    //!< argument of a predicate of unknown type
		SourceLoc loc;
	};
	std::map<Symbol, Constraint> found;

	void expr(const Expr& e) {
		switch (e->kind) {
		case NodeKind::Atom: application(e->pred, e->args, e->loc); return;
		case NodeKind::Compare:
			term(e->lhs, e->loc);
			term(e->rhs, e->loc);
			return;
		case NodeKind::Quant: {
			auto m = scope_.mark();
			scope_.push(e->var.name, e->var.type);
			expr(e->body());
			scope_.pop_to(m);
			return;
		}
		case NodeKind::Aggregate: {
			term(e->rhs, e->loc);
			auto m = scope_.mark();
			for (const TypedVar& v : e->agg_vars) {
				scope_.push(v.name, v.type);
			}
			expr(e->body());
			scope_.pop_to(m);
			return;
		}
		case NodeKind::Definition: rules(*e->rules); return;
		case NodeKind::Let: {
			auto m = scope_.mark();
			for (auto& [s, t] : let_types(*e->rules)) {
				scope_.push(s, t);
			}
			rules(*e->rules);
			expr(e->body());
			scope_.pop_to(m);
			return;
		}
		default:
			for (const Expr& c : e->children) {
				expr(c);
			}
		}
	}

	void rules(const RuleSet& d) {
		for (const Rule& r : d.rules) {
			auto m = scope_.mark();
			for (const TypedVar& v : r.vars) {
				scope_.push(v.name, v.type);
			}
			application(r.head, r.head_args, r.loc);
			expr(r.body);
			scope_.pop_to(m);
		}
	}

private:
	const Type* type_of(Symbol s) const {
		if (const Type* t = scope_.lookup(s)) {
			return t;
		}
		const auto* g = guessed_.find(s);
		return g != nullptr ? &g->type : nullptr;
	}

	void add(Symbol s, const Type& t, SourceLoc loc) {
		Constraint& c = found[s];
		if (!c.definite) {
			c.definite = t;
			c.loc = loc;
			return;
		}
		if (*c.definite == t) {
			return;
		}
		// two predicate uses: a relation argument wins over an element guess
		if (c.definite->is_predicate() && t.is_predicate() && c.definite->arity() == t.arity()) {
			Type merged = *c.definite;
			for (std::size_t k = 0; k < merged.args.size(); ++k) {
				if (merged.args[k].is_element() && t.args[k].is_relation()) {
					merged.args[k] = t.args[k];
				} else if (merged.args[k].is_relation() && t.args[k].is_relation() && !(merged.args[k] == t.args[k])) {
					conflict(s, *c.definite, t, loc);
				}
			}
			c.definite = merged;
			return;
		}
		conflict(s, *c.definite, t, loc);
	}

	[[noreturn]] static void conflict(Symbol s, const Type& a, const Type& b, SourceLoc loc) {
		throw InputError(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": symbol '" + s.name() +
		                 "' used both as " + to_string(a) + " and as " + to_string(b));
	}

	void term(const TermPtr& t, SourceLoc loc) {
		if (t->kind == Term::Kind::Name) {
			if (scope_.lookup(t->name) == nullptr) {
				add(t->name, Type::element(), loc);
			}
			return;
		}
		if (t->lhs) {
			term(t->lhs, loc);
			term(t->rhs, loc);
		}
	}

	void application(Symbol pred, const std::vector<TermPtr>& args, SourceLoc loc) {
		const Type* pt = type_of(pred);
		const bool pred_free = scope_.lookup(pred) == nullptr;
		std::vector<ArgType> derived;
		for (std::size_t k = 0; k < args.size(); ++k) {
			const TermPtr& a = args[k];
			std::optional<ArgType> position;
			if (pt != nullptr && pt->is_predicate() && k < pt->args.size()) {
				position = pt->args[k];
			}
			if (a->kind != Term::Kind::Name) {
				term(a, loc);
				derived.push_back(ArgType::element());
				continue;
			}
			const Type* at = type_of(a->name);
			const bool arg_free = scope_.lookup(a->name) == nullptr;
			if (arg_free) {
				if (position && position->is_relation()) {
					add(a->name, Type::of(*position), loc);
				} else if (position) {
					add(a->name, Type::element(), loc);
				} else {
					found[a->name].weak_element = true;
				}
			}
			if (at != nullptr && at->is_first_order_predicate()) {
				derived.push_back(ArgType::relation(at->arity()));
			} else {
				derived.push_back(ArgType::element());
			}
		}
		if (pred_free) {
			add(pred, Type::predicate(std::move(derived)), loc);
		}
	}

	const Vocabulary& known_;
	const Vocabulary& guessed_;
	Scope scope_;
};

} // namespace

std::set<Symbol> free_symbols(const Expr& e) {
	std::set<Symbol> out;
	std::vector<Symbol> bound;
	free_in(e, bound, out);
	return out;
}

std::set<Symbol> free_symbols(const RuleSet& d) {
	std::set<Symbol> out;
	std::vector<Symbol> bound;
	free_in_rules(d, bound, out);
	return out;
}

std::set<Symbol> parameters(const RuleSet& d) {
	std::set<Symbol> out = free_symbols(d);
	for (Symbol s : d.defined()) {
		out.erase(s);
	}
	return out;
}

std::vector<Diagnostic> typecheck(const Expr& e, const Vocabulary& sigma) {
	Checker c(sigma);
	c.expr(e);
	return std::move(c.diags);
}

std::vector<Diagnostic> typecheck(const RuleSet& d, const Vocabulary& sigma) {
	Checker c(sigma);
	c.rules(d);
	return std::move(c.diags);
}

std::string to_string(Fragment f) {
	switch (f) {
	case Fragment::FO: return "FO(ID*)";
	case Fragment::ESO: return "ESO(ID*)";
	case Fragment::ASO: return "ASO(ID*)";
	case Fragment::SO: return "SO(ID*)-only";
	}
	return "?";
}

bool in_fo(const Expr& e, const Vocabulary& sigma) { return Classifier(sigma).in(e, Grammar::FO); }
bool in_eso(const Expr& e, const Vocabulary& sigma) { return Classifier(sigma).in(e, Grammar::ESO); }
bool in_aso(const Expr& e, const Vocabulary& sigma) { return Classifier(sigma).in(e, Grammar::ASO); }

Fragment classify(const Expr& e, const Vocabulary& sigma) {
	if (in_fo(e, sigma)) {
		return Fragment::FO;
	}
	if (in_eso(e, sigma)) {
		return Fragment::ESO;
	}
	if (in_aso(e, sigma)) {
		return Fragment::ASO;
	}
	return Fragment::SO;
}

Vocabulary infer_vocabulary(const std::vector<Expr>& formulas, const std::vector<const RuleSet*>& rule_sets,
                            const Vocabulary& known) {
	Vocabulary guessed;
	for (int pass = 0; pass < 4; ++pass) {
		Inference inf(known, guessed);
		for (const Expr& e : formulas) {
			inf.expr(e);
		}
		for (const RuleSet* d : rule_sets) {
			inf.rules(*d);
		}
		Vocabulary next;
		for (const auto& [s, c] : inf.found) {
			if (known.contains(s)) {
				continue;
			}
			next.add(s, c.definite ? *c.definite : Type::element());
		}
		if (next == guessed) {
			break;
		}
		guessed = std::move(next);
	}
	return guessed;
}

} // namespace soid
