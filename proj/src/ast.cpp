#include "soid/ast.hpp"

#include "soid/errors.hpp"

#include <algorithm>

namespace soid {

TermPtr Term::make_name(Symbol s) {
	auto t = std::make_shared<Term>();
	t->kind = Kind::Name;
	t->name = s;
	return t;
}

TermPtr Term::make_int(std::int64_t v) {
	auto t = std::make_shared<Term>();
	t->kind = Kind::Int;
	t->value = v;
	return t;
}

TermPtr Term::make_binary(Kind k, TermPtr a, TermPtr b) {
	auto t = std::make_shared<Term>();
	t->kind = k;
	t->lhs = std::move(a);
	t->rhs = std::move(b);
	return t;
}

bool operator==(const Term& a, const Term& b) {
	if (a.kind != b.kind) {
		return false;
	}
	switch (a.kind) {
	case Term::Kind::Name: return a.name == b.name;
	case Term::Kind::Int: return a.value == b.value;
	default: return same_term(a.lhs, b.lhs) && same_term(a.rhs, b.rhs);
	}
}

bool same_term(const TermPtr& a, const TermPtr& b) {
	if (!a || !b) {
		return !a && !b;
	}
	return *a == *b;
}

std::vector<Symbol> RuleSet::defined() const {
	std::vector<Symbol> out;
	for (const Rule& r : rules) {
		if (std::find(out.begin(), out.end(), r.head) == out.end()) {
			out.push_back(r.head);
		}
	}
	std::sort(out.begin(), out.end(), SymbolNameLess{});
	return out;
}

bool RuleSet::defines(Symbol s) const {
	return std::any_of(rules.begin(), rules.end(), [&](const Rule& r) { return r.head == s; });
}

Type head_type(const Rule& r) {
	std::vector<ArgType> args;
	args.reserve(r.head_args.size());
	for (const TermPtr& t : r.head_args) {
		ArgType a = ArgType::element();
		if (t->kind == Term::Kind::Name) {
			for (const TypedVar& v : r.vars) {
				if (v.name == t->name && v.type.is_predicate()) {
					a = ArgType::relation(v.type.arity());
				}
			}
		}
		args.push_back(a);
	}
	return Type::predicate(std::move(args));
}

namespace {

std::shared_ptr<Node> node(NodeKind k, SourceLoc loc) {
	auto n = std::make_shared<Node>();
	n->kind = k;
	n->loc = loc;
	return n;
}

} // namespace

Expr make_true(SourceLoc loc) { return node(NodeKind::True, loc); }
Expr make_false(SourceLoc loc) { return node(NodeKind::False, loc); }

Expr make_atom(Symbol pred, std::vector<TermPtr> args, SourceLoc loc) {
	auto n = node(NodeKind::Atom, loc);
	n->pred = pred;
	n->args = std::move(args);
	return n;
}

Expr make_compare(CompareOp op, TermPtr a, TermPtr b, SourceLoc loc) {
	auto n = node(NodeKind::Compare, loc);
	n->cmp = op;
	n->lhs = std::move(a);
	n->rhs = std::move(b);
	return n;
}

Expr make_not(Expr e, SourceLoc loc) {
	auto n = node(NodeKind::Not, loc);
	n->children.push_back(std::move(e));
	return n;
}

Expr make_nary(NodeKind k, std::vector<Expr> children, SourceLoc loc) {
	if (children.empty()) {
		throw std::invalid_argument("n-ary connective without operands");
	}
	if (children.size() == 1) {
		return children.front();
	}
	auto n = node(k, loc);
	n->children = std::move(children);
	return n;
}

Expr make_and(std::vector<Expr> children, SourceLoc loc) { return make_nary(NodeKind::And, std::move(children), loc); }
Expr make_or(std::vector<Expr> children, SourceLoc loc) { return make_nary(NodeKind::Or, std::move(children), loc); }

Expr make_implies(Expr a, Expr b, SourceLoc loc) {
	auto n = node(NodeKind::Implies, loc);
	n->children = {std::move(a), std::move(b)};
	return n;
}

Expr make_iff(Expr a, Expr b, SourceLoc loc) {
	auto n = node(NodeKind::Iff, loc);
	n->children = {std::move(a), std::move(b)};
	return n;
}

Expr make_quant(Quantifier q, TypedVar v, Expr body, SourceLoc loc) {
	auto n = node(NodeKind::Quant, loc);
	n->quant = q;
	n->var = std::move(v);
	n->children.push_back(std::move(body));
	return n;
}

Expr make_aggregate(AggregateKind agg, Comparison cmp, std::vector<TypedVar> vars, Expr body, TermPtr bound,
                    SourceLoc loc) {
	auto n = node(NodeKind::Aggregate, loc);
	n->agg = agg;
	n->agg_cmp = cmp;
	n->agg_vars = std::move(vars);
	n->children.push_back(std::move(body));
	n->rhs = std::move(bound);
	return n;
}

Expr make_definition(RuleSetPtr rules, SourceLoc loc) {
	auto n = node(NodeKind::Definition, loc);
	n->rules = std::move(rules);
	return n;
}

Expr make_let(RuleSetPtr rules, Expr body, SourceLoc loc) {
	auto n = node(NodeKind::Let, loc);
	n->rules = std::move(rules);
	n->children.push_back(std::move(body));
	return n;
}

bool equal(const Rule& a, const Rule& b) {
	if (a.head != b.head || a.head_args.size() != b.head_args.size() || !(a.vars == b.vars)) {
		return false;
	}
	for (std::size_t k = 0; k < a.head_args.size(); ++k) {
		if (!same_term(a.head_args[k], b.head_args[k])) {
			return false;
		}
	}
	return equal(a.body, b.body);
}

bool equal(const RuleSet& a, const RuleSet& b) {
	if (a.rules.size() != b.rules.size()) {
		return false;
	}
	for (std::size_t k = 0; k < a.rules.size(); ++k) {
		if (!equal(a.rules[k], b.rules[k])) {
			return false;
		}
	}
	return true;
}

bool equal(const Expr& a, const Expr& b) {
	if (a == b) {
		return true;
	}
	if (!a || !b || a->kind != b->kind) {
		return false;
	}
	if (a->children.size() != b->children.size()) {
		return false;
	}
	for (std::size_t k = 0; k < a->children.size(); ++k) {
		if (!equal(a->children[k], b->children[k])) {
			return false;
		}
	}
	switch (a->kind) {
	case NodeKind::True:
	case NodeKind::False:
	case NodeKind::Not:
	case NodeKind::And:
	case NodeKind::Or:
	case NodeKind::Implies:
	case NodeKind::Iff: return true;
	case NodeKind::Atom:
		if (a->pred != b->pred || a->args.size() != b->args.size()) {
			return false;
		}
		for (std::size_t k = 0; k < a->args.size(); ++k) {
			if (!same_term(a->args[k], b->args[k])) {
				return false;
			}
		}
		return true;
	case NodeKind::Compare: return a->cmp == b->cmp && same_term(a->lhs, b->lhs) && same_term(a->rhs, b->rhs);
	case NodeKind::Quant: return a->quant == b->quant && a->var == b->var;
	case NodeKind::Aggregate:
		return a->agg == b->agg && a->agg_cmp == b->agg_cmp && a->agg_vars == b->agg_vars && same_term(a->rhs, b->rhs);
	case NodeKind::Definition:
	case NodeKind::Let: return equal(*a->rules, *b->rules);
	}
	return false;
}

namespace {

std::size_t term_size(const TermPtr& t) {
	if (!t) {
		return 0;
	}
	return 1 + term_size(t->lhs) + term_size(t->rhs);
}

} // namespace

std::size_t ruleset_size(const RuleSet& d) {
	std::size_t n = 0;
	for (const Rule& r : d.rules) {
		n += 1;
		for (const TermPtr& t : r.head_args) {
			n += term_size(t);
		}
		n += expr_size(r.body);
	}
	return n;
}

std::size_t expr_size(const Expr& e) {
	std::size_t n = 1;
	for (const TermPtr& t : e->args) {
		n += term_size(t);
	}
	n += term_size(e->lhs) + term_size(e->rhs);
	for (const Expr& c : e->children) {
		n += expr_size(c);
	}
	if (e->rules) {
		n += ruleset_size(*e->rules);
	}
	return n;
}

std::size_t expr_depth(const Expr& e) {
	std::size_t d = 0;
	for (const Expr& c : e->children) {
		d = std::max(d, expr_depth(c));
	}
	if (e->rules) {
		for (const Rule& r : e->rules->rules) {
			d = std::max(d, expr_depth(r.body));
		}
	}
	return d + 1;
}

} // namespace soid
