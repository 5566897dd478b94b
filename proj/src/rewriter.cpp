#include "rewriter.hpp"

namespace soid::detail {

const Rewriter::Entry* Rewriter::lookup(Symbol s) const {
	for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
		if (it->from == s) {
			return &*it;
		}
	}
	return nullptr;
}

Symbol Rewriter::push(Symbol s, int tag) {
	Symbol to = rename_binder(s).value_or(s);
	scope_.push_back({s, to, tag});
	return to;
}

Expr Rewriter::free_atom(const Node& n, std::vector<TermPtr> args) { return make_atom(n.pred, std::move(args), n.loc); }

Expr Rewriter::bound_atom(const Entry& b, const Node& n, std::vector<TermPtr> args) {
	return make_atom(b.to, std::move(args), n.loc);
}

TermPtr Rewriter::bound_name(const Entry& b, const TermPtr& t) {
	return b.to == t->name ? t : Term::make_name(b.to);
}

Rule Rewriter::free_head(const Rule&, Rule built) { return built; }

TermPtr Rewriter::term(const TermPtr& t) {
	switch (t->kind) {
	case Term::Kind::Name: {
		if (const Entry* b = lookup(t->name)) {
			return bound_name(*b, t);
		}
		return free_name(t);
	}
	case Term::Kind::Int: return t;
	default: {
		TermPtr a = term(t->lhs);
		TermPtr b = term(t->rhs);
		if (a == t->lhs && b == t->rhs) {
			return t;
		}
		return Term::make_binary(t->kind, std::move(a), std::move(b));
	}
	}
}

RuleSetPtr Rewriter::rules(const RuleSet& d) {
	auto out = std::make_shared<RuleSet>();
	for (const Rule& r : d.rules) {
		const std::size_t m = mark();
		Rule nr;
		nr.loc = r.loc;
		for (const TypedVar& v : r.vars) {
			nr.vars.push_back({push(v.name), v.type});
		}
		for (const TermPtr& t : r.head_args) {
			nr.head_args.push_back(term(t));
		}
		nr.body = expr(r.body);
		pop_to(m);
		if (const Entry* b = lookup(r.head)) {
			nr.head = b->to;
			out->rules.push_back(std::move(nr));
		} else {
			nr.head = r.head;
			out->rules.push_back(free_head(r, std::move(nr)));
		}
	}
	return out;
}

Expr Rewriter::rebuild(const Expr& e) {
	const Node& n = *e;
	switch (n.kind) {
	case NodeKind::True:
	case NodeKind::False: return e;
	case NodeKind::Atom: {
		std::vector<TermPtr> args;
		args.reserve(n.args.size());
		for (const TermPtr& t : n.args) {
			args.push_back(term(t));
		}
		if (const Entry* b = lookup(n.pred)) {
			return bound_atom(*b, n, std::move(args));
		}
		return free_atom(n, std::move(args));
	}
	case NodeKind::Compare: return make_compare(n.cmp, term(n.lhs), term(n.rhs), n.loc);
	case NodeKind::Not: return make_not(expr(n.body()), n.loc);
	case NodeKind::And:
	case NodeKind::Or: {
		std::vector<Expr> cs;
		cs.reserve(n.children.size());
		for (const Expr& c : n.children) {
			cs.push_back(expr(c));
		}
		return make_nary(n.kind, std::move(cs), n.loc);
	}
	case NodeKind::Implies: {
		Expr a = expr(n.children[0]);
		return make_implies(std::move(a), expr(n.children[1]), n.loc);
	}
	case NodeKind::Iff: {
		Expr a = expr(n.children[0]);
		return make_iff(std::move(a), expr(n.children[1]), n.loc);
	}
	case NodeKind::Quant: {
		const std::size_t m = mark();
		TypedVar v{push(n.var.name), n.var.type};
		Expr body = expr(n.body());
		pop_to(m);
		return make_quant(n.quant, std::move(v), std::move(body), n.loc);
	}
	case NodeKind::Aggregate: {
		TermPtr bound = term(n.rhs);
		const std::size_t m = mark();
		std::vector<TypedVar> vars;
		for (const TypedVar& v : n.agg_vars) {
			vars.push_back({push(v.name), v.type});
		}
		Expr body = expr(n.body());
		pop_to(m);
		return make_aggregate(n.agg, n.agg_cmp, std::move(vars), std::move(body), std::move(bound), n.loc);
	}
	case NodeKind::Definition: return make_definition(rules(*n.rules), n.loc);
	case NodeKind::Let: {
		const std::size_t m = mark();
		for (Symbol s : n.rules->defined()) {
			push(s);
		}
		RuleSetPtr d = rules(*n.rules);
		Expr body = expr(n.body());
		pop_to(m);
		return make_let(std::move(d), std::move(body), n.loc);
	}
	}
	return e;
}

} // namespace soid::detail
