#include "soid/parser.hpp"

namespace soid {

namespace {

bool needs_parens(const Expr& e) {
	switch (e->kind) {
	case NodeKind::And:
	case NodeKind::Or:
	case NodeKind::Implies:
	case NodeKind::Iff:
	case NodeKind::Quant:
	case NodeKind::Let: return true;
	default: return false;
	}
}

std::string operand(const Expr& e) {
	std::string s = unparse(e);
	return needs_parens(e) ? "(" + s + ")" : s;
}

const char* cmp_text(CompareOp op) {
	switch (op) {
	case CompareOp::Eq: return "=";
	case CompareOp::Ne: return "~=";
	case CompareOp::Lt: return "<";
	case CompareOp::Gt: return ">";
	case CompareOp::Le: return "=<";
	case CompareOp::Ge: return ">=";
	}
	return "=";
}

const char* agg_cmp_text(Comparison c) {
	switch (c) {
	case Comparison::Eq: return "=";
	case Comparison::Lt: return "<";
	case Comparison::Gt: return ">";
	}
	return "=";
}

std::string var_list(const std::vector<TypedVar>& vars) {
	std::string s;
	for (std::size_t k = 0; k < vars.size(); ++k) {
		if (k > 0) {
			s += ", ";
		}
		s += vars[k].name.name();
	}
	return s;
}

} // namespace

std::string unparse(const TermPtr& t) {
	switch (t->kind) {
	case Term::Kind::Name: return t->name.name();
	case Term::Kind::Int: return std::to_string(t->value);
	case Term::Kind::Add: return unparse(t->lhs) + "+" + unparse(t->rhs);
	case Term::Kind::Sub: return unparse(t->lhs) + "-" + unparse(t->rhs);
	}
	return "";
}

std::string unparse_rule(const Rule& r) {
	std::string s = r.head.name();
	if (!r.head_args.empty()) {
		s += "(";
		std::vector<bool> printed(r.vars.size(), false);
		for (std::size_t k = 0; k < r.head_args.size(); ++k) {
			if (k > 0) {
				s += ", ";
			}
			s += unparse(r.head_args[k]);
			if (r.head_args[k]->kind != Term::Kind::Name) {
				continue;
			}
			for (std::size_t v = 0; v < r.vars.size(); ++v) {
				if (r.vars[v].name == r.head_args[k]->name && !printed[v]) {
					printed[v] = true;
					if (r.vars[v].type.is_predicate()) {
						s += "/" + std::to_string(r.vars[v].type.arity());
					}
				}
			}
		}
		s += ")";
	}
	if (r.body->kind == NodeKind::True) {
		return s;
	}
	return s + " <- " + unparse(r.body);
}

std::string unparse(const RuleSet& d) {
	std::string s = "{";
	for (std::size_t k = 0; k < d.rules.size(); ++k) {
		if (k > 0) {
			s += " ";
		}
		s += unparse_rule(d.rules[k]) + ".";
	}
	return s + "}";
}

std::string unparse_rules_body(const RuleSet& d, const std::string& indent) {
	std::string s;
	for (const Rule& r : d.rules) {
		s += indent + unparse_rule(r) + ".\n";
	}
	return s;
}

std::string unparse(const Expr& e) {
	switch (e->kind) {
	case NodeKind::True: return "true";
	case NodeKind::False: return "false";
	case NodeKind::Atom: {
		std::string s = e->pred.name();
		if (e->args.empty()) {
			return s;
		}
		s += "(";
		for (std::size_t k = 0; k < e->args.size(); ++k) {
			if (k > 0) {
				s += ", ";
			}
			s += unparse(e->args[k]);
		}
		return s + ")";
	}
	case NodeKind::Compare: return unparse(e->lhs) + " " + cmp_text(e->cmp) + " " + unparse(e->rhs);
	case NodeKind::Not: return "~" + operand(e->body());
	case NodeKind::And:
	case NodeKind::Or: {
		const char* op = e->kind == NodeKind::And ? " & " : " | ";
		std::string s;
		for (std::size_t k = 0; k < e->children.size(); ++k) {
			if (k > 0) {
				s += op;
			}
			s += operand(e->children[k]);
		}
		return s;
	}
	case NodeKind::Implies: return operand(e->children[0]) + " => " + operand(e->children[1]);
	case NodeKind::Iff: return operand(e->children[0]) + " <=> " + operand(e->children[1]);
	case NodeKind::Quant: {
		std::string q = e->quant == Quantifier::Forall ? "!" : "?";
		if (e->var.type.is_predicate()) {
			return q + q + e->var.name.name() + "/" + std::to_string(e->var.type.arity()) + ": " + unparse(e->body());
		}
		return q + e->var.name.name() + ": " + unparse(e->body());
	}
	case NodeKind::Aggregate: {
		std::string s = e->agg == AggregateKind::Card ? "#{" : "sum{";
		s += var_list(e->agg_vars) + ": " + unparse(e->body()) + "} " + agg_cmp_text(e->agg_cmp) + " " + unparse(e->rhs);
		return s;
	}
	case NodeKind::Definition: return unparse(*e->rules);
	case NodeKind::Let: return "let " + unparse(*e->rules) + " in " + unparse(e->body());
	}
	return "";
}

} // namespace soid
