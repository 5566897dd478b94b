#include "soid/parser.hpp"

#include "parser_impl.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace soid {

namespace detail {

namespace {

constexpr const char* kBool = "\U0001d539";

/// What the uses of a variable reveal about its type.
struct Usage {
	std::optional<int> pred_arity;
	std::optional<ArgType> position;
};

class UsageScan {
public:
	UsageScan(Symbol v, const std::function<const Type*(Symbol)>& lookup) : v_(v), lookup_(lookup) {}

	void expr(const Expr& e) {
		switch (e->kind) {
		case NodeKind::Atom: atom(e->pred, e->args); break;
		case NodeKind::Quant:
			if (e->var.name != v_) {
				expr(e->body());
			}
			break;
		case NodeKind::Aggregate:
			if (std::none_of(e->agg_vars.begin(), e->agg_vars.end(), [&](const TypedVar& t) { return t.name == v_; })) {
				expr(e->body());
			}
			break;
		case NodeKind::Definition: rules(*e->rules); break;
		case NodeKind::Let:
			if (!e->rules->defines(v_)) {
				rules(*e->rules);
				expr(e->body());
			}
			break;
		default:
			for (const Expr& c : e->children) {
				expr(c);
			}
		}
	}

	void rules(const RuleSet& d) {
		for (const Rule& r : d.rules) {
			rule(r);
		}
	}

	void rule(const Rule& r) {
		if (std::any_of(r.vars.begin(), r.vars.end(), [&](const TypedVar& t) { return t.name == v_; })) {
			return;
		}
		atom(r.head, r.head_args);
		expr(r.body);
	}

	const Usage& usage() const { return u_; }

private:
	void atom(Symbol pred, const std::vector<TermPtr>& args) {
		if (pred == v_ && !u_.pred_arity) {
			u_.pred_arity = static_cast<int>(args.size());
		}
		const Type* t = lookup_(pred);
		for (std::size_t k = 0; k < args.size(); ++k) {
			if (args[k]->kind != Term::Kind::Name || args[k]->name != v_) {
				continue;
			}
			if (t != nullptr && t->is_predicate() && k < t->args.size() && !u_.position) {
				u_.position = t->args[k];
			}
		}
	}

	Symbol v_;
	const std::function<const Type*(Symbol)>& lookup_;
	Usage u_;
};

std::optional<CompareOp> compare_op(const Token& t) {
	if (t.kind != Token::Kind::Punct) {
		return std::nullopt;
	}
	if (t.text == "=") return CompareOp::Eq;
	if (t.text == "~=") return CompareOp::Ne;
	if (t.text == "<") return CompareOp::Lt;
	if (t.text == ">") return CompareOp::Gt;
	if (t.text == "=<") return CompareOp::Le;
	if (t.text == ">=") return CompareOp::Ge;
	return std::nullopt;
}

bool is_reserved(const std::string& s) {
	return s == "true" || s == "false" || s == "let" || s == "in" || s == "sum";
}

} // namespace

SourceLoc loc_of(const Token& t) { return SourceLoc{t.line, t.column}; }

Parser::Parser(TokenStream& ts, const Vocabulary* vocab, Vocabulary* registry)
	: ts_(ts), vocab_(vocab), registry_(registry) {}

const Type* Parser::known_type(Symbol s) const {
	if (registry_ != nullptr) {
		if (const auto* e = registry_->find(s)) {
			return &e->type;
		}
	}
	if (vocab_ != nullptr) {
		if (const auto* e = vocab_->find(s)) {
			return &e->type;
		}
	}
	return nullptr;
}

bool Parser::is_bound(Symbol s) const { return std::find(scope_.begin(), scope_.end(), s) != scope_.end(); }

bool Parser::is_constant(Symbol s) const {
	const Type* t = known_type(s);
	return t != nullptr && t->is_element();
}

Type Parser::infer(Symbol v, const std::vector<const Expr*>& bodies, const std::vector<const Rule*>& extra) const {
	std::function<const Type*(Symbol)> lookup = [this](Symbol s) { return known_type(s); };
	UsageScan scan(v, lookup);
	for (const Expr* e : bodies) {
		scan.expr(*e);
	}
	for (const Rule* r : extra) {
		scan.rule(*r);
	}
	const Usage& u = scan.usage();
	if (u.pred_arity) {
		return Type::predicate(*u.pred_arity);
	}
	if (u.position) {
		return Type::of(*u.position);
	}
	return Type::element();
}

Expr Parser::formula() { return iff(); }

Expr Parser::iff() {
	const Token& start = ts_.peek();
	Expr lhs = implies();
	if (ts_.accept("<=>")) {
		Expr rhs = iff();
		return make_iff(std::move(lhs), std::move(rhs), loc_of(start));
	}
	return lhs;
}

Expr Parser::implies() {
	const Token& start = ts_.peek();
	Expr lhs = disjunction();
	if (ts_.accept("=>") || ts_.accept("->")) {
		Expr rhs = implies();
		return make_implies(std::move(lhs), std::move(rhs), loc_of(start));
	}
	return lhs;
}

Expr Parser::disjunction() {
	const Token& start = ts_.peek();
	std::vector<Expr> parts{conjunction()};
	while (ts_.accept("|")) {
		parts.push_back(conjunction());
	}
	return make_or(std::move(parts), loc_of(start));
}

Expr Parser::conjunction() {
	const Token& start = ts_.peek();
	std::vector<Expr> parts{unary()};
	while (ts_.accept("&")) {
		parts.push_back(unary());
	}
	return make_and(std::move(parts), loc_of(start));
}

Expr Parser::unary() {
	const Token& t = ts_.peek();
	if (ts_.accept("~")) {
		return make_not(unary(), loc_of(t));
	}
	if (t.is("!") || t.is("?") || t.is("!!") || t.is("??")) {
		return quantifier();
	}
	return primary();
}

Expr Parser::quantifier() {
	const Token q = ts_.next();
	const bool forall = q.text[0] == '!';
	const bool second_order = q.text.size() == 2;
	struct VarDecl {
		Symbol name;
		int arity; //!< -1: not given
		SourceLoc loc;
	};
	std::vector<VarDecl> vars;
	do {
		const Token& vt = ts_.peek();
		std::string name = ts_.expect_ident("a variable name");
		if (is_reserved(name)) {
			ts_.fail_at(vt, "'" + name + "' is reserved");
		}
		int arity = -1;
		if (ts_.accept("/")) {
			if (ts_.peek().kind != Token::Kind::Int) {
				ts_.fail("expected an arity");
			}
			arity = std::stoi(ts_.next().text);
			if (!second_order && !q.unicode) {
				ts_.fail_at(vt, "arity annotation on a first order variable; use '" + q.text + q.text + "'");
			}
		}
		vars.push_back({Symbol(name), arity, loc_of(vt)});
	} while (ts_.accept(","));
	ts_.expect(":");
	const std::size_t mark = scope_.size();
	for (const VarDecl& v : vars) {
		scope_.push_back(v.name);
	}
	Expr body = formula();
	scope_.resize(mark);
	for (std::size_t k = vars.size(); k-- > 0;) {
		const VarDecl& v = vars[k];
		Type type;
		if (v.arity >= 0) {
			type = Type::predicate(v.arity);
		} else if (second_order || q.unicode) {
			type = infer(v.name, {&body}, {});
			if (second_order && !type.is_predicate()) {
				throw ParseError("cannot infer the arity of second order variable '" + v.name.name() + "'", v.loc.line,
				                 v.loc.column);
			}
			if (type.is_predicate() && !type.is_first_order_predicate()) {
				throw ParseError("quantified variable '" + v.name.name() + "' would need a second order type",
				                 v.loc.line, v.loc.column);
			}
		} else {
			type = Type::element();
		}
		body = make_quant(forall ? Quantifier::Forall : Quantifier::Exists, TypedVar{v.name, type}, std::move(body),
		                  loc_of(q));
	}
	return body;
}

TermPtr Parser::term_primary() {
	const Token& t = ts_.peek();
	if (t.kind == Token::Kind::Int) {
		ts_.next();
		return Term::make_int(std::stoll(t.text));
	}
	if (t.is("-") && ts_.peek(1).kind == Token::Kind::Int) {
		ts_.next();
		return Term::make_int(-std::stoll(ts_.next().text));
	}
	if (t.kind == Token::Kind::Ident && !is_reserved(t.text)) {
		ts_.next();
		return Term::make_name(Symbol(t.text));
	}
	ts_.fail("expected a term but found " + describe(t));
}

TermPtr Parser::term() {
	TermPtr lhs = term_primary();
	while (ts_.peek().is("+") || ts_.peek().is("-")) {
		Term::Kind k = ts_.next().text == "+" ? Term::Kind::Add : Term::Kind::Sub;
		lhs = Term::make_binary(k, lhs, term_primary());
	}
	return lhs;
}

Expr Parser::aggregate(AggregateKind k, SourceLoc loc) {
	ts_.expect("{");
	std::vector<TypedVar> vars;
	do {
		vars.push_back(TypedVar{Symbol(ts_.expect_ident("an aggregate variable")), Type::element()});
	} while (ts_.accept(","));
	ts_.expect(":");
	const std::size_t mark = scope_.size();
	for (const TypedVar& v : vars) {
		scope_.push_back(v.name);
	}
	Expr body = formula();
	scope_.resize(mark);
	ts_.expect("}");
	Comparison cmp = Comparison::Eq;
	if (ts_.accept("=")) {
		cmp = Comparison::Eq;
	} else if (ts_.accept("<")) {
		cmp = Comparison::Lt;
	} else if (ts_.accept(">")) {
		cmp = Comparison::Gt;
	} else {
		ts_.fail("expected '=', '<' or '>' after an aggregate");
	}
	TermPtr bound = term();
	return make_aggregate(k, cmp, std::move(vars), std::move(body), std::move(bound), loc);
}

RuleSetPtr Parser::braced_rules() {
	ts_.expect("{");
	RuleSet rs = rule_items();
	ts_.expect("}");
	return std::make_shared<const RuleSet>(std::move(rs));
}

Expr Parser::primary() {
	const Token t = ts_.peek();
	const SourceLoc loc = loc_of(t);
	if (t.is("(")) {
		ts_.next();
		Expr e = formula();
		ts_.expect(")");
		return e;
	}
	if (t.is("{")) {
		return make_definition(braced_rules(), loc);
	}
	if (t.is("#")) {
		ts_.next();
		return aggregate(AggregateKind::Card, loc);
	}
	if (t.kind == Token::Kind::Ident) {
		if (t.text == "true") {
			ts_.next();
			return make_true(loc);
		}
		if (t.text == "false") {
			ts_.next();
			return make_false(loc);
		}
		if (t.text == "sum" && ts_.peek(1).is("{")) {
			ts_.next();
			return aggregate(AggregateKind::Sum, loc);
		}
		if (t.text == "let" && ts_.peek(1).is("{")) {
			ts_.next();
			RuleSetPtr rs = braced_rules();
			if (!ts_.accept_ident("in")) {
				ts_.fail("expected 'in' after a let block");
			}
			Expr body = formula();
			return make_let(std::move(rs), std::move(body), loc);
		}
		if (ts_.peek(1).is("(")) {
			if (is_reserved(t.text)) {
				ts_.fail("'" + t.text + "' is reserved");
			}
			ts_.next();
			ts_.next();
			std::vector<TermPtr> args;
			if (!ts_.accept(")")) {
				do {
					args.push_back(term());
				} while (ts_.accept(","));
				ts_.expect(")");
			}
			return make_atom(Symbol(t.text), std::move(args), loc);
		}
	}
	TermPtr lhs = term();
	if (auto op = compare_op(ts_.peek())) {
		ts_.next();
		TermPtr rhs = term();
		return make_compare(*op, std::move(lhs), std::move(rhs), loc);
	}
	if (lhs->kind == Term::Kind::Name) {
		return make_atom(lhs->name, {}, loc);
	}
	ts_.fail("expected a comparison operator after a term");
}

bool Parser::item_is_rule() const {
	int depth = 0;
	for (std::size_t k = 0;; ++k) {
		const Token& t = ts_.peek(k);
		if (t.kind == Token::Kind::End) {
			return false;
		}
		if (t.is("(") || t.is("{") || t.is("[")) {
			++depth;
		} else if (t.is(")") || t.is("}") || t.is("]")) {
			if (--depth < 0) {
				return false;
			}
		} else if (depth == 0 && t.is(".")) {
			return false;
		} else if (depth == 0 && t.is("<-")) {
			return true;
		}
	}
}

bool Parser::item_is_fact() const {
	const Token& t = ts_.peek();
	if (t.kind != Token::Kind::Ident || is_reserved(t.text)) {
		return false;
	}
	std::size_t k = 1;
	if (ts_.peek(1).is("(")) {
		int depth = 0;
		for (;; ++k) {
			const Token& u = ts_.peek(k);
			if (u.kind == Token::Kind::End) {
				return false;
			}
			if (u.is("(")) {
				++depth;
			} else if (u.is(")")) {
				if (--depth == 0) {
					++k;
					break;
				}
			} else if (u.is("{") || u.is("}")) {
				return false;
			}
		}
	}
	const Token& after = ts_.peek(k);
	return after.is(".") || after.is("}") || after.kind == Token::Kind::End;
}

Parser::PendingRule Parser::head(bool allow_annotations) {
	PendingRule p;
	const Token& h = ts_.peek();
	p.loc = loc_of(h);
	std::string name = ts_.expect_ident("a rule head");
	if (is_reserved(name)) {
		ts_.fail_at(h, "'" + name + "' is reserved");
	}
	p.head = Symbol(name);
	if (ts_.accept("(")) {
		if (!ts_.accept(")")) {
			do {
				const Token& at = ts_.peek();
				TermPtr a = term();
				int arity = -1;
				if (ts_.accept("/")) {
					if (!allow_annotations || ts_.peek().kind != Token::Kind::Int || a->kind != Term::Kind::Name) {
						ts_.fail("unexpected '/' in a rule head");
					}
					arity = std::stoi(ts_.next().text);
				}
				if (a->kind == Term::Kind::Name && !is_bound(a->name) && !is_constant(a->name)) {
					auto it = std::find(p.vars.begin(), p.vars.end(), a->name);
					if (it == p.vars.end()) {
						p.vars.push_back(a->name);
						p.annotated.push_back(arity);
					} else if (arity >= 0) {
						ts_.fail_at(at, "repeated arity annotation");
					}
				} else if (arity >= 0) {
					ts_.fail_at(at, "arity annotation on a bound name");
				}
				p.args.push_back(std::move(a));
			} while (ts_.accept(","));
			ts_.expect(")");
		}
	}
	return p;
}

Rule Parser::finish(PendingRule&& p) {
	Rule r;
	r.head = p.head;
	r.head_args = std::move(p.args);
	r.loc = p.loc;
	if (p.body.empty()) {
		r.body = make_true(p.loc);
	} else {
		const SourceLoc body_loc = p.body.size() > 1 ? p.loc : p.body[0]->loc;
		r.body = make_and(std::move(p.body), body_loc);
	}
	const Type* declared = known_type(p.head);
	for (std::size_t k = 0; k < p.vars.size(); ++k) {
		Symbol v = p.vars[k];
		Type type;
		if (p.annotated[k] >= 0) {
			type = Type::predicate(p.annotated[k]);
		} else {
			std::optional<Type> from_head;
			if (declared != nullptr && declared->is_predicate()) {
				for (std::size_t a = 0; a < r.head_args.size() && a < declared->args.size(); ++a) {
					if (r.head_args[a]->kind == Term::Kind::Name && r.head_args[a]->name == v) {
						from_head = Type::of(declared->args[a]);
						break;
					}
				}
			}
			type = from_head ? *from_head : infer(v, {&r.body}, {});
		}
		if (type.is_predicate() && !type.is_first_order_predicate()) {
			throw ParseError("rule variable '" + v.name() + "' would need a second order type", p.loc.line, p.loc.column);
		}
		r.vars.push_back(TypedVar{v, type});
	}
	if (registry_ != nullptr && known_type(r.head) == nullptr && !is_bound(r.head)) {
		Type ht = head_type(r);
		if (!ht.is_first_order_predicate()) {
			registry_->add(r.head, ht);
		}
	}
	return r;
}

RuleSet Parser::rule_items() {
	RuleSet out;
	std::optional<PendingRule> pending;
	auto flush = [&]() {
		if (pending) {
			out.rules.push_back(finish(std::move(*pending)));
			pending.reset();
		}
	};
	while (!ts_.at_end() && !ts_.peek().is("}")) {
		if (item_is_rule()) {
			flush();
			PendingRule p = head(true);
			ts_.expect("<-");
			const std::size_t mark = scope_.size();
			scope_.insert(scope_.end(), p.vars.begin(), p.vars.end());
			p.body.push_back(formula());
			scope_.resize(mark);
			pending = std::move(p);
		} else if (item_is_fact()) {
			flush();
			pending = head(true);
		} else {
			if (!pending) {
				ts_.fail("expected a rule but found " + describe(ts_.peek()));
			}
			const std::size_t mark = scope_.size();
			scope_.insert(scope_.end(), pending->vars.begin(), pending->vars.end());
			Expr conj = formula();
			scope_.resize(mark);
			if (pending->body.empty()) {
				pending->body.push_back(make_true(pending->loc));
			}
			if (pending->body.size() == 1 && pending->body[0]->kind == NodeKind::And) {
				std::vector<Expr> flat = pending->body[0]->children;
				pending->body = std::move(flat);
			}
			pending->body.push_back(std::move(conj));
		}
		if (!ts_.accept(".")) {
			if (!ts_.peek().is("}") && !ts_.at_end()) {
				ts_.fail("expected '.' or '}' after a rule but found " + describe(ts_.peek()));
			}
		}
	}
	flush();
	return out;
}

Type Parser::parse_type() {
	auto arg_type = [&]() -> ArgType {
		const Token& t = ts_.peek();
		if (t.is("δ") || t.is_ident("elem") || t.is_ident("const")) {
			ts_.next();
			return ArgType::element();
		}
		if (t.is(kBool) || t.is_ident("bool")) {
			ts_.next();
			return ArgType::boolean();
		}
		if (t.is_ident("pred")) {
			ts_.next();
			ts_.expect("/");
			if (ts_.peek().kind != Token::Kind::Int) {
				ts_.fail("expected an arity");
			}
			return ArgType::relation(std::stoi(ts_.next().text));
		}
		if (ts_.accept("(")) {
			int n = 0;
			while (!ts_.peek().is(")")) {
				const Token& u = ts_.next();
				if (u.is("δ")) {
					++n;
				} else if (u.is("²")) {
					n += 1;
				} else if (u.is("³")) {
					n += 2;
				} else if (u.is("⁴")) {
					n += 3;
				} else if (u.is("^") && ts_.peek().kind == Token::Kind::Int) {
					n += std::stoi(ts_.next().text) - 1;
				} else if (u.is("->")) {
					if (!ts_.accept(kBool) && !ts_.accept_ident("bool")) {
						ts_.fail("expected the boolean type after '->'");
					}
				} else if (!u.is(",") && !u.is("*") && !u.is("x")) {
					ts_.fail_at(u, "unexpected " + describe(u) + " in a relation type");
				}
			}
			ts_.expect(")");
			return ArgType::relation(n);
		}
		ts_.fail("expected an argument type but found " + describe(t));
	};
	const Token& t = ts_.peek();
	if (t.is_ident("const") || t.is_ident("elem") || t.is("δ")) {
		ts_.next();
		return Type::element();
	}
	if (t.is_ident("bool") || t.is(kBool)) {
		ts_.next();
		return Type::boolean();
	}
	if (t.is_ident("pred")) {
		ts_.next();
		ts_.expect("/");
		if (ts_.peek().kind != Token::Kind::Int) {
			ts_.fail("expected an arity");
		}
		return Type::predicate(std::stoi(ts_.next().text));
	}
	if (t.is_ident("so") && ts_.peek(1).is("-") && ts_.peek(2).is_ident("pred")) {
		ts_.next();
		ts_.next();
		ts_.next();
	} else if (!t.is("(")) {
		ts_.fail("expected a type but found " + describe(t));
	}
	ts_.expect("(");
	std::vector<ArgType> args;
	if (!ts_.accept(")")) {
		do {
			args.push_back(arg_type());
		} while (ts_.accept(","));
		ts_.expect(")");
	}
	return Type::predicate(std::move(args));
}

} // namespace detail

Expr parse_formula(std::string_view text, const Vocabulary* vocab) {
	detail::TokenStream ts(detail::tokenize(text));
	Vocabulary registry;
	detail::Parser p(ts, vocab, &registry);
	Expr e = p.formula();
	ts.accept(".");
	if (!ts.at_end()) {
		ts.fail("unexpected " + detail::describe(ts.peek()) + " after the formula");
	}
	return e;
}

RuleSet parse_rules(std::string_view text, const Vocabulary* vocab) {
	detail::TokenStream ts(detail::tokenize(text));
	Vocabulary registry;
	detail::Parser p(ts, vocab, &registry);
	const bool braced = ts.peek().is("{") && [&] {
		// a leading '{' opens the rule set only if its match ends the input
		int depth = 0;
		for (std::size_t k = 0;; ++k) {
			const detail::Token& t = ts.peek(k);
			if (t.kind == detail::Token::Kind::End) {
				return false;
			}
			if (t.is("{")) {
				++depth;
			} else if (t.is("}") && --depth == 0) {
				return ts.peek(k + 1).kind == detail::Token::Kind::End ||
				       (ts.peek(k + 1).is(".") && ts.peek(k + 2).kind == detail::Token::Kind::End);
			}
		}
	}();
	if (braced) {
		ts.next();
	}
	RuleSet rs = p.rule_items();
	if (braced) {
		ts.expect("}");
		ts.accept(".");
	}
	if (!ts.at_end()) {
		ts.fail("unexpected " + detail::describe(ts.peek()) + " after the rules");
	}
	return rs;
}

} // namespace soid
