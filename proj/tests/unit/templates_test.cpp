#include "soid/analysis.hpp"
#include "soid/definitions.hpp"
#include "soid/errors.hpp"
#include "soid/evaluator.hpp"
#include "soid/parser.hpp"
#include "soid/structure_io.hpp"
#include "soid/templates.hpp"

#include <doctest.h>

#include <algorithm>

using namespace soid;

namespace {

Template tpl(const char* name, const char* rules, const Vocabulary* v = nullptr) {
	return Template{name, std::make_shared<RuleSet>(parse_rules(rules, v))};
}

const char* const kEq =
	"{isEqRelation(F) <- (!a: F(a, a)) & (!a, b: F(a, b) <=> F(b, a)) & (!a, b, c: (F(a, b) & F(b, c)) => F(a, c)).}";
const char* const kTc = "{tc(P, Q) <- {Q(x, y) <- P(x, y) | (?z: Q(x, z) & Q(z, y)).}.}";
const char* const kRange = "{range(P, a, b) <- {P(a). P(x) <- a < b & (??Q/1: range(Q, a + 1, b) & Q(x)).}.}";
const char* const kGame =
	"{win(cur, Move, IsWon) <- IsWon(cur) | (?nxt: Move(cur, nxt) & lose(nxt, Move, IsWon))."
	" lose(cur, Move, IsWon) <- ~IsWon(cur) & (!nxt: Move(cur, nxt) => win(nxt, Move, IsWon)).}";

std::vector<DomainPtr> test_domains() { return {Domain::make({"d1"}), Domain::make({"d1", "d2"})}; }

bool has_issue(const LibraryReport& r, LibraryIssue::Kind k) {
	return std::any_of(r.issues.begin(), r.issues.end(), [&](const LibraryIssue& i) { return i.kind == k; });
}

std::vector<std::string> names(const std::vector<Symbol>& v) {
	std::vector<std::string> out;
	for (Symbol s : v) {
		out.push_back(s.name());
	}
	return out;
}

TV eval_with(const TemplateLibrary& l, const Interpretation& i, const char* formula) {
	Interpretation full = apply_library(i, l);
	Vocabulary v = full.vocabulary();
	return eval(parse_formula(formula, &v), full, EvalMode::Kleene);
}

} // namespace

TEST_SUITE("templates") {

TEST_CASE("a valid library") {
	TemplateLibrary l = make_library({tpl("eq", kEq), tpl("tc", kTc), tpl("game", kGame)});
	CHECK(names(l.template_symbols()) == std::vector<std::string>{"isEqRelation", "lose", "tc", "win"});
	CHECK(l.is_template_symbol(Symbol("win")));
	REQUIRE(l.defining(Symbol("lose")) != nullptr);
	CHECK(l.defining(Symbol("lose"))->name == "game");
	CHECK(l.defining(Symbol("edge")) == nullptr);
	LibraryReport r = validate_library(l, test_domains());
	CHECK(r.valid);
	CHECK(r.issues.empty());
	CHECK(r.order.size() == 4);
	CHECK(r.contexts_checked > 0);
}

TEST_CASE("library issues") {
	auto doms = test_domains();
	LibraryReport dup = validate_library(make_library({tpl("a", kTc), tpl("b", kTc)}), doms);
	CHECK_FALSE(dup.valid);
	CHECK(has_issue(dup, LibraryIssue::Kind::DuplicateDefinition));

	LibraryReport foreign = validate_library(make_library({tpl("f", "{reach(P) <- !x, y: edge(x, y) => P(x, y).}")}), doms);
	CHECK_FALSE(foreign.valid);
	CHECK(has_issue(foreign, LibraryIssue::Kind::ForeignSymbol));

	TemplateLibrary cycle = make_library({tpl("a", "{above(P) <- below(P).}"), tpl("b", "{below(P) <- ~above(P).}")});
	LibraryReport c = validate_library(cycle, doms);
	CHECK_FALSE(c.valid);
	CHECK(has_issue(c, LibraryIssue::Kind::Cycle));
	CHECK_THROWS_AS(stratify(cycle), InputError);

	LibraryReport liar = validate_library(make_library({tpl("liar", "{bad(P) <- ~bad(P) & (?x: P(x)).}")}), doms);
	CHECK_FALSE(liar.valid);
	CHECK(has_issue(liar, LibraryIssue::Kind::NotTotal));
	CHECK(to_string(LibraryIssue::Kind::NotTotal) == "not-total");
}

TEST_CASE("stratification puts used templates first") {
	TemplateLibrary l = make_library({tpl("outer", "{sym(F) <- isEqRelation(F) | (!a, b: F(a, b) => F(b, a)).}"),
	                                  tpl("eq", kEq)});
	auto order = names(stratify(l));
	REQUIRE(order.size() == 2);
	CHECK(order[0] == "isEqRelation");
	CHECK(order[1] == "sym");
}

TEST_CASE("apply_library on the range template") {
	TemplateLibrary l = make_library({tpl("range", kRange)});
	Interpretation i = read_structure("domain = 1..3\n");
	CHECK(eval_with(l, i, "!!P/1: range(P, 1, 3) <=> (!x: P(x))") == TV::T);
	CHECK(eval_with(l, i, "!!P/1: range(P, 2, 2) <=> (!x: P(x) <=> x = 2)") == TV::T);
	CHECK(eval_with(l, i, "!!P/1: range(P, 2, 3) <=> (!x: P(x) <=> x > 1)") == TV::T);
	Interpretation full = apply_library(i, l);
	CHECK(full.table(Symbol("range")).is_exact());
}

TEST_CASE("apply_library on the transitive closure template") {
	TemplateLibrary l = make_library({tpl("tc", kTc)});
	Interpretation i = read_structure("domain = {a, b, c}\nedge = {(a,b): t, (b,c): t, *: f}\n");
	Limits limits;
	limits.max_relation_cells = 9;
	Interpretation full = apply_library(i, l, limits);
	Vocabulary v = full.vocabulary();
	CHECK(eval(parse_formula("??R/2: tc(edge, R) & R(a, c) & ~R(c, a)", &v), full, EvalMode::Kleene) == TV::T);
	CHECK(eval(parse_formula("!!R/2: tc(edge, R) => ~R(b, a)", &v), full, EvalMode::Kleene) == TV::T);
}

TEST_CASE("apply_library refuses interpreted template symbols") {
	TemplateLibrary l = make_library({tpl("range", kRange)});
	Interpretation i = apply_library(read_structure("domain = 1..2\n"), l);
	CHECK_THROWS_AS(apply_library(i, l), InputError);
}

TEST_CASE("templify") {
	RuleSet d = parse_rules("{q(x) <- p(x) | (?y: e(x, y) & q(y)).}");
	Vocabulary sigma;
	sigma.add(Symbol("p"), Type::predicate(1));
	sigma.add(Symbol("e"), Type::predicate(2));
	sigma.add(Symbol("q"), Type::predicate(1));
	auto open = open_symbols(d, sigma);
	CHECK(names(open) == std::vector<std::string>{"e", "p"});
	Templified t = templify(d, open, sigma);
	CHECK(unparse(t.rules) == "{q'(x, e/2, p/1) <- p(x) | (?y: e(x, y) & q'(y, e, p)).}");
	REQUIRE(t.renamed.size() == 1);
	CHECK(t.renamed[0].second.name() == "q'");
	CHECK(to_string(t.vocab.type(Symbol("q'"))) == "so-pred(elem, pred/2, pred/1)");
	CHECK(parameters(t.rules).empty());

	Templified same = templify(d, {}, sigma);
	CHECK(equal(same.rules, d));

	Vocabulary so = sigma;
	so.add(Symbol("tc"), Type::predicate({ArgType::relation(2), ArgType::relation(2)}));
	CHECK_THROWS_AS(templify(parse_rules("{q(x) <- tc(e, e) & p(x).}"), {Symbol("tc")}, so), InputError);
}

TEST_CASE("templified definitions correspond to the original") {
	RuleSet d = parse_rules("{q(x) <- p(x) | (?y: e(x, y) & q(y)).}");
	Vocabulary sigma;
	sigma.add(Symbol("p"), Type::predicate(1));
	sigma.add(Symbol("e"), Type::predicate(2));
	Templified t = templify(d, {Symbol("e"), Symbol("p")}, sigma);
	Interpretation ctx = read_structure("domain = {a, b}\np = {(b): t, *: f}\ne = {(a,b): t, *: f}\n");
	auto wfm = well_founded_model(d, ctx);
	auto wfm_t = well_founded_model(t.rules, ctx);
	REQUIRE(wfm);
	REQUIRE(wfm_t);
	CHECK(check_correspondence(d, t, *wfm, *wfm_t));
	Interpretation wrong = revise(*wfm, std::vector<DomainAtom>{DomainAtom{Symbol("q"), {0}}}, TV::F);
	CHECK_FALSE(check_correspondence(d, t, wrong, *wfm_t));
}

TEST_CASE("simple templates") {
	Vocabulary none;
	CHECK(is_simple_template(tpl("eq", kEq), none));
	CHECK_FALSE(is_simple_template(tpl("game", kGame), none));
	CHECK_FALSE(is_simple_template(tpl("range", kRange), none));
	CHECK_FALSE(is_simple_template(tpl("dup", "{d(F, F) <- true.}"), none));
}

TEST_CASE("macro expansion") {
	TemplateLibrary l = make_library({tpl("eq", kEq)});
	Expr phi = parse_formula("isEqRelation(P) & isEqRelation(Q)", &l.vocab);
	Expr out = macro_expand(phi, l);
	for (Symbol s : free_symbols(out)) {
		CHECK_FALSE(l.is_template_symbol(s));
	}
	CHECK(free_symbols(out).size() == 2);

	Expr plain = parse_formula("!x: p(x) | q(x)");
	CHECK(equal(macro_expand(plain, l), plain));

	TemplateLibrary nested =
		make_library({tpl("eq", kEq), tpl("both", "{both(F, G) <- isEqRelation(F) & isEqRelation(G).}", &l.vocab)});
	Expr two = macro_expand(parse_formula("both(P, Q)", &nested.vocab), nested);
	for (Symbol s : free_symbols(two)) {
		CHECK_FALSE(nested.is_template_symbol(s));
	}
	CHECK(expr_size(two) == expr_size(out));

	TemplateLibrary game = make_library({tpl("game", kGame)});
	Vocabulary gv = game.vocab;
	gv.add(Symbol("move"), Type::predicate(2));
	gv.add(Symbol("won"), Type::predicate(1));
	CHECK_THROWS_AS(macro_expand(parse_formula("win(c, move, won)", &gv), game), InputError);
}

TEST_CASE("second order elimination") {
	Vocabulary sigma;
	Skolemized s = eliminate_so(parse_formula("!x: ??P/1: P(x)"), sigma);
	CHECK(unparse(s.formula) == "!x: P_1(x, x)");
	REQUIRE(s.replaced.size() == 1);
	CHECK(s.replaced[0].first.name() == "P");
	CHECK(to_string(s.added.type(Symbol("P_1"))) == "pred/2");

	Skolemized top = eliminate_so(parse_formula("??P/1: P(a)"), sigma);
	CHECK(unparse(top.formula) == "P_1(a)");

	Skolemized neg = eliminate_so(parse_formula("~(!!P/1: P(a))"), sigma);
	CHECK(unparse(neg.formula) == "~P_1(a)");

	CHECK_THROWS_AS(eliminate_so(parse_formula("!!P/1: P(a)"), sigma), InputError);
	CHECK_THROWS_AS(eliminate_so(parse_formula("~(??P/1: P(a))"), sigma), InputError);
	CHECK_THROWS_AS(eliminate_so(parse_formula("(??P/1: P(a)) <=> q"), sigma), InputError);
}

TEST_CASE("fresh names are deterministic") {
	NameGenerator a;
	NameGenerator b;
	a.reserve(Symbol("x_1"));
	b.reserve(Symbol("x_1"));
	CHECK(a.fresh("x").name() == "x_2");
	CHECK(a.fresh("x").name() == "x_3");
	CHECK(a.fresh("x_3").name() == "x_4");
	CHECK(b.fresh("x").name() == "x_2");
	CHECK(a.fresh("y").name() == "y_1");
}

TEST_CASE("equivalence checking") {
	Vocabulary sigma;
	sigma.add(Symbol("e"), Type::predicate(2));
	Expr phi = parse_formula("!x: ??P/1: P(x) & (!y: P(y) => e(x, y))", &sigma);
	Skolemized s = eliminate_so(phi, sigma);
	EquivalenceReport ok = check_sigma_equivalence(phi, nullptr, s.formula, s.added, sigma, test_domains());
	CHECK(ok.equivalent);
	CHECK(ok.structures == 2 + 16);
	Expr reflexive = parse_formula("!x: e(x, x)", &sigma);
	CHECK(check_sigma_equivalence(phi, nullptr, reflexive, {}, sigma, test_domains()).equivalent);
	Expr weaker = parse_formula("?x: e(x, x)", &sigma);
	EquivalenceReport no = check_sigma_equivalence(phi, nullptr, weaker, {}, sigma, test_domains());
	CHECK_FALSE(no.equivalent);
	CHECK_FALSE(no.counterexample.empty());
}

TEST_CASE("structure enumeration") {
	Vocabulary v;
	v.add(Symbol("p"), Type::predicate(1));
	Interpretation base(Domain::make({"a", "b"}));
	std::size_t n = 0;
	for_each_structure(base, v, [&](const Interpretation& i) {
		CHECK(i.is_exact());
		++n;
		return true;
	});
	CHECK(n == 4);
	v.add(Symbol("c"), Type::element());
	n = 0;
	for_each_structure(base, v, [&](const Interpretation&) { return ++n < 5; });
	CHECK(n == 5);
	Limits small;
	small.max_mx_atoms = 1;
	CHECK_THROWS_AS(for_each_structure(base, v, [](const Interpretation&) { return true; }, small), CapExceeded);
}

}
