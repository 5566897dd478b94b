#include "soid/errors.hpp"
#include "soid/evaluator.hpp"
#include "soid/parser.hpp"
#include "soid/structure_io.hpp"

#include <doctest.h>

using namespace soid;

namespace {

TV kleene(const char* formula, const Interpretation& i, const Limits& limits = {}) {
	Vocabulary v = i.vocabulary();
	return eval(parse_formula(formula, &v), i, EvalMode::Kleene, limits);
}

TV super(const char* formula, const Interpretation& i, const Limits& limits = {}) {
	Vocabulary v = i.vocabulary();
	return eval(parse_formula(formula, &v), i, EvalMode::Supervaluation, limits);
}

TV exact(const char* formula, const Interpretation& i) {
	Vocabulary v = i.vocabulary();
	return eval_exact(parse_formula(formula, &v), i);
}

Interpretation contrast() { return read_structure("domain = {a}\np = u\nq = u\n"); }

Interpretation partial_p() { return read_structure("domain = {a, b}\np = {(a): t, (b): u}\n"); }

} // namespace

TEST_SUITE("evaluator") {

TEST_CASE("kleene and supervaluation differ on tautologies") {
	Interpretation i = contrast();
	CHECK(kleene("p | ~p", i) == TV::U);
	CHECK(super("p | ~p", i) == TV::T);
	CHECK(kleene("p & ~p", i) == TV::U);
	CHECK(super("p & ~p", i) == TV::F);
	CHECK(kleene("p | q", i) == TV::U);
	CHECK(super("p | q", i) == TV::U);
	CHECK(super("p => p", i) == TV::T);
	CHECK(kleene("p <=> p", i) == TV::U);
}

TEST_CASE("first order quantifiers") {
	Interpretation i = partial_p();
	CHECK(kleene("?x: p(x)", i) == TV::T);
	CHECK(kleene("!x: p(x)", i) == TV::U);
	CHECK(kleene("!x: p(x) | ~p(x)", i) == TV::U);
	CHECK(super("!x: p(x) | ~p(x)", i) == TV::T);
	CHECK(kleene("?x: ~p(x) & p(x)", i) == TV::U);
	CHECK(super("?x: ~p(x) & p(x)", i) == TV::F);
}

TEST_CASE("aggregates") {
	Interpretation i = partial_p();
	CHECK(kleene("#{x: p(x)} > 0", i) == TV::T);
	CHECK(kleene("#{x: p(x)} = 1", i) == TV::U);
	CHECK(kleene("#{x: p(x)} > 2", i) == TV::F);
	CHECK(kleene("#{x, y: p(x) & p(y)} = 4", i) == TV::U);
	CHECK(super("#{x: p(x)} < 3", i) == TV::T);
}

TEST_CASE("second order quantifiers") {
	Interpretation i = read_structure("domain = {a, b}\nc = a\n");
	CHECK(kleene("??P/1: P(a) & ~P(b)", i) == TV::T);
	CHECK(kleene("!!P/1: P(c) | ~P(c)", i) == TV::T);
	CHECK(kleene("!!P/1: P(c)", i) == TV::F);
	CHECK(kleene("??P/2: (!x: P(x, x)) & ~P(a, b)", i) == TV::T);
	CHECK(kleene("!!P/1: ??Q/1: !x: Q(x) <=> ~P(x)", i) == TV::T);
}

TEST_CASE("second order quantifiers over partial context") {
	Interpretation i = partial_p();
	CHECK(kleene("??P/1: !x: P(x) <=> p(x)", i) == TV::U);
	CHECK(super("??P/1: !x: P(x) <=> p(x)", i) == TV::T);
	CHECK(kleene("!!P/1: ?x: P(x) & p(x)", i) == TV::F);
	CHECK(kleene("??P/1: (!x: ~P(x)) & p(b)", i) == TV::U);
}

TEST_CASE("integer terms") {
	Interpretation i = read_structure("domain = 1..3\n");
	CHECK(kleene("?x: x + 1 = 3", i) == TV::T);
	CHECK(kleene("!x: x + 1 > x", i) == TV::T);
	Interpretation p = read_structure("domain = 1..3\np = {(1): t, *: t}\n");
	CHECK(kleene("!x: p(x + 1)", p) == TV::F); // 3+1 is not an element
	CHECK(kleene("!x: x < 3 => p(x + 1)", p) == TV::T);
	CHECK(kleene("#{x: x > 1} = 2", i) == TV::T);
	CHECK(kleene("sum{x: x > 1} = 5", i) == TV::T);
	CHECK(kleene("2 - 1 = 1", i) == TV::T);
}

TEST_CASE("definitions as formulas") {
	Interpretation good = read_structure("domain = {a, b}\np = {(a): t, *: f}\nq = {(a): t, *: f}\n");
	Interpretation bad = read_structure("domain = {a, b}\np = {(a): t, *: f}\nq = {(a): t, (b): t}\n");
	CHECK(exact("{q(x) <- p(x).}", good) == TV::T);
	CHECK(exact("{q(x) <- p(x).}", bad) == TV::F);
	Interpretation partial = read_structure("domain = {a, b}\np = {(a): t, *: f}\nq = {(a): t, (b): u}\n");
	CHECK(kleene("{q(x) <- p(x).}", partial) == TV::U);
}

TEST_CASE("let") {
	Interpretation i = partial_p();
	CHECK(kleene("let {t(x) <- p(x).} in ?x: t(x)", i) == TV::T);
	CHECK(kleene("let {t(x) <- p(x).} in !x: t(x)", i) == TV::U);
	Interpretation e = read_structure("domain = {a, b}\np = {(a): t, *: f}\n");
	CHECK(exact("let {t(x) <- ~p(x).} in t(b) & ~t(a)", e) == TV::T);
	CHECK(exact("let {t(x) <- ~p(x).} in !x: t(x) <=> ~p(x)", e) == TV::T);
	CHECK_THROWS_AS(exact("let {s <- ~s.} in true", e), NonTotalDefinition);
	CHECK_THROWS_AS(exact("let {s <- s | ~s.} in s", e), NonTotalDefinition);
}

TEST_CASE("eval_exact rejects partial inputs and unknown symbols") {
	Interpretation i = partial_p();
	CHECK(exact("p(a)", read_structure("domain = {a}\np = {(a): t}\n")) == TV::T);
	CHECK_THROWS_AS(exact("p(a)", i), InputError);
	CHECK_THROWS_AS(kleene("zz(a)", i), InputError);
}

TEST_CASE("element names act as constants") {
	Interpretation i = partial_p();
	CHECK(kleene("p(a)", i) == TV::T);
	CHECK(kleene("p(b)", i) == TV::U);
	CHECK(kleene("a = a & a ~= b", i) == TV::T);
}

TEST_CASE("caps") {
	Interpretation i = read_structure("domain = {a, b, c, d}\n");
	CHECK_THROWS_AS(kleene("??P/2: P(a, b)", i), CapExceeded);
	Limits wide;
	wide.max_relation_cells = 16;
	CHECK(kleene("??P/2: P(a, b)", i, wide) == TV::T);
	Interpretation wide_partial = read_structure("domain = {a, b, c, d}\np = {(a,a): u, *: u}\n");
	Limits tiny;
	tiny.max_completions = 8;
	CHECK_THROWS_AS(super("!x, y: p(x, y) | ~p(x, y)", wide_partial, tiny), CapExceeded);
}

}
