#include "soid/definitions.hpp"
#include "soid/errors.hpp"
#include "soid/parser.hpp"
#include "soid/structure_io.hpp"

#include <doctest.h>

using namespace soid;

namespace {

const char* const kChoice = "{p <- ~q. q <- ~p.}";
const char* const kLoop = "{r <- r.}";
const char* const kLiar = "{s <- ~s.}";

Interpretation empty_context() { return read_structure("domain = {a}\n"); }

TV value(const Interpretation& i, const char* sym) { return i.table(Symbol(sym)).at(0); }

} // namespace

TEST_SUITE("definitions") {

TEST_CASE("well-founded models of the canonical programs") {
	Interpretation o = empty_context();
	auto choice = well_founded_model(parse_rules(kChoice), o);
	REQUIRE(choice);
	CHECK(value(*choice, "p") == TV::U);
	CHECK(value(*choice, "q") == TV::U);
	auto loop = well_founded_model(parse_rules(kLoop), o);
	REQUIRE(loop);
	CHECK(value(*loop, "r") == TV::F);
	auto liar = well_founded_model(parse_rules(kLiar), o);
	REQUIRE(liar);
	CHECK(value(*liar, "s") == TV::U);
}

TEST_CASE("stable and partial stable models of the canonical programs") {
	Interpretation o = empty_context();
	CHECK(stable_models(parse_rules(kChoice), o).size() == 2);
	CHECK(stable_models(parse_rules(kLoop), o).size() == 1);
	CHECK(stable_models(parse_rules(kLiar), o).empty());
	CHECK(partial_stable_models(parse_rules(kChoice), o).size() == 3);
	CHECK(partial_stable_models(parse_rules(kLoop), o).size() == 1);
	CHECK(partial_stable_models(parse_rules(kLiar), o).size() == 1);
}

TEST_CASE("the fixpoint agrees with the brute force least model") {
	Interpretation o = empty_context();
	for (const char* text : {kChoice, kLoop, kLiar, "{p <- ~q. q <- r. r <- ~p.}", "{p <- q | ~r. q <- p. r <- ~q & r.}"}) {
		RuleSet d = parse_rules(text);
		auto wfm = well_founded_model(d, o);
		auto brute = well_founded_model_bruteforce(d, o);
		REQUIRE(wfm);
		REQUIRE(brute);
		CHECK(*wfm == *brute);
	}
}

TEST_CASE("closed interpretations") {
	RuleSet d = parse_rules(kChoice);
	CHECK(is_closed(d, read_structure("domain = {a}\np = t\nq = f\n")));
	CHECK_FALSE(is_closed(d, read_structure("domain = {a}\np = f\nq = f\n")));
	CHECK(is_closed(d, read_structure("domain = {a}\np = u\nq = u\n")));
}

TEST_CASE("unfounded sets") {
	RuleSet loop = parse_rules(kLoop);
	Interpretation r = read_structure("domain = {a}\nr = u\n");
	CHECK(is_unfounded(loop, r, {DomainAtom{Symbol("r"), {}}}));
	RuleSet choice = parse_rules(kChoice);
	Interpretation pq = read_structure("domain = {a}\np = u\nq = u\n");
	CHECK_FALSE(is_unfounded(choice, pq, {DomainAtom{Symbol("p"), {}}}));
	CHECK_FALSE(is_unfounded(choice, pq, {DomainAtom{Symbol("p"), {}}, DomainAtom{Symbol("q"), {}}}));
	CHECK_THROWS_AS(is_unfounded(choice, pq, {DomainAtom{Symbol("zz"), {}}}), InputError);
}

TEST_CASE("partial stable report") {
	RuleSet choice = parse_rules(kChoice);
	StableReport pt = is_partial_stable(choice, read_structure("domain = {a}\np = t\nq = f\n"));
	CHECK(pt.is_partial_stable);
	CHECK(pt.is_stable_exact);
	CHECK_FALSE(pt.is_wfm);
	StableReport all_u = is_partial_stable(choice, read_structure("domain = {a}\np = u\nq = u\n"));
	CHECK(all_u.is_partial_stable);
	CHECK(all_u.is_wfm);
	StableReport both = is_partial_stable(choice, read_structure("domain = {a}\np = t\nq = t\n"));
	CHECK_FALSE(both.is_partial_stable);
	CHECK_FALSE(both.supported);
	CHECK_FALSE(both.unsupported.empty());
	StableReport loop_t = is_partial_stable(parse_rules(kLoop), read_structure("domain = {a}\nr = t\n"));
	CHECK(loop_t.supported);
	CHECK_FALSE(loop_t.is_partial_stable);
}

TEST_CASE("totality") {
	Interpretation o = empty_context();
	CHECK(is_total(parse_rules(kLoop), o));
	CHECK_FALSE(is_total(parse_rules(kChoice), o));
	CHECK_FALSE(is_total(parse_rules(kLiar), o));
	CHECK(is_total(parse_rules("{p <- ~q. q <- false.}"), o));
}

TEST_CASE("truth value of a definition") {
	RuleSet choice = parse_rules(kChoice);
	Interpretation pt = read_structure("domain = {a}\np = t\nq = f\n");
	CHECK(eval_definition(choice, pt, DefSemantics::W) == TV::F);
	CHECK(eval_definition(choice, pt, DefSemantics::St) == TV::T);
	RuleSet loop = parse_rules(kLoop);
	CHECK(eval_definition(loop, read_structure("domain = {a}\nr = f\n"), DefSemantics::W) == TV::T);
	CHECK(eval_definition(loop, read_structure("domain = {a}\nr = t\n"), DefSemantics::St) == TV::F);
	CHECK(eval_definition(loop, read_structure("domain = {a}\nr = u\n"), DefSemantics::W) == TV::U);
}

TEST_CASE("transitive closure") {
	Interpretation o = read_structure("domain = {a, b, c}\nedge = {(a,b): t, (b,c): t, *: f}\n");
	RuleSet d = parse_rules("{reach(x, y) <- edge(x, y) | (?z: reach(x, z) & reach(z, y)).}");
	auto wfm = well_founded_model(d, o);
	REQUIRE(wfm);
	CHECK(wfm->table(Symbol("reach")).is_exact());
	CHECK(write_structure(restrict(*wfm, std::set<Symbol>{Symbol("reach")})) ==
	      "domain = {a, b, c}\nreach = {(a,b): t, (a,c): t, (b,c): t, *: f}\n");
}

TEST_CASE("defined types") {
	auto types = defined_types(parse_rules("{p(x, y) <- q(x). s <- true.}"));
	REQUIRE(types.size() == 2);
	CHECK_THROWS_AS(defined_types(parse_rules("{p(x) <- true. p <- true.}")), InputError);
}

TEST_CASE("the partial stable search is capped") {
	Limits small;
	small.max_partial_stable_atoms = 2;
	Interpretation o = read_structure("domain = {a, b, c}\n");
	CHECK_THROWS_AS(partial_stable_models(parse_rules("{p(x) <- ~p(x).}"), o, small), CapExceeded);
}

}
