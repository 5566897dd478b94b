#include "soid/errors.hpp"
#include "soid/interpretation.hpp"
#include "soid/structure_io.hpp"

#include <doctest.h>

using namespace soid;

namespace {

Interpretation pq() {
	return read_structure("domain = {a, b}\np = {(a): t, (b): u}\nq = {(a,b): f, *: t}\n");
}

} // namespace

TEST_SUITE("interpretations") {

TEST_CASE("restrict") {
	Interpretation i = pq();
	Interpretation r = restrict(i, std::set<Symbol>{Symbol("p")});
	CHECK(r.interprets(Symbol("p")));
	CHECK_FALSE(r.interprets(Symbol("q")));
	CHECK(restrict(i, i.vocabulary()) == i);
	Interpretation twice = restrict(restrict(i, i.vocabulary()), std::set<Symbol>{Symbol("q")});
	CHECK(twice == restrict(i, std::set<Symbol>{Symbol("q")}));
}

TEST_CASE("expand overrides and adds") {
	Interpretation i = pq();
	PredTable t(i.domain_ptr(), Type::predicate(1), TV::F);
	Interpretation e = expand(i, Symbol("r"), SymbolValue{Type::predicate(1), 0, std::make_shared<PredTable>(t)});
	CHECK(restrict(e, i.vocabulary()) == i);
	t.set(0, TV::T);
	Interpretation e2 = expand(e, Symbol("r"), SymbolValue{Type::predicate(1), 0, std::make_shared<PredTable>(t)});
	CHECK(e2.table(Symbol("r")).at(0) == TV::T);
	Interpretation c = expand(i, Symbol("c"), SymbolValue{Type::element(), 1, nullptr});
	CHECK(c.element(Symbol("c")) == 1);
}

TEST_CASE("revision applies left to right") {
	Interpretation i = pq();
	DomainAtom pa{Symbol("p"), {0}};
	Interpretation u = revise(i, std::vector<DomainAtom>{pa}, TV::U);
	CHECK(u.atom_value(pa) == TV::U);
	CHECK(u.atom_value(DomainAtom{Symbol("p"), {1}}) == TV::U);
	Interpretation f = revise(u, std::vector<DomainAtom>{pa}, TV::F);
	CHECK(f.atom_value(pa) == TV::F);
	CHECK(revise(i, std::vector<DomainAtom>{}, TV::T) == i);
	CHECK_THROWS_AS(revise(i, std::vector<DomainAtom>{DomainAtom{Symbol("zz"), {0}}}, TV::T), InputError);
}

TEST_CASE("completions") {
	Interpretation i = pq();
	CHECK(completions(i, {Symbol("p")}).size() == 2);
	CHECK(completions(i, {Symbol("q")}).size() == 1);
	Interpretation three = read_structure("domain = {a, b, c}\np = {(a): u, *: u}\n");
	auto cs = completions(three, {Symbol("p")});
	CHECK(cs.size() == 8);
	for (std::size_t a = 0; a < cs.size(); ++a) {
		CHECK(leq_prec(three, cs[a]));
		for (std::size_t b = a + 1; b < cs.size(); ++b) {
			CHECK_FALSE(leq_prec(cs[a], cs[b]));
		}
	}
	Limits small;
	small.max_completions = 4;
	CHECK_THROWS_AS(completions(three, {Symbol("p")}, small), CapExceeded);
}

TEST_CASE("atoms with a value") {
	Interpretation i = read_structure("domain = {a, b}\np = {(a): u, *: u}\n");
	CHECK(atoms_with_value(i, {Symbol("p")}, TV::U).size() == 2);
	Interpretation e = read_structure("domain = {a, b}\np = {(a): t, *: f}\n");
	CHECK(atoms_with_value(e, {Symbol("p")}, TV::U).empty());
	auto t = atoms_with_value(e, {Symbol("p")}, TV::T);
	REQUIRE(t.size() == 1);
	CHECK(t[0] == DomainAtom{Symbol("p"), {0}});
}

TEST_CASE("precision order on interpretations") {
	Interpretation a = read_structure("domain = {a}\np = u\n");
	Interpretation b = read_structure("domain = {a}\np = t\n");
	CHECK(leq_prec(a, b));
	CHECK_FALSE(leq_prec(b, a));
	CHECK(leq_prec(a, a));
	CHECK(leq_truth(a, b));
}

TEST_CASE("tables are indexed lexicographically") {
	auto d = Domain::make({"a", "b", "c"});
	PredTable t(d, Type::predicate(2));
	CHECK(t.size() == 9);
	const ArgValue bc[] = {1, 2};
	CHECK(t.index(bc) == 5);
	CHECK(t.decode(7) == std::vector<ArgValue>{2, 1});
}

TEST_CASE("second order tables respect the relation cap") {
	auto d = Domain::make({"a", "b", "c", "d"});
	Type so = Type::predicate({ArgType::relation(2)});
	CHECK_THROWS_AS(PredTable(d, so), CapExceeded);
	Limits wide;
	wide.max_relation_cells = 16;
	CHECK(PredTable(d, so, TV::U, wide).size() == 65536);
	CHECK(relation_cells(3, 2) == 9);
}

TEST_CASE("structure text round trips") {
	const char* text = "domain = {a, b, c}\nc = b\np = {(a,b): t, (b,c): u, *: f}\nq = u\n";
	Interpretation i = read_structure(text);
	CHECK(write_structure(i) == text);
	CHECK(read_structure(write_structure(i)) == i);
	Interpretation ints = read_structure("domain = 1..3\nr = {(2): t, *: f}\n");
	CHECK(ints.domain().int_value(0) == 1);
	CHECK(write_structure(ints) == "domain = {1, 2, 3}\nr = {(2): t, *: f}\n");
}

TEST_CASE("malformed structures") {
	CHECK_THROWS_AS(read_structure("p = t\n"), InputError);
	CHECK_THROWS_AS(read_structure("domain = {a, a}\n"), InputError);
	CHECK_THROWS_AS(read_structure("domain = {a}\np = {(b): t}\n"), InputError);
}

}
