#include "soid/errors.hpp"
#include "soid/structure_io.hpp"
#include "soid/theory.hpp"

#include <doctest.h>

#include <map>

using namespace soid;

namespace {

const std::filesystem::path kCorpus = SOID_CORPUS_DIR;

const char* const kTcLib = R"(
vocab { tc : so-pred(pred/2, pred/2); }
template tc { tc(P, Q) <- {Q(x, y) <- P(x, y) | (?z: Q(x, z) & Q(z, y)).}. }
)";

} // namespace

TEST_SUITE("theory") {

TEST_CASE("includes are resolved next to the including file") {
	std::vector<std::filesystem::path> asked;
	IncludeReader reader = [&](const std::filesystem::path& p) {
		asked.push_back(p);
		return std::string(kTcLib);
	};
	Theory t = parse_theory("vocab { edge : pred/2; }\ninclude \"lib.soid\"\nformula main { tc(edge, reach) }\n",
	                        "/tmp/th/main.soid", reader);
	REQUIRE(asked.size() == 1);
	CHECK(asked[0] == std::filesystem::path("/tmp/th/lib.soid"));
	CHECK(t.templates.size() == 1);
	CHECK(t.library().is_template_symbol(Symbol("tc")));
	CHECK(to_string(t.vocab.type(Symbol("reach"))) == "pred/2");
	CHECK_FALSE(t.user_vocabulary().contains(Symbol("tc")));
	CHECK(t.user_vocabulary().contains(Symbol("reach")));
	CHECK(check_theory(t).empty());
}

TEST_CASE("malformed theories") {
	CHECK_THROWS_AS(parse_theory("formula a { p }\nformula a { q }\n"), InputError);
	CHECK_THROWS_AS(parse_theory("formula a { p & }\n"), ParseError);
	CHECK_THROWS_AS(parse_theory("banana a { p }\n"), InputError);
	CHECK_THROWS_AS(load_theory(kCorpus / "no_such_file.soid"), InputError);
}

TEST_CASE("type errors are reported per block") {
	Theory t = load_theory(kCorpus / "bad_arity.soid");
	auto diags = check_theory(t);
	REQUIRE_FALSE(diags.empty());
	CHECK(diags[0].block == "main");
	Theory redefined = parse_theory(std::string(kTcLib) + "definition d { tc(P, Q) <- true. }\n");
	CHECK_FALSE(check_theory(redefined).empty());
}

TEST_CASE("written theories read back") {
	for (const char* name : {"equivalence.soid", "closure.soid", "range.soid", "game.soid", "canonical.soid"}) {
		Theory t = load_theory(kCorpus / name);
		std::string once = write_theory(t);
		Theory again = parse_theory(once);
		CHECK(write_theory(again) == once);
		CHECK(again.vocab == t.vocab);
		CHECK(again.formulas.size() == t.formulas.size());
		CHECK(again.definitions.size() == t.definitions.size());
	}
}

TEST_CASE("model expansion of the equivalence theory") {
	Theory t = load_theory(kCorpus / "equivalence.soid");
	Interpretation input = load_structure(kCorpus / "equivalence.structure", &t);
	std::size_t n = model_expand(t, input, [](const Interpretation& m) {
		CHECK(m.is_exact());
		return true;
	});
	CHECK(n == 4); // two equivalence relations on two elements, for each of P and Q
	std::size_t first = model_expand(t, input, [](const Interpretation&) { return false; });
	CHECK(first == 1);
}

TEST_CASE("model expansion computes definitions") {
	Theory t = load_theory(kCorpus / "game.soid");
	Interpretation input = load_structure(kCorpus / "game.structure", &t);
	std::vector<std::string> found;
	std::size_t n = model_expand(t, input, [&](const Interpretation& m) {
		found.push_back(write_symbol(Symbol("winning"), m.value(Symbol("winning")), m.domain()));
		return true;
	});
	CHECK(n == 1);
	REQUIRE(found.size() == 1);
	CHECK(found[0] == "winning = {(b): t, *: f}");
}

TEST_CASE("model expansion with no model") {
	Theory t = parse_theory("vocab { p : pred/1; }\nformula a { ?x: p(x) }\nformula b { !x: ~p(x) }\n");
	Interpretation input(Domain::make({"a", "b"}));
	CHECK(model_expand(t, input, [](const Interpretation&) { return true; }) == 0);
}

TEST_CASE("structures take types from the theory") {
	Theory t = load_theory(kCorpus / "game.soid");
	Interpretation i = load_structure(kCorpus / "game.structure", &t);
	CHECK(i.table(Symbol("won")).arity() == 1);
	Interpretation full = with_templates(i, t);
	CHECK(full.interprets(Symbol("win")));
	CHECK(full.interprets(Symbol("lose")));
}

}
