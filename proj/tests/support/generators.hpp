/** \file
 * Seeded random generators for formulas, rule sets and structures.
 */
#ifndef SOID_TESTS_GENERATORS_HPP
#define SOID_TESTS_GENERATORS_HPP

#include "soid/interpretation.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace soid::testing {

class Rng {
public:
	explicit Rng(std::uint64_t seed) : gen_(seed) {}
	int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }
	bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
	template <class T>
	const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))]; }
	TV tv(double p_unknown);

private:
	std::mt19937_64 gen_;
};

/// Knobs for random_formula.
struct FormulaShape {
	int depth = 3;
	bool aggregates = true;
	bool second_order = true;
	bool definitions = true;
};

/// Formula text over p/1, q/1, r/2, s/0.
std::string random_formula(Rng& rng, const FormulaShape& shape);

/// The vocabulary random_formula draws from.
Vocabulary formula_vocabulary();

/// Random values for every symbol of `v`; each cell is u with probability `p_unknown`.
Interpretation random_structure(Rng& rng, const DomainPtr& dom, const Vocabulary& v, double p_unknown);

/// Replaces each u cell of `i` by t or f with probability `p`.
Interpretation refine(Rng& rng, const Interpretation& i, double p);

/// Propositional rule set text over `atoms`, bodies of depth at most `depth`.
std::string random_prop_rules(Rng& rng, const std::vector<std::string>& heads, const std::vector<std::string>& atoms,
                              int depth, bool monotone);

/// Propositional body text.
std::string random_prop_body(Rng& rng, const std::vector<std::string>& atoms, int depth, bool monotone);

} // namespace soid::testing

#endif
