#ifndef SOID_EVALUATOR_HPP
#define SOID_EVALUATOR_HPP

#include "soid/ast.hpp"
#include "soid/interpretation.hpp"
#include "soid/limits.hpp"

namespace soid {

enum class EvalMode { Kleene, Supervaluation };

/**
 * Three-valued truth value of `e` in `i`.
 *
 * Kleene mode applies the ultimate approximation of each construct to the
 * values of its parts. Supervaluation takes the glb over the classical values
 * in all exact completions of the free predicate symbols of `e`; completions
 * are explored lazily, branching only on unknown atoms that are actually read.
 *
 * An atom with an argument term that is not a domain element (such as `b+1`
 * at the top of an integer domain) is false. Comparisons of integer terms use
 * integer arithmetic, inside the domain or not.
 *
 * Throws InputError for free symbols that `i` does not interpret (domain
 * element names are accepted as constants), CapExceeded when an enumeration
 * bound is hit, NonTotalDefinition when a let block has no exact well-founded
 * model in some exact context.
 */
TV eval(const Expr& e, const Interpretation& i, EvalMode m, const Limits& limits = {});

/// Classical value on an exact interpretation; throws InputError if a free predicate of `e` is partial.
TV eval_exact(const Expr& e, const Interpretation& i, const Limits& limits = {});

} // namespace soid

#endif
