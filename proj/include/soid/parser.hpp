#ifndef SOID_PARSER_HPP
#define SOID_PARSER_HPP

#include "soid/ast.hpp"

#include <string>
#include <string_view>

namespace soid {

/**
 * Parses one formula. Declared constants in `vocab` are never taken as fresh
 * rule variables, and declared second order types guide the inference of
 * variable types. Throws ParseError with line and column.
 */
Expr parse_formula(std::string_view text, const Vocabulary* vocab = nullptr);

/// Parses a rule set, with or without the enclosing braces.
RuleSet parse_rules(std::string_view text, const Vocabulary* vocab = nullptr);

/// Canonical ASCII text; parse_formula(unparse(e)) is structurally equal to e.
std::string unparse(const Expr& e);
std::string unparse(const RuleSet& d);   //!< `{r1. r2.}`
std::string unparse_rule(const Rule& r); //!< without the final '.'
std::string unparse(const TermPtr& t);
std::string unparse_rules_body(const RuleSet& d, const std::string& indent); //!< one rule per line

} // namespace soid

#endif
