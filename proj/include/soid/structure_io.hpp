#ifndef SOID_STRUCTURE_IO_HPP
#define SOID_STRUCTURE_IO_HPP

#include "soid/interpretation.hpp"

#include <string>
#include <string_view>

namespace soid {

/**
 * Reads the structure text format:
 *
 *		domain = {a, b, c}        (or: domain = 1..3)
 *		c = a                      constant
 *		q = t                      0-ary predicate
 *		p = {(a,b): t, (b,c): u, *: f}
 *
 * Symbol types come from `vocab` when it declares them, otherwise they are
 * inferred from the tuple keys. Unlisted tuples take the `*` default, or u
 * when there is none.
 */
Interpretation read_structure(std::string_view text, const Vocabulary* vocab = nullptr, const Limits& limits = {});

/// Canonical text: symbols by name, tuples in index order, the most frequent value as `*`.
std::string write_structure(const Interpretation& i);

/// One `name = value` line without the trailing newline.
std::string write_symbol(Symbol s, const SymbolValue& v, const Domain& d);

} // namespace soid

#endif
