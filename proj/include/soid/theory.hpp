/** \file
 * Theory files: a vocabulary block followed by named template, formula and
 * definition blocks, plus model expansion over them.
 *
 *		vocab { edge : pred/2; tc : so-pred(pred/2, pred/2); c : const; p(δ,δ); }
 *		include "lib.soid"
 *		template tc { tc(P, Q) <- ... . }
 *		formula main { tc(edge, reach) }
 *		definition reach { reach(x, y) <- edge(x, y). }
 *
 * Vocabulary entries may be prefixed with `interpreted`.
 */
#ifndef SOID_THEORY_HPP
#define SOID_THEORY_HPP

#include "soid/analysis.hpp"
#include "soid/ast.hpp"
#include "soid/interpretation.hpp"
#include "soid/limits.hpp"
#include "soid/templates.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace soid {

struct NamedFormula {
	std::string name;
	Expr formula;
};

struct NamedDefinition {
	std::string name;
	RuleSetPtr rules;
};

struct Theory {
	Vocabulary declared; //!< the vocab blocks as written
	Vocabulary vocab;    //!< declared, template heads (kTemplate) and inferred symbols
	std::vector<Template> templates;
	std::vector<NamedFormula> formulas;
	std::vector<NamedDefinition> definitions;

	TemplateLibrary library() const;
	/// Symbols of `vocab` that are not template symbols.
	Vocabulary user_vocabulary() const;
	const NamedFormula* formula(std::string_view name) const;
	const NamedDefinition* definition(std::string_view name) const;
	/// All formulas conjoined (true when there are none).
	Expr conjunction() const;
};

/// Returns the text of an included file, given its resolved path.
using IncludeReader = std::function<std::string(const std::filesystem::path& resolved)>;

/**
 * Parses theory text. `origin` is the file the text came from; includes are
 * resolved relative to its directory. Throws ParseError or InputError.
 */
Theory parse_theory(std::string_view text, const std::filesystem::path& origin = "<input>",
                    const IncludeReader& reader = {});
Theory load_theory(const std::filesystem::path& path);

struct TheoryDiagnostic {
	std::string block;
	Diagnostic diagnostic;
};

/// Type errors of every block against the theory vocabulary.
std::vector<TheoryDiagnostic> check_theory(const Theory& t);

/// Canonical theory text that parse_theory reads back to the same theory.
std::string write_theory(const Theory& t);

/// Reads a structure file, taking symbol types from the theory when it declares them.
Interpretation load_structure(const std::filesystem::path& path, const Theory* t = nullptr, const Limits& limits = {});

/// `i` extended with the template symbols of `t` (left alone when `i` already interprets them all).
Interpretation with_templates(const Interpretation& i, const Theory& t, const Limits& limits = {});

/**
 * Model expansion: calls `visit` on each exact expansion of `input` to the
 * user vocabulary of `t` in which every formula is true and every definition
 * holds, in enumeration order. Definitions whose parameters are known are
 * computed rather than guessed. Returns the number of models visited; stops
 * early when `visit` returns false.
 */
std::size_t model_expand(const Theory& t, const Interpretation& input,
                         const std::function<bool(const Interpretation&)>& visit, const Limits& limits = {});

} // namespace soid

#endif
