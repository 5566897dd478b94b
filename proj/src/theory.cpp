#include "soid/theory.hpp"

#include "lexer.hpp"
#include "parser_impl.hpp"
#include "soid/definitions.hpp"
#include "soid/errors.hpp"
#include "soid/evaluator.hpp"
#include "soid/parser.hpp"
#include "soid/structure_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace soid {

namespace {

std::string read_file(const std::filesystem::path& p) {
	std::ifstream in(p, std::ios::binary);
	if (!in) {
		throw InputError("cannot read '" + p.string() + "'");
	}
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

class TheoryReader {
public:
	TheoryReader(Theory& t, IncludeReader reader) : t_(t), reader_(std::move(reader)) {}

	void file(std::string_view text, const std::filesystem::path& origin) {
		detail::TokenStream ts(detail::tokenize(text));
		while (!ts.at_end()) {
			block(ts, origin);
		}
	}

	Vocabulary known; //!< declared symbols and template heads so far

private:
	void block(detail::TokenStream& ts, const std::filesystem::path& origin) {
		const detail::Token& kw = ts.peek();
		if (kw.is_ident("vocab")) {
			ts.next();
			vocab_block(ts);
		} else if (kw.is_ident("include")) {
			ts.next();
			const detail::Token& path = ts.next();
			if (path.kind != detail::Token::Kind::Str) {
				ts.fail_at(path, "expected a quoted file name after 'include'");
			}
			ts.accept(".") || ts.accept(";");
			include(path, origin, ts);
		} else if (kw.is_ident("template") || kw.is_ident("definition")) {
			const bool is_template = kw.is_ident("template");
			ts.next();
			std::string name = block_name(ts, is_template ? "template" : "definition");
			ts.expect("{");
			Vocabulary registry;
			detail::Parser p(ts, &known, &registry);
			auto rules = std::make_shared<RuleSet>(p.rule_items());
			ts.expect("}");
			if (rules->rules.empty()) {
				ts.fail_at(kw, "empty " + std::string(is_template ? "template" : "definition") + " '" + name + "'");
			}
			if (is_template) {
				for (const auto& [s, ty] : defined_types(*rules)) {
					if (const auto* e = known.find(s); e != nullptr && !(e->type == ty)) {
						ts.fail_at(kw, "template symbol '" + s.name() + "' declared as " + to_string(e->type) +
						                   " but defined as " + to_string(ty));
					}
					known.add(s, ty, kTemplate);
				}
				t_.templates.push_back({std::move(name), std::move(rules)});
			} else {
				t_.definitions.push_back({std::move(name), std::move(rules)});
			}
		} else if (kw.is_ident("formula")) {
			ts.next();
			std::string name = block_name(ts, "formula");
			ts.expect("{");
			Vocabulary registry;
			detail::Parser p(ts, &known, &registry);
			Expr e = p.formula();
			ts.accept(".");
			ts.expect("}");
			t_.formulas.push_back({std::move(name), std::move(e)});
		} else {
			ts.fail("expected 'vocab', 'include', 'template', 'formula' or 'definition'");
		}
	}

	std::string block_name(detail::TokenStream& ts, const char* kind) {
		const detail::Token& at = ts.peek();
		std::string name = ts.expect_ident("a block name");
		if (!names_.insert(name).second) {
			ts.fail_at(at, std::string("duplicate block name '") + name + "' (" + kind + ")");
		}
		return name;
	}

	void vocab_block(detail::TokenStream& ts) {
		ts.expect("{");
		while (!ts.accept("}")) {
			unsigned flags = kUser;
			if (ts.accept_ident("interpreted")) {
				flags = kInterpreted;
			}
			const detail::Token& at = ts.peek();
			Symbol s(ts.expect_ident("a symbol name"));
			Vocabulary registry;
			detail::Parser p(ts, &known, &registry);
			Type ty;
			if (ts.accept(":")) {
				ty = p.parse_type();
			} else if (ts.peek().is("(")) {
				ty = p.parse_type();
			} else {
				ts.fail("expected ':' and a type, or an argument list");
			}
			if (!ts.accept(";") && !ts.accept(".") && !ts.peek().is("}")) {
				ts.fail("expected ';'");
			}
			if (known.contains(s)) {
				ts.fail_at(at, "symbol '" + s.name() + "' declared twice");
			}
			known.add(s, ty, flags);
			t_.declared.add(s, ty, flags);
		}
	}

	void include(const detail::Token& path, const std::filesystem::path& origin, const detail::TokenStream& ts) {
		std::filesystem::path resolved = origin.parent_path() / path.text;
		resolved = resolved.lexically_normal();
		if (std::find(stack_.begin(), stack_.end(), resolved) != stack_.end()) {
			ts.fail_at(path, "include cycle through '" + path.text + "'");
		}
		std::string text;
		try {
			text = reader_ ? reader_(resolved) : read_file(resolved);
		} catch (const InputError& e) {
			ts.fail_at(path, e.what());
		}
		stack_.push_back(resolved);
		try {
			file(text, resolved);
		} catch (const ParseError& e) {
			throw InputError(resolved.string() + ":" + e.what());
		}
		stack_.pop_back();
	}

	Theory& t_;
	IncludeReader reader_;
	std::set<std::string> names_;
	std::vector<std::filesystem::path> stack_;
};

} // namespace

TemplateLibrary Theory::library() const {
	Vocabulary interpreted;
	for (Symbol s : vocab.symbols()) {
		const auto* e = vocab.find(s);
		if ((e->flags & kInterpreted) != 0) {
			interpreted.add(s, e->type, e->flags);
		}
	}
	return make_library(templates, interpreted);
}

Vocabulary Theory::user_vocabulary() const {
	Vocabulary out;
	for (Symbol s : vocab.symbols()) {
		const auto* e = vocab.find(s);
		if ((e->flags & kTemplate) == 0) {
			out.add(s, e->type, e->flags);
		}
	}
	return out;
}

const NamedFormula* Theory::formula(std::string_view name) const {
	for (const NamedFormula& f : formulas) {
		if (f.name == name) {
			return &f;
		}
	}
	return nullptr;
}

const NamedDefinition* Theory::definition(std::string_view name) const {
	for (const NamedDefinition& d : definitions) {
		if (d.name == name) {
			return &d;
		}
	}
	return nullptr;
}

Expr Theory::conjunction() const {
	if (formulas.empty()) {
		return make_true();
	}
	if (formulas.size() == 1) {
		return formulas.front().formula;
	}
	std::vector<Expr> cs;
	for (const NamedFormula& f : formulas) {
		cs.push_back(f.formula);
	}
	return make_and(std::move(cs));
}

Theory parse_theory(std::string_view text, const std::filesystem::path& origin, const IncludeReader& reader) {
	Theory t;
	TheoryReader r(t, reader);
	r.file(text, origin);

	std::vector<Expr> formulas;
	for (const NamedFormula& f : t.formulas) {
		formulas.push_back(f.formula);
	}
	std::vector<const RuleSet*> rule_sets;
	for (const Template& tpl : t.templates) {
		rule_sets.push_back(tpl.rules.get());
	}
	for (const NamedDefinition& d : t.definitions) {
		rule_sets.push_back(d.rules.get());
	}
	t.vocab = r.known;
	t.vocab.merge(infer_vocabulary(formulas, rule_sets, r.known));
	return t;
}

Theory load_theory(const std::filesystem::path& path) { return parse_theory(read_file(path), path); }

std::vector<TheoryDiagnostic> check_theory(const Theory& t) {
	std::vector<TheoryDiagnostic> out;
	auto add = [&](const std::string& block, std::vector<Diagnostic> ds) {
		for (Diagnostic& d : ds) {
			out.push_back({block, std::move(d)});
		}
	};
	for (const Template& tpl : t.templates) {
		add(tpl.name, typecheck(*tpl.rules, t.vocab));
	}
	for (const NamedDefinition& d : t.definitions) {
		add(d.name, typecheck(*d.rules, t.vocab));
		for (Symbol s : d.rules->defined()) {
			const auto* e = t.vocab.find(s);
			if (e != nullptr && (e->flags & (kTemplate | kInterpreted)) != 0) {
				out.push_back({d.name, {d.rules->rules.front().loc,
				                        "'" + s.name() + "' is a template or interpreted symbol and cannot be defined here"}});
			}
		}
	}
	for (const NamedFormula& f : t.formulas) {
		add(f.name, typecheck(f.formula, t.vocab));
	}
	return out;
}

std::string write_theory(const Theory& t) {
	std::string out;
	const Vocabulary user = t.user_vocabulary();
	if (!user.empty()) {
		out += "vocab {\n";
		for (Symbol s : user.symbols()) {
			const auto* e = user.find(s);
			out += "  ";
			if ((e->flags & kInterpreted) != 0) {
				out += "interpreted ";
			}
			out += s.name() + " : " + to_string(e->type) + ";\n";
		}
		out += "}\n";
	}
	for (const Template& tpl : t.templates) {
		out += "\ntemplate " + tpl.name + " {\n" + unparse_rules_body(*tpl.rules, "  ") + "}\n";
	}
	for (const NamedDefinition& d : t.definitions) {
		out += "\ndefinition " + d.name + " {\n" + unparse_rules_body(*d.rules, "  ") + "}\n";
	}
	for (const NamedFormula& f : t.formulas) {
		out += "\nformula " + f.name + " {\n  " + unparse(f.formula) + "\n}\n";
	}
	return out;
}

Interpretation load_structure(const std::filesystem::path& path, const Theory* t, const Limits& limits) {
	const std::string text = read_file(path);
	try {
		return read_structure(text, t != nullptr ? &t->vocab : nullptr, limits);
	} catch (const ParseError& e) {
		throw InputError(path.string() + ":" + e.what());
	}
}

Interpretation with_templates(const Interpretation& i, const Theory& t, const Limits& limits) {
	if (t.templates.empty()) {
		return i;
	}
	const TemplateLibrary lib = t.library();
	const auto syms = lib.template_symbols();
	if (std::all_of(syms.begin(), syms.end(), [&](Symbol s) { return i.interprets(s); })) {
		return i;
	}
	return apply_library(i, lib, limits);
}

std::size_t model_expand(const Theory& t, const Interpretation& input,
                         const std::function<bool(const Interpretation&)>& visit, const Limits& limits) {
	const Interpretation base = with_templates(input, t, limits);
	const Vocabulary user = t.user_vocabulary();

	auto exact_in_input = [&](Symbol s) {
		const SymbolValue* v = base.find(s);
		return v != nullptr && (v->type.is_element() || v->table->is_exact());
	};

	std::map<Symbol, std::size_t> definer;
	for (std::size_t k = 0; k < t.definitions.size(); ++k) {
		for (Symbol s : t.definitions[k].rules->defined()) {
			if (definer.count(s) != 0) {
				definer[s] = t.definitions.size(); // defined twice: never computed
			} else {
				definer[s] = k;
			}
		}
	}

	// definitions computed from their parameters, in an order that respects dependencies
	std::vector<std::size_t> plan;
	std::vector<char> planned(t.definitions.size(), 0);
	std::set<Symbol> available;
	for (Symbol s : user.symbols()) {
		if (definer.count(s) == 0 || base.interprets(s)) {
			available.insert(s);
		}
	}
	for (Symbol s : base.symbols()) {
		available.insert(s);
	}
	for (bool progress = true; progress;) {
		progress = false;
		for (std::size_t k = 0; k < t.definitions.size(); ++k) {
			if (planned[k] != 0) {
				continue;
			}
			const RuleSet& d = *t.definitions[k].rules;
			const auto defs = d.defined();
			const bool own = std::all_of(defs.begin(), defs.end(),
			                             [&](Symbol s) { return definer[s] == k && !base.interprets(s); });
			const auto pars = parameters(d);
			const bool ready = std::all_of(pars.begin(), pars.end(), [&](Symbol s) { return available.count(s) != 0; });
			if (own && ready) {
				planned[k] = 1;
				plan.push_back(k);
				available.insert(defs.begin(), defs.end());
				progress = true;
			}
		}
	}

	Vocabulary guessed;
	for (Symbol s : user.symbols()) {
		const bool computed = definer.count(s) != 0 && definer[s] < planned.size() && planned[definer[s]] != 0;
		if (!computed && !exact_in_input(s)) {
			guessed.add(s, user.type(s));
		}
	}
	std::vector<Expr> checks;
	for (const NamedFormula& f : t.formulas) {
		checks.push_back(f.formula);
	}
	for (std::size_t k = 0; k < t.definitions.size(); ++k) {
		if (planned[k] == 0) {
			checks.push_back(make_definition(t.definitions[k].rules));
		}
	}

	std::size_t found = 0;
	for_each_structure(base, guessed, [&](const Interpretation& j) {
		Interpretation m = j;
		for (std::size_t k : plan) {
			auto wfm = well_founded_model(*t.definitions[k].rules, m, limits);
			if (!wfm || !wfm->is_exact()) {
				return true;
			}
			m = std::move(*wfm);
		}
		for (const Expr& e : checks) {
			if (eval_exact(e, m, limits) != TV::T) {
				return true;
			}
		}
		++found;
		return visit(m);
	}, limits);
	return found;
}

} // namespace soid
