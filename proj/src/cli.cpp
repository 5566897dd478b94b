#include "soid/cli.hpp"

#include "soid/analysis.hpp"
#include "soid/definitions.hpp"
#include "soid/errors.hpp"
#include "soid/evaluator.hpp"
#include "soid/parser.hpp"
#include "soid/structure_io.hpp"
#include "soid/templates.hpp"
#include "soid/theory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace soid {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
	bool json = false;
	bool color = false;
	unsigned max_atoms = 0;
	std::uint64_t max_completions = 0;
	unsigned max_relation_cells = 0;

	std::string theory;
	std::string structure;
	std::string mode = "kleene";
	std::string formula;
	std::string definition;
	std::size_t max_models = 0;
	bool check_equiv = false;
	std::vector<std::size_t> sizes{1, 2};
	std::vector<std::string> domain_files;

	Limits limits() const {
		Limits l;
		if (max_atoms != 0) {
			l.max_mx_atoms = max_atoms;
			l.max_stable_atoms = max_atoms;
			l.max_subset_atoms = max_atoms;
		}
		if (max_completions != 0) {
			l.max_completions = max_completions;
		}
		if (max_relation_cells != 0) {
			l.max_relation_cells = max_relation_cells;
		}
		return l;
	}
};

class Command {
public:
	Command(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err), limits_(o.limits()) {}

	int typecheck();
	int classify();
	int eval();
	int wfm();
	int stable();
	int mx();
	int expand();
	int eliminate_so();
	int validate_lib();
	int apply_lib();

private:
	Theory theory() const {
		Theory t = load_theory(o_.theory);
		auto diags = check_theory(t);
		if (!diags.empty()) {
			std::string msg = "theory does not typecheck";
			for (const TheoryDiagnostic& d : diags) {
				msg += "\n  " + describe(d);
			}
			throw InputError(msg);
		}
		return t;
	}

	static std::string describe(const TheoryDiagnostic& d) {
		return d.block + ":" + std::to_string(d.diagnostic.loc.line) + ":" + std::to_string(d.diagnostic.loc.column) +
		       ": " + d.diagnostic.message;
	}

	Interpretation structure(const Theory& t) const {
		return with_templates(load_structure(o_.structure, &t, limits_), t, limits_);
	}

	const NamedDefinition& pick_definition(const Theory& t) const {
		if (!o_.definition.empty()) {
			if (const NamedDefinition* d = t.definition(o_.definition)) {
				return *d;
			}
			throw InputError("no definition named '" + o_.definition + "'");
		}
		if (t.definitions.size() != 1) {
			throw InputError(t.definitions.empty() ? "the theory has no definition"
			                                       : "the theory has several definitions; choose one with --definition");
		}
		return t.definitions.front();
	}

	std::string tv(TV v) const {
		std::string s = to_string(v);
		if (!o_.color) {
			return s;
		}
		const char* code = v == TV::T ? "32" : v == TV::F ? "31" : "33";
		return std::string("\033[") + code + "m" + s + "\033[0m";
	}

	static Json structure_json(const Interpretation& i) {
		Json j;
		j["domain"] = i.domain().names();
		Json syms = Json::object();
		for (Symbol s : i.symbols()) {
			std::string line = write_symbol(s, i.value(s), i.domain());
			syms[s.name()] = line.substr(s.name().size() + 3);
		}
		j["symbols"] = std::move(syms);
		return j;
	}

	void emit(const Json& j) const { out_ << j.dump(2) << "\n"; }

	std::vector<DomainPtr> check_domains() const {
		return {Domain::make({"d1"}), Domain::make({"d1", "d2"})};
	}

	/// Formulas and definitions of `t` as one sentence.
	static Expr sentence(const Theory& t) {
		std::vector<Expr> cs;
		for (const NamedDefinition& d : t.definitions) {
			cs.push_back(make_definition(d.rules));
		}
		for (const NamedFormula& f : t.formulas) {
			cs.push_back(f.formula);
		}
		if (cs.empty()) {
			return make_true();
		}
		return cs.size() == 1 ? cs.front() : make_and(std::move(cs));
	}

	int report_equivalence(const EquivalenceReport& r, Json* j) const {
		if (j != nullptr) {
			(*j)["equiv"] = {{"pass", r.equivalent}, {"structures", r.structures}};
			if (!r.equivalent) {
				(*j)["equiv"]["counterexample"] = r.counterexample;
			}
			return r.equivalent ? kExitOk : kExitNoModel;
		}
		out_ << "% equiv: " << (r.equivalent ? "pass" : "fail") << " (" << r.structures << " structures)\n";
		if (!r.equivalent) {
			std::istringstream lines(r.counterexample);
			for (std::string line; std::getline(lines, line);) {
				out_ << "%   " << line << "\n";
			}
		}
		return r.equivalent ? kExitOk : kExitNoModel;
	}

	const Options& o_;
	std::ostream& out_;
	std::ostream& err_;
	Limits limits_;
};

std::string flags_text(unsigned flags) {
	if ((flags & kTemplate) != 0) {
		return " template";
	}
	if ((flags & kInterpreted) != 0) {
		return " interpreted";
	}
	return "";
}

int Command::typecheck() {
	Theory t = load_theory(o_.theory);
	auto diags = check_theory(t);
	if (o_.json) {
		Json j;
		j["ok"] = diags.empty();
		Json vocab = Json::array();
		for (Symbol s : t.vocab.symbols()) {
			const auto* e = t.vocab.find(s);
			std::string kind = (e->flags & kTemplate) != 0 ? "template" : (e->flags & kInterpreted) != 0 ? "interpreted" : "user";
			vocab.push_back({{"name", s.name()}, {"type", to_string(e->type)}, {"kind", kind}});
		}
		j["vocabulary"] = std::move(vocab);
		Json ds = Json::array();
		for (const TheoryDiagnostic& d : diags) {
			ds.push_back({{"block", d.block},
			              {"line", d.diagnostic.loc.line},
			              {"column", d.diagnostic.loc.column},
			              {"message", d.diagnostic.message}});
		}
		j["diagnostics"] = std::move(ds);
		emit(j);
		return diags.empty() ? kExitOk : kExitInputError;
	}
	if (!diags.empty()) {
		for (const TheoryDiagnostic& d : diags) {
			err_ << describe(d) << "\n";
		}
		return kExitInputError;
	}
	for (Symbol s : t.vocab.symbols()) {
		const auto* e = t.vocab.find(s);
		out_ << s.name() << " : " << to_string(e->type) << flags_text(e->flags) << "\n";
	}
	out_ << "ok\n";
	return kExitOk;
}

int Command::classify() {
	Theory t = theory();
	Json j;
	Json fs = Json::array();
	for (const NamedDefinition& d : t.definitions) {
		Fragment f = soid::classify(make_definition(d.rules), t.vocab);
		if (o_.json) {
			fs.push_back({{"block", "definition"}, {"name", d.name}, {"fragment", to_string(f)}});
		} else {
			out_ << "definition " << d.name << ": " << to_string(f) << "\n";
		}
	}
	for (const NamedFormula& nf : t.formulas) {
		Fragment f = soid::classify(nf.formula, t.vocab);
		if (o_.json) {
			fs.push_back({{"block", "formula"}, {"name", nf.name}, {"fragment", to_string(f)}});
		} else {
			out_ << "formula " << nf.name << ": " << to_string(f) << "\n";
		}
	}
	if (o_.json) {
		j["blocks"] = std::move(fs);
		emit(j);
	}
	return kExitOk;
}

int Command::eval() {
	Theory t = theory();
	EvalMode mode;
	if (o_.mode == "kleene" || o_.mode == "k") {
		mode = EvalMode::Kleene;
	} else if (o_.mode == "super" || o_.mode == "supervaluation" || o_.mode == "s") {
		mode = EvalMode::Supervaluation;
	} else {
		throw InputError("unknown mode '" + o_.mode + "'; use kleene or super");
	}
	Interpretation i = structure(t);
	std::vector<const NamedFormula*> selected;
	if (!o_.formula.empty()) {
		const NamedFormula* f = t.formula(o_.formula);
		if (f == nullptr) {
			throw InputError("no formula named '" + o_.formula + "'");
		}
		selected.push_back(f);
	} else {
		for (const NamedFormula& f : t.formulas) {
			selected.push_back(&f);
		}
	}
	Json results = Json::array();
	for (const NamedFormula* f : selected) {
		TV v = soid::eval(f->formula, i, mode, limits_);
		if (o_.json) {
			results.push_back({{"name", f->name}, {"value", to_string(v)}});
		} else {
			out_ << f->name << ": " << tv(v) << "\n";
		}
	}
	if (o_.json) {
		Json j;
		j["mode"] = mode == EvalMode::Kleene ? "kleene" : "super";
		j["results"] = std::move(results);
		emit(j);
	}
	return kExitOk;
}

int Command::wfm() {
	Theory t = theory();
	const NamedDefinition& d = pick_definition(t);
	Interpretation ctx = structure(t);
	auto m = well_founded_model(*d.rules, ctx, limits_);
	const auto defs = d.rules->defined();
	Interpretation shown = restrict(*m, std::set<Symbol>(defs.begin(), defs.end()));
	std::size_t unknown = 0;
	for (Symbol s : defs) {
		unknown += shown.table(s).count(TV::U);
	}
	if (o_.json) {
		Json j;
		j["definition"] = d.name;
		j["total"] = unknown == 0;
		j["unknown_atoms"] = unknown;
		j["model"] = structure_json(shown);
		emit(j);
	} else {
		out_ << "% well-founded model of " << d.name << ": ";
		if (unknown == 0) {
			out_ << "total\n";
		} else {
			out_ << "not total, " << unknown << " unknown atom" << (unknown == 1 ? "" : "s") << "\n";
		}
		out_ << write_structure(shown);
	}
	return unknown == 0 ? kExitOk : kExitNoModel;
}

int Command::stable() {
	Theory t = theory();
	const NamedDefinition& d = pick_definition(t);
	Interpretation ctx = structure(t);
	auto models = stable_models(*d.rules, ctx, limits_);
	const auto defs = d.rules->defined();
	const std::set<Symbol> keep(defs.begin(), defs.end());
	if (o_.json) {
		Json ms = Json::array();
		for (const Interpretation& m : models) {
			ms.push_back(structure_json(restrict(m, keep)));
		}
		Json j;
		j["definition"] = d.name;
		j["count"] = models.size();
		j["models"] = std::move(ms);
		emit(j);
	} else {
		for (std::size_t k = 0; k < models.size(); ++k) {
			out_ << "% stable model " << k + 1 << " of " << d.name << "\n" << write_structure(restrict(models[k], keep));
		}
		out_ << "% " << models.size() << " stable model" << (models.size() == 1 ? "" : "s") << "\n";
	}
	return models.empty() ? kExitNoModel : kExitOk;
}

int Command::mx() {
	Theory t = theory();
	Interpretation input = load_structure(o_.structure, &t, limits_);
	std::set<Symbol> keep;
	for (Symbol s : t.user_vocabulary().symbols()) {
		keep.insert(s);
	}
	for (Symbol s : input.symbols()) {
		keep.insert(s);
	}
	Json ms = Json::array();
	std::size_t n = model_expand(t, input, [&](const Interpretation& m) {
		Interpretation shown = restrict(m, keep);
		if (o_.json) {
			ms.push_back(structure_json(shown));
		} else {
			out_ << "% model " << ms.size() + 1 << "\n" << write_structure(shown);
			ms.push_back(nullptr);
		}
		return o_.max_models == 0 || ms.size() < o_.max_models;
	}, limits_);
	if (o_.json) {
		Json j;
		j["count"] = n;
		j["models"] = std::move(ms);
		emit(j);
	} else {
		out_ << "% " << n << " model" << (n == 1 ? "" : "s") << "\n";
	}
	return n == 0 ? kExitNoModel : kExitOk;
}

int Command::expand() {
	Theory t = theory();
	const TemplateLibrary lib = t.library();
	Theory e;
	e.declared = t.user_vocabulary();
	e.vocab = e.declared;
	for (const NamedDefinition& d : t.definitions) {
		Expr x = macro_expand(make_definition(d.rules), lib);
		e.definitions.push_back({d.name, x->rules});
	}
	for (const NamedFormula& f : t.formulas) {
		e.formulas.push_back({f.name, macro_expand(f.formula, lib)});
	}
	Json j;
	const std::string text = write_theory(e);
	if (o_.json) {
		j["theory"] = text;
	} else {
		out_ << text;
	}
	int code = kExitOk;
	if (o_.check_equiv) {
		auto r = check_sigma_equivalence(sentence(t), &lib, sentence(e), {}, t.user_vocabulary(), check_domains(),
		                                 limits_);
		code = report_equivalence(r, o_.json ? &j : nullptr);
	}
	if (o_.json) {
		emit(j);
	}
	return code;
}

int Command::eliminate_so() {
	Theory t = theory();
	Theory e = t;
	Vocabulary seen = t.vocab;
	Vocabulary added;
	for (NamedFormula& f : e.formulas) {
		Skolemized s = soid::eliminate_so(f.formula, seen);
		f.formula = s.formula;
		seen.merge(s.added);
		added.merge(s.added);
	}
	e.declared.merge(added);
	e.vocab.merge(added);
	Json j;
	const std::string text = write_theory(e);
	if (o_.json) {
		j["theory"] = text;
		Json fresh = Json::array();
		for (Symbol s : added.symbols()) {
			fresh.push_back({{"name", s.name()}, {"type", to_string(added.type(s))}});
		}
		j["added"] = std::move(fresh);
	} else {
		out_ << text;
	}
	int code = kExitOk;
	if (o_.check_equiv) {
		const TemplateLibrary lib = t.library();
		auto r = check_sigma_equivalence(sentence(t), &lib, sentence(e), added, t.user_vocabulary(), check_domains(),
		                                 limits_);
		code = report_equivalence(r, o_.json ? &j : nullptr);
	}
	if (o_.json) {
		emit(j);
	}
	return code;
}

int Command::validate_lib() {
	Theory t = theory();
	const TemplateLibrary lib = t.library();
	std::vector<DomainPtr> domains;
	for (std::size_t n : o_.sizes) {
		std::vector<std::string> names;
		for (std::size_t k = 1; k <= n; ++k) {
			names.push_back("d" + std::to_string(k));
		}
		domains.push_back(Domain::make(std::move(names)));
	}
	for (const std::string& f : o_.domain_files) {
		domains.push_back(load_structure(f, &t, limits_).domain_ptr());
	}
	LibraryReport r = validate_library(lib, domains, limits_);
	if (o_.json) {
		Json j;
		j["valid"] = r.valid;
		Json order = Json::array();
		for (Symbol s : r.order) {
			order.push_back(s.name());
		}
		j["order"] = std::move(order);
		j["contexts_checked"] = r.contexts_checked;
		Json issues = Json::array();
		for (const LibraryIssue& i : r.issues) {
			issues.push_back({{"kind", to_string(i.kind)}, {"message", i.message}});
		}
		j["issues"] = std::move(issues);
		emit(j);
	} else {
		for (const LibraryIssue& i : r.issues) {
			out_ << "issue " << to_string(i.kind) << ": " << i.message << "\n";
		}
		if (!r.order.empty()) {
			out_ << "order:";
			for (Symbol s : r.order) {
				out_ << " " << s.name();
			}
			out_ << "\n";
		}
		out_ << "contexts checked: " << r.contexts_checked << "\n" << (r.valid ? "valid" : "invalid") << "\n";
	}
	return r.valid ? kExitOk : kExitNoModel;
}

int Command::apply_lib() {
	Theory t = theory();
	Interpretation i = load_structure(o_.structure, &t, limits_);
	Interpretation out = apply_library(i, t.library(), limits_);
	if (o_.json) {
		emit(structure_json(out));
	} else {
		out_ << write_structure(out);
	}
	return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
	Options o;
	CLI::App app{"Three-valued evaluation, well-founded and stable models, and second order templates.", "soid"};
	app.require_subcommand(1);
	app.fallthrough();
	app.add_flag("--json", o.json, "Structured output");
	app.add_flag("--color", o.color, "Colour truth values");
	app.add_option("--max-atoms", o.max_atoms, "Cap on enumerated atoms (model expansion, stable models, subset searches)");
	app.add_option("--max-completions", o.max_completions, "Cap on completions of one enumeration");
	app.add_option("--max-relation-cells", o.max_relation_cells, "Cap on |D|^n of relations passed to second order symbols");

	auto theory_arg = [&](CLI::App* sub, const char* what = "Theory file") {
		sub->add_option("theory", o.theory, what)->required();
	};
	auto structure_arg = [&](CLI::App* sub) { sub->add_option("structure", o.structure, "Structure file")->required(); };

	CLI::App* typecheck = app.add_subcommand("typecheck", "Check types and print the vocabulary");
	theory_arg(typecheck);
	CLI::App* classify = app.add_subcommand("classify", "Smallest fragment of each formula and definition");
	theory_arg(classify);
	CLI::App* eval = app.add_subcommand("eval", "Evaluate formulas in a structure");
	theory_arg(eval);
	structure_arg(eval);
	eval->add_option("-m,--mode", o.mode, "kleene or super")->capture_default_str();
	eval->add_option("-f,--formula", o.formula, "Only this formula");
	CLI::App* wfm = app.add_subcommand("wfm", "Well-founded model of a definition in a context");
	theory_arg(wfm);
	structure_arg(wfm);
	wfm->add_option("-d,--definition", o.definition, "Definition block name");
	CLI::App* stable = app.add_subcommand("stable", "All stable models of a definition in a context");
	theory_arg(stable);
	structure_arg(stable);
	stable->add_option("-d,--definition", o.definition, "Definition block name");
	CLI::App* mx = app.add_subcommand("mx", "Model expansion");
	theory_arg(mx);
	structure_arg(mx);
	mx->add_option("-n,--models", o.max_models, "Stop after this many models (0: all)");
	CLI::App* expand = app.add_subcommand("expand", "Macro-expand template atoms");
	theory_arg(expand);
	expand->add_flag("--check-equiv", o.check_equiv, "Check equivalence on domains of size 1 and 2");
	CLI::App* elim = app.add_subcommand("eliminate-so", "Replace existential second order quantifiers by fresh symbols");
	theory_arg(elim);
	elim->add_flag("--check-equiv", o.check_equiv, "Check equivalence on domains of size 1 and 2");
	CLI::App* validate = app.add_subcommand("validate-lib", "Check the library conditions");
	theory_arg(validate, "Library file");
	validate->add_option("--sizes", o.sizes, "Test domain sizes")->delimiter(',')->capture_default_str();
	validate->add_option("--domain", o.domain_files, "Structure file whose domain is also tested");
	CLI::App* apply = app.add_subcommand("apply-lib", "Expand a structure with the template symbols");
	theory_arg(apply, "Library file");
	structure_arg(apply);

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try {
		app.parse(reversed);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? kExitOk : kExitInputError;
	}

	Command cmd(o, out, err);
	auto fail = [&](int code, const char* kind, const std::string& msg) {
		if (o.json) {
			Json j;
			j["error"] = {{"kind", kind}, {"message", msg}};
			out << j.dump(2) << "\n";
		} else {
			err << "error: " << msg << "\n";
		}
		return code;
	};
	try {
		if (typecheck->parsed()) {
			return cmd.typecheck();
		}
		if (classify->parsed()) {
			return cmd.classify();
		}
		if (eval->parsed()) {
			return cmd.eval();
		}
		if (wfm->parsed()) {
			return cmd.wfm();
		}
		if (stable->parsed()) {
			return cmd.stable();
		}
		if (mx->parsed()) {
			return cmd.mx();
		}
		if (expand->parsed()) {
			return cmd.expand();
		}
		if (elim->parsed()) {
			return cmd.eliminate_so();
		}
		if (validate->parsed()) {
			return cmd.validate_lib();
		}
		if (apply->parsed()) {
			return cmd.apply_lib();
		}
	} catch (const CapExceeded& e) {
		return fail(kExitCap, "cap", e.what());
	} catch (const NonTotalDefinition& e) {
		return fail(kExitNoModel, "not-total", e.what());
	} catch (const InputError& e) {
		return fail(kExitInputError, "input", e.what());
	}
	return kExitInputError;
}

} // namespace soid
