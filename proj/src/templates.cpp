#include "soid/templates.hpp"

#include "rewriter.hpp"
#include "soid/analysis.hpp"
#include "soid/definitions.hpp"
#include "soid/errors.hpp"
#include "soid/evaluator.hpp"
#include "soid/structure_io.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace soid {

std::vector<Symbol> TemplateLibrary::template_symbols() const {
	std::set<Symbol> all;
	for (const Template& t : templates) {
		for (Symbol s : t.rules->defined()) {
			all.insert(s);
		}
	}
	std::vector<Symbol> out(all.begin(), all.end());
	std::sort(out.begin(), out.end(), SymbolNameLess{});
	return out;
}

bool TemplateLibrary::is_template_symbol(Symbol s) const { return defining(s) != nullptr; }

const Template* TemplateLibrary::defining(Symbol s) const {
	for (const Template& t : templates) {
		if (t.rules->defines(s)) {
			return &t;
		}
	}
	return nullptr;
}

TemplateLibrary make_library(std::vector<Template> templates, const Vocabulary& interpreted) {
	TemplateLibrary l;
	l.vocab = interpreted;
	for (const Template& t : templates) {
		for (const auto& [s, ty] : defined_types(*t.rules)) {
			l.vocab.add(s, ty, kTemplate);
		}
	}
	l.templates = std::move(templates);
	return l;
}

std::string to_string(LibraryIssue::Kind k) {
	switch (k) {
	case LibraryIssue::Kind::DuplicateDefinition: return "duplicate-definition";
	case LibraryIssue::Kind::ForeignSymbol: return "foreign-symbol";
	case LibraryIssue::Kind::Cycle: return "cycle";
	case LibraryIssue::Kind::NotTotal: return "not-total";
	case LibraryIssue::Kind::Invalid: return "invalid";
	}
	return "?";
}

namespace {

/// Template indices in dependency order, or the symbols of a cycle.
struct TemplateOrder {
	std::vector<std::size_t> order;
	std::vector<Symbol> cycle;
};

TemplateOrder order_templates(const TemplateLibrary& l) {
	const std::size_t n = l.templates.size();
	std::vector<std::set<std::size_t>> uses(n);
	for (std::size_t k = 0; k < n; ++k) {
		for (Symbol q : parameters(*l.templates[k].rules)) {
			for (std::size_t j = 0; j < n; ++j) {
				if (j != k && l.templates[j].rules->defines(q)) {
					uses[k].insert(j);
				}
			}
		}
	}
	auto key = [&](std::size_t k) {
		auto defs = l.templates[k].rules->defined();
		return std::make_pair(defs.empty() ? std::string() : defs.front().name(), k);
	};
	TemplateOrder out;
	std::vector<char> done(n, 0);
	for (std::size_t round = 0; round < n; ++round) {
		std::optional<std::size_t> pick;
		for (std::size_t k = 0; k < n; ++k) {
			if (done[k] != 0) {
				continue;
			}
			bool ready = std::all_of(uses[k].begin(), uses[k].end(), [&](std::size_t j) { return done[j] != 0; });
			if (ready && (!pick || key(k) < key(*pick))) {
				pick = k;
			}
		}
		if (!pick) {
			break;
		}
		done[*pick] = 1;
		out.order.push_back(*pick);
	}
	if (out.order.size() == n) {
		return out;
	}
	// walk unresolved dependencies until a template repeats
	std::size_t cur = 0;
	while (done[cur] != 0) {
		++cur;
	}
	std::vector<std::size_t> path;
	while (std::find(path.begin(), path.end(), cur) == path.end()) {
		path.push_back(cur);
		for (std::size_t j : uses[cur]) {
			if (done[j] == 0) {
				cur = j;
				break;
			}
		}
	}
	auto start = std::find(path.begin(), path.end(), cur);
	for (auto it = start; it != path.end(); ++it) {
		out.cycle.push_back(l.templates[*it].rules->defined().front());
	}
	out.cycle.push_back(l.templates[cur].rules->defined().front());
	return out;
}

std::string join(const std::vector<Symbol>& syms, const char* sep) {
	std::string out;
	for (std::size_t k = 0; k < syms.size(); ++k) {
		out += (k ? sep : "") + syms[k].name();
	}
	return out;
}

std::vector<Symbol> symbol_order(const TemplateLibrary& l, const std::vector<std::size_t>& order) {
	std::vector<Symbol> out;
	for (std::size_t k : order) {
		for (Symbol s : l.templates[k].rules->defined()) {
			out.push_back(s);
		}
	}
	return out;
}

std::size_t table_cells(const Vocabulary& v, const Domain& dom, const Limits& limits) {
	std::size_t n = 0;
	for (Symbol s : v.symbols()) {
		const Type& t = v.type(s);
		if (!t.has_table()) {
			continue;
		}
		std::size_t cells = 1;
		for (const ArgType& a : t.args) {
			cells *= static_cast<std::size_t>(arg_radix(dom.size(), a, limits));
		}
		n += cells;
	}
	return n;
}

} // namespace

std::vector<Symbol> stratify(const TemplateLibrary& l) {
	TemplateOrder o = order_templates(l);
	if (!o.cycle.empty()) {
		throw InputError("template dependency cycle: " + join(o.cycle, " -> "));
	}
	return symbol_order(l, o.order);
}

LibraryReport validate_library(const TemplateLibrary& l, const std::vector<DomainPtr>& test_domains,
                               const Limits& limits) {
	LibraryReport r;
	std::map<Symbol, std::vector<std::string>> definers;
	for (const Template& t : l.templates) {
		for (Symbol s : t.rules->defined()) {
			definers[s].push_back(t.name);
		}
	}
	for (const auto& [s, names] : definers) {
		if (names.size() > 1) {
			std::string list;
			for (const std::string& n : names) {
				list += (list.empty() ? "" : ", ") + n;
			}
			r.issues.push_back({LibraryIssue::Kind::DuplicateDefinition,
			                    "'" + s.name() + "' is defined in several templates: " + list});
		}
	}
	for (const Template& t : l.templates) {
		const std::set<Symbol> par_set = parameters(*t.rules);
		std::vector<Symbol> pars(par_set.begin(), par_set.end());
		std::sort(pars.begin(), pars.end(), SymbolNameLess{});
		for (Symbol p : pars) {
			const auto* e = l.vocab.find(p);
			const bool allowed = l.is_template_symbol(p) || (e != nullptr && (e->flags & kInterpreted) != 0);
			if (!allowed) {
				r.issues.push_back({LibraryIssue::Kind::ForeignSymbol,
				                    "template " + t.name + " uses '" + p.name() + "', which is neither a template "
				                    "symbol nor interpreted"});
			}
		}
		for (const Diagnostic& d : typecheck(*t.rules, l.vocab)) {
			r.issues.push_back({LibraryIssue::Kind::Invalid, "template " + t.name + ": " + std::to_string(d.loc.line) +
			                                                     ":" + std::to_string(d.loc.column) + ": " + d.message});
		}
	}
	TemplateOrder order = order_templates(l);
	if (!order.cycle.empty()) {
		r.issues.push_back({LibraryIssue::Kind::Cycle, "templates are not stratified: " + join(order.cycle, " -> ")});
	} else {
		r.order = symbol_order(l, order.order);
	}
	if (!r.issues.empty()) {
		return r;
	}

	for (const DomainPtr& dom : test_domains) {
		Interpretation lower(dom);
		for (std::size_t k : order.order) {
			const Template& t = l.templates[k];
			const std::set<Symbol> pars = parameters(*t.rules);
			Vocabulary pv;
			for (Symbol p : pars) {
				pv.add(p, l.vocab.type(p));
			}
			auto check = [&](const Interpretation& ctx) {
				++r.contexts_checked;
				if (!is_total(*t.rules, ctx, limits)) {
					r.issues.push_back({LibraryIssue::Kind::NotTotal,
					                    "template " + t.name + " has no exact well-founded model over a domain of " +
					                        std::to_string(dom->size()) + " elements in context:\n" +
					                        write_structure(ctx)});
					return false;
				}
				return true;
			};
			if (!pars.empty() && table_cells(pv, *dom, limits) <= limits.max_subset_atoms) {
				for_each_structure(Interpretation(dom), pv, check, limits);
			} else {
				check(restrict(lower, pars));
			}
			if (!r.issues.empty()) {
				return r;
			}
			auto wfm = well_founded_model(*t.rules, lower, limits);
			lower = *wfm;
		}
	}
	r.valid = true;
	return r;
}

Interpretation apply_library(const Interpretation& i, const TemplateLibrary& l, const Limits& limits) {
	for (Symbol s : l.template_symbols()) {
		if (i.interprets(s)) {
			throw InputError("the structure already interprets the template symbol '" + s.name() + "'");
		}
	}
	TemplateOrder order = order_templates(l);
	if (!order.cycle.empty()) {
		throw InputError("template dependency cycle: " + join(order.cycle, " -> "));
	}
	Interpretation ctx(i.domain_ptr());
	for (std::size_t k : order.order) {
		const Template& t = l.templates[k];
		auto wfm = well_founded_model(*t.rules, ctx, limits);
		for (Symbol s : t.rules->defined()) {
			if (!wfm->table(s).is_exact()) {
				throw NonTotalDefinition("template " + t.name + " has no exact well-founded model for '" + s.name() +
				                         "' over this domain");
			}
		}
		ctx = std::move(*wfm);
	}
	Interpretation out = i;
	for (const auto& [s, v] : ctx.values()) {
		out.set(s, v);
	}
	return out;
}

// -- templification ---------------------------------------------------------

std::vector<Symbol> open_symbols(const RuleSet& d, const Vocabulary& sigma) {
	std::vector<Symbol> out;
	for (Symbol s : parameters(d)) {
		const auto* e = sigma.find(s);
		if (e != nullptr && (e->flags & (kTemplate | kInterpreted)) != 0) {
			continue;
		}
		out.push_back(s);
	}
	std::sort(out.begin(), out.end(), SymbolNameLess{});
	return out;
}

namespace {

std::string primed(const std::string& name, const Vocabulary& sigma, const RuleSet& d) {
	std::string n = name + "'";
	while (sigma.contains(Symbol(n)) || d.defines(Symbol(n))) {
		n += "'";
	}
	return n;
}

class Templifier : public detail::Rewriter {
public:
	Templifier(const Templified& t, NameGenerator& gen) : t_(t), gen_(gen) {}

protected:
	std::optional<Symbol> rename_binder(Symbol s) override {
		if (std::find(t_.open.begin(), t_.open.end(), s) != t_.open.end()) {
			return gen_.fresh(s.name());
		}
		return std::nullopt;
	}

	std::optional<Symbol> renamed(Symbol s) const {
		for (const auto& [from, to] : t_.renamed) {
			if (from == s) {
				return to;
			}
		}
		return std::nullopt;
	}

	Expr free_atom(const Node& n, std::vector<TermPtr> args) override {
		auto to = renamed(n.pred);
		if (!to) {
			return make_atom(n.pred, std::move(args), n.loc);
		}
		for (Symbol o : t_.open) {
			args.push_back(Term::make_name(o));
		}
		return make_atom(*to, std::move(args), n.loc);
	}

	Rule free_head(const Rule&, Rule built) override {
		if (auto to = renamed(built.head)) {
			built.head = *to;
			for (Symbol o : t_.open) {
				built.head_args.push_back(Term::make_name(o));
			}
		}
		return built;
	}

private:
	const Templified& t_;
	NameGenerator& gen_;
};

} // namespace

Templified templify(const RuleSet& d, const std::vector<Symbol>& open, const Vocabulary& sigma) {
	Templified out;
	out.open = open;
	std::vector<TypedVar> open_vars;
	for (Symbol o : open) {
		const auto* e = sigma.find(o);
		if (e == nullptr || !e->type.is_first_order_predicate()) {
			throw InputError("open symbol '" + o.name() + "' must be a first order predicate");
		}
		if (d.defines(o)) {
			throw InputError("open symbol '" + o.name() + "' is defined by the rule set");
		}
		open_vars.push_back({o, e->type});
	}
	for (const auto& [s, ty] : defined_types(d)) {
		Symbol to = open.empty() ? s : Symbol(primed(s.name(), sigma, d));
		Type ext = ty;
		for (const TypedVar& v : open_vars) {
			ext.args.push_back(ArgType::relation(v.type.arity()));
		}
		out.renamed.emplace_back(s, to);
		out.vocab.add(to, ext, kTemplate);
	}
	NameGenerator gen;
	gen.reserve_all(d);
	for (Symbol s : sigma.symbols()) {
		gen.reserve(s);
	}
	Templifier rw(out, gen);
	RuleSetPtr body = rw.rules(d);
	out.rules = *body;
	for (Rule& r : out.rules.rules) {
		for (const TypedVar& v : open_vars) {
			r.vars.push_back(v);
		}
	}
	return out;
}

bool check_correspondence(const RuleSet& d, const Templified& t, const Interpretation& i, const Interpretation& it) {
	for (const auto& [s, v] : i.values()) {
		if (const SymbolValue* w = it.find(s); w != nullptr && !(*w == v)) {
			return false;
		}
	}
	std::vector<ArgValue> open_values;
	for (Symbol o : t.open) {
		const PredTable& ot = i.table(o);
		if (!ot.is_exact()) {
			throw InputError("open symbol '" + o.name() + "' is not exact");
		}
		open_values.push_back(ot.true_mask());
	}
	for (const auto& [p, pp] : t.renamed) {
		if (!d.defines(p)) {
			continue;
		}
		const PredTable& pt = i.table(p);
		const PredTable& ppt = it.table(pp);
		for (std::size_t idx = 0; idx < pt.size(); ++idx) {
			std::vector<ArgValue> args = pt.decode(idx);
			args.insert(args.end(), open_values.begin(), open_values.end());
			if (ppt.get(args) != pt.at(idx)) {
				return false;
			}
		}
	}
	return true;
}

// -- rewriting ----------------------------------------------------------------

namespace {

void collect_names(const TermPtr& t, std::set<std::string>& out) {
	if (!t) {
		return;
	}
	if (t->kind == Term::Kind::Name) {
		out.insert(t->name.name());
	}
	collect_names(t->lhs, out);
	collect_names(t->rhs, out);
}

void collect_names(const RuleSet& d, std::set<std::string>& out);

void collect_names(const Expr& e, std::set<std::string>& out) {
	out.insert(e->pred.valid() ? e->pred.name() : std::string());
	for (const TermPtr& t : e->args) {
		collect_names(t, out);
	}
	collect_names(e->lhs, out);
	collect_names(e->rhs, out);
	if (e->kind == NodeKind::Quant) {
		out.insert(e->var.name.name());
	}
	for (const TypedVar& v : e->agg_vars) {
		out.insert(v.name.name());
	}
	for (const Expr& c : e->children) {
		collect_names(c, out);
	}
	if (e->rules) {
		collect_names(*e->rules, out);
	}
}

void collect_names(const RuleSet& d, std::set<std::string>& out) {
	for (const Rule& r : d.rules) {
		out.insert(r.head.name());
		for (const TermPtr& t : r.head_args) {
			collect_names(t, out);
		}
		for (const TypedVar& v : r.vars) {
			out.insert(v.name.name());
		}
		collect_names(r.body, out);
	}
}

std::string strip_suffix(const std::string& s) {
	auto pos = s.find_last_of('_');
	if (pos == std::string::npos || pos == 0 || pos + 1 == s.size()) {
		return s;
	}
	for (std::size_t k = pos + 1; k < s.size(); ++k) {
		if (s[k] < '0' || s[k] > '9') {
			return s;
		}
	}
	return s.substr(0, pos);
}

} // namespace

void NameGenerator::reserve_all(const Expr& e) { collect_names(e, used_); }
void NameGenerator::reserve_all(const RuleSet& d) { collect_names(d, used_); }

Symbol NameGenerator::fresh(const std::string& base) {
	const std::string b = strip_suffix(base);
	int& k = next_[b];
	for (;;) {
		std::string candidate = b + "_" + std::to_string(++k);
		if (used_.insert(candidate).second) {
			return Symbol(candidate);
		}
	}
}

namespace {

/// Renames every binder to a fresh name and substitutes the template's variables.
class Instantiator : public detail::Rewriter {
public:
	Instantiator(NameGenerator& gen, std::vector<std::pair<Symbol, TermPtr>> subst)
		: gen_(gen), subst_(std::move(subst)) {}

protected:
	std::optional<Symbol> rename_binder(Symbol s) override { return gen_.fresh(s.name()); }

	const TermPtr* find(Symbol s) const {
		for (const auto& [from, to] : subst_) {
			if (from == s) {
				return &to;
			}
		}
		return nullptr;
	}

	TermPtr free_name(const TermPtr& t) override {
		const TermPtr* r = find(t->name);
		return r != nullptr ? *r : t;
	}

	Expr free_atom(const Node& n, std::vector<TermPtr> args) override {
		const TermPtr* r = find(n.pred);
		if (r == nullptr) {
			return make_atom(n.pred, std::move(args), n.loc);
		}
		if ((*r)->kind != Term::Kind::Name) {
			throw InputError("relation argument of a template must be a symbol");
		}
		return make_atom((*r)->name, std::move(args), n.loc);
	}

private:
	NameGenerator& gen_;
	std::vector<std::pair<Symbol, TermPtr>> subst_;
};

class Expander : public detail::Rewriter {
public:
	Expander(const TemplateLibrary& l, NameGenerator& gen) : l_(l), gen_(gen) {}

protected:
	Expr free_atom(const Node& n, std::vector<TermPtr> args) override {
		const Template* tpl = l_.defining(n.pred);
		if (tpl == nullptr) {
			return make_atom(n.pred, std::move(args), n.loc);
		}
		if (std::find(active_.begin(), active_.end(), n.pred) != active_.end()) {
			throw InputError("template '" + n.pred.name() + "' is used recursively; it cannot be expanded as a macro");
		}
		const Rule& r = tpl->rules->rules.front();
		if (args.size() != r.head_args.size()) {
			throw InputError("'" + n.pred.name() + "' expects " + std::to_string(r.head_args.size()) + " arguments");
		}
		std::vector<std::pair<Symbol, TermPtr>> subst;
		for (std::size_t k = 0; k < args.size(); ++k) {
			subst.emplace_back(r.head_args[k]->name, args[k]);
		}
		Instantiator inst(gen_, std::move(subst));
		Expr body = inst.expr(r.body);
		active_.push_back(n.pred);
		Expr out = expr(body);
		active_.pop_back();
		return out;
	}

private:
	const TemplateLibrary& l_;
	NameGenerator& gen_;
	std::vector<Symbol> active_;
};

bool simple_shape(const Template& tpl, std::string* why) {
	const RuleSet& d = *tpl.rules;
	if (d.rules.size() != 1) {
		*why = "has " + std::to_string(d.rules.size()) + " rules";
		return false;
	}
	const Rule& r = d.rules.front();
	std::vector<Symbol> seen;
	for (const TermPtr& t : r.head_args) {
		if (t->kind != Term::Kind::Name ||
		    std::none_of(r.vars.begin(), r.vars.end(), [&](const TypedVar& v) { return v.name == t->name; }) ||
		    std::find(seen.begin(), seen.end(), t->name) != seen.end()) {
			*why = "head arguments are not distinct variables";
			return false;
		}
		seen.push_back(t->name);
	}
	if (!head_type(r).is_second_order_predicate()) {
		*why = "head '" + r.head.name() + "' is not a second order atom";
		return false;
	}
	return true;
}

Vocabulary with_rule_vars(const Vocabulary& sigma, const Rule& r) {
	Vocabulary v;
	for (Symbol s : sigma.symbols()) {
		if (std::none_of(r.vars.begin(), r.vars.end(), [&](const TypedVar& tv) { return tv.name == s; })) {
			v.add(s, sigma.type(s), sigma.find(s)->flags);
		}
	}
	for (const TypedVar& tv : r.vars) {
		v.add(tv.name, tv.type);
	}
	return v;
}

void require_simple(const TemplateLibrary& l, NameGenerator& gen) {
	for (const Template& tpl : l.templates) {
		std::string why;
		if (!simple_shape(tpl, &why)) {
			throw InputError("template " + tpl.name + " is not simple: " + why);
		}
		const Rule& r = tpl.rules->rules.front();
		Expander ex(l, gen);
		Expr body = ex.expr(r.body);
		if (!in_fo(body, with_rule_vars(l.vocab, r))) {
			throw InputError("template " + tpl.name + " is not simple: its expanded body is not in FO(ID*)");
		}
	}
}

} // namespace

bool is_simple_template(const Template& tpl, const Vocabulary& sigma) {
	std::string why;
	if (!simple_shape(tpl, &why)) {
		return false;
	}
	const Rule& r = tpl.rules->rules.front();
	return in_fo(r.body, with_rule_vars(sigma, r));
}

Expr macro_expand(const Expr& phi, const TemplateLibrary& l) {
	NameGenerator gen;
	gen.reserve_all(phi);
	for (const Template& t : l.templates) {
		gen.reserve_all(*t.rules);
	}
	{
		NameGenerator scratch = gen;
		require_simple(l, scratch);
	}
	Expander ex(l, gen);
	return ex.expr(phi);
}

namespace {

class Skolemizer : public detail::Rewriter {
public:
	Skolemizer(const Vocabulary& sigma, NameGenerator& gen, Skolemized& out) : sigma_(sigma), gen_(gen), out_(out) {}

	Expr expr(const Expr& e) override {
		const Node& n = *e;
		switch (n.kind) {
		case NodeKind::Not: {
			positive_ = !positive_;
			Expr c = expr(n.body());
			positive_ = !positive_;
			return make_not(std::move(c), n.loc);
		}
		case NodeKind::Implies: {
			positive_ = !positive_;
			Expr a = expr(n.children[0]);
			positive_ = !positive_;
			Expr b = expr(n.children[1]);
			return make_implies(std::move(a), std::move(b), n.loc);
		}
		case NodeKind::Iff: {
			++under_iff_;
			Expr r = rebuild(e);
			--under_iff_;
			return r;
		}
		case NodeKind::Quant: return quant(n);
		default: return rebuild(e);
		}
	}

protected:
	std::optional<Symbol> rename_binder(Symbol s) override {
		for (const auto& ext : skolem_ext_) {
			if (std::find(ext.begin(), ext.end(), s) != ext.end()) {
				return gen_.fresh(s.name());
			}
		}
		return std::nullopt;
	}

	Expr bound_atom(const Entry& b, const Node& n, std::vector<TermPtr> args) override {
		if (b.tag >= 0) {
			for (Symbol x : skolem_ext_[static_cast<std::size_t>(b.tag)]) {
				args.push_back(Term::make_name(x));
			}
		}
		return make_atom(b.to, std::move(args), n.loc);
	}

	TermPtr bound_name(const Entry& b, const TermPtr& t) override {
		if (b.tag >= 0 && !skolem_ext_[static_cast<std::size_t>(b.tag)].empty()) {
			throw InputError("cannot switch the quantifier over '" + t->name.name() +
			                 "': it is passed as a relation argument");
		}
		return Rewriter::bound_name(b, t);
	}

private:
	static constexpr int kUniversal = -2;
	static constexpr int kExistential = -3;

	Expr quant(const Node& n) {
		if (!n.var.type.is_predicate()) {
			const bool universal = (n.quant == Quantifier::Forall) == positive_;
			const std::size_t m = mark();
			TypedVar v{push(n.var.name, universal ? kUniversal : kExistential), n.var.type};
			Expr body = expr(n.body());
			pop_to(m);
			return make_quant(n.quant, std::move(v), std::move(body), n.loc);
		}
		const bool existential = (n.quant == Quantifier::Exists) == positive_;
		if (!existential || under_iff_ > 0) {
			throw InputError("second order quantifier over '" + n.var.name.name() +
			                 "' is not existential; the formula is not in ESO(ID*)");
		}
		// universal first order variables visible here, innermost first
		std::vector<Symbol> ext;
		std::vector<Symbol> seen;
		for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
			if (std::find(seen.begin(), seen.end(), it->to) != seen.end()) {
				continue;
			}
			seen.push_back(it->to);
			if (it->tag == kUniversal) {
				ext.push_back(it->to);
			}
		}
		Symbol fresh = gen_.fresh(n.var.name.name());
		Type ty = n.var.type;
		for (std::size_t k = 0; k < ext.size(); ++k) {
			ty.args.push_back(ArgType::element());
		}
		out_.added.add(fresh, ty);
		out_.replaced.emplace_back(n.var.name, fresh);
		skolem_ext_.push_back(ext);
		const std::size_t m = mark();
		scope_.push_back({n.var.name, fresh, static_cast<int>(skolem_ext_.size() - 1)});
		Expr body = expr(n.body());
		pop_to(m);
		skolem_ext_.back().clear();
		return body;
	}

	const Vocabulary& sigma_;
	NameGenerator& gen_;
	Skolemized& out_;
	bool positive_ = true;
	int under_iff_ = 0;
	std::vector<std::vector<Symbol>> skolem_ext_;
};

} // namespace

Skolemized eliminate_so(const Expr& phi, const Vocabulary& sigma) {
	Skolemized out;
	NameGenerator gen;
	gen.reserve_all(phi);
	for (Symbol s : sigma.symbols()) {
		gen.reserve(s);
	}
	Skolemizer sk(sigma, gen, out);
	out.formula = sk.expr(phi);
	return out;
}

void for_each_structure(const Interpretation& base, const Vocabulary& sigma,
                        const std::function<bool(const Interpretation&)>& visit, const Limits& limits) {
	Interpretation work = base;
	struct Slot {
		Symbol sym;
		bool constant;
		std::vector<std::size_t> cells;
	};
	std::vector<Slot> slots;
	std::size_t unknown = 0;
	std::uint64_t total = 1;
	const std::size_t dsize = base.domain().size();
	for (Symbol s : sigma.symbols()) {
		const Type& ty = sigma.type(s);
		if (ty.is_element()) {
			if (!work.interprets(s)) {
				if (dsize == 0) {
					return;
				}
				work.set_element(s, 0);
				slots.push_back({s, true, {}});
				total *= dsize;
			}
			continue;
		}
		if (!work.interprets(s)) {
			work.set_table(s, PredTable(base.domain_ptr(), ty, TV::U, limits));
		}
		const PredTable& t = work.table(s);
		Slot slot{s, false, {}};
		for (std::size_t idx = 0; idx < t.size(); ++idx) {
			if (t.at(idx) == TV::U) {
				slot.cells.push_back(idx);
			}
		}
		unknown += slot.cells.size();
		if (!slot.cells.empty()) {
			slots.push_back(std::move(slot));
		}
	}
	if (unknown > limits.max_mx_atoms) {
		throw CapExceeded(std::to_string(unknown) + " open atoms exceed max_mx_atoms=" +
		                  std::to_string(limits.max_mx_atoms));
	}
	total <<= unknown;
	if (total > limits.max_completions) {
		throw CapExceeded(std::to_string(total) + " structures exceed max_completions=" +
		                  std::to_string(limits.max_completions));
	}
	for (Slot& s : slots) {
		if (!s.constant) {
			PredTable& t = work.mutable_table(s.sym);
			for (std::size_t idx : s.cells) {
				t.set(idx, TV::F);
			}
		}
	}
	for (;;) {
		if (!visit(work)) {
			return;
		}
		// odometer, last slot fastest
		std::size_t k = slots.size();
		bool carry = true;
		while (carry && k > 0) {
			Slot& s = slots[--k];
			if (s.constant) {
				Element e = work.element(s.sym) + 1;
				carry = static_cast<std::size_t>(e) == dsize;
				work.set_element(s.sym, carry ? 0 : e);
				continue;
			}
			PredTable& t = work.mutable_table(s.sym);
			for (std::size_t j = s.cells.size(); j-- > 0 && carry;) {
				const std::size_t idx = s.cells[j];
				if (t.at(idx) == TV::F) {
					t.set(idx, TV::T);
					carry = false;
				} else {
					t.set(idx, TV::F);
				}
			}
		}
		if (carry) {
			return;
		}
	}
}

EquivalenceReport check_sigma_equivalence(const Expr& lhs, const TemplateLibrary* lib, const Expr& rhs,
                                          const Vocabulary& rhs_extra, const Vocabulary& sigma,
                                          const std::vector<DomainPtr>& domains, const Limits& limits) {
	EquivalenceReport rep;
	for (const DomainPtr& dom : domains) {
		Interpretation templ(dom);
		if (lib != nullptr) {
			templ = apply_library(Interpretation(dom), *lib, limits);
		}
		for_each_structure(Interpretation(dom), sigma, [&](const Interpretation& i) {
			++rep.structures;
			Interpretation li = i;
			for (const auto& [s, v] : templ.values()) {
				li.set(s, v);
			}
			const bool left = eval(lhs, li, EvalMode::Kleene, limits) == TV::T;
			bool right = false;
			for_each_structure(li, rhs_extra, [&](const Interpretation& j) {
				right = eval(rhs, j, EvalMode::Kleene, limits) == TV::T;
				return !right;
			}, limits);
			if (left != right) {
				rep.equivalent = false;
				rep.counterexample = write_structure(i);
				return false;
			}
			return true;
		}, limits);
		if (!rep.equivalent) {
			break;
		}
	}
	return rep;
}

} // namespace soid
