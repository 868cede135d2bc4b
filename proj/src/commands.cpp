#include <zeq/commands.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include <zeq/deform.hpp>
#include <zeq/error.hpp>
#include <zeq/expr.hpp>
#include <zeq/mero.hpp>
#include <zeq/tower.hpp>
#include <zeq/weierstrass.hpp>

namespace zeq
{

namespace
{

constexpr int kMaxOrder = 200;

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> out;
    if (trim(text).empty()) {
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

std::vector<std::string> split_names(const std::string &text, const std::string &flag)
{
    auto names = split(text, ',');
    for (const auto &n : names) {
        if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_') ||
            !std::all_of(n.begin(), n.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })) {
            throw usage_error("invalid variable name '" + n + "' in " + flag);
        }
    }
    return names;
}

std::vector<int> split_ints(const std::string &text, const std::string &flag)
{
    std::vector<int> out;
    for (const auto &s : split(text, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size() || v < 0) {
                throw std::invalid_argument(s);
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw usage_error("expected nonnegative integers in " + flag + ", found '" + s + "'");
        }
    }
    return out;
}

std::string status_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::usage:
        return "usage-error";
    case ErrorKind::precondition:
        return "precondition-error";
    case ErrorKind::inconclusive:
        return "inconclusive";
    case ErrorKind::internal:
        return "internal-error";
    }
    return "internal-error";
}

// Shared state of one run: resolved inputs, the order and the report being built.
class Session
{
public:
    explicit Session(const RunOptions &o) : opts(o), order(o.order ? *o.order : default_order())
    {
        if (order < 1 || order > kMaxOrder) {
            throw usage_error("order must lie in 1.." + std::to_string(kMaxOrder));
        }
        input["command"] = o.command;
        if (!o.ext.empty() || !o.minpoly.empty()) {
            setup_field();
        }
    }

    const RunOptions &opts;
    int order;
    Json input = Json::object();
    Json result = Json::object();
    Json changes = Json::array();
    std::vector<std::string> notes;
    std::string summary;
    // Set when the result stands but rests on a vanishing decision mod N.
    std::optional<std::string> inconclusive;

    bool exact() const
    {
        return !opts.truncated;
    }

    // Reads "@path" arguments; echoes the resolved text.
    std::string resolve(const std::string &text) const
    {
        if (text.empty() || text[0] != '@') {
            return text;
        }
        std::filesystem::path p(text.substr(1));
        if (p.is_relative() && !opts.base_dir.empty()) {
            p = std::filesystem::path(opts.base_dir) / p;
        }
        std::ifstream in(p);
        if (!in) {
            throw usage_error("cannot read expression file '" + text.substr(1) + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    CtxPtr context(const std::vector<std::string> &names, int nparams = 0) const
    {
        if (names.empty()) {
            throw usage_error("no variables declared");
        }
        if (static_cast<int>(names.size()) > kMaxVars) {
            throw usage_error("at most " + std::to_string(kMaxVars) + " variables are supported");
        }
        std::vector<std::string> sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw usage_error("a variable is declared twice");
        }
        if (field_ && std::find(names.begin(), names.end(), field_->generator) != names.end()) {
            throw usage_error("'" + field_->generator + "' is both a variable and the field generator");
        }
        return make_context(names, nparams);
    }

    Poly poly(const std::string &text, const std::vector<std::string> &names) const
    {
        return to_poly(parse_expr(text), symbols(names), static_cast<int>(names.size()));
    }

    Jet jet(const std::string &text, const CtxPtr &ctx) const
    {
        return Jet::from_poly(ctx, poly(text, ctx->names), order, exact());
    }

    std::vector<Jet> jets(const std::string &list, const CtxPtr &ctx, const std::string &flag) const
    {
        std::vector<Jet> out;
        for (const auto &s : split(resolve(list), ';')) {
            if (s.empty()) {
                throw usage_error("empty expression in " + flag);
            }
            out.push_back(jet(s, ctx));
        }
        return out;
    }

    Scalar scalar(const std::string &text) const
    {
        const Poly p = poly(text, {"_"});
        if (!p.is_constant()) {
            throw usage_error("expected a number, found '" + text + "'");
        }
        return p.constant_term();
    }

    std::vector<Scalar> scalars(const std::string &list) const
    {
        std::vector<Scalar> out;
        for (const auto &s : split(list, ';')) {
            out.push_back(scalar(s));
        }
        return out;
    }

    // Two-variable factored germ: a product of powers of squarefree factors.
    FactoredGerm germ(const std::string &text, const std::vector<std::string> &names) const
    {
        const FactoredExpr fe = split_factors(parse_expr(text));
        std::vector<std::pair<Poly, int>> factors;
        Scalar unit = fe.unit;
        for (const auto &[e, k] : fe.factors) {
            const Poly p = to_poly(e, symbols(names), static_cast<int>(names.size()));
            if (p.is_constant()) {
                if (p.is_zero()) {
                    throw precondition_error("germ '" + trim(text) + "' is zero");
                }
                Scalar c = p.constant_term();
                for (int i = 0; i < k; ++i) {
                    unit = unit * c;
                }
                continue;
            }
            factors.emplace_back(p, k);
        }
        return FactoredGerm::make(unit, std::move(factors));
    }

    std::vector<std::string> coords(const std::string &fallback) const
    {
        return split_names(opts.vars.empty() ? fallback : opts.vars, "--vars");
    }

    const std::string &single_arg(const std::string &what)
    {
        if (opts.args.size() != 1) {
            throw usage_error(opts.command + " expects exactly one " + what);
        }
        return opts.args[0];
    }

private:
    FieldPtr field_;

    void setup_field()
    {
        if (opts.ext.empty() || opts.minpoly.empty()) {
            throw usage_error("--ext and --minpoly go together");
        }
        const std::string gen = split_names(opts.ext, "--ext").at(0);
        std::map<std::string, Poly> sym{{gen, Poly::variable(1, 0)}};
        const Poly m = to_poly(parse_expr(opts.minpoly), sym, 1);
        std::vector<mpq_class> coeffs;
        for (const auto &[mono, c] : m.terms()) {
            if (!c.is_rational()) {
                throw usage_error("--minpoly must have rational coefficients");
            }
            const std::size_t d = mono.e[0];
            if (coeffs.size() <= d) {
                coeffs.resize(d + 1, mpq_class(0));
            }
            coeffs[d] = c.rational();
        }
        if (coeffs.size() < 2) {
            throw usage_error("--minpoly must have positive degree");
        }
        const mpq_class lead = coeffs.back();
        for (auto &c : coeffs) {
            c /= lead;
        }
        field_ = std::make_shared<const ExtField>(gen, coeffs);
        input["ext"] = gen;
        input["minpoly"] = opts.minpoly;
    }

    std::map<std::string, Poly> symbols(const std::vector<std::string> &names) const
    {
        const int n = static_cast<int>(names.size());
        std::map<std::string, Poly> sym;
        for (int i = 0; i < n; ++i) {
            sym.emplace(names[static_cast<std::size_t>(i)], Poly::variable(n, i));
        }
        if (field_) {
            sym.emplace(field_->generator, Poly::constant(n, Scalar::generator(field_)));
        }
        return sym;
    }
};

Json verdicts(const std::vector<Jet> &js)
{
    Json out = Json::array();
    for (const auto &j : js) {
        out.push_back(jet_json(j));
    }
    return out;
}

std::string signature_str(const std::vector<std::pair<int, int>> &sig)
{
    std::string s = "[";
    for (std::size_t i = 0; i < sig.size(); ++i) {
        s += (i ? ", (" : "(") + std::to_string(sig[i].first) + "," + std::to_string(sig[i].second) + ")";
    }
    return s + "]";
}

Json signature_json(const std::vector<std::pair<int, int>> &sig)
{
    Json out = Json::array();
    for (const auto &[p, l] : sig) {
        out.push_back(Json::array({p, l}));
    }
    return out;
}

int last_coord(const CtxPtr &ctx, const std::string &name)
{
    if (name.empty()) {
        return ctx->size() - 1;
    }
    const int v = ctx->index_of(name);
    if (v < 0 || ctx->is_param(v)) {
        throw usage_error("--var '" + name + "' is not a declared coordinate");
    }
    return v;
}

CtxPtr coordinate_context(Session &s, const std::string &fallback)
{
    auto params = split_names(s.opts.params, "--params");
    auto vars = s.coords(fallback);
    s.input["vars"] = vars;
    s.input["params"] = params;
    const int np = static_cast<int>(params.size());
    params.insert(params.end(), vars.begin(), vars.end());
    return s.context(params, np);
}

void cmd_prepare(Session &s)
{
    const std::string text = s.resolve(s.single_arg("expression"));
    const CtxPtr ctx = coordinate_context(s, "x1,x2");
    const int var = last_coord(ctx, s.opts.var);
    s.input["expr"] = text;
    s.input["var"] = ctx->names[static_cast<std::size_t>(var)];
    const Jet f = s.jet(text, ctx);
    std::vector<int> block;
    for (int k = 0; k < ctx->ncoords(); ++k) {
        block.push_back(ctx->coord(k));
    }
    const LinearChange change = find_regular_change(f, var, block, s.opts.seed);
    const Jet g = change.apply(f);
    const PreparedForm pf = weierstrass_prepare(g, var);
    const Jet residual = pf.unit * pf.poly.to_jet(pf.order) - g.with_order(pf.order);
    s.changes.push_back(change_json(change, *ctx));
    s.result["regularity_order"] = pf.poly.degree();
    s.result["change"] = change_json(change, *ctx);
    s.result["prepared"] = jet_json(g);
    s.result["unit"] = jet_json(pf.unit);
    s.result["poly"] = pseudo_json(pf.poly);
    s.result["order"] = pf.order;
    s.result["exact"] = pf.exact;
    s.result["identity"] = Json{{"holds_to_order", residual.is_zero()}, {"order", residual.order()}};
    s.summary = "prepare: W = " + pf.poly.str() + "\n  unit u = " + pf.unit.str() + "\n  change: " +
                change.str(*ctx) + "\n  certified to order " + std::to_string(pf.order) +
                (pf.exact ? " (exact)" : "") + "\n";
}

void cmd_divide(Session &s)
{
    if (s.opts.args.size() != 2) {
        throw usage_error("divide expects the dividend and the divisor");
    }
    const std::string gt = s.resolve(s.opts.args[0]);
    const std::string ft = s.resolve(s.opts.args[1]);
    const CtxPtr ctx = coordinate_context(s, "x1,x2");
    const int var = last_coord(ctx, s.opts.var);
    s.input["dividend"] = gt;
    s.input["divisor"] = ft;
    s.input["var"] = ctx->names[static_cast<std::size_t>(var)];
    const Jet g = s.jet(gt, ctx);
    const Jet f = s.jet(ft, ctx);
    const DivisionResult d = weierstrass_divide(g, f, var);
    const int n = std::min({d.quotient.order(), d.remainder.order(), g.order()});
    const Jet residual = g.with_order(n) - d.quotient.with_order(n) * f.with_order(n) - d.remainder.with_order(n);
    s.result["quotient"] = jet_json(d.quotient);
    s.result["remainder_coeffs"] = verdicts(d.remainder_coeffs);
    s.result["remainder"] = jet_json(d.remainder);
    s.result["identity"] = Json{{"holds_to_order", residual.is_zero()}, {"order", n}};
    s.summary = "divide: q = " + d.quotient.str() + "\n  r = " + d.remainder.str() + "\n  identity g = q f + r " +
                (residual.is_zero() ? "holds" : "FAILS") + " to order " + std::to_string(n) + "\n";
}

void cmd_gendisc(Session &s)
{
    const std::string text = s.resolve(s.single_arg("expression"));
    const CtxPtr ctx = coordinate_context(s, "x1,x2");
    const int var = last_coord(ctx, s.opts.var);
    s.input["expr"] = text;
    s.input["var"] = ctx->names[static_cast<std::size_t>(var)];
    const PseudoPolynomial p = PseudoPolynomial::from_jet(s.jet(text, ctx), var);
    const GenDiscSequence gd = generalized_discriminants(p);
    s.result["poly"] = pseudo_json(p);
    s.result["gendisc"] = gendisc_json(gd);
    s.summary = "gendisc: p = " + std::to_string(gd.degree) + ", first nonzero l = " +
                std::to_string(gd.first_nonzero) + "\n";
    for (std::size_t l = 0; l < gd.entries.size(); ++l) {
        s.summary += "  Delta_" + std::to_string(l + 1) + " = " + gd.entries[l].str() + "\n";
    }
    if (!gd.lower_exact) {
        s.inconclusive = "entries below l = " + std::to_string(gd.first_nonzero) + " vanish only to order " +
                         std::to_string(gd.order) + " on truncated data";
    }
}

Json tower_json(Session &s, const Tower &tw)
{
    Json levels = Json::array();
    for (const auto &lv : tw.levels) {
        s.changes.push_back(change_json(lv.change, *tw.ctx));
        levels.push_back(Json{{"index", lv.index},
                              {"var", tw.ctx->names[static_cast<std::size_t>(lv.var)]},
                              {"source_index", lv.source_index},
                              {"source", jet_json(lv.source)},
                              {"change", change_json(lv.change, *tw.ctx)},
                              {"unit", jet_json(lv.unit)},
                              {"poly", pseudo_json(lv.poly)},
                              {"p", lv.degree()},
                              {"l", lv.disc_index()},
                              {"gendisc", gendisc_json(lv.gendisc)}});
        if (!lv.gendisc.lower_exact && !s.inconclusive) {
            s.inconclusive = "level " + std::to_string(lv.index) + " takes l = " + std::to_string(lv.disc_index()) +
                             " from entries that vanish only to order " + std::to_string(lv.gendisc.order);
        }
    }
    Json out{{"signature", signature_json(tw.signature())},
             {"termination", to_string(tw.termination)},
             {"terminal", tw.terminal ? jet_json(*tw.terminal) : Json(nullptr)},
             {"terminal_index", tw.terminal_index},
             {"order", tw.order},
             {"exact", tw.exact},
             {"levels", levels}};
    if (!tw.factor_blocks.empty()) {
        Json blocks = Json::array();
        for (const auto &b : tw.factor_blocks) {
            blocks.push_back(pseudo_json(b));
        }
        out["factor_blocks"] = blocks;
    }
    return out;
}

void cmd_tower(Session &s)
{
    if (s.opts.args.empty()) {
        throw usage_error("tower expects at least one expression");
    }
    const CtxPtr ctx = coordinate_context(s, "x1,x2");
    if (ctx->nparams != 0) {
        throw usage_error("tower takes no parameters; use check-family");
    }
    Json exprs = Json::array();
    std::vector<Jet> gs;
    for (const auto &a : s.opts.args) {
        const std::string text = s.resolve(a);
        exprs.push_back(text);
        gs.push_back(s.jet(text, ctx));
    }
    s.input["exprs"] = exprs;
    const TowerOptions to{s.opts.seed, Exec::parallel};
    const Tower tw = gs.size() == 1 ? build_tower(gs[0], to) : build_tower_system(gs, to);
    s.result = tower_json(s, tw);
    const TowerCheck chk = verify_tower(tw);
    Json lc = Json::array();
    for (const auto &l : chk.levels) {
        lc.push_back(Json{{"index", l.index}, {"identity", l.identity}, {"vanishing", l.vanishing}, {"order", l.order}});
    }
    s.result["verification"] = Json{{"passed", chk.passed()}, {"terminal", chk.terminal}, {"levels", lc}};
    s.summary = "tower: (p,l) = " + signature_str(tw.signature()) + ", " + to_string(tw.termination) + "\n";
    for (const auto &lv : tw.levels) {
        s.summary += "  f_" + std::to_string(lv.index) + " = " + lv.poly.str() + "   u = " + lv.unit.str() + "\n";
    }
    if (tw.terminal) {
        s.summary += "  terminal unit = " + tw.terminal->str() + "\n";
    }
    s.summary += "  verification " + std::string(chk.passed() ? "passed" : "FAILED") + " to order " +
                 std::to_string(tw.order) + "\n";
}

void cmd_check_family(Session &s)
{
    const std::string text = s.resolve(s.single_arg("expression"));
    const CtxPtr ctx = coordinate_context(s, "x1,x2");
    if (ctx->nparams == 0) {
        throw usage_error("check-family needs --params");
    }
    s.input["expr"] = text;
    const Jet F = s.jet(text, ctx);
    const FamilyReport rep = check_family(F, TowerOptions{s.opts.seed, Exec::parallel});
    Json levels = Json::array();
    for (const auto &lv : rep.levels) {
        s.changes.push_back(change_json(lv.change, *ctx));
        levels.push_back(Json{{"index", lv.index},
                              {"source", jet_json(lv.source)},
                              {"change", change_json(lv.change, *ctx)},
                              {"p", lv.degree},
                              {"l", lv.disc_index},
                              {"unit", lv.unit ? jet_json(*lv.unit) : Json(nullptr)},
                              {"poly", lv.poly ? pseudo_json(*lv.poly) : Json(nullptr)},
                              {"coeffs_vanish", lv.coeffs_vanish}});
    }
    s.result["verdict"] = to_string(rep.verdict);
    s.result["reason"] = rep.reason;
    s.result["witness"] = rep.witness ? jet_json(*rep.witness) : Json(nullptr);
    s.result["terminal_unit"] = rep.terminal_unit ? jet_json(*rep.terminal_unit) : Json(nullptr);
    s.result["order"] = rep.order;
    s.result["levels"] = levels;
    s.notes.insert(s.notes.end(), rep.notes.begin(), rep.notes.end());
    s.summary = "check-family: " + to_string(rep.verdict) + "\n  " + rep.reason + "\n";
    if (rep.witness) {
        s.summary += "  witness = " + rep.witness->str() + "\n";
    }
    if (!s.opts.tgrid.empty()) {
        s.input["tgrid"] = s.opts.tgrid;
        Json slices = Json::array();
        for (const auto &pt : split(s.opts.tgrid, ';')) {
            std::vector<Scalar> values;
            Json tv = Json::array();
            for (const auto &c : split(pt, ',')) {
                values.push_back(s.scalar(c));
                tv.push_back(scalar_json(values.back()));
            }
            if (static_cast<int>(values.size()) != ctx->nparams) {
                throw usage_error("slice '" + pt + "' needs one value per parameter");
            }
            Json slice{{"t", tv}};
            try {
                const Tower tw = build_tower(specialize_params(F, values), TowerOptions{s.opts.seed, Exec::parallel});
                slice["signature"] = signature_json(tw.signature());
                slice["termination"] = to_string(tw.termination);
                slice["exact"] = tw.exact;
                s.summary += "  slice t = " + pt + ": (p,l) = " + signature_str(tw.signature()) + "\n";
            } catch (const Error &e) {
                slice["error"] = Json{{"kind", status_name(e.kind())}, {"message", e.what()}};
                s.summary += "  slice t = " + pt + ": " + e.what() + "\n";
            }
            slices.push_back(slice);
        }
        s.result["slices"] = slices;
    }
    if (rep.verdict == Verdict::inconclusive) {
        s.inconclusive = rep.reason;
    }
}

Json family_check_json(const FamilyCheck &c)
{
    return Json{{"passed", c.passed()},
                {"residual_vanishes_to_order", c.residual_ok},
                {"residuals", verdicts(c.residuals)},
                {"target_supplied", c.target_supplied},
                {"reproduces_target", c.reproduce_ok},
                {"reproduced", verdicts(c.reproduced)},
                {"order", c.order}};
}

void cmd_verify_family(Session &s)
{
    if (!s.opts.args.empty()) {
        throw usage_error("verify-family takes its inputs from flags");
    }
    for (const auto &[flag, v] : {std::pair{"--system", &s.opts.system}, {"--yvars", &s.opts.yvars},
                                  {"--family", &s.opts.family}, {"--zvars", &s.opts.zvars},
                                  {"--witness", &s.opts.witness}}) {
        if (v->empty()) {
            throw usage_error(std::string("verify-family needs ") + flag);
        }
    }
    auto x = s.coords("x");
    const auto y = split_names(s.opts.yvars, "--yvars");
    const auto z = split_names(s.opts.zvars, "--zvars");
    auto xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    auto xz = x;
    xz.insert(xz.end(), z.begin(), z.end());
    const CtxPtr cx = s.context(x), cxy = s.context(xy), cxz = s.context(xz);
    SolutionFamily sf;
    sf.system = s.jets(s.opts.system, cxy, "--system");
    sf.y_vars = y;
    sf.family = s.jets(s.opts.family, cxz, "--family");
    sf.z_vars = z;
    sf.witness = s.jets(s.opts.witness, cx, "--witness");
    if (!s.opts.target.empty()) {
        sf.target = s.jets(s.opts.target, cx, "--target");
    }
    s.input["vars"] = x;
    s.input["system"] = s.resolve(s.opts.system);
    s.input["yvars"] = y;
    s.input["family"] = s.resolve(s.opts.family);
    s.input["zvars"] = z;
    s.input["witness"] = s.resolve(s.opts.witness);
    s.input["target"] = s.resolve(s.opts.target);
    const FamilyCheck c = verify_family(sf, s.order);
    s.result["check"] = family_check_json(c);
    s.summary = "verify-family: residual " + std::string(c.residual_ok ? "vanishes" : "does NOT vanish") +
                " to order " + std::to_string(c.order) + "\n";
    if (c.target_supplied) {
        s.summary += "  target " + std::string(c.reproduce_ok ? "reproduced" : "NOT reproduced") + "\n";
    }
    if (!s.opts.sigma.empty() || !s.opts.tau.empty()) {
        const NestedShape shape{split_ints(s.opts.sigma, "--sigma"), split_ints(s.opts.tau, "--tau")};
        s.input["sigma"] = shape.sigma;
        s.input["tau"] = shape.tau;
        const NestedCheck nc = verify_nested(sf, shape);
        s.result["nested"] = Json{{"ok", nc.ok}, {"violations", nc.violations}};
        s.summary += "  nested shape " + std::string(nc.ok ? "respected" : "VIOLATED") + "\n";
    }
}

void cmd_binomial(Session &s)
{
    if (s.opts.args.size() != 2) {
        throw usage_error("binomial expects y1 and y2");
    }
    const auto x = s.coords("x");
    if (x.size() != 1) {
        throw usage_error("binomial works in one variable");
    }
    const CtxPtr cx = s.context(x);
    const std::string t1 = s.resolve(s.opts.args[0]), t2 = s.resolve(s.opts.args[1]);
    s.input["vars"] = x;
    s.input["y1"] = t1;
    s.input["y2"] = t2;
    const SolutionFamily sf = binomial_family(s.jet(t1, cx), s.jet(t2, cx));
    const FamilyCheck c = verify_family(sf, s.order);
    s.result["system"] = verdicts(sf.system);
    s.result["y_vars"] = sf.y_vars;
    s.result["family"] = verdicts(sf.family);
    s.result["z_vars"] = sf.z_vars;
    s.result["witness"] = verdicts(sf.witness);
    s.result["check"] = family_check_json(c);
    s.summary = "binomial: family (" + sf.family[0].str() + ", " + sf.family[1].str() + "), witness " +
                sf.z_vars[0] + " = " + sf.witness[0].str() + "\n  verification " +
                (c.passed() ? "passed" : "FAILED") + " to order " + std::to_string(c.order) + "\n";
}

struct MeroInputs {
    std::vector<std::string> names;
    FactoredGerm f;
    FactoredGerm g;
    MeroAnalysis analysis;
};

MeroInputs mero_inputs(Session &s)
{
    if (s.opts.f.empty() || s.opts.g.empty()) {
        throw usage_error(s.opts.command + " needs --f and --g");
    }
    if (s.opts.truncated) {
        throw usage_error(s.opts.command + " works on polynomials; --truncated does not apply");
    }
    MeroInputs m;
    m.names = s.coords("x1,x2");
    if (m.names.size() != 2) {
        throw usage_error(s.opts.command + " works in two variables");
    }
    s.context(m.names);
    const std::string ft = s.resolve(s.opts.f), gt = s.resolve(s.opts.g);
    s.input["vars"] = m.names;
    s.input["f"] = ft;
    s.input["g"] = gt;
    m.f = s.germ(ft, m.names);
    m.g = s.germ(gt, m.names);
    std::vector<Poly> cands;
    if (!s.opts.candidates.empty()) {
        const std::string ct = s.resolve(s.opts.candidates);
        s.input["candidates"] = ct;
        for (const auto &c : split(ct, ';')) {
            cands.push_back(s.poly(c, m.names));
        }
    }
    m.analysis = analyze(m.f, m.g, m.names, cands);
    return m;
}

Json analysis_json(const MeroAnalysis &a)
{
    Json recs = Json::array(), info = Json::array();
    for (const auto &r : a.records) {
        recs.push_back(record_json(r, a.names));
    }
    for (const auto &r : a.informational) {
        info.push_back(record_json(r, a.names));
    }
    return Json{{"theta", form_json(a.theta, a.names)},
                {"theta_gcd", poly_json(a.theta_gcd, a.names)},
                {"e", a.e()},
                {"records", recs},
                {"informational", info},
                {"omega", form_json(a.omega, a.names)},
                {"omega_gcd", poly_json(a.omega_gcd, a.names)},
                {"isolated", a.isolated},
                {"real", a.real}};
}

std::string analysis_summary(const MeroAnalysis &a)
{
    std::string out = "  theta = " + a.theta.str(a.names) + "\n  e = " + std::to_string(a.e()) + "\n";
    for (const auto &r : a.records) {
        out += "  h = " + r.h.str(a.names) + ", c = " + r.c.str() + ", mu = " + std::to_string(r.mu) + "\n";
    }
    out += "  omega = " + a.omega.str(a.names) + (a.isolated ? " (isolated zero)" : " (not isolated)") + "\n";
    return out;
}

void cmd_mero_analyze(Session &s)
{
    const MeroInputs m = mero_inputs(s);
    s.result = analysis_json(m.analysis);
    s.summary = "mero-analyze:\n" + analysis_summary(m.analysis);
}

Json system_json(const SystemS &sys, const std::vector<std::string> &names)
{
    Json eqs = Json::array(), sol = Json::array();
    for (const auto &e : sys.equations) {
        eqs.push_back(poly_json(e, sys.unknowns));
    }
    for (std::size_t i = 0; i < sys.solution.size(); ++i) {
        sol.push_back(Json{{"unknown", sys.unknowns[i]}, {"value", poly_json(sys.solution[i], names)}});
    }
    return Json{{"unknowns", sys.unknowns}, {"equations", eqs}, {"solution", sol}, {"satisfied", sys.satisfied}};
}

void cmd_emit_system(Session &s)
{
    const MeroInputs m = mero_inputs(s);
    const SystemS sys = emit_system(m.analysis, m.f, m.g);
    s.result["analysis"] = analysis_json(m.analysis);
    s.result["system"] = system_json(sys, m.names);
    s.summary = "emit-system: " + std::to_string(sys.equations.size()) + " equations in " +
                std::to_string(sys.unknowns.size()) + " unknowns\n";
    for (const auto &e : sys.equations) {
        s.summary += "  " + e.str(sys.unknowns) + " = 0\n";
    }
    s.summary += "  reference solution " + std::string(sys.all_satisfied() ? "satisfies" : "does NOT satisfy") +
                 " every equation\n";
}

void cmd_mero_deform(Session &s)
{
    if (s.opts.family.empty() || s.opts.zvars.empty() || s.opts.witness.empty() || !s.opts.k0) {
        throw usage_error("mero-deform needs --family, --zvars, --witness and --k0");
    }
    const MeroInputs m = mero_inputs(s);
    const SystemS sys = emit_system(m.analysis, m.f, m.g);
    const auto z = split_names(s.opts.zvars, "--zvars");
    auto xz = m.names;
    xz.insert(xz.end(), z.begin(), z.end());
    SolutionFamily sf;
    sf.system = sys.equation_jets(s.order);
    sf.y_vars = sys.unknowns;
    sf.family = s.jets(s.opts.family, s.context(xz), "--family");
    sf.z_vars = z;
    sf.witness = s.jets(s.opts.witness, s.context(m.names), "--witness");
    const std::string grid = s.opts.tgrid.empty() ? "0;1/2;1" : s.opts.tgrid;
    s.input["family"] = s.resolve(s.opts.family);
    s.input["zvars"] = z;
    s.input["witness"] = s.resolve(s.opts.witness);
    s.input["k0"] = *s.opts.k0;
    s.input["tgrid"] = grid;
    const MeroDeformation md = build_mero_deformation(sys, sf, s.scalars(grid), *s.opts.k0, m.f, m.g, s.order);
    Json slices = Json::array();
    s.summary = "mero-deform: family " + std::string(md.family_ok ? "solves" : "does NOT solve") + " the system\n";
    for (const auto &sl : md.slices) {
        slices.push_back(Json{{"t", scalar_json(sl.t)},
                              {"exact", sl.exact},
                              {"matches_input", sl.matches_input ? Json(*sl.matches_input) : Json(nullptr)},
                              {"division_ok", sl.division_ok},
                              {"isolated", to_string(sl.isolated)},
                              {"intersection_multiplicity",
                               sl.intersection_multiplicity ? Json(*sl.intersection_multiplicity) : Json(nullptr)},
                              {"theta", form_json(sl.theta, m.names)},
                              {"omega", form_json(sl.omega, m.names)},
                              {"order", sl.order}});
        s.summary += "  t = " + sl.t.str() + ": division " + (sl.division_ok ? "exact" : "NOT exact") +
                     ", isolated " + to_string(sl.isolated) + "\n";
    }
    s.result["system"] = system_json(sys, m.names);
    s.result["family_ok"] = md.family_ok;
    s.result["slices"] = slices;
}

const std::map<std::string, std::function<void(Session &)>> &handlers()
{
    static const std::map<std::string, std::function<void(Session &)>> h{
        {"prepare", cmd_prepare},
        {"divide", cmd_divide},
        {"gendisc", cmd_gendisc},
        {"tower", cmd_tower},
        {"check-family", cmd_check_family},
        {"verify-family", cmd_verify_family},
        {"binomial", cmd_binomial},
        {"mero-analyze", cmd_mero_analyze},
        {"emit-system", cmd_emit_system},
        {"mero-deform", cmd_mero_deform},
    };
    return h;
}

} // namespace

int default_order()
{
    const char *env = std::getenv("ZEQ_ORDER");
    if (env == nullptr) {
        return kDefaultOrder;
    }
    try {
        std::size_t used = 0;
        const int v = std::stoi(env, &used);
        if (used == std::string(env).size() && v >= 1 && v <= kMaxOrder) {
            return v;
        }
    } catch (const std::exception &) {
    }
    return kDefaultOrder;
}

RunResult run(const RunOptions &opts)
{
    const auto start = std::chrono::steady_clock::now();
    RunResult out;
    Json report = Json::object();
    report["tool"] = "zeq";
    report["schema"] = 1;
    report["command"] = opts.command;
    std::optional<Session> session;
    try {
        if (handlers().count(opts.command) == 0) {
            throw usage_error("unknown command '" + opts.command + "'");
        }
        session.emplace(opts);
        session->input["order"] = session->order;
        session->input["seed"] = opts.seed;
        session->input["truncated"] = opts.truncated;
        handlers().at(opts.command)(*session);
        out.exit_code = session->inconclusive ? 3 : 0;
    } catch (const Error &e) {
        out.exit_code = static_cast<int>(e.kind());
        report["error"] = Json{{"kind", status_name(e.kind())}, {"message", e.what()}};
        out.summary = opts.command + ": " + status_name(e.kind()) + ": " + e.what() + "\n";
    } catch (const std::exception &e) {
        out.exit_code = 4;
        report["error"] = Json{{"kind", "internal-error"}, {"message", e.what()}};
        out.summary = opts.command + ": internal-error: " + e.what() + "\n";
    }
    if (session) {
        report["input"] = session->input;
        report["input_hash"] = sha256_hex(session->input.dump());
        report["order"] = session->order;
        report["seed"] = opts.seed;
    }
    const bool ran = !report.contains("error");
    report["status"] = ran ? (out.exit_code == 3 ? "inconclusive" : "ok") : report["error"]["kind"];
    report["exit_code"] = out.exit_code;
    if (session && ran) {
        report["changes"] = session->changes;
        report["result"] = session->result;
        if (session->inconclusive) {
            report["inconclusive_reason"] = *session->inconclusive;
        }
        report["notes"] = session->notes;
        out.summary = session->summary;
        if (session->inconclusive) {
            out.summary += "  INCONCLUSIVE: " + *session->inconclusive + "\n";
        }
    }
    if (opts.timing) {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report["timing_ms"] = ms;
    }
    out.report = std::move(report);
    return out;
}

} // namespace zeq

namespace zeq
{

RunOptions parse_arguments(const std::vector<std::string> &args)
{
    RunOptions o;
    CLI::App app{"Equisingularity toolkit: exact jets, Weierstrass preparation, discriminant towers", "zeq"};
    app.set_help_flag("-h,--help", "Print this help message");
    app.add_option("command", o.command, "One of: prepare, divide, gendisc, tower, check-family, verify-family, "
                                         "binomial, mero-analyze, emit-system, mero-deform")
        ->required();
    app.add_option("exprs", o.args, "Expressions; '@file' reads one from a file");
    app.add_option("--vars", o.vars, "Coordinate names, comma separated, in ladder order");
    app.add_option("--params", o.params, "Parameter names for families, comma separated");
    app.add_option("--var", o.var, "Distinguished variable (default: last coordinate)");
    app.add_option("--order,-N", o.order, "Truncation order N (default: $ZEQ_ORDER or 16)");
    app.add_option("--seed", o.seed, "Seed for the regular-direction search");
    app.add_option("--f", o.f, "Numerator germ, in factored form");
    app.add_option("--g", o.g, "Denominator germ, in factored form");
    app.add_option("--ext", o.ext, "Name of an algebraic constant");
    app.add_option("--minpoly", o.minpoly, "Minimal polynomial of the --ext constant");
    app.add_option("--system", o.system, "Equations f(x, y), ';' separated");
    app.add_option("--yvars", o.yvars, "Unknowns y of the system, comma separated");
    app.add_option("--family", o.family, "Family y(x, z), ';' separated");
    app.add_option("--zvars", o.zvars, "Auxiliary variables z, comma separated");
    app.add_option("--witness", o.witness, "Witness z(x), ';' separated");
    app.add_option("--target", o.target, "Expected solution y(x), ';' separated");
    app.add_option("--sigma", o.sigma, "Nested shape: x variables allowed per unknown");
    app.add_option("--tau", o.tau, "Nested shape: z variables allowed per unknown");
    app.add_option("--k0", o.k0, "Truncation degree of the witness interpolation");
    app.add_option("--tgrid", o.tgrid, "Parameter values, ';' separated (',' within a point)");
    app.add_option("--candidates", o.candidates, "Extra candidate divisors, ';' separated");
    app.add_flag("--truncated", o.truncated, "Treat inputs as order-N jets of unknown series");
    app.add_flag("--timing", o.timing, "Add wall-clock timing to the report");
    app.add_flag("--json", o.json, "Print the machine report instead of the summary");
    app.add_option("--report", o.report_path, "Also write the machine report to this file");
    app.positionals_at_end(false);

    // A token such as "-x1^2 + x2" is an expression, not a flag: bind it to
    // the preceding option or pass it as a positional after "--".
    std::vector<std::string> flat, tail;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string &a = args[i];
        const bool dashed = a.size() > 1 && a[0] == '-' && a[1] != '-' && a != "-N" && a != "-h";
        if (a == "--") {
            tail.insert(tail.end(), args.begin() + static_cast<long>(i) + 1, args.end());
            break;
        }
        if (!dashed) {
            flat.push_back(a);
            continue;
        }
        const CLI::Option *prev = flat.empty() ? nullptr : app.get_option_no_throw(flat.back());
        if (prev != nullptr && prev->get_expected_min() > 0) {
            flat.back() += "=" + a;
        } else {
            tail.push_back(a);
        }
    }
    if (!tail.empty()) {
        flat.push_back("--");
        flat.insert(flat.end(), tail.begin(), tail.end());
    }
    std::vector<std::string> reversed(flat.rbegin(), flat.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        o.help = true;
        o.help_text = app.help();
        return o;
    } catch (const CLI::ParseError &e) {
        throw usage_error(e.what());
    }
    return o;
}

} // namespace zeq
