#include <zeq/report.hpp>

#include <openssl/evp.h>

#include <zeq/error.hpp>
#include <zeq/expr.hpp>

namespace zeq
{

namespace
{

std::string rational_str(const mpq_class &q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace

Json scalar_json(const Scalar &c)
{
    if (c.is_rational()) {
        return rational_str(c.rational());
    }
    Json minpoly = Json::array();
    for (const auto &q : c.field()->minpoly) {
        minpoly.push_back(rational_str(q));
    }
    Json coeffs = Json::array();
    for (const auto &q : c.ext_coeffs()) {
        coeffs.push_back(rational_str(q));
    }
    return Json{{"generator", c.field()->generator}, {"minpoly", minpoly}, {"coeffs", coeffs}};
}

Json poly_json(const Poly &p, const std::vector<std::string> &names)
{
    Json terms = Json::array();
    for (const auto &[m, c] : p.terms()) {
        Json exp = Json::array();
        for (std::size_t v = 0; v < names.size(); ++v) {
            exp.push_back(m.e[v]);
        }
        terms.push_back(Json{{"exp", exp}, {"coeff", scalar_json(c)}});
    }
    return Json{{"text", print_expr(from_poly(p, names))}, {"terms", terms}};
}

Json jet_json(const Jet &j)
{
    Json out = poly_json(j.poly(), j.ctx()->names);
    out["order"] = j.order();
    out["exact"] = j.exact();
    return out;
}

Json pseudo_json(const PseudoPolynomial &p)
{
    Json coeffs = Json::array();
    for (const auto &a : p.coeffs()) {
        coeffs.push_back(jet_json(a));
    }
    return Json{{"var", p.ctx()->names[static_cast<std::size_t>(p.var())]},
                {"degree", p.degree()},
                {"distinguished", p.distinguished()},
                {"exact", p.exact()},
                {"order", p.order()},
                {"coeffs", coeffs}};
}

Json change_json(const LinearChange &c, const VarContext &ctx)
{
    Json block = Json::array();
    for (int v : c.block) {
        block.push_back(ctx.names[static_cast<std::size_t>(v)]);
    }
    return Json{{"block", block}, {"matrix", c.matrix}, {"text", c.str(ctx)}};
}

Json gendisc_json(const GenDiscSequence &g)
{
    Json entries = Json::array();
    for (const auto &d : g.entries) {
        entries.push_back(jet_json(d));
    }
    return Json{{"degree", g.degree},
                {"first_nonzero", g.first_nonzero},
                {"lower_exact", g.lower_exact},
                {"order", g.order},
                {"entries", entries}};
}

Json form_json(const OneForm &w, const std::vector<std::string> &names)
{
    return Json{{"text", w.str(names)}, {"a", poly_json(w.a, names)}, {"b", poly_json(w.b, names)}};
}

Json record_json(const DivisorRecord &r, const std::vector<std::string> &names)
{
    return Json{{"h", poly_json(r.h, names)}, {"c", scalar_json(r.c)}, {"mu", r.mu}, {"rho", poly_json(r.rho, names)}};
}

std::string sha256_hex(const std::string &data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw internal_error("SHA-256 digest failed");
    }
    static const char *hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string dump_report(const Json &report)
{
    return report.dump(2) + "\n";
}

} // namespace zeq
