#include <zeq/error.hpp>
#include <zeq/poly.hpp>

#include <algorithm>

namespace zeq
{

Poly::Poly(int nvars) : nvars_(nvars)
{
    if (nvars < 0 || nvars > kMaxVars) {
        throw precondition_error("too many variables (limit " + std::to_string(kMaxVars) + ")");
    }
}

Poly Poly::constant(int nvars, const Scalar &c)
{
    Poly p(nvars);
    p.add_term(Monomial{}, c);
    return p;
}

Poly Poly::variable(int nvars, int var)
{
    Monomial m;
    m.e[var] = 1;
    return monomial(nvars, m, Scalar(1));
}

Poly Poly::monomial(int nvars, const Monomial &m, const Scalar &c)
{
    Poly p(nvars);
    p.add_term(m, c);
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar Poly::constant_term() const
{
    return coeff(Monomial{});
}

Scalar Poly::coeff(const Monomial &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

int Poly::total_degree() const
{
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

int Poly::min_degree() const
{
    return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

int Poly::degree_in(int var) const
{
    int d = terms_.empty() ? -1 : 0;
    for (const auto &[m, c] : terms_) {
        d = std::max<int>(d, m.e[var]);
    }
    return d;
}

bool Poly::involves(int var) const
{
    return std::any_of(terms_.begin(), terms_.end(), [var](const auto &t) { return t.first.e[var] != 0; });
}

int Poly::main_variable() const
{
    for (int v = nvars_ - 1; v >= 0; --v) {
        if (involves(v)) {
            return v;
        }
    }
    return -1;
}

void Poly::add_term(const Monomial &m, const Scalar &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

Poly &Poly::operator+=(const Poly &o)
{
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

Poly &Poly::operator-=(const Poly &o)
{
    for (const auto &[m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Poly &Poly::operator*=(const Scalar &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_) {
        v *= c;
    }
    return *this;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto &[m, v] : r.terms_) {
        v = -v;
    }
    return r;
}

bool operator==(const Poly &a, const Poly &b)
{
    return a.terms_ == b.terms_;
}

Poly Poly::mul(const Poly &o) const
{
    return mul_truncated(o, -1);
}

Poly Poly::mul_truncated(const Poly &o, int limit) const
{
    Poly r(std::max(nvars_, o.nvars_));
    for (const auto &[ma, ca] : terms_) {
        const int da = ma.degree();
        if (limit >= 0 && da >= limit) {
            break;
        }
        for (const auto &[mb, cb] : o.terms_) {
            if (limit >= 0 && da + mb.degree() >= limit) {
                break;
            }
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

Poly Poly::pow(unsigned k) const
{
    Poly result = constant(nvars_, Scalar(1));
    Poly base = *this;
    while (k > 0) {
        if (k & 1U) {
            result = result.mul(base);
        }
        k >>= 1U;
        if (k > 0) {
            base = base.mul(base);
        }
    }
    return result;
}

Poly Poly::truncated(int limit) const
{
    Poly r(nvars_);
    for (const auto &[m, c] : terms_) {
        if (m.degree() >= limit) {
            break;
        }
        r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
}

Poly Poly::homogeneous_part(int d) const
{
    Poly r(nvars_);
    for (const auto &[m, c] : terms_) {
        if (m.degree() == d) {
            r.terms_.emplace_hint(r.terms_.end(), m, c);
        }
    }
    return r;
}

Poly Poly::derivative(int var) const
{
    Poly r(nvars_);
    for (const auto &[m, c] : terms_) {
        if (m.e[var] == 0) {
            continue;
        }
        Monomial dm = m;
        dm.e[var] -= 1;
        r.add_term(dm, c * Scalar(static_cast<long>(m.e[var])));
    }
    return r;
}

std::vector<Poly> Poly::coeffs_in(int var) const
{
    std::vector<Poly> cs(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1, Poly(nvars_));
    for (const auto &[m, c] : terms_) {
        Monomial rest = m;
        rest.e[var] = 0;
        cs[m.e[var]].add_term(rest, c);
    }
    return cs;
}

Poly Poly::from_coeffs(int nvars, int var, const std::vector<Poly> &cs)
{
    Poly r(nvars);
    for (std::size_t k = 0; k < cs.size(); ++k) {
        for (const auto &[m, c] : cs[k].terms()) {
            Monomial mm = m;
            mm.e[var] = static_cast<std::uint16_t>(mm.e[var] + k);
            r.add_term(mm, c);
        }
    }
    return r;
}

Poly Poly::substitute(int var, const Poly &value) const
{
    const auto cs = coeffs_in(var);
    // Horner in var.
    Poly r(nvars_);
    for (std::size_t k = cs.size(); k-- > 0;) {
        r = r.mul(value);
        r += cs[k];
    }
    return r;
}

Poly Poly::evaluate(int var, const Scalar &value) const
{
    return substitute(var, constant(nvars_, value));
}

Poly Poly::widened(int nvars) const
{
    Poly r(nvars);
    r.terms_ = terms_;
    return r;
}

Poly Poly::remapped(int nvars, const std::vector<int> &map) const
{
    Poly r(nvars);
    for (const auto &[m, c] : terms_) {
        Monomial mm;
        for (int i = 0; i < nvars_; ++i) {
            if (m.e[i] == 0) {
                continue;
            }
            if (map[i] < 0) {
                throw internal_error("remapping drops a variable in use");
            }
            mm.e[map[i]] = static_cast<std::uint16_t>(mm.e[map[i]] + m.e[i]);
        }
        r.add_term(mm, c);
    }
    return r;
}

Scalar Poly::leading_coeff() const
{
    return terms_.empty() ? Scalar(0) : terms_.rbegin()->second;
}

Poly Poly::monic() const
{
    if (terms_.empty()) {
        return *this;
    }
    return *this * leading_coeff().inverse();
}

std::string monomial_str(const Monomial &m, const std::vector<std::string> &names)
{
    std::string out;
    for (std::size_t i = 0; i < names.size() && i < static_cast<std::size_t>(kMaxVars); ++i) {
        if (m.e[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += names[i];
        if (m.e[i] > 1) {
            out += "^" + std::to_string(m.e[i]);
        }
    }
    return out;
}

std::string Poly::str(const std::vector<std::string> &names) const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[m, c] : terms_) {
        const std::string ms = monomial_str(m, names);
        bool negative = c.is_rational() && c.rational() < 0;
        Scalar mag = negative ? -c : c;
        std::string cs = mag.str();
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        if (ms.empty()) {
            out += cs;
        } else if (mag.is_one()) {
            out += ms;
        } else {
            out += cs + "*" + ms;
        }
    }
    return out;
}

std::optional<Poly> divide_exact(const Poly &a, const Poly &b)
{
    if (b.is_zero()) {
        throw precondition_error("division by the zero polynomial");
    }
    const int nv = std::max(a.nvars(), b.nvars());
    if (a.is_zero()) {
        return Poly(nv);
    }
    if (b.is_constant()) {
        return a.widened(nv) * b.constant_term().inverse();
    }
    const int v = std::max(a.main_variable(), b.main_variable());
    if (!b.involves(v)) {
        auto cs = a.coeffs_in(v);
        for (auto &c : cs) {
            auto q = divide_exact(c, b);
            if (!q) {
                return std::nullopt;
            }
            c = *q;
        }
        return Poly::from_coeffs(nv, v, cs);
    }
    if (!a.involves(v)) {
        return std::nullopt;
    }
    auto ra = a.coeffs_in(v);
    const auto bc = b.coeffs_in(v);
    const std::size_t db = bc.size() - 1;
    if (ra.size() - 1 < db) {
        return std::nullopt;
    }
    std::vector<Poly> q(ra.size() - db, Poly(nv));
    for (std::size_t k = ra.size(); k-- > db;) {
        if (ra[k].is_zero()) {
            continue;
        }
        auto c = divide_exact(ra[k], bc[db]);
        if (!c) {
            return std::nullopt;
        }
        q[k - db] = *c;
        for (std::size_t j = 0; j <= db; ++j) {
            ra[k - db + j] -= c->mul(bc[j]);
        }
    }
    for (std::size_t k = 0; k < db; ++k) {
        if (!ra[k].is_zero()) {
            return std::nullopt;
        }
    }
    return Poly::from_coeffs(nv, v, q);
}

Poly prem(const Poly &a, const Poly &b, int var)
{
    const int db = b.degree_in(var);
    const auto bc = b.coeffs_in(var);
    const Poly &lc = bc.back();
    Poly r = a;
    int e = std::max(a.degree_in(var) - db + 1, 0);
    while (!r.is_zero() && r.degree_in(var) >= db) {
        const int dr = r.degree_in(var);
        Poly lr = r.coeffs_in(var).back();
        Monomial shift;
        shift.e[var] = static_cast<std::uint16_t>(dr - db);
        Poly s = lr.mul(Poly::monomial(r.nvars(), shift, Scalar(1)));
        r = r.mul(lc) - s.mul(b);
        --e;
    }
    if (e > 0) {
        r = r.mul(lc.pow(static_cast<unsigned>(e)));
    }
    return r;
}

Poly content(const Poly &a, int var)
{
    Poly g(a.nvars());
    for (const auto &c : a.coeffs_in(var)) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) {
            break;
        }
    }
    return g;
}

namespace
{

Poly primitive_part(const Poly &a, int var)
{
    if (a.is_zero()) {
        return a;
    }
    return *divide_exact(a, content(a, var));
}

} // namespace

Poly gcd(const Poly &a, const Poly &b)
{
    const int nv = std::max(a.nvars(), b.nvars());
    if (a.is_zero()) {
        return b.widened(nv).monic();
    }
    if (b.is_zero()) {
        return a.widened(nv).monic();
    }
    const int v = std::max(a.main_variable(), b.main_variable());
    if (v < 0) {
        return Poly::constant(nv, Scalar(1));
    }
    if (!a.involves(v)) {
        return gcd(a, content(b, v));
    }
    if (!b.involves(v)) {
        return gcd(content(a, v), b);
    }
    const Poly ca = content(a, v), cb = content(b, v);
    const Poly c = gcd(ca, cb);
    Poly pa = *divide_exact(a, ca), pb = *divide_exact(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) {
        std::swap(pa, pb);
    }
    while (!pb.is_zero() && pb.degree_in(v) > 0) {
        Poly r = prem(pa, pb, v);
        pa = std::move(pb);
        pb = primitive_part(r, v);
    }
    Poly g = pb.is_zero() ? primitive_part(pa, v) : Poly::constant(nv, Scalar(1));
    return c.mul(g).widened(nv).monic();
}

std::vector<Poly> squarefree_decomposition(const Poly &a)
{
    if (a.is_zero()) {
        throw precondition_error("squarefree decomposition of zero");
    }
    std::vector<Poly> parts;
    if (a.is_constant()) {
        return parts;
    }
    Poly g = a;
    for (int v = 0; v < a.nvars(); ++v) {
        g = gcd(g, a.derivative(v));
    }
    Poly rad = *divide_exact(a, g);
    while (!rad.is_constant()) {
        Poly c = gcd(g, rad);
        parts.push_back(divide_exact(rad, c)->monic());
        g = *divide_exact(g, c);
        rad = c;
    }
    while (!parts.empty() && parts.back().is_constant()) {
        parts.pop_back();
    }
    return parts;
}

std::pair<int, Poly> multiplicity(const Poly &a, const Poly &h)
{
    if (h.is_constant()) {
        throw precondition_error("multiplicity of a constant factor");
    }
    if (a.is_zero()) {
        throw precondition_error("multiplicity in the zero polynomial");
    }
    int k = 0;
    Poly cur = a;
    while (true) {
        auto q = divide_exact(cur, h);
        if (!q) {
            return {k, cur};
        }
        cur = std::move(*q);
        ++k;
    }
}

} // namespace zeq
