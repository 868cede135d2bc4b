#include <zeq/error.hpp>
#include <zeq/expr.hpp>

#include <cctype>

namespace zeq
{

Expr Expr::number(mpq_class v)
{
    Expr e;
    e.kind = Kind::number;
    v.canonicalize();
    e.value = std::move(v);
    return e;
}

Expr Expr::variable(std::string n)
{
    Expr e;
    e.kind = Kind::variable;
    e.name = std::move(n);
    return e;
}

Expr Expr::binary(Kind k, Expr a, Expr b)
{
    Expr e;
    e.kind = k;
    e.pos = a.pos;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

Expr Expr::negate(Expr a)
{
    Expr e;
    e.kind = Kind::neg;
    e.pos = a.pos;
    e.args.push_back(std::move(a));
    return e;
}

Expr Expr::power(Expr base, unsigned k)
{
    Expr e;
    e.kind = Kind::pow;
    e.pos = base.pos;
    e.exponent = k;
    e.args.push_back(std::move(base));
    return e;
}

bool operator==(const Expr &a, const Expr &b)
{
    return a.kind == b.kind && a.value == b.value && a.name == b.name && a.exponent == b.exponent && a.args == b.args;
}

namespace
{

class Parser
{
public:
    explicit Parser(const std::string &text) : s_(text) {}

    Expr parse()
    {
        skip();
        if (at_end()) {
            fail("empty expression");
        }
        Expr e = sum();
        skip();
        if (!at_end()) {
            fail(std::string("unexpected '") + s_[i_] + "'");
        }
        return e;
    }

private:
    const std::string &s_;
    std::size_t i_ = 0;
    SourcePos pos_;

    bool at_end() const
    {
        return i_ >= s_.size();
    }

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw usage_error("syntax error at line " + std::to_string(pos_.line) + ", column " +
                          std::to_string(pos_.column) + ": " + msg);
    }

    void advance()
    {
        if (s_[i_] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        ++i_;
    }

    void skip()
    {
        while (!at_end()) {
            if (s_[i_] == '#') {
                while (!at_end() && s_[i_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                advance();
            } else {
                return;
            }
        }
    }

    bool eat(char c)
    {
        skip();
        if (!at_end() && s_[i_] == c) {
            advance();
            return true;
        }
        return false;
    }

    std::string digits()
    {
        std::string d;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            d += s_[i_];
            advance();
        }
        return d;
    }

    Expr sum()
    {
        Expr e = product();
        while (true) {
            skip();
            if (eat('+')) {
                e = Expr::binary(Expr::Kind::add, std::move(e), product());
            } else if (eat('-')) {
                e = Expr::binary(Expr::Kind::sub, std::move(e), product());
            } else {
                return e;
            }
        }
    }

    Expr product()
    {
        Expr e = unary();
        while (eat('*')) {
            e = Expr::binary(Expr::Kind::mul, std::move(e), unary());
        }
        return e;
    }

    Expr unary()
    {
        skip();
        const SourcePos p = pos_;
        if (eat('-')) {
            Expr e = Expr::negate(unary());
            e.pos = p;
            return e;
        }
        return power();
    }

    Expr power()
    {
        Expr base = atom();
        skip();
        if (!eat('^')) {
            return base;
        }
        skip();
        const std::string d = digits();
        if (d.empty()) {
            fail(at_end() ? "missing exponent" : std::string("exponent must be a nonnegative integer, found '") +
                                                     s_[i_] + "'");
        }
        if (d.size() > 6) {
            fail("exponent " + d + " is too large");
        }
        Expr e = Expr::power(std::move(base), static_cast<unsigned>(std::stoul(d)));
        skip();
        if (!at_end() && s_[i_] == '^') {
            fail("chained '^' needs parentheses");
        }
        return e;
    }

    Expr atom()
    {
        skip();
        if (at_end()) {
            fail("unexpected end of input");
        }
        const SourcePos p = pos_;
        const char c = s_[i_];
        if (c == '(') {
            advance();
            Expr e = sum();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::string num = digits();
            std::string den = "1";
            skip();
            if (!at_end() && s_[i_] == '/') {
                advance();
                skip();
                den = digits();
                if (den.empty()) {
                    fail("expected an integer denominator");
                }
                if (den.find_first_not_of('0') == std::string::npos) {
                    fail("zero denominator");
                }
            }
            Expr e = Expr::number(mpq_class(mpz_class(num), mpz_class(den)));
            e.pos = p;
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string n;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
                n += s_[i_];
                advance();
            }
            Expr e = Expr::variable(n);
            e.pos = p;
            return e;
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

int precedence(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
        return 1;
    case Expr::Kind::mul:
        return 2;
    case Expr::Kind::neg:
        return 3;
    case Expr::Kind::pow:
        return 4;
    case Expr::Kind::number:
        return e.value.get_den() == 1 ? 5 : 4;
    default:
        return 5;
    }
}

std::string wrap(const Expr &e, int min_prec)
{
    const std::string s = print_expr(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

Expr scalar_expr(const Scalar &c)
{
    if (c.is_rational()) {
        const mpq_class &q = c.rational();
        return q < 0 ? Expr::negate(Expr::number(-q)) : Expr::number(q);
    }
    std::vector<std::string> names{c.field()->generator};
    Poly p(1);
    const auto &cs = c.ext_coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Monomial m;
        m.e[0] = static_cast<std::uint16_t>(i);
        p.add_term(m, Scalar(cs[i]));
    }
    return from_poly(p, names);
}

} // namespace

Expr parse_expr(const std::string &text)
{
    return Parser(text).parse();
}

std::string print_expr(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::number:
        return e.value.get_str();
    case Expr::Kind::variable:
        return e.name;
    case Expr::Kind::add:
        return wrap(e.args[0], 1) + " + " + wrap(e.args[1], 2);
    case Expr::Kind::sub:
        return wrap(e.args[0], 1) + " - " + wrap(e.args[1], 2);
    case Expr::Kind::mul:
        return wrap(e.args[0], 2) + "*" + wrap(e.args[1], 3);
    case Expr::Kind::neg:
        return "-" + wrap(e.args[0], 3);
    case Expr::Kind::pow:
        return wrap(e.args[0], 5) + "^" + std::to_string(e.exponent);
    }
    return {};
}

Poly to_poly(const Expr &e, const std::map<std::string, Poly> &symbols, int nvars)
{
    switch (e.kind) {
    case Expr::Kind::number:
        return Poly::constant(nvars, Scalar(e.value));
    case Expr::Kind::variable: {
        auto it = symbols.find(e.name);
        if (it == symbols.end()) {
            throw usage_error("unknown variable '" + e.name + "' at line " + std::to_string(e.pos.line) +
                              ", column " + std::to_string(e.pos.column));
        }
        return it->second;
    }
    case Expr::Kind::add:
        return to_poly(e.args[0], symbols, nvars) + to_poly(e.args[1], symbols, nvars);
    case Expr::Kind::sub:
        return to_poly(e.args[0], symbols, nvars) - to_poly(e.args[1], symbols, nvars);
    case Expr::Kind::mul:
        return to_poly(e.args[0], symbols, nvars) * to_poly(e.args[1], symbols, nvars);
    case Expr::Kind::neg:
        return -to_poly(e.args[0], symbols, nvars);
    case Expr::Kind::pow:
        return to_poly(e.args[0], symbols, nvars).pow(e.exponent);
    }
    throw internal_error("unhandled expression node");
}

Expr from_poly(const Poly &p, const std::vector<std::string> &names)
{
    if (p.is_zero()) {
        return Expr::number(0);
    }
    std::optional<Expr> out;
    for (const auto &[m, c] : p.terms()) {
        const bool negative = c.is_rational() && c.rational() < 0;
        const Scalar mag = negative ? -c : c;
        // Left-nested product, the sign of a leading term on its first factor.
        std::vector<Expr> factors;
        if (!mag.is_one() || m.is_one()) {
            factors.push_back(scalar_expr(mag));
        }
        for (int v = 0; v < p.nvars(); ++v) {
            if (m.e[v] == 0) {
                continue;
            }
            Expr x = Expr::variable(names[static_cast<std::size_t>(v)]);
            factors.push_back(m.e[v] > 1 ? Expr::power(std::move(x), m.e[v]) : std::move(x));
        }
        if (negative && !out) {
            factors[0] = Expr::negate(std::move(factors[0]));
        }
        Expr term = std::move(factors[0]);
        for (std::size_t i = 1; i < factors.size(); ++i) {
            term = Expr::binary(Expr::Kind::mul, std::move(term), std::move(factors[i]));
        }
        if (!out) {
            out = std::move(term);
        } else {
            out = Expr::binary(negative ? Expr::Kind::sub : Expr::Kind::add, std::move(*out), std::move(term));
        }
    }
    return *out;
}

FactoredExpr split_factors(const Expr &e)
{
    FactoredExpr out;
    std::vector<const Expr *> stack{&e};
    std::vector<const Expr *> leaves;
    while (!stack.empty()) {
        const Expr *x = stack.back();
        stack.pop_back();
        if (x->kind == Expr::Kind::mul) {
            stack.push_back(&x->args[1]);
            stack.push_back(&x->args[0]);
        } else if (x->kind == Expr::Kind::neg) {
            out.unit = -out.unit;
            stack.push_back(&x->args[0]);
        } else {
            leaves.push_back(x);
        }
    }
    for (const Expr *x : leaves) {
        if (x->kind == Expr::Kind::number) {
            out.unit = out.unit * Scalar(x->value);
        } else if (x->kind == Expr::Kind::pow && x->args[0].kind == Expr::Kind::number) {
            Scalar v(1);
            for (unsigned k = 0; k < x->exponent; ++k) {
                v = v * Scalar(x->args[0].value);
            }
            out.unit = out.unit * v;
        } else if (x->kind == Expr::Kind::pow) {
            if (x->exponent == 0) {
                continue;
            }
            out.factors.emplace_back(x->args[0], static_cast<int>(x->exponent));
        } else {
            out.factors.emplace_back(*x, 1);
        }
    }
    return out;
}

} // namespace zeq
