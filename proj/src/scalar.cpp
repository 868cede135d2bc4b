#include <zeq/error.hpp>
#include <zeq/scalar.hpp>

#include <utility>

namespace zeq
{

namespace
{

using QPoly = std::vector<mpq_class>;

void trim(QPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

QPoly mul(const QPoly &a, const QPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

QPoly sub(const QPoly &a, const QPoly &b)
{
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
    }
    trim(r);
    return r;
}

// a = q*b + r over Q.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly &b)
{
    trim(a);
    QPoly q;
    if (a.size() >= b.size()) {
        q.assign(a.size() - b.size() + 1, mpq_class(0));
    }
    const mpq_class &lc = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        mpq_class c = a.back() / lc;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= c * b[i];
        }
        trim(a);
    }
    trim(q);
    return {q, a};
}

QPoly reduce(QPoly a, const QPoly &m)
{
    return divmod(std::move(a), m).second;
}

} // namespace

ExtField::ExtField(std::string gen, std::vector<mpq_class> m) : generator(std::move(gen)), minpoly(std::move(m))
{
    trim(minpoly);
    if (minpoly.size() < 2) {
        throw precondition_error("minimal polynomial must have positive degree");
    }
    const mpq_class lc = minpoly.back();
    for (auto &c : minpoly) {
        c /= lc;
    }
}

bool ExtField::same_as(const ExtField &other) const
{
    return generator == other.generator && minpoly == other.minpoly;
}

Scalar Scalar::from_string(const std::string &s)
{
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
        throw precondition_error("malformed rational literal '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw precondition_error("zero denominator in '" + s + "'");
    }
    return Scalar(q);
}

Scalar Scalar::generator(const FieldPtr &field)
{
    return from_ext(field, {mpq_class(0), mpq_class(1)});
}

Scalar Scalar::from_ext(const FieldPtr &field, std::vector<mpq_class> coeffs)
{
    Scalar s;
    s.field_ = field;
    s.ext_ = reduce(std::move(coeffs), field->minpoly);
    s.normalize();
    return s;
}

void Scalar::normalize()
{
    if (!field_) {
        return;
    }
    trim(ext_);
    if (ext_.size() <= 1) {
        q_ = ext_.empty() ? mpq_class(0) : ext_[0];
        field_.reset();
        ext_.clear();
        return;
    }
    ext_.resize(field_->degree(), mpq_class(0));
}

bool Scalar::is_zero() const
{
    return field_ == nullptr && q_ == 0;
}

bool Scalar::is_one() const
{
    return field_ == nullptr && q_ == 1;
}

const mpq_class &Scalar::rational() const
{
    if (field_) {
        throw internal_error("scalar is not rational");
    }
    return q_;
}

FieldPtr Scalar::common_field(const Scalar &a, const Scalar &b)
{
    if (!a.field_) {
        return b.field_;
    }
    if (!b.field_ || a.field_ == b.field_ || a.field_->same_as(*b.field_)) {
        return a.field_;
    }
    throw precondition_error("scalars from two different extension fields");
}

std::vector<mpq_class> Scalar::as_coeffs(const FieldPtr &) const
{
    if (!field_) {
        return {q_};
    }
    return ext_;
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    if (!field_ && !o.field_) {
        q_ += o.q_;
        return *this;
    }
    FieldPtr f = common_field(*this, o);
    QPoly a = as_coeffs(f), b = o.as_coeffs(f);
    a.resize(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] += b[i];
    }
    field_ = f;
    ext_ = std::move(a);
    normalize();
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
    return *this += -o;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
    if (!field_ && !o.field_) {
        q_ *= o.q_;
        return *this;
    }
    FieldPtr f = common_field(*this, o);
    ext_ = reduce(mul(as_coeffs(f), o.as_coeffs(f)), f->minpoly);
    field_ = f;
    normalize();
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
    return *this *= o.inverse();
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    r.q_ = -r.q_;
    for (auto &c : r.ext_) {
        c = -c;
    }
    return r;
}

Scalar Scalar::inverse() const
{
    if (is_zero()) {
        throw precondition_error("division by zero scalar");
    }
    if (!field_) {
        return Scalar(mpq_class(1) / q_);
    }
    // Extended Euclid: s*a + t*m = g, g must be a nonzero constant.
    QPoly r0 = field_->minpoly, r1 = ext_;
    trim(r1);
    QPoly s0, s1{mpq_class(1)};
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) {
        throw precondition_error("element is a zero divisor: minimal polynomial of '" + field_->generator +
                                 "' is reducible");
    }
    for (auto &c : s1) {
        c /= r1[0];
    }
    return from_ext(field_, std::move(s1));
}

bool operator==(const Scalar &a, const Scalar &b)
{
    if (!a.field_ && !b.field_) {
        return a.q_ == b.q_;
    }
    if (!a.field_ || !b.field_) {
        return false;
    }
    return a.ext_ == b.ext_ && (a.field_ == b.field_ || a.field_->same_as(*b.field_));
}

std::string Scalar::str() const
{
    if (!field_) {
        return q_.get_str();
    }
    std::string out;
    for (std::size_t i = ext_.size(); i-- > 0;) {
        if (ext_[i] == 0) {
            continue;
        }
        std::string c = ext_[i].get_str();
        if (!out.empty()) {
            out += ext_[i] < 0 ? " - " : " + ";
            if (ext_[i] < 0) {
                c = c.substr(1);
            }
        }
        if (i == 0) {
            out += c;
            continue;
        }
        if (c != "1") {
            out += c == "-1" ? "-" : c + "*";
        }
        out += field_->generator;
        if (i > 1) {
            out += "^" + std::to_string(i);
        }
    }
    return "(" + out + ")";
}

} // namespace zeq
