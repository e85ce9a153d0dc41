#include "trisec/scalar.hpp"

#include <cctype>
#include <ostream>

namespace trisec {

int Scalar::sign() const {
    int sr = sgn(rat_);
    int ss = sgn(root2_);
    if (ss == 0) return sr;
    if (sr == 0) return ss;
    if (sr == ss) return sr;
    // Opposite signs: |rat| vs |root2|*sqrt(2), squared.  Equality is
    // impossible since sqrt(2) is irrational.
    Rational lhs = rat_ * rat_;
    Rational rhs = 2 * root2_ * root2_;
    int c = cmp(lhs, rhs);
    if (c == 0) throw Error(Error::Kind::Inconsistency, "rat^2 == 2*root2^2 with nonzero parts");
    return c > 0 ? sr : ss;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    // (a + b r2)(c + d r2) = ac + 2bd + (ad + bc) r2
    Rational a = rat_, b = root2_;
    rat_ = a * o.rat_ + 2 * b * o.root2_;
    root2_ = a * o.root2_ + b * o.rat_;
    return *this;
}

Scalar Scalar::inverse() const {
    // 1/(a + b r2) = (a - b r2) / (a^2 - 2 b^2)
    if (is_zero()) throw Error(Error::Kind::Precondition, "division by zero Scalar");
    Rational den = rat_ * rat_ - 2 * root2_ * root2_;
    return Scalar(rat_ / den, -root2_ / den);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

namespace {

std::string rat_str(const Rational& q) { return q.get_str(); }

struct Cursor {
    std::string_view s;
    size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    char take() { return s[pos++]; }
};

// RAT := ['-'] digits ['/' digits]
std::optional<Rational> parse_rat(Cursor& c, std::string* err) {
    size_t start = c.pos;
    std::string num;
    if (c.peek() == '-') num.push_back(c.take());
    if (!std::isdigit(static_cast<unsigned char>(c.peek()))) {
        if (err) *err = "expected digits at offset " + std::to_string(c.pos);
        return std::nullopt;
    }
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) num.push_back(c.take());
    std::string den;
    if (c.peek() == '/') {
        c.take();
        if (!std::isdigit(static_cast<unsigned char>(c.peek()))) {
            if (err) *err = "expected denominator digits at offset " + std::to_string(c.pos);
            return std::nullopt;
        }
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) den.push_back(c.take());
    }
    (void)start;
    Rational q;
    if (den.empty()) {
        q = Rational(mpz_class(num));
    } else {
        mpz_class d(den);
        if (sgn(d) == 0) {
            if (err) *err = "zero denominator";
            return std::nullopt;
        }
        q = Rational(mpz_class(num), d);
    }
    q.canonicalize();
    return q;
}

bool eat_r2(Cursor& c) {
    if (c.pos + 1 < c.s.size() + 1 && c.peek() == 'r') {
        if (c.pos + 1 < c.s.size() && c.s[c.pos + 1] == '2') {
            c.pos += 2;
            return true;
        }
    }
    return false;
}

} // namespace

std::string Scalar::str() const {
    if (sgn(root2_) == 0) return rat_str(rat_);
    if (sgn(rat_) == 0) return rat_str(root2_) + "r2";
    std::string out = rat_str(rat_);
    if (sgn(root2_) > 0) {
        out += "+" + rat_str(root2_) + "r2";
    } else {
        Rational m = -root2_;
        out += "-" + rat_str(m) + "r2";
    }
    return out;
}

std::optional<Scalar> Scalar::try_parse(std::string_view text, std::string* err) {
    Cursor c{text};
    auto first = parse_rat(c, err);
    if (!first) return std::nullopt;
    if (c.done()) return Scalar(*first, Rational(0));
    if (eat_r2(c)) {
        if (!c.done()) {
            if (err) *err = "trailing characters after r2";
            return std::nullopt;
        }
        return Scalar(Rational(0), *first);
    }
    char sep = c.peek();
    if (sep != '+' && sep != '-') {
        if (err) *err = std::string("unexpected character '") + sep + "' in scalar";
        return std::nullopt;
    }
    c.take();
    auto second = parse_rat(c, err);
    if (!second) return std::nullopt;
    if (!eat_r2(c)) {
        if (err) *err = "expected r2 suffix";
        return std::nullopt;
    }
    if (!c.done()) {
        if (err) *err = "trailing characters after r2";
        return std::nullopt;
    }
    Rational root2 = (sep == '-') ? Rational(-*second) : *second;
    root2.canonicalize();
    return Scalar(*first, root2);
}

Scalar Scalar::parse(std::string_view text) {
    std::string err;
    auto s = try_parse(text, &err);
    if (!s) throw ParseError("bad scalar '" + std::string(text) + "': " + err);
    return *s;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace trisec
