#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "trisec/error.hpp"

namespace trisec {

using Rational = mpq_class;

// Element of the ordered field Q(sqrt 2), stored as rat + root2 * sqrt(2)
// with both parts arbitrary-precision rationals in lowest terms.  Equality
// is structural; sign tests are exact and never touch floating point.
class Scalar {
  public:
    Scalar() : rat_(0), root2_(0) {}
    Scalar(int v) : rat_(v), root2_(0) {}
    Scalar(long v) : rat_(v), root2_(0) {}
    Scalar(const Rational& r) : rat_(r), root2_(0) { canon(rat_); }
    Scalar(Rational rat, Rational root2) : rat_(std::move(rat)), root2_(std::move(root2)) {
        canon(rat_);
        canon(root2_);
    }

    static Scalar sqrt2() { return Scalar(Rational(0), Rational(1)); }

    const Rational& rat() const { return rat_; }
    const Rational& root2() const { return root2_; }

    bool is_zero() const { return sgn(rat_) == 0 && sgn(root2_) == 0; }
    bool is_rational() const { return sgn(root2_) == 0; }

    // Exact sign of rat + root2*sqrt(2).  When the two parts have opposite
    // signs the comparison reduces to rat^2 vs 2*root2^2.
    int sign() const;

    Scalar operator-() const { return Scalar(-rat_, -root2_); }

    Scalar& operator+=(const Scalar& o) {
        rat_ += o.rat_;
        root2_ += o.root2_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        rat_ -= o.rat_;
        root2_ -= o.root2_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;
    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    bool operator==(const Scalar& o) const { return rat_ == o.rat_ && root2_ == o.root2_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const { return (*this - o).sign() < 0; }
    bool operator>(const Scalar& o) const { return (*this - o).sign() > 0; }
    bool operator<=(const Scalar& o) const { return (*this - o).sign() <= 0; }
    bool operator>=(const Scalar& o) const { return (*this - o).sign() >= 0; }

    // Text form: RAT | RAT"r2" | RAT("+"|"-")RAT"r2", e.g. "3", "-1/2",
    // "1r2", "1/2+3r2".  Printing and parsing round-trip bit-exactly.
    std::string str() const;
    static Scalar parse(std::string_view text);
    static std::optional<Scalar> try_parse(std::string_view text, std::string* err = nullptr);

  private:
    static void canon(Rational& q) { q.canonicalize(); }

    Rational rat_;
    Rational root2_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace trisec
