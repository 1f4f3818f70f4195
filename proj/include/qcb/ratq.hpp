/*
 * The field Q(q) as reduced fractions of LaurentInt.
 *
 * Canonical form: the denominator is an ordinary polynomial (lowest exponent
 * 0, hence nonzero constant term) with positive leading coefficient, sharing
 * no polynomial factor with the numerator, and its integer content is coprime
 * to the numerator's. Equality is therefore representational equality.
 */
#pragma once

#include <stdexcept>
#include <string>

#include "qcb/laurent.hpp"

namespace qcb {

class RatQ {
public:
    RatQ() : den_(1) {}
    RatQ(long v) : num_(v), den_(1) {}
    RatQ(LaurentInt n) : num_(std::move(n)), den_(1) {}
    RatQ(LaurentInt n, LaurentInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("RatQ: zero denominator");
        normalize();
    }

    const LaurentInt& num() const { return num_; }
    const LaurentInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_one(); }

    // Requires a Laurent value; use is_laurent() to test first.
    const LaurentInt& as_laurent() const {
        if (!is_laurent()) throw std::domain_error("RatQ: value not in Z[q,q^-1]");
        return num_;
    }

    friend RatQ operator+(const RatQ& a, const RatQ& b) {
        return RatQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatQ operator-(const RatQ& a) {
        RatQ r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatQ operator-(const RatQ& a, const RatQ& b) { return a + (-b); }
    friend RatQ operator*(const RatQ& a, const RatQ& b) {
        return RatQ(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatQ operator/(const RatQ& a, const RatQ& b) {
        if (b.is_zero()) throw std::domain_error("RatQ: division by zero");
        return RatQ(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatQ& operator+=(const RatQ& o) { *this = *this + o; return *this; }
    RatQ& operator-=(const RatQ& o) { *this = *this - o; return *this; }
    RatQ& operator*=(const RatQ& o) { *this = *this * o; return *this; }
    RatQ& operator/=(const RatQ& o) { *this = *this / o; return *this; }

    RatQ bar() const { return RatQ(num_.bar(), den_.bar()); }
    bool is_bar_fixed() const { return *this == bar(); }

    friend bool operator==(const RatQ& a, const RatQ& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatQ& a, const RatQ& b) { return !(a == b); }
    friend bool operator<(const RatQ& a, const RatQ& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    std::string str() const {
        if (is_laurent()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) { den_ = LaurentInt(1); return; }
        // Push the denominator's q-power and sign into the numerator.
        PolyParts pd = poly_parts(den_);
        num_ = num_.shifted(-pd.shift);
        if (pd.sign < 0) num_ = -num_;
        den_ = pd.primitive * LaurentInt(pd.content);
        // Cancel the common polynomial factor.
        LaurentInt g = poly_gcd_primitive(num_, den_);
        if (!g.is_one()) {
            num_ = *num_.divide_exact(g);
            den_ = *den_.divide_exact(g);
        }
        // Cancel the common integer content.
        BigInt c = gcd(num_.content(), den_.content());
        if (c > 1) {
            num_ = *num_.divide_exact(LaurentInt(c));
            den_ = *den_.divide_exact(LaurentInt(c));
        }
    }

    LaurentInt num_;
    LaurentInt den_;
};

}  // namespace qcb
