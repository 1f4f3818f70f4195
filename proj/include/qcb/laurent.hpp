/*
 * Exact Laurent polynomials in one variable q with arbitrary-precision
 * integer coefficients, plus the balanced q-combinatorics built on them:
 *
 *   [n]   = (q^n - q^-n)/(q - q^-1)      (balanced quantum integer)
 *   [n]!  = [1][2]...[n]
 *   [m|n] = [m]!/([n]![m-n]!)            (quantum binomial, exact division)
 *
 * Values are immutable after construction and always kept in canonical
 * form: zero is (lo = 0, empty coefficient list), and a nonzero value has
 * nonzero first and last coefficients.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qcb {

using BigInt = mpz_class;

class LaurentInt {
public:
    LaurentInt() = default;
    LaurentInt(long v) { if (v != 0) coeffs_.emplace_back(v); }
    explicit LaurentInt(const BigInt& v) { if (v != 0) coeffs_.push_back(v); }

    // coeffs[k] is the coefficient of q^{lo+k}; trailing/leading zeros allowed.
    LaurentInt(long lo, std::vector<BigInt> coeffs)
        : lo_(lo), coeffs_(std::move(coeffs)) { normalize(); }

    static LaurentInt q_power(long e, BigInt c = 1) {
        LaurentInt r;
        if (c != 0) { r.lo_ = e; r.coeffs_.push_back(std::move(c)); }
        return r;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && lo_ == 0 && coeffs_[0] == 1; }

    // Exponent range; only meaningful for nonzero values.
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    BigInt coeff(long e) const {
        if (is_zero() || e < lo_ || e > hi()) return BigInt(0);
        return coeffs_[static_cast<size_t>(e - lo_)];
    }

    const BigInt& leading() const {
        if (is_zero()) throw std::logic_error("LaurentInt: leading() of zero");
        return coeffs_.back();
    }

    friend LaurentInt operator+(const LaurentInt& a, const LaurentInt& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        long lo = std::min(a.lo_, b.lo_);
        long hi = std::max(a.hi(), b.hi());
        std::vector<BigInt> c(static_cast<size_t>(hi - lo + 1));
        for (size_t k = 0; k < a.coeffs_.size(); ++k)
            c[static_cast<size_t>(a.lo_ - lo) + k] += a.coeffs_[k];
        for (size_t k = 0; k < b.coeffs_.size(); ++k)
            c[static_cast<size_t>(b.lo_ - lo) + k] += b.coeffs_[k];
        return LaurentInt(lo, std::move(c));
    }

    friend LaurentInt operator-(const LaurentInt& a) {
        LaurentInt r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend LaurentInt operator-(const LaurentInt& a, const LaurentInt& b) { return a + (-b); }

    friend LaurentInt operator*(const LaurentInt& a, const LaurentInt& b) {
        if (a.is_zero() || b.is_zero()) return LaurentInt();
        std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return LaurentInt(a.lo_ + b.lo_, std::move(c));
    }

    LaurentInt& operator+=(const LaurentInt& o) { *this = *this + o; return *this; }
    LaurentInt& operator-=(const LaurentInt& o) { *this = *this - o; return *this; }
    LaurentInt& operator*=(const LaurentInt& o) { *this = *this * o; return *this; }

    // Multiplication by q^k.
    LaurentInt shifted(long k) const {
        LaurentInt r = *this;
        if (!r.is_zero()) r.lo_ += k;
        return r;
    }

    // q -> q^{-1}.
    LaurentInt bar() const {
        if (is_zero()) return LaurentInt();
        LaurentInt r;
        r.lo_ = -hi();
        r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
        return r;
    }

    bool is_bar_fixed() const { return *this == bar(); }

    // Membership in N[q,q^{-1}].
    bool is_nonneg() const {
        for (const auto& c : coeffs_)
            if (c < 0) return false;
        return true;
    }

    // Membership in q^{-1}*Z[q^{-1}].
    bool in_qinv_lattice() const { return is_zero() || hi() <= -1; }

    // gcd of |coefficients|; 0 for the zero value.
    BigInt content() const {
        BigInt g = 0;
        for (const auto& c : coeffs_) { g = gcd(g, c); if (g == 1) break; }
        return abs(g);
    }

    long max_abs_exponent() const {
        if (is_zero()) return 0;
        return std::max(std::labs(lo_), std::labs(hi()));
    }

    // Exact division; nullopt if the quotient is not in Z[q,q^{-1}].
    std::optional<LaurentInt> divide_exact(const LaurentInt& d) const {
        if (d.is_zero()) throw std::domain_error("LaurentInt: division by zero");
        if (is_zero()) return LaurentInt();
        if (coeffs_.size() < d.coeffs_.size()) return std::nullopt;
        std::vector<BigInt> rem = coeffs_;
        std::vector<BigInt> quo(coeffs_.size() - d.coeffs_.size() + 1);
        for (size_t k = quo.size(); k-- > 0;) {
            BigInt& top = rem[k + d.coeffs_.size() - 1];
            if (top == 0) continue;
            if (top % d.coeffs_.back() != 0) return std::nullopt;
            quo[k] = top / d.coeffs_.back();
            for (size_t j = 0; j < d.coeffs_.size(); ++j)
                rem[k + j] -= quo[k] * d.coeffs_[j];
        }
        for (const auto& r : rem)
            if (r != 0) return std::nullopt;
        return LaurentInt(lo_ - d.lo_, std::move(quo));
    }

    friend bool operator==(const LaurentInt& a, const LaurentInt& b) {
        return a.lo_ == b.lo_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LaurentInt& a, const LaurentInt& b) { return !(a == b); }

    // Total order for use as map keys; not a magnitude comparison.
    friend bool operator<(const LaurentInt& a, const LaurentInt& b) {
        if (a.lo_ != b.lo_) return a.lo_ < b.lo_;
        if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
        for (size_t k = 0; k < a.coeffs_.size(); ++k) {
            int c = cmp(a.coeffs_[k], b.coeffs_[k]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    // Descending powers, e.g. "q^2 + 1 + q^-2".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (long e = hi(); e >= lo_; --e) {
            BigInt c = coeff(e);
            if (c == 0) continue;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += (c < 0) ? " - " : " + ";
            }
            BigInt a = abs(c);
            if (a != 1 || e == 0) out += a.get_str();
            if (e != 0) {
                out += "q";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

private:
    void normalize() {
        size_t first = 0, last = coeffs_.size();
        while (first < last && coeffs_[first] == 0) ++first;
        while (last > first && coeffs_[last - 1] == 0) --last;
        if (first == last) { lo_ = 0; coeffs_.clear(); return; }
        lo_ += static_cast<long>(first);
        coeffs_ = std::vector<BigInt>(coeffs_.begin() + static_cast<long>(first),
                                      coeffs_.begin() + static_cast<long>(last));
    }

    long lo_ = 0;
    std::vector<BigInt> coeffs_;
};

// Balanced quantum integer [n]; [-n] = -[n], [0] = 0.
inline LaurentInt qint(long n) {
    if (n == 0) return LaurentInt();
    bool neg = n < 0;
    long m = neg ? -n : n;
    std::vector<BigInt> c(static_cast<size_t>(2 * m - 1));
    for (long k = 0; k < m; ++k) c[static_cast<size_t>(2 * k)] = neg ? -1 : 1;
    return LaurentInt(1 - m, std::move(c));
}

inline LaurentInt qfact(long n) {
    if (n < 0) throw std::domain_error("qfact: negative argument");
    LaurentInt r(1);
    for (long k = 2; k <= n; ++k) r *= qint(k);
    return r;
}

// [m]!/([n]![m-n]!); the division is exact, anything else is an internal bug.
inline LaurentInt qbinom(long m, long n) {
    if (n < 0 || n > m) throw std::domain_error("qbinom: need 0 <= n <= m");
    auto r = qfact(m).divide_exact(qfact(n) * qfact(m - n));
    if (!r) throw std::logic_error("qbinom: inexact division (arithmetic bug)");
    return *r;
}

// ---- ordinary-polynomial helpers (values with lo = 0), used by RatQ ----

// Strips the q-power and integer content: a = sign * content * q^shift * primitive.
struct PolyParts {
    int sign = 1;        // sign of the leading coefficient
    BigInt content = 0;  // gcd of |coeffs|, 0 only for the zero value
    long shift = 0;      // lowest exponent
    LaurentInt primitive;  // lo = 0, content 1, positive leading coefficient
};

inline PolyParts poly_parts(const LaurentInt& a) {
    PolyParts p;
    if (a.is_zero()) return p;
    p.sign = sgn(a.leading()) < 0 ? -1 : 1;
    p.content = a.content();
    p.shift = a.lo();
    std::vector<BigInt> c(a.coeffs().size());
    for (size_t k = 0; k < c.size(); ++k) c[k] = a.coeffs()[k] * p.sign / p.content;
    p.primitive = LaurentInt(0, std::move(c));
    return p;
}

// Pseudo-remainder of a by b (both ordinary polynomials, b nonzero).
inline LaurentInt pseudo_rem(LaurentInt a, const LaurentInt& b) {
    long db = b.hi();
    while (!a.is_zero() && a.hi() >= db) {
        long k = a.hi() - db;
        LaurentInt scaled = a * LaurentInt(b.leading());
        a = scaled - b * LaurentInt::q_power(k, a.leading());
    }
    return a;
}

// Primitive gcd of the primitive parts of two polynomials (positive leading
// coefficient, lo = 0). gcd with zero is the other argument's primitive part.
inline LaurentInt poly_gcd_primitive(const LaurentInt& x, const LaurentInt& y) {
    LaurentInt a = poly_parts(x).primitive;
    LaurentInt b = poly_parts(y).primitive;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    while (!b.is_zero()) {
        LaurentInt r = pseudo_rem(a, b);
        a = b;
        b = poly_parts(r).primitive;
    }
    return poly_parts(a).primitive;
}

// gcd in Z[q,q^{-1}] up to units, normalized to an ordinary polynomial with
// positive leading coefficient whose content is gcd(content(a), content(b)).
inline LaurentInt laurent_gcd(const LaurentInt& a, const LaurentInt& b) {
    if (a.is_zero() && b.is_zero()) return LaurentInt();
    PolyParts pa = poly_parts(a), pb = poly_parts(b);
    BigInt c = a.is_zero() ? pb.content : (b.is_zero() ? pa.content : gcd(pa.content, pb.content));
    return poly_gcd_primitive(a, b) * LaurentInt(c);
}

}  // namespace qcb
