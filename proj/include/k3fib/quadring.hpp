#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <string>

#include "k3fib/errors.hpp"

// Exact arithmetic in Q(i sqrt(n)) and the symmetric-square morphism from
// 2x2 matrices over that field to isometries of M_n_perp tensor R in the
// basis (f, e, -g).

namespace k3fib {

using Rational = boost::multiprecision::cpp_rational;

// rat + surd * omega with omega^2 = -n (omega = i sqrt(n)).
class QuadRingElement {
public:
    QuadRingElement() : rat_(0), surd_(0), n_(0) {}
    QuadRingElement(Rational rat, Rational surd, int n) : rat_(std::move(rat)), surd_(std::move(surd)), n_(n) {
        if (n_ < 2 && surd_ != 0)
            fail(errc::invalid_argument, "QuadRingElement: ring parameter n must be >= 2");
    }
    explicit QuadRingElement(long long v) : rat_(v), surd_(0), n_(0) {}

    const Rational& rat() const { return rat_; }
    const Rational& surd() const { return surd_; }
    int ring_n() const { return n_; }
    bool is_rational() const { return surd_ == 0; }
    bool is_zero() const { return rat_ == 0 && surd_ == 0; }

    static QuadRingElement omega(int n) { return QuadRingElement(0, 1, n); }

    friend QuadRingElement operator-(const QuadRingElement& a) {
        return QuadRingElement(-a.rat_, -a.surd_, a.n_);
    }
    friend QuadRingElement operator+(const QuadRingElement& a, const QuadRingElement& b) {
        const int n = merge(a, b);
        if (a.is_zero()) return QuadRingElement(b.rat_, b.surd_, n);
        if (b.is_zero()) return QuadRingElement(a.rat_, a.surd_, n);
        return QuadRingElement(a.rat_ + b.rat_, a.surd_ + b.surd_, n);
    }
    friend QuadRingElement operator-(const QuadRingElement& a, const QuadRingElement& b) {
        return a + (-b);
    }
    friend QuadRingElement operator*(const QuadRingElement& a, const QuadRingElement& b) {
        const int n = merge(a, b);
        // (p + q w)(r + s w) = pr - n qs + (ps + qr) w
        if (a.surd_ == 0 && b.surd_ == 0)
            return QuadRingElement(a.rat_ * b.rat_, Rational(0), n);
        return QuadRingElement(a.rat_ * b.rat_ - Rational(n) * a.surd_ * b.surd_,
                               a.rat_ * b.surd_ + a.surd_ * b.rat_, n);
    }
    friend QuadRingElement operator/(const QuadRingElement& a, const QuadRingElement& b) {
        if (b.is_zero()) fail(errc::invalid_argument, "QuadRingElement: division by zero");
        const int n = merge(a, b);
        // 1/(r + s w) = (r - s w) / (r^2 + n s^2)
        const Rational norm = b.rat_ * b.rat_ + Rational(n) * b.surd_ * b.surd_;
        const QuadRingElement conj(b.rat_ / norm, -b.surd_ / norm, n);
        return a * conj;
    }
    friend bool operator==(const QuadRingElement& a, const QuadRingElement& b) {
        if (a.rat_ != b.rat_ || a.surd_ != b.surd_) return false;
        return a.surd_ == 0 || a.n_ == b.n_;
    }
    friend bool operator!=(const QuadRingElement& a, const QuadRingElement& b) { return !(a == b); }

    std::string str() const {
        if (surd_ == 0) return rat_.str();
        return rat_.str() + " + (" + surd_.str() + ")w";
    }

private:
    // elements with surd = 0 are plain rationals and live in every ring
    static int merge(const QuadRingElement& a, const QuadRingElement& b) {
        if (a.surd_ == 0 && b.surd_ == 0) return a.n_ ? a.n_ : b.n_;
        if (a.surd_ == 0) return b.n_;
        if (b.surd_ == 0) return a.n_;
        if (a.n_ != b.n_)
            fail(errc::domain_mismatch, "QuadRingElement: mixing Q(i sqrt(" +
                                            std::to_string(a.n_) + ")) with Q(i sqrt(" +
                                            std::to_string(b.n_) + "))");
        return a.n_;
    }

    Rational rat_, surd_;
    int n_;
};

template <size_t N>
struct QuadMatrix {
    std::array<std::array<QuadRingElement, N>, N> m;

    QuadRingElement& operator()(size_t i, size_t j) { return m[i][j]; }
    const QuadRingElement& operator()(size_t i, size_t j) const { return m[i][j]; }

    static QuadMatrix identity() {
        QuadMatrix r;
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j) r.m[i][j] = QuadRingElement(i == j ? 1 : 0);
        return r;
    }

    friend QuadMatrix operator*(const QuadMatrix& a, const QuadMatrix& b) {
        QuadMatrix r;
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j) {
                QuadRingElement s(0);
                for (size_t k = 0; k < N; ++k) s = s + a.m[i][k] * b.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }
    friend bool operator==(const QuadMatrix& a, const QuadMatrix& b) { return a.m == b.m; }
    friend bool operator!=(const QuadMatrix& a, const QuadMatrix& b) { return !(a.m == b.m); }

    QuadMatrix transpose() const {
        QuadMatrix r;
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j) r.m[i][j] = m[j][i];
        return r;
    }
};

using QuadMatrix2 = QuadMatrix<2>;
using QuadMatrix3 = QuadMatrix<3>;

inline QuadRingElement det2(const QuadMatrix2& g) {
    return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
}

inline QuadRingElement det3(const QuadMatrix3& g) {
    return g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
           g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
           g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
}

inline QuadMatrix2 quad_matrix2(const QuadRingElement& a, const QuadRingElement& b,
                                const QuadRingElement& c, const QuadRingElement& d) {
    QuadMatrix2 g;
    g(0, 0) = a;
    g(0, 1) = b;
    g(1, 0) = c;
    g(1, 1) = d;
    return g;
}

inline QuadMatrix2 int_matrix2(long long a, long long b, long long c, long long d) {
    return quad_matrix2(QuadRingElement(a), QuadRingElement(b), QuadRingElement(c),
                        QuadRingElement(d));
}

// The involution part of O(M_n_perp)*, written in the basis (f, e, -g).
// Determinant -1; not a symmetric square of any real 2x2 matrix.
inline QuadMatrix3 iota_matrix() {
    QuadMatrix3 r = QuadMatrix3::identity();
    r(0, 0) = QuadRingElement(0);
    r(2, 2) = QuadRingElement(0);
    r(0, 2) = QuadRingElement(-1);
    r(2, 0) = QuadRingElement(-1);
    return r;
}

// The complex rotation of the Fricke involution: [[0, -w/n], [w, 0]] with
// w = i sqrt(n). Its image under the symmetric-square map is iota.
inline QuadMatrix2 fricke_rotation(int n) {
    if (n < 2) fail(errc::unsupported_n, "fricke_rotation: n must be >= 2");
    const QuadRingElement w = QuadRingElement::omega(n);
    return quad_matrix2(QuadRingElement(0), -(w / QuadRingElement(n)), w, QuadRingElement(0));
}

// Pairing preserved by the symmetric-square image: [[0,0,-1],[0,2n,0],[-1,0,0]]
// in the basis (f, e, -g).
inline QuadMatrix3 mn_perp_pairing(int n) {
    QuadMatrix3 g;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) g(i, j) = QuadRingElement(0);
    g(0, 2) = QuadRingElement(-1);
    g(2, 0) = QuadRingElement(-1);
    g(1, 1) = QuadRingElement(2LL * n);
    return g;
}

// Symmetric-square morphism
//   A(gamma) = [[a^2, -2nab, nb^2], [-ac/n, ad+bc, -bd], [c^2/n, -2cd, d^2]]
// for gamma = [[a,b],[c,d]] unimodular over Q(i sqrt(n)). A is a
// homomorphism, preserves mn_perp_pairing(n), and det A(gamma) =
// det(gamma)^3.
inline QuadMatrix3 dolgachev_map(const QuadMatrix2& gamma, int n) {
    if (n < 1) fail(errc::invalid_argument, "dolgachev_map: n must be >= 1");
    const QuadRingElement d = det2(gamma);
    if (d != QuadRingElement(1) && d != QuadRingElement(-1))
        fail(errc::not_unimodular, "dolgachev_map: input matrix has determinant " + d.str());
    const QuadRingElement &a = gamma(0, 0), &b = gamma(0, 1), &c = gamma(1, 0), &dd = gamma(1, 1);
    const QuadRingElement N(static_cast<long long>(n));
    const QuadRingElement two(2);
    QuadMatrix3 r;
    r(0, 0) = a * a;
    r(0, 1) = -(two * N * a * b);
    r(0, 2) = N * b * b;
    r(1, 0) = -(a * c / N);
    r(1, 1) = a * dd + b * c;
    r(1, 2) = -(b * dd);
    r(2, 0) = c * c / N;
    r(2, 1) = -(two * c * dd);
    r(2, 2) = dd * dd;
    return r;
}

}  // namespace k3fib
