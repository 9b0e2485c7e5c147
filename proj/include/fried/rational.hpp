#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace fried {

using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat &r) { return static_cast<double>(r); }

// Canonical "p/q" (or plain "p") encoding used by the class-file schema.
inline std::string rat_to_string(const Rat &r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string &s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(num, den);
}

// Nearest rational with bounded denominator (continued fractions); used to turn
// float eigenvalue estimates into exact candidates that are then verified.
inline Rat rationalize(double x, long max_den = 64) {
    bool neg = x < 0;
    if (neg) x = -x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 1e15) break;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = v - fl;
        if (rem < 1e-12) break;
        v = 1.0 / rem;
    }
    Rat r(p1, q1 == 0 ? 1 : q1);
    return neg ? -r : r;
}

// Gaussian rational a + bi.
struct GQ {
    Rat re, im;

    GQ() = default;
    GQ(Rat r) : re(std::move(r)) {}
    GQ(long r) : re(r) {}
    GQ(int r) : re(r) {}
    GQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GQ i() { return GQ(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    GQ conj() const { return GQ(re, -im); }
    Rat norm2() const { return re * re + im * im; }

    GQ operator-() const { return GQ(-re, -im); }
    GQ &operator+=(const GQ &o) { re += o.re; im += o.im; return *this; }
    GQ &operator-=(const GQ &o) { re -= o.re; im -= o.im; return *this; }

    friend GQ operator+(const GQ &a, const GQ &b) { return GQ(a.re + b.re, a.im + b.im); }
    friend GQ operator-(const GQ &a, const GQ &b) { return GQ(a.re - b.re, a.im - b.im); }
    friend GQ operator*(const GQ &a, const GQ &b) {
        return GQ(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GQ operator/(const GQ &a, const GQ &b) {
        Rat n = b.norm2();
        if (n == 0) throw std::domain_error("division by zero GQ");
        GQ num = a * b.conj();
        return GQ(num.re / n, num.im / n);
    }
    GQ &operator*=(const GQ &o) { *this = *this * o; return *this; }
    GQ &operator/=(const GQ &o) { *this = *this / o; return *this; }

    friend bool operator==(const GQ &a, const GQ &b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GQ &a, const GQ &b) { return !(a == b); }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    std::string str() const {
        if (im == 0) return rat_to_string(re);
        if (re == 0) return rat_to_string(im) + "i";
        return rat_to_string(re) + (im > 0 ? "+" : "") + rat_to_string(im) + "i";
    }
};

} // namespace fried
