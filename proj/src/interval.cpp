#include "cb/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace cb {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double down(double x) { return std::isnan(x) ? -inf : std::nextafter(x, -inf); }
double up(double x) { return std::isnan(x) ? inf : std::nextafter(x, inf); }

Interval widen(double lo, double hi) { return {down(lo), up(hi)}; }

// Product where a zero factor wins over an infinite one.
double mul0(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

// a^n for a >= 0, rounded toward +inf or -inf at every step.
double pow_up(double a, unsigned n) {
    double r = 1.0;
    for (unsigned i = 0; i < n; ++i) r = up(mul0(r, a));
    return r;
}

double pow_down(double a, unsigned n) {
    double r = 1.0;
    for (unsigned i = 0; i < n; ++i) r = std::max(0.0, down(mul0(r, a)));
    return r;
}

}  // namespace

Interval Interval::entire() { return {-inf, inf}; }

Interval Interval::hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

Interval Interval::from_decimal(const std::string& text) {
    double v = std::strtod(text.c_str(), nullptr);
    bool integral = text.find_first_not_of("0123456789") == std::string::npos;
    if (integral && std::fabs(v) < 9007199254740992.0) return {v, v};
    return widen(v, v);
}

int Interval::sign(double margin) const {
    if (positive(margin)) return 1;
    if (negative(margin)) return -1;
    return 0;
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator+(const Interval& a, const Interval& b) { return widen(a.lo + b.lo, a.hi + b.hi); }

Interval operator-(const Interval& a, const Interval& b) { return widen(a.lo - b.hi, a.hi - b.lo); }

Interval operator*(const Interval& a, const Interval& b) {
    double p[4] = {mul0(a.lo, b.lo), mul0(a.lo, b.hi), mul0(a.hi, b.lo), mul0(a.hi, b.hi)};
    return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval pow(const Interval& a, unsigned n) {
    if (n == 0) return {1.0, 1.0};
    if (n == 1) return a;
    if (n % 2 == 1) {
        double lo = a.lo >= 0 ? pow_down(a.lo, n) : -pow_up(-a.lo, n);
        double hi = a.hi >= 0 ? pow_up(a.hi, n) : -pow_down(-a.hi, n);
        return {lo, hi};
    }
    if (a.lo >= 0) return {pow_down(a.lo, n), pow_up(a.hi, n)};
    if (a.hi <= 0) return {pow_down(-a.hi, n), pow_up(-a.lo, n)};
    return {0.0, pow_up(std::max(-a.lo, a.hi), n)};
}

Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

std::string to_string(const Interval& a) {
    std::ostringstream os;
    os.precision(17);
    os << "[" << a.lo << ", " << a.hi << "]";
    return os.str();
}

}  // namespace cb
