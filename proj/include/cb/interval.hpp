#pragma once

#include <string>

namespace cb {

// Closed interval of doubles. Every inexact operation rounds to nearest and
// then moves each bound one ulp outward, so the result encloses the exact one.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
    Interval(double l, double h) : lo(l), hi(h) {}

    static Interval entire();
    static Interval hull(double a, double b);
    // Enclosure of a decimal literal.
    static Interval from_decimal(const std::string& text);

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool positive(double margin = 0.0) const { return lo > margin; }
    bool negative(double margin = 0.0) const { return hi < -margin; }
    // +1 / -1 when the interval lies strictly beyond +-margin, 0 otherwise.
    int sign(double margin = 0.0) const;
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * lo + 0.5 * hi; }
    bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
};

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval pow(const Interval& a, unsigned n);
Interval hull(const Interval& a, const Interval& b);

std::string to_string(const Interval& a);

}  // namespace cb
