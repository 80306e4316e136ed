// Exact integer and rational arithmetic used throughout the library.
// All computations are exact; no floating point anywhere.

#ifndef NVRT_RATIONAL_HPP
#define NVRT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace nvrt {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Floor division/modulo on Int (cpp_int's operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div by zero");
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r = a - floor_div(a, b) * b;
    return r;
}

inline Int rational_floor(const Rational& r) {
    return floor_div(numerator(r), denominator(r));
}

// Fractional part in [0, 1).
inline Rational frac(const Rational& r) {
    return r - Rational(rational_floor(r));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "p/q" or "p"; reduced form on output.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in rational: " + s);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw parse_error("bad rational: " + s);
    }
}

inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace nvrt

#endif
