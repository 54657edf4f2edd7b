#ifndef CONGAMES_NUMERIC_HPP
#define CONGAMES_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace congames {

// Exact rational scalar used for all rational-data computations.
// Games with irrational data (golden-ratio weights, surd coefficients)
// use `double` with the tolerances in NumTraits<double>.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "p/q", or a plain decimal string ("0.318", "-2.5e-3") into an
// exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

// Decimal/fraction rendering: "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

// n-th harmonic number, exact.
Rational harmonic(long n);

// floor(sqrt(n)) for n >= 0, and exact-square detection.
long long isqrt_floor(long long n);
inline bool is_perfect_square(long long n) {
    if (n < 0) return false;
    long long s = isqrt_floor(n);
    return s * s == n;
}

// Comparison policy per scalar type. Exact types compare exactly; floating
// point comparisons carry an absolute-plus-relative tolerance so that the
// irrational lower-bound instances (whose equilibrium conditions hold with
// equality) are classified consistently.
template <class Num>
struct NumTraits;

template <>
struct NumTraits<Rational> {
    static constexpr bool is_exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static bool less(const Rational& a, const Rational& b) { return a < b; }
    // strict improvement test used by dynamics (exact in rational mode)
    static bool strictly_less(const Rational& a, const Rational& b) { return a < b; }
    // a <= b within tolerance (exact here)
    static bool leq(const Rational& a, const Rational& b) { return a <= b; }
    static Rational abs(const Rational& x) { return ::abs(x); }
};

template <>
struct NumTraits<double> {
    static constexpr bool is_exact = false;
    static constexpr double tolerance = 1e-9;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double x) { return std::fabs(x) <= tolerance; }
    static bool less(double a, double b) { return a < b; }
    static bool strictly_less(double a, double b) {
        return a < b - tolerance * std::max({1.0, std::fabs(a), std::fabs(b)});
    }
    static bool leq(double a, double b) {
        return a <= b + tolerance * std::max({1.0, std::fabs(a), std::fabs(b)});
    }
    static double abs(double x) { return std::fabs(x); }
};

// Scalar conversion helper: Rational -> Rational, Rational -> double, etc.
template <class To, class From>
To num_cast(const From& x) {
    if constexpr (std::is_same_v<To, From>) {
        return x;
    } else if constexpr (std::is_same_v<To, double>) {
        return to_double(x);
    } else {
        static_assert(std::is_same_v<To, Rational>);
        return Rational(x);  // exact binary expansion for double inputs
    }
}

}  // namespace congames

#endif  // CONGAMES_NUMERIC_HPP
