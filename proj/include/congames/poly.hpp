#ifndef CONGAMES_POLY_HPP
#define CONGAMES_POLY_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "congames/numeric.hpp"

namespace congames {

// ---------------------------------------------------------------------------
// Univariate polynomials (degree <= 8 in practice; rows/columns of Poly2).
// ---------------------------------------------------------------------------

template <class Num>
struct Poly1 {
    std::vector<Num> coeffs;  // coeffs[i] * s^i

    Poly1() = default;
    explicit Poly1(std::vector<Num> c) : coeffs(std::move(c)) { trim(); }

    void trim() {
        while (coeffs.size() > 1 && NumTraits<Num>::is_zero(coeffs.back())) coeffs.pop_back();
        if (coeffs.empty()) coeffs.push_back(NumTraits<Num>::zero());
    }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Num& leading() const { return coeffs.back(); }

    Num eval(const Num& s) const {
        Num v = NumTraits<Num>::zero();
        for (std::size_t i = coeffs.size(); i-- > 0;) v = v * s + coeffs[i];
        return v;
    }
    Poly1 derivative() const {
        if (coeffs.size() <= 1) return Poly1({NumTraits<Num>::zero()});
        std::vector<Num> d(coeffs.size() - 1);
        for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * Num(static_cast<int>(i));
        return Poly1(std::move(d));
    }
};

// Upper bound on the positive real roots of p (leading coefficient > 0),
// Lagrange-MacLaurin form: 1 + max over negative coefficients a_i of
// (|a_i| / a_lead)^(1/(deg-i)). Returns 0 when no coefficient is negative.
template <class Num>
long long positive_root_bound(const Poly1<Num>& p) {
    const int deg = p.degree();
    double lead = to_double(p.leading());
    double best = 0.0;
    for (int i = 0; i < deg; ++i) {
        double c = to_double(p.coeffs[static_cast<std::size_t>(i)]);
        if (c >= 0) continue;
        double r = std::pow(-c / lead, 1.0 / (deg - i));
        best = std::max(best, r);
    }
    if (best == 0.0) return 0;
    double bound = 1.0 + best * (1.0 + 1e-9);
    if (bound > 9.0e15) throw std::overflow_error("root bound overflow");
    long long b = static_cast<long long>(std::ceil(bound)) + 1;
    if constexpr (NumTraits<Num>::is_exact) {
        // double arithmetic may round down; verify soundness exactly by
        // checking all coefficient conditions at the integer bound.
        while (true) {
            bool ok = true;
            for (int i = 0; i < deg && ok; ++i) {
                const Num& c = p.coeffs[static_cast<std::size_t>(i)];
                if (c < Num(0)) {
                    // need (b-1)^(deg-i) * lead >= |c|
                    Num pow = Num(1);
                    for (int k = 0; k < deg - i; ++k) pow *= Num(static_cast<long>(b - 1));
                    if (pow * p.leading() < -c) ok = false;
                }
            }
            if (ok) break;
            b *= 2;
        }
    }
    return b;
}

// ---------------------------------------------------------------------------
// Interval arithmetic: exact endpoints for Rational, outward-rounded for
// double. Used for certified lower bounds of polynomials over real segments.
// ---------------------------------------------------------------------------

template <class Num>
struct Interval {
    Num lo{}, hi{};

    static Interval point(const Num& x) { return {x, x}; }
};

namespace detail {

inline double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

template <class Num>
Interval<Num> iv_add(const Interval<Num>& a, const Interval<Num>& b) {
    if constexpr (NumTraits<Num>::is_exact)
        return {a.lo + b.lo, a.hi + b.hi};
    else
        return {round_down(a.lo + b.lo), round_up(a.hi + b.hi)};
}

template <class Num>
Interval<Num> iv_mul(const Interval<Num>& a, const Interval<Num>& b) {
    Num p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Num lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Num hi = std::max(std::max(p1, p2), std::max(p3, p4));
    if constexpr (NumTraits<Num>::is_exact)
        return {lo, hi};
    else
        return {round_down(lo), round_up(hi)};
}

}  // namespace detail

template <class Num>
Interval<Num> eval_interval(const Poly1<Num>& p, const Interval<Num>& x) {
    Interval<Num> acc = Interval<Num>::point(NumTraits<Num>::zero());
    for (std::size_t i = p.coeffs.size(); i-- > 0;) {
        acc = detail::iv_mul(acc, x);
        acc = detail::iv_add(acc, Interval<Num>::point(p.coeffs[i]));
    }
    return acc;
}

// Adaptive certification that p(s) >= threshold on [lo, hi]. `dips` collects
// midpoints of the deepest leaves whose enclosure still crosses the threshold
// (candidate tight directions or violations). Soundness: when `proven` is
// true, every s in [lo, hi] satisfies p(s) >= threshold - slack where slack
// bounds the residual enclosure defect at the deepest level (zero when no dip
// was recorded).
template <class Num>
struct AxisCertificate {
    bool proven = true;          // no enclosure ended strictly below threshold at depth cap
    Num min_enclosure{};         // certified lower bound for inf p over [lo,hi]
    std::vector<double> dips;    // approximate locations where p comes within slack of threshold
};

template <class Num>
AxisCertificate<Num> certify_at_least(const Poly1<Num>& p, const Num& lo, const Num& hi,
                                      const Num& threshold, int max_depth = 48,
                                      int initial_segments = 32,
                                      double min_width = 0.0) {
    AxisCertificate<Num> cert;
    bool have_min = false;
    struct Item {
        Interval<Num> seg;
        int depth;
    };
    std::vector<Item> stack;
    Num width = hi - lo;
    for (int k = 0; k < initial_segments; ++k) {
        Num a = lo + width * Num(k) / Num(initial_segments);
        Num b = lo + width * Num(k + 1) / Num(initial_segments);
        stack.push_back({{a, b}, 0});
    }
    auto note_min = [&](const Num& v) {
        if (!have_min || v < cert.min_enclosure) {
            cert.min_enclosure = v;
            have_min = true;
        }
    };
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        Interval<Num> enc = eval_interval(p, item.seg);
        if (!(enc.lo < threshold)) {
            note_min(enc.lo);
            continue;
        }
        double seg_width = to_double(item.seg.hi) - to_double(item.seg.lo);
        if (item.depth >= max_depth || seg_width <= min_width) {
            note_min(enc.lo);
            cert.dips.push_back((to_double(item.seg.lo) + to_double(item.seg.hi)) / 2);
            // Enclosure still below the threshold at the resolution limit: a
            // sure violation only if the upper end is below too; otherwise the
            // caller decides by probing the dip point.
            if (enc.hi < threshold) cert.proven = false;
            continue;
        }
        Num mid = (item.seg.lo + item.seg.hi) / Num(2);
        stack.push_back({{item.seg.lo, mid}, item.depth + 1});
        stack.push_back({{mid, item.seg.hi}, item.depth + 1});
    }
    if (!have_min) cert.min_enclosure = threshold;
    return cert;
}

// ---------------------------------------------------------------------------
// Bivariate polynomials g(K, O), total degree <= 4.
// ---------------------------------------------------------------------------

template <class Num>
struct Poly2 {
    static constexpr int kMax = 5;
    std::array<std::array<Num, kMax>, kMax> c{};  // c[i][j] * K^i * O^j

    Poly2() {
        for (auto& row : c) row.fill(NumTraits<Num>::zero());
    }

    Num& at(int i, int j) { return c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const Num& at(int i, int j) const {
        return c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    void add_term(int i, int j, const Num& v) { at(i, j) += v; }

    int total_degree() const {
        int d = 0;
        for (int i = 0; i < kMax; ++i)
            for (int j = 0; j < kMax; ++j)
                if (!NumTraits<Num>::is_zero(at(i, j))) d = std::max(d, i + j);
        return d;
    }
    int degree_in_k() const {
        int d = 0;
        for (int i = 0; i < kMax; ++i)
            for (int j = 0; j < kMax; ++j)
                if (!NumTraits<Num>::is_zero(at(i, j))) d = std::max(d, i);
        return d;
    }

    Num eval(const Num& k, const Num& o) const {
        // Horner in K; inner coefficients Horner in O.
        Num acc = NumTraits<Num>::zero();
        for (int i = kMax - 1; i >= 0; --i) {
            Num inner = NumTraits<Num>::zero();
            for (int j = kMax - 1; j >= 0; --j) inner = inner * o + at(i, j);
            acc = acc * k + inner;
        }
        return acc;
    }

    // g(. , O) as a univariate polynomial in K for a fixed integer O.
    Poly1<Num> row_in_k(const Num& o) const {
        std::vector<Num> rc(kMax, NumTraits<Num>::zero());
        for (int i = 0; i < kMax; ++i) {
            Num inner = NumTraits<Num>::zero();
            for (int j = kMax - 1; j >= 0; --j) inner = inner * o + at(i, j);
            rc[static_cast<std::size_t>(i)] = inner;
        }
        return Poly1<Num>(std::move(rc));
    }
    // g(K, .) as a univariate polynomial in O for a fixed integer K.
    Poly1<Num> column_in_o(const Num& k) const {
        std::vector<Num> cc(kMax, NumTraits<Num>::zero());
        for (int j = 0; j < kMax; ++j) {
            Num inner = NumTraits<Num>::zero();
            for (int i = kMax - 1; i >= 0; --i) inner = inner * k + at(i, j);
            cc[static_cast<std::size_t>(j)] = inner;
        }
        return Poly1<Num>(std::move(cc));
    }

    // Homogeneous part of degree d, restricted to the ray (s, 1):
    // H_d(s, 1) = sum_{i+j=d} c[i][j] s^i.
    Poly1<Num> homogeneous_on_ray(int d) const {
        std::vector<Num> hc(static_cast<std::size_t>(d) + 1, NumTraits<Num>::zero());
        for (int i = 0; i <= d && i < kMax; ++i) {
            int j = d - i;
            if (j < kMax) hc[static_cast<std::size_t>(i)] = at(i, j);
        }
        return Poly1<Num>(std::move(hc));
    }
    // Same with every coefficient replaced by its absolute value.
    Poly1<Num> homogeneous_abs_on_ray(int d) const {
        std::vector<Num> hc(static_cast<std::size_t>(d) + 1, NumTraits<Num>::zero());
        for (int i = 0; i <= d && i < kMax; ++i) {
            int j = d - i;
            if (j < kMax) hc[static_cast<std::size_t>(i)] = NumTraits<Num>::abs(at(i, j));
        }
        return Poly1<Num>(std::move(hc));
    }

    Poly2 operator*(const Num& scale) const {
        Poly2 out;
        for (int i = 0; i < kMax; ++i)
            for (int j = 0; j < kMax; ++j) out.at(i, j) = at(i, j) * scale;
        return out;
    }
    Poly2 operator+(const Poly2& other) const {
        Poly2 out;
        for (int i = 0; i < kMax; ++i)
            for (int j = 0; j < kMax; ++j) out.at(i, j) = at(i, j) + other.at(i, j);
        return out;
    }

    std::string to_text() const {
        std::ostringstream os;
        bool first = true;
        for (int d = total_degree(); d >= 0; --d) {
            for (int i = d; i >= 0; --i) {
                int j = d - i;
                if (i >= kMax || j >= kMax || NumTraits<Num>::is_zero(at(i, j))) continue;
                double v = to_double(at(i, j));
                if (!first) os << (v >= 0 ? " + " : " - ");
                else if (v < 0) os << "-";
                os << std::abs(v);
                if (i) os << "*K" << (i > 1 ? "^" + std::to_string(i) : "");
                if (j) os << "*O" << (j > 1 ? "^" + std::to_string(j) : "");
                first = false;
            }
        }
        if (first) os << "0";
        return os.str();
    }
};

template <class Num>
Poly2<double> to_float_poly(const Poly2<Num>& p) {
    Poly2<double> out;
    for (int i = 0; i < Poly2<Num>::kMax; ++i)
        for (int j = 0; j < Poly2<Num>::kMax; ++j) out.at(i, j) = to_double(p.at(i, j));
    return out;
}

}  // namespace congames

#endif  // CONGAMES_POLY_HPP
