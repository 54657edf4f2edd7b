#ifndef CONGAMES_VERIFY_HPP
#define CONGAMES_VERIFY_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "congames/poly.hpp"

namespace congames {

enum class FamilyDomain { NonNegIntegers, NonNegReals };

// One per-resource dual feasibility condition: g(K_e, O_e) >= 0 over the
// stated domain. Integer families may carry integrality side conditions
// (k_min/o_min) and finite boxes (harmonic families); real families may note
// the unit gap of normalized congestions (values are 0 or >= 1).
template <class Num>
struct ConstraintFamily {
    std::string label;
    Poly2<Num> poly;
    FamilyDomain domain = FamilyDomain::NonNegIntegers;
    long long k_min = 0, o_min = 0;
    std::optional<long long> k_max, o_max;
    bool has_harmonic = false;
    Num hk{}, ho{}, pk{}, po{};  // + hk*H_K + ho*H_O + pk*[K>=1] + po*[O>=1]
    bool o_unit_gap = false;     // real domain: O in {0} u [1, inf)
    std::string assumption;      // reduction assumptions baked into the family
};

enum class VerifyStatus { Proven, Refuted, Unproven };

struct TightPair {
    long long k = 0, o = 0;
    bool operator<(const TightPair& other) const {
        return std::pair(k, o) < std::pair(other.k, other.o);
    }
};

struct FamilyVerdict {
    VerifyStatus status = VerifyStatus::Proven;
    std::vector<TightPair> tight;
    bool tight_truncated = false;
    std::vector<std::pair<double, double>> tight_real;  // non-integer tight points (real domains)
    std::vector<double> tight_rays;                     // directions K = s*O, asymptotically tight
    std::optional<std::pair<double, double>> witness;   // point with g < 0
    std::string detail;
};

struct VerifyOptions {
    long long sweep_bound = 2000;  // B: integer sweep covers min(K,O) <= B
    double float_margin = 1e-9;    // float families: proven requires g >= -margin
    double tight_eps = 1e-6;       // float families: g < tight_eps counts as tight
    std::size_t max_tight = 64;
    long long row_bound_cap = 5'000'000;  // per-row root-bound sanity cap
};

namespace verifydetail {

template <class Num>
bool below_zero(const Num& v, const VerifyOptions& opts) {
    if constexpr (NumTraits<Num>::is_exact)
        return v < 0;
    else
        return v < -opts.float_margin;
}

template <class Num>
bool is_tight(const Num& v, const VerifyOptions& opts) {
    if constexpr (NumTraits<Num>::is_exact)
        return NumTraits<Num>::is_zero(v);
    else
        return std::fabs(v) < opts.tight_eps;
}

struct TightCollector {
    std::set<TightPair> pairs;
    bool truncated = false;
    std::size_t cap;

    explicit TightCollector(std::size_t c) : cap(c) {}
    void add(long long k, long long o) {
        if (pairs.size() >= cap) {
            truncated = true;
            return;
        }
        pairs.insert({k, o});
    }
    void flush(FamilyVerdict& verdict) const {
        verdict.tight.assign(pairs.begin(), pairs.end());
        verdict.tight_truncated = truncated;
    }
};

// ---- fast integer evaluation ------------------------------------------------

struct ScaledIntPoly {
    // poly * denominator_lcm with coefficients in int64 (sign checks are
    // scale-invariant); evaluation in __int128. Points with
    // max(k,1)*max(o,1) > safe_coord_product risk overflow and fall back to
    // exact rational evaluation.
    long long c[5][5] = {};
    long long safe_coord_product = 0;
    bool usable = false;
};

inline ScaledIntPoly scale_to_int(const Poly2<Rational>& p) {
    ScaledIntPoly out;
    mpz_class lcm_den(1);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), lcm_den.get_mpz_t(), p.at(i, j).get_den().get_mpz_t());
            lcm_den = l;
        }
    if (!lcm_den.fits_slong_p() || lcm_den.get_si() > 1'000'000'000) return out;
    long long max_abs = 1;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            mpq_class scaled = p.at(i, j) * Rational(lcm_den);
            mpz_class num = scaled.get_num();  // denominator is 1 after scaling
            if (scaled.get_den() != 1 || !num.fits_slong_p()) return out;
            long long v = num.get_si();
            if (std::llabs(v) > 2'000'000'000LL) return out;
            out.c[i][j] = v;
            max_abs = std::max(max_abs, std::llabs(v));
        }
    // Horner intermediates are bounded by 25 * max|c| * (k*o)^4; keep that
    // under ~1.6e38 (int128 headroom).
    double p4 = 1.6e38 / (25.0 * static_cast<double>(max_abs));
    out.safe_coord_product = static_cast<long long>(std::pow(p4, 0.25) * 0.9);
    out.usable = out.safe_coord_product >= 4;
    return out;
}

inline __int128 eval_scaled(const ScaledIntPoly& p, long long k, long long o) {
    __int128 opow[5];
    opow[0] = 1;
    for (int j = 1; j < 5; ++j) opow[j] = opow[j - 1] * o;
    __int128 acc = 0;
    for (int i = 4; i >= 0; --i) {
        __int128 inner = 0;
        for (int j = 0; j < 5; ++j)
            if (p.c[i][j]) inner += static_cast<__int128>(p.c[i][j]) * opow[j];
        acc = acc * k + inner;
    }
    return acc;
}

template <class Num>
struct RowScan {
    const Poly2<Num>& poly;
    const VerifyOptions& opts;
    FamilyVerdict& verdict;
    TightCollector& tight;
    ScaledIntPoly fast;  // rational families only

    // Evaluate at one integer point and classify. Returns false on refutation.
    bool classify(long long k, long long o) {
        if (fast.usable && std::max(k, 1LL) <= fast.safe_coord_product / std::max(o, 1LL)) {
            __int128 v = eval_scaled(fast, k, o);
            if (v < 0) {
                verdict.status = VerifyStatus::Refuted;
                verdict.witness = {static_cast<double>(k), static_cast<double>(o)};
                return false;
            }
            if (v == 0) tight.add(k, o);
            return true;
        }
        Num v = poly.eval(make_num(k), make_num(o));
        if (below_zero(v, opts)) {
            verdict.status = VerifyStatus::Refuted;
            verdict.witness = {static_cast<double>(k), static_cast<double>(o)};
            return false;
        }
        if (is_tight(v, opts)) tight.add(k, o);
        return true;
    }

    static Num make_num(long long x) {
        if constexpr (NumTraits<Num>::is_exact)
            return Num(static_cast<long>(x));
        else
            return static_cast<Num>(x);
    }

    // Scan a univariate slice (row or column) over integer values of the free
    // variable in [lo, hi_min..bound]; `is_row` selects (K free) vs (O free).
    bool scan_slice(const Poly1<Num>& slice, long long fixed, bool is_row, long long free_min,
                    long long free_from, const VerifyOptions& options) {
        Poly1<Num> p = slice;
        p.trim();
        auto point = [&](long long free) -> std::pair<long long, long long> {
            return is_row ? std::pair(free, fixed) : std::pair(fixed, free);
        };
        if (p.degree() == 0) {
            if (below_zero(p.coeffs[0], options)) {
                verdict.status = VerifyStatus::Refuted;
                auto [k, o] = point(free_min);
                verdict.witness = {static_cast<double>(k), static_cast<double>(o)};
                return false;
            }
            if (is_tight(p.coeffs[0], options)) {
                auto [k, o] = point(free_min);
                tight.add(k, o);  // whole slice tight; record its corner
            }
            return true;
        }
        bool lead_negative;
        if constexpr (NumTraits<Num>::is_exact)
            lead_negative = p.leading() < 0;
        else
            lead_negative = p.leading() < -options.float_margin;
        if (lead_negative) {
            // Slice diverges to -inf: locate an explicit witness.
            long long probe = std::max<long long>(free_min, 1);
            for (int tries = 0; tries < 80; ++tries, probe *= 2) {
                auto [k, o] = point(probe);
                Num v = poly.eval(make_num(k), make_num(o));
                if (below_zero(v, options)) {
                    verdict.status = VerifyStatus::Refuted;
                    verdict.witness = {static_cast<double>(k), static_cast<double>(o)};
                    return false;
                }
            }
            verdict.status = VerifyStatus::Unproven;
            verdict.detail = "negative leading coefficient on a slice, no witness located";
            return false;
        }
        long long bound = positive_root_bound(p);
        if (bound > options.row_bound_cap) {
            verdict.status = VerifyStatus::Unproven;
            verdict.detail = "slice root bound exceeds cap";
            return false;
        }
        for (long long v = std::max(free_min, free_from); v <= std::max(bound, free_min); ++v) {
            auto [k, o] = point(v);
            if (!classify(k, o)) return false;
        }
        return true;
    }
};

}  // namespace verifydetail

// Far-region certificate for integer families: on {K > B, O > B}, writing
// K = s O and g = sum_d H_d, soundness follows from
//   (i)  t(s) = H_D(s,1) >= 0 for all s >= 0, and
//   (ii) Psi(s) = B t(s) + H_{D-1}(s,1) - sum_{d<=D-2} |H_d|(s,1) B^{d-D+1} >= 0,
// since then g >= O^{D-1} Psi(s) for every O > B. Zeros of t are the
// asymptotically tight ray directions.
template <class Num>
bool far_region_check(const Poly2<Num>& poly, const VerifyOptions& opts, FamilyVerdict& verdict) {
    const int D = poly.total_degree();
    if (D == 0) {
        Num c0 = poly.at(0, 0);
        if (verifydetail::below_zero(c0, opts)) {
            verdict.status = VerifyStatus::Refuted;
            verdict.witness = {static_cast<double>(opts.sweep_bound + 1),
                               static_cast<double>(opts.sweep_bound + 1)};
            return false;
        }
        return true;
    }
    const Num B = [&] {
        if constexpr (NumTraits<Num>::is_exact)
            return Num(static_cast<long>(opts.sweep_bound));
        else
            return static_cast<Num>(opts.sweep_bound);
    }();

    Poly1<Num> top = poly.homogeneous_on_ray(D);
    Poly1<Num> psi;
    {
        std::vector<Num> acc(static_cast<std::size_t>(D) + 1, NumTraits<Num>::zero());
        auto add_scaled = [&](const Poly1<Num>& q, const Num& scale) {
            for (std::size_t i = 0; i < q.coeffs.size(); ++i) acc[i] += q.coeffs[i] * scale;
        };
        add_scaled(top, B);
        if (D >= 1) add_scaled(poly.homogeneous_on_ray(D - 1), NumTraits<Num>::one());
        Num inv_b_pow = NumTraits<Num>::one();
        for (int d = D - 2; d >= 0; --d) {
            inv_b_pow = inv_b_pow / B;
            add_scaled(poly.homogeneous_abs_on_ray(d), -inv_b_pow);
        }
        psi = Poly1<Num>(std::move(acc));
    }

    auto lead_nonneg = [&](const Poly1<Num>& p) {
        if constexpr (NumTraits<Num>::is_exact)
            return !(p.leading() < 0);
        else
            return p.leading() >= -opts.float_margin;
    };
    if (!lead_nonneg(top) || !lead_nonneg(psi)) {
        verdict.status = VerifyStatus::Unproven;
        verdict.detail = "far region: negative leading ray coefficient";
        return false;
    }

    long long s_hi = std::max<long long>({2, positive_root_bound(top), positive_root_bound(psi)});
    const Num hi = verifydetail::RowScan<Num>::make_num(s_hi);
    const Num zero = NumTraits<Num>::zero();
    const Num margin = [&] {
        if constexpr (NumTraits<Num>::is_exact)
            return NumTraits<Num>::zero();
        else
            return static_cast<Num>(-opts.float_margin);
    }();

    auto top_cert = certify_at_least(top, zero, hi, margin);
    if (top_cert.min_enclosure < margin) {
        // Candidate violated ray: probe explicit integer points along it.
        for (double s0 : top_cert.dips) {
            for (long long o = opts.sweep_bound + 1; o <= opts.sweep_bound * 16; o *= 2) {
                long long k = std::max<long long>(opts.sweep_bound + 1,
                                                  static_cast<long long>(std::llround(s0 * static_cast<double>(o))));
                Num v = poly.eval(verifydetail::RowScan<Num>::make_num(k),
                                  verifydetail::RowScan<Num>::make_num(o));
                if (verifydetail::below_zero(v, opts)) {
                    verdict.status = VerifyStatus::Refuted;
                    verdict.witness = {static_cast<double>(k), static_cast<double>(o)};
                    return false;
                }
            }
        }
        verdict.status = VerifyStatus::Unproven;
        verdict.detail = "far region: top form not certified nonnegative";
        return false;
    }
    // Tight rays: directions where the top form itself vanishes. Scan the ray
    // polynomial against a small positive threshold at coarse resolution,
    // cluster the dips, and keep one representative per cluster.
    {
        const Num ray_eps = [&] {
            if constexpr (NumTraits<Num>::is_exact)
                return Num(Rational(1, 1'000'000));
            else
                return static_cast<Num>(opts.tight_eps);
        }();
        auto ray_scan = certify_at_least(top, zero, hi, ray_eps, 40, 64, 1e-5);
        std::sort(ray_scan.dips.begin(), ray_scan.dips.end());
        auto eval_top = [&](double s) {
            if constexpr (NumTraits<Num>::is_exact)
                return to_double(top.eval(Num(Rational(s))));
            else
                return top.eval(s);
        };
        std::size_t i = 0;
        while (i < ray_scan.dips.size()) {
            std::size_t j = i;
            double rep = ray_scan.dips[i], rep_val = std::fabs(eval_top(rep));
            while (j + 1 < ray_scan.dips.size() && ray_scan.dips[j + 1] - ray_scan.dips[j] < 0.01) {
                ++j;
                double v = std::fabs(eval_top(ray_scan.dips[j]));
                if (v < rep_val) rep = ray_scan.dips[j], rep_val = v;
            }
            if (rep_val <= opts.tight_eps) verdict.tight_rays.push_back(rep);
            i = j + 1;
        }
    }

    auto psi_cert = certify_at_least(psi, zero, hi, margin);
    if (psi_cert.min_enclosure < margin) {
        verdict.status = VerifyStatus::Unproven;
        verdict.detail = "far region: first-order ray bound not certified";
        return false;
    }
    return true;
}

namespace verifydetail {

// Finite integer box, possibly with harmonic terms: direct enumeration.
template <class Num>
FamilyVerdict verify_box(const ConstraintFamily<Num>& family, const VerifyOptions& opts) {
    FamilyVerdict verdict;
    TightCollector tight(opts.max_tight);
    auto harmonic_num = [&](long long n) -> Num {
        if constexpr (NumTraits<Num>::is_exact)
            return Num(harmonic(static_cast<long>(n)));
        else
            return to_double(harmonic(static_cast<long>(n)));
    };
    for (long long k = family.k_min; k <= *family.k_max; ++k) {
        for (long long o = family.o_min; o <= *family.o_max; ++o) {
            Num v = family.poly.eval(RowScan<Num>::make_num(k), RowScan<Num>::make_num(o));
            if (family.has_harmonic) {
                v += family.hk * harmonic_num(k) + family.ho * harmonic_num(o);
                if (k >= 1) v += family.pk;
                if (o >= 1) v += family.po;
            }
            if (below_zero(v, opts)) {
                verdict.status = VerifyStatus::Refuted;
                verdict.witness = {static_cast<double>(k), static_cast<double>(o)};
                tight.flush(verdict);
                return verdict;
            }
            if (is_tight(v, opts)) tight.add(k, o);
        }
    }
    tight.flush(verdict);
    return verdict;
}

// Locate an explicit negative point along a candidate descent direction by
// scaling outward. Returns the first point with g < 0 (float semantics).
template <class Num>
std::optional<std::pair<double, double>> probe_negative(const Poly2<Num>& g, double s_dir,
                                                        double o_start,
                                                        const VerifyOptions& opts) {
    auto make = [](double x) {
        if constexpr (NumTraits<Num>::is_exact)
            return Num(Rational(x));
        else
            return static_cast<Num>(x);
    };
    for (double o = std::max(o_start, 1.0); o <= 1e15; o *= 4) {
        double k = s_dir >= 1e17 ? o : s_dir * o;  // s_dir ~ inf encodes the K axis
        double oo = s_dir >= 1e17 ? 0.0 : o;
        Num v = g.eval(make(k), make(oo));
        if (below_zero(v, opts)) return std::pair(k, oo);
    }
    return std::nullopt;
}

// Complete decision procedure for quadratics over the closed quadrant (with
// the optional unit gap on O): behavior at infinity is settled by
// copositivity of the quadratic form plus linear drift along its zero
// directions; the finite minimum is then attained at a corner, on one of the
// three boundary lines, or at the interior stationary point.
template <class Num>
FamilyVerdict verify_real_quadratic(const ConstraintFamily<Num>& family,
                                    const VerifyOptions& opts) {
    FamilyVerdict verdict;
    const auto& g = family.poly;
    if (g.total_degree() > 2) {
        verdict.status = VerifyStatus::Unproven;
        verdict.detail = "real-domain verification supports degree <= 2 only";
        return verdict;
    }
    const Num q11 = g.at(2, 0), q12 = g.at(1, 1), q22 = g.at(0, 2);
    const Num l1 = g.at(1, 0), l2 = g.at(0, 1), c0 = g.at(0, 0);
    const Num zero = NumTraits<Num>::zero();
    const Num o_lo = family.o_unit_gap ? NumTraits<Num>::one() : zero;

    auto neg = [&](const Num& v) { return below_zero(v, opts); };
    auto tightv = [&](const Num& v) { return is_tight(v, opts); };
    auto pos = [&](const Num& v) { return !neg(v) && !tightv(v); };

    auto refute_along = [&](double s_dir) {
        auto w = probe_negative(g, s_dir, to_double(o_lo), opts);
        if (w) {
            verdict.status = VerifyStatus::Refuted;
            verdict.witness = *w;
        } else {
            verdict.status = VerifyStatus::Unproven;
            verdict.detail = "unbounded descent direction detected but no witness located";
        }
        return verdict;
    };

    // Recession analysis: Q copositive on the quadrant, nonnegative linear
    // drift along every zero direction of Q.
    if (neg(q11)) return refute_along(1e18);
    if (neg(q22)) return refute_along(0.0);
    if (neg(q12) && pos(q12 * q12 - Num(4) * q11 * q22)) {
        double s_dir = tightv(q11) ? 1e18
                                   : std::sqrt(std::max(to_double(q22), 0.0) /
                                               std::max(to_double(q11), 1e-300));
        verdict.detail = "quadratic form not copositive";
        return refute_along(s_dir);
    }
    if (tightv(q11)) {
        // K axis is a zero direction (q12 >= 0 here by copositivity).
        if (neg(l1)) return refute_along(1e18);
    }
    if (tightv(q22)) {
        if (neg(l2)) return refute_along(0.0);
    }
    if (neg(q12) && tightv(q12 * q12 - Num(4) * q11 * q22) && pos(q11)) {
        // Perfect-square boundary: Q vanishes exactly on the ray K = s* O.
        double s_dir = std::sqrt(to_double(q22) / to_double(q11));
        double drift = to_double(l1) * s_dir + to_double(l2);
        if (drift < -opts.float_margin) return refute_along(s_dir);
        verdict.tight_rays.push_back(s_dir);
        if (std::fabs(drift) <= opts.tight_eps && neg(c0)) return refute_along(s_dir);
    }

    // Finite minimum candidates.
    std::vector<std::pair<Num, Num>> candidates;
    candidates.emplace_back(zero, zero);
    candidates.emplace_back(zero, o_lo);
    auto k_line = [&](const Num& o_fixed) {
        candidates.emplace_back(zero, o_fixed);
        if (pos(q11)) {
            Num k_star = -(l1 + q12 * o_fixed) / (Num(2) * q11);
            if (!(k_star < zero)) candidates.emplace_back(k_star, o_fixed);
        }
    };
    k_line(zero);
    k_line(o_lo);
    if (pos(q22)) {
        Num o_star = -l2 / (Num(2) * q22);
        if (!(o_star < o_lo)) candidates.emplace_back(zero, o_star);
    }
    {
        Num det = Num(4) * q11 * q22 - q12 * q12;
        if (pos(det) || (NumTraits<Num>::is_exact && !NumTraits<Num>::is_zero(det))) {
            Num k_star = (-Num(2) * q22 * l1 + q12 * l2) / det;
            Num o_star = (-Num(2) * q11 * l2 + q12 * l1) / det;
            if (!(k_star < zero) && !(o_star < o_lo)) candidates.emplace_back(k_star, o_star);
        }
    }

    for (const auto& [k, o] : candidates) {
        Num v = g.eval(k, o);
        if (neg(v)) {
            verdict.status = VerifyStatus::Refuted;
            verdict.witness = {to_double(k), to_double(o)};
            return verdict;
        }
        if (tightv(v)) {
            double kd = to_double(k), od = to_double(o);
            double kr = std::round(kd), orr = std::round(od);
            if (std::fabs(kd - kr) < 1e-9 && std::fabs(od - orr) < 1e-9)
                verdict.tight.push_back({static_cast<long long>(kr), static_cast<long long>(orr)});
            else
                verdict.tight_real.emplace_back(kd, od);
        }
    }
    std::sort(verdict.tight.begin(), verdict.tight.end());
    verdict.tight.erase(std::unique(verdict.tight.begin(), verdict.tight.end(),
                                    [](const TightPair& a, const TightPair& b) {
                                        return a.k == b.k && a.o == b.o;
                                    }),
                        verdict.tight.end());
    return verdict;
}

template <class Num>
FamilyVerdict verify_integer(const ConstraintFamily<Num>& family, const VerifyOptions& opts) {
    FamilyVerdict verdict;
    TightCollector tight(opts.max_tight);
    RowScan<Num> scan{family.poly, opts, verdict, tight};
    if constexpr (NumTraits<Num>::is_exact) scan.fast = scale_to_int(family.poly);

    const long long B = opts.sweep_bound;
    // Rows: O in [o_min, B], every integer K >= k_min up to the row root bound.
    for (long long o = family.o_min; o <= B; ++o) {
        auto row = family.poly.row_in_k(RowScan<Num>::make_num(o));
        if (!scan.scan_slice(row, o, /*is_row=*/true, family.k_min, family.k_min, opts)) {
            tight.flush(verdict);
            return verdict;
        }
    }
    // Columns: K in [k_min, B], integer O beyond B up to the column root bound.
    for (long long k = family.k_min; k <= B; ++k) {
        auto col = family.poly.column_in_o(RowScan<Num>::make_num(k));
        col.trim();
        if (col.degree() == 0) continue;  // constant in O: already covered by rows
        bool lead_negative;
        if constexpr (NumTraits<Num>::is_exact)
            lead_negative = col.leading() < 0;
        else
            lead_negative = col.leading() < -opts.float_margin;
        if (lead_negative) {
            if (!scan.scan_slice(col, k, /*is_row=*/false, family.o_min, B + 1, opts)) {
                tight.flush(verdict);
                return verdict;
            }
            continue;
        }
        long long bound = positive_root_bound(col);
        for (long long o = B + 1; o <= bound; ++o) {
            if (!scan.classify(k, o)) {
                tight.flush(verdict);
                return verdict;
            }
        }
    }
    // Far region: K > B and O > B.
    if (!far_region_check(family.poly, opts, verdict)) {
        tight.flush(verdict);
        return verdict;
    }
    tight.flush(verdict);
    return verdict;
}

}  // namespace verifydetail

template <class Num>
FamilyVerdict verify_family(const ConstraintFamily<Num>& family,
                            const VerifyOptions& opts = VerifyOptions{}) {
    if (family.k_max && family.o_max) return verifydetail::verify_box(family, opts);
    if (family.domain == FamilyDomain::NonNegReals)
        return verifydetail::verify_real_quadratic(family, opts);
    return verifydetail::verify_integer(family, opts);
}

}  // namespace congames

#endif  // CONGAMES_VERIFY_HPP
