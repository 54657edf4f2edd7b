#include "congames/gallery.hpp"

#include <cmath>

namespace congames {

InstanceBundle gen_poa_unweighted_affine(int n) {
    if (n < 3) n = 3;
    Game<Rational> g;
    g.weights.assign(static_cast<std::size_t>(n), Rational(1));
    g.latencies = {LatencySpec<Rational>::linear(Rational(5)),
                   LatencySpec<Rational>::linear(Rational(2)),
                   LatencySpec<Rational>::linear(Rational(3))};
    g.strategies = {
        {{0, 1}, {2}},  // player 1
        {{0}, {1, 2}},  // player 2
        {{1}, {2}},     // player 3
    };
    std::vector<int> k_choices = {0, 1, 1};
    std::vector<int> o_choices = {1, 0, 0};
    if (n > 3) {
        g.latencies.push_back(LatencySpec<Rational>::linear(Rational(0)));
        for (int i = 3; i < n; ++i) {
            g.strategies.push_back({{3}});
            k_choices.push_back(0);
            o_choices.push_back(0);
        }
    }
    g.validate();

    InstanceBundle bundle;
    bundle.name = "poa-unweighted-affine";
    bundle.game = std::move(g);
    bundle.k_profile = Profile(std::move(k_choices));
    bundle.o_profile = Profile(std::move(o_choices));
    bundle.claimed_ratio = 2.5;
    bundle.claimed_ratio_exact = Rational(5, 2);
    return bundle;
}

InstanceBundle gen_poa_weighted_affine() {
    const double s5 = std::sqrt(5.0);
    const double phi = (1.0 + s5) / 2.0;
    Game<double> g;
    g.weights = {1.0, phi, phi};
    g.latencies = {LatencySpec<double>::linear(2.0), LatencySpec<double>::linear(s5 - 1.0),
                   LatencySpec<double>::linear(3.0 - s5)};
    g.strategies = {
        {{0}, {1, 2}},  // player 1
        {{1}, {0, 2}},  // player 2
        {{2}, {1}},     // player 3
    };
    g.validate();

    InstanceBundle bundle;
    bundle.name = "poa-weighted-affine";
    bundle.game = std::move(g);
    bundle.k_profile = Profile({1, 1, 1});
    bundle.o_profile = Profile({0, 0, 0});
    bundle.eps_is_exact = false;
    bundle.claimed_ratio = (3.0 + s5) / 2.0;
    return bundle;
}

double psi_of_family(int t, int y) {
    return (t + std::sqrt(static_cast<double>(t) * t + 4.0 * y)) / 2.0;
}

double eps_of_family(int t, int y) {
    double root = std::sqrt(static_cast<double>(t) * t + 4.0 * y);
    return ((t - 1) * root + 2.0 * y + static_cast<double>(t) * t - t - 2.0) / (root + t + 2.0);
}

namespace {

// circular index into [1, t+1], returned 0-based
int circular(int i, int span) { return (i - 1) % span; }

template <class Num>
InstanceBundle build_eps_family(int t, int y, Num psi, Num inv_y) {
    const int span = t + 1;
    Game<Num> g;
    g.weights.assign(static_cast<std::size_t>(span), NumTraits<Num>::one());
    g.weights.push_back(psi - Num(t));
    // resources 0..t: ell(x) = x; resources t+1..2t+1: ell(x) = x / y
    for (int j = 0; j < span; ++j) g.latencies.push_back(LatencySpec<Num>::linear(NumTraits<Num>::one()));
    for (int j = 0; j < span; ++j) g.latencies.push_back(LatencySpec<Num>::linear(inv_y));

    for (int i = 1; i <= span; ++i) {
        std::vector<int> optimal = {i - 1};
        std::vector<int> equilibrium;
        for (int j = 1; j <= t; ++j) equilibrium.push_back(circular(i + j, span));
        for (int j = 1; j <= y; ++j) equilibrium.push_back(span + circular(i + j, span));
        g.strategies.push_back({std::move(optimal), std::move(equilibrium)});
    }
    std::vector<int> all_primed, all_plain;
    for (int j = 0; j < span; ++j) {
        all_primed.push_back(span + j);
        all_plain.push_back(j);
    }
    g.strategies.push_back({std::move(all_primed), std::move(all_plain)});
    g.validate();

    InstanceBundle bundle;
    bundle.name = "eps-family(t=" + std::to_string(t) + ",y=" + std::to_string(y) + ")";
    bundle.game = std::move(g);
    bundle.k_profile = Profile(std::vector<int>(static_cast<std::size_t>(t + 2), 1));
    bundle.o_profile = Profile(std::vector<int>(static_cast<std::size_t>(t + 2), 0));
    return bundle;
}

}  // namespace

InstanceBundle gen_eps_poa_weighted(int t, int y) {
    if (t < 1 || y < 1 || y > t + 1) throw GameError("eps family requires 1 <= y <= t+1");
    const long long disc = static_cast<long long>(t) * t + 4LL * y;
    InstanceBundle bundle;
    if (is_perfect_square(disc)) {
        long root = static_cast<long>(isqrt_floor(disc));
        Rational psi = make_rational(t + root, 2);
        bundle = build_eps_family<Rational>(t, y, psi, make_rational(1, y));
        Rational eps =
            (Rational(t - 1) * root + Rational(2 * y + t * t - t - 2)) / Rational(root + t + 2);
        bundle.eps_exact = eps;
        bundle.eps = to_double(eps);
        bundle.eps_is_exact = true;
        Rational ratio = psi * psi;
        bundle.claimed_ratio = to_double(ratio);
        bundle.claimed_ratio_exact = ratio;
    } else {
        double psi = psi_of_family(t, y);
        bundle = build_eps_family<double>(t, y, psi, 1.0 / y);
        bundle.eps = eps_of_family(t, y);
        bundle.eps_is_exact = false;
        bundle.claimed_ratio = psi * psi;
    }
    return bundle;
}

PosLowerBound gen_pos_poly_lb(int degree, long long n1, long long n2, const Rational& pad,
                              long long resource_cap) {
    if (degree != 2 && degree != 3) throw GameError("pos lower bound defined for d in {2,3}");
    if (n1 < 1 || n2 < 1) throw GameError("pos lower bound requires n1, n2 >= 1");
    if (!(pad > 0)) throw GameError("pad must be positive");

    PosLowerBound out;
    out.degree = degree;
    out.n1 = n1;
    out.n2 = n2;
    const Rational N1(static_cast<long>(n1)), N2(static_cast<long>(n2));
    if (degree == 2) {
        out.r = (2 * N2 * N2 + (N1 + 1) * (N1 + 2 * N2)) / 2 + pad;
        out.r_prime = (N1 + 2 * N2) / 6;
    } else {
        out.r = (2 * N2 * N2 * N2 + (N1 + 1) * (N1 * N1 + 3 * N1 * N2 + 3 * N2 * N2)) / 2 + pad;
        out.r_prime = (N1 * N1 + 3 * N1 * N2 + 3 * N2 * N2) / 14;
    }

    auto cost_k = [&](long long k) {
        Rational congestion = N2 + Rational(static_cast<long>(k));
        Rational poly = congestion * congestion;
        if (degree == 3) poly *= congestion;
        long long lead = degree == 2 ? 4 * n1 - 3 * k - 1 : 8 * n1 - 7 * k - 1;
        return Rational(static_cast<long>(lead)) * out.r_prime + poly;
    };
    auto cost_o = [&](long long k) {
        long long lead = degree == 2 ? n1 + 3 * k - 1 : n1 + 7 * k - 1;
        return out.r + Rational(static_cast<long>(lead)) * out.r_prime;
    };

    out.uniqueness_holds = true;
    for (long long k = 1; k <= n1; ++k) {
        if (!(cost_o(k - 1) > cost_k(k))) {
            out.uniqueness_holds = false;
            out.failing_k = k;
            break;
        }
    }
    if (!out.uniqueness_holds)
        throw GameError("uniqueness condition cost_O(k-1) > cost_K(k) fails at k = " +
                        std::to_string(*out.failing_k));

    Rational np = N1 + N2, nd = N2;
    Rational np_pow = np * np * np, nd_pow = nd * nd * nd;
    if (degree == 3) {
        np_pow *= np;
        nd_pow *= nd;
    }
    Rational pair_term = out.r_prime * N1 * (N1 - 1);
    out.ratio = (pair_term + np_pow) / (out.r * N1 + pair_term + nd_pow);

    const long long resources = n1 + n1 * (n1 - 1) + 1;
    if (resources <= resource_cap && n1 + n2 <= resource_cap) {
        Game<Rational> g;
        g.weights.assign(static_cast<std::size_t>(n1 + n2), Rational(1));
        // resources: [0, n1) the r_i; [n1, n1 + n1(n1-1)) the r'_{i,j} (i != j,
        // row-major with j compacted); last one r''.
        const int rpp = static_cast<int>(n1 + n1 * (n1 - 1));
        for (long long i = 0; i < n1; ++i)
            g.latencies.push_back(LatencySpec<Rational>::monomial(out.r, degree));
        for (long long i = 0; i < n1 * (n1 - 1); ++i)
            g.latencies.push_back(LatencySpec<Rational>::monomial(out.r_prime, degree));
        g.latencies.push_back(LatencySpec<Rational>::monomial(Rational(1), degree));

        auto prime_index = [&](long long i, long long j) {
            long long col = j < i ? j : j - 1;
            return static_cast<int>(n1 + i * (n1 - 1) + col);
        };
        for (long long i = 0; i < n1; ++i) {
            std::vector<int> k_strat = {rpp};
            for (long long j = 0; j < n1; ++j)
                if (j != i) k_strat.push_back(prime_index(i, j));
            std::vector<int> o_strat = {static_cast<int>(i)};
            for (long long j = 0; j < n1; ++j)
                if (j != i) o_strat.push_back(prime_index(j, i));
            g.strategies.push_back({std::move(k_strat), std::move(o_strat)});
        }
        for (long long p = 0; p < n2; ++p) g.strategies.push_back({{rpp}});
        g.validate();

        InstanceBundle bundle;
        bundle.name = "pos-lb(d=" + std::to_string(degree) + ")";
        std::vector<int> k_choices(static_cast<std::size_t>(n1), 0);
        std::vector<int> o_choices(static_cast<std::size_t>(n1), 1);
        k_choices.resize(static_cast<std::size_t>(n1 + n2), 0);
        o_choices.resize(static_cast<std::size_t>(n1 + n2), 0);
        bundle.game = std::move(g);
        bundle.k_profile = Profile(std::move(k_choices));
        bundle.o_profile = Profile(std::move(o_choices));
        bundle.claimed_ratio = to_double(out.ratio);
        bundle.claimed_ratio_exact = out.ratio;
        out.instance = std::move(bundle);
    }
    return out;
}

Game<Rational> gen_fair_sharing_chain(int n, const Rational& margin) {
    if (n < 1) throw GameError("fair sharing chain requires n >= 1");
    Game<Rational> g;
    g.sharing = Sharing::FairCostSharing;
    g.weights.assign(static_cast<std::size_t>(n), Rational(1));
    g.latencies.push_back(LatencySpec<Rational>::constant(Rational(1) + margin));
    for (int i = 1; i <= n; ++i)
        g.latencies.push_back(LatencySpec<Rational>::constant(Rational(1, i)));
    for (int i = 1; i <= n; ++i) g.strategies.push_back({{0}, {i}});
    g.validate();
    return g;
}

}  // namespace congames
