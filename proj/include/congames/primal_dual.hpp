#ifndef CONGAMES_PRIMAL_DUAL_HPP
#define CONGAMES_PRIMAL_DUAL_HPP

#include "congames/certificates.hpp"
#include "congames/exact_metrics.hpp"
#include "congames/lp.hpp"

namespace congames {

namespace lpdetail {

template <class Num>
Num int_pow(const Num& base, int exp) {
    Num v = NumTraits<Num>::one();
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

}  // namespace lpdetail

// Build LP(K, O) for a concept: variables are the per-resource latency
// coefficients (plus the max-cost variable for the max social function), the
// objective is the social value of K, and the optimum's social value is
// normalized to one. The game supplies only the combinatorics (strategies,
// weights); its concrete latency coefficients do not enter.
//
// For OneRoundWalk, `walk_ordering` fixes the order in which K was built so
// the prefix loads K_e(i) are well defined.
template <class Num>
LinearProgram<Num> build_primal_lp(const Game<Num>& g, const Profile& K, const Profile& O,
                                   const SolutionConcept& sc,
                                   const std::vector<int>* walk_ordering = nullptr) {
    using lpdetail::int_pow;
    if (!K.fully_decided() || !O.fully_decided())
        throw GameError("LP construction needs fully decided profiles");
    const int m = g.num_resources();
    const int n = g.num_players();
    const int d = sc.degree;
    const Num eps = num_cast<Num>(sc.eps);
    const Num one = NumTraits<Num>::one();
    const Num one_plus = one + eps;

    auto k_loads = congestion(g, K);
    auto o_loads = congestion(g, O);

    LinearProgram<Num> lp;
    const bool fair = sc.kind == ConceptKind::FairSharingPos;
    const bool max_social = sc.kind == ConceptKind::MaxSocialPoa;
    for (int e = 0; e < m; ++e)
        lp.var_names.push_back((fair ? "c" : "alpha") + std::to_string(e));
    if (max_social) lp.var_names.push_back("k");
    const int num_vars = static_cast<int>(lp.var_names.size());
    lp.objective.assign(static_cast<std::size_t>(num_vars), NumTraits<Num>::zero());

    auto zero_row = [&] { return std::vector<Num>(static_cast<std::size_t>(num_vars), NumTraits<Num>::zero()); };

    // Normalization (or per-player optimum caps for the max social function).
    auto push_normalization = [&](std::vector<Num> coeffs) {
        bool degenerate = true;
        for (const auto& c : coeffs)
            if (!NumTraits<Num>::is_zero(c)) degenerate = false;
        if (degenerate) throw GameError("degenerate optimum: normalization row is zero");
        lp.add_row(std::move(coeffs), one, /*equality=*/true, "normalize");
    };

    switch (sc.kind) {
        case ConceptKind::EpsPoaUnweighted:
        case ConceptKind::EpsPoaWeighted: {
            if (sc.kind == ConceptKind::EpsPoaUnweighted && !g.unweighted())
                throw GameError("sc requires unweighted players");
            for (int i = 0; i < n; ++i) {
                auto row = zero_row();
                const Num& w = g.weights[static_cast<std::size_t>(i)];
                for (int e : g.strategy(i, K.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] += int_pow(k_loads[static_cast<std::size_t>(e)], d);
                for (int e : g.strategy(i, O.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] -=
                        one_plus * int_pow(k_loads[static_cast<std::size_t>(e)] + w, d);
                lp.add_row(std::move(row), NumTraits<Num>::zero(), false,
                           "equilibrium_p" + std::to_string(i));
            }
            break;
        }
        case ConceptKind::EpsPosViaPotential: {
            // Phi(K) <= Phi(O), plus the aggregated deviation constraint in
            // the unweighted cases; rows are stated in the scale-free form
            // (no global 1/6, 1/4 or 1/2 factors).
            auto compare = zero_row();
            if (sc.weighted) {
                if (d != 1) throw GameError("weighted potential certificates cover affine only");
                std::vector<Num> k_sq(static_cast<std::size_t>(m), NumTraits<Num>::zero());
                std::vector<Num> o_sq(static_cast<std::size_t>(m), NumTraits<Num>::zero());
                for (int i = 0; i < n; ++i) {
                    const Num& w = g.weights[static_cast<std::size_t>(i)];
                    for (int e : g.strategy(i, K.choices[static_cast<std::size_t>(i)]))
                        k_sq[static_cast<std::size_t>(e)] += w * w;
                    for (int e : g.strategy(i, O.choices[static_cast<std::size_t>(i)]))
                        o_sq[static_cast<std::size_t>(e)] += w * w;
                }
                const Num c = (one - eps) / one_plus;
                for (int e = 0; e < m; ++e) {
                    auto ke = k_loads[static_cast<std::size_t>(e)], oe = o_loads[static_cast<std::size_t>(e)];
                    compare[static_cast<std::size_t>(e)] =
                        ke * ke + c * k_sq[static_cast<std::size_t>(e)] - oe * oe -
                        c * o_sq[static_cast<std::size_t>(e)];
                }
                lp.add_row(std::move(compare), NumTraits<Num>::zero(), false, "potential_compare");
            } else {
                if (!g.unweighted()) throw GameError("sc requires unweighted players");
                auto phi_row = [&](const Num& load) -> Num {
                    if (d == 1) {
                        const Num c = (one - eps) / one_plus;
                        return load * load + c * load;
                    }
                    if (d == 2) return load * (load + one) * (Num(2) * load + one);
                    return int_pow(load * (load + one), 2);
                };
                for (int e = 0; e < m; ++e)
                    compare[static_cast<std::size_t>(e)] =
                        phi_row(k_loads[static_cast<std::size_t>(e)]) -
                        phi_row(o_loads[static_cast<std::size_t>(e)]);
                lp.add_row(std::move(compare), NumTraits<Num>::zero(), false, "potential_compare");

                auto dev = zero_row();
                for (int e = 0; e < m; ++e) {
                    const Num& ke = k_loads[static_cast<std::size_t>(e)];
                    const Num& oe = o_loads[static_cast<std::size_t>(e)];
                    Num value;
                    if (d == 1)
                        value = ke * ke - eps / one_plus * ke - ke * oe - oe / one_plus;
                    else if (d == 2)
                        value = int_pow(ke, 3) - oe * int_pow(ke + one, 2);
                    else
                        value = int_pow(ke, 4) - oe * int_pow(ke + one, 3);
                    dev[static_cast<std::size_t>(e)] = value;
                }
                lp.add_row(std::move(dev), NumTraits<Num>::zero(), false, "minimum_deviations");
            }
            break;
        }
        case ConceptKind::OneRoundWalk: {
            if (!walk_ordering)
                throw GameError("one-round-walk LP needs the walk ordering for prefix loads");
            std::vector<Num> prefix(static_cast<std::size_t>(m), NumTraits<Num>::zero());
            std::vector<std::vector<Num>> prefix_at_move(static_cast<std::size_t>(n));
            for (int i : *walk_ordering) {
                prefix_at_move[static_cast<std::size_t>(i)] = prefix;
                for (int e : g.strategy(i, K.choices[static_cast<std::size_t>(i)]))
                    prefix[static_cast<std::size_t>(e)] += g.weights[static_cast<std::size_t>(i)];
            }
            for (int i = 0; i < n; ++i) {
                auto row = zero_row();
                const Num& w = g.weights[static_cast<std::size_t>(i)];
                const auto& pl = prefix_at_move[static_cast<std::size_t>(i)];
                for (int e : g.strategy(i, K.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] +=
                        int_pow(pl[static_cast<std::size_t>(e)] + w, d);
                for (int e : g.strategy(i, O.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] -=
                        int_pow(pl[static_cast<std::size_t>(e)] + w, d);
                lp.add_row(std::move(row), NumTraits<Num>::zero(), false,
                           "best_response_p" + std::to_string(i));
            }
            break;
        }
        case ConceptKind::MaxSocialPoa: {
            if (!g.unweighted()) throw GameError("sc requires unweighted players");
            const int k_var = m;
            for (int i = 0; i < n; ++i) {
                auto row = zero_row();
                for (int e : g.strategy(i, K.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] += k_loads[static_cast<std::size_t>(e)];
                for (int e : g.strategy(i, O.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] -=
                        k_loads[static_cast<std::size_t>(e)] + one;
                lp.add_row(std::move(row), NumTraits<Num>::zero(), false,
                           "equilibrium_p" + std::to_string(i));
            }
            for (int i = 0; i < n; ++i) {
                auto row = zero_row();
                for (int e : g.strategy(i, K.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] += k_loads[static_cast<std::size_t>(e)];
                row[static_cast<std::size_t>(k_var)] = -one;
                lp.add_row(std::move(row), NumTraits<Num>::zero(), i == n - 1,
                           std::string(i == n - 1 ? "max_cost_p" : "cost_cap_p") +
                               std::to_string(i));
            }
            for (int i = 0; i < n; ++i) {
                auto row = zero_row();
                for (int e : g.strategy(i, O.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] += o_loads[static_cast<std::size_t>(e)];
                lp.add_row(std::move(row), one, false, "optimum_cap_p" + std::to_string(i));
            }
            lp.objective[static_cast<std::size_t>(k_var)] = one;
            return lp;  // no social normalization row for the max social function
        }
        case ConceptKind::FairSharingPos: {
            auto k_counts = user_counts(g, K);
            auto o_counts = user_counts(g, O);
            for (int i = 0; i < n; ++i) {
                auto row = zero_row();
                for (int e : g.strategy(i, K.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] +=
                        one / Num(k_counts[static_cast<std::size_t>(e)]);
                for (int e : g.strategy(i, O.choices[static_cast<std::size_t>(i)]))
                    row[static_cast<std::size_t>(e)] -=
                        one / Num(k_counts[static_cast<std::size_t>(e)] + 1);
                lp.add_row(std::move(row), NumTraits<Num>::zero(), false,
                           "equilibrium_p" + std::to_string(i));
            }
            auto pot = zero_row();
            for (int e = 0; e < m; ++e)
                pot[static_cast<std::size_t>(e)] =
                    num_cast<Num>(harmonic(k_counts[static_cast<std::size_t>(e)])) -
                    num_cast<Num>(harmonic(o_counts[static_cast<std::size_t>(e)]));
            lp.add_row(std::move(pot), NumTraits<Num>::zero(), false, "potential_compare");

            auto norm = zero_row();
            for (int e = 0; e < m; ++e)
                if (o_counts[static_cast<std::size_t>(e)] > 0)
                    norm[static_cast<std::size_t>(e)] = one;
            for (int e = 0; e < m; ++e)
                if (k_counts[static_cast<std::size_t>(e)] > 0)
                    lp.objective[static_cast<std::size_t>(e)] = one;
            push_normalization(std::move(norm));
            return lp;
        }
    }

    // Objective SUM(K) and normalization SUM(O) = 1 for the congestion concepts.
    for (int e = 0; e < m; ++e)
        lp.objective[static_cast<std::size_t>(e)] =
            int_pow(k_loads[static_cast<std::size_t>(e)], d + 1);
    auto norm = zero_row();
    for (int e = 0; e < m; ++e)
        norm[static_cast<std::size_t>(e)] = int_pow(o_loads[static_cast<std::size_t>(e)], d + 1);
    push_normalization(std::move(norm));
    return lp;
}

// Weak/strong duality report: the LP optimum of (K, O) never exceeds a proven
// certificate's gamma; equality flags the pair as worst-case.
template <class Num>
struct DualityReport {
    LpStatus lp_status = LpStatus::Optimal;
    Num lp_value{};
    double gamma = 0;
    bool within_gamma = true;
    bool tight = false;
};

template <class Num, class CertNum>
DualityReport<Num> strong_duality_check(const Game<Num>& g, const Profile& K, const Profile& O,
                                        const SolutionConcept& sc,
                                        const DualCertificate<CertNum>& cert,
                                        const std::vector<int>* walk_ordering = nullptr,
                                        double tolerance = 1e-9) {
    auto lp = build_primal_lp(g, K, O, sc, walk_ordering);
    auto sol = solve_lp(lp);
    DualityReport<Num> report;
    report.lp_status = sol.status;
    report.gamma = to_double(cert.gamma);
    if (sol.status != LpStatus::Optimal) {
        report.within_gamma = false;
        return report;
    }
    report.lp_value = sol.value;
    double lpv = to_double(sol.value);
    report.within_gamma = lpv <= report.gamma + tolerance;
    report.tight = std::fabs(lpv - report.gamma) <= tolerance;
    return report;
}

// ---------------------------------------------------------------------------
// Dual search: minimize gamma subject to verify(cert) = Proven, by bisection
// on gamma with a derivative-free inner search over the dual scalars.
// ---------------------------------------------------------------------------

struct DualSearchBox {
    double y_lo = 0.0, y_hi = 16.0;
    double z_lo = 0.0, z_hi = 16.0;
};

struct DualSearchResult {
    AnyCertificate best;
    double gamma = 0;
    bool proven = false;
    bool budget_exhausted = false;
    long evaluations = 0;
};

DualSearchResult search_dual(const SolutionConcept& sc, const DualSearchBox& box,
                             long budget = 200'000,
                             const VerifyOptions& final_opts = VerifyOptions{});

}  // namespace congames

#endif  // CONGAMES_PRIMAL_DUAL_HPP
