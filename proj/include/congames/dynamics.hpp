#ifndef CONGAMES_DYNAMICS_HPP
#define CONGAMES_DYNAMICS_HPP

#include <numeric>
#include <optional>
#include <vector>

#include "congames/game.hpp"

namespace congames {

enum class TieBreak { LowestIndex };

// State of a one-round walk: the partial profile plus the load each resource
// carries from the players that already moved (K_e(i) for the next mover).
template <class Num>
struct WalkState {
    Profile profile;
    std::vector<Num> prefix_loads;
    std::vector<int> ordering;
    int step = 0;

    static WalkState start(const Game<Num>& g, std::vector<int> order) {
        WalkState w;
        w.profile = Profile::empty_profile(g.num_players());
        w.prefix_loads.assign(static_cast<std::size_t>(g.num_resources()), NumTraits<Num>::zero());
        w.ordering = std::move(order);
        return w;
    }
};

template <class Num>
struct WalkStep {
    int player;
    int strategy;
    Num cost_at_choice;
};

template <class Num>
struct WalkResult {
    Profile profile;
    std::vector<WalkStep<Num>> trace;
};

struct PotentialKind {
    enum Kind { RosenthalExact, EpsAffineUnweighted, EpsAffineWeighted, QuadraticExact, CubicExact };
    Kind kind = RosenthalExact;
    int degree = 1;   // RosenthalExact only
    Rational eps{0};  // EpsAffine* only; exact so rational-mode checks stay exact

    static PotentialKind rosenthal(int d) { return {RosenthalExact, d, Rational(0)}; }
    static PotentialKind eps_affine_unweighted(Rational eps) {
        return {EpsAffineUnweighted, 1, std::move(eps)};
    }
    static PotentialKind eps_affine_weighted(Rational eps) {
        return {EpsAffineWeighted, 1, std::move(eps)};
    }
    static PotentialKind quadratic() { return {QuadraticExact, 2, Rational(0)}; }
    static PotentialKind cubic() { return {CubicExact, 3, Rational(0)}; }
};

template <class Num>
struct EpsPneReport {
    bool is_equilibrium = true;
    int player = -1;      // worst violating player, when not an equilibrium
    int deviation = -1;   // her improving strategy index
    double violation_ratio = 1.0;  // c_i(S) / ((1+eps) c_i(S -i<>t)), maximal over deviations
};

// Cost of player i after unilaterally deviating to strategy `t`, given the
// loads of the current profile. Avoids recomputing full congestion vectors.
template <class Num>
Num deviation_cost(const Game<Num>& g, const Profile& s, const std::vector<Num>& loads,
                   const std::vector<int>& counts, int i, int t) {
    const Num& w = g.weights[static_cast<std::size_t>(i)];
    std::vector<char> in_current(static_cast<std::size_t>(g.num_resources()), 0);
    if (s.decided(i))
        for (int e : g.strategy(i, s.choices[static_cast<std::size_t>(i)]))
            in_current[static_cast<std::size_t>(e)] = 1;
    Num cost = NumTraits<Num>::zero();
    for (int e : g.strategy(i, t)) {
        const auto idx = static_cast<std::size_t>(e);
        if (g.sharing == Sharing::Congestion) {
            Num load = in_current[idx] ? loads[idx] : loads[idx] + w;
            cost += g.latencies[idx].eval(load);
        } else {
            int users = in_current[idx] ? counts[idx] : counts[idx] + 1;
            cost += g.latencies[idx].coeffs[0] / Num(users);
        }
    }
    return cost;
}

// eps-PNE test: c_i(S) <= (1+eps) c_i(S_{-i} <> t) for every player and
// deviation, with NumTraits tolerances in float mode. On failure the report
// carries the deviation with the largest violation ratio.
template <class Num>
EpsPneReport<Num> is_eps_pne(const Game<Num>& g, const Profile& s, const Num& eps) {
    if (eps < NumTraits<Num>::zero()) throw GameError("eps must be nonnegative");
    auto loads = congestion(g, s);
    auto counts = user_counts(g, s);
    EpsPneReport<Num> report;
    const Num one_plus = NumTraits<Num>::one() + eps;
    for (int i = 0; i < g.num_players(); ++i) {
        Num current = detail::player_cost_impl(g, s, i, loads, counts);
        for (int t = 0; t < g.num_strategies(i); ++t) {
            if (t == s.choices[static_cast<std::size_t>(i)]) continue;
            Num alt = deviation_cost(g, s, loads, counts, i, t);
            Num bound = one_plus * alt;
            if (!NumTraits<Num>::leq(current, bound)) {
                double ratio = NumTraits<Num>::is_zero(bound)
                                   ? std::numeric_limits<double>::infinity()
                                   : to_double(current) / to_double(bound);
                if (report.is_equilibrium || ratio > report.violation_ratio) {
                    report.is_equilibrium = false;
                    report.player = i;
                    report.deviation = t;
                    report.violation_ratio = ratio;
                }
            }
        }
    }
    return report;
}

// All cost-minimizing strategies for player i against the other players'
// current (possibly partial) choices, in index order.
template <class Num>
std::vector<int> best_responses(const Game<Num>& g, const Profile& s, int i) {
    Profile others = s;
    others.choices[static_cast<std::size_t>(i)] = Profile::kUndecided;
    auto loads = congestion(g, others);
    auto counts = user_counts(g, others);
    std::vector<int> best;
    std::optional<Num> best_cost;
    for (int t = 0; t < g.num_strategies(i); ++t) {
        Num c = deviation_cost(g, others, loads, counts, i, t);
        if (!best_cost || NumTraits<Num>::strictly_less(c, *best_cost)) {
            best_cost = c;
            best.assign(1, t);
        } else if (!NumTraits<Num>::strictly_less(*best_cost, c)) {
            best.push_back(t);
        }
    }
    return best;
}

template <class Num>
int best_response(const Game<Num>& g, const Profile& s, int i,
                  TieBreak rule = TieBreak::LowestIndex) {
    (void)rule;  // lowest index is the only deterministic rule
    return best_responses(g, s, i).front();
}

// One-round walk from the empty profile: each player, in the given order,
// plays a best response once. Deterministic under the tie-break rule.
template <class Num>
WalkResult<Num> one_round_walk(const Game<Num>& g, const std::vector<int>& ordering,
                               TieBreak rule = TieBreak::LowestIndex) {
    if (static_cast<int>(ordering.size()) != g.num_players())
        throw GameError("ordering must be a permutation of the players");
    WalkResult<Num> result;
    result.profile = Profile::empty_profile(g.num_players());
    for (int i : ordering) {
        int choice = best_response(g, result.profile, i, rule);
        result.profile.choices[static_cast<std::size_t>(i)] = choice;
        Num cost = player_cost(g, result.profile, i);
        result.trace.push_back({i, choice, cost});
    }
    return result;
}

template <class Num>
struct DynamicsResult {
    Profile profile;
    long steps = 0;
    bool converged = true;
};

// Best-response dynamics: repeatedly move the lowest-index player that has an
// improving deviation to her best response, until a PNE is reached or
// max_steps improving moves have been made.
template <class Num>
DynamicsResult<Num> best_response_dynamics(const Game<Num>& g, Profile start, long max_steps) {
    if (!start.fully_decided()) throw GameError("dynamics requires a fully decided start profile");
    DynamicsResult<Num> result;
    result.profile = std::move(start);
    for (long step = 0; step < max_steps; ++step) {
        bool moved = false;
        auto loads = congestion(g, result.profile);
        auto counts = user_counts(g, result.profile);
        for (int i = 0; i < g.num_players() && !moved; ++i) {
            Num current = detail::player_cost_impl(g, result.profile, i, loads, counts);
            int br = best_response(g, result.profile, i);
            Num br_cost = deviation_cost(g, result.profile, loads, counts, i, br);
            if (NumTraits<Num>::strictly_less(br_cost, current)) {
                result.profile.choices[static_cast<std::size_t>(i)] = br;
                moved = true;
            }
        }
        if (!moved) {
            result.steps = step;
            return result;
        }
        ++result.steps;
    }
    result.converged = is_eps_pne(g, result.profile, NumTraits<Num>::zero()).is_equilibrium;
    return result;
}

// Potential functions. RosenthalExact evaluates the generic Rosenthal sum
// sum_e sum_{k=1..L_e} ell_e(k) (unweighted games); the quadratic and cubic
// kinds use the closed forms L(L+1)(2L+1)/6 and (L(L+1))^2/4 on monomial
// games and must agree with the Rosenthal sum.
template <class Num>
Num potential(const Game<Num>& g, const Profile& s, const PotentialKind& kind) {
    const Num eps = num_cast<Num>(kind.eps);
    auto loads = congestion(g, s);

    auto require_unweighted = [&] {
        if (!g.unweighted()) throw GameError("potential requires unweighted players");
    };
    auto integer_load = [&](const Num& load) {
        long L = std::lround(to_double(load));
        return L;
    };

    switch (kind.kind) {
        case PotentialKind::RosenthalExact: {
            require_unweighted();
            Num total = NumTraits<Num>::zero();
            for (int e = 0; e < g.num_resources(); ++e) {
                long L = integer_load(loads[static_cast<std::size_t>(e)]);
                for (long k = 1; k <= L; ++k)
                    total += g.latencies[static_cast<std::size_t>(e)].eval(Num(static_cast<int>(k)));
            }
            return total;
        }
        case PotentialKind::QuadraticExact: {
            require_unweighted();
            if (g.max_degree() != 2) throw GameError("quadratic potential requires degree-2 latencies");
            Num total = NumTraits<Num>::zero();
            for (int e = 0; e < g.num_resources(); ++e) {
                const auto& spec = g.latencies[static_cast<std::size_t>(e)];
                if (!NumTraits<Num>::is_zero(spec.coeffs[0]) ||
                    (spec.degree() >= 1 && !NumTraits<Num>::is_zero(spec.coeffs[1])))
                    throw GameError("quadratic potential requires monomial latencies");
                const Num& L = loads[static_cast<std::size_t>(e)];
                total += spec.coeffs[2] * L * (L + Num(1)) * (Num(2) * L + Num(1)) / Num(6);
            }
            return total;
        }
        case PotentialKind::CubicExact: {
            require_unweighted();
            if (g.max_degree() != 3) throw GameError("cubic potential requires degree-3 latencies");
            Num total = NumTraits<Num>::zero();
            for (int e = 0; e < g.num_resources(); ++e) {
                const auto& spec = g.latencies[static_cast<std::size_t>(e)];
                for (int j = 0; j < 3; ++j)
                    if (spec.degree() >= j && !NumTraits<Num>::is_zero(spec.coeffs[static_cast<std::size_t>(j)]))
                        throw GameError("cubic potential requires monomial latencies");
                const Num& L = loads[static_cast<std::size_t>(e)];
                Num t = L * (L + Num(1));
                total += spec.coeffs[3] * t * t / Num(4);
            }
            return total;
        }
        case PotentialKind::EpsAffineUnweighted: {
            require_unweighted();
            if (g.max_degree() > 1) throw GameError("eps potential requires affine latencies");
            const Num c = (NumTraits<Num>::one() - eps) / (NumTraits<Num>::one() + eps);
            Num total = NumTraits<Num>::zero();
            for (int e = 0; e < g.num_resources(); ++e) {
                const auto& spec = g.latencies[static_cast<std::size_t>(e)];
                const Num& L = loads[static_cast<std::size_t>(e)];
                Num alpha = spec.degree() >= 1 ? spec.coeffs[1] : NumTraits<Num>::zero();
                Num beta = spec.coeffs[0];
                total += alpha * (L * L + c * L) + Num(2) * beta / (NumTraits<Num>::one() + eps) * L;
            }
            return total;
        }
        case PotentialKind::EpsAffineWeighted: {
            if (g.max_degree() > 1) throw GameError("eps potential requires affine latencies");
            for (const auto& spec : g.latencies)
                if (!NumTraits<Num>::is_zero(spec.coeffs[0]))
                    throw GameError("weighted eps potential requires linear latencies");
            const Num c = (NumTraits<Num>::one() - eps) / (NumTraits<Num>::one() + eps);
            Num total = NumTraits<Num>::zero();
            for (int e = 0; e < g.num_resources(); ++e) {
                const auto& spec = g.latencies[static_cast<std::size_t>(e)];
                Num alpha = spec.degree() >= 1 ? spec.coeffs[1] : NumTraits<Num>::zero();
                const Num& L = loads[static_cast<std::size_t>(e)];
                total += alpha * L * L / Num(2);
            }
            for (int i = 0; i < g.num_players(); ++i) {
                if (!s.decided(i)) continue;
                const Num& w = g.weights[static_cast<std::size_t>(i)];
                for (int e : g.strategy(i, s.choices[static_cast<std::size_t>(i)])) {
                    const auto& spec = g.latencies[static_cast<std::size_t>(e)];
                    Num alpha = spec.degree() >= 1 ? spec.coeffs[1] : NumTraits<Num>::zero();
                    total += c * alpha * w * w / Num(2);
                }
            }
            return total;
        }
    }
    throw GameError("unknown potential kind");
}

}  // namespace congames

#endif  // CONGAMES_DYNAMICS_HPP
