#ifndef CONGAMES_EXACT_METRICS_HPP
#define CONGAMES_EXACT_METRICS_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "congames/dynamics.hpp"
#include "congames/game.hpp"

namespace congames {

struct CapExceededError : GameError {
    using GameError::GameError;
};

enum class SocialKind { Sum, Max };

template <class Num>
Num social_value(const Game<Num>& g, const Profile& s, SocialKind social) {
    return social == SocialKind::Sum ? social_sum(g, s) : social_max(g, s);
}

// Lexicographic enumeration of all full strategy profiles. Throws
// CapExceededError when prod |Sigma_i| exceeds the cap.
template <class Num>
class ProfileEnumerator {
  public:
    explicit ProfileEnumerator(const Game<Num>& g, long long cap = kDefaultCap) : game_(g) {
        long long total = 1;
        for (int i = 0; i < g.num_players(); ++i) {
            total *= g.num_strategies(i);
            if (total > cap)
                throw CapExceededError("profile space exceeds cap (" + std::to_string(total) +
                                       "+ profiles, cap " + std::to_string(cap) + ")");
        }
        total_ = total;
        current_ = Profile(std::vector<int>(static_cast<std::size_t>(g.num_players()), 0));
    }

    static constexpr long long kDefaultCap = 10'000'000;

    long long size() const { return total_; }

    // Calls fn(profile) for every full profile in lexicographic order.
    void for_each(const std::function<void(const Profile&)>& fn) {
        Profile p = current_;
        const int n = game_.num_players();
        if (n == 0) {
            fn(p);
            return;
        }
        while (true) {
            fn(p);
            int i = n - 1;
            while (i >= 0) {
                auto idx = static_cast<std::size_t>(i);
                if (p.choices[idx] + 1 < game_.num_strategies(i)) {
                    ++p.choices[idx];
                    std::fill(p.choices.begin() + i + 1, p.choices.end(), 0);
                    break;
                }
                --i;
            }
            if (i < 0) break;
        }
    }

  private:
    const Game<Num>& game_;
    long long total_ = 0;
    Profile current_;
};

template <class Num>
struct MetricsReport {
    SocialKind social = SocialKind::Sum;
    Profile optimum;
    Num optimum_value{};
    std::vector<Profile> equilibria;  // every eps-PNE found (enumeration order)
    std::optional<Profile> worst_equilibrium, best_equilibrium;
    Num worst_equilibrium_value{}, best_equilibrium_value{};
    std::optional<double> poa, pos;   // absent when no equilibrium exists
    bool ratios_exact = false;        // poa/pos are exact rationals rendered to double
    std::optional<Rational> poa_exact, pos_exact;
    bool empty_equilibrium_set = false;

    std::optional<double> apx;        // one-round-walk worst ratio
    std::optional<Rational> apx_exact;
    std::vector<int> apx_ordering;    // ordering realizing the worst walk
    Profile apx_profile;
};

namespace detail {

template <class Num>
void fill_ratio(const Num& value, const Num& opt, std::optional<double>& out,
                std::optional<Rational>& out_exact) {
    if (NumTraits<Num>::is_zero(opt)) {
        if (NumTraits<Num>::is_zero(value)) {
            out = 1.0;
            if constexpr (NumTraits<Num>::is_exact) out_exact = Rational(1);
            return;
        }
        throw GameError("undefined ratio: optimum social value is zero");
    }
    out = to_double(value) / to_double(opt);
    if constexpr (NumTraits<Num>::is_exact) out_exact = value / opt;
}

}  // namespace detail

// Exhaustive eps-PoA / eps-PoS: optimum over all profiles, equilibrium set by
// direct deviation checks, worst/best equilibrium ratios.
template <class Num>
MetricsReport<Num> exact_poa_pos(const Game<Num>& g, const Num& eps,
                                 SocialKind social = SocialKind::Sum,
                                 long long cap = ProfileEnumerator<Num>::kDefaultCap) {
    ProfileEnumerator<Num> en(g, cap);
    MetricsReport<Num> report;
    report.social = social;
    bool first = true;
    en.for_each([&](const Profile& p) {
        Num value = social_value(g, p, social);
        if (first || value < report.optimum_value) {
            report.optimum = p;
            report.optimum_value = value;
        }
        first = false;
        if (is_eps_pne(g, p, eps).is_equilibrium) {
            report.equilibria.push_back(p);
            if (!report.worst_equilibrium || report.worst_equilibrium_value < value) {
                report.worst_equilibrium = p;
                report.worst_equilibrium_value = value;
            }
            if (!report.best_equilibrium || value < report.best_equilibrium_value) {
                report.best_equilibrium = p;
                report.best_equilibrium_value = value;
            }
        }
    });
    if (report.equilibria.empty()) {
        report.empty_equilibrium_set = true;
        return report;
    }
    detail::fill_ratio(report.worst_equilibrium_value, report.optimum_value, report.poa,
                       report.poa_exact);
    detail::fill_ratio(report.best_equilibrium_value, report.optimum_value, report.pos,
                       report.pos_exact);
    report.ratios_exact = NumTraits<Num>::is_exact;
    return report;
}

// Profile minimizing the given potential (ties broken lexicographically).
template <class Num>
Profile potential_minimizer(const Game<Num>& g, const PotentialKind& kind,
                            long long cap = ProfileEnumerator<Num>::kDefaultCap) {
    ProfileEnumerator<Num> en(g, cap);
    std::optional<Num> best;
    Profile arg;
    en.for_each([&](const Profile& p) {
        Num value = potential(g, p, kind);
        if (!best || value < *best) {
            best = value;
            arg = p;
        }
    });
    return arg;
}

namespace detail {

template <class Num>
struct ApxSearch {
    const Game<Num>& g;
    std::vector<Num> full_loads;       // every player on every resource she can reach
    std::vector<Num> worst_at_full;    // per player: priciest strategy at full loads
    std::optional<Num> best_value;
    std::vector<int> best_order;
    Profile best_profile;
    std::vector<int> order_stack;

    Num strategy_cost_at_full(int i, int t) const {
        // Fair sharing: SUM is bounded by the total resource cost instead, so
        // the per-node refinement is skipped (root ceiling already covers it).
        if (g.sharing == Sharing::FairCostSharing) return NumTraits<Num>::zero();
        Num c = NumTraits<Num>::zero();
        for (int e : g.strategy(i, t))
            c += g.latencies[static_cast<std::size_t>(e)].eval(full_loads[static_cast<std::size_t>(e)]);
        return g.weights[static_cast<std::size_t>(i)] * c;
    }

    // `ceiling` bounds the final social cost of every completion of the
    // current partial walk: moved players pay at most their chosen strategy at
    // full congestion, unmoved players at most their priciest strategy there.
    // Loads only grow along a walk and latencies are nondecreasing, so pruning
    // branches whose ceiling cannot beat the incumbent is lossless.
    void run(Profile& partial, std::vector<char>& moved, int remaining, const Num& ceiling) {
        if (remaining == 0) {
            Num value = social_sum(g, partial);
            if (!best_value || *best_value < value) {
                best_value = value;
                best_order = order_stack;
                best_profile = partial;
            }
            return;
        }
        if (best_value && ceiling <= *best_value) return;
        for (int i = 0; i < g.num_players(); ++i) {
            if (moved[static_cast<std::size_t>(i)]) continue;
            // Identical not-yet-moved players are interchangeable as next mover.
            bool duplicate = false;
            for (int j = 0; j < i && !duplicate; ++j)
                if (!moved[static_cast<std::size_t>(j)] &&
                    g.strategies[static_cast<std::size_t>(j)] == g.strategies[static_cast<std::size_t>(i)] &&
                    !(g.weights[static_cast<std::size_t>(j)] < g.weights[static_cast<std::size_t>(i)]) &&
                    !(g.weights[static_cast<std::size_t>(i)] < g.weights[static_cast<std::size_t>(j)]))
                    duplicate = true;
            if (duplicate) continue;
            for (int choice : best_responses(g, partial, i)) {
                partial.choices[static_cast<std::size_t>(i)] = choice;
                moved[static_cast<std::size_t>(i)] = 1;
                order_stack.push_back(i);
                Num next_ceiling = ceiling - worst_at_full[static_cast<std::size_t>(i)] +
                                   strategy_cost_at_full(i, choice);
                run(partial, moved, remaining - 1, next_ceiling);
                order_stack.pop_back();
                moved[static_cast<std::size_t>(i)] = 0;
                partial.choices[static_cast<std::size_t>(i)] = Profile::kUndecided;
            }
        }
    }
};

}  // namespace detail

// Exact worst-case one-round-walk ratio: exhaustive over player orderings and
// over every tie resolution of each best response.
template <class Num>
MetricsReport<Num> exact_apx_one_round(const Game<Num>& g, int player_cap = 8,
                                       long long cap = ProfileEnumerator<Num>::kDefaultCap) {
    if (g.num_players() > player_cap)
        throw CapExceededError("one-round-walk search capped at " + std::to_string(player_cap) +
                               " players");
    MetricsReport<Num> report = exact_poa_pos(g, NumTraits<Num>::zero(), SocialKind::Sum, cap);

    detail::ApxSearch<Num> search{g};
    search.full_loads.assign(static_cast<std::size_t>(g.num_resources()), NumTraits<Num>::zero());
    for (int i = 0; i < g.num_players(); ++i) {
        std::vector<char> reach(static_cast<std::size_t>(g.num_resources()), 0);
        for (const auto& strat : g.strategies[static_cast<std::size_t>(i)])
            for (int e : strat) reach[static_cast<std::size_t>(e)] = 1;
        for (int e = 0; e < g.num_resources(); ++e)
            if (reach[static_cast<std::size_t>(e)])
                search.full_loads[static_cast<std::size_t>(e)] += g.weights[static_cast<std::size_t>(i)];
    }
    Num root_ceiling = NumTraits<Num>::zero();
    if (g.sharing == Sharing::FairCostSharing) {
        search.worst_at_full.assign(static_cast<std::size_t>(g.num_players()),
                                    NumTraits<Num>::zero());
        for (const auto& spec : g.latencies) root_ceiling += spec.coeffs[0];
    } else {
        for (int i = 0; i < g.num_players(); ++i) {
            Num worst = NumTraits<Num>::zero();
            for (int t = 0; t < g.num_strategies(i); ++t) {
                Num c = search.strategy_cost_at_full(i, t);
                if (worst < c) worst = c;
            }
            search.worst_at_full.push_back(worst);
            root_ceiling += worst;
        }
    }

    Profile partial = Profile::empty_profile(g.num_players());
    std::vector<char> moved(static_cast<std::size_t>(g.num_players()), 0);
    search.run(partial, moved, g.num_players(), root_ceiling);

    detail::fill_ratio(*search.best_value, report.optimum_value, report.apx, report.apx_exact);
    report.apx_ordering = search.best_order;
    report.apx_profile = search.best_profile;
    return report;
}

}  // namespace congames

#endif  // CONGAMES_EXACT_METRICS_HPP
