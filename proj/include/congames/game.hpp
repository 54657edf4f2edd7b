#ifndef CONGAMES_GAME_HPP
#define CONGAMES_GAME_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "congames/numeric.hpp"

namespace congames {

struct GameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Sharing { Congestion, FairCostSharing };

// Polynomial latency ell(x) = coeffs[0] + coeffs[1] x + ... + coeffs[d] x^d,
// all coefficients nonnegative, d <= 3. Fair-sharing resources carry a single
// constant coefficient (the resource cost).
template <class Num>
struct LatencySpec {
    std::vector<Num> coeffs;

    LatencySpec() : coeffs{NumTraits<Num>::zero()} {}
    explicit LatencySpec(std::vector<Num> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.push_back(NumTraits<Num>::zero());
    }
    static LatencySpec linear(Num slope) {
        return LatencySpec({NumTraits<Num>::zero(), std::move(slope)});
    }
    static LatencySpec monomial(Num coef, int degree) {
        std::vector<Num> c(static_cast<std::size_t>(degree) + 1, NumTraits<Num>::zero());
        c.back() = std::move(coef);
        return LatencySpec(std::move(c));
    }
    static LatencySpec constant(Num cost) { return LatencySpec({std::move(cost)}); }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    Num eval(const Num& load) const {
        Num v = NumTraits<Num>::zero();
        for (std::size_t i = coeffs.size(); i-- > 0;) v = v * load + coeffs[i];
        return v;
    }
};

// One strategy index per player; kUndecided marks players who have not moved
// yet (used by one-round-walk states).
struct Profile {
    static constexpr int kUndecided = -1;
    std::vector<int> choices;

    Profile() = default;
    explicit Profile(std::vector<int> c) : choices(std::move(c)) {}
    static Profile empty_profile(int n) {
        return Profile(std::vector<int>(static_cast<std::size_t>(n), kUndecided));
    }

    bool decided(int player) const { return choices[static_cast<std::size_t>(player)] != kUndecided; }
    bool fully_decided() const {
        return std::all_of(choices.begin(), choices.end(), [](int c) { return c != kUndecided; });
    }
    int size() const { return static_cast<int>(choices.size()); }
    bool operator==(const Profile& other) const { return choices == other.choices; }
    bool operator<(const Profile& other) const { return choices < other.choices; }
};

// Weighted congestion game (or fair-cost-sharing game) with explicit strategy
// sets over resource indices.
template <class Num>
struct Game {
    std::vector<Num> weights;                           // w_i > 0
    std::vector<std::vector<std::vector<int>>> strategies;  // per player, list of resource sets
    std::vector<LatencySpec<Num>> latencies;            // per resource
    Sharing sharing = Sharing::Congestion;

    int num_players() const { return static_cast<int>(weights.size()); }
    int num_resources() const { return static_cast<int>(latencies.size()); }
    int num_strategies(int player) const {
        return static_cast<int>(strategies[static_cast<std::size_t>(player)].size());
    }
    const std::vector<int>& strategy(int player, int index) const {
        return strategies[static_cast<std::size_t>(player)][static_cast<std::size_t>(index)];
    }

    bool unweighted() const {
        const Num one = NumTraits<Num>::one();
        return std::all_of(weights.begin(), weights.end(),
                           [&](const Num& w) { return !(w < one) && !(one < w); });
    }
    int max_degree() const {
        int d = 0;
        for (const auto& l : latencies) d = std::max(d, l.degree());
        return d;
    }

    void validate() const {
        if (weights.size() != strategies.size())
            throw GameError("weights/strategies size mismatch");
        for (const auto& w : weights)
            if (!(NumTraits<Num>::zero() < w)) throw GameError("player weights must be positive");
        const int m = num_resources();
        for (std::size_t i = 0; i < strategies.size(); ++i) {
            if (strategies[i].empty())
                throw GameError("player " + std::to_string(i) + " has an empty strategy set");
            for (const auto& strat : strategies[i]) {
                if (strat.empty()) throw GameError("empty strategy for player " + std::to_string(i));
                std::set<int> seen;
                for (int e : strat) {
                    if (e < 0 || e >= m) throw GameError("strategy references unknown resource");
                    if (!seen.insert(e).second) throw GameError("duplicate resource in strategy");
                }
            }
        }
        for (const auto& l : latencies) {
            if (l.degree() > 3) throw GameError("latency degree exceeds 3");
            for (const auto& c : l.coeffs)
                if (c < NumTraits<Num>::zero()) throw GameError("negative latency coefficient");
            if (sharing == Sharing::FairCostSharing) {
                for (std::size_t j = 1; j < l.coeffs.size(); ++j)
                    if (!NumTraits<Num>::is_zero(l.coeffs[j]))
                        throw GameError("fair-sharing resources must have constant cost");
            }
        }
        if (sharing == Sharing::FairCostSharing && !unweighted())
            throw GameError("fair-sharing games are unweighted");
    }
};

// Per-resource loads L_e(S): sum of the weights of players using e.
// Undecided players contribute nothing.
template <class Num>
std::vector<Num> congestion(const Game<Num>& g, const Profile& s) {
    std::vector<Num> loads(static_cast<std::size_t>(g.num_resources()), NumTraits<Num>::zero());
    for (int i = 0; i < g.num_players(); ++i) {
        if (!s.decided(i)) continue;
        for (int e : g.strategy(i, s.choices[static_cast<std::size_t>(i)]))
            loads[static_cast<std::size_t>(e)] += g.weights[static_cast<std::size_t>(i)];
    }
    return loads;
}

// Number of users of each resource (fair-sharing denominator).
template <class Num>
std::vector<int> user_counts(const Game<Num>& g, const Profile& s) {
    std::vector<int> counts(static_cast<std::size_t>(g.num_resources()), 0);
    for (int i = 0; i < g.num_players(); ++i) {
        if (!s.decided(i)) continue;
        for (int e : g.strategy(i, s.choices[static_cast<std::size_t>(i)]))
            ++counts[static_cast<std::size_t>(e)];
    }
    return counts;
}

namespace detail {

template <class Num>
Num player_cost_impl(const Game<Num>& g, const Profile& s, int i,
                     const std::vector<Num>& loads, const std::vector<int>& counts) {
    Num cost = NumTraits<Num>::zero();
    const auto& strat = g.strategy(i, s.choices[static_cast<std::size_t>(i)]);
    if (g.sharing == Sharing::Congestion) {
        for (int e : strat)
            cost += g.latencies[static_cast<std::size_t>(e)].eval(loads[static_cast<std::size_t>(e)]);
    } else {
        for (int e : strat)
            cost += g.latencies[static_cast<std::size_t>(e)].coeffs[0] /
                    Num(counts[static_cast<std::size_t>(e)]);
    }
    return cost;
}

}  // namespace detail

template <class Num>
Num player_cost(const Game<Num>& g, const Profile& s, int i) {
    if (!s.decided(i)) throw GameError("undecided player");
    return detail::player_cost_impl(g, s, i, congestion(g, s), user_counts(g, s));
}

// SUM(S): the weight-scaled sum of the players' costs, sum_i w_i c_i(S).
// For congestion games this is the total latency sum_e ell_e(L_e) L_e; it
// coincides with sum_i c_i in the unweighted case (and in fair sharing, where
// it equals the total cost of the used resources).
template <class Num>
Num social_sum(const Game<Num>& g, const Profile& s) {
    auto loads = congestion(g, s);
    auto counts = user_counts(g, s);
    Num total = NumTraits<Num>::zero();
    for (int i = 0; i < g.num_players(); ++i) {
        if (!s.decided(i)) continue;
        total += g.weights[static_cast<std::size_t>(i)] *
                 detail::player_cost_impl(g, s, i, loads, counts);
    }
    return total;
}

// MAX(S) = maximum of the players' costs (zero on the empty profile).
template <class Num>
Num social_max(const Game<Num>& g, const Profile& s) {
    auto loads = congestion(g, s);
    auto counts = user_counts(g, s);
    Num best = NumTraits<Num>::zero();
    for (int i = 0; i < g.num_players(); ++i) {
        if (!s.decided(i)) continue;
        Num c = detail::player_cost_impl(g, s, i, loads, counts);
        if (best < c) best = c;
    }
    return best;
}

// Affine-to-linear normalization: each resource e~ with constant term beta > 0
// keeps only its slope, and one fresh resource per (e~, potential user i) with
// slope beta/w_i is appended to every strategy of i containing e~. Player
// costs are preserved exactly at corresponding profiles (the strategy indexing
// is unchanged, so profiles carry over).
template <class Num>
Game<Num> normalize_affine(const Game<Num>& g) {
    if (g.max_degree() > 1) throw GameError("normalization defined for affine only");
    Game<Num> out;
    out.weights = g.weights;
    out.sharing = g.sharing;
    const int m = g.num_resources();
    for (int e = 0; e < m; ++e) {
        Num slope = g.latencies[static_cast<std::size_t>(e)].degree() >= 1
                        ? g.latencies[static_cast<std::size_t>(e)].coeffs[1]
                        : NumTraits<Num>::zero();
        out.latencies.push_back(LatencySpec<Num>::linear(slope));
    }
    out.strategies = g.strategies;
    for (int e = 0; e < m; ++e) {
        const Num beta = g.latencies[static_cast<std::size_t>(e)].coeffs[0];
        if (NumTraits<Num>::is_zero(beta)) continue;
        for (int i = 0; i < g.num_players(); ++i) {
            bool can_use = false;
            for (const auto& strat : g.strategies[static_cast<std::size_t>(i)])
                if (std::find(strat.begin(), strat.end(), e) != strat.end()) can_use = true;
            if (!can_use) continue;
            const int fresh = out.num_resources();
            out.latencies.push_back(
                LatencySpec<Num>::linear(beta / g.weights[static_cast<std::size_t>(i)]));
            for (std::size_t si = 0; si < g.strategies[static_cast<std::size_t>(i)].size(); ++si) {
                const auto& orig = g.strategies[static_cast<std::size_t>(i)][si];
                if (std::find(orig.begin(), orig.end(), e) != orig.end())
                    out.strategies[static_cast<std::size_t>(i)][si].push_back(fresh);
            }
        }
    }
    out.validate();
    return out;
}

// A game in either numeric mode. Rational data stays exact; irrational data
// (surds) drops to double with 1e-9 tolerances.
using AnyGame = std::variant<Game<Rational>, Game<double>>;

template <class Num>
Game<double> to_float_game(const Game<Num>& g) {
    Game<double> out;
    out.sharing = g.sharing;
    for (const auto& w : g.weights) out.weights.push_back(to_double(w));
    out.strategies = g.strategies;
    for (const auto& l : g.latencies) {
        std::vector<double> c;
        for (const auto& x : l.coeffs) c.push_back(to_double(x));
        out.latencies.emplace_back(std::move(c));
    }
    return out;
}

}  // namespace congames

#endif  // CONGAMES_GAME_HPP
