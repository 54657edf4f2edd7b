#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "congames/dynamics.hpp"
#include "congames/exact_metrics.hpp"
#include "congames/gallery.hpp"

using namespace congames;

namespace {

Game<Rational> random_affine_game(std::mt19937_64& rng, bool weighted, int max_players = 3,
                                  int max_resources = 3) {
    std::uniform_int_distribution<int> players(1, max_players), resources(2, max_resources),
        strategies(2, 3), coef(0, 5), weight(1, 4);
    Game<Rational> g;
    int n = players(rng), m = resources(rng);
    for (int i = 0; i < n; ++i)
        g.weights.push_back(weighted ? Rational(weight(rng)) : Rational(1));
    for (int e = 0; e < m; ++e)
        g.latencies.push_back(LatencySpec<Rational>::linear(Rational(coef(rng))));
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int i = 0; i < n; ++i) {
        int count = strategies(rng);
        std::vector<std::vector<int>> sets;
        for (int s = 0; s < count; ++s) {
            std::set<int> chosen;
            int size = 1 + pick(rng) % 2;
            while (static_cast<int>(chosen.size()) < size) chosen.insert(pick(rng));
            sets.emplace_back(chosen.begin(), chosen.end());
        }
        g.strategies.push_back(std::move(sets));
    }
    g.validate();
    return g;
}

Game<Rational> random_monomial_game(std::mt19937_64& rng, int degree) {
    auto g = random_affine_game(rng, false);
    for (auto& spec : g.latencies) {
        Rational lead = spec.coeffs.back();
        spec = LatencySpec<Rational>::monomial(lead, degree);
    }
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("the 5/2 equilibrium profile is a PNE, with equality deviations") {
    auto bundle = gen_poa_unweighted_affine();
    const auto& g = std::get<Game<Rational>>(bundle.game);
    auto report = is_eps_pne(g, bundle.k_profile, Rational(0));
    CHECK(report.is_equilibrium);
    CHECK(is_eps_pne(g, bundle.o_profile, Rational(0)).is_equilibrium);
}

TEST_CASE("single-player game: the min-cost strategy is a 0-PNE") {
    Game<Rational> g;
    g.weights = {Rational(1)};
    g.latencies = {LatencySpec<Rational>::linear(Rational(3)),
                   LatencySpec<Rational>::linear(Rational(1))};
    g.strategies = {{{0}, {1}}};
    g.validate();
    CHECK_FALSE(is_eps_pne(g, Profile({0}), Rational(0)).is_equilibrium);
    CHECK(is_eps_pne(g, Profile({1}), Rational(0)).is_equilibrium);
}

TEST_CASE("eps family at (1,1) gives a PNE at eps = 0") {
    auto bundle = gen_eps_poa_weighted(1, 1);
    CHECK(bundle.eps == doctest::Approx(0.0));
    const auto& g = std::get<Game<double>>(bundle.game);
    CHECK(is_eps_pne(g, bundle.k_profile, 0.0).is_equilibrium);
}

TEST_CASE("violation witness points at the most profitable deviation") {
    auto bundle = gen_poa_unweighted_affine();
    const auto& g = std::get<Game<Rational>>(bundle.game);
    Profile bad({0, 0, 0});  // loads: e1 = 2, e2 = 2, e3 = 0
    auto report = is_eps_pne(g, bad, Rational(0));
    REQUIRE_FALSE(report.is_equilibrium);
    // player 1 pays 10 + 4 = 14 and can move to e3 for 3
    CHECK(report.player == 0);
    CHECK(report.deviation == 1);
    CHECK(report.violation_ratio == doctest::Approx(14.0 / 3.0));
}

TEST_CASE("best response of the first mover on the 5/2 instance") {
    auto bundle = gen_poa_unweighted_affine();
    const auto& g = std::get<Game<Rational>>(bundle.game);
    Profile empty = Profile::empty_profile(3);
    CHECK(best_response(g, empty, 0) == 1);  // {e3} at cost 3 beats {e1,e2} at 7
    auto all = best_responses(g, empty, 0);
    CHECK(all == std::vector<int>{1});
}

TEST_CASE("ties break to the lowest strategy index") {
    Game<Rational> g;
    g.weights = {Rational(1)};
    g.latencies = {LatencySpec<Rational>::linear(Rational(2)),
                   LatencySpec<Rational>::linear(Rational(2))};
    g.strategies = {{{0}, {1}}};
    g.validate();
    Profile empty = Profile::empty_profile(1);
    CHECK(best_response(g, empty, 0) == 0);
    CHECK(best_responses(g, empty, 0) == std::vector<int>{0, 1});
}

TEST_CASE("one-round walk on the 5/2 instance, order (1,2,3)") {
    auto bundle = gen_poa_unweighted_affine();
    const auto& g = std::get<Game<Rational>>(bundle.game);
    auto walk = one_round_walk(g, {0, 1, 2});
    CHECK(walk.profile == Profile({1, 0, 0}));
    CHECK(social_sum(g, walk.profile) == Rational(10));
    REQUIRE(walk.trace.size() == 3);
    CHECK(walk.trace[0].player == 0);
    CHECK(walk.trace[0].cost_at_choice == Rational(3));
    // ratio vs the optimum (10) stays below 2 + sqrt(5)
    CHECK(to_double(social_sum(g, walk.profile)) / 10.0 <= 2.0 + std::sqrt(5.0));
}

TEST_CASE("single player walk ends at her best response") {
    Game<Rational> g;
    g.weights = {Rational(1)};
    g.latencies = {LatencySpec<Rational>::linear(Rational(3)),
                   LatencySpec<Rational>::linear(Rational(1))};
    g.strategies = {{{0}, {1}}};
    g.validate();
    auto walk = one_round_walk(g, {0});
    CHECK(walk.profile == Profile({1}));
}

TEST_CASE("identical players stack on the single resource") {
    Game<Rational> g;
    const int n = 5;
    g.weights.assign(n, Rational(1));
    g.latencies = {LatencySpec<Rational>::linear(Rational(1))};
    for (int i = 0; i < n; ++i) g.strategies.push_back({{0}});
    g.validate();
    auto walk = one_round_walk(g, {0, 1, 2, 3, 4});
    CHECK(congestion(g, walk.profile)[0] == Rational(n));
}

TEST_CASE("walk determinism: identical runs give identical traces") {
    std::mt19937_64 rng(20240804);
    for (int caseno = 0; caseno < 50; ++caseno) {
        auto g = random_affine_game(rng, true);
        std::vector<int> order(static_cast<std::size_t>(g.num_players()));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        auto w1 = one_round_walk(g, order), w2 = one_round_walk(g, order);
        CHECK(w1.profile == w2.profile);
        REQUIRE(w1.trace.size() == w2.trace.size());
        for (std::size_t s = 0; s < w1.trace.size(); ++s) {
            CHECK(w1.trace[s].player == w2.trace[s].player);
            CHECK(w1.trace[s].strategy == w2.trace[s].strategy);
        }
    }
}

TEST_CASE("dynamics returns a PNE start immediately") {
    auto bundle = gen_poa_unweighted_affine();
    const auto& g = std::get<Game<Rational>>(bundle.game);
    auto result = best_response_dynamics(g, bundle.k_profile, 100);
    CHECK(result.converged);
    CHECK(result.steps == 0);
    CHECK(result.profile == bundle.k_profile);
}

TEST_CASE("dynamics converges on unweighted games and lands on a PNE") {
    std::mt19937_64 rng(20240805);
    for (int caseno = 0; caseno < 100; ++caseno) {
        auto g = random_affine_game(rng, false);
        Profile start;
        for (int i = 0; i < g.num_players(); ++i) start.choices.push_back(0);
        auto result = best_response_dynamics(g, start, 10000);
        REQUIRE(result.converged);
        CHECK(is_eps_pne(g, result.profile, Rational(0)).is_equilibrium);
    }
}

TEST_CASE("potential strictly decreases along improving best responses") {
    std::mt19937_64 rng(20240809);
    for (int caseno = 0; caseno < 60; ++caseno) {
        auto g = random_monomial_game(rng, 2);
        Profile current;
        for (int i = 0; i < g.num_players(); ++i) current.choices.push_back(0);
        auto kind = PotentialKind::rosenthal(2);
        for (int step = 0; step < 200; ++step) {
            Rational before = potential(g, current, kind);
            bool moved = false;
            for (int i = 0; i < g.num_players() && !moved; ++i) {
                int br = best_response(g, current, i);
                Profile next = current;
                next.choices[static_cast<std::size_t>(i)] = br;
                if (player_cost(g, next, i) < player_cost(g, current, i)) {
                    CHECK(potential(g, next, kind) < before);
                    current = next;
                    moved = true;
                }
            }
            if (!moved) break;
        }
    }
}

TEST_CASE("Rosenthal potential closed forms") {
    Game<Rational> g;
    g.weights = {Rational(1), Rational(1), Rational(1)};
    g.strategies = {{{0}}, {{0}}, {{0}}};

    SUBCASE("d=2: 1 + 4 + 9 = 14 = 3*4*7/6") {
        g.latencies = {LatencySpec<Rational>::monomial(Rational(1), 2)};
        g.validate();
        Profile all({0, 0, 0});
        CHECK(potential(g, all, PotentialKind::rosenthal(2)) == Rational(14));
        CHECK(potential(g, all, PotentialKind::quadratic()) == Rational(14));
    }
    SUBCASE("d=3: 1 + 8 + 27 = 36 = (3*4)^2/4") {
        g.latencies = {LatencySpec<Rational>::monomial(Rational(1), 3)};
        g.validate();
        Profile all({0, 0, 0});
        CHECK(potential(g, all, PotentialKind::rosenthal(3)) == Rational(36));
        CHECK(potential(g, all, PotentialKind::cubic()) == Rational(36));
    }
    SUBCASE("empty profile gives zero for every kind") {
        g.latencies = {LatencySpec<Rational>::monomial(Rational(1), 2)};
        g.validate();
        Profile empty = Profile::empty_profile(3);
        CHECK(potential(g, empty, PotentialKind::rosenthal(2)) == Rational(0));
        CHECK(potential(g, empty, PotentialKind::quadratic()) == Rational(0));
    }
}

TEST_CASE("weighted eps potential at eps = 1 is half the quadratic load sum") {
    Game<Rational> g;
    g.weights = {Rational(2), Rational(3)};
    g.latencies = {LatencySpec<Rational>::linear(Rational(4))};
    g.strategies = {{{0}}, {{0}}};
    g.validate();
    Profile both({0, 0});
    // (1/2) * 4 * 5^2 = 50, second term vanishes
    CHECK(potential(g, both, PotentialKind::eps_affine_weighted(Rational(1))) == Rational(50));
}

TEST_CASE("potential kind/game mismatches are rejected") {
    Game<Rational> g;
    g.weights = {Rational(2)};
    g.latencies = {LatencySpec<Rational>::linear(Rational(1))};
    g.strategies = {{{0}}};
    g.validate();
    CHECK_THROWS_AS(potential(g, Profile({0}), PotentialKind::rosenthal(1)), GameError);
    CHECK_THROWS_AS(potential(g, Profile({0}), PotentialKind::quadratic()), GameError);
}

TEST_CASE("exact-potential identity for unilateral deviations") {
    std::mt19937_64 rng(20240806);
    for (int caseno = 0; caseno < 350; ++caseno) {
        int degree = 1 + caseno % 3;
        auto g = degree == 1 ? random_affine_game(rng, false) : random_monomial_game(rng, degree);
        auto kind = PotentialKind::rosenthal(degree);
        std::vector<Profile> all;
        ProfileEnumerator<Rational> en(g, 1000);
        en.for_each([&](const Profile& q) { all.push_back(q); });
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        Profile p = all[pick(rng)];
        Rational phi_p = potential(g, p, kind);
        for (int i = 0; i < g.num_players(); ++i) {
            for (int t = 0; t < g.num_strategies(i); ++t) {
                Profile q = p;
                q.choices[static_cast<std::size_t>(i)] = t;
                Rational lhs = potential(g, q, kind) - phi_p;
                Rational rhs = player_cost(g, q, i) - player_cost(g, p, i);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("local minima of the weighted eps potential are eps-PNE") {
    std::mt19937_64 rng(20240807);
    const Rational eps_grid[] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4),
                                 Rational(1)};
    for (int caseno = 0; caseno < 250; ++caseno) {
        auto g = random_affine_game(rng, true);
        for (auto& spec : g.latencies) spec.coeffs[0] = Rational(0);
        const Rational eps = eps_grid[caseno % 5];
        auto kind = PotentialKind::eps_affine_weighted(eps);
        std::vector<Profile> profiles;
        ProfileEnumerator<Rational> en(g, 2000);
        en.for_each([&](const Profile& p) { profiles.push_back(p); });
        for (const auto& p : profiles) {
            Rational phi_p = potential(g, p, kind);
            bool local_min = true;
            for (int i = 0; i < g.num_players() && local_min; ++i)
                for (int t = 0; t < g.num_strategies(i) && local_min; ++t) {
                    Profile q = p;
                    q.choices[static_cast<std::size_t>(i)] = t;
                    if (potential(g, q, kind) < phi_p) local_min = false;
                }
            if (local_min) CHECK(is_eps_pne(g, p, eps).is_equilibrium);
        }
    }
}

TEST_CASE("walk prefix loads equal the partial profile congestion") {
    std::mt19937_64 rng(20240808);
    for (int caseno = 0; caseno < 50; ++caseno) {
        auto g = random_affine_game(rng, true);
        std::vector<int> order(static_cast<std::size_t>(g.num_players()));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        auto state = WalkState<Rational>::start(g, order);
        for (int i : order) {
            int choice = best_response(g, state.profile, i);
            state.profile.choices[static_cast<std::size_t>(i)] = choice;
            for (int e : g.strategy(i, choice))
                state.prefix_loads[static_cast<std::size_t>(e)] += g.weights[static_cast<std::size_t>(i)];
            ++state.step;
            CHECK(state.prefix_loads == congestion(g, state.profile));
        }
    }
}
