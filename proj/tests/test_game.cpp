#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "congames/exact_metrics.hpp"
#include "congames/gallery.hpp"
#include "congames/game.hpp"

using namespace congames;

namespace {

Game<Rational> random_monomial_game(std::mt19937_64& rng, int degree, int max_players = 4,
                                    int max_resources = 4) {
    std::uniform_int_distribution<int> players(1, max_players), resources(2, max_resources),
        strategies(1, 3), coef(0, 6);
    Game<Rational> g;
    int n = players(rng), m = resources(rng);
    g.weights.assign(static_cast<std::size_t>(n), Rational(1));
    for (int e = 0; e < m; ++e)
        g.latencies.push_back(LatencySpec<Rational>::monomial(Rational(coef(rng)), degree));
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

Profile random_profile(std::mt19937_64& rng, const Game<Rational>& g) {
    Profile p;
    for (int i = 0; i < g.num_players(); ++i) {
        std::uniform_int_distribution<int> pick(0, g.num_strategies(i) - 1);
        p.choices.push_back(pick(rng));
    }
    return p;
}

}  // namespace

TEST_CASE("congestion on the 5/2 instance") {
    auto bundle = gen_poa_unweighted_affine();
    const auto& g = std::get<Game<Rational>>(bundle.game);
    auto loads = congestion(g, bundle.k_profile);
    CHECK(loads == std::vector<Rational>{Rational(1), Rational(2), Rational(2)});

    auto empty = Profile::empty_profile(3);
    auto zero = congestion(g, empty);
    CHECK(zero == std::vector<Rational>{Rational(0), Rational(0), Rational(0)});
}

TEST_CASE("congestion with golden-ratio weights") {
    auto bundle = gen_poa_weighted_affine();
    const auto& g = std::get<Game<double>>(bundle.game);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    auto loads = congestion(g, bundle.o_profile);
    CHECK(loads[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(loads[1] == doctest::Approx(phi).epsilon(1e-12));
    CHECK(loads[2] == doctest::Approx(phi).epsilon(1e-12));
}

TEST_CASE("player costs on the 5/2 instance") {
    auto bundle = gen_poa_unweighted_affine();
    const auto& g = std::get<Game<Rational>>(bundle.game);
    CHECK(player_cost(g, bundle.k_profile, 0) == Rational(9));
    CHECK(player_cost(g, bundle.k_profile, 1) == Rational(10));
    CHECK(player_cost(g, bundle.k_profile, 2) == Rational(6));

    Profile partial = Profile::empty_profile(3);
    CHECK_THROWS_AS(player_cost(g, partial, 0), GameError);
}

TEST_CASE("solo player on a unit linear resource pays 1") {
    Game<Rational> g;
    g.weights = {Rational(1)};
    g.latencies = {LatencySpec<Rational>::linear(Rational(1))};
    g.strategies = {{{0}}};
    g.validate();
    CHECK(player_cost(g, Profile({0}), 0) == Rational(1));
}

TEST_CASE("fair sharing splits the resource cost") {
    Game<Rational> g;
    g.sharing = Sharing::FairCostSharing;
    g.weights = {Rational(1), Rational(1), Rational(1)};
    g.latencies = {LatencySpec<Rational>::constant(Rational(6))};
    g.strategies = {{{0}}, {{0}}, {{0}}};
    g.validate();
    Profile all({0, 0, 0});
    for (int i = 0; i < 3; ++i) CHECK(player_cost(g, all, i) == Rational(2));
    CHECK(social_sum(g, all) == Rational(6));
}

TEST_CASE("social values of the 5/2 instance") {
    auto bundle = gen_poa_unweighted_affine();
    const auto& g = std::get<Game<Rational>>(bundle.game);
    CHECK(social_sum(g, bundle.k_profile) == Rational(25));
    CHECK(social_sum(g, bundle.o_profile) == Rational(10));
    CHECK(social_sum(g, Profile::empty_profile(3)) == Rational(0));
    CHECK(social_max(g, bundle.k_profile) == Rational(10));
}

TEST_CASE("social values of the golden instance") {
    auto bundle = gen_poa_weighted_affine();
    const auto& g = std::get<Game<double>>(bundle.game);
    const double s5 = std::sqrt(5.0);
    CHECK(social_sum(g, bundle.k_profile) == doctest::Approx(10.0 + 4.0 * s5).epsilon(1e-12));
    CHECK(social_sum(g, bundle.o_profile) == doctest::Approx(5.0 + s5).epsilon(1e-12));
    double ratio = social_sum(g, bundle.k_profile) / social_sum(g, bundle.o_profile);
    CHECK(ratio == doctest::Approx((3.0 + s5) / 2.0).epsilon(1e-12));
}

TEST_CASE("cost decomposition: sum of player costs equals sum_e alpha_e L^{d+1}") {
    std::mt19937_64 rng(20240801);
    for (int caseno = 0; caseno < 400; ++caseno) {
        int degree = 1 + caseno % 3;
        auto g = random_monomial_game(rng, degree);
        auto p = random_profile(rng, g);
        auto loads = congestion(g, p);
        Rational direct = social_sum(g, p);
        Rational decomposed(0);
        for (int e = 0; e < g.num_resources(); ++e) {
            Rational pow(1);
            for (int k = 0; k <= degree; ++k) pow *= loads[static_cast<std::size_t>(e)];
            decomposed += g.latencies[static_cast<std::size_t>(e)].coeffs.back() * pow;
        }
        CHECK(direct == decomposed);
    }
}

TEST_CASE("congestion changes only on the symmetric difference of strategies") {
    std::mt19937_64 rng(20240802);
    for (int caseno = 0; caseno < 200; ++caseno) {
        auto g = random_monomial_game(rng, 1);
        auto p = random_profile(rng, g);
        std::uniform_int_distribution<int> player(0, g.num_players() - 1);
        int i = player(rng);
        std::uniform_int_distribution<int> strat(0, g.num_strategies(i) - 1);
        int t = strat(rng);
        Profile q = p;
        q.choices[static_cast<std::size_t>(i)] = t;
        auto before = congestion(g, p), after = congestion(g, q);
        const auto& s_old = g.strategy(i, p.choices[static_cast<std::size_t>(i)]);
        const auto& s_new = g.strategy(i, t);
        for (int e = 0; e < g.num_resources(); ++e) {
            bool in_old = std::find(s_old.begin(), s_old.end(), e) != s_old.end();
            bool in_new = std::find(s_new.begin(), s_new.end(), e) != s_new.end();
            Rational delta = after[static_cast<std::size_t>(e)] - before[static_cast<std::size_t>(e)];
            if (in_old == in_new)
                CHECK(delta == Rational(0));
            else if (in_new)
                CHECK(delta == g.weights[static_cast<std::size_t>(i)]);
            else
                CHECK(delta == -g.weights[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("normalize_affine drops constants and preserves costs") {
    SUBCASE("single player, ell(x) = 2x + 3") {
        Game<Rational> g;
        g.weights = {Rational(1)};
        g.latencies = {LatencySpec<Rational>({Rational(3), Rational(2)})};
        g.strategies = {{{0}}};
        g.validate();
        auto normalized = normalize_affine(g);
        CHECK(normalized.num_resources() == 2);
        CHECK(normalized.latencies[0].coeffs[0] == Rational(0));
        CHECK(normalized.latencies[1].coeffs[1] == Rational(3));
        CHECK(player_cost(g, Profile({0}), 0) == Rational(5));
        CHECK(player_cost(normalized, Profile({0}), 0) == Rational(5));
    }
    SUBCASE("shared constant resource splits by weight") {
        Game<Rational> g;
        g.weights = {Rational(1), Rational(2)};
        g.latencies = {LatencySpec<Rational>({Rational(4), Rational(1)})};
        g.strategies = {{{0}}, {{0}}};
        g.validate();
        auto normalized = normalize_affine(g);
        CHECK(normalized.num_resources() == 3);
        CHECK(normalized.latencies[1].coeffs[1] == Rational(4));      // beta / w_1
        CHECK(normalized.latencies[2].coeffs[1] == Rational(2));     // beta / w_2
        Profile both({0, 0});
        CHECK(player_cost(g, both, 0) == player_cost(normalized, both, 0));
        CHECK(player_cost(g, both, 1) == player_cost(normalized, both, 1));
    }
    SUBCASE("all-zero constants change nothing") {
        auto bundle = gen_poa_unweighted_affine();
        const auto& g = std::get<Game<Rational>>(bundle.game);
        auto normalized = normalize_affine(g);
        CHECK(normalized.num_resources() == g.num_resources());
        CHECK(social_sum(normalized, bundle.k_profile) == Rational(25));
    }
    SUBCASE("rejects degree above one") {
        Game<Rational> g;
        g.weights = {Rational(1)};
        g.latencies = {LatencySpec<Rational>::monomial(Rational(1), 2)};
        g.strategies = {{{0}}};
        CHECK_THROWS_AS(normalize_affine(g), GameError);
    }
}

TEST_CASE("normalize_affine preserves all player costs on every profile") {
    std::mt19937_64 rng(20240803);
    for (int caseno = 0; caseno < 120; ++caseno) {
        std::uniform_int_distribution<int> coef(0, 4);
        auto g = random_monomial_game(rng, 1);
        for (auto& spec : g.latencies) spec.coeffs[0] = Rational(coef(rng));
        auto normalized = normalize_affine(g);
        ProfileEnumerator<Rational> en(g);
        en.for_each([&](const Profile& p) {
            for (int i = 0; i < g.num_players(); ++i)
                CHECK(player_cost(g, p, i) == player_cost(normalized, p, i));
        });
    }
}

TEST_CASE("validation rejects malformed games") {
    Game<Rational> g;
    g.weights = {Rational(1)};
    g.latencies = {LatencySpec<Rational>::linear(Rational(1))};
    g.strategies = {{{0, 0}}};
    CHECK_THROWS_AS(g.validate(), GameError);
    g.strategies = {{{1}}};
    CHECK_THROWS_AS(g.validate(), GameError);
    g.strategies = {{}};
    CHECK_THROWS_AS(g.validate(), GameError);
    g.strategies = {{{0}}};
    g.weights = {Rational(0)};
    CHECK_THROWS_AS(g.validate(), GameError);
}
