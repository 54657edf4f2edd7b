#ifndef CONGAMES_GALLERY_HPP
#define CONGAMES_GALLERY_HPP

#include <optional>
#include <string>

#include "congames/game.hpp"

namespace congames {

// A generated lower-bound instance: the game, the equilibrium-side profile K,
// the optimum-side profile O, the approximation parameter the claim holds at,
// and the claimed ratio.
struct InstanceBundle {
    std::string name;
    AnyGame game;
    Profile k_profile, o_profile;
    double eps = 0.0;
    Rational eps_exact{0};
    bool eps_is_exact = true;
    double claimed_ratio = 1.0;
    std::optional<Rational> claimed_ratio_exact;
};

// 3 players, 3 linear resources (slopes 5, 2, 3); K is a PNE with
// SUM(K)/SUM(O) = 5/2. n > 3 pads with a zero-cost resource.
InstanceBundle gen_poa_unweighted_affine(int n = 3);

// Weights (1, phi, phi) with phi the golden ratio; ratio (3+sqrt(5))/2.
InstanceBundle gen_poa_weighted_affine();

// The eps(t,y) family: t+2 players, 2(t+1) resources, K_e = psi O_e on every
// resource, ratio psi^2 at eps(t,y). Exact when t^2+4y is a perfect square.
InstanceBundle gen_eps_poa_weighted(int t, int y);

// Price-of-stability lower-bound family for quadratic (d=2) and cubic (d=3)
// latencies. Closed-form parameters r, r' and the achieved ratio; the game is
// materialized only when its size stays within resource_cap.
struct PosLowerBound {
    int degree;
    long long n1, n2;
    Rational r, r_prime;
    Rational ratio;
    bool uniqueness_holds = false;  // cost_O(k-1) > cost_K(k) for all k in [n1]
    std::optional<long long> failing_k;
    std::optional<InstanceBundle> instance;
};
PosLowerBound gen_pos_poly_lb(int degree, long long n1, long long n2,
                              const Rational& pad = Rational(1, 1000),
                              long long resource_cap = 200'000);

// Fair-cost-sharing chain: one shared resource of cost 1 + margin vs private
// resources of cost 1/i; the unique PNE is all-private with cost H_n.
Game<Rational> gen_fair_sharing_chain(int n, const Rational& margin = Rational(1, 10));

// eps(t,y) = ((t-1) sqrt(t^2+4y) + 2y + t^2 - t - 2) / (sqrt(t^2+4y) + t + 2)
double eps_of_family(int t, int y);
// psi for the family: (t + sqrt(t^2+4y)) / 2
double psi_of_family(int t, int y);

}  // namespace congames

#endif  // CONGAMES_GALLERY_HPP
