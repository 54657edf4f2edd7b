#include "congames/certificates.hpp"

#include <cmath>

namespace congames {

std::string concept_name(const SolutionConcept& sc) {
    switch (sc.kind) {
        case ConceptKind::EpsPoaUnweighted:
            return "eps-poa-unweighted(d=" + std::to_string(sc.degree) + ")";
        case ConceptKind::EpsPoaWeighted:
            return "eps-poa-weighted(d=" + std::to_string(sc.degree) + ")";
        case ConceptKind::EpsPosViaPotential:
            return std::string("eps-pos-") + (sc.weighted ? "weighted" : "unweighted") +
                   "(d=" + std::to_string(sc.degree) + ")";
        case ConceptKind::OneRoundWalk:
            return std::string("one-round-walk-") + (sc.weighted ? "weighted" : "unweighted") +
                   "(d=" + std::to_string(sc.degree) + ")";
        case ConceptKind::MaxSocialPoa:
            return "max-social-poa(n=" + std::to_string(sc.players) + ")";
        case ConceptKind::FairSharingPos:
            return "fair-sharing-pos(n=" + std::to_string(sc.players) + ")";
    }
    return "unknown";
}

double psi_of_eps(double eps) {
    return (1.0 + eps + std::sqrt(eps * eps + 6.0 * eps + 5.0)) / 2.0;
}

long floor_psi(const Rational& eps) {
    // z = floor(psi). Double estimate, then exact adjustment:
    // z <= psi  <=>  2z - 1 - eps <= sqrt(eps^2 + 6 eps + 5).
    const Rational disc = eps * eps + 6 * eps + 5;
    auto leq_psi = [&](long z) {
        Rational lhs = Rational(2 * z) - 1 - eps;
        if (lhs <= 0) return true;
        return lhs * lhs <= disc;
    };
    long z = static_cast<long>(std::floor(psi_of_eps(to_double(eps))));
    while (!leq_psi(z)) --z;
    while (leq_psi(z + 1)) ++z;
    return z;
}

namespace {

DualCertificate<double> make_float_cert(SolutionConcept sc,
                                        std::vector<std::pair<std::string, double>> duals,
                                        double gamma, bool per_weight = false) {
    DualCertificate<double> cert;
    cert.sc = std::move(sc);
    cert.duals = std::move(duals);
    cert.gamma = gamma;
    cert.y_per_weight = per_weight;
    return cert;
}

DualCertificate<Rational> make_exact_cert(SolutionConcept sc,
                                          std::vector<std::pair<std::string, Rational>> duals,
                                          Rational gamma, bool per_weight = false) {
    DualCertificate<Rational> cert;
    cert.sc = std::move(sc);
    cert.duals = std::move(duals);
    cert.gamma = std::move(gamma);
    cert.y_per_weight = per_weight;
    return cert;
}

}  // namespace

AnyCertificate certificate_gallery(const std::string& id, const Rational& eps, int players) {
    const double epsd = to_double(eps);
    if (eps < 0) throw GameError("eps must be nonnegative");

    if (id == "poa-un") {
        // y = (2z+1)/(2z-eps), gamma = (1+eps)(z^2+3z+1)/(2z-eps), z = floor(psi).
        long z = floor_psi(eps);
        Rational den = Rational(2 * z) - eps;
        if (!(den > 0)) throw GameError("floor(psi) must satisfy 2z > eps");
        Rational y = Rational(2 * z + 1) / den;
        Rational gamma = (1 + eps) * Rational(z * z + 3 * z + 1) / den;
        return make_exact_cert(SolutionConcept::eps_poa_unweighted(eps), {{"y", y}},
                               std::move(gamma));
    }
    if (id == "poa-w") {
        double y = 1.0 + std::sqrt((1.0 + epsd) / (5.0 + epsd));
        double psi = psi_of_eps(epsd);
        return make_float_cert(SolutionConcept::eps_poa_weighted(eps), {{"y", y}}, psi * psi);
    }
    if (id == "pos-un") {
        if (eps > 1) throw GameError("eps-pos certificates require eps in [0,1]");
        const double s3 = std::sqrt(3.0);
        double y = (2.0 * epsd + s3 * (1.0 + epsd)) / (2.0 * (epsd + s3));
        double z = (1.0 - epsd) / (epsd + s3);
        double gamma = (1.0 + s3) / (epsd + s3);
        return make_float_cert(SolutionConcept::eps_pos(eps, 1, false), {{"y", y}, {"z", z}},
                               gamma);
    }
    if (id == "pos-w") {
        if (eps > 1) throw GameError("eps-pos certificates require eps in [0,1]");
        return make_exact_cert(SolutionConcept::eps_pos(eps, 1, true), {{"z", Rational(1)}},
                               Rational(2) / (1 + eps));
    }
    if (id == "apx-un") {
        const double s5 = std::sqrt(5.0);
        return make_float_cert(SolutionConcept::one_round_walk(1, false), {{"y", 1.0 + s5}},
                               2.0 + s5);
    }
    if (id == "apx-w") {
        const double s3 = std::sqrt(3.0);
        return make_float_cert(SolutionConcept::one_round_walk(1, true),
                               {{"y", 2.0 + 2.0 / s3}}, 4.0 + 2.0 * s3, /*per_weight=*/true);
    }
    if (id == "pos-d2") {
        return make_exact_cert(SolutionConcept::eps_pos(Rational(0), 2, false),
                               {{"y", parse_rational("0.318")}, {"z", parse_rational("0.453")}},
                               parse_rational("2.362"));
    }
    if (id == "pos-d3") {
        return make_exact_cert(SolutionConcept::eps_pos(Rational(0), 3, false),
                               {{"y", parse_rational("0.747")}, {"z", parse_rational("0.331")}},
                               parse_rational("3.322"));
    }
    if (id == "apx-d2") {
        return make_exact_cert(SolutionConcept::one_round_walk(2, false),
                               {{"y", parse_rational("5.2944")}}, parse_rational("37.5888"));
    }
    if (id == "apx-d3") {
        return make_exact_cert(SolutionConcept::one_round_walk(3, false),
                               {{"y", Rational(369, 34)}}, Rational(17929, 34));
    }
    if (id == "max-poa") {
        if (players < 2) throw GameError("max-poa certificate needs players >= 2");
        if (is_perfect_square(players)) {
            long r = static_cast<long>(isqrt_floor(players));
            Rational x = make_rational(1, r), z = make_rational(2, r);
            Rational zn(2 * r);
            Rational gamma = Rational(players - 1) * z + zn;
            return make_exact_cert(SolutionConcept::max_social_poa(players),
                                   {{"x", x},
                                    {"z", z},
                                    {"x_n", Rational(1)},
                                    {"y_n", Rational(-1)},
                                    {"z_n", zn}},
                                   std::move(gamma));
        }
        double r = std::sqrt(static_cast<double>(players));
        double x = 1.0 / r, z = 2.0 / r, zn = 2.0 * r;
        return make_float_cert(SolutionConcept::max_social_poa(players),
                               {{"x", x}, {"z", z}, {"x_n", 1.0}, {"y_n", -1.0}, {"z_n", zn}},
                               (players - 1) * z + zn);
    }
    if (id == "fair-pos") {
        if (players < 1) throw GameError("fair-pos certificate needs players >= 1");
        return make_exact_cert(SolutionConcept::fair_sharing_pos(players), {{"z", Rational(1)}},
                               harmonic(players));
    }
    throw GameError("unknown certificate id: " + id);
}

std::vector<std::string> certificate_gallery_ids() {
    return {"poa-un", "poa-w", "pos-un", "pos-w",  "apx-un",  "apx-w",
            "pos-d2", "pos-d3", "apx-d2", "apx-d3", "max-poa", "fair-pos"};
}

CertificateVerdict verify_dual_certificate(const AnyCertificate& cert, const VerifyOptions& opts) {
    return std::visit([&](const auto& c) { return verify_dual_certificate(c, opts); }, cert);
}

double gamma_of(const AnyCertificate& cert) {
    return std::visit([](const auto& c) { return to_double(c.gamma); }, cert);
}

const SolutionConcept& concept_of(const AnyCertificate& cert) {
    return std::visit([](const auto& c) -> const SolutionConcept& { return c.sc; }, cert);
}

}  // namespace congames
