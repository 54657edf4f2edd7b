#ifndef CONGAMES_CERTIFICATES_HPP
#define CONGAMES_CERTIFICATES_HPP

#include <map>
#include <type_traits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "congames/dynamics.hpp"
#include "congames/game.hpp"
#include "congames/lp.hpp"
#include "congames/verify.hpp"

namespace congames {

enum class ConceptKind {
    EpsPoaUnweighted,
    EpsPoaWeighted,
    EpsPosViaPotential,
    OneRoundWalk,
    MaxSocialPoa,
    FairSharingPos,
};

// Solution concept plus its parameters. eps is kept exact; float certificates
// convert on use.
struct SolutionConcept {
    ConceptKind kind = ConceptKind::EpsPoaUnweighted;
    Rational eps{0};
    int degree = 1;            // latency degree d
    bool weighted = false;     // OneRoundWalk / EpsPosViaPotential variants
    PotentialKind potential;   // EpsPosViaPotential only
    int players = 0;           // MaxSocialPoa / FairSharingPos

    static SolutionConcept eps_poa_unweighted(Rational eps, int d = 1) {
        SolutionConcept c;
        c.kind = ConceptKind::EpsPoaUnweighted;
        c.eps = std::move(eps);
        c.degree = d;
        return c;
    }
    static SolutionConcept eps_poa_weighted(Rational eps, int d = 1) {
        SolutionConcept c;
        c.kind = ConceptKind::EpsPoaWeighted;
        c.eps = std::move(eps);
        c.degree = d;
        c.weighted = true;
        return c;
    }
    static SolutionConcept eps_pos(Rational eps, int d, bool weighted) {
        SolutionConcept c;
        c.kind = ConceptKind::EpsPosViaPotential;
        c.eps = eps;
        c.degree = d;
        c.weighted = weighted;
        if (d == 2)
            c.potential = PotentialKind::quadratic();
        else if (d == 3)
            c.potential = PotentialKind::cubic();
        else
            c.potential = weighted ? PotentialKind::eps_affine_weighted(eps)
                                   : PotentialKind::eps_affine_unweighted(eps);
        return c;
    }
    static SolutionConcept one_round_walk(int d, bool weighted) {
        SolutionConcept c;
        c.kind = ConceptKind::OneRoundWalk;
        c.degree = d;
        c.weighted = weighted;
        return c;
    }
    static SolutionConcept max_social_poa(int n) {
        SolutionConcept c;
        c.kind = ConceptKind::MaxSocialPoa;
        c.players = n;
        return c;
    }
    static SolutionConcept fair_sharing_pos(int n) {
        SolutionConcept c;
        c.kind = ConceptKind::FairSharingPos;
        c.players = n;
        return c;
    }
};

std::string concept_name(const SolutionConcept& sc);

// Dual variable assignment certifying a bound gamma for a concept. Duals are
// named scalars: "y"/"z" for the uniform concepts, "x","z","x_n","y_n","z_n"
// for the max-social certificate. `y_per_weight` marks the weighted walk
// convention y_i = y * w_i.
template <class Num>
struct DualCertificate {
    SolutionConcept sc;
    std::vector<std::pair<std::string, Num>> duals;
    bool y_per_weight = false;
    Num gamma{};

    Num dual(const std::string& name) const {
        for (const auto& [k, v] : duals)
            if (k == name) return v;
        throw GameError("certificate has no dual named " + name);
    }
    bool has_dual(const std::string& name) const {
        for (const auto& [k, v] : duals)
            if (k == name) return true;
        return false;
    }
};

using AnyCertificate = std::variant<DualCertificate<Rational>, DualCertificate<double>>;

// ---------------------------------------------------------------------------
// dual_family: per-resource polynomial inequality families implied by a
// certificate, exactly as each proof's displayed reduction states them.
// ---------------------------------------------------------------------------

namespace famdetail {

// sum_{j=1..K} j^d as a polynomial in K (Faulhaber, d <= 3).
template <class Num>
void add_power_sum(Poly2<Num>& poly, int d, const std::type_identity_t<Num>& scale) {
    switch (d) {
        case 1:  // K(K+1)/2
            poly.add_term(2, 0, scale / Num(2));
            poly.add_term(1, 0, scale / Num(2));
            break;
        case 2:  // (2K^3+3K^2+K)/6
            poly.add_term(3, 0, scale * Num(2) / Num(6));
            poly.add_term(2, 0, scale * Num(3) / Num(6));
            poly.add_term(1, 0, scale / Num(6));
            break;
        case 3:  // (K^4+2K^3+K^2)/4
            poly.add_term(4, 0, scale / Num(4));
            poly.add_term(3, 0, scale * Num(2) / Num(4));
            poly.add_term(2, 0, scale / Num(4));
            break;
        default:
            throw GameError("power sums implemented for d in {1,2,3}");
    }
}

// O * (K+1)^d with the given scale.
template <class Num>
void add_o_times_kp1_pow(Poly2<Num>& poly, int d, const std::type_identity_t<Num>& scale) {
    // binomial coefficients for (K+1)^d
    static const int binom[4][5] = {{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}};
    for (int i = 0; i <= d; ++i)
        poly.add_term(i, 1, scale * Num(binom[d][i]));
}

}  // namespace famdetail

template <class Num>
std::vector<ConstraintFamily<Num>> dual_family(const SolutionConcept& sc,
                                               const DualCertificate<Num>& cert) {
    const Num one = NumTraits<Num>::one();
    const Num eps = num_cast<Num>(sc.eps);
    const Num one_plus = one + eps;
    std::vector<ConstraintFamily<Num>> families;

    switch (sc.kind) {
        case ConceptKind::EpsPoaUnweighted: {
            // Raw row: (y-1)K^2 - y(1+eps)(KO + O) + gamma O^2 >= 0 over the
            // nonnegative integers; normalized by (y-1) when positive so the
            // coefficients match the classical integer form.
            Num y = cert.dual("y");
            ConstraintFamily<Num> fam;
            fam.label = "eps-poa unweighted";
            Num lead = y - one;
            bool normalize;
            if constexpr (NumTraits<Num>::is_exact)
                normalize = lead > 0;
            else
                normalize = lead > 1e-12;
            Num scale = normalize ? lead : one;
            fam.poly.add_term(2, 0, lead / scale);
            fam.poly.add_term(1, 1, -y * one_plus / scale);
            fam.poly.add_term(0, 1, -y * one_plus / scale);
            fam.poly.add_term(0, 2, cert.gamma / scale);
            families.push_back(std::move(fam));
            break;
        }
        case ConceptKind::EpsPoaWeighted: {
            // (y-1)K^2 - y(1+eps)(KO + O) + gamma O^2 >= 0 over real
            // congestions; nonzero values are >= 1 once weights are scaled so
            // the least weight is 1.
            Num y = cert.dual("y");
            ConstraintFamily<Num> fam;
            fam.label = "eps-poa weighted";
            fam.domain = FamilyDomain::NonNegReals;
            fam.o_unit_gap = true;
            fam.assumption = "weights scaled so the minimum weight is 1";
            fam.poly.add_term(2, 0, y - one);
            fam.poly.add_term(1, 1, -y * one_plus);
            fam.poly.add_term(0, 1, -y * one_plus);
            fam.poly.add_term(0, 2, cert.gamma);
            families.push_back(std::move(fam));
            break;
        }
        case ConceptKind::EpsPosViaPotential: {
            if (!sc.weighted && sc.degree == 1) {
                // y (K^2 + cK - O^2 - cO) + z (K^2 - eps/(1+eps) K - KO - O/(1+eps))
                //   + gamma O^2 - K^2 >= 0, c = (1-eps)/(1+eps).
                Num y = cert.dual("y"), z = cert.dual("z");
                Num c = (one - eps) / one_plus;
                ConstraintFamily<Num> fam;
                fam.label = "eps-pos unweighted affine";
                fam.poly.add_term(2, 0, y + z - one);
                fam.poly.add_term(1, 0, y * c - z * eps / one_plus);
                fam.poly.add_term(0, 2, cert.gamma - y);
                fam.poly.add_term(0, 1, -y * c - z / one_plus);
                fam.poly.add_term(1, 1, -z);
                families.push_back(std::move(fam));
            } else if (sc.weighted) {
                // Reduced weighted form: (z-1)K^2 + zcK + (gamma - z(1+c))O^2
                // over real congestions, using sum w_i^2 >= K_e (least weight
                // scaled to 1) on the walk side and <= O_e^2 on the optimum.
                Num z = cert.dual("z");
                Num c = (one - eps) / one_plus;
                ConstraintFamily<Num> fam;
                fam.label = "eps-pos weighted affine";
                fam.domain = FamilyDomain::NonNegReals;
                fam.assumption =
                    "per-resource weight square sums bounded by K_e from below and O_e^2 from "
                    "above (minimum weight scaled to 1)";
                fam.poly.add_term(2, 0, z - one);
                fam.poly.add_term(1, 0, z * c);
                fam.poly.add_term(0, 2, cert.gamma - z * (one + c));
                families.push_back(std::move(fam));
            } else {
                // d in {2,3}: y (Phi-compare row) + z (sum-deviation row)
                //   + gamma O^{d+1} - K^{d+1} >= 0 over nonnegative integers.
                Num y = cert.dual("y"), z = cert.dual("z");
                ConstraintFamily<Num> fam;
                fam.label = sc.degree == 2 ? "pos quadratic" : "pos cubic";
                if (sc.degree == 2) {
                    // y(2K^3+3K^2+K - 2O^3-3O^2-O) + z(K^3 - O(K+1)^2) + gO^3 - K^3
                    fam.poly.add_term(3, 0, y * Num(2) + z - one);
                    fam.poly.add_term(2, 0, y * Num(3));
                    fam.poly.add_term(1, 0, y);
                    fam.poly.add_term(0, 3, cert.gamma - y * Num(2));
                    fam.poly.add_term(0, 2, -y * Num(3));
                    fam.poly.add_term(0, 1, -y);
                    famdetail::add_o_times_kp1_pow(fam.poly, 2, -z);
                } else {
                    // y(K^4+2K^3+K^2 - O^4-2O^3-O^2) + z(K^4 - O(K+1)^3) + gO^4 - K^4
                    fam.poly.add_term(4, 0, y + z - one);
                    fam.poly.add_term(3, 0, y * Num(2));
                    fam.poly.add_term(2, 0, y);
                    fam.poly.add_term(0, 4, cert.gamma - y);
                    fam.poly.add_term(0, 3, -y * Num(2));
                    fam.poly.add_term(0, 2, -y);
                    famdetail::add_o_times_kp1_pow(fam.poly, 3, -z);
                }
                families.push_back(std::move(fam));
            }
            break;
        }
        case ConceptKind::OneRoundWalk: {
            Num y = cert.dual("y");
            if (!sc.weighted) {
                // y (sum_{j<=K} j^d - O (K+1)^d) + gamma O^{d+1} - K^{d+1} >= 0,
                // worst case: optimum users of a resource move after all its
                // walk users.
                ConstraintFamily<Num> fam;
                fam.label = "one-round walk unweighted d=" + std::to_string(sc.degree);
                fam.assumption = "worst-case ordering: optimum players enter last";
                famdetail::add_power_sum(fam.poly, sc.degree, y);
                famdetail::add_o_times_kp1_pow(fam.poly, sc.degree, -y);
                fam.poly.add_term(0, sc.degree + 1, cert.gamma);
                fam.poly.add_term(sc.degree + 1, 0, -one);
                families.push_back(std::move(fam));
            } else {
                // Reduced weighted form: (y/2 - 1)K^2 - yKO + (gamma - y)O^2
                // over real congestions, via sum_{i<=j} w_i w_j >= K^2/2 and
                // sum_{i in O} w_i(K + w_i) <= KO + O^2.
                if (sc.degree != 1)
                    throw GameError("weighted walk certificates cover affine latencies only");
                ConstraintFamily<Num> fam;
                fam.label = "one-round walk weighted";
                fam.domain = FamilyDomain::NonNegReals;
                fam.assumption =
                    "worst-case ordering; pairwise weight products bounded below by K^2/2, "
                    "optimum-side squares above by O^2";
                fam.poly.add_term(2, 0, y / Num(2) - one);
                fam.poly.add_term(1, 1, -y);
                fam.poly.add_term(0, 2, cert.gamma - y);
                families.push_back(std::move(fam));
            }
            break;
        }
        case ConceptKind::MaxSocialPoa: {
            // Four cases by whether the max-cost player uses the resource in
            // the walk profile and/or the optimum; each scaled by sqrt(n).
            Num x = cert.dual("x"), z = cert.dual("z");
            Num xn = cert.dual("x_n"), yn = cert.dual("y_n"), zn = cert.dual("z_n");
            Num root_n;
            if constexpr (NumTraits<Num>::is_exact) {
                long long r = isqrt_floor(sc.players);
                if (r * r != sc.players)
                    throw GameError("exact max-social certificate needs a square player count");
                root_n = Num(static_cast<long>(r));
            } else {
                root_n = std::sqrt(static_cast<double>(sc.players));
            }
            auto scaled = [&](Poly2<Num> p) { return p * root_n; };

            ConstraintFamily<Num> c1;
            c1.label = "max-social: e unused by player n in K and O";
            c1.poly.add_term(2, 0, x);
            famdetail::add_o_times_kp1_pow(c1.poly, 1, -x);
            c1.poly.add_term(0, 2, z);
            c1.poly = scaled(c1.poly);
            families.push_back(std::move(c1));

            ConstraintFamily<Num> c2;
            c2.label = "max-social: e in s_n^O only";
            c2.o_min = 1;
            c2.poly.add_term(2, 0, x);
            // -(O-1) x (K+1) = -x(KO + O - K - 1)
            c2.poly.add_term(1, 1, -x);
            c2.poly.add_term(0, 1, -x);
            c2.poly.add_term(1, 0, x);
            c2.poly.add_term(0, 0, x);
            // +(O-1) z O
            c2.poly.add_term(0, 2, z);
            c2.poly.add_term(0, 1, -z);
            // -x_n (K+1) + z_n O
            c2.poly.add_term(1, 0, -xn);
            c2.poly.add_term(0, 0, -xn);
            c2.poly.add_term(0, 1, zn);
            c2.poly = scaled(c2.poly);
            families.push_back(std::move(c2));

            ConstraintFamily<Num> c3;
            c3.label = "max-social: e in s_n^K only";
            c3.k_min = 1;
            // x K(K-1) + (x_n + y_n) K
            c3.poly.add_term(2, 0, x);
            c3.poly.add_term(1, 0, -x + xn + yn);
            famdetail::add_o_times_kp1_pow(c3.poly, 1, -x);
            c3.poly.add_term(0, 2, z);
            c3.poly = scaled(c3.poly);
            families.push_back(std::move(c3));

            ConstraintFamily<Num> c4;
            c4.label = "max-social: e in s_n^K and s_n^O";
            c4.k_min = 1;
            c4.o_min = 1;
            c4.poly.add_term(2, 0, x);
            c4.poly.add_term(1, 0, -x + xn + yn);
            c4.poly.add_term(1, 1, -x);
            c4.poly.add_term(0, 1, -x);
            c4.poly.add_term(1, 0, x);
            c4.poly.add_term(0, 0, x);
            c4.poly.add_term(0, 2, z);
            c4.poly.add_term(0, 1, -z);
            c4.poly.add_term(1, 0, -xn);
            c4.poly.add_term(0, 0, -xn);
            c4.poly.add_term(0, 1, zn);
            c4.poly = scaled(c4.poly);
            families.push_back(std::move(c4));
            break;
        }
        case ConceptKind::FairSharingPos: {
            // z (H_K - H_O) + gamma [O>=1] - [K>=1] >= 0 on the box
            // 0 <= K, O <= n.
            Num z = cert.dual("z");
            ConstraintFamily<Num> fam;
            fam.label = "fair-sharing pos";
            fam.has_harmonic = true;
            fam.hk = z;
            fam.ho = -z;
            fam.pk = -one;
            fam.po = cert.gamma;
            fam.k_max = sc.players;
            fam.o_max = sc.players;
            families.push_back(std::move(fam));
            break;
        }
    }
    return families;
}

// ---------------------------------------------------------------------------
// Certificate verification.
// ---------------------------------------------------------------------------

struct CertificateVerdict {
    VerifyStatus status = VerifyStatus::Proven;
    std::vector<std::pair<std::string, FamilyVerdict>> families;
    double gamma = 0;

    // union over families
    std::vector<TightPair> tight_pairs() const {
        std::vector<TightPair> all;
        for (const auto& [label, fv] : families)
            all.insert(all.end(), fv.tight.begin(), fv.tight.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end(),
                              [](const TightPair& a, const TightPair& b) {
                                  return a.k == b.k && a.o == b.o;
                              }),
                  all.end());
        return all;
    }
    std::vector<double> tight_rays() const {
        std::vector<double> all;
        for (const auto& [label, fv] : families)
            all.insert(all.end(), fv.tight_rays.begin(), fv.tight_rays.end());
        std::sort(all.begin(), all.end());
        return all;
    }
    std::optional<std::pair<double, double>> witness() const {
        for (const auto& [label, fv] : families)
            if (fv.witness) return fv.witness;
        return std::nullopt;
    }
};

template <class Num>
void validate_certificate_signs(const DualCertificate<Num>& cert) {
    for (const auto& [name, value] : cert.duals) {
        if (name == "y_n") {
            if (value < Num(-1)) throw GameError("dual y_n below -1");
        } else if (value < NumTraits<Num>::zero()) {
            throw GameError("dual " + name + " violates nonnegativity");
        }
    }
}

template <class Num>
CertificateVerdict verify_dual_certificate(const DualCertificate<Num>& cert,
                                           const VerifyOptions& opts = VerifyOptions{}) {
    validate_certificate_signs(cert);
    CertificateVerdict verdict;
    verdict.gamma = to_double(cert.gamma);
    for (auto& family : dual_family(cert.sc, cert)) {
        FamilyVerdict fv = verify_family(family, opts);
        if (fv.status == VerifyStatus::Refuted) verdict.status = VerifyStatus::Refuted;
        else if (fv.status == VerifyStatus::Unproven && verdict.status == VerifyStatus::Proven)
            verdict.status = VerifyStatus::Unproven;
        verdict.families.emplace_back(family.label, std::move(fv));
    }
    return verdict;
}

CertificateVerdict verify_dual_certificate(const AnyCertificate& cert,
                                           const VerifyOptions& opts = VerifyOptions{});

// ---------------------------------------------------------------------------
// The certificate gallery: one entry per bound the engine certifies.
// ---------------------------------------------------------------------------

// ids: poa-un, poa-w, pos-un, pos-w, apx-un, apx-w, pos-d2, pos-d3, apx-d2,
// apx-d3, max-poa, fair-pos
AnyCertificate certificate_gallery(const std::string& id, const Rational& eps = Rational(0),
                                   int players = 0);
std::vector<std::string> certificate_gallery_ids();

// psi(eps) = (1 + eps + sqrt(eps^2 + 6 eps + 5)) / 2 and z = floor(psi).
double psi_of_eps(double eps);
long floor_psi(const Rational& eps);

double gamma_of(const AnyCertificate& cert);
const SolutionConcept& concept_of(const AnyCertificate& cert);

}  // namespace congames

#endif  // CONGAMES_CERTIFICATES_HPP
