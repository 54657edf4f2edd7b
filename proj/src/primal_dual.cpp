#include "congames/primal_dual.hpp"

#include <cmath>
#include <functional>

namespace congames {

namespace {

struct DualShape {
    std::vector<std::string> names;  // scalar duals being searched
    bool per_weight = false;
};

DualShape shape_for(const SolutionConcept& sc) {
    switch (sc.kind) {
        case ConceptKind::EpsPoaUnweighted:
        case ConceptKind::EpsPoaWeighted:
            return {{"y"}, false};
        case ConceptKind::OneRoundWalk:
            return {{"y"}, sc.weighted};
        case ConceptKind::EpsPosViaPotential:
            if (sc.weighted) return {{"z"}, false};
            return {{"y", "z"}, false};
        default:
            throw GameError("dual search supports uniform-multiplier concepts only");
    }
}

DualCertificate<double> assemble(const SolutionConcept& sc, const DualShape& shape,
                                 const std::vector<double>& values, double gamma) {
    DualCertificate<double> cert;
    cert.sc = sc;
    cert.y_per_weight = shape.per_weight;
    for (std::size_t i = 0; i < shape.names.size(); ++i)
        cert.duals.emplace_back(shape.names[i], values[i]);
    cert.gamma = gamma;
    return cert;
}

}  // namespace

DualSearchResult search_dual(const SolutionConcept& sc, const DualSearchBox& box,
                             long budget, const VerifyOptions& final_opts) {
    DualShape shape = shape_for(sc);
    const int dims = static_cast<int>(shape.names.size());

    VerifyOptions cheap = final_opts;
    cheap.sweep_bound = 48;  // sound at any bound; small keeps the oracle fast
    cheap.max_tight = 8;

    DualSearchResult result;

    auto feasible_at = [&](const std::vector<double>& values, double gamma,
                           const VerifyOptions& opts) {
        ++result.evaluations;
        for (double v : values)
            if (v < 0) return false;
        auto cert = assemble(sc, shape, values, gamma);
        for (const auto& family : dual_family(cert.sc, cert))
            if (verify_family(family, opts).status != VerifyStatus::Proven) return false;
        return true;
    };

    // Inner search: coarse multistart grid, then compass refinement.
    auto find_duals = [&](double gamma, std::vector<double>& warm) -> bool {
        std::vector<double> lo = {box.y_lo, box.z_lo}, hi = {box.y_hi, box.z_hi};
        auto try_point = [&](const std::vector<double>& v) { return feasible_at(v, gamma, cheap); };
        if (!warm.empty() && try_point(warm)) return true;
        const int grid = dims == 1 ? 33 : 9;
        std::vector<double> v(static_cast<std::size_t>(dims));
        std::vector<std::vector<double>> starts;
        for (int a = 0; a <= grid; ++a) {
            v[0] = lo[0] + (hi[0] - lo[0]) * a / grid;
            if (dims == 1) {
                starts.push_back(v);
            } else {
                for (int b = 0; b <= grid; ++b) {
                    v[1] = lo[1] + (hi[1] - lo[1]) * b / grid;
                    starts.push_back(v);
                }
            }
        }
        for (auto& start : starts) {
            if (result.evaluations > budget) {
                result.budget_exhausted = true;
                return false;
            }
            if (try_point(start)) {
                warm = start;
                return true;
            }
        }
        // Compass descent on infeasibility is not available without a scalar
        // violation; refine around the warm point instead when present.
        if (!warm.empty()) {
            double step = (hi[0] - lo[0]) / grid;
            std::vector<double> current = warm;
            for (int round = 0; round < 40 && step > 1e-9; ++round) {
                bool moved = false;
                for (int dim = 0; dim < dims && !moved; ++dim) {
                    for (double dir : {+1.0, -1.0}) {
                        auto cand = current;
                        cand[static_cast<std::size_t>(dim)] =
                            std::max(0.0, cand[static_cast<std::size_t>(dim)] + dir * step);
                        if (try_point(cand)) {
                            current = cand;
                            warm = cand;
                            return true;
                        }
                    }
                }
                step /= 2;
            }
        }
        return false;
    };

    // Find a feasible ceiling for gamma.
    std::vector<double> warm;
    double hi_gamma = 2.0;
    while (hi_gamma < 1e7 && !find_duals(hi_gamma, warm)) hi_gamma *= 2;
    if (hi_gamma >= 1e7) {
        result.budget_exhausted = true;
        result.best = assemble(sc, shape, std::vector<double>(static_cast<std::size_t>(dims), 0.0),
                               hi_gamma);
        return result;
    }
    double lo_gamma = 1.0;
    std::vector<double> best_duals = warm;
    while (hi_gamma - lo_gamma > 5e-7 && result.evaluations < budget) {
        double mid = (lo_gamma + hi_gamma) / 2;
        if (find_duals(mid, warm)) {
            hi_gamma = mid;
            best_duals = warm;
        } else {
            lo_gamma = mid;
        }
    }
    if (result.evaluations >= budget) result.budget_exhausted = true;

    // Certify the found point with the full verifier; nudge gamma upward if
    // the cheap bound was the binding part.
    double gamma = hi_gamma;
    for (int attempt = 0; attempt < 24; ++attempt) {
        auto cert = assemble(sc, shape, best_duals, gamma);
        if (verify_dual_certificate(cert, final_opts).status == VerifyStatus::Proven) {
            result.best = cert;
            result.gamma = gamma;
            result.proven = true;
            return result;
        }
        gamma += std::max(1e-6, gamma * 1e-5);
        std::vector<double> retry = best_duals;
        if (find_duals(gamma, retry)) best_duals = retry;
    }
    result.best = assemble(sc, shape, best_duals, gamma);
    result.gamma = gamma;
    result.proven = false;
    return result;
}

}  // namespace congames
