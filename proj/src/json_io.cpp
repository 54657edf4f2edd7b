#include "congames/json_io.hpp"

#include <cmath>
#include <sstream>

namespace congames {

namespace {

bool value_is_surd(const Json& v) {
    return v.is_object() && v.contains("a") && v.contains("b") && v.contains("root");
}

bool any_surd(const Json& j) {
    if (value_is_surd(j)) return true;
    if (j.is_array() || j.is_object())
        for (const auto& item : j)
            if (any_surd(item)) return true;
    return false;
}

double surd_to_double(const Json& v) {
    double a = v.at("a").get<double>();
    double b = v.at("b").get<double>();
    double root = v.at("root").get<double>();
    if (root < 0) throw ParseError("surd root must be nonnegative");
    return a + b * std::sqrt(root);
}

Rational value_to_rational(const Json& v, const std::string& where) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
        if (v.is_number()) {
            std::ostringstream os;
            os.precision(17);
            os << v.get<double>();
            return parse_rational(os.str());
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a number or \"p/q\" string");
}

double value_to_double(const Json& v, const std::string& where) {
    if (value_is_surd(v)) return surd_to_double(v);
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    if (v.is_number()) return v.get<double>();
    throw ParseError(where + ": expected a number, \"p/q\" string, or surd object");
}

template <class Num>
Game<Num> parse_game_impl(const Json& j, Num (*value)(const Json&, const std::string&)) {
    Game<Num> g;
    if (!j.contains("weights") || !j.contains("strategies") || !j.contains("latencies"))
        throw ParseError("game object needs weights, strategies, latencies");
    int index = 0;
    for (const auto& w : j.at("weights"))
        g.weights.push_back(value(w, "weights[" + std::to_string(index++) + "]"));
    for (const auto& player : j.at("strategies")) {
        std::vector<std::vector<int>> sets;
        for (const auto& strat : player) {
            std::vector<int> resources;
            for (const auto& e : strat) {
                if (!e.is_number_integer()) throw ParseError("strategies: resource indices must be integers");
                resources.push_back(e.get<int>());
            }
            sets.push_back(std::move(resources));
        }
        g.strategies.push_back(std::move(sets));
    }
    index = 0;
    for (const auto& spec : j.at("latencies")) {
        if (!spec.is_object() || !spec.contains("coeffs"))
            throw ParseError("latencies[" + std::to_string(index) + "]: expected {\"coeffs\": [...]}");
        std::vector<Num> coeffs;
        int ci = 0;
        for (const auto& c : spec.at("coeffs"))
            coeffs.push_back(value(c, "latencies[" + std::to_string(index) + "].coeffs[" +
                                          std::to_string(ci++) + "]"));
        g.latencies.push_back(LatencySpec<Num>(std::move(coeffs)));
        ++index;
    }
    if (j.contains("sharing")) {
        std::string mode = j.at("sharing").get<std::string>();
        if (mode == "fair")
            g.sharing = Sharing::FairCostSharing;
        else if (mode == "congestion")
            g.sharing = Sharing::Congestion;
        else
            throw ParseError("sharing: expected \"congestion\" or \"fair\"");
    }
    try {
        g.validate();
    } catch (const GameError& e) {
        throw ParseError(std::string("invalid game: ") + e.what());
    }
    return g;
}

}  // namespace

AnyGame parse_game(const Json& j) {
    if (any_surd(j)) return parse_game_impl<double>(j, &value_to_double);
    return parse_game_impl<Rational>(j, &value_to_rational);
}

AnyGame parse_game_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    return parse_game(j);
}

namespace {

Json rational_to_json(const Rational& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p())
        return Json(static_cast<long long>(r.get_num().get_si()));
    return Json(to_string(r));
}

template <class Num>
Json value_to_json(const Num& v) {
    if constexpr (NumTraits<Num>::is_exact)
        return rational_to_json(v);
    else
        return Json(v);
}

template <class Num>
Json game_to_json_impl(const Game<Num>& g) {
    Json j;
    j["weights"] = Json::array();
    for (const auto& w : g.weights) j["weights"].push_back(value_to_json(w));
    j["strategies"] = g.strategies;
    j["latencies"] = Json::array();
    for (const auto& spec : g.latencies) {
        Json coeffs = Json::array();
        for (const auto& c : spec.coeffs) coeffs.push_back(value_to_json(c));
        j["latencies"].push_back(Json{{"coeffs", coeffs}});
    }
    j["sharing"] = g.sharing == Sharing::FairCostSharing ? "fair" : "congestion";
    return j;
}

}  // namespace

Json game_to_json(const AnyGame& game) {
    return std::visit([](const auto& g) { return game_to_json_impl(g); }, game);
}

Json profile_to_json(const Profile& profile) { return Json(profile.choices); }

template <class Num>
Json metrics_to_json(const MetricsReport<Num>& report) {
    Json j;
    j["social"] = report.social == SocialKind::Sum ? "sum" : "max";
    j["optimum"] = profile_to_json(report.optimum);
    j["optimum_value"] = to_double(report.optimum_value);
    j["num_equilibria"] = report.equilibria.size();
    if (report.empty_equilibrium_set) {
        j["status"] = "empty equilibrium set";
        return j;
    }
    j["status"] = "ok";
    if (report.worst_equilibrium) j["worst_equilibrium"] = profile_to_json(*report.worst_equilibrium);
    if (report.best_equilibrium) j["best_equilibrium"] = profile_to_json(*report.best_equilibrium);
    if (report.poa) j["poa"] = *report.poa;
    if (report.pos) j["pos"] = *report.pos;
    if (report.poa_exact) j["poa_exact"] = to_string(*report.poa_exact);
    if (report.pos_exact) j["pos_exact"] = to_string(*report.pos_exact);
    if (report.apx) {
        j["apx"] = *report.apx;
        if (report.apx_exact) j["apx_exact"] = to_string(*report.apx_exact);
        j["apx_ordering"] = report.apx_ordering;
        j["apx_profile"] = profile_to_json(report.apx_profile);
    }
    return j;
}

template <class Num>
std::string metrics_to_csv(const MetricsReport<Num>& report) {
    std::ostringstream os;
    os.precision(9);
    os << std::fixed;
    os << (report.social == SocialKind::Sum ? "sum" : "max") << ","
       << to_double(report.optimum_value) << "," << report.equilibria.size() << ",";
    if (report.empty_equilibrium_set) {
        os << ",,";
    } else {
        os << (report.poa ? std::to_string(*report.poa) : "") << ","
           << (report.pos ? std::to_string(*report.pos) : "") << ",";
    }
    os << (report.apx ? std::to_string(*report.apx) : "");
    return os.str();
}

template Json metrics_to_json<Rational>(const MetricsReport<Rational>&);
template Json metrics_to_json<double>(const MetricsReport<double>&);
template std::string metrics_to_csv<Rational>(const MetricsReport<Rational>&);
template std::string metrics_to_csv<double>(const MetricsReport<double>&);

Json certificate_to_json(const AnyCertificate& cert) {
    return std::visit(
        [](const auto& c) {
            Json j;
            const auto& sc = c.sc;
            j["concept"] = concept_name(sc);
            Json params;
            params["eps"] = to_double(sc.eps);
            params["d"] = sc.degree;
            if (sc.players > 0) params["n"] = sc.players;
            j["params"] = params;
            Json duals;
            for (const auto& [name, value] : c.duals) duals[name] = to_double(value);
            j["duals"] = duals;
            if (c.y_per_weight) j["y_per_weight"] = true;
            j["gamma"] = to_double(c.gamma);
            return j;
        },
        cert);
}

namespace {

const char* status_name(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Proven: return "proven";
        case VerifyStatus::Refuted: return "refuted";
        case VerifyStatus::Unproven: return "unproven";
    }
    return "unproven";
}

}  // namespace

Json verdict_to_json(const CertificateVerdict& verdict) {
    Json j;
    j["status"] = status_name(verdict.status);
    j["gamma"] = verdict.gamma;
    Json tight = Json::array();
    for (const auto& p : verdict.tight_pairs()) tight.push_back(Json::array({p.k, p.o}));
    j["tight"] = tight;
    Json rays = Json::array();
    for (double s : verdict.tight_rays()) rays.push_back(s);
    j["tight_rays"] = rays;
    auto witness = verdict.witness();
    j["witness"] = witness ? Json::array({witness->first, witness->second}) : Json();
    Json families = Json::array();
    for (const auto& [label, fv] : verdict.families) {
        Json f;
        f["label"] = label;
        f["status"] = status_name(fv.status);
        if (!fv.detail.empty()) f["detail"] = fv.detail;
        families.push_back(f);
    }
    j["families"] = families;
    return j;
}

template <class Num>
Json walk_trace_to_json(const WalkResult<Num>& walk, const std::vector<int>& ordering) {
    Json j;
    j["ordering"] = ordering;
    Json steps = Json::array();
    for (const auto& step : walk.trace) {
        Json s;
        s["player"] = step.player;
        s["strategy"] = step.strategy;
        s["cost"] = to_double(step.cost_at_choice);
        steps.push_back(s);
    }
    j["steps"] = steps;
    j["profile"] = profile_to_json(walk.profile);
    return j;
}

template Json walk_trace_to_json<Rational>(const WalkResult<Rational>&, const std::vector<int>&);
template Json walk_trace_to_json<double>(const WalkResult<double>&, const std::vector<int>&);

}  // namespace congames
