#ifndef CONGAMES_JSON_IO_HPP
#define CONGAMES_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "congames/certificates.hpp"
#include "congames/dynamics.hpp"
#include "congames/exact_metrics.hpp"
#include "congames/game.hpp"

namespace congames {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Game format:
//   {"weights": [1, "3/2", {"a": 0.5, "b": 0.5, "root": 5}],
//    "strategies": [[[0,1],[2]], ...],
//    "latencies": [{"coeffs": [0, 5]}, ...],
//    "sharing": "congestion" | "fair"}
// Values are numbers or "p/q" strings (exact mode); any surd object
// {a, b, root} meaning a + b*sqrt(root) switches the game to float mode.
AnyGame parse_game(const Json& j);
AnyGame parse_game_text(const std::string& text);
Json game_to_json(const AnyGame& game);

template <class Num>
Json metrics_to_json(const MetricsReport<Num>& report);
template <class Num>
std::string metrics_to_csv(const MetricsReport<Num>& report);

Json certificate_to_json(const AnyCertificate& cert);
Json verdict_to_json(const CertificateVerdict& verdict);

template <class Num>
Json walk_trace_to_json(const WalkResult<Num>& walk, const std::vector<int>& ordering);

Json profile_to_json(const Profile& profile);

}  // namespace congames

#endif  // CONGAMES_JSON_IO_HPP
