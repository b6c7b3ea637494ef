#ifndef DYCKM_JSON_IO_HPP
#define DYCKM_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include "dyckm/fn.hpp"
#include "dyckm/measure.hpp"
#include "dyckm/path.hpp"

namespace dyckm {

// JSON shapes (weights and values accept "p/q", decimal strings, or numbers):
//
//   measure:  {"type":"bernoulli","ambient":"sigma_alpha","weights":{"A1":"1/4",...}}
//             {"type":"markov","ambient":...,"kernel":{"A1":{"A1":"1/2",...},...}}
//             {"type":"co","ambient":...,"cycle":"A1 B1"}
//             {"type":"pushforward","gamma":"alpha","inner":{...}}
//   function: {"ambient":...,"radius":1,"entries":[{"word":"A1 A1 B1","value":1}],"default":0}
//   path:     endpoints, gamma, config, and the stored orbit blocks
//
// params (M, N) travel outside these objects and are supplied by the caller.

nlohmann::json measure_to_json(const MeasureSpec& mu);
MeasureSpec measure_from_json(const AlphabetParams& p, const nlohmann::json& j);

nlohmann::json fn_to_json(const LocallyConstantFn& f);
LocallyConstantFn fn_from_json(const AlphabetParams& p, const nlohmann::json& j);

nlohmann::json path_to_json(const PathSpec& path);
PathSpec path_from_json(const AlphabetParams& p, const nlohmann::json& j);

nlohmann::json prob_to_json(const ProbValue& v, int precision);
nlohmann::json weakstar_to_json(const WeakStarResult& d, int precision);

}  // namespace dyckm

#endif
