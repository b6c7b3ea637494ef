#include "dyckm/json_io.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dyckm {

namespace {

using nlohmann::json;

Rat rat_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
  if (j.is_number_float()) return Rat(j.get<double>());  // exact binary value
  throw std::invalid_argument("expected a rational (string or number), got " + j.dump());
}

Symbol symbol_from_token(const AlphabetParams& p, Ambient amb, const std::string& tok) {
  Word w = parse_word(p, amb, tok);
  if (w.size() != 1) throw std::invalid_argument("expected one symbol token, got '" + tok + "'");
  return w[0];
}

json blocks_to_json(const std::vector<PeriodicPoint>& blocks) {
  json arr = json::array();
  for (const PeriodicPoint& x : blocks) arr.push_back(word_to_string(x.block()));
  return arr;
}

std::vector<PeriodicPoint> blocks_from_json(const AlphabetParams& p, Ambient amb,
                                            const json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("expected an array of orbit blocks");
  std::vector<PeriodicPoint> out;
  out.reserve(arr.size());
  for (const json& j : arr)
    out.emplace_back(p, amb, parse_word(p, amb, j.get<std::string>()));
  return out;
}

json exactness_fields(bool is_exact, const Rat& exact, double value, double error,
                      int precision) {
  json j;
  j["is_exact"] = is_exact;
  if (is_exact) {
    j["exact"] = rational_to_string(exact);
    j["decimal"] = rational_to_decimal(exact, precision);
  } else {
    j["exact"] = nullptr;
  }
  j["value"] = value;
  j["error"] = error;
  return j;
}

}  // namespace

json measure_to_json(const MeasureSpec& mu) {
  const AlphabetParams& p = mu.params();
  json j;
  if (mu.is_bernoulli()) {
    const BernoulliSpec& b = mu.as_bernoulli();
    j["type"] = "bernoulli";
    j["ambient"] = ambient_name(b.ambient);
    json w = json::object();
    const auto alphabet = ambient_alphabet(p, b.ambient);
    for (size_t i = 0; i < alphabet.size(); ++i)
      w[symbol_token(alphabet[i])] = rational_to_string(b.weights[i]);
    j["weights"] = std::move(w);
  } else if (mu.is_markov()) {
    const MarkovSpec& m = mu.as_markov();
    j["type"] = "markov";
    j["ambient"] = ambient_name(m.ambient);
    json k = json::object();
    const auto alphabet = ambient_alphabet(p, m.ambient);
    for (size_t a = 0; a < alphabet.size(); ++a) {
      json row = json::object();
      for (size_t b = 0; b < alphabet.size(); ++b)
        row[symbol_token(alphabet[b])] = rational_to_string(m.kernel[a][b]);
      k[symbol_token(alphabet[a])] = std::move(row);
    }
    j["kernel"] = std::move(k);
  } else if (mu.is_co()) {
    const COSpec& c = mu.as_co();
    j["type"] = "co";
    j["ambient"] = ambient_name(c.point.ambient());
    j["cycle"] = word_to_string(c.point.block());
  } else {
    const PushforwardSpec& f = mu.as_pushforward();
    j["type"] = "pushforward";
    j["gamma"] = gamma_name(f.gamma);
    j["inner"] = measure_to_json(*f.inner);
  }
  return j;
}

MeasureSpec measure_from_json(const AlphabetParams& p, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("measure must be a JSON object");
  const std::string type = j.at("type").get<std::string>();
  if (type == "bernoulli") {
    Ambient amb = parse_ambient(j.at("ambient").get<std::string>());
    std::vector<Rat> weights(ambient_size(p, amb), Rat(0));
    for (const auto& [tok, val] : j.at("weights").items())
      weights[symbol_rank(p, amb, symbol_from_token(p, amb, tok))] = rat_from_json(val);
    return MeasureSpec::bernoulli(p, amb, std::move(weights));
  }
  if (type == "markov") {
    Ambient amb = parse_ambient(j.at("ambient").get<std::string>());
    const int n = ambient_size(p, amb);
    std::vector<std::vector<Rat>> kernel(n, std::vector<Rat>(n, Rat(0)));
    for (const auto& [from, row] : j.at("kernel").items()) {
      int a = symbol_rank(p, amb, symbol_from_token(p, amb, from));
      for (const auto& [to, val] : row.items())
        kernel[a][symbol_rank(p, amb, symbol_from_token(p, amb, to))] = rat_from_json(val);
    }
    return MeasureSpec::markov(p, amb, std::move(kernel));
  }
  if (type == "co") {
    Ambient amb = parse_ambient(j.at("ambient").get<std::string>());
    Word block = parse_word(p, amb, j.at("cycle").get<std::string>());
    return MeasureSpec::co(PeriodicPoint(p, amb, block));
  }
  if (type == "pushforward") {
    Gamma gamma = parse_gamma(j.at("gamma").get<std::string>());
    return MeasureSpec::pushforward(gamma, measure_from_json(p, j.at("inner")));
  }
  throw std::invalid_argument("unknown measure type '" + type + "'");
}

json fn_to_json(const LocallyConstantFn& f) {
  json j;
  j["ambient"] = ambient_name(f.ambient());
  j["radius"] = f.radius();
  json entries = json::array();
  for (const auto& [word, value] : f.table())
    entries.push_back(json{{"word", word}, {"value", rational_to_string(value)}});
  j["entries"] = std::move(entries);
  j["default"] = rational_to_string(f.default_value());
  return j;
}

LocallyConstantFn fn_from_json(const AlphabetParams& p, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("function must be a JSON object");
  Ambient amb = j.contains("ambient") ? parse_ambient(j.at("ambient").get<std::string>())
                                      : Ambient::SigmaD;
  const int radius = j.at("radius").get<int>();
  std::map<std::string, Rat> table;
  for (const json& e : j.at("entries")) {
    Word w = parse_word(p, amb, e.at("word").get<std::string>());
    table[word_to_string(w)] = rat_from_json(e.at("value"));  // canonical key form
  }
  Rat dflt = j.contains("default") ? rat_from_json(j.at("default")) : Rat(0);
  return LocallyConstantFn(p, amb, radius, std::move(table), std::move(dflt));
}

json path_to_json(const PathSpec& path) {
  json j;
  j["gamma"] = gamma_name(path.gamma);
  j["mu_plus"] = measure_to_json(path.mu_plus);
  j["mu_minus"] = measure_to_json(path.mu_minus);
  j["plus_blocks"] = blocks_to_json(path.plus_blocks);
  j["minus_blocks"] = blocks_to_json(path.minus_blocks);
  j["chain_blocks"] = blocks_to_json(path.chain_blocks);
  j["config"] = json{{"depth", path.config.depth},
                     {"q_offset", path.config.q_offset},
                     {"chain_knots", path.config.chain_knots},
                     {"rate_len", path.config.rate_len},
                     {"budget_cap", path.config.budget_cap},
                     {"seed", path.config.seed}};
  return j;
}

PathSpec path_from_json(const AlphabetParams& p, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("path must be a JSON object");
  Gamma gamma = parse_gamma(j.at("gamma").get<std::string>());
  PathConfig cfg;
  if (j.contains("config")) {
    const json& c = j.at("config");
    if (c.contains("depth")) cfg.depth = c.at("depth").get<int>();
    if (c.contains("q_offset")) cfg.q_offset = c.at("q_offset").get<int>();
    if (c.contains("chain_knots")) cfg.chain_knots = c.at("chain_knots").get<int>();
    if (c.contains("rate_len")) cfg.rate_len = c.at("rate_len").get<int>();
    if (c.contains("budget_cap")) cfg.budget_cap = c.at("budget_cap").get<int>();
    if (c.contains("seed")) cfg.seed = c.at("seed").get<std::uint64_t>();
  }
  // Stored blocks are trusted as-built; re-checking the rate would need the
  // whole construction again.
  return PathSpec{p,
                  gamma,
                  measure_from_json(p, j.at("mu_plus")),
                  measure_from_json(p, j.at("mu_minus")),
                  blocks_from_json(p, Ambient::SigmaD, j.at("plus_blocks")),
                  blocks_from_json(p, Ambient::SigmaD, j.at("minus_blocks")),
                  blocks_from_json(p, collapsed_ambient(gamma), j.at("chain_blocks")),
                  cfg};
}

json prob_to_json(const ProbValue& v, int precision) {
  return exactness_fields(v.is_exact, v.exact, v.value, v.error, precision);
}

json weakstar_to_json(const WeakStarResult& d, int precision) {
  json j = exactness_fields(d.is_exact, d.exact, d.value, d.error, precision);
  j["truncation"] = d.truncation;
  j["terms"] = d.terms;
  return j;
}

}  // namespace dyckm
