// dyckm: batch front end for the bracket-shift toolkit. Every subcommand is
// deterministic given its flags and the global seed; structured results are
// JSON, tabular results are CSV, errors are machine-readable on stderr when
// --format json is active.
//
// Exit codes: 0 success, 1 a verification check failed, 2 parse/schema
// errors, 3 entropy table size refused, 4 transport-condition violations,
// 5 resource/budget caps.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dyckm/embedding.hpp"
#include "dyckm/errors.hpp"
#include "dyckm/fn.hpp"
#include "dyckm/json_io.hpp"
#include "dyckm/language.hpp"
#include "dyckm/measure.hpp"
#include "dyckm/optimize.hpp"
#include "dyckm/path.hpp"
#include "dyckm/periodic.hpp"
#include "dyckm/reduce.hpp"

using json = nlohmann::json;
using namespace dyckm;

namespace {

struct RunConfig {
  int M = 2;
  int N = 1;
  std::uint64_t seed = 20240817;
  std::string format = "csv";
  int precision = 6;

  AlphabetParams params() const { return AlphabetParams{M, N}; }
  bool json_mode() const { return format == "json"; }
};

std::string fixed(double x, int p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", p, x);
  return buf;
}

std::string sig(double x, int p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", p, x);
  return buf;
}

void emit_error(const RunConfig& cfg, const std::string& kind,
                const std::string& message, const std::string& location = "") {
  if (cfg.json_mode()) {
    json e{{"error", {{"kind", kind}, {"message", message}}}};
    if (!location.empty()) e["error"]["location"] = location;
    std::cerr << e.dump() << "\n";
  } else {
    std::cerr << "error (" << kind << "): " << message;
    if (!location.empty()) std::cerr << " [" << location << "]";
    std::cerr << "\n";
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

MeasureSpec load_measure(const RunConfig& cfg, const std::string& path) {
  try {
    return measure_from_json(cfg.params(), load_json(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

LocallyConstantFn load_fn(const RunConfig& cfg, const std::string& path) {
  try {
    return fn_from_json(cfg.params(), load_json(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string prob_text(const ProbValue& v, int p) {
  if (v.is_exact) return rational_to_string(v.exact) + " = " + sig(v.value, p);
  return sig(v.value, p) + " +/- " + sig(v.error, 3);
}

std::string weakstar_text(const WeakStarResult& d, int p) {
  std::string head = d.is_exact ? rational_to_string(d.exact) + " = " + sig(d.value, p)
                                : sig(d.value, p) + " +/- " + sig(d.error, 3);
  return head + " (terms " + std::to_string(d.terms) + ", truncation " +
         sig(d.truncation, 3) + ")";
}

// ---- reduce / classify ----------------------------------------------------

int cmd_reduce(const RunConfig& cfg, const std::string& text) {
  const Word w = parse_word(cfg.params(), Ambient::SigmaD, text);
  const ReducedForm r = reduce(cfg.params(), w);
  std::string display;
  if (r.zero) {
    display = "ZERO";
  } else if (r.is_identity()) {
    display = "IDENTITY";
  } else {
    std::string closers, openers;
    for (int k : r.closers) closers += (closers.empty() ? "" : " ") + symbol_token(right_bracket(k));
    for (int k : r.openers) openers += (openers.empty() ? "" : " ") + symbol_token(left_bracket(k));
    if (!closers.empty() && !openers.empty())
      display = closers + " | " + openers;
    else
      display = closers + openers;
  }
  if (cfg.json_mode()) {
    json j{{"zero", r.zero},
           {"closers", r.closers},
           {"openers", r.openers},
           {"display", display}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << display << "\n";
  }
  return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& text) {
  const Word w = parse_word(cfg.params(), Ambient::SigmaD, text);
  const std::string name = word_class_name(classify(cfg.params(), w));
  if (cfg.json_mode())
    std::cout << json{{"class", name}}.dump() << "\n";
  else
    std::cout << name << "\n";
  return 0;
}

// ---- count / enumerate / entropy -------------------------------------------

int cmd_count(const RunConfig& cfg, int n) {
  const Int c = count_words(cfg.params(), n);
  if (cfg.json_mode())
    std::cout << json{{"n", n}, {"count", c.get_str()}}.dump() << "\n";
  else
    std::cout << c.get_str() << "\n";
  return 0;
}

int cmd_enumerate(const RunConfig& cfg, int n) {
  const std::vector<Word> words = enumerate_words(cfg.params(), n);
  if (cfg.json_mode()) {
    json arr = json::array();
    for (const Word& w : words) arr.push_back(word_to_string(w));
    std::cout << json{{"n", n}, {"words", arr}}.dump() << "\n";
  } else {
    for (const Word& w : words) std::cout << word_to_string(w) << "\n";
  }
  return 0;
}

int cmd_entropy(const RunConfig& cfg, int n_max) {
  if (n_max > 40) {
    emit_error(cfg, "limit", "entropy table capped at n-max 40, requested " +
                                 std::to_string(n_max));
    return 3;
  }
  const double limit = std::log(cfg.M + cfg.N + 1);
  if (cfg.json_mode()) {
    json rows = json::array();
    for (int n = 1; n <= n_max; ++n)
      rows.push_back(json{{"n", n},
                          {"count", count_words(cfg.params(), n).get_str()},
                          {"estimate", entropy_estimate(cfg.params(), n)}});
    std::cout << json{{"rows", rows}, {"limit", limit}}.dump() << "\n";
  } else {
    std::cout << "n,count,estimate\n";
    for (int n = 1; n <= n_max; ++n)
      std::cout << n << "," << count_words(cfg.params(), n).get_str() << ","
                << fixed(entropy_estimate(cfg.params(), n), cfg.precision) << "\n";
    std::cout << "limit,log(M+N+1)," << fixed(limit, cfg.precision) << "\n";
  }
  return 0;
}

// ---- embed ------------------------------------------------------------------

int cmd_embed(const RunConfig& cfg, bool collapse_dir, const std::string& gamma_name_in,
              const std::string& block) {
  const Gamma gamma = parse_gamma(gamma_name_in);
  if (collapse_dir) {
    PeriodicPoint x(cfg.params(), Ambient::SigmaD,
                    parse_word(cfg.params(), Ambient::SigmaD, block));
    PeriodicPoint y = collapse(gamma, x);
    if (cfg.json_mode())
      std::cout << json{{"block", word_to_string(y.block())},
                        {"ambient", ambient_name(y.ambient())},
                        {"in_domain", in_domain(gamma, x)}}
                       .dump()
                << "\n";
    else
      std::cout << word_to_string(y.block()) << "\n";
  } else {
    const Ambient amb = collapsed_ambient(gamma);
    PeriodicPoint y(cfg.params(), amb, parse_word(cfg.params(), amb, block));
    PeriodicPoint x = reconstruct(gamma, y);
    if (cfg.json_mode())
      std::cout << json{{"block", word_to_string(x.block())},
                        {"ambient", ambient_name(x.ambient())}}
                       .dump()
                << "\n";
    else
      std::cout << word_to_string(x.block()) << "\n";
  }
  return 0;
}

// ---- measure ----------------------------------------------------------------

int cmd_measure_cylinder(const RunConfig& cfg, const std::string& spec,
                         const std::string& word) {
  MeasureSpec mu = load_measure(cfg, spec);
  ProbValue v = cylinder_prob(mu, parse_word(cfg.params(), mu.ambient(), word));
  if (cfg.json_mode())
    std::cout << prob_to_json(v, cfg.precision).dump() << "\n";
  else
    std::cout << prob_text(v, cfg.precision) << "\n";
  return 0;
}

int cmd_measure_integral(const RunConfig& cfg, const std::string& spec,
                         const std::string& fn_path) {
  MeasureSpec mu = load_measure(cfg, spec);
  LocallyConstantFn f = load_fn(cfg, fn_path);
  ProbValue v = integral(mu, f);
  if (cfg.json_mode())
    std::cout << prob_to_json(v, cfg.precision).dump() << "\n";
  else
    std::cout << prob_text(v, cfg.precision) << "\n";
  return 0;
}

int cmd_measure_entropy(const RunConfig& cfg, const std::string& spec) {
  const double h = measure_entropy(load_measure(cfg, spec));
  if (cfg.json_mode())
    std::cout << json{{"entropy", h}}.dump() << "\n";
  else
    std::cout << fixed(h, cfg.precision) << "\n";
  return 0;
}

int cmd_measure_classify(const RunConfig& cfg, const std::string& spec) {
  MeasureSpec mu = load_measure(cfg, spec);
  const std::string cls = measure_class_name(classify_measure(mu));
  const Rat drift = measure_drift(mu);
  if (cfg.json_mode())
    std::cout << json{{"class", cls}, {"drift", rational_to_string(drift)}}.dump()
              << "\n";
  else
    std::cout << cls << " (drift " << rational_to_string(drift) << ")\n";
  return 0;
}

int cmd_measure_distance(const RunConfig& cfg, const std::string& spec,
                         const std::string& other, int max_len) {
  WeakStarResult d =
      weakstar_distance(load_measure(cfg, spec), load_measure(cfg, other), max_len);
  if (cfg.json_mode())
    std::cout << weakstar_to_json(d, cfg.precision).dump() << "\n";
  else
    std::cout << weakstar_text(d, cfg.precision) << "\n";
  return 0;
}

// ---- approx -------------------------------------------------------------------

int cmd_approx(const RunConfig& cfg, const std::string& target_co,
               const std::string& target_spec, int budget, int metric_len) {
  if (target_co.empty() == target_spec.empty())
    throw std::invalid_argument("pass exactly one of --target-co / --target-spec");
  MeasureSpec target =
      target_co.empty()
          ? load_measure(cfg, target_spec)
          : MeasureSpec::co(PeriodicPoint(
                cfg.params(), Ambient::SigmaD,
                parse_word(cfg.params(), Ambient::SigmaD, target_co)));
  CoApproxConfig ac;
  ac.metric_len = metric_len;
  MeasureSpec best = co_approx(target, budget, cfg.seed, ac);
  WeakStarResult d = weakstar_distance(best, target, metric_len);
  json out{{"block", word_to_string(best.as_co().point.block())},
           {"period", best.as_co().point.period()},
           {"budget", budget},
           {"distance", weakstar_to_json(d, cfg.precision)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ---- path ----------------------------------------------------------------------

void write_svg(const std::string& file, const PathReport& report, double limit) {
  std::ofstream out(file);
  if (!out) throw std::invalid_argument("cannot open " + file);
  const double W = 640, H = 360, L = 40, B = 320;
  double max_gap = 0;
  for (const PathSample& s : report.samples) max_gap = std::max(max_gap, s.gap_to_prev);
  if (max_gap <= 0) max_gap = 1;
  auto x_of = [&](const Rat& t) { return L + to_double(t) * (W - L - 20); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  // entropy profile scaled to the growth rate, gap profile scaled to its max
  for (int pass = 0; pass < 2; ++pass) {
    out << "<polyline fill=\"none\" stroke=\"" << (pass == 0 ? "#1f77b4" : "#d62728")
        << "\" stroke-width=\"1.5\" points=\"";
    for (const PathSample& s : report.samples) {
      const double y = pass == 0 ? s.entropy / limit : s.gap_to_prev / max_gap;
      out << fixed(x_of(s.t), 2) << "," << fixed(B - y * 280, 2) << " ";
    }
    out << "\"/>\n";
  }
  for (const PathSample& s : report.samples)
    if (s.is_knot)
      out << "<circle cx=\"" << fixed(x_of(s.t), 2) << "\" cy=\"" << B
          << "\" r=\"2\" fill=\"#444\"/>\n";
  out << "</svg>\n";
}

int cmd_path(const RunConfig& cfg, const std::string& plus_file,
             const std::string& minus_file, const std::string& plus_co,
             const std::string& minus_co, const std::string& gamma_name_in, int grid,
             int max_len, const std::string& probe_file, const PathConfig& pc,
             const std::string& out_json, const std::string& svg_file) {
  auto endpoint = [&](const std::string& file, const std::string& co_block,
                      const char* which) {
    if (file.empty() == co_block.empty())
      throw std::invalid_argument(std::string("pass exactly one of --") + which +
                                  " / --" + which + "-co");
    if (!file.empty()) return load_measure(cfg, file);
    return MeasureSpec::co(PeriodicPoint(
        cfg.params(), Ambient::SigmaD,
        parse_word(cfg.params(), Ambient::SigmaD, co_block)));
  };
  MeasureSpec plus = endpoint(plus_file, plus_co, "plus");
  MeasureSpec minus = endpoint(minus_file, minus_co, "minus");
  const Gamma gamma = parse_gamma(gamma_name_in);

  PathConfig pconf = pc;
  pconf.seed = cfg.seed;
  PathSpec path = build_path(plus, minus, gamma, pconf);

  LocallyConstantFn probe =
      probe_file.empty()
          ? indicator_fn(cfg.params(), Ambient::SigmaD,
                         parse_word(cfg.params(), Ambient::SigmaD, "A1"))
          : load_fn(cfg, probe_file);
  PathReport coarse = verify_path(path, grid, max_len, &probe);
  PathReport fine = verify_path(path, 2 * grid - 1, max_len, &probe);

  const bool endpoints_exact =
      path_point(path, Rat(0)) == plus && path_point(path, Rat(1)) == minus;
  const bool refined = fine.max_gap < coarse.max_gap;

  if (!out_json.empty()) {
    std::ofstream out(out_json);
    if (!out) throw std::invalid_argument("cannot open " + out_json);
    out << path_to_json(path).dump(2) << "\n";
  }
  if (!svg_file.empty()) write_svg(svg_file, coarse, std::log(cfg.M + cfg.N + 1));

  if (cfg.json_mode()) {
    json samples = json::array();
    for (const PathSample& s : coarse.samples)
      samples.push_back(json{{"t", rational_to_string(s.t)},
                             {"class", measure_class_name(s.cls)},
                             {"entropy", s.entropy},
                             {"probe_integral", s.probe_integral},
                             {"gap_to_prev", s.gap_to_prev},
                             {"fully_supported", s.fully_supported},
                             {"is_knot", s.is_knot}});
    json out{{"samples", samples},
             {"max_gap", coarse.max_gap},
             {"max_gap_refined", fine.max_gap},
             {"min_pairwise", coarse.min_pairwise},
             {"pairwise_distinct", coarse.pairwise_distinct},
             {"endpoints_exact", endpoints_exact},
             {"refinement_monotone", refined}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "t,class,entropy,probe_integral,gap_to_prev,fully_supported,is_knot\n";
    for (const PathSample& s : coarse.samples)
      std::cout << rational_to_string(s.t) << "," << measure_class_name(s.cls) << ","
                << fixed(s.entropy, cfg.precision) << ","
                << sig(s.probe_integral, cfg.precision) << ","
                << sig(s.gap_to_prev, cfg.precision) << "," << (s.fully_supported ? 1 : 0)
                << "," << (s.is_knot ? 1 : 0) << "\n";
    std::cout << "# max_gap," << sig(coarse.max_gap, cfg.precision) << ",refined,"
              << sig(fine.max_gap, cfg.precision) << "\n";
    std::cout << "# endpoints_exact," << (endpoints_exact ? 1 : 0)
              << ",refinement_monotone," << (refined ? 1 : 0) << ",pairwise_distinct,"
              << (coarse.pairwise_distinct ? 1 : 0) << "\n";
  }
  return endpoints_exact && refined ? 0 : 1;
}

// ---- optimize ---------------------------------------------------------------------

int cmd_optimize(const RunConfig& cfg, const std::string& fn_path, int budget,
                 const OptimizeConfig& oc) {
  LocallyConstantFn f = load_fn(cfg, fn_path);
  OptimizeResult r = lambda_periodic(f, budget, oc);
  json witnesses = json::array();
  for (const PeriodicPoint& x : r.witnesses)
    witnesses.push_back(word_to_string(x.block()));
  json out{{"value", rational_to_string(r.value)},
           {"upper_bound", rational_to_string(r.upper_bound)},
           {"budget", budget},
           {"witnesses", witnesses},
           {"witnesses_truncated", r.witnesses_truncated}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"bracket-shift toolkit: reduction, embeddings, measures, paths, optimization"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--M", cfg.M, "number of bracket pairs")->check(CLI::Range(2, 64));
  app.add_option("--N", cfg.N, "number of unit symbols")->check(CLI::Range(0, 64));
  app.add_option("--seed", cfg.seed, "seed for every stochastic step");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--precision", cfg.precision, "decimal digits in rendered numbers")
      ->check(CLI::Range(1, 30));

  std::function<int()> action;

  std::string word;
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "bracket-monoid normal form");
  reduce_cmd->fallthrough();
  reduce_cmd->add_option("word", word, "space-separated symbol tokens")->required();
  reduce_cmd->callback([&] { action = [&] { return cmd_reduce(cfg, word); }; });

  std::string cls_word;
  CLI::App* classify_cmd = app.add_subcommand("classify", "word class of a block");
  classify_cmd->fallthrough();
  classify_cmd->add_option("word", cls_word, "space-separated symbol tokens")->required();
  classify_cmd->callback([&] { action = [&] { return cmd_classify(cfg, cls_word); }; });

  int count_n = 0;
  CLI::App* count_cmd = app.add_subcommand("count", "number of admissible words");
  count_cmd->fallthrough();
  count_cmd->add_option("--n", count_n, "word length")->required()->check(CLI::Range(0, 100000));
  count_cmd->callback([&] { action = [&] { return cmd_count(cfg, count_n); }; });

  int enum_n = 0;
  CLI::App* enum_cmd = app.add_subcommand("enumerate", "list admissible words");
  enum_cmd->fallthrough();
  enum_cmd->add_option("--n", enum_n, "word length")->required()->check(CLI::Range(0, 64));
  enum_cmd->callback([&] { action = [&] { return cmd_enumerate(cfg, enum_n); }; });

  int n_max = 0;
  CLI::App* entropy_cmd = app.add_subcommand("entropy", "count table with growth estimates");
  entropy_cmd->fallthrough();
  entropy_cmd->add_option("--n-max", n_max, "last table row")->required()->check(CLI::Range(1, 1000000));
  entropy_cmd->callback([&] { action = [&] { return cmd_entropy(cfg, n_max); }; });

  std::string embed_gamma = "alpha", embed_block;
  CLI::App* embed_cmd = app.add_subcommand("embed", "collapse map and its inverse");
  embed_cmd->fallthrough();
  embed_cmd->require_subcommand(1);
  for (bool collapse_dir : {true, false}) {
    CLI::App* dir = embed_cmd->add_subcommand(
        collapse_dir ? "collapse" : "reconstruct",
        collapse_dir ? "forget bracket indices on one side"
                     : "restore bracket indices from partners");
    dir->fallthrough();
    dir->add_option("--gamma", embed_gamma, "embedding side (alpha|beta)");
    dir->add_option("block", embed_block, "periodic block")->required();
    dir->callback([&, collapse_dir] {
      action = [&, collapse_dir] {
        return cmd_embed(cfg, collapse_dir, embed_gamma, embed_block);
      };
    });
  }

  std::string m_spec, m_other, m_word, m_fn;
  int m_max_len = 2;
  CLI::App* measure_cmd = app.add_subcommand("measure", "invariant-measure queries");
  measure_cmd->fallthrough();
  measure_cmd->require_subcommand(1);
  {
    CLI::App* c = measure_cmd->add_subcommand("cylinder", "mass of a word cylinder");
    c->fallthrough();
    c->add_option("--spec", m_spec, "measure JSON file")->required();
    c->add_option("word", m_word, "cylinder word")->required();
    c->callback([&] { action = [&] { return cmd_measure_cylinder(cfg, m_spec, m_word); }; });

    CLI::App* i = measure_cmd->add_subcommand("integral", "integral of an observable");
    i->fallthrough();
    i->add_option("--spec", m_spec, "measure JSON file")->required();
    i->add_option("--fn", m_fn, "observable JSON file")->required();
    i->callback([&] { action = [&] { return cmd_measure_integral(cfg, m_spec, m_fn); }; });

    CLI::App* h = measure_cmd->add_subcommand("entropy", "Kolmogorov-Sinai entropy");
    h->fallthrough();
    h->add_option("--spec", m_spec, "measure JSON file")->required();
    h->callback([&] { action = [&] { return cmd_measure_entropy(cfg, m_spec); }; });

    CLI::App* k = measure_cmd->add_subcommand("classify", "drift class of a measure");
    k->fallthrough();
    k->add_option("--spec", m_spec, "measure JSON file")->required();
    k->callback([&] { action = [&] { return cmd_measure_classify(cfg, m_spec); }; });

    CLI::App* d = measure_cmd->add_subcommand("distance", "truncated cylinder metric");
    d->fallthrough();
    d->add_option("--spec", m_spec, "measure JSON file")->required();
    d->add_option("--other", m_other, "second measure JSON file")->required();
    d->add_option("--max-len", m_max_len, "metric truncation length")->check(CLI::Range(1, 12));
    d->callback([&] {
      action = [&] { return cmd_measure_distance(cfg, m_spec, m_other, m_max_len); };
    });
  }

  std::string ap_co, ap_spec;
  int ap_budget = 0, ap_metric = 2;
  CLI::App* approx_cmd =
      app.add_subcommand("approx", "closest orbit measure within a period budget");
  approx_cmd->fallthrough();
  approx_cmd->add_option("--target-co", ap_co, "periodic block of the target orbit");
  approx_cmd->add_option("--target-spec", ap_spec, "target measure JSON file");
  approx_cmd->add_option("--budget", ap_budget, "period budget")->required()->check(CLI::Range(1, 100000));
  approx_cmd->add_option("--metric-len", ap_metric, "metric truncation length")->check(CLI::Range(1, 12));
  approx_cmd->callback([&] {
    action = [&] { return cmd_approx(cfg, ap_co, ap_spec, ap_budget, ap_metric); };
  });

  std::string p_plus, p_minus, p_plus_co, p_minus_co, p_gamma = "alpha", p_probe,
                                                      p_out_json, p_svg;
  int p_grid = 65, p_max_len = 2;
  PathConfig p_conf;
  CLI::App* path_cmd = app.add_subcommand("path", "build and verify a measure path");
  path_cmd->fallthrough();
  path_cmd->add_option("--plus", p_plus, "left endpoint measure JSON file");
  path_cmd->add_option("--minus", p_minus, "right endpoint measure JSON file");
  path_cmd->add_option("--plus-co", p_plus_co, "left endpoint periodic block");
  path_cmd->add_option("--minus-co", p_minus_co, "right endpoint periodic block");
  path_cmd->add_option("--gamma", p_gamma, "embedding side (alpha|beta)");
  path_cmd->add_option("--grid", p_grid, "verification grid points")->check(CLI::Range(2, 4097));
  path_cmd->add_option("--max-len", p_max_len, "metric truncation length")->check(CLI::Range(1, 12));
  path_cmd->add_option("--probe", p_probe, "observable JSON file reported along the path");
  path_cmd->add_option("--depth", p_conf.depth, "approximants per side")->check(CLI::Range(2, 24));
  path_cmd->add_option("--chain-knots", p_conf.chain_knots, "interior chain knots")->check(CLI::Range(0, 64));
  path_cmd->add_option("--budget-cap", p_conf.budget_cap, "approximant period cap")->check(CLI::Range(4, 65536));
  path_cmd->add_option("--out-json", p_out_json, "write the built path as JSON");
  path_cmd->add_option("--svg", p_svg, "write an SVG profile plot");
  path_cmd->callback([&] {
    action = [&] {
      return cmd_path(cfg, p_plus, p_minus, p_plus_co, p_minus_co, p_gamma, p_grid,
                      p_max_len, p_probe, p_conf, p_out_json, p_svg);
    };
  });

  std::string o_fn;
  int o_budget = 0;
  OptimizeConfig o_conf;
  CLI::App* opt_cmd =
      app.add_subcommand("optimize", "best periodic-orbit average with witnesses");
  opt_cmd->fallthrough();
  opt_cmd->add_option("--fn", o_fn, "observable JSON file")->required();
  opt_cmd->add_option("--budget", o_budget, "period budget")->required()->check(CLI::Range(1, 64));
  opt_cmd->add_option("--depth-cap", o_conf.depth_cap, "stack truncation depth (-1: budget)");
  opt_cmd->add_option("--max-states", o_conf.max_states, "search graph state cap");
  opt_cmd->add_option("--max-witnesses", o_conf.max_witnesses, "witness list cap");
  opt_cmd->callback([&] {
    action = [&] { return cmd_optimize(cfg, o_fn, o_budget, o_conf); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(cfg, "parse", e.what());
    return 2;
  }

  try {
    return action();
  } catch (const transport_error& e) {
    emit_error(cfg, "transport", e.what(), e.location);
    return 4;
  } catch (const resource_error& e) {
    emit_error(cfg, "resource", e.what());
    return 5;
  } catch (const budget_error& e) {
    emit_error(cfg, "budget", e.what());
    return 5;
  } catch (const std::invalid_argument& e) {
    emit_error(cfg, "parse", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error(cfg, "internal", e.what());
    return 1;
  }
}
