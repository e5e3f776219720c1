#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hk/analysis.hpp"
#include "hk/parallel.hpp"
#include "json.hpp"

namespace hk {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string>& job_names() {
  static const std::vector<std::string> names{
      "h-grid",      "density-grid", "graded-density", "ehk",         "multiplicity", "fthreshold",
      "flimbus",     "stable-point", "fp-grid",        "convexity",   "boij",         "scaling-check",
      "adjoin-check", "asymptotes",  "inequalities",   "verify"};
  return names;
}

// s values: an explicit list, start/stop/step, or the level's own q-grid.
struct GridSpec {
  enum class Kind { kPoints, kRange, kQGrid } kind = Kind::kPoints;
  std::vector<Rational> points;
  Rational start, stop, step;

  std::vector<Rational> at_level(std::uint64_t q) const {
    std::vector<Rational> out;
    switch (kind) {
      case Kind::kPoints:
        return points;
      case Kind::kRange:
        for (Rational s = start; s <= stop; s += step) out.push_back(s);
        return out;
      case Kind::kQGrid: {
        BigInt Q(q);
        for (BigInt j = hk::ceil(start * Q); Rational(j, Q) <= stop; ++j) out.push_back(Rational(j, Q));
        return out;
      }
    }
    return out;
  }
};

struct JobConfig {
  std::string job;
  std::uint64_t p = 0;
  std::vector<std::string> vars;
  std::vector<std::uint64_t> weights;
  std::vector<std::string> relations;
  std::vector<std::string> I_text, J_text;
  RingSpecPtr ring;
  std::optional<Ideal> I, J;
  std::optional<int> n_min, n_max;
  std::optional<GridSpec> grid;
  std::vector<Complex> y;
  std::optional<int> r;
  std::uint64_t alpha = 1, beta = 1;
  std::optional<std::int64_t> t_max, j_max, n0;
  std::optional<Rational> s0;
  std::string output;
  std::string format;
  Budget budget;

  std::vector<int> levels() const {
    if (!n_max) throw ConfigError("job '" + job + "' needs 'n_max' (or 'n')");
    int lo = n_min.value_or(1);
    if (lo < 0 || *n_max < lo) throw ConfigError("need 0 <= n_min <= n_max");
    return level_range(lo, *n_max);
  }
  const Ideal& ideal_I() const {
    if (!I) throw ConfigError("job '" + job + "' needs the ideal 'I'");
    return *I;
  }
  const Ideal& ideal_J() const {
    if (!J) throw ConfigError("job '" + job + "' needs the ideal 'J'");
    return *J;
  }
  const GridSpec& grid_spec() const {
    if (!grid) throw ConfigError("job '" + job + "' needs 'grid'");
    return *grid;
  }
};

namespace detail {

inline Rational json_rational(const Json& v, const std::string& name) {
  if (v.is_number_integer()) return Rational(BigInt(v.get<long long>()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ConfigError("'" + name + "' must be an integer or a rational string like \"3/2\"");
}

template <class T>
T json_get(const Json& v, const std::string& name) {
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("'" + name + "' has the wrong type");
  }
}

inline GridSpec parse_grid(const Json& g, const Json& doc) {
  GridSpec spec;
  if (g.is_string()) {
    if (g.get<std::string>() != "q-grid") throw ConfigError("'grid' string must be \"q-grid\"");
    spec.kind = GridSpec::Kind::kQGrid;
    spec.start = doc.contains("s_min") ? json_rational(doc["s_min"], "s_min") : Rational(0);
    spec.stop = doc.contains("s_max") ? json_rational(doc["s_max"], "s_max") : Rational(2);
  } else if (g.is_array()) {
    for (const auto& v : g) spec.points.push_back(json_rational(v, "grid"));
    if (spec.points.empty()) throw ConfigError("'grid' list is empty");
  } else if (g.is_object()) {
    for (const auto& [k, v] : g.items())
      if (k != "start" && k != "stop" && k != "step") throw ConfigError("unknown grid key '" + k + "'");
    if (!g.contains("start") || !g.contains("stop") || !g.contains("step"))
      throw ConfigError("'grid' needs start, stop and step");
    spec.start = json_rational(g["start"], "grid.start");
    spec.stop = json_rational(g["stop"], "grid.stop");
    if (g["step"].is_string() && g["step"].get<std::string>() == "q-grid") {
      spec.kind = GridSpec::Kind::kQGrid;
    } else {
      spec.kind = GridSpec::Kind::kRange;
      spec.step = json_rational(g["step"], "grid.step");
      if (spec.step <= 0) throw ConfigError("grid step must be positive");
      if ((spec.stop - spec.start) / spec.step > 100000) throw ConfigError("grid has more than 100000 points");
    }
    if (spec.stop < spec.start) throw ConfigError("grid stop lies below start");
  } else {
    throw ConfigError("'grid' must be \"q-grid\", a list or {start, stop, step}");
  }
  return spec;
}

}  // namespace detail

// Parses and validates a JSON job document. `job_override` (from the command
// line) must agree with a "job" key when both are present.
inline JobConfig parse_job(const std::string& text, const std::string& job_override = "") {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("the job document must be a JSON object");
  static const std::set<std::string> known{"p",     "vars",  "weights", "relations", "I",     "J",      "job",
                                           "n",     "n_min", "n_max",   "grid",      "s_min", "s_max",  "y",
                                           "r",     "alpha", "beta",    "t_max",     "j_max", "n0",     "s0",
                                           "output", "format", "budget"};
  for (const auto& [k, v] : doc.items())
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");

  JobConfig cfg;
  using detail::json_get;
  cfg.job = doc.contains("job") ? json_get<std::string>(doc["job"], "job") : job_override;
  if (!job_override.empty() && cfg.job != job_override)
    throw ConfigError("command line job '" + job_override + "' differs from config job '" + cfg.job + "'");
  if (cfg.job.empty()) throw ConfigError("no job given");
  if (std::find(job_names().begin(), job_names().end(), cfg.job) == job_names().end())
    throw ConfigError("unknown job '" + cfg.job + "'");

  if (doc.contains("budget")) {
    for (const auto& [k, v] : doc["budget"].items()) {
      if (k == "max_pairs") cfg.budget.max_pairs = json_get<std::size_t>(v, "budget.max_pairs");
      else if (k == "max_basis") cfg.budget.max_basis = json_get<std::size_t>(v, "budget.max_basis");
      else if (k == "max_degree") cfg.budget.max_degree = json_get<std::uint64_t>(v, "budget.max_degree");
      else throw ConfigError("unknown budget key '" + k + "'");
    }
  }
  if (doc.contains("format")) {
    cfg.format = json_get<std::string>(doc["format"], "format");
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
  }
  if (doc.contains("output")) cfg.output = json_get<std::string>(doc["output"], "output");

  if (cfg.job == "verify" && !doc.contains("p")) return cfg;

  if (!doc.contains("p") || !doc.contains("vars")) throw ConfigError("'p' and 'vars' are required");
  if (!doc["p"].is_number_integer() || doc["p"].get<long long>() < 0)
    throw ConfigError("characteristic must be prime");
  cfg.p = doc["p"].get<std::uint64_t>();
  cfg.vars = json_get<std::vector<std::string>>(doc["vars"], "vars");
  if (doc.contains("weights")) {
    for (const auto& w : doc["weights"])
      if (!w.is_number_integer() || w.get<long long>() <= 0) throw ConfigError("weights must be positive integers");
    cfg.weights = json_get<std::vector<std::uint64_t>>(doc["weights"], "weights");
  }
  if (doc.contains("relations")) cfg.relations = json_get<std::vector<std::string>>(doc["relations"], "relations");
  cfg.ring = RingSpec::make(cfg.p, cfg.vars, cfg.weights, cfg.relations);
  if (doc.contains("I")) {
    cfg.I_text = json_get<std::vector<std::string>>(doc["I"], "I");
    cfg.I = Ideal::parse(cfg.ring, cfg.I_text);
  }
  if (doc.contains("J")) {
    cfg.J_text = json_get<std::vector<std::string>>(doc["J"], "J");
    cfg.J = Ideal::parse(cfg.ring, cfg.J_text);
  }

  if (doc.contains("n")) {
    if (doc.contains("n_min") || doc.contains("n_max")) throw ConfigError("give either 'n' or 'n_min'/'n_max'");
    cfg.n_min = cfg.n_max = json_get<int>(doc["n"], "n");
  }
  if (doc.contains("n_min")) cfg.n_min = json_get<int>(doc["n_min"], "n_min");
  if (doc.contains("n_max")) cfg.n_max = json_get<int>(doc["n_max"], "n_max");
  if (doc.contains("grid")) cfg.grid = detail::parse_grid(doc["grid"], doc);
  if (doc.contains("y")) {
    for (const auto& v : doc["y"]) {
      if (v.is_number()) cfg.y.emplace_back(v.get<double>(), 0.0);
      else if (v.is_array() && v.size() == 2) cfg.y.emplace_back(v[0].get<double>(), v[1].get<double>());
      else if (v.is_object() && v.contains("re")) cfg.y.emplace_back(v["re"].get<double>(), v.value("im", 0.0));
      else throw ConfigError("'y' entries must be numbers, [re, im] pairs or {re, im} objects");
    }
  }
  if (doc.contains("r")) cfg.r = json_get<int>(doc["r"], "r");
  if (doc.contains("alpha")) cfg.alpha = json_get<std::uint64_t>(doc["alpha"], "alpha");
  if (doc.contains("beta")) cfg.beta = json_get<std::uint64_t>(doc["beta"], "beta");
  if (doc.contains("t_max")) cfg.t_max = json_get<std::int64_t>(doc["t_max"], "t_max");
  if (doc.contains("j_max")) cfg.j_max = json_get<std::int64_t>(doc["j_max"], "j_max");
  if (doc.contains("n0")) cfg.n0 = json_get<std::int64_t>(doc["n0"], "n0");
  if (doc.contains("s0")) cfg.s0 = detail::json_rational(doc["s0"], "s0");
  return cfg;
}

// ------------------------------------------------------------------ reports

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  Json json;
  Table table;
  bool failed = false;  // a verification inside the job did not hold

  std::string render(const std::string& format) const {
    if (format == "csv") {
      std::ostringstream out;
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          const auto& c = cells[i];
          bool quote = c.find_first_of(",\"\n") != std::string::npos;
          if (i) out << ',';
          if (quote) {
            out << '"';
            for (char ch : c) out << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
            out << '"';
          } else {
            out << c;
          }
        }
        out << '\n';
      };
      line(table.columns);
      for (const auto& r : table.rows) line(r);
      return out.str();
    }
    return json.dump(2) + "\n";
  }
};

inline std::string str(const Rational& r) { return to_string(r); }
inline std::string str(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}
template <class T>
  requires std::is_integral_v<T>
inline std::string str(T v) {
  return std::to_string(v);
}
inline std::string str(bool v) { return v ? "true" : "false"; }

inline Json estimate_json(const InvariantEstimate& e) {
  Json j;
  j["invariant"] = e.invariant;
  j["value"] = str(e.value);
  j["error_bound"] = e.error_bound;
  j["model"] = e.model;
  j["fitted_C"] = str(e.fitted_C);
  j["levels"] = e.levels;
  Json samples = Json::array();
  for (const auto& s : e.samples) samples.push_back(str(s));
  j["samples"] = samples;
  return j;
}

inline Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// ------------------------------------------------------------------- jobs

struct RunOptions {
  unsigned threads = 1;
};

namespace detail {

struct GridPoint {
  int n;
  Rational s;
};

inline std::vector<GridPoint> level_grid(const JobConfig& cfg) {
  std::vector<GridPoint> pts;
  for (int n : cfg.levels())
    for (const auto& s : cfg.grid_spec().at_level(level_q(cfg.p, n))) pts.push_back({n, s});
  return pts;
}

// Grid points shared by every level (the coarsest level's grid for q-grids).
inline std::vector<Rational> common_grid(const JobConfig& cfg) {
  auto levels = cfg.levels();
  return cfg.grid_spec().at_level(level_q(cfg.p, levels.front()));
}

inline Report job_h_grid(const JobConfig& cfg, const RunOptions& opt) {
  const auto& I = cfg.ideal_I();
  const auto& J = cfg.ideal_J();
  auto pts = level_grid(cfg);
  auto samples = parallel_map(pts.size(), [&](std::size_t k) { return h_level(I, J, pts[k].n, pts[k].s, cfg.budget); },
                              opt.threads);
  Report rep;
  rep.table.columns = {"n", "q", "s", "ceil_sq", "raw", "normalized"};
  Json rows = Json::array();
  for (const auto& smp : samples) {
    rep.table.rows.push_back(
        {str(smp.n), str(smp.q), str(smp.s), str(smp.ceil_sq), str(smp.raw), str(smp.normalized)});
    rows.push_back({{"n", smp.n}, {"q", smp.q}, {"s", str(smp.s)}, {"ceil_sq", smp.ceil_sq}, {"raw", smp.raw},
                    {"normalized", str(smp.normalized)}});
  }
  auto grid = common_grid(cfg);
  auto levels = cfg.levels();
  auto ests = parallel_map(grid.size(), [&](std::size_t k) { return h_estimate(I, J, grid[k], levels, cfg.budget); },
                           opt.threads);
  Json est = Json::array();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Json e = estimate_json(ests[k]);
    e["s"] = str(grid[k]);
    est.push_back(e);
  }
  rep.json = {{"job", cfg.job}, {"rows", rows}, {"estimates", est}};
  return rep;
}

inline Report job_density_grid(const JobConfig& cfg, const RunOptions& opt) {
  const auto& I = cfg.ideal_I();
  const auto& J = cfg.ideal_J();
  auto pts = level_grid(cfg);
  bool graded = cfg.job == "graded-density";
  auto vals = parallel_map(
      pts.size(),
      [&](std::size_t k) {
        return graded ? graded_density_level(J, pts[k].n, pts[k].s, cfg.budget)
                      : density_level(I, J, pts[k].n, pts[k].s, cfg.budget);
      },
      opt.threads);
  Report rep;
  rep.table.columns = {"n", "q", "s", graded ? "graded_density" : "density"};
  Json rows = Json::array();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto q = level_q(cfg.p, pts[k].n);
    rep.table.rows.push_back({str(pts[k].n), str(q), str(pts[k].s), str(vals[k])});
    rows.push_back({{"n", pts[k].n}, {"q", q}, {"s", str(pts[k].s)}, {"value", str(vals[k])}});
  }
  rep.json = {{"job", cfg.job}, {"rows", rows}};
  return rep;
}

inline Report estimate_report(const JobConfig& cfg, const InvariantEstimate& e, const std::vector<int>& levels) {
  Report rep;
  rep.table.columns = {"n", "sample"};
  for (std::size_t k = 0; k < e.samples.size(); ++k)
    rep.table.rows.push_back({str(levels.at(k)), str(e.samples[k])});
  rep.json = {{"job", cfg.job}, {"estimate", estimate_json(e)}};
  return rep;
}

inline Report job_ehk(const JobConfig& cfg) {
  auto levels = cfg.levels();
  return estimate_report(cfg, hilbert_kunz(cfg.ideal_J(), levels, cfg.budget), levels);
}

inline Report job_multiplicity(const JobConfig& cfg) {
  const auto& I = cfg.ideal_I();
  auto t_max = cfg.t_max.value_or(I.ring()->dim() + 6);
  auto e = hilbert_samuel(I, t_max, cfg.budget);
  Report rep;
  rep.table.columns = {"t", "difference"};
  for (std::size_t k = 0; k < e.samples.size(); ++k) rep.table.rows.push_back({str(e.levels[k]), str(e.samples[k])});
  rep.json = {{"job", cfg.job}, {"estimate", estimate_json(e)}};
  return rep;
}

inline Report job_threshold(const JobConfig& cfg, const RunOptions& opt) {
  const auto& I = cfg.ideal_I();
  const auto& J = cfg.ideal_J();
  auto levels = cfg.levels();
  const bool limbus = cfg.job == "flimbus";
  const std::string name = limbus ? "b_level" : "c_level";
  struct Row {
    std::int64_t value;
    std::uint64_t q;
    std::string witness;
    bool not_in_radical = false;
  };
  auto rows = parallel_map(
      levels.size(),
      [&](std::size_t k) -> Row {
        if (limbus) {
          auto b = f_limbus_level(I, J, levels[k], cfg.budget);
          return {b.value, b.q, b.witness ? b.witness->to_string() : "", b.not_in_radical};
        }
        auto c = f_threshold_level(I, J, levels[k], cfg.budget);
        return {c.value, c.q, c.witness ? c.witness->to_string() : ""};
      },
      opt.threads);
  Report rep;
  rep.table.columns = {"invariant", "n", "q", "value", "witness"};
  for (std::size_t k = 0; k < levels.size(); ++k)
    rep.table.rows.push_back({name, str(levels[k]), str(rows[k].q), str(rows[k].value), rows[k].witness});
  if (levels.size() == 1) {
    rep.json = {{"invariant", name}, {"n", levels[0]}, {"value", rows[0].value}};
    if (rows[0].not_in_radical) rep.json["not_in_radical"] = true;
    return rep;
  }
  Json arr = Json::array();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    Json j = {{"invariant", name}, {"n", levels[k]}, {"q", rows[k].q}, {"value", rows[k].value}};
    if (!rows[k].witness.empty()) j["witness"] = rows[k].witness;
    if (rows[k].not_in_radical) j["not_in_radical"] = true;
    arr.push_back(j);
  }
  std::vector<LevelPoint> pts;
  for (std::size_t k = 0; k < levels.size(); ++k)
    pts.push_back({levels[k], rows[k].q, Rational(rows[k].value, BigInt(rows[k].q))});
  rep.json = {{"job", cfg.job},
              {"levels", arr},
              {"estimate", estimate_json(fit_c_over_q(limbus ? "b^J(I)" : "c^J(I)", pts))}};
  return rep;
}

inline Report job_stable_point(const JobConfig& cfg, const RunOptions& opt) {
  auto levels = cfg.levels();
  auto sps = parallel_map(
      levels.size(), [&](std::size_t k) { return stable_point_level(cfg.ideal_I(), cfg.ideal_J(), levels[k], cfg.budget); },
      opt.threads);
  Report rep;
  rep.table.columns = {"n", "q", "t", "ratio", "threshold", "label"};
  Json arr = Json::array();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& sp = sps[k];
    rep.table.rows.push_back({str(levels[k]), str(sp.q), str(sp.t), str(sp.ratio), str(sp.threshold), sp.label});
    arr.push_back({{"n", levels[k]},
                   {"q", sp.q},
                   {"t", sp.t},
                   {"ratio", str(sp.ratio)},
                   {"threshold", sp.threshold},
                   {"label", sp.label}});
  }
  rep.json = {{"job", cfg.job}, {"levels", arr}};
  return rep;
}

inline Report job_fp_grid(const JobConfig& cfg, const RunOptions& opt) {
  const auto& I = cfg.ideal_I();
  const auto& J = cfg.ideal_J();
  if (cfg.y.empty()) throw ConfigError("job 'fp-grid' needs 'y' points");
  auto levels = cfg.levels();
  const bool primary = is_finite_colength(J, cfg.budget);
  struct Cell {
    int n;
    Complex y;
  };
  std::vector<Cell> cells;
  for (int n : levels)
    for (auto y : cfg.y) cells.push_back({n, y});
  struct Out {
    FrobeniusPoincareResult sum;
    std::optional<Complex> quad;
  };
  auto outs = parallel_map(
      cells.size(),
      [&](std::size_t k) {
        Out o{frobenius_poincare_level(I, J, cells[k].n, cells[k].y, cfg.budget), std::nullopt};
        if (primary) {
          auto [samples, plateau] = h_samples_to_plateau(I, J, cells[k].n, cfg.budget);
          o.quad = frobenius_poincare_integral(samples, plateau, cells[k].y);
        }
        return o;
      },
      opt.threads);
  Report rep;
  rep.table.columns = {"n", "q", "y_re", "y_im", "re", "im", "terms", "tail_bound"};
  if (primary) rep.table.columns.insert(rep.table.columns.end(), {"quad_re", "quad_im", "difference"});
  Json arr = Json::array();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    auto q = level_q(cfg.p, cells[k].n);
    const auto& o = outs[k];
    std::vector<std::string> row{str(cells[k].n),          str(q),
                                 str(cells[k].y.real()),   str(cells[k].y.imag()),
                                 str(o.sum.value.real()),  str(o.sum.value.imag()),
                                 str(o.sum.terms),         str(o.sum.tail_bound)};
    Json j = {{"n", cells[k].n},
              {"q", q},
              {"y", complex_json(cells[k].y)},
              {"value", complex_json(o.sum.value)},
              {"terms", o.sum.terms},
              {"tail_bound", o.sum.tail_bound}};
    if (o.quad) {
      double diff = std::abs(*o.quad - o.sum.value);
      row.insert(row.end(), {str(o.quad->real()), str(o.quad->imag()), str(diff)});
      j["quadrature"] = complex_json(*o.quad);
      j["difference"] = diff;
    }
    rep.table.rows.push_back(row);
    arr.push_back(j);
  }
  rep.json = {{"job", cfg.job}, {"rows", arr}};
  return rep;
}

inline Report job_convexity(const JobConfig& cfg, const RunOptions& opt) {
  if (!cfg.s0) throw ConfigError("job 'convexity' needs 's0'");
  auto levels = cfg.levels();
  auto results = parallel_map(
      levels.size(),
      [&](std::size_t k) {
        auto q = level_q(cfg.p, levels[k]);
        auto grid = cfg.grid_spec().at_level(q);
        std::erase_if(grid, [&](const Rational& s) { return s < *cfg.s0; });
        return convex_functional(cfg.ideal_I(), cfg.ideal_J(), levels[k], *cfg.s0, grid, cfg.budget);
      },
      opt.threads);
  Report rep;
  rep.table.columns = {"n", "q", "s", "value"};
  Json arr = Json::array();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& r = results[k];
    Json vals = Json::array();
    for (const auto& [s, v] : r.values) {
      rep.table.rows.push_back({str(levels[k]), str(r.q), str(s), str(v)});
      vals.push_back({{"s", str(s)}, {"value", str(v)}});
    }
    Json j = {{"n", levels[k]}, {"q", r.q}, {"s0", str(r.s0)}, {"convex", r.convex()}, {"values", vals}};
    if (r.violation) j["violation_j"] = *r.violation;
    rep.failed = rep.failed || !r.convex();
    arr.push_back(j);
  }
  rep.json = {{"job", cfg.job}, {"levels", arr}};
  return rep;
}

inline Report job_boij(const JobConfig& cfg, const RunOptions& opt) {
  if (!cfg.j_max) throw ConfigError("job 'boij' needs 'j_max'");
  auto levels = cfg.levels();
  auto results = parallel_map(
      levels.size(), [&](std::size_t k) { return boij_ratios(cfg.ideal_I(), cfg.ideal_J(), levels[k], *cfg.j_max, cfg.budget); },
      opt.threads);
  Report rep;
  rep.table.columns = {"n", "q", "j", "ratio"};
  Json arr = Json::array();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& r = results[k];
    Json ratios = Json::array();
    for (std::size_t j = 0; j < r.ratios.size(); ++j) {
      rep.table.rows.push_back({str(levels[k]), str(r.q), str(j), str(r.ratios[j])});
      ratios.push_back(str(r.ratios[j]));
    }
    Json j = {{"n", levels[k]}, {"q", r.q}, {"mu", r.mu}, {"non_increasing", r.non_increasing()}, {"ratios", ratios}};
    if (r.violation) j["violation_j"] = *r.violation;
    rep.failed = rep.failed || !r.non_increasing();
    arr.push_back(j);
  }
  rep.json = {{"job", cfg.job}, {"levels", arr}};
  return rep;
}

inline Json residual_json(const std::vector<ResidualPoint>& pts, Table& table, const std::string& prefix) {
  Json arr = Json::array();
  for (const auto& p : pts) {
    table.rows.push_back({prefix, str(p.s), str(p.lhs), str(p.rhs), str(p.residual())});
    arr.push_back({{"s", str(p.s)}, {"lhs", str(p.lhs)}, {"rhs", str(p.rhs)}, {"residual", str(p.residual())}});
  }
  return arr;
}

inline Report job_scaling(const JobConfig& cfg, const RunOptions& opt) {
  if (!cfg.n0) throw ConfigError("job 'scaling-check' needs 'n0'");
  auto levels = cfg.levels();
  auto reps = parallel_map(
      levels.size(),
      [&](std::size_t k) {
        auto grid = cfg.grid_spec().at_level(level_q(cfg.p, levels[k]));
        return scaling_check(cfg.ideal_I(), cfg.ideal_J(), *cfg.n0, levels[k], grid, cfg.budget);
      },
      opt.threads);
  Report rep;
  rep.table.columns = {"n", "law", "s", "lhs", "rhs", "residual"};
  Json arr = Json::array();
  Rational fitted_C = 0;
  for (const auto& r : reps) {
    Table t;
    Json power = residual_json(r.power, t, "power");
    Json frob = residual_json(r.frobenius, t, "frobenius");
    for (auto& row : t.rows) {
      row.insert(row.begin(), str(r.n));
      rep.table.rows.push_back(row);
    }
    Rational mp = r.max_power_residual(), mf = r.max_frobenius_residual();
    Rational C = std::max(mp, mf) * BigInt(r.q);
    fitted_C = std::max(fitted_C, C);
    arr.push_back({{"n", r.n},
                   {"q", r.q},
                   {"n0", r.n0},
                   {"max_power_residual", str(mp)},
                   {"max_frobenius_residual", str(mf)},
                   {"C_level", str(C)},
                   {"power", power},
                   {"frobenius", frob}});
  }
  rep.json = {{"job", cfg.job}, {"fitted_C", str(fitted_C)}, {"levels", arr}};
  return rep;
}

inline Report job_adjoin(const JobConfig& cfg, const RunOptions& opt) {
  auto levels = cfg.levels();
  auto reps = parallel_map(
      levels.size(),
      [&](std::size_t k) {
        auto grid = cfg.grid_spec().at_level(level_q(cfg.p, levels[k]));
        return adjoin_variable_check(cfg.ideal_I(), cfg.ideal_J(), cfg.alpha, cfg.beta, levels[k], grid, cfg.budget);
      },
      opt.threads);
  Report rep;
  rep.table.columns = {"n", "s", "lhs", "rhs", "residual"};
  Json arr = Json::array();
  for (const auto& r : reps) {
    Table t;
    Json pts = residual_json(r.points, t, str(r.n));
    for (auto& row : t.rows) rep.table.rows.push_back(row);
    arr.push_back({{"n", r.n},
                   {"q", r.q},
                   {"alpha", r.alpha},
                   {"beta", r.beta},
                   {"max_residual", str(r.max_residual())},
                   {"points", pts}});
  }
  rep.json = {{"job", cfg.job}, {"levels", arr}};
  return rep;
}

inline Json side_json(const AsymptoteSide& side, Table& table, const std::string& name) {
  Json ratios = Json::array();
  for (const auto& [s, v] : side.ratios) {
    table.rows.push_back({name, str(side.exponent), str(s), str(v)});
    ratios.push_back({{"s", str(s)}, {"ratio", str(v)}});
  }
  Json j = {{"exponent", side.exponent}, {"value", str(side.value)}, {"drift", str(side.drift)}, {"ratios", ratios}};
  if (side.reference) j["reference"] = {{"name", side.reference_name}, {"value", str(*side.reference)}};
  return j;
}

inline Report job_asymptotes(const JobConfig& cfg) {
  auto a = asymptote_check(cfg.ideal_I(), cfg.ideal_J(), cfg.levels(), 4, cfg.budget);
  Report rep;
  rep.table.columns = {"side", "exponent", "s", "ratio"};
  rep.json = {{"job", cfg.job},
              {"near_zero", side_json(a.near_zero, rep.table, "near_zero")},
              {"at_infinity", side_json(a.at_infinity, rep.table, "at_infinity")}};
  return rep;
}

inline Report job_inequalities(const JobConfig& cfg) {
  if (!cfg.r) throw ConfigError("job 'inequalities' needs 'r' (number of parameters generating I); it is not guessed");
  InequalityInputs in{*cfg.r, cfg.levels(), {}};
  if (cfg.grid) in.grid = cfg.grid->at_level(level_q(cfg.p, in.levels.front()));
  auto result = inequality_report(cfg.ideal_I(), cfg.ideal_J(), in, cfg.budget);
  const auto& checks = result.checks;
  Report rep;
  rep.table.columns = {"check", "inputs", "level", "lhs", "relation", "rhs", "holds", "witness"};
  Json arr = Json::array();
  for (const auto& c : checks) {
    rep.table.rows.push_back({c.check, c.inputs, str(c.level), str(c.lhs), c.relation, str(c.rhs), str(c.holds),
                              c.witness.value_or("")});
    Json j = {{"check", c.check},
              {"inputs", c.inputs},
              {"level", c.level},
              {"lhs", str(c.lhs)},
              {"relation", c.relation},
              {"rhs", str(c.rhs)},
              {"holds", c.holds}};
    if (c.witness) j["witness"] = *c.witness;
    arr.push_back(j);
  }
  Json skipped = Json::array();
  for (const auto& [name, reason] : result.skipped) skipped.push_back({{"check", name}, {"reason", reason}});
  rep.json = {{"job", cfg.job}, {"checks", arr}, {"skipped", skipped}};
  return rep;
}

}  // namespace detail

inline Report run_verify_suite(unsigned threads);

inline Report run_job(const JobConfig& cfg, const RunOptions& opt = {}) {
  const auto& job = cfg.job;
  if (job == "h-grid") return detail::job_h_grid(cfg, opt);
  if (job == "density-grid" || job == "graded-density") return detail::job_density_grid(cfg, opt);
  if (job == "ehk") return detail::job_ehk(cfg);
  if (job == "multiplicity") return detail::job_multiplicity(cfg);
  if (job == "fthreshold" || job == "flimbus") return detail::job_threshold(cfg, opt);
  if (job == "stable-point") return detail::job_stable_point(cfg, opt);
  if (job == "fp-grid") return detail::job_fp_grid(cfg, opt);
  if (job == "convexity") return detail::job_convexity(cfg, opt);
  if (job == "boij") return detail::job_boij(cfg, opt);
  if (job == "scaling-check") return detail::job_scaling(cfg, opt);
  if (job == "adjoin-check") return detail::job_adjoin(cfg, opt);
  if (job == "asymptotes") return detail::job_asymptotes(cfg);
  if (job == "inequalities") return detail::job_inequalities(cfg);
  if (job == "verify") return run_verify_suite(opt.threads);
  throw ConfigError("unknown job '" + job + "'");
}

// ------------------------------------------------------------ result cache

// Length tables persisted as JSON files named by an FNV-1a hash of the table
// key; the full key is stored inside and checked on load.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string hash(const std::string& key) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  std::filesystem::path path_for(const std::string& key) const { return dir_ / (hash(key) + ".json"); }

  // Seeds every table created from now on with the stored values.
  void attach(LengthTableRegistry& registry = length_tables()) {
    registry.set_loader([this](const std::string& key, LengthTable& table) { load(key, table); });
  }

  bool load(const std::string& key, LengthTable& table) const {
    std::ifstream in(path_for(key));
    if (!in) return false;
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::exception&) {
      return false;
    }
    if (!doc.is_object() || doc.value("key", "") != key) return false;
    std::vector<std::uint64_t> values = doc["values"].get<std::vector<std::uint64_t>>();
    std::optional<std::int64_t> stable;
    if (doc["stable"].is_number_integer()) stable = doc["stable"].get<std::int64_t>();
    table.preload(values, stable);
    return true;
  }

  // Writes the finite prefix of every table in the registry.
  std::size_t store_all(const LengthTableRegistry& registry = length_tables()) const {
    std::filesystem::create_directories(dir_);
    std::size_t written = 0;
    registry.for_each([&](const std::string& key, const LengthTable& table) {
      auto snap = table.snapshot();
      std::vector<std::uint64_t> values;
      for (const auto& v : snap.values) {
        if (!v) break;
        values.push_back(*v);
      }
      if (values.empty()) return;
      const std::int64_t stable = snap.stable.value_or(-1);
      Json doc = {{"key", key}, {"values", values}, {"stable", nullptr}};
      if (stable >= 0 && static_cast<std::size_t>(stable) <= values.size()) doc["stable"] = stable;
      auto path = path_for(key);
      auto tmp = path;
      tmp += ".tmp";
      {
        std::ofstream out(tmp);
        out << doc.dump() << '\n';
      }
      std::filesystem::rename(tmp, path);
      ++written;
    });
    return written;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace hk

#include "hk/verify.hpp"
