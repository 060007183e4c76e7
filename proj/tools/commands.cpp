#include "commands.hpp"

#include "moran/furstenberg.hpp"
#include "moran/measures.hpp"
#include "moran/microsets.hpp"
#include "moran/pressure.hpp"
#include "moran/render.hpp"
#include "moran/separation.hpp"
#include "moran/spec_io.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef MORAN_VERSION
#define MORAN_VERSION "0.0.0"
#endif

namespace moran::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string real_str(long double x, int precision) {
  char buf[64];
  if (precision == 53) {
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
  } else {
    std::snprintf(buf, sizeof buf, "%.20Lg", x);
  }
  return buf;
}

std::string vector_str(const Vector& x) {
  std::string s = format_rational(x(0));
  for (Eigen::Index k = 1; k < x.size(); ++k) s += ";" + format_rational(x(k));
  return s;
}

/// Collects output files; each one is written to a temp file and renamed.
class Outputs {
 public:
  Outputs(const Options& opt) : dir_(opt.out), format_(opt.format) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& content) {
    const std::string ext = fs::path(name).extension().string().substr(1);
    if (!format_.empty() && ext != format_) return;
    const fs::path path = dir_ / name;
    const fs::path tmp = dir_ / (name + ".tmp");
    {
      std::ofstream f(tmp, std::ios::binary);
      if (!f) throw ValidationError("cannot write " + tmp.string());
      f << content;
    }
    fs::rename(tmp, path);
    paths_.push_back(path.string());
  }

  void write(const std::string& name, const json& doc) { write(name, doc.dump(2) + "\n"); }

  void write_report(const json& report) {
    const fs::path path = dir_ / (report["command"].get<std::string>() + ".run.json");
    const fs::path tmp = dir_ / (path.filename().string() + ".tmp");
    {
      std::ofstream f(tmp, std::ios::binary);
      f << report.dump(2) << "\n";
    }
    fs::rename(tmp, path);
  }

  const std::vector<std::string>& paths() const { return paths_; }

 private:
  fs::path dir_;
  std::string format_;
  std::vector<std::string> paths_;
};

struct Context {
  const Options& opt;
  std::optional<IfsSpec> spec;
  Outputs out;
  json params = json::object();
  std::string summary;
};

std::size_t or_default(std::size_t v, std::size_t d) { return v == 0 ? d : v; }

MarkovMeasure<Rational> measure_of(Context& ctx) {
  const IfsSpec& spec = *ctx.spec;
  MeasureSpec ms;
  if (!ctx.opt.bernoulli.empty()) {
    std::vector<Rational> p;
    std::stringstream ss(ctx.opt.bernoulli);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(parse_rational(item));
    ms = MeasureSpec::bernoulli(std::move(p));
    ctx.params["bernoulli"] = ctx.opt.bernoulli;
  } else if (spec.measure) {
    ms = *spec.measure;
  } else {
    throw ValidationError("measure: the spec has no measure and --bernoulli was not given");
  }
  const auto k = static_cast<Eigen::Index>(spec.alphabet());
  if (static_cast<Eigen::Index>(ms.initial.size()) != k) throw ValidationError("measure: expected one weight per symbol");
  MarkovMeasure<Rational>::Vec init(k);
  MarkovMeasure<Rational>::Mat trans(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    init(a) = ms.initial[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < k; ++b) trans(a, b) = ms.transition[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  return MarkovMeasure<Rational>(spec.subshift, init, trans);
}

PressureMethod method_of(const std::string& m) {
  if (m == "spectral") return PressureMethod::spectral;
  if (m == "finite") return PressureMethod::finite_level;
  return PressureMethod::automatic;
}

double tol_of(const Context& ctx, PressureMethod method) {
  if (ctx.opt.tol > 0) return ctx.opt.tol;
  if (method == PressureMethod::automatic) {
    method = ctx.spec->system.is_similarity() ? PressureMethod::spectral : PressureMethod::finite_level;
  }
  return method == PressureMethod::spectral ? 1e-10 : 1e-6;
}

template <class Scalar>
void pressure_command(Context& ctx) {
  const auto mc = ctx.spec->construction();
  const double tol = tol_of(ctx, method_of(ctx.opt.method));
  ctx.params["method"] = ctx.opt.method;
  ctx.params["tol"] = tol;
  const auto c = pressure_zero<Scalar>(mc, static_cast<Scalar>(tol), method_of(ctx.opt.method), ctx.opt.budget);
  std::string csv = "t,pressure\n";
  for (const auto& [t, p] : c.samples) csv += real_str(t, ctx.opt.precision) + "," + real_str(p, ctx.opt.precision) + "\n";
  ctx.out.write("pressure.csv", csv);
  json doc = {{"method", method_name(c.method)},
              {"t_star", static_cast<double>(c.t_star)},
              {"t_star_text", real_str(c.t_star, ctx.opt.precision)},
              {"bracket", {static_cast<double>(c.bracket_lo), static_cast<double>(c.bracket_hi)}},
              {"n_used", c.n_used},
              {"note", c.note}};
  ctx.out.write("pressure.json", doc);
  char buf[128];
  std::snprintf(buf, sizeof buf, "t* = %.10Lg (%s)", static_cast<long double>(c.t_star), method_name(c.method));
  ctx.summary = buf;
}

template <class Scalar>
void dim_command(Context& ctx) {
  const auto mc = ctx.spec->construction();
  const std::size_t box_depth = or_default(ctx.opt.depth, 10);
  const double tol = tol_of(ctx, PressureMethod::automatic);
  ctx.params["depth"] = box_depth;
  ctx.params["tol"] = tol;
  ctx.params["evidence"] = ctx.opt.evidence;
  std::optional<ClusterReport> evidence;
  if (ctx.opt.evidence) evidence = fcp_scan(mc, ScanGrid{}, CountMode::words, ctx.opt.budget);
  const auto rep = dimension_report<Scalar>(mc, evidence, static_cast<Scalar>(tol), box_depth, ctx.opt.budget);
  json box = json::array();
  for (std::size_t k = 0; k < rep.box.levels.size(); ++k) {
    box.push_back({{"level", rep.box.levels[k]},
                   {"log_inv_scale", static_cast<double>(rep.box.log_inv_scale[k])},
                   {"log_count", static_cast<double>(rep.box.log_count[k])}});
  }
  json doc = {{"t_star", static_cast<double>(rep.root.t_star)},
              {"t_star_text", real_str(rep.root.t_star, ctx.opt.precision)},
              {"method", method_name(rep.root.method)},
              {"box_slope", static_cast<double>(rep.box.slope)},
              {"box_levels", std::move(box)},
              {"claim", rep.claim}};
  if (rep.evidence) doc["evidence_max_count"] = rep.evidence->max_count;
  ctx.out.write("dim.json", doc);
  char buf[160];
  std::snprintf(buf, sizeof buf, "t* = %.10Lg, box-count slope %.6Lg", static_cast<long double>(rep.root.t_star),
                static_cast<long double>(rep.box.slope));
  ctx.summary = buf;
}

void check_sep_command(Context& ctx) {
  const auto mc = ctx.spec->construction();
  ScanGrid grid;
  grid.sample_depth = or_default(ctx.opt.depth, 4);
  grid.num_radii = or_default(ctx.opt.n, 8);
  const CountMode mode = ctx.opt.count == "maps" ? CountMode::maps : CountMode::words;
  ctx.params["depth"] = grid.sample_depth;
  ctx.params["radii"] = grid.num_radii;
  ctx.params["count"] = ctx.opt.count;
  const auto rep = fcp_scan(mc, grid, mode, ctx.opt.budget);
  std::string csv = "x,r,count\n";
  for (const auto& s : rep.samples) csv += vector_str(s.x) + "," + format_rational(s.r) + "," + std::to_string(s.count) + "\n";
  ctx.out.write("check-sep.csv", csv);
  json doc = {{"count", ctx.opt.count},
              {"grid", rep.grid_description},
              {"max_count", rep.max_count},
              {"max_per_radius", rep.max_per_radius},
              {"stabilized", rep.stabilized}};
  if (rep.witness) {
    doc["witness"] = {{"x", vector_str(rep.witness->x)}, {"r", format_rational(rep.witness->r)}, {"count", rep.witness->count}};
  }
  ctx.out.write("check-sep.json", doc);
  ctx.summary = "max #Gamma(x,r) = " + std::to_string(rep.max_count) + (rep.stabilized ? " (stable)" : " (not stable)");
}

void dedup_command(Context& ctx) {
  const std::size_t depth = or_default(ctx.opt.depth, 8);
  ctx.params["depth"] = depth;
  const auto res = dedup(ctx.spec->system, depth, ctx.opt.budget);
  std::string csv = "n,gamma_count,accepted,rejected,distinct_maps\n";
  json levels = json::array();
  for (const auto& l : res.levels) {
    csv += std::to_string(l.length) + "," + l.gamma_count.str() + "," + std::to_string(l.accepted) + "," +
           std::to_string(l.rejected) + "," + std::to_string(l.distinct_maps) + "\n";
  }
  ctx.out.write("dedup.csv", csv);
  json forbidden = json::array();
  for (const auto& w : res.forbidden) forbidden.push_back(w.str());
  ctx.out.write("dedup.json", json{{"depth", depth}, {"forbidden", std::move(forbidden)}});
  ctx.summary = "#Gamma_" + std::to_string(depth) + " = " + res.levels.back().gamma_count.str() + ", " +
                std::to_string(res.forbidden.size()) + " forbidden words";
}

void microsets_command(Context& ctx) {
  const std::size_t depth = or_default(ctx.opt.depth, 6);
  ctx.params["depth"] = depth;
  const auto fam = microset_family(ctx.spec->subshift, depth, ctx.opt.budget);
  json members = json::array();
  for (const auto& m : fam.members) {
    json leaves = json::array();
    for (const auto& w : m.prefix_set.leaves()) leaves.push_back(w.str());
    members.push_back({{"provenance", m.provenance.str()}, {"count", m.prefix_set.leaves().size()}, {"leaves", std::move(leaves)}});
  }
  ctx.out.write("microsets.json", json{{"depth", depth}, {"complete", fam.complete}, {"members", std::move(members)}});
  const auto counts = branching_counts(ctx.spec->subshift, depth);
  std::string csv = "n,N_n\n";
  for (std::size_t k = 0; k < counts.size(); ++k) csv += std::to_string(k + 1) + "," + counts[k].str() + "\n";
  ctx.out.write("microsets.csv", csv);
  ctx.summary = std::to_string(fam.members.size()) + " microsets at depth " + std::to_string(depth) + ", N_" +
                std::to_string(depth) + " = " + counts.back().str();
}

void assouad_command(Context& ctx) {
  const std::size_t n_max = or_default(ctx.opt.depth, 16);
  ctx.params["depth"] = n_max;
  const auto est = assouad_estimate(ctx.spec->subshift, n_max, ctx.spec->system);
  std::string csv = "n,N_n,N_2n,t_n,quotient\n";
  for (std::size_t k = 0; k < n_max; ++k) {
    csv += std::to_string(k + 1) + "," + est.counts[k].str() + "," + est.counts[2 * k + 1].str() + "," +
           real_str(est.t[k], ctx.opt.precision) + "," + real_str(est.quotients[k], ctx.opt.precision) + "\n";
  }
  ctx.out.write("assouad.csv", csv);
  ctx.out.write("assouad.json", json{{"alpha", format_rational(est.alpha)},
                                     {"estimate", static_cast<double>(est.estimate)},
                                     {"fekete_bound", static_cast<double>(est.fekete_bound)},
                                     {"fekete_at", est.fekete_at}});
  char buf[128];
  std::snprintf(buf, sizeof buf, "Assouad estimate %.6Lg at n = %zu", est.estimate, n_max);
  ctx.summary = buf;
}

void localdim_command(Context& ctx) {
  const auto mc = ctx.spec->construction();
  const auto mu = measure_of(ctx);
  const std::size_t n = or_default(ctx.opt.n, 10000);
  const std::size_t samples = or_default(ctx.opt.samples, 16);
  ctx.params["n"] = n;
  ctx.params["samples"] = samples;
  ctx.params["radii"] = ctx.opt.radii;
  const auto rep = local_dim_symbolic(mu, mc, n, samples, ctx.opt.seed);
  std::string csv = "sample,n,quotient\n";
  json paths = json::array();
  for (std::size_t s = 0; s < rep.paths.size(); ++s) {
    const auto& p = rep.paths[s];
    for (std::size_t k = 0; k < p.levels.size(); ++k) {
      csv += std::to_string(s) + "," + std::to_string(p.levels[k]) + "," + real_str(p.quotients[k], ctx.opt.precision) + "\n";
    }
    paths.push_back({{"prefix", p.prefix.str()},
                     {"final", static_cast<double>(p.final_quotient)},
                     {"tail_min", static_cast<double>(p.tail_min)},
                     {"tail_slope", static_cast<double>(p.tail_slope)}});
  }
  ctx.out.write("localdim.csv", csv);
  json doc = {{"n", n},
              {"samples", samples},
              {"seed", ctx.opt.seed},
              {"mean", static_cast<double>(rep.mean)},
              {"std_dev", static_cast<double>(rep.std_dev)},
              {"min", static_cast<double>(rep.min)},
              {"max", static_cast<double>(rep.max)},
              {"paths", std::move(paths)}};
  if (ctx.opt.radii > 0) {
    std::vector<Rational> radii;
    for (std::size_t k = 1; k <= ctx.opt.radii; ++k) radii.push_back(pow(Rational(1, 2), static_cast<unsigned>(k)));
    GeometricOptions g;
    g.budget = ctx.opt.budget;
    const auto geo = local_dim_geometric_sampled(mu, mc, radii, samples, ctx.opt.seed, g);
    std::string gcsv = "sample,k,mass,quotient\n";
    for (std::size_t s = 0; s < geo.ladders.size(); ++s) {
      for (std::size_t k = 0; k < radii.size(); ++k) {
        gcsv += std::to_string(s) + "," + std::to_string(k + 1) + "," + real_str(geo.ladders[s][k].mass, ctx.opt.precision) +
                "," + real_str(geo.ladders[s][k].quotient, ctx.opt.precision) + "\n";
      }
    }
    ctx.out.write("localdim_geometric.csv", gcsv);
    json means = json::array();
    for (long double q : geo.mean_quotient) means.push_back(static_cast<double>(q));
    doc["geometric_mean_quotient"] = std::move(means);
  }
  ctx.out.write("localdim.json", doc);
  char buf[160];
  std::snprintf(buf, sizeof buf, "mean quotient %.6Lg over %zu samples at n = %zu (sd %.3Lg)", rep.mean, samples, n,
                rep.std_dev);
  ctx.summary = buf;
}

void entropy_command(Context& ctx) {
  const auto mu = measure_of(ctx);
  const std::size_t n = or_default(ctx.opt.n, 1000);
  const std::size_t samples = or_default(ctx.opt.samples, 64);
  ctx.params["n"] = n;
  ctx.params["samples"] = samples;
  json doc;
  std::string exact_text = "n/a";
  try {
    const auto e = entropy_exact(mu);
    json pi = json::array();
    for (long double x : e.stationary) pi.push_back(static_cast<double>(x));
    doc["exact"] = {{"value", static_cast<double>(e.value)}, {"stationary", std::move(pi)}};
    exact_text = real_str(e.value, 53);
  } catch (const ValidationError& e) {
    doc["exact"] = {{"value", nullptr}, {"reason", e.what()}};
  }
  const auto emp = entropy_empirical(mu, n, samples, ctx.opt.seed);
  doc["empirical"] = {{"value", static_cast<double>(emp.value)},
                      {"std_error", static_cast<double>(*emp.std_error)},
                      {"n", n},
                      {"samples", samples},
                      {"seed", ctx.opt.seed}};
  ctx.out.write("entropy.json", doc);
  char buf[200];
  std::snprintf(buf, sizeof buf, "entropy exact %s, empirical %.6Lg +- %.2Lg", exact_text.c_str(), emp.value,
                *emp.std_error);
  ctx.summary = buf;
}

void furstenberg_command(Context& ctx) {
  const std::size_t depth = or_default(ctx.opt.depth, 14);
  ctx.params["depth"] = depth;
  ctx.params["jmax"] = ctx.opt.jmax;
  ctx.params["anchor"] = ctx.opt.anchor;
  const auto rep = furstenberg_demo(depth, ctx.opt.jmax, ctx.opt.anchor);

  std::string csv = "j,m,n,u,v,distance,distance_approx,scale_left,scale_right,right_sandwiched\n";
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    const auto& r = rep.rows[k];
    const auto& s = rep.scales[k];
    csv += std::to_string(r.index.j) + "," + std::to_string(r.index.m) + "," + std::to_string(r.index.n) + "," +
           format_rational(r.u) + "," + format_rational(r.v) + "," + format_rational(r.distance) + "," +
           real_str(to_real(r.distance), 53) + "," + format_rational(s.left) + "," + format_rational(s.right) + "," +
           (s.right_sandwiched ? "true" : "false") + "\n";
  }
  ctx.out.write("furstenberg.csv", csv);

  json certs = json::array();
  for (const auto& c : rep.certificates) {
    json item = {{"u", format_rational(c.u)}, {"v", format_rational(c.v)}, {"u_word", c.u_word.str()},
                 {"v_word", c.v_word.str()}, {"certified", c.certified()}};
    if (c.witness) {
      item["k"] = format_rational(c.witness->value);
      item["k_half"] = c.witness->half;
      item["k_word"] = c.witness->word.str();
      item["k_endpoint"] = c.witness->endpoint;
    }
    certs.push_back(std::move(item));
  }
  ctx.out.write("certificates.json", json{{"depth", depth},
                                          {"gap", {format_rational(rep.gap.lo), format_rational(rep.gap.hi)}},
                                          {"eta", format_rational(rep.eta)},
                                          {"strictly_decreasing", rep.strictly_decreasing},
                                          {"certified", rep.certified},
                                          {"undecided", rep.undecided},
                                          {"windows", std::move(certs)}});

  const FurstenbergCovers covers(depth);
  std::vector<std::pair<std::string, GeoSet>> strips;
  for (const auto& r : rep.rows) {
    strips.emplace_back("A_" + std::to_string(r.index.j) + " (m=" + std::to_string(r.index.m) + ")",
                        geo_magnify(covers.finest(), r.u, r.v));
  }
  strips.emplace_back("K", furstenberg_k(covers.finest()));
  ctx.out.write("furstenberg.svg", render_strips(strips));

  char buf[200];
  std::snprintf(buf, sizeof buf, "gap (%s, %s), %zu/%zu windows certified, distances %s",
                format_rational(rep.gap.lo).c_str(), format_rational(rep.gap.hi).c_str(), rep.certified,
                rep.certified + rep.undecided, rep.strictly_decreasing ? "strictly decreasing" : "not strictly decreasing");
  ctx.summary = buf;
}

void render_command(Context& ctx) {
  const std::size_t depth = or_default(ctx.opt.depth, 6);
  ctx.params["depth"] = depth;
  ctx.params["gaps"] = ctx.opt.gaps;
  RenderStyle style;
  style.gaps = ctx.opt.gaps;
  ctx.out.write("render.svg", render_svg(ctx.spec->construction(), depth, style, ctx.opt.budget));
  ctx.summary = "rendered depth " + std::to_string(depth);
}

void dispatch(Context& ctx) {
  const std::string& c = ctx.opt.command;
  const bool dbl = ctx.opt.precision == 53;
  if (c == "pressure") {
    dbl ? pressure_command<double>(ctx) : pressure_command<long double>(ctx);
  } else if (c == "dim") {
    dbl ? dim_command<double>(ctx) : dim_command<long double>(ctx);
  } else if (c == "check-sep") {
    check_sep_command(ctx);
  } else if (c == "dedup") {
    dedup_command(ctx);
  } else if (c == "microsets") {
    microsets_command(ctx);
  } else if (c == "assouad") {
    assouad_command(ctx);
  } else if (c == "localdim") {
    localdim_command(ctx);
  } else if (c == "entropy") {
    entropy_command(ctx);
  } else if (c == "furstenberg-demo") {
    furstenberg_command(ctx);
  } else if (c == "render") {
    render_command(ctx);
  } else {
    throw ValidationError("unknown command " + c);
  }
}

int fail(const char* kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
  return code;
}

}  // namespace

int run(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  try {
    Context ctx{opt, std::nullopt, Outputs(opt)};
    if (!opt.spec.empty()) ctx.spec = parse_spec_file(opt.spec);
    ctx.params["seed"] = opt.seed;
    ctx.params["precision"] = opt.precision;
    dispatch(ctx);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    ctx.out.write_report(json{{"command", opt.command},
                              {"spec_digest", ctx.spec ? spec_digest(*ctx.spec) : ""},
                              {"parameters", ctx.params},
                              {"outputs", ctx.out.paths()},
                              {"seed", opt.seed},
                              {"wall_time_ms", ms},
                              {"version", MORAN_VERSION}});
    std::cout << opt.command << ": " << ctx.summary << "\n";
    return 0;
  } catch (const BudgetError& e) {
    return fail("budget", e.what(), 2);
  } catch (const ConvergenceError& e) {
    return fail("convergence", e.what(), 3);
  } catch (const ValidationError& e) {
    return fail("validation", e.what(), 1);
  } catch (const fs::filesystem_error& e) {
    return fail("validation", e.what(), 1);
  }
}

}  // namespace moran::cli
