// Command-line front end: reproducible renders, curve traces, lemma
// verifications and raster topology checks.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cstar/curve.hpp"
#include "cstar/fixtures.hpp"
#include "cstar/image_io.hpp"
#include "cstar/orbit.hpp"
#include "cstar/raster.hpp"
#include "cstar/verify.hpp"

namespace {

using nlohmann::json;

struct VerificationFailed {};

// Resolution order: command-line flag, then config file, then default.
struct ConfigFile {
  json data = json::object();

  void load(const std::string& path) {
    const auto bytes = cstar::read_file(path);
    data = json::parse(bytes.begin(), bytes.end());
  }
  template <typename T>
  void fill(const CLI::Option* opt, const std::string& key, T* var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (data.contains(key)) *var = data.at(key).get<T>();
  }
};

struct Manifest {
  json entries = json::array();
  std::string path;

  void add(const std::string& artifact, const std::string& command,
           const json& params) {
    entries.push_back({{"artifact", artifact},
                       {"command", command},
                       {"params", params}});
  }
  void write(const std::string& first_artifact) const {
    if (entries.empty()) return;
    std::string out = path;
    if (out.empty()) {
      const std::filesystem::path p(first_artifact);
      out = (p.has_parent_path() ? p.parent_path() : std::filesystem::path("."))
                .string() +
            "/manifest.json";
    }
    cstar::atomic_write_file(out, json({{"artifacts", entries}}).dump(2) + "\n");
  }
};

std::vector<double> parse_csv_doubles(const std::string& s, size_t want) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    const size_t comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma - pos);
    out.push_back(std::stod(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != want) {
    throw CLI::ValidationError("expected " + std::to_string(want) +
                               " comma-separated numbers: " + s);
  }
  return out;
}

json grid_params(const cstar::GridSpec& g) {
  return {{"mode", g.mode == cstar::GridMode::kLogPolar ? "logpolar" : "cartesian"},
          {"x0", g.x0}, {"x1", g.x1}, {"y0", g.y0}, {"y1", g.y1},
          {"width", g.width}, {"height", g.height}};
}

int run(int argc, char** argv) {
  CLI::App app{"dynamics toolkit for lambda z exp(e^{-z}/z) on the punctured plane"};
  app.require_subcommand(1);

  ConfigFile config;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)");
  Manifest manifest;
  app.add_option("--manifest", manifest.path, "manifest output path");

  // Defaults shared across commands.
  double lambda = 32.0;
  int horizon = 12;
  int budget = 64;
  int px = 1024;
  int threads = 0;

  // ---- render ----
  auto* render = app.add_subcommand("render", "escape-layer rasters");
  std::string window_s, logpolar_s, layer = "h-entry", render_out = "render.ppm";
  int height = 0;
  auto* r_lambda = render->add_option("--lambda", lambda, "family parameter");
  auto* r_window = render->add_option("--window", window_s, "x0,x1,y0,y1");
  auto* r_logpolar = render->add_option("--logpolar", logpolar_s, "log10 moduli r0,r1");
  auto* r_px = render->add_option("--px", px, "pixels per side");
  render->add_option("--height", height, "pixel rows (defaults to --px)");
  auto* r_layer = render->add_option("--layer", layer, "h-entry | i-complement")
                      ->check(CLI::IsMember({"h-entry", "i-complement"}));
  auto* r_budget = render->add_option("--budget", budget, "iteration budget");
  auto* r_horizon = render->add_option("--horizon", horizon, "I_N horizon");
  auto* r_threads = render->add_option("--threads", threads, "0 = auto/env");
  auto* r_out = render->add_option("--out", render_out, "output PPM/PBM");

  // ---- trace ----
  auto* trace = app.add_subcommand("trace", "implicit curve traces to CSV");
  std::string trace_kind = "preimage-rplus", trace_out = "curves.csv";
  std::string t_window_s = "-2,2,-2,2";
  int res = 1024, res_y = 0, branch_n = 25;
  auto* t_lambda = trace->add_option("--lambda", lambda, "family parameter");
  trace->add_option("--kind", trace_kind, "preimage-rplus | solutions | barrier | an-prime")
      ->check(CLI::IsMember({"preimage-rplus", "solutions", "barrier", "an-prime"}));
  trace->add_option("--window", t_window_s, "x0,x1,y0,y1")->required();
  auto* t_res = trace->add_option("--res", res, "cells across");
  trace->add_option("--ny", res_y, "cells down (defaults to --res)");
  trace->add_option("--n", branch_n, "curve index for an-prime");
  trace->add_option("--out", trace_out, "output CSV");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "numerical lemma verification");
  verify->require_subcommand(1);
  std::string verify_json_path;
  double xmax = 60.0, ymax = 60.0, chan_L = 2.0, chan_K = 4.0, chan_R = 0.0;
  long long samples = 1000000;
  int nlo = 5, nhi = 50;
  std::string chain_name = "fixed-point";
  int shadow_depth = 60;

  auto* v_growth = verify->add_subcommand("growth", "Re f >= 0.7 lambda Re z on H");
  auto* vg_lambda = v_growth->add_option("--lambda", lambda);
  v_growth->add_option("--xmax", xmax);
  v_growth->add_option("--ymax", ymax);
  auto* vg_samples = v_growth->add_option("--samples", samples);
  v_growth->add_option("--json", verify_json_path);

  auto* v_half = verify->add_subcommand("halfline", "Re f >= 2 on y = 2 n pi half-lines");
  auto* vh_lambda = v_half->add_option("--lambda", lambda);
  v_half->add_option("--nlo", nlo);
  v_half->add_option("--nhi", nhi);
  v_half->add_option("--json", verify_json_path);

  auto* v_chan = verify->add_subcommand("channels", "channel modulus bounds");
  auto* vc_lambda = v_chan->add_option("--lambda", lambda);
  v_chan->add_option("--L", chan_L, "growth factor");
  v_chan->add_option("--K", chan_K, "pair modulus ratio");
  v_chan->add_option("--R", chan_R, "channel parameter; 0 = search by doubling");
  auto* vc_samples = v_chan->add_option("--samples", samples);
  v_chan->add_option("--json", verify_json_path);

  auto* v_shadow = verify->add_subcommand("shadow", "box-chain shadowing");
  auto* vs_lambda = v_shadow->add_option("--lambda", lambda);
  v_shadow->add_option("--chain", chain_name, "fixed-point | orbit")
      ->check(CLI::IsMember({"fixed-point", "orbit"}));
  v_shadow->add_option("--depth", shadow_depth);
  v_shadow->add_option("--json", verify_json_path);

  // ---- topo ----
  auto* topo = app.add_subcommand("topo", "raster topology checks");
  topo->require_subcommand(1);
  std::string fixture = "circles-with-spoke", witness_path = "witness.json";
  std::string in_path, out_path = "out.pbm", point_s = "1,0";
  int fixture_n = 5, copies = 2;
  std::uint64_t seed = 1;

  auto* t_web = topo->add_subcommand("webcheck", "C*-spider's-web predicate on a fixture");
  t_web->alias("websheck");
  t_web->add_option("--fixture", fixture,
                    "circles-with-spoke | concentric-circles | single-circle | "
                    "plane-squares-web | random");
  t_web->add_option("--n", fixture_n, "fixture size parameter");
  auto* tw_px = t_web->add_option("--px", px, "raster side");
  t_web->add_option("--seed", seed, "seed for random fixtures");
  t_web->add_option("--witness", witness_path, "witness JSON output");

  auto* t_lift = topo->add_subcommand("lift", "exp-lift a logpolar PBM to the strip");
  t_lift->add_option("--in", in_path, "input PBM (with .grid.json sidecar)")->required();
  t_lift->add_option("--copies", copies, "fundamental strips");
  t_lift->add_option("--out", out_path, "output PBM");

  auto* t_sep = topo->add_subcommand("separate", "separation predicate at a point");
  t_sep->add_option("--in", in_path, "input PBM (with .grid.json sidecar)")->required();
  t_sep->add_option("--point", point_s, "x,y of the probe point");
  bool invert = false;
  t_sep->add_flag("--invert", invert, "complement the mask first (e.g. to turn an i-complement raster into the I set)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints usage or the error message
    return code == 0 ? 0 : 2;
  }

  if (!config_path.empty()) config.load(config_path);
  config.fill(r_lambda, "lambda", &lambda);
  config.fill(r_horizon, "horizon", &horizon);
  config.fill(r_budget, "budget", &budget);
  config.fill(r_px, "px", &px);
  config.fill(r_threads, "threads", &threads);
  for (const CLI::Option* o : {vg_lambda, vh_lambda, vc_lambda, vs_lambda, t_lambda}) {
    config.fill(o, "lambda", &lambda);
  }
  config.fill(vg_samples, "samples", &samples);
  config.fill(vc_samples, "samples", &samples);
  config.fill(t_res, "res", &res);
  config.fill(tw_px, "px", &px);
  config.fill(r_layer, "layer", &layer);
  config.fill(r_window, "window", &window_s);
  config.fill(r_logpolar, "logpolar", &logpolar_s);
  config.fill(r_out, "out", &render_out);

  if (render->parsed()) {
    const int h = height > 0 ? height : px;
    cstar::GridSpec grid;
    if (!logpolar_s.empty()) {
      const auto v = parse_csv_doubles(logpolar_s, 2);
      grid = cstar::GridSpec::logpolar(v[0], v[1], px, h);
    } else {
      const std::string w = window_s.empty() ? "-6,6,-6,6" : window_s;
      const auto v = parse_csv_doubles(w, 4);
      grid = cstar::GridSpec::cartesian(v[0], v[1], v[2], v[3], px, h);
    }
    const cstar::MapParams params(lambda);
    json jp = grid_params(grid);
    jp["lambda"] = lambda;
    jp["layer"] = layer;
    jp["threads_requested"] = threads;
    if (layer == "h-entry") {
      jp["budget"] = budget;
      const cstar::Image im = cstar::render_h_entry(params, grid, budget, threads);
      cstar::atomic_write_file(render_out, cstar::encode_ppm(im));
    } else {
      jp["horizon"] = horizon;
      const cstar::RasterSet mask =
          cstar::render_i_complement(params, grid, horizon, threads);
      cstar::save_raster_pbm(render_out, mask);
    }
    manifest.add(render_out, "render", jp);
    manifest.write(render_out);
    std::printf("wrote %s\n", render_out.c_str());
    return 0;
  }

  if (trace->parsed()) {
    const auto v = parse_csv_doubles(t_window_s, 4);
    cstar::TraceRequest req;
    req.window = {v[0], v[1], v[2], v[3]};
    req.nx = res;
    req.ny = res_y > 0 ? res_y : res;
    const cstar::MapParams params(lambda);
    std::vector<cstar::CurvePolyline> curves;
    json jp = {{"lambda", lambda}, {"kind", trace_kind},
               {"window", t_window_s}, {"nx", req.nx}, {"ny", req.ny}};
    if (trace_kind == "preimage-rplus") {
      curves = cstar::trace_preimage_rplus(params, req);
    } else if (trace_kind == "solutions") {
      curves = cstar::trace_real_line_preimages(params, req);
    } else if (trace_kind == "barrier") {
      curves = cstar::trace_barrier(req);
    } else {
      const cstar::ANPrimeResult r = cstar::approx_A_n_prime(branch_n, params, req);
      curves.push_back(r.curve);
      jp["n"] = branch_n;
      jp["rightmost_x"] = r.rightmost_x;
      std::printf("rightmost extent of A_%d': x = %.6f\n", branch_n, r.rightmost_x);
    }
    cstar::atomic_write_file(trace_out, cstar::curves_csv(curves));
    manifest.add(trace_out, "trace", jp);
    manifest.write(trace_out);
    std::printf("wrote %s (%zu branches)\n", trace_out.c_str(), curves.size());
    return 0;
  }

  if (verify->parsed()) {
    const cstar::MapParams params(lambda);
    std::vector<cstar::MarginReport> reports;
    std::string command;
    json jp = {{"lambda", lambda}};
    if (v_growth->parsed()) {
      command = "verify growth";
      reports.push_back(cstar::verify_growth(params, xmax, ymax, samples, threads));
    } else if (v_half->parsed()) {
      command = "verify halfline";
      reports.push_back(cstar::verify_halfline(params, nlo, nhi));
    } else if (v_chan->parsed()) {
      command = "verify channels";
      double r_used = chan_R;
      if (r_used <= 0.0) r_used = cstar::find_channel_R(params, chan_L, chan_K, samples / 5);
      jp["R"] = r_used;
      reports = cstar::verify_channels(params, r_used, chan_L, chan_K, samples);
    } else {
      command = "verify shadow";
      cstar::BoxChain chain;
      if (chain_name == "fixed-point") {
        const std::vector<double> fp = cstar::fixed_points_negative_axis(params);
        if (fp.empty()) throw CLI::ValidationError("no fixed point for this lambda");
        chain = cstar::fixtures::constant_box_chain({fp[0], 0.0}, 0.04, 10);
      } else {
        chain = cstar::fixtures::orbit_box_chain(params, {3.0, 0.0}, 6, 0.2);
      }
      const cstar::CPoint z = cstar::shadow_orbit(params, chain, shadow_depth);
      const double resid = cstar::shadow_residual(params, chain, z);
      cstar::MarginReport rep;
      rep.lemma = "shadow:" + chain_name;
      rep.samples = static_cast<long long>(chain.boxes.size());
      rep.worst_margin = 1e-8 - resid;
      rep.worst_location = z;
      rep.pass = resid <= 1e-8;
      rep.params = {{"lambda", lambda}, {"depth", static_cast<double>(shadow_depth)}};
      reports.push_back(rep);
      std::printf("shadow point: %.12g + %.12gi (residual %.3g)\n", z.x, z.y, resid);
    }
    bool all_pass = true;
    for (const cstar::MarginReport& rep : reports) {
      all_pass = all_pass && rep.pass;
      std::printf("%-22s margin % .6e  %s\n", rep.lemma.c_str(), rep.worst_margin,
                  rep.pass ? "pass" : "FAIL");
    }
    if (!verify_json_path.empty()) {
      cstar::atomic_write_file(verify_json_path, reports_json(reports));
      manifest.add(verify_json_path, command, jp);
      manifest.write(verify_json_path);
    }
    if (!all_pass) throw VerificationFailed{};
    return 0;
  }

  if (t_web->parsed()) {
    const cstar::RasterSet r = cstar::fixtures::by_name(fixture, fixture_n, px, seed);
    cstar::WebCheck check;
    if (r.grid.mode == cstar::GridMode::kLogPolar) {
      check = cstar::is_cstar_spiders_web(r);
    } else {
      // Plane fixtures are projected through exp first.
      const double rho = r.grid.x1 / 2.302585092994046 * 1.05;
      const cstar::GridSpec target = cstar::GridSpec::logpolar(-rho, rho, 256, 256);
      check = cstar::is_cstar_spiders_web(cstar::exp_project(r, target));
    }
    cstar::atomic_write_file(witness_path, cstar::witness_json(check));
    manifest.add(witness_path, "topo webcheck",
                 {{"fixture", fixture}, {"n", fixture_n}, {"px", px}, {"seed", seed}});
    manifest.write(witness_path);
    std::printf("%s: %s (witness rings: %zu)\n", fixture.c_str(),
                check.is_web ? "C*-spider's web" : "not a web", check.witness.size());
    if (!check.is_web) throw VerificationFailed{};
    return 0;
  }

  if (t_lift->parsed()) {
    const cstar::RasterSet r = cstar::load_raster_pbm(in_path);
    const cstar::RasterSet lifted = cstar::exp_lift(r, copies);
    cstar::save_raster_pbm(out_path, lifted);
    manifest.add(out_path, "topo lift", {{"in", in_path}, {"copies", copies}});
    manifest.write(out_path);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (t_sep->parsed()) {
    cstar::RasterSet r = cstar::load_raster_pbm(in_path);
    if (invert) {
      for (auto& c : r.mask) c = c ? 0 : 1;
    }
    const auto v = parse_csv_doubles(point_s, 2);
    int row = 0, col = 0;
    if (!r.grid.cell_of({v[0], v[1]}, &row, &col)) {
      throw CLI::ValidationError("point is outside the raster window");
    }
    const bool sep = cstar::separates(r, row, col);
    std::printf("separates(%g, %g) = %s\n", v[0], v[1], sep ? "true" : "false");
    if (!sep) throw VerificationFailed{};
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const VerificationFailed&) {
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
