// Command-line driver: exact angle combinatorics, double-parabolic tables,
// external rays, locus rendering, coverings and the verification suite for
// the cubic slices Per_1(e^{2 pi i p/q}).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "parabolica/address.hpp"
#include "parabolica/config.hpp"
#include "parabolica/covering.hpp"
#include "parabolica/locus.hpp"
#include "parabolica/render.hpp"
#include "parabolica/special_curve.hpp"
#include "parabolica/verify.hpp"

using json = nlohmann::json;
using namespace parabolica;

namespace {

json cycle_to_json(const RotationCycle& c, int p, int q, int m) {
  json j;
  j["d"] = c.multiplier_d;
  j["p"] = p;
  j["q"] = q;
  if (m >= 0) j["m"] = m;
  j["angles"] = json::array();
  for (const auto& a : c.angles) j["angles"].push_back(a.str());
  j["gaps"] = json::array();
  for (const auto& g : c.gaps) j["gaps"].push_back(g.str());
  j["base_angle"] = c.base_angle().str();
  if (c.rotation) j["rotation"] = c.rotation->str();
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path);
    f << text << "\n";
  }
}

int parse_slice_arg(const std::string& sl, int& p, int& q) {
  auto pos = sl.find('/');
  if (pos == std::string::npos) return 1;
  p = std::stoi(sl.substr(0, pos));
  q = std::stoi(sl.substr(pos + 1));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubic parabolic slice toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "ppm", slice_arg;
  unsigned long long seed = 0;
  int threads = 0;

  // angles
  auto* cmd_angles = app.add_subcommand("angles", "rotation cycles and theta_m tables");
  int ap = 1, aq = 2, am = -1;
  cmd_angles->add_option("p", ap, "rotation numerator")->required();
  cmd_angles->add_option("q", aq, "rotation denominator")->required();
  cmd_angles->add_option("--m", am, "emit only theta_m for this m");
  cmd_angles->add_option("--out", out_path, "output path (stdout when absent)");

  // double-parabolic
  auto* cmd_dp = app.add_subcommand("double-parabolic", "the q Type (D) parameters");
  int dp_p = 1, dp_q = 2;
  bool dp_wakes = false;
  cmd_dp->add_option("p", dp_p)->required();
  cmd_dp->add_option("q", dp_q)->required();
  cmd_dp->add_flag("--wakes", dp_wakes, "trace parameter rays for the wake angles");
  cmd_dp->add_option("--out", out_path);

  // render
  auto* cmd_render = app.add_subcommand("render", "classify a parameter window to an image");
  double cx = 0.0, cy = 0.0, width = 5.0;
  int res = 512;
  int budget_escape = 2048, budget_parabolic = 10000;
  cmd_render->add_option("--config", config_path, "config file (key = value with [sections])");
  cmd_render->add_option("--slice", slice_arg, "p/q");
  cmd_render->add_option("--window", [&cx, &cy, &width](const std::vector<std::string>& v) {
    if (v.size() != 1) return false;
    return std::sscanf(v[0].c_str(), "%lf,%lf,%lf", &cx, &cy, &width) == 3;
  }, "cx,cy,w");
  cmd_render->add_option("--res", res, "resolution");
  cmd_render->add_option("--budget-escape", budget_escape);
  cmd_render->add_option("--budget-parabolic", budget_parabolic);
  cmd_render->add_option("--seed", seed);
  cmd_render->add_option("--threads", threads);
  cmd_render->add_option("--out", out_path);
  cmd_render->add_option("--format", format, "ppm|csv");

  // ray
  auto* cmd_ray = app.add_subcommand("ray", "trace an external ray to CSV");
  std::string plane = "dynamical", angle_str = "0";
  int rp = 1, rq = 2, rsector = 0;
  double ra_re = 0.0, ra_im = 0.0, target_pot = 1e-6;
  cmd_ray->add_option("plane", plane, "dynamical|parameter")->required();
  cmd_ray->add_option("p", rp)->required();
  cmd_ray->add_option("q", rq)->required();
  cmd_ray->add_option("angle", angle_str, "exact rational angle num/den")->required();
  cmd_ray->add_option("--a-re", ra_re, "parameter a (dynamical plane)");
  cmd_ray->add_option("--a-im", ra_im);
  cmd_ray->add_option("--potential", target_pot, "target potential");
  cmd_ray->add_option("--sector", rsector, "parameter-ray component 0..2");
  cmd_ray->add_option("--out", out_path);

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run the invariant suites");
  int vp = 1, vq = 2;
  cmd_verify->add_option("p", vp)->required();
  cmd_verify->add_option("q", vq)->required();
  cmd_verify->add_option("--config", config_path, "optional config to validate first");

  // cover
  auto* cmd_cover = app.add_subcommand("cover", "double covering fiber report");
  int cp = 1, cq = 2, nsamples = 50;
  cmd_cover->add_option("p", cp)->required();
  cmd_cover->add_option("q", cq)->required();
  cmd_cover->add_option("--samples", nsamples);
  cmd_cover->add_option("--seed", seed);
  cmd_cover->add_option("--out", out_path);

  // curve
  auto* cmd_curve = app.add_subcommand("curve", "special curve polyline");
  int sp = 1, sq = 1, sm = 0, scount = 41;
  cmd_curve->add_option("p", sp)->required();
  cmd_curve->add_option("q", sq)->required();
  cmd_curve->add_option("--m", sm);
  cmd_curve->add_option("--samples", scount);
  cmd_curve->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_angles) {
      json j;
      if (am >= 0) {
        j = cycle_to_json(theta_m(ap, aq, am), ap, aq, am);
      } else {
        j["cycles"] = json::array();
        for (const auto& c : enumerate_cycles(3, ap, aq)) j["cycles"].push_back(cycle_to_json(c, ap, aq, -1));
        j["theta"] = json::array();
        for (int m = 0; m <= aq; ++m) j["theta"].push_back(cycle_to_json(theta_m(ap, aq, m), ap, aq, m));
      }
      emit(j.dump(2), out_path);
      return 0;
    }

    if (*cmd_dp) {
      Slice s = make_slice(dp_p, dp_q);
      DoubleParabolicSet dp = double_parabolic_params(s);
      assign_types(dp);
      if (dp_wakes) assign_wake_angles(dp);
      json j;
      j["p"] = dp_p;
      j["q"] = dp_q;
      j["degree_u"] = dp.degree_u;
      j["degree_a_observed"] = dp.degree_a_observed;
      j["cross_check"] = dp.cross_check;
      j["ok"] = dp.ok;
      if (!dp.message.empty()) j["message"] = dp.message;
      j["params"] = json::array();
      for (const auto& par : dp.params) {
        json pj;
        pj["re"] = par.a.real();
        pj["im"] = par.a.imag();
        pj["type_m"] = par.type_m;
        pj["residual_A"] = par.residual_A;
        pj["wake_angles"] = json::array();
        for (const auto& w : par.wake_angles) pj["wake_angles"].push_back(w.str());
        j["params"].push_back(pj);
      }
      emit(j.dump(2), out_path);
      return dp.ok ? 0 : 1;
    }

    if (*cmd_render) {
      Config cfg;
      if (!config_path.empty()) cfg = Config::from_file(config_path);
      if (!slice_arg.empty() && parse_slice_arg(slice_arg, cfg.p, cfg.q) != 0)
        throw std::runtime_error("bad --slice, expected p/q");
      if (cmd_render->count("--window")) {
        cfg.window.center_re = cx;
        cfg.window.center_im = cy;
        cfg.window.width = width;
      }
      if (cmd_render->count("--res")) cfg.resolution = res;
      if (cmd_render->count("--budget-escape")) cfg.budget_escape = budget_escape;
      if (cmd_render->count("--budget-parabolic")) cfg.budget_parabolic = budget_parabolic;
      if (cmd_render->count("--seed")) cfg.seed = seed;
      if (cmd_render->count("--threads")) cfg.threads = threads;
      if (cmd_render->count("--format")) cfg.format = format;
      cfg.validate();
      Slice s = make_slice(cfg.p, cfg.q);
      LocusImage img = render_locus(s, cfg.window, cfg.resolution, cfg.classify_budget(), cfg.threads);
      std::string path = out_path.empty() ? ("locus.p" + std::to_string(cfg.p) + "q" + std::to_string(cfg.q) +
                                             (cfg.format == "csv" ? ".csv" : ".ppm"))
                                          : out_path;
      if (cfg.format == "csv") {
        write_class_csv(img, path);
      } else if (cfg.format == "ppm") {
        write_ppm(img, path);
      } else {
        throw std::runtime_error("render format not built: " + cfg.format + " (use ppm or csv)");
      }
      std::cout << "wrote " << path << "\n";
      return 0;
    }

    if (*cmd_ray) {
      Angle ang(Rational::parse(angle_str));
      Slice s = make_slice(rp, rq);
      RayTrace tr;
      if (plane == "dynamical") {
        tr = trace_dynamical_ray(s, cplx(ra_re, ra_im), ang, target_pot);
      } else if (plane == "parameter") {
        tr = trace_parameter_ray(s, ang, target_pot, rsector);
      } else {
        throw std::runtime_error("plane must be dynamical or parameter");
      }
      std::ostringstream csv;
      csv << "potential,re,im\n";
      for (const auto& smp : tr.samples)
        csv << format_double(smp.potential) << "," << format_double(smp.z.real()) << ","
            << format_double(smp.z.imag()) << "\n";
      csv << "# status ";
      switch (tr.status) {
        case RayStatus::Landed: csv << "landed"; break;
        case RayStatus::Crashed: csv << "crashed"; break;
        case RayStatus::BudgetExceeded: csv << "budget-exceeded"; break;
        case RayStatus::ReachedTarget: csv << "reached-target"; break;
      }
      csv << " terminal " << format_double(tr.terminal.real()) << " "
          << format_double(tr.terminal.imag());
      if (!tr.note.empty()) csv << " # " << tr.note;
      emit(csv.str(), out_path);
      return tr.status == RayStatus::Crashed ? 1 : 0;
    }

    if (*cmd_verify) {
      if (!config_path.empty()) Config::from_file(config_path);  // validation throws with listing
      auto results = run_verification(vp, vq);
      bool all = true;
      for (const auto& r : results) {
        std::printf("[%s] %-34s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.c_str());
        all = all && r.pass;
      }
      if (!all) {
        std::printf("FAILURES:\n");
        for (const auto& r : results)
          if (!r.pass) std::printf("  %s: %s\n", r.name.c_str(), r.detail.c_str());
      }
      return all ? 0 : 1;
    }

    if (*cmd_cover) {
      Slice s = make_slice(cp, cq);
      Covering cov(s);
      if (!cov.valid()) throw std::runtime_error("model basin unavailable");
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      json j;
      j["p"] = cp;
      j["q"] = cq;
      j["samples"] = json::array();
      int good = 0;
      const auto& anchors = cov.anchors();
      int made = 0, tries = 0;
      while (made < nsamples && tries < nsamples * 20) {
        ++tries;
        if (anchors.empty()) break;
        const auto& an = anchors[size_t(u(rng) * anchors.size()) % anchors.size()];
        cplx z = an.z;
        auto fr = cov.fibers(z);
        json sj;
        sj["z_re"] = z.real();
        sj["z_im"] = z.imag();
        sj["fibers"] = json::array();
        for (size_t i = 0; i < fr.fibers.size(); ++i) {
          json fj;
          fj["re"] = fr.fibers[i].real();
          fj["im"] = fr.fibers[i].imag();
          fj["residual"] = fr.residuals[i];
          sj["fibers"].push_back(fj);
        }
        sj["ok"] = fr.ok;
        if (fr.excluded) sj["excluded"] = true;
        if (!fr.message.empty()) sj["message"] = fr.message;
        j["samples"].push_back(sj);
        good += fr.ok ? 1 : 0;
        ++made;
      }
      j["fiber_pairs"] = good;
      emit(j.dump(2), out_path);
      return (made > 0 && good == made) ? 0 : 1;
    }

    if (*cmd_curve) {
      Slice s = make_slice(sp, sq);
      SpecialCurveApprox curve = special_curve(s, sm, scount);
      json j;
      j["m"] = curve.m;
      j["complete"] = curve.complete;
      if (!curve.message.empty()) j["message"] = curve.message;
      j["points"] = json::array();
      for (size_t i = 0; i < curve.points.size(); ++i) {
        json pj;
        pj["re"] = curve.points[i].real();
        pj["im"] = curve.points[i].imag();
        pj["residual"] = curve.residuals[i];
        j["points"].push_back(pj);
      }
      emit(j.dump(2), out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
