// arslie: command-line front end for simple almost-Riemannian structures on
// low-dimensional Lie groups.
//
//   arslie <classify|geodesic|front|abnormal|lift|verify> --config <path> [--out <dir>] [--svg]
//
// Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 numeric
// failure, 4 I/O failure.

#include "arslie/config.hpp"
#include "arslie/desing.hpp"
#include "arslie/errors.hpp"
#include "arslie/extremals.hpp"
#include "arslie/output.hpp"
#include "arslie/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

using namespace arslie;
using json = nlohmann::json;

namespace {

struct Run {
  Config cfg;
  std::string out_dir;
  bool svg = false;
};

std::string g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

std::string row_text(const Eigen::RowVectorXd& r) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < r.size(); ++i) s += (i ? ", " : "") + g12(r(i));
  return s + ")";
}

std::string path_in(const Run& run, const std::string& name) {
  return run.out_dir.empty() ? name : run.out_dir + "/" + name;
}

// Square charts use covectors conjugate to the chart coordinates; SL(2) uses
// components in the dual of the algebra basis.
bool chart_covectors(const GroupChart& chart) { return chart.coord_dim() == chart.dim(); }

std::vector<std::string> covector_names(const GroupChart& chart) {
  std::vector<std::string> names;
  if (chart_covectors(chart))
    for (const auto& c : chart.coord_labels()) names.push_back("p_" + c);
  else
    for (const auto& l : chart.algebra().labels()) names.push_back("lambda_" + l);
  return names;
}

OneForm covector_out(const GroupChart& chart, const GroupPoint& g, const OneForm& lambda) {
  return chart_covectors(chart) ? chart_covector(chart, g, lambda) : lambda;
}

OneForm covector_in(const GroupChart& chart, const GroupPoint& g, const OneForm& given) {
  return chart_covectors(chart) ? lambda_from_chart(chart, g, given) : given;
}

GroupPoint read_point(const Run& run, const SimpleArs& ars, const std::string& section) {
  const GroupPoint g = run.cfg.vector(section, "point", ars.chart().coord_dim());
  ars.chart().validate(g);
  return g;
}

std::pair<int, int> svg_axes(const Run& run, const GroupChart& chart) {
  auto index = [&](const std::string& key, int fallback) {
    if (!run.cfg.has("svg", key)) return fallback;
    const std::string label = run.cfg.text("svg", key);
    const auto& labels = chart.coord_labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<int>(i);
    throw ValidationError("[svg] " + key + ": unknown coordinate '" + label + "'");
  };
  return {index("x", 0), index("y", chart.coord_dim() > 1 ? 1 : 0)};
}

void maybe_svg(const Run& run, const GroupChart& chart, const std::vector<Polyline>& lines, const std::string& file,
               const std::string& title) {
  if (!run.svg) return;
  const auto [ix, iy] = svg_axes(run, chart);
  write_file(path_in(run, file), render_svg(lines, chart.coord_labels()[ix], chart.coord_labels()[iy], title));
}

Polyline project_points(const Run& run, const GroupChart& chart, const std::vector<GroupPoint>& pts) {
  const auto [ix, iy] = svg_axes(run, chart);
  Polyline line;
  for (const auto& g : pts) line.emplace_back(g(ix), g(iy));
  return line;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

int cmd_classify(const Run& run) {
  const SimpleArs ars = build_problem(read_problem(run.cfg));
  const LocusReport r = classify_locus(ars);
  const auto& labels = ars.algebra().labels();
  const std::string z = r.z_tangent.describe(labels);

  std::cout << "group: " << ars.chart().name() << ", Delta = " << ars.delta().describe(labels)
            << ", omega = " << row_text(ars.omega()) << " (omega(" << describe_vector(ars.y_n(), labels) << ") = 1)\n";
  std::cout << "Delta subalgebra: " << yes(r.delta_subalgebra) << ", ideal: " << yes(r.delta_ideal)
            << "; algebra solvable: " << yes(r.solvable) << ", nilpotent: " << yes(r.nilpotent) << "\n";
  std::cout << "D*omega = " << row_text(r.d_star_omega)
            << (r.locally_submanifold ? " (nonzero: the locus is a hypersurface near e)\n"
                                      : " (zero: psi is singular at e)\n");
  std::cout << "ker D*omega = D^-1 Delta = " << z << ", subalgebra: " << yes(r.kernel_subalgebra) << "\n";
  std::cout << "(HZ) on ker D*omega: "
            << (!r.kernel_subalgebra ? "not applicable (not a subalgebra)" : (r.hz_on_kernel ? "holds" : "FAILS"))
            << "\n";
  std::cout << "locus vs zeros of the field: " << to_string(r.zx) << " (" << r.locus_samples
            << " sampled locus points)\n";
  std::cout << "verdicts:\n";
  for (const Verdict& v : r.verdicts)
    std::cout << "  [" << (v.applies ? "applies" : "   -   ") << "] " << v.id << ": " << v.conclusion << "\n";
  if (r.subgroup)
    std::cout << "summary: the locus is a codimension-one subgroup with Lie algebra " << z << "\n";
  else if (r.not_codim_one_subgroup)
    std::cout << "summary: the locus is not a codimension-one subgroup, not even locally\n";
  else if (r.verdict("hz_local_subgroup").applies)
    std::cout << "summary: the locus contains the subgroup generated by " << z << " and agrees with it near e\n";
  else
    std::cout << "summary: no subgroup statement applies\n";

  json j;
  j["group"] = ars.chart().name();
  j["delta"] = ars.delta().describe(labels);
  j["omega"] = std::vector<double>(ars.omega().data(), ars.omega().data() + ars.omega().size());
  j["delta_subalgebra"] = r.delta_subalgebra;
  j["delta_ideal"] = r.delta_ideal;
  j["solvable"] = r.solvable;
  j["nilpotent"] = r.nilpotent;
  j["locally_submanifold"] = r.locally_submanifold;
  j["d_star_omega"] = std::vector<double>(r.d_star_omega.data(), r.d_star_omega.data() + r.d_star_omega.size());
  j["kernel"] = z;
  j["kernel_subalgebra"] = r.kernel_subalgebra;
  j["hz_on_kernel"] = r.hz_on_kernel;
  j["kernel_of_d"] = r.kernel_of_d.describe(labels);
  j["zx"] = to_string(r.zx);
  j["locus_samples"] = r.locus_samples;
  j["subgroup"] = r.subgroup;
  j["not_codim_one_subgroup"] = r.not_codim_one_subgroup;
  for (const Verdict& v : r.verdicts) j["verdicts"][v.id] = {{"applies", v.applies}, {"conclusion", v.conclusion}};
  std::cout << "--- json ---\n" << j.dump(2) << "\n";
  return 0;
}

int cmd_geodesic(const Run& run) {
  const SimpleArs ars = build_problem(read_problem(run.cfg));
  const GroupChart& chart = ars.chart();
  const GroupPoint g0 = read_point(run, ars, "geodesic");
  const OneForm lam0 = covector_in(chart, g0, run.cfg.vector("geodesic", "covector", ars.dim()).transpose());
  IntegrateOptions opt;
  opt.step = run.cfg.number("geodesic", "step", 1e-3);
  opt.drift_bound = run.cfg.number("geodesic", "drift_bound", 1e-8);
  const GeodesicTrajectory traj = integrate(ars, {g0, lam0}, run.cfg.number("geodesic", "T"), opt);

  std::vector<std::string> header{"t"};
  for (const auto& c : chart.coord_labels()) header.push_back(c);
  for (const auto& c : covector_names(chart)) header.push_back(c);
  header.push_back("v");
  for (int j = 1; j < ars.dim(); ++j) header.push_back("u" + std::to_string(j));
  header.push_back("H");
  CsvTable csv(header);
  std::vector<GroupPoint> pts;
  for (const TrajectorySample& s : traj.samples) {
    std::vector<double> row{s.t};
    for (Eigen::Index i = 0; i < s.state.g.size(); ++i) row.push_back(s.state.g(i));
    const OneForm c = covector_out(chart, s.state.g, s.state.lambda);
    for (Eigen::Index i = 0; i < c.size(); ++i) row.push_back(c(i));
    row.push_back(s.controls.v);
    for (Eigen::Index i = 0; i < s.controls.u.size(); ++i) row.push_back(s.controls.u(i));
    row.push_back(s.H);
    csv.add_row(row);
    pts.push_back(s.state.g);
  }
  write_file(path_in(run, "geodesic.csv"), csv.str());
  maybe_svg(run, chart, {project_points(run, chart, pts)}, "geodesic.svg", "geodesic");
  std::cout << "geodesic: " << traj.samples.size() << " samples, max |H - H(0)| = " << g12(traj.max_drift) << "\n";
  return 0;
}

int cmd_front(const Run& run) {
  const SimpleArs ars = build_problem(read_problem(run.cfg));
  const GroupChart& chart = ars.chart();
  const GroupPoint g0 = read_point(run, ars, "front");
  const int count = run.cfg.integer("front", "rays", 64);
  const std::vector<WavefrontRay> rays =
      wavefront(ars, g0, run.cfg.number("front", "T"), count, run.cfg.number("front", "step", 1e-3));

  const bool on = in_locus(ars, g0);
  std::vector<std::string> header{"ray_index"};
  std::vector<std::string> angle_names;
  if (ars.dim() == 2)
    angle_names = on ? std::vector<std::string>{"eps", "phi"} : std::vector<std::string>{"phi"};
  else
    angle_names = on ? std::vector<std::string>{"theta", "phi"} : std::vector<std::string>{"polar", "azimuth"};
  header.insert(header.end(), angle_names.begin(), angle_names.end());
  for (const auto& c : chart.coord_labels()) header.push_back(c);
  CsvTable csv(header);
  std::vector<Polyline> lines(1);
  int failed = 0;
  double group_key = rays.empty() || rays.front().angles.empty() ? 0.0 : rays.front().angles.front();
  const auto [ix, iy] = svg_axes(run, chart);
  for (const WavefrontRay& r : rays) {
    std::vector<double> row{static_cast<double>(r.index)};
    row.insert(row.end(), r.angles.begin(), r.angles.end());
    for (Eigen::Index i = 0; i < r.endpoint.size(); ++i) row.push_back(r.endpoint(i));
    csv.add_row(row);
    if (!r.ok) {
      ++failed;
      std::cerr << "ray " << r.index << " failed: " << r.error << "\n";
      continue;
    }
    // On the locus of a surface the rays come in two families (eps = +-1).
    if (on && ars.dim() == 2 && r.angles.front() != group_key) {
      group_key = r.angles.front();
      lines.emplace_back();
    }
    lines.back().emplace_back(r.endpoint(ix), r.endpoint(iy));
  }
  write_file(path_in(run, "front.csv"), csv.str());
  maybe_svg(run, chart, lines, "front.svg", "wavefront");
  std::cout << "front: " << rays.size() << " rays, " << failed << " failed\n";
  return 0;
}

int cmd_abnormal(const Run& run) {
  const SimpleArs ars = build_problem(read_problem(run.cfg));
  const GroupChart& chart = ars.chart();
  const GroupPoint g0 = read_point(run, ars, "abnormal");
  const AbnormalDescription d = abnormal_description(ars, g0);
  AlgebraVector dir = AlgebraVector::Zero(ars.dim());
  if (run.cfg.has("abnormal", "direction"))
    dir = run.cfg.vector("abnormal", "direction", ars.dim());
  else if (!d.algebra.is_zero())
    dir = d.algebra.vector(0);
  const auto samples =
      abnormal_curve(ars, g0, dir, run.cfg.number("abnormal", "T", 1.0), run.cfg.integer("abnormal", "samples", 100));

  std::vector<std::string> header{"t"};
  for (const auto& c : chart.coord_labels()) header.push_back(c);
  header.push_back("p");
  CsvTable csv(header);
  std::vector<GroupPoint> pts;
  for (const AbnormalSample& s : samples) {
    std::vector<double> row{s.t};
    for (Eigen::Index i = 0; i < s.g.size(); ++i) row.push_back(s.g(i));
    row.push_back(s.p);
    csv.add_row(row);
    pts.push_back(s.g);
  }
  write_file(path_in(run, "abnormal.csv"), csv.str());
  maybe_svg(run, chart, {project_points(run, chart, pts)}, "abnormal.svg", "abnormal curve");
  std::cout << d.statement << "\n";
  return 0;
}

int cmd_lift(const Run& run) {
  const SimpleArs ars = build_problem(read_problem(run.cfg));
  const GroupChart& chart = ars.chart();
  const LiftedStructure lifted = lift(ars);
  const GroupPoint g0 = read_point(run, ars, "lift");
  const OneForm lam0 = covector_in(chart, g0, run.cfg.vector("lift", "covector", ars.dim()).transpose());
  IntegrateOptions opt;
  opt.step = run.cfg.number("lift", "step", 1e-3);
  opt.drift_bound = run.cfg.number("lift", "drift_bound", 1e-8);
  const LiftedState s0 =
      lifted_state(lifted, g0, run.cfg.number("lift", "tau", 0.0), lam0, run.cfg.number("lift", "s", 0.0));
  const LiftedTrajectory traj = lifted_integrate(lifted, s0, run.cfg.number("lift", "T"), opt);
  const Projection proj = project(lifted, traj);

  const int cd = chart.coord_dim();
  const int n = ars.dim();
  std::vector<std::string> header{"t"};
  for (const auto& c : chart.coord_labels()) header.push_back(c);
  header.push_back("tau");
  for (const auto& c : covector_names(chart)) header.push_back(c);
  header.push_back("s");
  header.push_back("v");
  for (int j = 1; j < n; ++j) header.push_back("u" + std::to_string(j));
  header.push_back("H");
  CsvTable csv(header);
  std::vector<GroupPoint> pts;
  for (const LiftedSample& s : traj.samples) {
    const GroupPoint g = s.state.p.head(cd);
    std::vector<double> row{s.t};
    for (Eigen::Index i = 0; i <= cd; ++i) row.push_back(s.state.p(i));
    const OneForm c = covector_out(chart, g, s.state.lambda.head(n));
    for (Eigen::Index i = 0; i < c.size(); ++i) row.push_back(c(i));
    row.push_back(s.s);
    row.push_back(s.v);
    for (Eigen::Index i = 0; i < s.u.size(); ++i) row.push_back(s.u(i));
    row.push_back(s.H);
    csv.add_row(row);
    pts.push_back(g);
  }
  write_file(path_in(run, "lift.csv"), csv.str());
  maybe_svg(run, chart, {project_points(run, chart, pts)}, "lift.svg", "projected lifted geodesic");
  std::cout << "lift: algebra " << lifted.algebra.name() << ", tau(T) - tau(0) = " << g12(proj.tau_increment)
            << ", integral of v = " << g12(proj.tau_quadrature) << ", length " << g12(proj.lifted_length)
            << " (projected " << g12(proj.projected_length) << ")\n";
  return 0;
}

int cmd_verify() {
  bool all = true;
  for (const Criterion& c : acceptance_criteria()) {
    const CriterionResult r = run_criterion(c);
    all = all && r.passed();
    std::printf("[%s] %d %s (%.2f s)\n", r.passed() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    for (const CheckResult& k : r.checks)
      if (!k.passed) std::printf("    failed: %s: %s\n", k.name.c_str(), k.detail.c_str());
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple almost-Riemannian structures on Lie groups"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  bool svg = false;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"classify", "singular locus classification"},
      {"geodesic", "integrate one normal extremal"},
      {"front", "wavefront at fixed time"},
      {"abnormal", "abnormal curve through a locus point"},
      {"lift", "extremal of the desingularized lift"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "INI configuration file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--svg", svg, "also write an SVG plot");
  }
  app.add_subcommand("verify", "run the fixture oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "verify") return cmd_verify();
    Run run{Config::load(config_path), out_dir, svg};
    if (cmd == "classify") return cmd_classify(run);
    if (cmd == "geodesic") return cmd_geodesic(run);
    if (cmd == "front") return cmd_front(run);
    if (cmd == "abnormal") return cmd_abnormal(run);
    if (cmd == "lift") return cmd_lift(run);
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const NumericFailure& e) {
    std::fprintf(stderr, "numeric failure at t=%.17g: %s\n", e.time(), e.what());
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return 2;
}
