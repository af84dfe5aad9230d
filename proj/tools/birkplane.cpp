#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "birk/constants.hpp"
#include "birk/errors.hpp"
#include "birk/norm.hpp"
#include "birk/svg.hpp"
#include "birk/verify.hpp"

namespace {

struct Opts {
  std::string norm_arg;
  std::vector<double> nus;
  double nu_start = 0.0, nu_stop = 1.0;
  int nu_steps = 11;
  int grid_theta = 2048;
  int grid_psi = 512;
  int refine = 3;
  double tol = 1e-9;
  std::uint64_t seed = 12345;
  std::string format;
  std::string out;
  bool serial = false;
};

void add_common(CLI::App* cmd, Opts& o, const char* default_format) {
  cmd->add_option("--norm", o.norm_arg,
                  "norm alias (euclid, l1, linf, lN, lp:P, linf-l1, sqrt2max, "
                  "hexagon, random-polygon), spec file path, or inline spec")
      ->required();
  cmd->add_option("--grid-theta", o.grid_theta, "sphere directions for x")
      ->check(CLI::Range(4, 1 << 20));
  cmd->add_option("--grid-psi", o.grid_psi, "companion scan directions")
      ->check(CLI::Range(64, 1 << 20));
  cmd->add_option("--refine", o.refine, "nested refinement levels")
      ->check(CLI::Range(0, 8));
  cmd->add_option("--tol", o.tol, "orthogonality admission tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "seed for random-polygon norms");
  o.format = default_format;
  cmd->add_option("--format", o.format, "output format")->capture_default_str();
  cmd->add_option("--out", o.out, "write output to this path instead of stdout");
  cmd->add_flag("--serial", o.serial, "disable the parallel scan kernels");
}

birk::GridParams grid_of(const Opts& o) {
  return {o.grid_theta, o.grid_psi, o.refine, o.tol};
}

birk::Execution exec_of(const Opts& o) {
  return o.serial ? birk::Execution::Serial : birk::Execution::Parallel;
}

birk::Norm resolve_norm(const Opts& o) {
  if (o.norm_arg == "random-polygon") {
    std::mt19937_64 gen(o.seed);
    birk::Norm n = birk::random_polygon(gen);
    n.set_label("random-polygon:" + std::to_string(o.seed));
    return n;
  }
  return birk::norm_from_arg(o.norm_arg);
}

// returns 0, or 4 when the path cannot be written
int emit(const Opts& o, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream f(o.out, std::ios::binary);
  f << content;
  f.flush();
  if (!f) {
    std::cerr << "error: cannot write to '" << o.out << "'\n";
    return 4;
  }
  return 0;
}

std::string csv_num(double v) { return birk::format_double(v); }

nlohmann::json estimate_json(const birk::ConstantEstimate& e) {
  nlohmann::json j;
  j["constant"] = birk::constant_name(e.kind.tag);
  if (e.kind.tag == birk::ConstantTag::HeinzB) j["nu"] = e.kind.nu;
  j["value"] = e.value;
  j["s"] = e.s;
  j["d"] = e.d;
  j["witness"] = {{"theta", e.witness.x.angle},
                  {"psi", e.witness.y.angle},
                  {"x", {e.witness.x.coords.x, e.witness.x.coords.y}},
                  {"y", {e.witness.y.coords.x, e.witness.y.coords.y}},
                  {"defect", e.witness.defect}};
  j["grid"] = {{"theta_count", e.grid.theta_count},
               {"psi_scan", e.grid.psi_scan},
               {"refine_levels", e.grid.refine_levels}};
  j["tolerance"] = e.tolerance;
  return j;
}

int cmd_constants(const Opts& o) {
  birk::Norm norm = resolve_norm(o);
  birk::GridParams grid = grid_of(o);
  std::vector<double> nus = o.nus.empty() ? std::vector<double>{0.5} : o.nus;

  birk::PairScan scan = birk::build_pair_scan(norm, grid, exec_of(o));
  std::vector<birk::ConstantEstimate> ests;
  for (double nu : nus)
    ests.push_back(birk::estimate_with_scan(norm, scan, {birk::ConstantTag::HeinzB, nu}));
  for (birk::ConstantTag tag :
       {birk::ConstantTag::JamesB, birk::ConstantTag::A2B, birk::ConstantTag::DeltaB,
        birk::ConstantTag::RhoB, birk::ConstantTag::RectangularB})
    ests.push_back(birk::estimate_with_scan(norm, scan, {tag, 0.5}));
  for (birk::ConstantTag tag :
       {birk::ConstantTag::James, birk::ConstantTag::Schaffer, birk::ConstantTag::A2})
    ests.push_back(birk::estimate_constant(norm, {tag, 0.5}, grid, exec_of(o)));

  if (o.format == "json") {
    nlohmann::json j;
    j["norm"] = norm.label();
    j["spec"] = norm.canonical_spec();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : ests) arr.push_back(estimate_json(e));
    j["estimates"] = arr;
    return emit(o, j.dump(2) + "\n");
  }
  if (o.format != "csv") {
    std::cerr << "error: constants supports --format csv or json\n";
    return 2;
  }
  std::ostringstream csv;
  csv << "constant,nu,value,witness_theta,witness_psi,grid_theta,grid_psi,refine,tolerance\n";
  for (const auto& e : ests) {
    csv << birk::constant_name(e.kind.tag) << ",";
    if (e.kind.tag == birk::ConstantTag::HeinzB) csv << csv_num(e.kind.nu);
    csv << "," << csv_num(e.value) << "," << csv_num(e.witness.x.angle) << ","
        << csv_num(e.witness.y.angle) << "," << e.grid.theta_count << ","
        << e.grid.psi_scan << "," << e.grid.refine_levels << ","
        << csv_num(e.tolerance) << "\n";
  }
  return emit(o, csv.str());
}

int cmd_sweep(const Opts& o) {
  if (o.nu_steps < 2 || !(o.nu_start >= 0.0) || !(o.nu_stop <= 1.0) ||
      !(o.nu_start <= o.nu_stop)) {
    std::cerr << "error: sweep needs 0 <= nu-start <= nu-stop <= 1 and nu-steps >= 2\n";
    return 2;
  }
  birk::Norm norm = resolve_norm(o);
  birk::GridParams grid = grid_of(o);
  birk::PairScan scan = birk::build_pair_scan(norm, grid, exec_of(o));

  std::vector<birk::ConstantEstimate> ests;
  for (int i = 0; i < o.nu_steps; ++i) {
    double nu = o.nu_start + (o.nu_stop - o.nu_start) * i / (o.nu_steps - 1);
    ests.push_back(birk::estimate_with_scan(norm, scan, {birk::ConstantTag::HeinzB, nu}));
  }
  if (o.format == "json") {
    nlohmann::json j;
    j["norm"] = norm.label();
    j["spec"] = norm.canonical_spec();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : ests) arr.push_back(estimate_json(e));
    j["sweep"] = arr;
    return emit(o, j.dump(2) + "\n");
  }
  if (o.format != "csv") {
    std::cerr << "error: sweep supports --format csv or json\n";
    return 2;
  }
  std::ostringstream csv;
  csv << "nu,H,witness_theta,witness_psi\n";
  for (const auto& e : ests)
    csv << csv_num(e.kind.nu) << "," << csv_num(e.value) << ","
        << csv_num(e.witness.x.angle) << "," << csv_num(e.witness.y.angle) << "\n";
  return emit(o, csv.str());
}

int cmd_verify(const Opts& o) {
  birk::Norm norm = resolve_norm(o);
  std::vector<double> nus = o.nus.empty() ? std::vector<double>{0.0, 0.25, 0.5} : o.nus;
  birk::VerifyReport rep = birk::run_checks(norm, nus, grid_of(o), exec_of(o));

  std::string body;
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "check,nu,lhs,rhs,relation,margin,slack,applicable,passed\n";
    for (const birk::Check& c : rep.checks)
      csv << c.name << "," << csv_num(c.nu) << "," << csv_num(c.lhs) << ","
          << csv_num(c.rhs) << "," << c.relation << "," << csv_num(c.margin) << ","
          << csv_num(c.slack) << "," << (c.applicable ? "true" : "false") << ","
          << (c.passed ? "true" : "false") << "\n";
    body = csv.str();
  } else if (o.format == "json") {
    body = birk::report_json(rep) + "\n";
  } else {
    std::cerr << "error: verify supports --format json or csv\n";
    return 2;
  }
  int rc = emit(o, body);
  if (rc != 0) return rc;
  if (!rep.passed) {
    for (const birk::Check& c : rep.checks)
      if (!c.passed)
        std::cerr << "failed: " << c.name << " nu=" << csv_num(c.nu)
                  << " margin=" << csv_num(c.margin) << "\n";
    return 1;
  }
  return 0;
}

int cmd_sphere(const Opts& o) {
  birk::Norm norm = resolve_norm(o);
  birk::GridParams grid = grid_of(o);
  double nu = o.nus.empty() ? 0.5 : o.nus.front();
  birk::ConstantEstimate est =
      birk::estimate_constant(norm, {birk::ConstantTag::HeinzB, nu}, grid, exec_of(o));
  return emit(o, birk::sphere_svg(norm, &est));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff orthogonality constants on two-dimensional normed planes"};
  app.require_subcommand(1);

  Opts oc, os, ov, op;
  CLI::App* constants = app.add_subcommand("constants", "estimate the constant family");
  add_common(constants, oc, "csv");
  constants->add_option("--nu", oc.nus, "Heinz parameter (repeatable)")
      ->check(CLI::Range(0.0, 1.0));

  CLI::App* sweep = app.add_subcommand("sweep", "Heinz constant over a nu range");
  add_common(sweep, os, "csv");
  sweep->add_option("--nu-start", os.nu_start)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--nu-stop", os.nu_stop)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--nu-steps", os.nu_steps)->check(CLI::Range(2, 100000));

  CLI::App* verify = app.add_subcommand("verify", "run the inequality check catalog");
  add_common(verify, ov, "json");
  verify->add_option("--nu", ov.nus, "Heinz parameter (repeatable)")
      ->check(CLI::Range(0.0, 1.0));

  CLI::App* sphere = app.add_subcommand("sphere", "SVG of the unit sphere and a witness");
  add_common(sphere, op, "svg");
  sphere->add_option("--nu", op.nus, "Heinz parameter for the witness")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (constants->parsed()) return cmd_constants(oc);
    if (sweep->parsed()) return cmd_sweep(os);
    if (verify->parsed()) return cmd_verify(ov);
    if (sphere->parsed()) return cmd_sphere(op);
  } catch (const birk::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const birk::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const birk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
