#include "birk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <json.hpp>

#include "birk/errors.hpp"
#include "birk/rng.hpp"

namespace birk {

namespace {

constexpr double kAlgSlack = 1e-6;   // single estimate against exact numbers
constexpr double kEstSlack = 5e-3;   // one grid estimate against another
constexpr double kRadonTol = 1e-6;   // radon_defect below this means Radon plane
constexpr double kSquareBand = 5e-3; // distance from 2 that still counts as 2

Check make_check(std::string name, double nu, double lhs, double rhs,
                 std::string relation, double slack, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.nu = nu;
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = std::move(relation);
  c.slack = slack;
  if (c.relation == "LE")
    c.margin = rhs - lhs;
  else if (c.relation == "GE")
    c.margin = lhs - rhs;
  else
    c.margin = -std::fabs(lhs - rhs);
  c.passed = c.margin >= -slack;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

VerifyReport run_checks(const Norm& norm, const std::vector<double>& nus,
                        const GridParams& grid, Execution exec) {
  for (double nu : nus)
    if (!(nu >= 0.0 && nu <= 1.0)) throw DomainError("nu must lie in [0, 1]");

  VerifyReport rep;
  rep.norm_label = norm.label();
  rep.norm_spec = norm.canonical_spec();
  rep.grid = grid;
  rep.nus = nus;

  PairScan scan = build_pair_scan(norm, grid, exec);

  std::map<double, ConstantEstimate> heinz;
  auto heinz_at = [&](double nu) -> const ConstantEstimate& {
    auto it = heinz.find(nu);
    if (it == heinz.end())
      it = heinz.emplace(nu, estimate_with_scan(norm, scan, {ConstantTag::HeinzB, nu})).first;
    return it->second;
  };
  for (double nu : nus) {
    heinz_at(nu);
    heinz_at(1.0 - nu);
  }
  heinz_at(0.5);

  ConstantEstimate jb = estimate_with_scan(norm, scan, {ConstantTag::JamesB, 0.5});
  ConstantEstimate a2b = estimate_with_scan(norm, scan, {ConstantTag::A2B, 0.5});
  ConstantEstimate db = estimate_with_scan(norm, scan, {ConstantTag::DeltaB, 0.5});
  ConstantEstimate rb = estimate_with_scan(norm, scan, {ConstantTag::RhoB, 0.5});
  ConstantEstimate mu = estimate_with_scan(norm, scan, {ConstantTag::RectangularB, 0.5});
  ConstantEstimate ju = estimate_constant(norm, {ConstantTag::James, 0.5}, grid, exec);

  rep.radon_defect_value = radon_defect(norm, scan, exec);
  rep.is_radon = rep.radon_defect_value <= kRadonTol;
  rep.james_unconstrained = ju.value;

  for (double nu : nus) rep.constants.push_back(heinz_at(nu));
  rep.constants.push_back(jb);
  rep.constants.push_back(a2b);
  rep.constants.push_back(db);
  rep.constants.push_back(rb);
  rep.constants.push_back(mu);
  rep.constants.push_back(ju);

  for (double nu : nus) {
    const double h = heinz_at(nu).value;
    const double h_sym = heinz_at(1.0 - nu).value;
    const double h_half = heinz_at(0.5).value;

    rep.checks.push_back(make_check(
        "bounds_1_2", nu, std::max(1.0 - h, h - 2.0), 0.0, "LE", kAlgSlack,
        "1 <= H <= 2; lhs is max(1 - H, H - 2)"));

    rep.checks.push_back(make_check(
        "nu_symmetry", nu, h, h_sym, "EQ", kAlgSlack,
        "H at nu equals H at 1 - nu"));

    rep.checks.push_back(make_check(
        "nu_min_at_half", nu, h, h_half, "GE", kEstSlack,
        "H at nu dominates H at 1/2, the minimum over nu"));

    rep.checks.push_back(make_check(
        "chain", nu, std::max(jb.value - h, h - a2b.value), 0.0, "LE", kEstSlack,
        "JB <= H <= A2B; lhs is max(JB - H, H - A2B)"));

    double j_rhs = std::pow(2.0, nu - 1.0) * std::pow(jb.value, 1.0 - nu) +
                   std::pow(2.0, -nu) * std::pow(jb.value, nu);
    rep.checks.push_back(make_check(
        "j_sandwich", nu, h, j_rhs, "LE", kEstSlack,
        "H <= 2^(nu-1) JB^(1-nu) + 2^(-nu) JB^nu"));

    double one_minus_delta = std::max(0.0, 1.0 - db.value);
    double d_rhs = std::pow(one_minus_delta, nu) + std::pow(one_minus_delta, 1.0 - nu);
    rep.checks.push_back(make_check(
        "delta_upper", nu, h, d_rhs, "LE", kEstSlack,
        "H <= (1 - deltaB)^nu + (1 - deltaB)^(1-nu)"));

    double r_rhs = std::sqrt(std::max(0.0, 2.0 * (1.0 - rb.value)));
    rep.checks.push_back(make_check(
        "rho_lower", nu, h, r_rhs, "GE", kEstSlack,
        "H >= sqrt(2 (1 - rhoB))"));

    rep.checks.push_back(make_check(
        "rectangular", nu, mu.value * h * h, 2.0, "GE", kEstSlack,
        "mu' H^2 >= 2"));

    Check radon = make_check(
        "radon_upper", nu, h, 1.5, "LE", kEstSlack,
        "H <= 3/2 when Birkhoff orthogonality is symmetric");
    radon.applicable = rep.is_radon;
    if (!radon.applicable) {
      radon.passed = true;
      radon.detail += " (not a Radon plane here, so the bound does not bind)";
    }
    rep.checks.push_back(radon);

    // H reaches 2 exactly when the unconstrained James constant does
    double h_gap = std::fabs(h - 2.0), j_gap = std::fabs(ju.value - 2.0);
    Check sq = make_check(
        "nonsquare_consistency", nu, (h_gap - kSquareBand) * (j_gap - kSquareBand),
        0.0, "GE", 0.0,
        "H = 2 and J = 2 happen together; lhs is (|H-2|-band)(|J-2|-band)");
    rep.checks.push_back(sq);
  }

  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const Check& c) { return c.passed; });
  return rep;
}

std::string report_json(const VerifyReport& rep) {
  nlohmann::json j;
  j["norm"] = rep.norm_label;
  j["spec"] = rep.norm_spec;
  j["grid"] = {{"theta_count", rep.grid.theta_count},
               {"psi_scan", rep.grid.psi_scan},
               {"refine_levels", rep.grid.refine_levels},
               {"tolerance", rep.grid.ortho_tol}};
  j["nus"] = rep.nus;
  j["radon"] = {{"defect", rep.radon_defect_value},
                {"is_radon", rep.is_radon},
                {"tolerance", kRadonTol}};
  j["james_unconstrained"] = rep.james_unconstrained;

  nlohmann::json consts = nlohmann::json::array();
  for (const ConstantEstimate& c : rep.constants) {
    nlohmann::json e;
    e["name"] = constant_name(c.kind.tag);
    if (c.kind.tag == ConstantTag::HeinzB) e["nu"] = c.kind.nu;
    e["value"] = c.value;
    e["s"] = c.s;
    e["d"] = c.d;
    e["tolerance"] = c.tolerance;
    e["witness"] = {{"theta", c.witness.x.angle},
                    {"psi", c.witness.y.angle},
                    {"x", {c.witness.x.coords.x, c.witness.x.coords.y}},
                    {"y", {c.witness.y.coords.x, c.witness.y.coords.y}},
                    {"defect", c.witness.defect}};
    consts.push_back(e);
  }
  j["constants"] = consts;

  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"nu", c.nu},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"relation", c.relation},
                      {"margin", c.margin},
                      {"slack", c.slack},
                      {"applicable", c.applicable},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  }
  j["checks"] = checks;
  j["passed"] = rep.passed;
  return j.dump(2);
}

std::vector<HexagonCase> hexagon_family_check(std::uint64_t seed, int count,
                                              const GridParams& grid, double tol,
                                              Execution exec) {
  std::mt19937_64 gen(seed);
  std::vector<HexagonCase> out;
  const std::vector<Vec2> base = {{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}};
  for (int i = 0; i < count; ++i) {
    HexagonCase hc;
    hc.alpha = rng_uniform(gen, 0.0, 3.141592653589793);
    hc.beta = rng_uniform(gen, 0.0, 3.141592653589793);
    hc.s1 = std::pow(10.0, rng_uniform(gen, -0.5, 0.5));
    hc.s2 = std::pow(10.0, rng_uniform(gen, -0.5, 0.5));
    double det = hc.s1 * hc.s2;
    if (!(std::fabs(det) > 1e-3))
      throw SingularMap("hexagon map with near-zero determinant");
    double ca = std::cos(hc.alpha), sa = std::sin(hc.alpha);
    double cb = std::cos(hc.beta), sb = std::sin(hc.beta);
    auto map = [&](Vec2 v) {
      Vec2 r1{cb * v.x - sb * v.y, sb * v.x + cb * v.y};
      Vec2 r2{hc.s1 * r1.x, hc.s2 * r1.y};
      return Vec2{ca * r2.x - sa * r2.y, sa * r2.x + ca * r2.y};
    };
    std::vector<Vec2> verts;
    verts.reserve(base.size());
    for (Vec2 v : base) verts.push_back(map(v));
    Norm n = Norm::polygon(verts);
    n.set_label("hexagon_image_" + std::to_string(i));
    ConstantEstimate est = estimate_constant(n, {ConstantTag::HeinzB, 0.5}, grid, exec);
    hc.h = est.value;
    hc.passed = std::fabs(est.value - 1.5) <= tol;
    out.push_back(hc);
  }
  return out;
}

}  // namespace birk
