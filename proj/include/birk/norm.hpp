#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "birk/vec2.hpp"

namespace birk {

enum class NormKind { PNorm, Euclidean, Polygon, MaxFunctionals, PiecewiseQuadrant };

// branch norms for the piecewise-quadrant gauge
enum class SubNorm { Linf, L1, L2 };

class Norm {
 public:
  static Norm pnorm(double p);
  static Norm euclidean();
  // vertices of a centrally symmetric convex polygon, any order
  static Norm polygon(std::vector<Vec2> vertices);
  // rows (a, b) act on |v|: value = max_i (|a_i| |v1| + |b_i| |v2|)
  static Norm max_functionals(std::vector<Vec2> rows);
  static Norm piecewise_quadrant(SubNorm pos, SubNorm neg);

  double evaluate(Vec2 v) const {
    switch (kind_) {
      case NormKind::Euclidean:
        return hypot2(v);
      case NormKind::PNorm:
        return eval_pnorm(v);
      case NormKind::Polygon: {
        // one functional per antipodal edge pair, so take |.|
        double best = 0.0;
        for (const Vec2& f : rows_) {
          double t = std::fabs(f.x * v.x + f.y * v.y);
          if (t > best) best = t;
        }
        return best;
      }
      case NormKind::MaxFunctionals: {
        double ax = std::fabs(v.x), ay = std::fabs(v.y);
        double best = 0.0;
        for (const Vec2& f : rows_) {
          double t = f.x * ax + f.y * ay;
          if (t > best) best = t;
        }
        return best;
      }
      case NormKind::PiecewiseQuadrant:
        return v.x * v.y >= 0.0 ? eval_sub(pos_, v) : eval_sub(neg_, v);
    }
    return 0.0;
  }

  NormKind kind() const { return kind_; }
  double p() const { return p_; }
  SubNorm quadrant_pos() const { return pos_; }
  SubNorm quadrant_neg() const { return neg_; }
  // polygon vertices in canonical (angle-sorted) order; empty otherwise
  const std::vector<Vec2>& vertices() const { return verts_; }
  const std::vector<Vec2>& rows() const { return rows_; }

  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }

  // single-line spec that parses back to an equal norm, byte-stable
  std::string canonical_spec() const;

 private:
  Norm() = default;

  double eval_pnorm(Vec2 v) const {
    double ax = std::fabs(v.x), ay = std::fabs(v.y);
    if (std::isinf(p_)) return ax > ay ? ax : ay;
    if (p_ == 1.0) return ax + ay;
    if (p_ == 2.0) return hypot2(v);
    double sx, sy;
    if (int_p_ > 0) {
      sx = powi(ax, int_p_);
      sy = powi(ay, int_p_);
    } else {
      sx = std::pow(ax, p_);
      sy = std::pow(ay, p_);
    }
    return std::pow(sx + sy, inv_p_);
  }

  static double eval_sub(SubNorm s, Vec2 v) {
    double ax = std::fabs(v.x), ay = std::fabs(v.y);
    switch (s) {
      case SubNorm::Linf: return ax > ay ? ax : ay;
      case SubNorm::L1: return ax + ay;
      case SubNorm::L2: return std::sqrt(ax * ax + ay * ay);
    }
    return 0.0;
  }

  static double powi(double b, int e) {
    double r = 1.0;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  NormKind kind_ = NormKind::Euclidean;
  double p_ = 2.0;
  double inv_p_ = 0.5;
  int int_p_ = 0;  // >0 when p is a small integer
  SubNorm pos_ = SubNorm::Linf;
  SubNorm neg_ = SubNorm::L1;
  std::vector<Vec2> verts_;  // polygon only
  std::vector<Vec2> rows_;   // polygon: one functional per edge pair; maxf: |rows|
  std::string label_;
};

struct SpherePoint {
  double angle = 0.0;
  Vec2 coords;
};

// point of the unit sphere in direction `angle`
SpherePoint sphere_point(const Norm& norm, double angle);

// parse the line-oriented key=value norm spec
Norm parse_norm_spec(std::string_view text);

// resolve a CLI argument: builtin alias, then file path, then inline spec
Norm norm_from_arg(const std::string& arg);

// named builtin norms: euclid, l1, linf, l4, l10, linf-l1, sqrt2max, hexagon
std::vector<std::pair<std::string, Norm>> norm_zoo();

// centrally symmetric random polygon gauge with min_pairs..max_pairs vertex
// pairs, angles stratified over the half circle, radii in [0.6, 1.6];
// redraws until the vertices pass validation
Norm random_polygon(std::mt19937_64& gen, int min_pairs = 4, int max_pairs = 8);

std::string format_double(double v);  // shortest stable round-trip text

}  // namespace birk
