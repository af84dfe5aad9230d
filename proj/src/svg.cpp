#include "birk/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "birk/errors.hpp"

namespace birk {

namespace {

constexpr double kTau = 6.283185307179586;

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void line(std::ostringstream& out, Vec2 a, Vec2 b, const char* stroke,
          const char* extra = "") {
  out << "  <line x1=\"" << fmt6(a.x) << "\" y1=\"" << fmt6(-a.y) << "\" x2=\""
      << fmt6(b.x) << "\" y2=\"" << fmt6(-b.y) << "\" stroke=\"" << stroke
      << "\" stroke-width=\"0.012\" " << extra << "/>\n";
}

void label(std::ostringstream& out, Vec2 at, const std::string& text,
           const char* fill) {
  out << "  <text x=\"" << fmt6(at.x) << "\" y=\"" << fmt6(-at.y)
      << "\" font-size=\"0.11\" font-family=\"sans-serif\" fill=\"" << fill
      << "\">" << text << "</text>\n";
}

}  // namespace

std::string sphere_svg(const Norm& norm, const ConstantEstimate* witness,
                       int samples) {
  if (samples < 16) throw DomainError("sphere_svg needs at least 16 samples");
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.9 -1.9 3.8 3.8\" "
         "width=\"720\" height=\"720\">\n";
  out << "  <rect x=\"-1.9\" y=\"-1.9\" width=\"3.8\" height=\"3.8\" fill=\"#ffffff\"/>\n";
  line(out, {-1.85, 0}, {1.85, 0}, "#c9c9c9");
  line(out, {0, -1.85}, {0, 1.85}, "#c9c9c9");

  out << "  <polyline fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"0.02\" points=\"";
  for (int i = 0; i <= samples; ++i) {
    Vec2 p = sphere_point(norm, kTau * i / samples).coords;
    if (i) out << " ";
    out << fmt6(p.x) << "," << fmt6(-p.y);
  }
  out << "\"/>\n";

  if (witness) {
    Vec2 x = witness->witness.x.coords;
    Vec2 y = witness->witness.y.coords;
    // the triangle x, y, -y: its sides against x realize x-y and x+y
    line(out, {0, 0}, x, "#b02a2a");
    line(out, {0, 0}, y, "#1c7d38");
    line(out, y, x, "#b05c2a", "stroke-dasharray=\"0.05,0.03\"");
    line(out, -y, x, "#6a2ab0", "stroke-dasharray=\"0.05,0.03\"");
    label(out, x * 1.08, "x", "#b02a2a");
    label(out, y * 1.08, "y", "#1c7d38");
    label(out, (x + y) * 0.54, "x-y", "#b05c2a");
    label(out, (x - y) * 0.54, "x+y", "#6a2ab0");
    std::string caption = std::string(constant_name(witness->kind.tag));
    if (witness->kind.tag == ConstantTag::HeinzB)
      caption += "(nu=" + format_double(witness->kind.nu) + ")";
    caption += " = " + fmt6(witness->value);
    label(out, {-1.8, 1.72}, caption, "#222222");
    label(out, {-1.8, 1.56},
          "s = " + fmt6(witness->s) + ", d = " + fmt6(witness->d) +
              ", defect = " + format_double(witness->witness.defect),
          "#555555");
  }
  label(out, {1.72, 0.06}, "e1", "#888888");
  label(out, {0.05, 1.74}, "e2", "#888888");
  out << "</svg>\n";
  return out.str();
}

}  // namespace birk
