#include "birk/norm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "birk/errors.hpp"
#include "birk/rng.hpp"

namespace birk {

std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Norm Norm::pnorm(double p) {
  if (!(p >= 1.0))  // NaN lands here too
    throw ValidationError("pnorm requires p >= 1, got " + format_double(p));
  Norm n;
  n.kind_ = NormKind::PNorm;
  n.p_ = p;
  n.inv_p_ = 1.0 / p;
  n.int_p_ = 0;
  if (!std::isinf(p) && p == std::floor(p) && p <= 64.0) n.int_p_ = static_cast<int>(p);
  n.label_ = std::isinf(p) ? "pnorm(inf)" : "pnorm(" + format_double(p) + ")";
  return n;
}

Norm Norm::euclidean() {
  Norm n;
  n.kind_ = NormKind::Euclidean;
  n.label_ = "euclid";
  return n;
}

Norm Norm::polygon(std::vector<Vec2> vertices) {
  const size_t m2 = vertices.size();
  if (m2 < 4 || m2 % 2 != 0)
    throw NonSymmetricVertices("polygon needs an even vertex count >= 4");

  double scale = 0.0;
  for (const Vec2& v : vertices) scale = std::max(scale, std::max(std::fabs(v.x), std::fabs(v.y)));
  if (scale <= 0.0) throw OriginNotInterior("all polygon vertices at the origin");
  const double tol = 1e-9 * scale;

  for (const Vec2& v : vertices) {
    bool found = false;
    for (const Vec2& w : vertices)
      if (std::fabs(w.x + v.x) <= tol && std::fabs(w.y + v.y) <= tol) { found = true; break; }
    if (!found)
      throw NonSymmetricVertices("vertex (" + format_double(v.x) + "," + format_double(v.y) +
                                 ") has no antipode");
  }

  std::sort(vertices.begin(), vertices.end(), [](Vec2 a, Vec2 b) {
    return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
  });

  const double area_tol = 1e-12 * scale * scale;
  for (size_t i = 0; i < m2; ++i) {
    if (cross(vertices[i], vertices[(i + 1) % m2]) <= area_tol)
      throw OriginNotInterior("origin not strictly inside the polygon");
  }
  for (size_t i = 0; i < m2; ++i) {
    Vec2 a = vertices[i], b = vertices[(i + 1) % m2], c = vertices[(i + 2) % m2];
    if (cross(b - a, c - b) <= area_tol)
      throw NonConvexVertices("vertices not in strictly convex position near (" +
                              format_double(b.x) + "," + format_double(b.y) + ")");
  }

  Norm n;
  n.kind_ = NormKind::Polygon;
  n.verts_ = vertices;
  const size_t m = m2 / 2;  // edge i+m is the antipode of edge i
  n.rows_.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    Vec2 a = vertices[i], b = vertices[(i + 1) % m2];
    Vec2 e = b - a;
    Vec2 nrm{e.y, -e.x};
    double h = dot(nrm, a);
    n.rows_.push_back({nrm.x / h, nrm.y / h});
  }
  n.label_ = "polygon(" + std::to_string(m2) + ")";
  return n;
}

Norm Norm::max_functionals(std::vector<Vec2> rows) {
  if (rows.empty()) throw ValidationError("max_functionals needs at least one row");
  bool spans_x = false, spans_y = false;
  for (Vec2& r : rows) {
    r.x = std::fabs(r.x);
    r.y = std::fabs(r.y);
    if (r.x > 0) spans_x = true;
    if (r.y > 0) spans_y = true;
  }
  if (!spans_x || !spans_y)
    throw ValidationError("max_functionals rows must bound both coordinates");
  std::sort(rows.begin(), rows.end(),
            [](Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  Norm n;
  n.kind_ = NormKind::MaxFunctionals;
  n.rows_ = std::move(rows);
  n.label_ = "max_functionals(" + std::to_string(n.rows_.size()) + ")";
  return n;
}

Norm Norm::piecewise_quadrant(SubNorm pos, SubNorm neg) {
  Norm n;
  n.kind_ = NormKind::PiecewiseQuadrant;
  n.pos_ = pos;
  n.neg_ = neg;
  auto nm = [](SubNorm s) {
    switch (s) {
      case SubNorm::Linf: return "linf";
      case SubNorm::L1: return "l1";
      case SubNorm::L2: return "l2";
    }
    return "?";
  };
  n.label_ = std::string("piecewise(") + nm(pos) + "," + nm(neg) + ")";
  return n;
}

SpherePoint sphere_point(const Norm& norm, double angle) {
  Vec2 u = dir(angle);
  double n = norm.evaluate(u);
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError("norm not positive on direction " + format_double(angle));
  return SpherePoint{angle, {u.x / n, u.y / n}};
}

namespace {

std::string sub_name(SubNorm s) {
  switch (s) {
    case SubNorm::Linf: return "linf";
    case SubNorm::L1: return "l1";
    case SubNorm::L2: return "l2";
  }
  return "?";
}

SubNorm sub_from(const std::string& s) {
  if (s == "linf") return SubNorm::Linf;
  if (s == "l1") return SubNorm::L1;
  if (s == "l2") return SubNorm::L2;
  throw ParseError("unknown quadrant norm '" + s + "' (want linf, l1 or l2)");
}

std::string pair_list(const std::vector<Vec2>& ps) {
  std::string out = "[";
  for (size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ",";
    out += "(" + format_double(ps[i].x) + "," + format_double(ps[i].y) + ")";
  }
  return out + "]";
}

// key=value tokens; a value starting with '[' runs to the matching ']'
std::vector<std::pair<std::string, std::string>> tokenize_spec(std::string_view text) {
  std::string clean;
  clean.reserve(text.size());
  for (size_t ln = 0; ln < text.size();) {
    size_t end = text.find('\n', ln);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(ln, end - ln);
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    clean.append(line);
    clean.push_back(' ');
    ln = end + 1;
  }

  std::vector<std::pair<std::string, std::string>> kv;
  size_t i = 0;
  auto skip_ws = [&] { while (i < clean.size() && std::isspace((unsigned char)clean[i])) ++i; };
  while (true) {
    skip_ws();
    if (i >= clean.size()) break;
    size_t key_start = i;
    while (i < clean.size() && (std::isalnum((unsigned char)clean[i]) || clean[i] == '_')) ++i;
    std::string key = clean.substr(key_start, i - key_start);
    if (key.empty() || i >= clean.size() || clean[i] != '=')
      throw ParseError("expected key=value at offset " + std::to_string(key_start) + " near '" +
                       clean.substr(key_start, std::min<size_t>(12, clean.size() - key_start)) + "'");
    ++i;
    skip_ws();
    std::string val;
    if (i < clean.size() && clean[i] == '[') {
      size_t close = clean.find(']', i);
      if (close == std::string::npos) throw ParseError("unterminated '[' in value of '" + key + "'");
      val = clean.substr(i, close - i + 1);
      i = close + 1;
    } else {
      size_t val_start = i;
      while (i < clean.size() && !std::isspace((unsigned char)clean[i])) ++i;
      val = clean.substr(val_start, i - val_start);
    }
    if (val.empty()) throw ParseError("empty value for key '" + key + "'");
    kv.emplace_back(key, val);
  }
  return kv;
}

double parse_number(const std::string& s, const std::string& what) {
  const char* c = s.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end == c || *end != '\0' || !std::isfinite(v))
    throw ParseError("bad number '" + s + "' for " + what);
  return v;
}

std::vector<Vec2> parse_pairs(const std::string& s, const std::string& what) {
  std::vector<Vec2> out;
  size_t i = 0;
  auto skip = [&] { while (i < s.size() && (std::isspace((unsigned char)s[i]) || s[i] == ',')) ++i; };
  if (i < s.size() && s[i] == '[') ++i;
  while (true) {
    skip();
    if (i >= s.size() || s[i] == ']') break;
    if (s[i] != '(') throw ParseError("expected '(' in " + what + " at '" + s.substr(i, 8) + "'");
    size_t close = s.find(')', i);
    if (close == std::string::npos) throw ParseError("unterminated '(' in " + what);
    std::string body = s.substr(i + 1, close - i - 1);
    size_t comma = body.find(',');
    if (comma == std::string::npos) throw ParseError("pair without comma in " + what);
    out.push_back({parse_number(body.substr(0, comma), what),
                   parse_number(body.substr(comma + 1), what)});
    i = close + 1;
  }
  if (out.empty()) throw ParseError(what + " lists no pairs");
  return out;
}

}  // namespace

std::string Norm::canonical_spec() const {
  switch (kind_) {
    case NormKind::Euclidean:
      return "kind=euclid";
    case NormKind::PNorm:
      return std::isinf(p_) ? "kind=pnorm p=inf" : "kind=pnorm p=" + format_double(p_);
    case NormKind::Polygon:
      return "kind=polygon vertices=" + pair_list(verts_);
    case NormKind::MaxFunctionals:
      return "kind=max_functionals rows=" + pair_list(rows_);
    case NormKind::PiecewiseQuadrant:
      return "kind=piecewise_quadrant pos=" + sub_name(pos_) + " neg=" + sub_name(neg_);
  }
  return {};
}

Norm parse_norm_spec(std::string_view text) {
  auto kv = tokenize_spec(text);
  auto get = [&](const char* key, bool required) -> const std::string* {
    const std::string* found = nullptr;
    for (auto& [k, v] : kv)
      if (k == key) {
        if (found) throw ParseError(std::string("duplicate key '") + key + "'");
        found = &v;
      }
    if (!found && required) throw ParseError(std::string("missing key '") + key + "'");
    return found;
  };
  auto require_only = [&](std::initializer_list<const char*> keys) {
    for (auto& [k, v] : kv) {
      bool ok = false;
      for (const char* key : keys) ok = ok || k == key;
      if (!ok) throw ParseError("unexpected key '" + k + "'");
    }
  };

  const std::string& kind = *get("kind", true);
  if (kind == "euclid") {
    require_only({"kind"});
    return Norm::euclidean();
  }
  if (kind == "pnorm") {
    require_only({"kind", "p"});
    const std::string& p = *get("p", true);
    if (p == "inf" || p == "infinity")
      return Norm::pnorm(std::numeric_limits<double>::infinity());
    return Norm::pnorm(parse_number(p, "p"));
  }
  if (kind == "polygon") {
    require_only({"kind", "vertices"});
    return Norm::polygon(parse_pairs(*get("vertices", true), "vertices"));
  }
  if (kind == "max_functionals") {
    require_only({"kind", "rows"});
    return Norm::max_functionals(parse_pairs(*get("rows", true), "rows"));
  }
  if (kind == "piecewise_quadrant") {
    require_only({"kind", "pos", "neg"});
    return Norm::piecewise_quadrant(sub_from(*get("pos", true)), sub_from(*get("neg", true)));
  }
  throw ParseError("unknown kind '" + kind + "'");
}

std::vector<std::pair<std::string, Norm>> norm_zoo() {
  std::vector<std::pair<std::string, Norm>> zoo;
  auto add = [&](const std::string& name, Norm n) {
    n.set_label(name);
    zoo.emplace_back(name, std::move(n));
  };
  const double s = std::sqrt(0.5);
  add("euclid", Norm::euclidean());
  add("l1", Norm::pnorm(1));
  add("linf", Norm::pnorm(std::numeric_limits<double>::infinity()));
  add("l4", Norm::pnorm(4));
  add("l10", Norm::pnorm(10));
  add("linf-l1", Norm::piecewise_quadrant(SubNorm::Linf, SubNorm::L1));
  add("sqrt2max", Norm::max_functionals({{1, 0}, {0, 1}, {s, s}}));
  add("hexagon", Norm::polygon({{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}}));
  return zoo;
}

Norm random_polygon(std::mt19937_64& gen, int min_pairs, int max_pairs) {
  constexpr double kPi = 3.141592653589793;
  for (int attempt = 0; attempt < 200; ++attempt) {
    int m = rng_int(gen, min_pairs, max_pairs);
    std::vector<Vec2> vs;
    vs.reserve(2 * m);
    for (int i = 0; i < m; ++i) {
      double ang = (i + 0.25 + 0.5 * rng_u01(gen)) * kPi / m;
      double rad = rng_uniform(gen, 0.6, 1.6);
      Vec2 v = rad * dir(ang);
      vs.push_back(v);
      vs.push_back(-v);
    }
    try {
      Norm n = Norm::polygon(vs);
      n.set_label("random_polygon(" + std::to_string(2 * m) + ")");
      return n;
    } catch (const ValidationError&) {
      // vertex fell inside the hull of the others; draw again
    }
  }
  throw ValidationError("random polygon generation kept failing validation");
}

Norm norm_from_arg(const std::string& arg) {
  for (auto& [name, n] : norm_zoo())
    if (arg == name) return n;
  if (arg == "l2") {
    Norm n = Norm::pnorm(2);
    n.set_label("l2");
    return n;
  }
  if (arg.rfind("lp:", 0) == 0) {
    std::string p = arg.substr(3);
    Norm n = (p == "inf" || p == "infinity")
                 ? Norm::pnorm(std::numeric_limits<double>::infinity())
                 : Norm::pnorm(parse_number(p, "p"));
    n.set_label(arg);
    return n;
  }
  if (arg.size() > 1 && arg[0] == 'l' &&
      std::all_of(arg.begin() + 1, arg.end(), [](char c) { return std::isdigit((unsigned char)c); })) {
    Norm n = Norm::pnorm(parse_number(arg.substr(1), "p"));
    n.set_label(arg);
    return n;
  }
  std::error_code ec;
  if (std::filesystem::exists(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot read norm spec file '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    Norm n = parse_norm_spec(ss.str());
    n.set_label(std::filesystem::path(arg).stem().string());
    return n;
  }
  if (arg.find('=') != std::string::npos) return parse_norm_spec(arg);
  throw ParseError("unknown norm '" + arg + "' (not an alias, file or inline spec)");
}

}  // namespace birk
