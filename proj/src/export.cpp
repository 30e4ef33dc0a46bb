#include "fwh/export.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

#include "fwh/errors.hpp"

namespace fwh {

using nlohmann::json;

namespace {

double lerp_cell(double lo, double hi, int k, int n) { return lo + (hi - lo) * (k + 0.5) / n; }

// Parameter range of the line inside [-box, box]^3 (base is inside).
std::pair<double, double> clip_to_box(const Line& l, double box) {
  double lo = -INFINITY, hi = INFINITY;
  for (int i = 0; i < 3; ++i) {
    const double d = l.direction[i], b = l.base[i];
    if (std::abs(d) < 1e-15) continue;
    double s0 = (-box - b) / d, s1 = (box - b) / d;
    if (s0 > s1) std::swap(s0, s1);
    lo = std::max(lo, s0);
    hi = std::min(hi, s1);
  }
  return {lo, hi};
}

std::vector<Vec3d> sample_line(const Line& l, double box, int n) {
  const auto [lo, hi] = clip_to_box(l, box);
  std::vector<Vec3d> pts;
  for (int k = 0; k < n; ++k) pts.push_back(l.at(lo + (hi - lo) * k / (n - 1)));
  return pts;
}

std::vector<Vec3d> sample_geodesic(const Geodesic& g, Model model, int n) {
  std::vector<Vec3d> pts;
  for (int k = 0; k < n; ++k) {
    const HPoint p = point_on_geodesic(g, (k + 0.5) / n);
    pts.push_back(model == Model::Ball ? to_ball(p).v : p.coords());
  }
  return pts;
}

json boundary_json(const Boundary& b) {
  if (b.infinite) return "inf";
  return json::array({b.value.real(), b.value.imag()});
}

Boundary boundary_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Boundary::infinity();
  return Boundary(Complexd(j.at(0).get<double>(), j.at(1).get<double>()));
}

json vec_json(const Vec3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3d vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidArgument("expected an [x, y, z] triple");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json fibration_json(const Fibration& f) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EuclideanFt>) {
          return {{"variant", "F_t"}, {"t", v.t()}};
        } else if constexpr (std::is_same_v<T, HyperbolicFz>) {
          return {{"variant", "F_z"}, {"z", json::array({v.z().real(), v.z().imag()})}};
        } else {
          return {{"variant", "F_inf"}};
        }
      },
      f);
}

Fibration fibration_from_json(const json& j) {
  const auto variant = j.at("variant").get<std::string>();
  if (variant == "F_t") return EuclideanFt(j.at("t").get<double>());
  if (variant == "F_z") return HyperbolicFz(Complexd(j.at("z").at(0).get<double>(), j.at("z").at(1).get<double>()));
  if (variant == "F_inf") return HyperbolicFInf{};
  throw InvalidArgument("unknown fibration variant '" + variant + "'");
}

json fiber_params(const Fibration& f, const Fiber& fiber) {
  if (const auto* l = std::get_if<Line>(&fiber)) {
    return {{"base", vec_json(l->base)}, {"direction", vec_json(l->direction)}, {"height", l->base.z()}};
  }
  const auto& g = std::get<Geodesic>(fiber);
  json p = {{"u", boundary_json(g.u)}, {"v", boundary_json(g.v)}};
  if (const auto* fz = std::get_if<HyperbolicFz>(&f)) {
    if (const auto c = fz_coords(fz->z(), g)) {
      p["lambda"] = c->lambda;
      p["a"] = c->a;
    }
  } else if (g.is_vertical()) {
    const Complexd foot = g.foot();
    p["foot"] = json::array({foot.real(), foot.imag()});
  }
  return p;
}

Fiber fiber_from_params(Space space, const json& p) {
  if (space == Space::E3) return Line(vec_from_json(p.at("base")), vec_from_json(p.at("direction")));
  return Geodesic(boundary_from_json(p.at("u")), boundary_from_json(p.at("v")));
}

}  // namespace

std::string ExportDocument::space() const {
  if (space_of(fibration) == Space::E3) return "E3";
  return model == Model::Ball ? "H3-ball" : "H3-halfspace";
}

ExportDocument sample_fibration(const Fibration& f, const SampleOptions& opt) {
  if (!(opt.box > 0) || opt.grid < 1 || opt.points_per_fiber < 2) {
    throw InvalidArgument("sampling needs box > 0, grid >= 1 and at least 2 points per fiber");
  }
  ExportDocument doc{f, space_of(f) == Space::E3 ? Model::HalfSpace : opt.model, {}};
  const int n = opt.grid;
  int id = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ExportedFiber out;
      out.id = id++;
      if (const auto* ft = std::get_if<EuclideanFt>(&f)) {
        const double z = lerp_cell(-opt.box, opt.box, i, n);
        const double s = lerp_cell(-opt.box, opt.box, j, n);
        const double th = ft->t() * z;
        const Line l = fiber_e3(ft->t(), Vec3d(-s * std::sin(th), s * std::cos(th), z));
        out.fiber = l;
        out.points = sample_line(l, opt.box, opt.points_per_fiber);
      } else {
        Geodesic g;
        if (const auto* fz = std::get_if<HyperbolicFz>(&f)) {
          const double lambda = std::exp(lerp_cell(std::log(0.25), std::log(4.0), i, n));
          g = fz_fiber(fz->z(), {lambda, lerp_cell(-opt.box, opt.box, j, n)});
        } else {
          const Complexd foot(lerp_cell(-opt.box, opt.box, i, n), lerp_cell(-opt.box, opt.box, j, n));
          g = fiber_h3_inf(HPoint(foot, 1.0));
        }
        out.fiber = g;
        out.points = sample_geodesic(g, doc.model, opt.points_per_fiber);
      }
      doc.fibers.push_back(std::move(out));
    }
  }
  return doc;
}

json to_json(const ExportDocument& doc) {
  json fibers = json::array();
  for (const auto& fb : doc.fibers) {
    json pts = json::array();
    for (const auto& p : fb.points) pts.push_back(vec_json(p));
    fibers.push_back({{"id", fb.id}, {"params", fiber_params(doc.fibration, fb.fiber)}, {"points", pts}});
  }
  return {{"space", doc.space()}, {"fibration", fibration_json(doc.fibration)}, {"fibers", fibers}};
}

ExportDocument document_from_json(const json& j) {
  try {
    ExportDocument doc{fibration_from_json(j.at("fibration")), Model::HalfSpace, {}};
    const auto space = j.at("space").get<std::string>();
    if (space == "H3-ball") {
      doc.model = Model::Ball;
    } else if (space != "E3" && space != "H3-halfspace") {
      throw InvalidArgument("unknown space '" + space + "'");
    }
    if ((space == "E3") != (space_of(doc.fibration) == Space::E3)) {
      throw InvalidArgument("space '" + space + "' does not match the fibration");
    }
    for (const auto& jf : j.at("fibers")) {
      ExportedFiber fb;
      fb.id = jf.at("id").get<int>();
      fb.fiber = fiber_from_params(space_of(doc.fibration), jf.at("params"));
      for (const auto& p : jf.at("points")) fb.points.push_back(vec_from_json(p));
      doc.fibers.push_back(std::move(fb));
    }
    return doc;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed export document: ") + e.what());
  }
}

void write_obj(std::ostream& os, const ExportDocument& doc) {
  os << "# " << describe(doc.fibration) << " (" << doc.space() << ")\n";
  os << std::setprecision(17);
  std::size_t next = 1;
  for (const auto& fb : doc.fibers) {
    os << "o fiber_" << fb.id << "\n";
    for (const auto& p : fb.points) os << "v " << p.x() << " " << p.y() << " " << p.z() << "\n";
    os << "l";
    for (std::size_t k = 0; k < fb.points.size(); ++k) os << " " << next + k;
    os << "\n";
    next += fb.points.size();
  }
}

std::vector<std::string> validate(const ExportDocument& doc, double tol) {
  std::vector<std::string> problems;
  const FibrationView view(doc.fibration);
  const bool e3 = space_of(doc.fibration) == Space::E3;
  for (const auto& fb : doc.fibers) {
    const std::string who = "fiber " + std::to_string(fb.id) + ": ";
    if (fb.points.size() < 2) problems.push_back(who + "fewer than 2 points");
    if (e3 != std::holds_alternative<Line>(fb.fiber)) {
      problems.push_back(who + "fiber type does not match the space");
      continue;
    }
    const double member = membership_residual(view, fb.fiber);
    if (!(member < tol)) problems.push_back(who + "not a fiber of the fibration (residual " + std::to_string(member) + ")");
    for (std::size_t k = 0; k < fb.points.size(); ++k) {
      const Vec3d& p = fb.points[k];
      const std::string where = who + "point " + std::to_string(k) + ": ";
      if (!p.allFinite()) {
        problems.push_back(where + "not finite");
        continue;
      }
      double miss = 0;
      if (e3) {
        miss = std::get<Line>(fb.fiber).distance_to(p);
      } else if (doc.model == Model::Ball) {
        if (!(p.norm() < 1)) {
          problems.push_back(where + "outside the open unit ball");
          continue;
        }
        miss = distance_to_geodesic(to_half_space(BallPoint<double>(p)), std::get<Geodesic>(fb.fiber));
      } else {
        if (!(p.z() > 0)) {
          problems.push_back(where + "height is not positive");
          continue;
        }
        miss = distance_to_geodesic(HPoint(Complexd(p.x(), p.y()), p.z()), std::get<Geodesic>(fb.fiber));
      }
      if (!(miss < tol)) problems.push_back(where + "off its fiber by " + std::to_string(miss));
    }
  }
  return problems;
}

Complexd parse_complex(std::string_view text) {
  static const std::string num = R"(((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
  static const std::regex real_only("^([+-]?)" + num + "$");
  static const std::regex imag_only("^([+-]?)" + num + "?i$");
  static const std::regex both("^([+-]?)" + num + "([+-])" + num + "?i$");
  const std::string s(text);
  auto value = [](const std::ssub_match& sign, const std::ssub_match& digits) {
    const double v = digits.matched ? std::stod(digits.str()) : 1.0;
    return sign.str() == "-" ? -v : v;
  };
  std::smatch m;
  if (std::regex_match(s, m, real_only)) return {value(m[1], m[2]), 0};
  if (std::regex_match(s, m, imag_only)) return {0, value(m[1], m[2])};
  if (std::regex_match(s, m, both)) return {value(m[1], m[2]), value(m[3], m[4])};
  throw InvalidArgument("cannot parse '" + s + "' as a complex number of the form a+bi");
}

}  // namespace fwh
