#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fwh/fibration.hpp"

namespace fwh {

enum class Model { HalfSpace, Ball };

struct ExportedFiber {
  int id = 0;
  Fiber fiber;
  std::vector<Vec3d> points;
};

/// Sampled fibers of one fibration; points are in ball coordinates when
/// `model` is Ball.
struct ExportDocument {
  Fibration fibration;
  Model model = Model::HalfSpace;
  std::vector<ExportedFiber> fibers;

  std::string space() const;  // "E3", "H3-halfspace" or "H3-ball"
};

struct SampleOptions {
  double box = 4;
  int grid = 8;
  int points_per_fiber = 48;
  Model model = Model::HalfSpace;
};

/// E3: grid z-levels times grid offsets, clipped to [-box, box]^3.
/// F_z: grid values of lambda in [1/4, 4] times grid values of a in [-box, box].
/// F_inf: a grid x grid lattice of feet over [-box, box]^2.
ExportDocument sample_fibration(const Fibration& f, const SampleOptions& opt = {});

nlohmann::json to_json(const ExportDocument& doc);
ExportDocument document_from_json(const nlohmann::json& j);

void write_obj(std::ostream& os, const ExportDocument& doc);

/// Problems found in the document; empty when it is valid. Checks the point
/// count and model bounds, that every point lies on its fiber, and that every
/// fiber belongs to the fibration (residuals below tol).
std::vector<std::string> validate(const ExportDocument& doc, double tol = 1e-8);

/// Strict "a+bi" form: "2", "-1.5", "i", "-i", "3i", "1+2i", "0.5-1e-3i".
/// Throws InvalidArgument on anything else.
Complexd parse_complex(std::string_view text);

}  // namespace fwh
