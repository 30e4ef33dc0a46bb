#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fwh/fibration.hpp"

namespace fwh {

using SubgroupSpec = std::variant<SubgroupSpecE3<double>, SubgroupSpecH3<double>>;

Space space_of(const SubgroupSpec& g);
const std::string& name_of(const SubgroupSpec& g);
int dimension_of(const SubgroupSpec& g);

/// Looks the name up in the catalog of `space` (pitch for E3, ratio for H3).
SubgroupSpec make_subgroup(Space space, std::string_view name, double parameter);

/// Flow of generator i at parameter s.
Isometry generator_flow(const SubgroupSpec& g, std::size_t i, double s);
/// Flow of cos(phi) X_i + sin(phi) X_j at parameter s.
Isometry mixed_flow(const SubgroupSpec& g, std::size_t i, std::size_t j, double phi, double s);
/// Product of all generator flows at independent parameters in [-2, 2].
Isometry random_element(const SubgroupSpec& g, std::mt19937_64& rng);

/// Velocity of generator i at p, in coordinates orthonormal for the metric.
Vec3d generator_velocity(const SubgroupSpec& g, std::size_t i, const Point& p);
/// Unit tangent of `fiber` at a point on it.
Vec3d fiber_tangent(const Fiber& fiber, const Point& p);

struct CheckReport {
  std::string name;
  bool passed = false;
  double max_residual = 0;
  int samples = 0;
  double tolerance = 0;
  std::string evidence;  // empty when passed
};

std::string describe(const CheckReport& r);

/// Random point pairs in [-3,3]^3 or in |Re|, |Im| <= 2, x in [0.1, 4].
/// Even samples put q on the fiber through p and measure how far fiber(q)
/// strays from fiber(p); odd samples take q at random and fail if the two
/// fibers cross transversally.
CheckReport check_partition(const FibrationView& f, int n_samples, double tol, std::uint64_t seed);

const std::vector<double>& default_grid();

/// Every generator flow value in `grid` must carry each of `n_fibers` sampled
/// fibers onto a fiber. A failure carries a transversal crossing as evidence
/// when one exists.
CheckReport check_preservation(const FibrationView& f, const SubgroupSpec& g,
                               const std::vector<double>& grid, double tol, std::uint64_t seed = 0,
                               int n_fibers = 100);

using VectorField = std::function<Vec3d(const Vec3d&)>;

Vec3d curl_fd(const VectorField& field, const Vec3d& p, double h);

/// Unit field (cos tz, sin tz, 0) tangent to F_t.
Vec3d unit_field(double t, const Vec3d& p);

/// Curl eigenvalue of the unit field along the fibers of a Euclidean view at p,
/// orienting the field continuously near p. Sign follows the right-handed curl.
double curl_eigenvalue(const FibrationView& f, const Vec3d& p, double h);

/// Rank of generator velocities together with the fiber tangent, maximized
/// over the probe points.
int orbit_dimension(const SubgroupSpec& g, const Fiber& fiber, const std::vector<Point>& probes);

// ---------------------------------------------------------------------------
// Classification replay

enum class Outcome {
  TooSmall,
  FixesFiber,
  TransversalImage,
  ProducesFibration,
  PreservesKnownFibration,
  Unresolved,
};

const char* to_string(Outcome o);

struct Evidence {
  std::string isometry;
  std::string image;
  std::optional<Point> point;
  double angle = 0;
  double residual = 0;
  std::string note;
};

struct CandidateVerdict {
  std::string fiber;
  int orbit_dimension = 0;
  Outcome outcome = Outcome::Unresolved;
  std::optional<InvariantTag> tag;
  Evidence evidence;
};

struct CaseVerdict {
  std::string group_name;
  Outcome outcome = Outcome::Unresolved;
  std::vector<InvariantTag> tags;
  std::vector<CandidateVerdict> candidates;

  /// Row text compared against the golden tables.
  std::string summary() const;
};

struct ClassifyOptions {
  double tol = 1e-8;
  std::uint64_t seed = 1;
  double pitch = 1.0;  // E(2)_t-bar and SO(2)_t-bar
  double ratio = 0.5;  // Lox and ScrewHom
};

/// Candidate fibers through the basepoint: special positions plus random ones.
std::vector<std::pair<std::string, Fiber>> candidate_fibers(Space space, std::uint64_t seed);

CandidateVerdict classify_candidate(const SubgroupSpec& g, const std::string& label,
                                    const Fiber& fiber, double tol, std::uint64_t seed);
CaseVerdict classify_group(const SubgroupSpec& g, const ClassifyOptions& opt = {});
std::vector<CaseVerdict> classification_demo(Space space, const ClassifyOptions& opt = {});

/// Expected (group, summary) rows.
const std::vector<std::pair<std::string, std::string>>& golden_table(Space space);

/// Does g preserve f? PreservesKnownFibration(tag of f), TransversalImage with
/// evidence, or Unresolved when it fails without a transversal crossing.
CaseVerdict assess_group(const FibrationView& f, const SubgroupSpec& g, double tol,
                         std::uint64_t seed);

/// Invariant of a Euclidean view read off the sampled geometry: |curl eigenvalue|.
InvariantTag measured_invariant(const FibrationView& f, std::uint64_t seed);

}  // namespace fwh
