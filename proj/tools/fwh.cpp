#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fwh/errors.hpp"
#include "fwh/export.hpp"
#include "fwh/verify.hpp"

using namespace fwh;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string out;
  std::string format = "json";
};

struct FibrationArgs {
  std::string space;
  std::optional<double> t;
  std::string z;
  bool inf = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--space", space, "e3 or h3")->required()->transform(CLI::IsMember({"e3", "h3"}, CLI::ignore_case));
    cmd->add_option("--t", t, "pitch of F_t (E3)");
    cmd->add_option("--z", z, "parameter of F_z as a+bi (H3)");
    cmd->add_flag("--inf", inf, "vertical fibration F_inf (H3)");
  }

  Space parsed_space() const { return space == "e3" ? Space::E3 : Space::H3; }

  Fibration build() const {
    if (parsed_space() == Space::E3) {
      if (!z.empty() || inf) throw UsageError("--z and --inf need --space h3");
      const double tv = t.value_or(0.0);
      if (!std::isfinite(tv)) throw UsageError("--t must be finite");
      if (tv < 0) {
        std::ostringstream hint;
        hint << "--t must be >= 0; F_" << tv << " is the mirror image of F_" << -tv << ", use --t " << -tv;
        throw UsageError(hint.str());
      }
      return EuclideanFt(tv);
    }
    if (t) throw UsageError("--t needs --space e3");
    if (inf == !z.empty()) throw UsageError("give exactly one of --z or --inf for --space h3");
    if (inf) return HyperbolicFInf{};
    const Complexd zv = parse_complex(z);
    if (!(zv.imag() > 0)) {
      throw UsageError("Im z must be > 0; F_z is defined for z in the upper half-plane (" +
                       format_complex(std::conj(zv)) + " is the nearest valid value)");
    }
    return HyperbolicFz(zv);
  }
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot open '" + g.out + "' for writing");
  f << text;
}

std::string step_label(CanonicalStep s) {
  return s == CanonicalStep::RotationPi ? "flip" : to_string(s);
}

int run_sample(const Global& g, const FibrationArgs& fa, const std::string& model, const SampleOptions& base) {
  SampleOptions opt = base;
  const Fibration f = fa.build();
  opt.model = model == "ball" ? Model::Ball : Model::HalfSpace;
  if (opt.model == Model::Ball && space_of(f) == Space::E3) throw UsageError("--model ball needs --space h3");
  const ExportDocument doc = sample_fibration(f, opt);
  const auto problems = validate(doc, g.tol);
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "invalid export: " << p << "\n";
    return kCheckFailed;
  }
  if (g.format == "obj") {
    std::ostringstream os;
    write_obj(os, doc);
    emit(g, os.str());
  } else {
    emit(g, to_json(doc).dump(1) + "\n");
  }
  if (!g.out.empty()) std::cout << "wrote " << doc.fibers.size() << " fibers to " << g.out << "\n";
  return kOk;
}

int run_verify(const Global& g, const FibrationArgs& fa, const std::string& checks, const std::string& group,
               std::optional<double> param, int samples) {
  const Fibration f = fa.build();
  const FibrationView view(f);
  std::ostringstream os;
  bool ok = true;
  if (!group.empty()) {
    double p = param.value_or(0.5);
    if (!param && fa.parsed_space() == Space::E3) p = std::get<EuclideanFt>(f).t();
    const SubgroupSpec spec = make_subgroup(fa.parsed_space(), group, p);
    const CaseVerdict v = assess_group(view, spec, g.tol, g.seed);
    os << describe(f) << " under " << v.group_name << ": " << v.summary() << "\n";
    for (const auto& c : v.candidates) {
      if (!c.evidence.note.empty()) os << "  evidence: " << c.evidence.note << "\n";
    }
    ok = v.outcome == Outcome::PreservesKnownFibration;
  } else {
    const auto names = split_commas(checks);
    if (names.empty()) throw UsageError("--checks is empty");
    for (const auto& n : names) {
      if (n != "partition" && n != "preservation") throw UsageError("unknown check '" + n + "' (partition, preservation)");
    }
    for (const auto& n : names) {
      if (n == "partition") {
        const auto r = check_partition(view, samples, g.tol, g.seed);
        os << describe(r) << "\n";
        ok = ok && r.passed;
      } else {
        // The group known to act transitively on this family.
        const Space s = fa.parsed_space();
        SubgroupSpec spec = make_subgroup(Space::H3, "Sim", 0.5);
        if (const auto* ft = std::get_if<EuclideanFt>(&f)) {
          spec = ft->t() == 0 ? make_subgroup(s, "T(3)", 1) : make_subgroup(s, "E(2)_t-bar", ft->t());
        } else if (std::holds_alternative<HyperbolicFz>(f)) {
          spec = make_subgroup(s, "<Hyp,Par>", 0.5);
        }
        const auto r = check_preservation(view, spec, default_grid(), g.tol, g.seed);
        os << describe(r) << "\n";
        ok = ok && r.passed;
      }
    }
  }
  emit(g, os.str());
  return ok ? kOk : kCheckFailed;
}

int run_canonicalize(const Global& g, const std::string& ztext) {
  const Complexd z = parse_complex(ztext);
  if (!(z.imag() > 0)) throw UsageError("Im z must be > 0");
  const CanonicalZ c = canonicalize_z(z);
  std::string witness;
  for (CanonicalStep s : c.steps) witness += (witness.empty() ? "" : ", then ") + step_label(s);
  if (witness.empty()) witness = "identity";
  emit(g, format_complex(c.z) + ", " + witness + "\n");
  return kOk;
}

int run_classify(const Global& g, const std::string& space_name, bool golden, const std::string& group,
                 std::optional<double> pitch, std::optional<double> ratio) {
  const Space space = space_name == "e3" ? Space::E3 : Space::H3;
  ClassifyOptions opt;
  opt.tol = g.tol;
  opt.seed = g.seed;
  if (pitch) opt.pitch = *pitch;
  if (ratio) opt.ratio = *ratio;
  std::vector<CaseVerdict> rows;
  if (group.empty()) {
    rows = classification_demo(space, opt);
  } else {
    rows.push_back(classify_group(make_subgroup(space, group, space == Space::E3 ? opt.pitch : opt.ratio), opt));
  }
  const auto& table = golden_table(space);
  bool ok = true;
  std::ostringstream os;
  for (const auto& r : rows) {
    os << std::left << std::setw(14) << r.group_name << " " << r.summary();
    if (golden) {
      const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == r.group_name; });
      const bool match = it != table.end() && it->second == r.summary();
      if (!match) os << "   MISMATCH, expected " << (it == table.end() ? "no row" : it->second);
      ok = ok && match;
    }
    os << "\n";
  }
  if (golden) os << (ok ? "golden table: match" : "golden table: MISMATCH") << " (" << rows.size() << " rows)\n";
  emit(g, os.str());
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fiberwise homogeneous geodesic fibrations of E3 and H3"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--tol", g.tol, "residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "export format")->check(CLI::IsMember({"json", "obj"}));

  FibrationArgs sample_f, verify_f;
  SampleOptions sample_opt;
  std::string model = "halfspace";
  auto* sample = app.add_subcommand("sample", "export sampled fibers");
  sample_f.add_to(sample);
  sample->add_option("--model", model, "H3 model")->transform(CLI::IsMember({"halfspace", "ball"}, CLI::ignore_case));
  sample->add_option("--box", sample_opt.box, "half-width of the sampled region")->check(CLI::PositiveNumber);
  sample->add_option("--grid", sample_opt.grid, "fibers per grid axis")->check(CLI::Range(1, 1000));
  sample->add_option("--points", sample_opt.points_per_fiber, "points per fiber")->check(CLI::Range(2, 100000));

  std::string checks = "partition", group;
  std::optional<double> group_param;
  int samples = 1000;
  auto* verify = app.add_subcommand("verify", "run partition and preservation checks");
  verify_f.add_to(verify);
  verify->add_option("--checks", checks, "comma-separated: partition, preservation");
  verify->add_option("--group", group, "assess a catalog group against the fibration");
  verify->add_option("--param", group_param, "pitch or ratio for --group (default: t, or 0.5)");
  verify->add_option("--samples", samples, "partition samples")->check(CLI::Range(1, 10000000));

  std::string zc;
  auto* canon = app.add_subcommand("canonicalize", "canonical representative of F_z");
  canon->add_option("--z", zc, "a+bi with Im > 0")->required();

  std::string cspace, cgroup;
  bool golden = false;
  std::optional<double> pitch, ratio;
  auto* classify = app.add_subcommand("classify", "replay the classification case analysis");
  classify->add_option("--space", cspace, "e3 or h3")->required()->transform(CLI::IsMember({"e3", "h3"}, CLI::ignore_case));
  classify->add_flag("--golden", golden, "compare against the stored table");
  classify->add_option("--group", cgroup, "a single catalog group");
  classify->add_option("--pitch", pitch, "pitch of the E3 screw subgroups");
  classify->add_option("--ratio", ratio, "loxodromic ratio of the H3 screw subgroups");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*sample) return run_sample(g, sample_f, model, sample_opt);
    if (*verify) return run_verify(g, verify_f, checks, group, group_param, samples);
    if (*canon) return run_canonicalize(g, zc);
    return run_classify(g, cspace, golden, cgroup, pitch, ratio);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kCheckFailed;
  }
}
