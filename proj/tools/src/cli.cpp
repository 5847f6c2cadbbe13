#include "stalab/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "stalab/catalog.hpp"
#include "stalab/errors.hpp"
#include "stalab/phase.hpp"
#include "stalab/response.hpp"
#include "stalab/sequence_io.hpp"
#include "stalab/validation.hpp"

namespace stalab::cli {
namespace {

struct Source {
  std::string preset;
  std::string file;
  int n = 1;
  double T = 0.1;
  double g = 0.0;
  double nb = 4.0;
  std::optional<double> tau_b;
  double Tr = 0.0;
  double dT = 0.0;
  double a = 0.0;
  std::vector<double> vi{0.0, 0.0, 0.0};
  std::vector<double> rotation{0.0, 0.0, 0.0};
  std::vector<double> phases;
  std::vector<double> bloch_phases;
  bool kick_train = false;
};

void add_source_options(CLI::App& cmd, Source& s) {
  auto* preset = cmd.add_option("--preset", s.preset, "Catalog sequence")
                     ->check(CLI::IsMember({"mz", "cab", "butterfly", "triangle", "constaccel", "mz-offset"}));
  auto* file = cmd.add_option("--file", s.file, "Sequence JSON file");
  preset->excludes(file);
  cmd.add_option("--n", s.n, "Bragg order")->check(CLI::PositiveNumber);
  cmd.add_option("--T", s.T, "Half duration T (s)");
  cmd.add_option("--g", s.g, "Gravity along k (m/s^2)");
  cmd.add_option("--nb", s.nb, "Bloch oscillations per window (cab)");
  cmd.add_option("--tau-b", s.tau_b, "Bloch period (s, cab); derived from --nb when omitted");
  cmd.add_option("--Tr", s.Tr, "Lattice ramp time (s, cab)");
  cmd.add_option("--dT", s.dT, "Last-pulse timing offset (s, mz-offset)");
  cmd.add_option("--a", s.a, "Acceleration along k (m/s^2, constaccel)");
  cmd.add_option("--vi", s.vi, "Initial common velocity x y z (m/s)")->expected(3);
  cmd.add_option("--rotation", s.rotation, "Rotation rate x y z (rad/s)")->expected(3);
  cmd.add_option("--phases", s.phases, "Bragg pulse phases (rad)")->expected(1, 4);
  cmd.add_option("--bloch-phases", s.bloch_phases, "Bloch window phases (rad, cab)")->expected(4);
  cmd.add_flag("--kick-train", s.kick_train, "Bloch windows as kick trains (cab)");
}

Vec3 vec(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }

InterferometerSequence load(const Source& s) {
  if (!s.file.empty()) return load_sequence(s.file);
  if (s.preset.empty()) throw InvalidArgument("give --preset or --file");
  const auto params = PhysicalParams::rubidium87(s.n);
  const Environment env{s.g * params.k_hat(), vec(s.rotation), vec(s.vi)};
  PulsePhases ph{};
  for (std::size_t i = 0; i < s.phases.size() && i < ph.size(); ++i) ph[i] = s.phases[i];
  const Time T = seconds(s.T);
  if (s.preset == "mz") return build_mach_zehnder(params, T, env, ph);
  if (s.preset == "mz-offset") return build_mach_zehnder_offset(params, T, seconds(s.dT), env, ph);
  if (s.preset == "butterfly") return build_butterfly(params, T, env, ph);
  if (s.preset == "triangle") return build_recoil_triangle(params, T, env, ph);
  if (s.preset == "constaccel") return build_const_accel_recoil(params, T, s.a * params.k_hat(), env);
  CabOptions o;
  o.n_b = s.nb;
  o.T_r = seconds(s.Tr);
  o.kick_train = s.kick_train;
  for (std::size_t i = 0; i < s.bloch_phases.size() && i < 4; ++i) o.bloch_phases[i] = s.bloch_phases[i];
  if (s.tau_b) {
    o.tau_b = seconds(*s.tau_b);
  } else if (s.nb > 0.0) {
    const double nb_int = std::round(s.nb);
    if (nb_int == s.nb) {
      o.tau_b = (T - o.T_r * 4) / static_cast<std::int64_t>(2 * nb_int);
    } else {
      o.tau_b = seconds((s.T - 4.0 * s.Tr) / (2.0 * s.nb));
    }
  }
  return build_cab(params, T, o, env, ph);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase, space-time area and vibration response of light-pulse atom interferometers"};
  app.name("stalab");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Source src;
  std::string out_path, format = "kv", scale = "linear", filter, inject;
  double wmin = 0.0, wmax = 0.0;
  int points = 0, samples = 201;
  bool list = false;

  auto* phase = app.add_subcommand("phase", "Phase breakdown of a sequence");
  add_source_options(*phase, src);
  phase->add_option("--format", format, "kv or csv")->check(CLI::IsMember({"kv", "csv"}));
  phase->add_option("--out", out_path, "Output file");

  auto* area = app.add_subcommand("area", "Space-time area and absolute area");
  add_source_options(*area, src);
  area->add_option("--out", out_path, "Output file");

  auto* response = app.add_subcommand("response", "Transfer functions as CSV");
  add_source_options(*response, src);
  response->add_option("--wmin", wmin, "Lowest angular frequency (rad/s)")->required();
  response->add_option("--wmax", wmax, "Highest angular frequency (rad/s)")->required();
  response->add_option("--points", points, "Grid points (>= 2)")->required();
  response->add_option("--scale", scale, "linear or log")->check(CLI::IsMember({"linear", "log"}));
  response->add_option("--out", out_path, "Output file");

  auto* trajectory = app.add_subcommand("trajectory", "Arm positions and velocities as CSV");
  add_source_options(*trajectory, src);
  trajectory->add_option("--samples", samples, "Samples over [-T, T] (>= 2)");
  trajectory->add_option("--out", out_path, "Output file");

  auto* validate = app.add_subcommand("validate", "Run golden-formula and oracle checks");
  validate->add_option("--filter", filter, "Only cases whose id contains this text");
  validate->add_option("--inject", inject, "Deliberate defect")->check(CLI::IsMember({"laser-sign-flip"}));
  validate->add_flag("--list", list, "Print case ids and exit");

  auto* catalog = app.add_subcommand("catalog", "Export a preset as a sequence file");
  add_source_options(*catalog, src);
  catalog->add_option("--out", out_path, "Output file");

  std::vector<const char*> argv{"stalab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (validate->parsed()) {
      if (list) {
        for (const auto& id : validation_case_ids()) out << id << '\n';
        return kOk;
      }
      ValidationOptions opts;
      opts.filter = filter;
      if (inject == "laser-sign-flip") opts.mutation = Mutation::LaserSignFlip;
      const auto result = run_validation(opts);
      out << to_text(result);
      if (result.reports.empty()) {
        err << "no validation case matches '" << filter << "'\n";
        return kUsageError;
      }
      return result.all_pass() ? kOk : kUsageError;
    }

    const auto seq = load(src);
    Output sink(out_path, out);
    auto& os = sink.stream();
    if (phase->parsed()) {
      const auto p = total_phase(seq);
      os << (format == "csv" ? to_csv(p) : to_kv(p));
    } else if (area->parsed()) {
      const TransferEvaluator ev(seq);
      os << "area_x=" << fmt(ev.area().x()) << "\narea_y=" << fmt(ev.area().y())
         << "\narea_z=" << fmt(ev.area().z()) << "\nabs_area=" << fmt(ev.abs_area()) << '\n';
    } else if (response->parsed()) {
      os << to_csv(response_curve(seq, wmin, wmax, points,
                                  scale == "log" ? GridScale::Log : GridScale::Linear));
    } else if (trajectory->parsed()) {
      if (samples < 2) throw InvalidArgument("--samples must be >= 2");
      const auto a = integrate_arm(seq.arm_a(), seq.params(), seq.half_duration(), seq.initial_velocity());
      const auto b = integrate_arm(seq.arm_b(), seq.params(), seq.half_duration(), seq.initial_velocity());
      os << "t,xa_x,xa_y,xa_z,va_x,va_y,va_z,xb_x,xb_y,xb_z,vb_x,vb_y,vb_z\n";
      for (int i = 0; i < samples; ++i) {
        const double t = -seq.T() + 2.0 * seq.T() * i / (samples - 1);
        os << fmt(t);
        for (const auto* tr : {&a, &b}) {
          const Vec3 x = tr->position.value(t), v = tr->velocity.value(t);
          for (int c = 0; c < 3; ++c) os << ',' << fmt(x[c]);
          for (int c = 0; c < 3; ++c) os << ',' << fmt(v[c]);
        }
        os << '\n';
      }
    } else if (catalog->parsed()) {
      os << dump_sequence(seq);
    }
    return kOk;
  } catch (const NotInterfering& e) {
    err << "error: " << e.what() << '\n';
    return kNotInterfering;
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (!e.field().empty()) err << " (field " << e.field() << ")";
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace stalab::cli
