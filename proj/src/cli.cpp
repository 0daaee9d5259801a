#include "scc/cli.hpp"

#include "scc/dynamics.hpp"
#include "scc/dziobek.hpp"
#include "scc/error.hpp"
#include "scc/families.hpp"
#include "scc/geometry.hpp"
#include "scc/io.hpp"
#include "scc/potential.hpp"
#include "scc/solver.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

namespace scc::cli {
namespace {

using io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(file), {});
}

Json read_json(const std::string& path, std::istream& in) {
  return io::parse_json(read_text(path, in));
}

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

// "1,2,3" or "@masses.json".
MassVector parse_mass_option(const std::string& text, std::istream& in) {
  if (!text.empty() && text.front() == '@') {
    return io::mass_list_from_json(read_json(text.substr(1), in));
  }
  std::vector<double> values;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    values.push_back(parse_number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return MassVector(std::move(values));
}

struct Loaded {
  Configuration configuration;
  MassVector masses;
};

Loaded load(const std::string& path, const std::string& mass_override,
            std::istream& in) {
  const Json j = read_json(path, in);
  Configuration c = io::configuration_from_json(j);
  std::optional<MassVector> m;
  if (!mass_override.empty()) {
    m = parse_mass_option(mass_override, in);
  } else {
    m = io::masses_from_json(j);
  }
  if (!m) m = MassVector::equal(c.size());
  if (m->size() != c.size()) {
    throw Error(ErrorKind::invalid_input, "mass count does not match bodies");
  }
  return {std::move(c), std::move(*m)};
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void print_criterion_table(std::ostream& out, const DziobekReport& r) {
  const std::size_t n = r.delta.size();
  out << "body  delta\n";
  for (std::size_t i = 0; i < n; ++i) {
    out << std::setw(4) << i + 1 << "  " << io::format_double(r.delta[i]) << '\n';
  }
  out << "\npair   m_i m_j S_ij / (delta_i delta_j)\n";
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out << std::setw(2) << i + 1 << ',' << std::left << std::setw(4) << j + 1
          << std::right << io::format_double(r.k_estimates[idx++]) << '\n';
    }
  }
  out << "\nk = " << io::format_double(r.k)
      << "\nspread = " << io::format_double(r.criterion_residual)
      << "\nsame sign = " << (r.same_sign ? "yes" : "no") << "\nS residuals:";
  for (double v : r.s_residuals) out << ' ' << io::format_double(v);
  out << "\nM residuals:";
  for (double v : r.m_residuals) out << ' ' << io::format_double(v);
  out << "\nverdict = " << (r.verdict ? "special central configuration"
                                      : "not a special central configuration")
      << '\n';
}

void print_search_summary(std::ostream& err, const std::vector<SccClass>& classes) {
  err << classes.size() << " class(es)\n";
  err << " #  hits  residual        min d_ij        max d_ij\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& fp = classes[i].fingerprint.entries;
    double lo = 10.0;
    double hi = 0.0;
    for (const auto& e : fp) {
      lo = std::min(lo, e[2]);
      hi = std::max(hi, e[2]);
    }
    err << std::setw(2) << i + 1 << "  " << std::setw(4) << classes[i].count
        << "  " << std::setw(14) << io::format_double(classes[i].residual)
        << "  " << std::setw(14) << io::format_double(lo) << "  "
        << std::setw(14) << io::format_double(hi) << '\n';
  }
}

families::CurveKind curve_kind(const std::string& name) {
  if (name == "tetra") return families::CurveKind::tetra;
  if (name == "pentatope") return families::CurveKind::pentatope;
  throw UsageError("unknown curve '" + name + "' (expected tetra or pentatope)");
}

struct FamilyArgs {
  std::string kind;
  int k = 1;
  int k1 = 1;
  int k2 = 1;
  double m = 1.0;
  double m_bar = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> c;
  int n = 4;
  bool second_root = false;
};

families::FamilySpec family_spec(const FamilyArgs& a) {
  using namespace families;
  if (a.kind == "odd-polygon") return OddPolygon{a.k};
  if (a.kind == "complementary") return ComplementaryCircles{a.k1, a.k2, a.m, a.m_bar};
  if (a.kind == "acute-triangle") return AcuteTriangle{a.alpha, a.beta};
  if (a.kind == "simplex") return RegularSimplex{a.n};
  if (a.kind == "tetra" || a.kind == "pentatope") {
    const CurveKind kind = curve_kind(a.kind);
    double c = 0.0;
    if (a.second_root) {
      c = second_equal_mass_root(kind);
    } else if (a.c) {
      c = *a.c;
    } else {
      throw UsageError(a.kind + " needs --c or --second-root");
    }
    if (kind == CurveKind::tetra) return TetraFamily{c};
    return PentatopeFamily{c};
  }
  throw UsageError("unknown family '" + a.kind + "'");
}

void write_trace_row(std::ostream& os, double t, const PhaseState& s) {
  os << io::format_double(t);
  for (Eigen::Index i = 0; i < s.positions.cols(); ++i) {
    for (Eigen::Index k = 0; k < s.positions.rows(); ++k) {
      os << ',' << io::format_double(s.positions(k, i));
    }
  }
  os << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Special central configurations of the curved N-body problem"};
  app.name("scc");
  app.require_subcommand(1, 1);

  std::string input;
  std::string mass_option;
  double tol = kDefaultSccTolerance;

  auto* verify = app.add_subcommand("verify", "Check that a configuration is a critical point of U");
  verify->add_option("input", input, "Configuration JSON file, '-' for stdin")->required();
  verify->add_option("--masses", mass_option, "Comma list or @file.json");
  verify->add_option("--tol", tol, "Tolerance on the max gradient norm");

  double criterion_tol = kDefaultCriterionTolerance;
  bool table = false;
  auto* criterion = app.add_subcommand("criterion", "Codimension-one criterion report");
  criterion->add_option("input", input)->required();
  criterion->add_option("--masses", mass_option);
  criterion->add_option("--tol", criterion_tol);
  criterion->add_flag("--table", table, "Human-readable table instead of JSON");

  bool best_anchor = false;
  auto* masses = app.add_subcommand("masses", "Recover masses from a codimension-one shape");
  masses->add_option("input", input)->required();
  masses->add_flag("--best-anchor", best_anchor, "Anchor on the best-conditioned pair");

  FamilyArgs fam;
  double c_value = 0.0;
  auto* family = app.add_subcommand("family", "Emit a closed-form configuration with its masses");
  family->add_option("kind", fam.kind,
                     "odd-polygon | complementary | acute-triangle | tetra | pentatope | simplex")
      ->required();
  family->add_option("--k", fam.k);
  family->add_option("--k1", fam.k1);
  family->add_option("--k2", fam.k2);
  family->add_option("--m", fam.m);
  family->add_option("--m-bar", fam.m_bar);
  family->add_option("--alpha", fam.alpha);
  family->add_option("--beta", fam.beta);
  auto* c_opt = family->add_option("--c", c_value);
  family->add_option("--n", fam.n, "Simplex size N");
  family->add_flag("--second-root", fam.second_root, "Use the equal-mass root c*");

  std::string curve;
  int samples = 0;
  bool csv = false;
  auto* sweep = app.add_subcommand("sweep", "Sample the mass-ratio curve of a family");
  sweep->add_option("kind", curve, "tetra | pentatope")->required();
  sweep->add_option("--samples", samples)->required();
  sweep->add_flag("--csv", csv);

  SearchSettings settings;
  auto* search_cmd = app.add_subcommand("search", "Multistart search for special central configurations");
  search_cmd->add_option("--n", settings.n, "Sphere dimension")->required();
  search_cmd->add_option("--masses", mass_option, "Comma list or @file.json")->required();
  search_cmd->add_option("--trials", settings.trials);
  search_cmd->add_option("--seed", settings.seed);
  search_cmd->add_option("--tol", settings.tol);
  search_cmd->add_option("--merge-tol", settings.merge_tol);
  search_cmd->add_option("--max-iters", settings.max_iters);
  search_cmd->add_option("--threads", settings.threads);

  double dt = 1e-3;
  double t_final = 1.0;
  std::string velocities;
  std::string trace;
  auto* simulate = app.add_subcommand("simulate", "Integrate the equations of motion");
  simulate->add_option("input", input)->required();
  simulate->add_option("--masses", mass_option);
  simulate->add_option("--dt", dt);
  simulate->add_option("--t-final", t_final);
  simulate->add_option("--velocities", velocities, "@file.json with N velocity vectors");
  simulate->add_option("--trace", trace, "Write a per-step CSV trace to this path");

  auto* hemisphere = app.add_subcommand("hemisphere", "Closed-hemisphere test with witness normal");
  hemisphere->add_option("input", input)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      const Loaded l = load(input, mass_option, in);
      const SccResidualReport r = scc_residual(l.configuration, l.masses, tol);
      print_json(out, io::to_json(r));
      return r.verdict ? kExitOk : kExitVerdictFalse;
    }
    if (criterion->parsed()) {
      const Loaded l = load(input, mass_option, in);
      const DziobekReport r = criterion_check(l.configuration, l.masses, criterion_tol);
      if (table) {
        print_criterion_table(out, r);
      } else {
        print_json(out, io::to_json(r));
      }
      return r.verdict ? kExitOk : kExitVerdictFalse;
    }
    if (masses->parsed()) {
      const Loaded l = load(input, "", in);
      const RecoveredMasses r =
          best_anchor ? recover_masses(l.configuration,
                                       MassAnchors::best_conditioned(
                                           delta_vector(l.configuration)))
                      : recover_masses(l.configuration);
      print_json(out, Json{{"masses", r.masses.values()},
                           {"consistency_residual", r.consistency_residual}});
      return kExitOk;
    }
    if (family->parsed()) {
      if (c_opt->count() > 0) fam.c = c_value;
      const auto spec = family_spec(fam);
      const auto instance = families::build(spec);
      Json j = io::to_json(instance.configuration, instance.masses);
      j["family"] = families::describe(spec);
      print_json(out, j);
      return kExitOk;
    }
    if (sweep->parsed()) {
      const auto points = families::mass_ratio_curve(curve_kind(curve), samples);
      if (csv) {
        for (const auto& [c, f] : points) {
          out << io::format_double(c) << ',' << io::format_double(f) << '\n';
        }
      } else {
        Json j = Json::array();
        for (const auto& [c, f] : points) j.push_back({{"c", c}, {"f", f}});
        print_json(out, j);
      }
      return kExitOk;
    }
    if (search_cmd->parsed()) {
      const MassVector m = parse_mass_option(mass_option, in);
      const auto classes = search(m, settings);
      Json j = Json::array();
      for (const auto& k : classes) j.push_back(io::to_json(k));
      print_json(out, j);
      print_search_summary(err, classes);
      return kExitOk;
    }
    if (simulate->parsed()) {
      const Loaded l = load(input, mass_option, in);
      PhaseState state = PhaseState::at_rest(l.configuration);
      if (!velocities.empty()) {
        const std::string path =
            velocities.front() == '@' ? velocities.substr(1) : velocities;
        state.velocities = io::velocities_from_json(
            read_json(path, in), l.configuration.ambient(),
            l.configuration.points().cols());
      }
      std::ofstream trace_file;
      StepObserver observer;
      if (!trace.empty()) {
        trace_file.open(trace);
        if (!trace_file) throw UsageError("cannot write " + trace);
        observer = [&](double t, const PhaseState& s) { write_trace_row(trace_file, t, s); };
      }
      const auto result = integrate(state, l.masses, dt, t_final, observer);
      print_json(out, io::to_json(result.report));
      return kExitOk;
    }
    if (hemisphere->parsed()) {
      const Loaded l = load(input, "", in);
      print_json(out, io::to_json(in_closed_hemisphere(l.configuration)));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace scc::cli
