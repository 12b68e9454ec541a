#include "carnot/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "carnot/cli/suite.hpp"
#include "carnot/distance.hpp"
#include "carnot/distortion.hpp"
#include "carnot/errors.hpp"
#include "carnot/expmap.hpp"
#include "carnot/io.hpp"
#include "carnot/transport.hpp"
#include "carnot/verify.hpp"

namespace carnot::cli {

namespace {

const std::vector<std::string> kCommands{"geodesic", "distance",    "logmap",    "tau",
                                         "ot",       "interpolate", "example36", "verify"};
const std::vector<std::string> kChecks{"calculus", "hessian", "jdi36", "mcp",     "bm",  "entropy",
                                       "bbl",      "tau",     "cut",   "gardner", "all"};
const std::vector<std::string> kValueOptions{"--spec", "--seed", "--out", "--format"};

struct Global {
  std::string spec;
  std::uint64_t seed = 42;
  std::string out;
  std::string format;
  bool omit_runtime = false;
};

GroupSpec load_spec(const std::string& arg, bool required) {
  if (arg.empty()) {
    if (required) throw carnot::ParseError("missing --spec");
    return make_spec(0, {4.0});
  }
  if (arg.front() == '{') return io::parse_spec(arg);
  return io::read_spec_file(arg);
}

Point to_point(const Coords& c) {
  Point p(c.size());
  std::copy(c.begin(), c.end(), p.begin());
  return p;
}

Covector to_covector(const Coords& c) {
  Covector p(c.size());
  std::copy(c.begin(), c.end(), p.begin());
  return p;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      v.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw carnot::ParseError("not a number list: '" + s + "'");
    }
  }
  if (v.empty()) throw carnot::ParseError("empty number list");
  return v;
}

void emit(const Global& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
  } else {
    io::write_file(g.out, text);
  }
}

std::string join_csv(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

void strip_runtime(VerifyReport& r) {
  r.runtime = 0.0;
  for (Metric& m : r.metrics)
    if (m.name.find("runtime") != std::string::npos) m.value = 0.0;
}

std::string first_command(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("-", 0) == 0) {
      if (a.find('=') == std::string::npos &&
          std::find(kValueOptions.begin(), kValueOptions.end(), a) != kValueOptions.end())
        ++i;
      continue;
    }
    return a;
  }
  return "";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::string cmd = first_command(args);
  const bool wants_help = std::find(args.begin(), args.end(), "--help") != args.end() ||
                          std::find(args.begin(), args.end(), "-h") != args.end();
  if (cmd.empty() && !wants_help) {
    err << "error: no subcommand given; expected one of " << join_csv(kCommands) << "\n";
    return kUsage;
  }
  if (!cmd.empty() && std::find(kCommands.begin(), kCommands.end(), cmd) == kCommands.end()) {
    err << "error: unknown subcommand '" << cmd << "'; expected one of " << join_csv(kCommands)
        << "\n";
    return kUsage;
  }

  CLI::App app{"Sub-Riemannian geometry and transport on corank-1 Carnot groups", "carnot"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--spec", g.spec, "Group spec JSON file or inline JSON object");
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--omit-runtime", g.omit_runtime, "Zero the wall-clock fields of reports");

  std::string from, to, p_arg;
  int samples = 64;
  auto* geo = app.add_subcommand("geodesic", "Sample s -> exp_x(s p) on [0,1] as CSV");
  geo->add_option("--p", p_arg, "Covector 'a,b;...;pz'")->required();
  geo->add_option("--from", from, "Base point (default identity)");
  geo->add_option("--samples", samples, "Number of samples")->capture_default_str()
      ->check(CLI::Range(2, 1000000));

  auto* dist = app.add_subcommand("distance", "Carnot-Caratheodory distance and cut class");
  dist->add_option("--from", from, "Start point (default identity)");
  dist->add_option("--to", to, "End point")->required();

  auto* logm = app.add_subcommand("logmap", "Initial covector of a minimizing geodesic");
  logm->add_option("--from", from, "Start point (default identity)");
  logm->add_option("--to", to, "End point")->required();

  double s = 0.5;
  bool curve = false;
  int points = 201;
  auto* tau_cmd = app.add_subcommand("tau", "Distortion coefficient");
  tau_cmd->add_option("--s", s, "Time in (0,1)")->required();
  tau_cmd->add_option("--p", p_arg, "Covector; with --curve only its block norms are used");
  tau_cmd->add_flag("--curve", curve, "Emit (p_z, tau) over a p_z grid");
  tau_cmd->add_option("--points", points, "Grid size for --curve")->capture_default_str()
      ->check(CLI::Range(1, 1000000));

  std::string mu0_path, mu1_path, plan_path;
  auto* ot = app.add_subcommand("ot", "Optimal plan between two measure CSVs");
  ot->add_option("--mu0", mu0_path, "Source measure CSV")->required();
  ot->add_option("--mu1", mu1_path, "Target measure CSV")->required();

  auto* interp = app.add_subcommand("interpolate", "Displacement interpolant at time s");
  interp->add_option("--mu0", mu0_path, "Source measure CSV")->required();
  interp->add_option("--mu1", mu1_path, "Target measure CSV")->required();
  interp->add_option("--plan", plan_path, "Plan document (solved when omitted)");
  interp->add_option("--s", s, "Time in [0,1]")->required();

  int m = 1, d = 1;
  std::string a_arg = "1", b_arg = "1,0", outdir = ".";
  std::size_t n = 400;
  auto* ex = app.add_subcommand("example36", "Split abnormal/Heisenberg transport instance");
  ex->add_option("--m", m, "Kernel dimension")->capture_default_str();
  ex->add_option("--d", d, "Heisenberg dimension")->capture_default_str();
  ex->add_option("--a", a_arg, "Kernel shift, comma-separated")->capture_default_str();
  ex->add_option("--b", b_arg, "Heisenberg shift, comma-separated")->capture_default_str();
  ex->add_option("--n", n, "Sample count")->capture_default_str();
  ex->add_option("--s", s, "Interpolation time")->capture_default_str();
  ex->add_option("--outdir", outdir, "Output directory")->capture_default_str();

  std::string check;
  std::optional<std::size_t> vn;
  std::optional<double> vh, vs, vsep;
  std::optional<int> cells;
  auto* ver = app.add_subcommand("verify", "Run a verification suite and write its report");
  ver->add_option("check", check, "Suite name")->required();
  ver->add_option("--n", vn, "Sample count");
  ver->add_option("--voxel", vh, "Voxel edge");
  ver->add_option("--s", vs, "Interpolation time");
  ver->add_option("--sep", vsep, "Box separation");
  ver->add_option("--cells", cells, "BBL grid cells per axis");
  ver->add_option("--m", m, "Split-product kernel dimension");
  ver->add_option("--d", d, "Split-product Heisenberg dimension");
  ver->add_option("--a", a_arg, "Split-product kernel shift");
  ver->add_option("--b", b_arg, "Split-product Heisenberg shift");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: bad arguments: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*geo) {
      const GroupSpec spec = load_spec(g.spec, true);
      const Covector p = to_covector(io::parse_blocks(p_arg, spec));
      const Point base = from.empty() ? identity(spec) : to_point(io::parse_blocks(from, spec));
      const GeodesicPath path(spec, base, p);
      std::ostringstream os;
      os << "s," << join_csv(io::csv_header(spec)) << "\n";
      const auto pts = path.sample(samples);
      for (int j = 0; j < samples; ++j) {
        os << io::fmt(static_cast<double>(j) / (samples - 1));
        for (double v : pts[static_cast<std::size_t>(j)]) os << ',' << io::fmt(v);
        os << "\n";
      }
      emit(g, out, os.str());
      return kOk;
    }
    if (*dist || *logm) {
      const GroupSpec spec = load_spec(g.spec, true);
      const Point x = from.empty() ? identity(spec) : to_point(io::parse_blocks(from, spec));
      const Point y = to_point(io::parse_blocks(to, spec));
      const LogResult lr = log_from_identity(spec, group_op(spec, inverse(spec, x), y));
      std::ostringstream os;
      if (*dist) {
        if (g.format == "json")
          os << "{\"distance\": " << io::fmt(lr.dist) << ", \"class\": \"" << to_string(lr.cls)
             << "\"}\n";
        else
          os << "distance,class\n" << io::fmt(lr.dist) << "," << to_string(lr.cls) << "\n";
      } else if (g.format == "csv") {
        std::vector<std::string> h;
        for (const auto& c : io::csv_header(spec)) h.push_back("p_" + c);
        os << join_csv(h) << ",class,distance\n";
        for (double v : lr.param) os << io::fmt(v) << ",";
        os << to_string(lr.cls) << "," << io::fmt(lr.dist) << "\n";
      } else {
        os << "{\"theta\": \"" << io::format_blocks(lr.param, spec) << "\", \"class\": \""
           << to_string(lr.cls) << "\", \"distance\": " << io::fmt(lr.dist) << "}\n";
      }
      emit(g, out, os.str());
      return kOk;
    }
    if (*tau_cmd) {
      const GroupSpec spec = load_spec(g.spec, true);
      if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
      Covector p(spec.dim());
      if (p_arg.empty()) {
        for (int i = 0; i < spec.dim() - 1; ++i) p[i] = 1.0;
      } else {
        p = to_covector(io::parse_blocks(p_arg, spec));
      }
      std::ostringstream os;
      os << "p_z,tau\n";
      auto cell = [](double v) { return std::isinf(v) ? std::string("inf") : io::fmt(v); };
      if (curve) {
        const double bound = spec.pz_bound();
        for (int j = 0; j < points; ++j) {
          p.z() = bound * (-1.0 + 2.0 * (j + 1.0) / (points + 1.0));
          os << io::fmt(p.z()) << "," << cell(tau(spec, s, p)) << "\n";
        }
      } else {
        os << io::fmt(p.z()) << "," << cell(tau(spec, s, p)) << "\n";
      }
      emit(g, out, os.str());
      return kOk;
    }
    if (*ot || *interp) {
      const GroupSpec spec = load_spec(g.spec, true);
      const DiscreteMeasure mu0 = io::read_measure_file(mu0_path, spec);
      const DiscreteMeasure mu1 = io::read_measure_file(mu1_path, spec);
      mu0.validate(spec);
      mu1.validate(spec);
      const TransportPlan plan = plan_path.empty()
                                     ? solve_ot(spec, mu0, mu1)
                                     : io::plan_from_json(io::read_file(plan_path), spec);
      if (*ot) {
        emit(g, out, io::plan_to_json(spec, plan) + "\n");
      } else {
        if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0,1]");
        std::ostringstream os;
        io::write_measure_csv(os, spec, interpolate(spec, plan, mu0, mu1, s));
        emit(g, out, os.str());
      }
      return kOk;
    }
    if (*ex) {
      if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0,1]");
      const Example36 inst = example36_instance(m, d, parse_list(a_arg), parse_list(b_arg), n, g.seed);
      const DiscreteMeasure mu1 = DiscreteMeasure::uniform(inst.image);
      const TransportPlan plan = solve_ot(inst.spec, inst.mu0, mu1);
      std::vector<Point> s0, s1, t0, t1;
      for (std::size_t i = 0; i < inst.mu0.size(); ++i) {
        (inst.minus[i] ? s0 : s1).push_back(inst.mu0.points[i]);
        (inst.minus[i] ? t0 : t1).push_back(inst.image[i]);
      }
      std::filesystem::create_directories(outdir);
      const std::filesystem::path dir(outdir);
      auto write_cloud = [&](const std::string& name, const std::vector<Point>& pts) {
        std::ostringstream os;
        io::write_points_csv(os, inst.spec, pts);
        io::write_file((dir / name).string(), os.str());
      };
      write_cloud("S0.csv", s0);
      write_cloud("S1.csv", s1);
      write_cloud("S0_tilde.csv", t0);
      write_cloud("S1_tilde.csv", t1);
      write_cloud("mu_s.csv", interpolate(inst.spec, plan, inst.mu0, mu1, s).points);
      io::write_file((dir / "plan.json").string(), io::plan_to_json(inst.spec, plan) + "\n");
      out << "wrote S0.csv (" << s0.size() << "), S1.csv (" << s1.size()
          << "), S0_tilde.csv, S1_tilde.csv, mu_s.csv, plan.json to " << outdir << "\n";
      return kOk;
    }
    if (*ver) {
      if (std::find(kChecks.begin(), kChecks.end(), check) == kChecks.end()) {
        err << "error: unknown check '" << check << "'; expected one of " << join_csv(kChecks)
            << "\n";
        return kUsage;
      }
      const GroupSpec spec = load_spec(g.spec, false);
      const double sv = vs.value_or(0.5);
      const double sep = vsep.value_or(2.0);
      std::vector<VerifyReport> reports;
      if (check == "calculus") {
        reports.push_back(verify_calculus(spec, static_cast<int>(vn.value_or(10000)), g.seed));
      } else if (check == "hessian") {
        reports.push_back(verify_hessian_psd(spec, static_cast<int>(vn.value_or(50)), g.seed));
      } else if (check == "tau") {
        reports.push_back(verify_tau(spec, static_cast<int>(vn.value_or(1000)), g.seed));
      } else if (check == "cut") {
        reports.push_back(verify_cut_probe(g.spec.empty() ? make_spec(0, {1.0, 2.0}) : spec));
      } else if (check == "gardner") {
        reports.push_back(verify_gardner(static_cast<int>(vn.value_or(10000)), g.seed));
      } else if (check == "jdi36") {
        reports.push_back(verify_jdi_example36(m, d, parse_list(a_arg), parse_list(b_arg),
                                               vn.value_or(400), sv, g.seed));
      } else if (check == "mcp") {
        std::vector<double> sl{0.25, 0.5, 0.75};
        if (vs) sl = {*vs};
        reports.push_back(verify_mcp(spec, identity(spec), mcp_box(spec), sl,
                                     vn.value_or(100000), vh.value_or(0.02), g.seed));
      } else if (check == "bm") {
        const auto [A, B] = separated_unit_boxes(spec, sep);
        reports.push_back(verify_bm(spec, A, B, sv, vn.value_or(200000), vh.value_or(0.02), g.seed));
      } else if (check == "entropy") {
        const auto [A, B] = separated_unit_boxes(spec, sep);
        reports.push_back(verify_entropy(spec, A, B, sv, EntropyFunctional::renyi(spec.k()),
                                         vn.value_or(4000), vh.value_or(0.05), g.seed));
      } else if (check == "bbl") {
        const auto [A, B] = separated_unit_boxes(spec, sep);
        reports.push_back(verify_bbl_family(
            spec, A, B, sv, {0.0, 1.0, std::numeric_limits<double>::infinity()},
            {BblVariant::Weighted, BblVariant::Uniform, BblVariant::Unweighted},
            cells.value_or(12), g.seed));
      } else {
        for (const Criterion& c : acceptance_criteria()) {
          reports.push_back(c.run(g.seed));
          err << (reports.back().pass ? "PASS " : "FAIL ") << c.id << " " << c.name << "\n";
        }
        if (!g.spec.empty()) {
          reports.push_back(verify_calculus(spec, 10000, g.seed));
          reports.push_back(verify_hessian_psd(spec, 50, g.seed));
          reports.push_back(verify_tau(spec, 1000, g.seed));
          for (std::size_t i = reports.size() - 3; i < reports.size(); ++i)
            err << (reports[i].pass ? "PASS " : "FAIL ") << reports[i].check << " "
                << spec_label(spec) << "\n";
        }
      }
      bool pass = true;
      for (VerifyReport& r : reports) {
        if (g.omit_runtime) strip_runtime(r);
        pass &= r.pass;
      }
      emit(g, out,
           (reports.size() == 1 ? io::report_to_json(reports.front())
                                : io::reports_to_json(reports)) +
               "\n");
      if (check != "all") err << (pass ? "PASS " : "FAIL ") << check << "\n";
      return pass ? kOk : kCheckFailed;
    }
  } catch (const LayoutError& e) {
    err << "error: layout mismatch: " << e.what() << "\n";
    return kLayoutMismatch;
  } catch (const carnot::ParseError& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kMalformedInput;
  } catch (const DomainError& e) {
    err << "error: argument out of domain: " << e.what() << "\n";
    return kDomain;
  } catch (const CutLocusError& e) {
    err << "error: on the cut locus: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: internal failure: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace carnot::cli
