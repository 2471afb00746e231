#pragma once

// Command-line front end. Every command writes to the given streams so the
// test suite can drive it in-process.

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acoustic_pulse/evaluator.hpp"
#include "acoustic_pulse/oracle.hpp"
#include "acoustic_pulse/quadrature.hpp"
#include "acoustic_pulse/sampling.hpp"

namespace acoustic_pulse::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIoError = 3 };

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One axis of a grid: exactly one of an explicit list, a geometric range
// (start, ratio, count) or a linear range (start, step, count).
struct AxisSpec {
  std::vector<double> list;
  std::vector<double> geom;
  std::vector<double> lin;
};

inline int checked_count(double c, const char* axis) {
  if (!(c >= 1.0) || c != std::floor(c) || c > 1e8) {
    throw UsageError(std::string(axis) + ": count must be an integer >= 1");
  }
  return static_cast<int>(c);
}

inline std::vector<double> expand_axis(const AxisSpec& spec, const char* axis) {
  const int given = !spec.list.empty() + !spec.geom.empty() + !spec.lin.empty();
  if (given != 1) {
    throw UsageError(std::string(axis) + ": give exactly one of --" + axis + ", --" + axis +
                     "-geom, --" + axis + "-lin");
  }
  std::vector<double> values;
  if (!spec.list.empty()) {
    values = spec.list;
  } else if (!spec.geom.empty()) {
    const double start = spec.geom[0], ratio = spec.geom[1];
    if (!(ratio > 0.0)) throw UsageError(std::string(axis) + ": ratio must be > 0");
    const int count = checked_count(spec.geom[2], axis);
    for (int k = 0; k < count; ++k) values.push_back(start * std::pow(ratio, k));
  } else {
    const double start = spec.lin[0], step = spec.lin[1];
    const int count = checked_count(spec.lin[2], axis);
    for (int k = 0; k < count; ++k) values.push_back(start + step * k);
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw UsageError(std::string(axis) + ": values must be finite and >= 0");
    }
  }
  return values;
}

inline void add_axis_options(CLI::App* cmd, AxisSpec& t, AxisSpec& r) {
  cmd->add_option("--t", t.list, "explicit t values");
  cmd->add_option("--t-geom", t.geom, "t = start * ratio^k, k < count")->expected(3);
  cmd->add_option("--t-lin", t.lin, "t = start + step * k, k < count")->expected(3);
  cmd->add_option("--r", r.list, "explicit r values");
  cmd->add_option("--r-geom", r.geom, "r = start * ratio^k, k < count")->expected(3);
  cmd->add_option("--r-lin", r.lin, "r = start + step * k, k < count")->expected(3);
}

// Output goes to the path if one was given, else to the fallback stream.
// Content is collected first and written in one piece.
inline void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    fallback.flush();
    return;
  }
  errno = 0;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open '" + path + "' for writing: " +
                  (errno ? std::strerror(errno) : "unknown error"));
  }
  file << text;
  file.flush();
  if (!file) {
    throw IoError("write to '" + path + "' failed: " +
                  (errno ? std::strerror(errno) : "unknown error"));
  }
}

inline std::string region_name(RegionTag tag) { return std::string(to_string(tag)); }

inline std::string cmd_eval(const Evaluator<double>& ev, double t, double r) {
  const PulseSolution<double> s = ev.evaluate(t, r);
  return fmt17(t) + " " + fmt17(r) + " " + fmt17(s.p) + " " + fmt17(s.ur) + " " +
         region_name(s.region) + "\n";
}

inline std::string cmd_grid(const Evaluator<double>& ev, const std::vector<double>& ts,
                            const std::vector<double>& rs) {
  std::string out = "t,r,p,ur,region\n";
  for (double t : ts) {
    for (double r : rs) {
      const PulseSolution<double> s = ev.evaluate(t, r);
      out += fmt17(t) + "," + fmt17(r) + "," + fmt17(s.p) + "," + fmt17(s.ur) + "," +
             region_name(s.region) + "\n";
    }
  }
  return out;
}

inline std::string cmd_regions(const Evaluator<double>& ev, const std::vector<double>& ts,
                               const std::vector<double>& rs) {
  std::string out = "t,r,region\n";
  for (double t : ts) {
    for (double r : rs) out += fmt17(t) + "," + fmt17(r) + "," + region_name(ev.classify(t, r)) + "\n";
  }
  return out;
}

struct ComponentMax {
  double err = 0.0;
  double t = 0.0;
  double r = 0.0;
  RegionTag region = RegionTag::Zero;
};

struct SelfcheckReport {
  std::size_t points = 0;
  ComponentMax p;
  ComponentMax ur;
  double tol = 0.0;
  double max_oracle_err = 0.0;
  bool pass = false;
};

// Default pass threshold of the self-check relative to the effective eps:
// 12.5 eps, i.e. 2.5e-15 at eps = 2e-16, the target for the stride-25
// lattice over n, m in -600..600.
inline constexpr double kSelfcheckTolFactor = 12.5;

inline SelfcheckReport run_selfcheck(const Evaluator<double>& ev,
                                     const std::vector<Point<double>>& pts, double tol) {
  SelfcheckReport rep;
  rep.points = pts.size();
  rep.tol = tol;
  const double oracle_tol = std::max(tol, 1e-20);
  bool first = true;
  for (const Point<double>& pt : pts) {
    const PulseSolution<double> s = ev.evaluate(pt.t, pt.r);
    const OracleResult ref = oracle_eval(pt.t, pt.r, oracle_tol);
    rep.max_oracle_err = std::max(rep.max_oracle_err, ref.est_err);
    const double dp = std::abs(to_double(DoubleDouble(s.p) - ref.p_ref));
    const double du = std::abs(to_double(DoubleDouble(s.ur) - ref.ur_ref));
    if (first || dp > rep.p.err) rep.p = {dp, pt.t, pt.r, s.region};
    if (first || du > rep.ur.err) rep.ur = {du, pt.t, pt.r, s.region};
    first = false;
  }
  rep.pass = rep.p.err <= tol && rep.ur.err <= tol;
  return rep;
}

inline std::string format_report(const SelfcheckReport& rep) {
  std::ostringstream os;
  os << "points " << rep.points << "\n";
  os << "max_err_p " << fmt17(rep.p.err) << " t " << fmt17(rep.p.t) << " r " << fmt17(rep.p.r)
     << " region " << region_name(rep.p.region) << "\n";
  os << "max_err_ur " << fmt17(rep.ur.err) << " t " << fmt17(rep.ur.t) << " r "
     << fmt17(rep.ur.r) << " region " << region_name(rep.ur.region) << "\n";
  os << "oracle_est_err " << fmt17(rep.max_oracle_err) << "\n";
  os << "tolerance " << fmt17(rep.tol) << "\n";
  os << (rep.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

struct BenchZone {
  std::size_t points = 0;
  double seconds = 0.0;
};

struct BenchReport {
  std::size_t points = 0;
  double seconds = 0.0;
  std::map<RegionTag, BenchZone> zones;
  double checksum = 0.0;
};

// Points are grouped by region and each group is timed as one loop.
inline BenchReport run_bench(const Evaluator<double>& ev, std::size_t n, std::uint64_t seed) {
  const std::vector<Point<double>> pts = stratified_points(ev, n, seed);
  std::map<RegionTag, std::vector<Point<double>>> groups;
  for (const Point<double>& pt : pts) groups[ev.classify(pt.t, pt.r)].push_back(pt);
  BenchReport rep;
  rep.points = pts.size();
  for (const auto& [tag, group] : groups) {
    double sink = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (const Point<double>& pt : group) {
      const PulseSolution<double> s = ev.evaluate(pt.t, pt.r);
      sink += s.p + s.ur;
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.zones[tag] = {group.size(), sec};
    rep.seconds += sec;
    rep.checksum += sink;
  }
  return rep;
}

inline std::string format_bench(const BenchReport& rep) {
  std::ostringstream os;
  os << "points " << rep.points << "\n";
  os << "seconds " << rep.seconds << "\n";
  os << "points_per_second " << (rep.seconds > 0 ? rep.points / rep.seconds : 0.0) << "\n";
  for (const auto& [tag, zone] : rep.zones) {
    os << "zone " << region_name(tag) << " points " << zone.points << " mean_ns "
       << (zone.points ? 1e9 * zone.seconds / zone.points : 0.0) << "\n";
  }
  os << "checksum " << fmt17(rep.checksum) << "\n";
  return os.str();
}

inline std::string cmd_rules(const Evaluator<double>& ev, const std::string& kind, int m) {
  if (kind == "uniform") {
    const UniformRule<double>& u = ev.params().uniform;
    std::string out = "node,weight\n";
    for (int k = -u.M2; k <= u.M2; ++k) {
      const double x = k * u.h;
      out += fmt17(x) + "," + fmt17(u.h * std::exp(-x * x / 2)) + "\n";
    }
    return out;
  }
  RuleKind rk;
  if (kind == "legendre") {
    rk = RuleKind::GaussLegendre;
  } else if (kind == "jacobi") {
    rk = RuleKind::GaussJacobiHalfSingular;
  } else {
    throw UsageError("rules: --kind must be legendre, jacobi or uniform");
  }
  if (m == 0) m = ev.params().M3;
  if (m < 1) throw UsageError("rules: --m must be >= 1");
  std::ostringstream tmp;
  write_rule_csv(tmp, *rule_cache_get<double>(rk, m));
  return tmp.str();
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solution of the 2D acoustic Gaussian pulse"};
  app.require_subcommand(1);

  double eps = 2e-16;
  std::string out_path;
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--eps", eps, "absolute accuracy (default 2e-16)");
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  double t = 0.0, r = 0.0;
  CLI::App* eval = app.add_subcommand("eval", "evaluate one point: t r p ur region");
  eval->add_option("--t", t)->required();
  eval->add_option("--r", r)->required();
  common(eval);

  AxisSpec grid_t, grid_r;
  CLI::App* grid = app.add_subcommand("grid", "CSV table t,r,p,ur,region");
  add_axis_options(grid, grid_t, grid_r);
  common(grid);

  AxisSpec reg_t, reg_r;
  CLI::App* regions = app.add_subcommand("regions", "CSV table t,r,region");
  add_axis_options(regions, reg_t, reg_r);
  common(regions);

  LatticeSpec lattice;
  std::vector<double> point;
  double tol = 0.0;
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "compare against the reference evaluator");
  selfcheck->add_option("--n-min", lattice.n_min);
  selfcheck->add_option("--n-max", lattice.n_max);
  selfcheck->add_option("--m-min", lattice.m_min);
  selfcheck->add_option("--m-max", lattice.m_max);
  selfcheck->add_option("--stride", lattice.stride);
  selfcheck->add_option("--point", point, "single point t r")->expected(2);
  selfcheck->add_option("--tol", tol, "pass threshold (default 12.5 eps)");
  common(selfcheck);

  std::size_t bench_n = 1000000;
  std::uint64_t seed = kBenchSeed;
  CLI::App* bench = app.add_subcommand("bench", "throughput over a zone-stratified point set");
  bench->add_option("--n", bench_n, "number of points (>= 1000)");
  bench->add_option("--seed", seed);
  common(bench);

  std::string kind = "legendre";
  int m = 0;
  CLI::App* rules = app.add_subcommand("rules", "dump a quadrature rule as CSV node,weight");
  rules->add_option("--kind", kind, "legendre, jacobi or uniform");
  rules->add_option("--m", m, "node count (default M3)");
  common(rules);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const Evaluator<double> ev(eps);
    if (eval->parsed()) {
      emit(out_path, cmd_eval(ev, t, r), out);
    } else if (grid->parsed()) {
      emit(out_path, cmd_grid(ev, expand_axis(grid_t, "t"), expand_axis(grid_r, "r")), out);
    } else if (regions->parsed()) {
      emit(out_path, cmd_regions(ev, expand_axis(reg_t, "t"), expand_axis(reg_r, "r")), out);
    } else if (selfcheck->parsed()) {
      std::vector<Point<double>> pts;
      if (!point.empty()) {
        if (!(point[0] >= 0.0) || !(point[1] >= 0.0)) throw UsageError("--point needs t, r >= 0");
        pts.push_back({point[0], point[1]});
      } else {
        pts = geometric_lattice(lattice);
      }
      if (tol == 0.0) tol = kSelfcheckTolFactor * ev.params().eps;
      if (!(tol >= 1e-20)) throw UsageError("--tol must be >= 1e-20");
      SelfcheckReport rep;
      try {
        rep = run_selfcheck(ev, pts, tol);
      } catch (const OracleRejected& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
      }
      emit(out_path, format_report(rep), out);
      return rep.pass ? kOk : kCheckFailed;
    } else if (bench->parsed()) {
      if (bench_n < 1000) throw UsageError("bench: --n must be >= 1000");
      emit(out_path, format_bench(run_bench(ev, bench_n, seed)), out);
    } else if (rules->parsed()) {
      emit(out_path, cmd_rules(ev, kind, m), out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("acoustic_pulse");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace acoustic_pulse::cli
