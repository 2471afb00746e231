#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace ap = acoustic_pulse;
namespace cli = acoustic_pulse::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v = split(s, '\n');
  if (!v.empty() && v.back().empty()) v.pop_back();
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("acoustic_pulse_test_" + name);
}

// value of "key <value> ..." in a report
double report_value(const std::string& report, const std::string& key) {
  for (const std::string& l : lines(report)) {
    const auto f = split(l, ' ');
    if (f.size() >= 2 && f[0] == key) return std::strtod(f[1].c_str(), nullptr);
  }
  ADD_FAILURE() << "no " << key << " in report";
  return NAN;
}

}  // namespace

TEST(CliEval, InitialData) {
  const Outcome o = run({"eval", "--t", "0", "--r", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto f = split(lines(o.out).at(0), ' ');
  ASSERT_EQ(f.size(), 5u);
  EXPECT_EQ(f[2], "0.60653065971263342");
  EXPECT_EQ(f[3], "0");
  EXPECT_EQ(f[4], "SmallT");
}

TEST(CliEval, CausalityZone) {
  const Outcome o = run({"eval", "--t", "10", "--r", "200"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "10 200 0 0 Zero\n");
}

TEST(CliEval, MatchesSelfcheckAtFiftyFifty) {
  const Outcome e = run({"eval", "--t", "50", "--r", "50"});
  ASSERT_EQ(e.code, 0);
  const auto f = split(lines(e.out).at(0), ' ');
  const double p = std::strtod(f[2].c_str(), nullptr);
  const double ur = std::strtod(f[3].c_str(), nullptr);
  const ap::OracleResult ref = ap::oracle_eval(50.0, 50.0, 2.5e-15);
  EXPECT_LE(std::abs(ap::to_double(ap::DoubleDouble(p) - ref.p_ref)), 2e-16);
  EXPECT_LE(std::abs(ap::to_double(ap::DoubleDouble(ur) - ref.ur_ref)), 2e-16);

  const Outcome s = run({"selfcheck", "--point", "50", "50"});
  ASSERT_EQ(s.code, 0) << s.out;
  EXPECT_EQ(report_value(s.out, "points"), 1.0);
  EXPECT_LE(report_value(s.out, "max_err_p"), 2e-16);
  EXPECT_LE(report_value(s.out, "max_err_ur"), 2e-16);
  EXPECT_NE(s.out.find("region " + f[4]), std::string::npos);
}

TEST(CliEval, EpsFlag) {
  // a larger H pulls (9.1, 0.05) into the Fourier-Bessel zone
  const Outcome d = run({"eval", "--t", "9.1", "--r", "0.05"});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(split(lines(d.out).at(0), ' ')[4], "Form3GL");
  const Outcome o = run({"eval", "--t", "9.1", "--r", "0.05", "--eps", "1e-20"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(split(lines(o.out).at(0), ' ')[4], "Form1GL");
  EXPECT_EQ(run({"eval", "--t", "9.1", "--r", "0.05", "--eps", "1e-3"}).out, d.out);  // clamped
}

TEST(CliEval, OutputRoundTrips) {
  for (double t : {0.3, 4.1, 9.0, 33.3, 1e-5}) {
    for (double r : {0.001, 2.7, 20.0}) {
      const Outcome o = run({"eval", "--t", cli::fmt17(t), "--r", cli::fmt17(r)});
      ASSERT_EQ(o.code, 0);
      const auto f = split(lines(o.out).at(0), ' ');
      const ap::PulseSolution<double> s = ap::evaluate(t, r, 2e-16);
      EXPECT_EQ(std::strtod(f[0].c_str(), nullptr), t);
      EXPECT_EQ(std::strtod(f[1].c_str(), nullptr), r);
      EXPECT_EQ(std::strtod(f[2].c_str(), nullptr), s.p);
      EXPECT_EQ(std::strtod(f[3].c_str(), nullptr), s.ur);
    }
  }
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -0.0, 1.7976931348623157e308}) {
    EXPECT_EQ(std::strtod(cli::fmt17(x).c_str(), nullptr), x);
  }
}

TEST(CliGrid, ShapeAndHeader) {
  const Outcome o = run({"grid", "--t", "1", "2", "--r", "0.5", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0], "t,r,p,ur,region");
  // row-major over (t, r)
  EXPECT_EQ(l[1].substr(0, 6), "1,0.5,");
  EXPECT_EQ(l[2].substr(0, 4), "1,3,");
  EXPECT_EQ(l[3].substr(0, 6), "2,0.5,");
  EXPECT_EQ(l[4].substr(0, 4), "2,3,");
  EXPECT_EQ(o.out.find('\r'), std::string::npos);
  for (std::size_t i = 1; i < l.size(); ++i) EXPECT_EQ(split(l[i], ',').size(), 5u);
}

TEST(CliGrid, GeometricAxis) {
  const auto v = cli::expand_axis(cli::AxisSpec{{}, {1.0, 1.01, 3}, {}}, "t");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], 1.0);
  EXPECT_DOUBLE_EQ(v[1], 1.01);
  EXPECT_DOUBLE_EQ(v[2], 1.0201);
  const Outcome o = run({"grid", "--t-geom", "1", "1.01", "3", "--r", "1"});
  ASSERT_EQ(o.code, 0);
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(split(l[2], ',')[0], cli::fmt17(v[1]));
  EXPECT_EQ(split(l[3], ',')[0], cli::fmt17(v[2]));
}

TEST(CliGrid, LinearAxis) {
  const auto v = cli::expand_axis(cli::AxisSpec{{}, {}, {0.0, 0.5, 61}}, "r");
  ASSERT_EQ(v.size(), 61u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 30.0);
}

TEST(CliGrid, FileOutputIsDeterministic) {
  const auto a = temp_path("grid_a.csv"), b = temp_path("grid_b.csv");
  const std::vector<std::string> args = {"grid", "--t-geom", "0.5", "1.7", "8", "--r-lin", "0", "1.3", "9"};
  auto with_out = [&](const std::filesystem::path& p) {
    auto v = args;
    v.push_back("--out");
    v.push_back(p.string());
    return v;
  };
  ASSERT_EQ(run(with_out(a)).code, 0);
  ASSERT_EQ(run(with_out(b)).code, 0);
  const std::string sa = slurp(a);
  EXPECT_EQ(lines(sa).size(), 1u + 8u * 9u);
  EXPECT_EQ(sa, slurp(b));
  EXPECT_EQ(sa, run(args).out);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(CliRegions, ZeroOnlyBeyondTheFront) {
  const Outcome o = run({"regions", "--t-lin", "0", "0.5", "61", "--r-lin", "0", "0.5", "61"});
  ASSERT_EQ(o.code, 0);
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 1u + 61u * 61u);
  EXPECT_EQ(l[0], "t,r,region");
  std::set<std::string> seen;
  for (std::size_t i = 1; i < l.size(); ++i) {
    const auto f = split(l[i], ',');
    const double t = std::strtod(f[0].c_str(), nullptr), r = std::strtod(f[1].c_str(), nullptr);
    seen.insert(f[2]);
    if (f[2] == "Zero") EXPECT_LT(t, r - 9.013) << l[i];
    if (t > 0.0) EXPECT_EQ(f[2] == "Zero", t < r - 9.013) << l[i];
    if (r == 0.0) {
      EXPECT_TRUE(f[2] == "SmallT" || f[2] == "Form1GL" || f[2] == "Form3GL" || f[2] == "Series") << l[i];
    }
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(CliRegions, ThresholdsScaleWithEps) {
  const ap::PrecisionParams<double> lo = ap::make_params(2e-16);
  const ap::PrecisionParams<ap::DoubleDouble> hi = ap::make_params(ap::DoubleDouble(4e-32));
  EXPECT_NEAR(ap::to_double(hi.H) / lo.H, 12.077 / 8.584, 2e-3);
  auto first_nonzero = [](const std::string& out) {
    for (const std::string& l : lines(out)) {
      const auto f = split(l, ',');
      if (f[2] != "Zero" && f[2] != "region") {
        return std::strtod(f[1].c_str(), nullptr);
      }
    }
    return std::nan("");
  };
  // r axis runs downwards, so the first non-Zero row is the front
  const Outcome a = run({"regions", "--t", "0.5", "--r-lin", "30", "-0.01", "3000"});
  ASSERT_EQ(a.code, 0);
  EXPECT_NEAR(first_nonzero(a.out), 0.5 + 1.05 * lo.H, 0.011);
  const Outcome b = run({"regions", "--t", "0.5", "--r-lin", "30", "-0.01", "3000", "--eps", "4e-32"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NEAR(first_nonzero(b.out), 0.5 + 1.05 * ap::to_double(hi.H), 0.011);
}

TEST(CliRules, LegendreTwo) {
  const Outcome o = run({"rules", "--kind", "legendre", "--m", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_GE(l.size(), 2u);
  double wsum = 0;
  int rows = 0;
  for (const std::string& row : l) {
    const auto f = split(row, ',');
    if (f.size() != 2 || f[0] == "node") continue;
    EXPECT_NEAR(std::abs(std::strtod(f[0].c_str(), nullptr)), 1 / std::sqrt(3.0), 1e-15);
    wsum += std::strtod(f[1].c_str(), nullptr);
    ++rows;
  }
  EXPECT_EQ(rows, 2);
  EXPECT_NEAR(wsum, 2.0, 1e-15);
}

TEST(CliRules, DefaultsAndKinds) {
  const ap::PrecisionParams<double> p = ap::make_params(2e-16);
  auto data_rows = [](const std::string& s) {
    int n = 0;
    for (const std::string& l : lines(s)) n += (!l.empty() && l.rfind("node", 0) != 0);
    return n;
  };
  EXPECT_EQ(data_rows(run({"rules"}).out), p.M3);
  EXPECT_EQ(data_rows(run({"rules", "--kind", "jacobi", "--m", "7"}).out), 7);
  EXPECT_EQ(data_rows(run({"rules", "--kind", "uniform"}).out), 2 * p.M2 + 1);
  EXPECT_EQ(run({"rules", "--kind", "hermite"}).code, 2);
  EXPECT_EQ(run({"rules", "--m", "-3"}).code, 2);
}

TEST(CliSelfcheck, Origin) {
  const Outcome o = run({"selfcheck", "--point", "0", "0"});
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(report_value(o.out, "max_err_p"), 0.0);
  EXPECT_EQ(report_value(o.out, "max_err_ur"), 0.0);
  EXPECT_EQ(lines(o.out).back(), "PASS");
}

TEST(CliSelfcheck, ZoneZeroOnly) {
  // t = 1, r = 1.01^400 and 1.01^600
  const Outcome o = run({"selfcheck", "--n-min", "0", "--n-max", "0", "--m-min", "400", "--m-max", "600",
                         "--stride", "200"});
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(report_value(o.out, "points"), 2.0);
  EXPECT_NE(o.out.find("region Zero"), std::string::npos);
  EXPECT_LE(report_value(o.out, "max_err_p"), 2e-16);
  EXPECT_LE(report_value(o.out, "max_err_ur"), 2e-16);
}

TEST(CliSelfcheck, SmallLatticeAndFailureExit) {
  const std::vector<std::string> base = {"selfcheck", "--n-min", "-150", "--n-max", "300", "--m-min",
                                         "-150", "--m-max", "300", "--stride", "150"};
  const Outcome o = run(base);
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(report_value(o.out, "points"), 16.0);
  EXPECT_DOUBLE_EQ(report_value(o.out, "tolerance"), 2.5e-15);
  // a threshold no double result can meet
  auto strict = base;
  strict.push_back("--tol");
  strict.push_back("1e-20");
  const Outcome f = run(strict);
  EXPECT_EQ(f.code, 1);
  EXPECT_EQ(lines(f.out).back(), "FAIL");
}

TEST(CliBench, SeededAndStratified) {
  const Outcome a = run({"bench", "--n", "1400", "--seed", "7"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(report_value(a.out, "points"), 1400.0);
  int zones = 0;
  for (const std::string& l : lines(a.out)) {
    if (l.rfind("zone ", 0) == 0) {
      ++zones;
      EXPECT_NE(l.find(" points 200 "), std::string::npos) << l;
    }
  }
  EXPECT_EQ(zones, 7);
  const Outcome b = run({"bench", "--n", "1400", "--seed", "7"});
  EXPECT_EQ(report_value(a.out, "checksum"), report_value(b.out, "checksum"));

  const ap::Evaluator<double> ev(2e-16);
  const auto p1 = ap::stratified_points(ev, 1400, 7), p2 = ap::stratified_points(ev, 1400, 7);
  const auto p3 = ap::stratified_points(ev, 1400, 8);
  ASSERT_EQ(p1.size(), p2.size());
  bool same = true, differs = false;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    same = same && p1[i].t == p2[i].t && p1[i].r == p2[i].r;
    differs = differs || p1[i].t != p3[i].t;
  }
  EXPECT_TRUE(same);
  EXPECT_TRUE(differs);
}

TEST(CliBench, ZeroZoneIsFastest) {
  const cli::BenchReport rep = cli::run_bench(ap::Evaluator<double>(2e-16), 14000, ap::kBenchSeed);
  const double zero = rep.zones.at(ap::RegionTag::Zero).seconds / rep.zones.at(ap::RegionTag::Zero).points;
  for (const auto& [tag, z] : rep.zones) {
    if (tag == ap::RegionTag::Zero || tag == ap::RegionTag::SmallT) continue;
    EXPECT_LT(zero, z.seconds / z.points) << ap::to_string(tag);
  }
}

TEST(CliBench, RejectsTooFewPoints) { EXPECT_EQ(run({"bench", "--n", "999"}).code, 2); }

TEST(CliErrors, UsageExitCode) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--t", "-1", "--r", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--t", "nan", "--r", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--t", "1", "--r", "1", "--eps", "0"}).code, 2);
  EXPECT_EQ(run({"grid", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"grid", "--t", "1", "--t-geom", "1", "2", "3", "--r", "1"}).code, 2);
  EXPECT_EQ(run({"grid", "--t-geom", "1", "0", "3", "--r", "1"}).code, 2);
  EXPECT_EQ(run({"grid", "--t-geom", "1", "2", "0", "--r", "1"}).code, 2);
  EXPECT_EQ(run({"selfcheck", "--stride", "0"}).code, 2);
  const Outcome o = run({"eval", "--t", "-1", "--r", "1"});
  EXPECT_FALSE(o.err.empty());
}

TEST(CliErrors, IoExitCodeNamesThePath) {
  const std::string bad = "/nonexistent_dir_for_test/x.csv";
  const Outcome o = run({"grid", "--t", "1", "--r", "1", "--out", bad});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find(bad), std::string::npos);
  EXPECT_NE(o.err.find("No such file"), std::string::npos);
  EXPECT_EQ(run({"regions", "--t", "1", "--r", "1", "--out", bad}).code, 3);
}
