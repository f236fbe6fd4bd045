// ballneedlets: point sets, cubature rules, kernels, Christoffel functions,
// needlet frames and the acceptance suite from the command line.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ballneedlets/acceptance.hpp"
#include "ballneedlets/christoffel.hpp"
#include "ballneedlets/cubature.hpp"
#include "ballneedlets/geometry.hpp"
#include "ballneedlets/io.hpp"
#include "ballneedlets/kernels.hpp"
#include "ballneedlets/needlets.hpp"
#include "ballneedlets/polynomial.hpp"
#include "ballneedlets/random.hpp"

namespace bn = ballneedlets;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string joined_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

bn::Point parse_point(const std::string& text, int d) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad coordinate '" + item + "' in point " + text);
    }
  }
  if (static_cast<int>(v.size()) != d)
    throw UsageError("point " + text + " needs " + std::to_string(d) + " comma-separated coordinates");
  bn::Point p = Eigen::Map<const Eigen::VectorXd>(v.data(), d);
  if (p.squaredNorm() > 1.0) throw UsageError("point " + text + " lies outside the unit ball");
  return p;
}

// G x G grid of the square [-1,1]^2 clipped to the disk.
Eigen::MatrixXd disk_grid(int G) {
  std::vector<double> xs;
  for (int i = 0; i < G; ++i)
    for (int k = 0; k < G; ++k) {
      const double a = G == 1 ? 0.0 : -1.0 + 2.0 * i / (G - 1);
      const double b = G == 1 ? 0.0 : -1.0 + 2.0 * k / (G - 1);
      if (a * a + b * b <= 1.0) {
        xs.push_back(a);
        xs.push_back(b);
      }
    }
  return Eigen::Map<const Eigen::MatrixXd>(xs.data(), 2, static_cast<Eigen::Index>(xs.size() / 2));
}

std::string csv_row(std::initializer_list<double> vals) {
  std::string s;
  bool first = true;
  for (double v : vals) {
    if (!first) s += ',';
    s += bn::format_double(v);
    first = false;
  }
  return s + '\n';
}

std::string coord_header(const char* name, int d) {
  std::string s;
  for (int i = 1; i <= d; ++i) s += std::string(name) + std::to_string(i) + ',';
  return s;
}

std::string coords(const bn::PointRef& x) {
  std::string s;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += bn::format_double(x[i]) + ',';
  return s;
}

struct Frame {
  int J = 4;
  int max_rule_degree = 64;
  std::optional<double> delta;
};

bn::NeedletFrame make_frame(const bn::RunConfig& cfg, const Frame& fr) {
  bn::FrameOptions fo;
  fo.max_rule_degree = fr.max_rule_degree;
  if (fr.delta) fo.cubature.delta_hint = *fr.delta;
  return bn::build_frame(cfg.mu, cfg.d, fr.J, fo);
}

bn::BallFunction make_input(const std::string& kind, int degree, std::uint64_t seed, int d, bn::Polynomial& keep) {
  if (kind == "poly") {
    bn::SplitMix64 rng(seed);
    keep = bn::random_polynomial(rng, d, degree);
    return keep.as_function();
  }
  if (kind == "gaussian") return {[](const bn::PointRef& x) { return std::exp(-2.0 * x.squaredNorm()); }, std::nullopt};
  if (kind == "one") return {[](const bn::PointRef&) { return 1.0; }, 0};
  throw UsageError("unknown input '" + kind + "' (poly, gaussian, one)");
}

std::string coefficients_csv(const bn::CoefficientSet& c) {
  std::string s = "j,knot_index,value\n";
  for (int j = 0; j < c.levels_used(); ++j)
    for (Eigen::Index k = 0; k < c.levels[j].size(); ++k)
      s += std::to_string(j) + ',' + std::to_string(k) + ',' + bn::format_double(c.levels[j][k]) + '\n';
  return s;
}

bn::CoefficientSet read_coefficients(const std::string& path, const bn::NeedletFrame& frame) {
  std::istringstream in(read_file(path));
  std::string line;
  std::getline(in, line);
  if (line != "j,knot_index,value") throw UsageError(path + ": expected header j,knot_index,value");
  bn::CoefficientSet c;
  c.frame_fingerprint = frame.fingerprint();
  c.levels.resize(frame.J + 1);
  for (int j = 0; j <= frame.J; ++j) c.levels[j] = Eigen::VectorXd::Zero(frame.levels[j].knot_count());
  int used = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int j = 0;
    long k = 0;
    double v = 0.0;
    if (std::sscanf(line.c_str(), "%d,%ld,%lf", &j, &k, &v) != 3) throw UsageError(path + ": bad row " + line);
    if (j < 0 || j > frame.J || k < 0 || k >= frame.levels[j].knot_count())
      throw UsageError(path + ": row " + line + " does not match the frame");
    c.levels[j][k] = v;
    used = std::max(used, j + 1);
  }
  c.levels.resize(used);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localized polynomial frames on the unit ball"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file overriding the defaults");

  bn::RunConfig cfg;
  bn::RunInfo info{joined_args(argc, argv), cfg.seed};

  // flags that override config values are recorded and applied after the file is read
  std::optional<double> mu_flag;
  std::optional<int> d_flag, n_flag;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::string> out_flag, cutoff_flag;
  auto common = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--mu", mu_flag, "weight parameter mu >= 0");
    sub->add_option("--d", d_flag, "dimension d >= 2");
    if (with_n) sub->add_option("--n", n_flag, "degree");
    sub->add_option("--seed", seed_flag, "seed recorded in the artifact");
    sub->add_option("-o,--output", out_flag, "output path (default stdout)");
  };

  auto* points = app.add_subcommand("points", "almost uniformly distributed points (JSON)");
  double epsilon = 0.1;
  std::string points_csv;
  points->add_option("--epsilon", epsilon, "partition scale in (0, pi]")->required();
  points->add_option("--csv", points_csv, "also write x1..xd,surrogate rows here");
  common(points, false);

  auto* cubature = app.add_subcommand("cubature", "positive cubature rule (JSON)");
  std::optional<double> delta;
  double gamma = 1.0 / 3.0, weight_lower = 0.02, weight_upper = 1.0;
  std::string mass = "measure";
  cubature->add_option("--delta", delta, "starting delta, epsilon = delta / n (default 1)");
  cubature->add_option("--gamma", gamma, "share of the cell masses kept in every weight");
  cubature->add_option("--weight-lower", weight_lower, "lower end of the weight band (0 disables)");
  cubature->add_option("--weight-upper", weight_upper, "upper end of the weight band (inf disables)");
  cubature->add_option("--mass", mass, "cell mass vector: measure or surrogate");
  common(cubature, true);

  auto* kernel = app.add_subcommand("kernel", "localized kernel samples (CSV)");
  std::vector<std::string> xs;
  std::string y_text;
  int grid = 0;
  kernel->add_option("--cutoff", cutoff_flag, "a (low pass) or b (band pass)");
  kernel->add_option("--x", xs, "evaluation point(s), comma-separated coordinates");
  kernel->add_option("--y", y_text, "second point (default origin)");
  kernel->add_option("--grid", grid, "G x G grid on the disk (d = 2) instead of --x");
  common(kernel, true);

  auto* christoffel = app.add_subcommand("christoffel", "Christoffel function along a radius (CSV)");
  int radial = 64;
  christoffel->add_option("--grid", radial, "number of radial samples");
  common(christoffel, true);

  auto* needlet = app.add_subcommand("needlet", "needlet frame: analyze, synthesize or parseval");
  std::string mode;
  Frame fr;
  std::string input = "poly", frame_out, coeff_in;
  int degree = 8, samples = 200, count = 10;
  needlet->add_option("mode", mode, "analyze | synthesize | parseval")->required()->check(
      CLI::IsMember({"analyze", "synthesize", "parseval"}));
  needlet->add_option("--J", fr.J, "finest level");
  needlet->add_option("--max-rule-degree", fr.max_rule_degree, "levels above this degree get no rule");
  needlet->add_option("--delta", fr.delta, "starting delta for the level rules");
  needlet->add_option("--input", input, "analyze: poly (random, seeded), gaussian (black box) or one");
  needlet->add_option("--degree", degree, "degree of the random polynomial input");
  needlet->add_option("--frame-out", frame_out, "analyze: also write the frame JSON here");
  needlet->add_option("--coefficients", coeff_in, "synthesize: coefficient CSV from analyze");
  needlet->add_option("--grid", grid, "synthesize: G x G disk grid (default: random points)");
  needlet->add_option("--samples", samples, "synthesize: number of random points");
  needlet->add_option("--count", count, "parseval: number of random polynomials");
  common(needlet, false);

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::vector<std::string> only;
  std::string report;
  verify->add_option("--only", only, "run only these criteria")->check(CLI::IsMember(bn::criterion_names()));
  verify->add_option("--report", report, "write the JSON report here");
  verify->add_option("--mu", mu_flag, "mu for the single-mu criteria");
  verify->add_option("--seed", seed_flag, "seed for randomized criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) cfg = bn::parse_config(read_file(config_path), cfg);
    if (mu_flag) cfg.mu = *mu_flag;
    if (d_flag) cfg.d = *d_flag;
    if (n_flag) cfg.n = *n_flag;
    if (seed_flag) cfg.seed = *seed_flag;
    if (out_flag) cfg.output = *out_flag;
    if (cutoff_flag) cfg.cutoff = *cutoff_flag;
    if (!report.empty()) cfg.report = report;
    bn::validate(cfg);
  } catch (const bn::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  info.seed = cfg.seed;

  try {
    if (*points) {
      const bn::PointSet ps = bn::build_point_set(epsilon, cfg.d, cfg.mu);
      bn::Json j = bn::envelope(info, "points");
      j.update(bn::to_json(ps));
      write_text(cfg.output, bn::dump(j));
      if (!points_csv.empty()) {
        std::string s = coord_header("x", cfg.d) + "surrogate\n";
        for (Eigen::Index k = 0; k < ps.size(); ++k)
          s += coords(ps.points.col(k)) + bn::format_double(ps.surrogates[k]) + '\n';
        write_text(points_csv, s);
      }
    } else if (*cubature) {
      bn::CubatureOptions co;
      co.delta_hint = delta;
      co.gamma = gamma;
      co.weight_lower = weight_lower;
      co.weight_upper = weight_upper;
      if (mass == "surrogate") co.mass = bn::CellMass::Surrogate;
      else if (mass != "measure") throw UsageError("--mass must be measure or surrogate");
      const bn::CubatureRule rule = bn::build_cubature(cfg.mu, cfg.d, cfg.n, co);
      bn::Json j = bn::envelope(info, "cubature");
      j.update(bn::to_json(rule));
      write_text(cfg.output, bn::dump(j));
    } else if (*kernel) {
      const bn::BallWeightParams params = bn::BallWeightParams::make(cfg.mu, cfg.d);
      const bn::LocalizedKernel L(params, cfg.n, bn::Cutoff(bn::parse_cutoff_kind(cfg.cutoff)));
      const bn::Point y = y_text.empty() ? bn::Point(bn::Point::Zero(cfg.d)) : parse_point(y_text, cfg.d);
      Eigen::MatrixXd pts;
      if (grid > 0) {
        if (cfg.d != 2) throw UsageError("--grid needs d = 2; pass points with --x");
        pts = disk_grid(grid);
      } else {
        if (xs.empty()) throw UsageError("kernel needs --x or --grid");
        pts.resize(cfg.d, static_cast<Eigen::Index>(xs.size()));
        for (std::size_t i = 0; i < xs.size(); ++i) pts.col(static_cast<Eigen::Index>(i)) = parse_point(xs[i], cfg.d);
      }
      std::string s = coord_header("x", cfg.d) + coord_header("y", cfg.d) + "distance,value\n";
      for (Eigen::Index k = 0; k < pts.cols(); ++k)
        s += coords(pts.col(k)) + coords(y) + bn::format_double(bn::ball_distance(pts.col(k), y)) + ',' +
             bn::format_double(L(pts.col(k), y)) + '\n';
      write_text(cfg.output, s);
    } else if (*christoffel) {
      if (radial < 2) throw UsageError("--grid must be at least 2");
      const bn::BallWeightParams params = bn::BallWeightParams::make(cfg.mu, cfg.d);
      const bn::ChristoffelEvaluator e(params, cfg.n);
      std::string s = "r,lambda,scale,ratio\n";
      const double n = std::max(1, cfg.n);
      for (int i = 0; i < radial; ++i) {
        const double r = static_cast<double>(i) / (radial - 1);
        bn::Point x = bn::Point::Zero(cfg.d);
        x[0] = r;
        const double lam = e.lambda(x);
        const double scale = std::pow(n, -cfg.d) * bn::weight_calW(params, n, x);
        s += csv_row({r, lam, scale, lam / scale});
      }
      write_text(cfg.output, s);
    } else if (*needlet) {
      const bn::NeedletFrame frame = make_frame(cfg, fr);
      if (mode == "analyze") {
        bn::Polynomial poly;
        const bn::BallFunction f = make_input(input, degree, cfg.seed, cfg.d, poly);
        const bn::CoefficientSet c = bn::analyze(frame, f);
        write_text(cfg.output, coefficients_csv(c));
        if (!frame_out.empty()) {
          bn::Json j = bn::envelope(info, "needlet_frame");
          j.update(bn::to_json(frame));
          write_text(frame_out, bn::dump(j));
        }
        if (!f.degree) std::cerr << "integration error estimate " << bn::format_double(c.integration_error) << '\n';
      } else if (mode == "synthesize") {
        if (coeff_in.empty()) throw UsageError("synthesize needs --coefficients");
        const bn::CoefficientSet c = read_coefficients(coeff_in, frame);
        Eigen::MatrixXd pts;
        if (grid > 0) {
          if (cfg.d != 2) throw UsageError("--grid needs d = 2");
          pts = disk_grid(grid);
        } else {
          bn::SplitMix64 rng(cfg.seed);
          pts.resize(cfg.d, samples);
          for (int k = 0; k < samples; ++k) pts.col(k) = rng.ball_point(cfg.d);
        }
        const Eigen::VectorXd v = bn::synthesize(frame, c, pts);
        std::string s = coord_header("x", cfg.d) + "value\n";
        for (Eigen::Index k = 0; k < pts.cols(); ++k) s += coords(pts.col(k)) + bn::format_double(v[k]) + '\n';
        write_text(cfg.output, s);
      } else {
        bn::SplitMix64 rng(cfg.seed);
        bn::Json j = bn::envelope(info, "parseval");
        j["mu"] = cfg.mu;
        j["d"] = cfg.d;
        j["J"] = fr.J;
        j["degree"] = degree;
        bn::Json rows = bn::Json::array();
        double worst = 0.0;
        for (int i = 0; i < count; ++i) {
          const bn::Polynomial p = bn::random_polynomial(rng, cfg.d, degree);
          const bn::ParsevalReport rep = bn::parseval_check(frame, p.as_function());
          rows.push_back({{"norm_f", rep.norm_f}, {"norm_coeffs", rep.norm_coeffs}, {"rel_gap", rep.rel_gap}});
          worst = std::max(worst, rep.rel_gap);
        }
        j["checks"] = rows;
        j["max_rel_gap"] = worst;
        write_text(cfg.output, bn::dump(j));
      }
    } else if (*verify) {
      const auto results = bn::run_acceptance(cfg, only, [](const bn::CriterionResult& r) {
        std::printf("%s\n", bn::format_line(r).c_str());
        std::fflush(stdout);
      });
      bool all = true;
      bn::Json j = bn::envelope(info, "verify");
      bn::Json list = bn::Json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        list.push_back(bn::to_json(r));
      }
      j["criteria"] = list;
      j["passed"] = all;
      if (!cfg.report.empty()) write_text(cfg.report, bn::dump(j));
      return all ? 0 : 1;
    }
  } catch (const bn::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
