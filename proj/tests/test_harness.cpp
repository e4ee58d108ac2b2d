#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gs/config.hpp"
#include "gs/study.hpp"

using namespace gs;

namespace {

std::shared_ptr<const FeSpace> make_space(RectDomain dom, int cells, int degree) {
  return std::make_shared<const FeSpace>(build_structured_mesh(dom, cells), degree);
}

RunConfig parse(std::vector<const char*> args) {
  args.insert(args.begin(), "gs-spectral");
  return parse_config(static_cast<int>(args.size()), args.data());
}

}  // namespace

TEST_CASE("L2 norms") {
  const FeSpace unit(build_structured_mesh({0, 1, 0, 1}, 2), 2);
  const FeSpace big(build_structured_mesh({-1, 1, -1, 1}, 2), 2);
  CHECK(l2_norm([](Point2) { return 1.0; }, unit) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(l2_norm([](Point2) { return 1.0; }, big) == doctest::Approx(2.0).epsilon(1e-14));
  Eigen::VectorXd e = Eigen::VectorXd::Zero(10);
  e(3) = 1.0;
  CHECK(l2_norm(e) == 1.0);
  // The Euclidean coefficient norm is the field norm in an orthonormal basis.
  const auto basis = SpectralBasis::compute(make_space({0, 2, 0, 1}, 2, 2));
  const Eigen::VectorXd c = Eigen::VectorXd::Random(static_cast<Eigen::Index>(basis.n_modes()));
  const Eigen::VectorXd nodal = basis.to_nodal(c);
  CHECK(std::sqrt(nodal.dot(basis.mass() * nodal)) == doctest::Approx(l2_norm(c)).epsilon(1e-12));
  const auto f = [](Point2 p) { return p.x * p.y; };
  CHECK(l2_error(interpolate(basis.space(), f), f, basis.space()) <= 1e-13);
}

TEST_CASE("convergence order") {
  CHECK(*convergence_order(4.0, 1.0) == 2.0);
  CHECK(*convergence_order(6.1179e-4, 8.1838e-5) == doctest::Approx(2.9022).epsilon(1e-4));
  CHECK(*convergence_order(9.1221e-3, 3.2998e-3) == doctest::Approx(1.4670).epsilon(1e-4));
  CHECK_FALSE(convergence_order(0.0, 1.0).has_value());
  CHECK_FALSE(convergence_order(1.0, -1.0).has_value());
  CHECK_FALSE(convergence_order(NAN, 1.0).has_value());
  // log2 ratios add up across a chain of refinements.
  const double a = 0.3, b = 0.07, c = 0.011;
  CHECK(*convergence_order(a, b) + *convergence_order(b, c) ==
        doctest::Approx(*convergence_order(a, c)).epsilon(1e-14));
}

TEST_CASE("L-infinity in time") {
  const double one[] = {0.25};
  CHECK(linf_time_error(one) == 0.25);
  const double many[] = {0.1, 0.4, 0.2};
  CHECK(linf_time_error(many) == 0.4);
  CHECK_THROWS_AS(linf_time_error({}), Error);
}

TEST_CASE("order assignment between rows") {
  std::vector<ErrorRecord> rows(5);
  rows[0].cells = 4, rows[0].sigma = 0.5, rows[0].norms.err_u = 0.4, rows[0].norms.err_v = 0.8;
  rows[1].cells = 4, rows[1].sigma = 0.25, rows[1].norms.err_u = 0.1, rows[1].norms.err_v = 0.2;
  rows[2].cells = 8, rows[2].sigma = 0.5, rows[2].norms.err_u = 0.05, rows[2].norms.err_v = 0.4;
  rows[3].cells = 8, rows[3].sigma = 0.25, rows[3].failed = true;
  rows[4].cells = 8, rows[4].sigma = 0.125, rows[4].norms.err_u = 0.01, rows[4].norms.err_v = 0.1;
  compute_orders(rows);
  CHECK_FALSE(rows[0].co_u.has_value());
  CHECK(*rows[1].co_u == doctest::Approx(2.0));          // temporal
  CHECK(*rows[2].co_u == doctest::Approx(3.0));          // spatial
  CHECK(*rows[2].co_v == doctest::Approx(1.0));
  CHECK_FALSE(rows[3].co_u.has_value());                 // failed row
  CHECK_FALSE(rows[4].co_u.has_value());                 // coarser row failed
}

TEST_CASE("float formatting") {
  CHECK(format_float(1.0) == "1");
  CHECK(format_float(0.123456789) == "0.123457");
  CHECK(format_float(0.001) == "0.001");
  CHECK(format_float(9.99e-4) == "9.99000e-04");
  CHECK(format_float(-2.5e-7) == "-2.50000e-07");
  CHECK(format_float(0.0) == "0");
  CHECK(format_float(123456789.0) == "1.23457e+08");
}

TEST_CASE("convergence CSV round trip") {
  ConvergenceTable t;
  t.example = 2;
  t.q = 3;
  ErrorRecord a;
  a.cells = 4, a.h = 0.25, a.sigma = 0.125, a.setup_s = 0.5, a.solve_s = 1.25;
  a.norms = {1.03078, 1.03221, 6.963e-3, 0.279508, 0.28083, 3.5078e-4, 5};
  ErrorRecord b = a;
  b.sigma = 0.0625, b.norms.err_u = 1.7e-3, b.norms.err_v = 8.1e-5;
  ErrorRecord c = a;
  c.sigma = 0.03125, c.failed = true;
  t.rows = {a, b, c};
  compute_orders(t.rows);

  std::stringstream io;
  write_convergence_csv(io, t);
  const std::string text = io.str();
  CHECK(text.rfind(std::string(kConvergenceCsvHeader) + "\n", 0) == 0);
  const auto rows = read_convergence_csv(io);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].example == 2);
    CHECK(rows[i].q == 3);
    REQUIRE(rows[i].values.size() == 12);
  }
  // Empty CO cell on the first row, present on the second.
  CHECK_FALSE(rows[0].values[5].has_value());
  CHECK(*rows[1].values[5] == std::stod(format_float(*t.rows[1].co_u)));
  CHECK(*rows[1].values[4] == std::stod(format_float(1.7e-3)));
  CHECK(*rows[1].values[8] == std::stod(format_float(8.1e-5)));
  // Failed row keeps its timing but has no norms.
  CHECK_FALSE(rows[2].values[2].has_value());
  CHECK(*rows[2].values[11] == 1.25);

  // Writing the parsed values again gives the same text.
  std::stringstream again;
  again << kConvergenceCsvHeader << '\n';
  for (const auto& r : rows) {
    again << r.example << ',' << r.q;
    for (const auto& v : r.values) again << ',' << (v ? format_float(*v) : "");
    again << '\n';
  }
  CHECK(again.str() == text);

  std::istringstream bad("example,q\n");
  CHECK_THROWS_AS(read_convergence_csv(bad), Error);
}

TEST_CASE("snapshots") {
  const auto basis = SpectralBasis::compute(make_space({0, 2.5, 0, 2.5}, 5, 2));
  const auto n = static_cast<Eigen::Index>(basis.n_modes());

  SUBCASE("constant state") {
    const auto one = project_l2([](Point2) { return 1.0; }, basis);
    const auto snap = sample_snapshot({0.0, one, Eigen::VectorXd::Zero(n)}, basis, 7);
    CHECK(snap.u.size() == 49);
    for (double u : snap.u) CHECK(u == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("second mode matches direct evaluation") {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(1) = 1.0;
    const int r = 9;
    const auto snap = sample_snapshot({0.5, e, e}, basis, r);
    const Eigen::VectorXd nodal = basis.to_nodal(e);
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) {
        const Point2 p{2.5 * i / (r - 1), 2.5 * j / (r - 1)};
        const auto loc = basis.space().mesh().locate(p);
        const ElementPoint pt{loc.triangle, loc.ref};
        const double expect = evaluate_fe_function(nodal, basis.space(), {&pt, 1})[0].value;
        CHECK(std::abs(snap.u[static_cast<std::size_t>(j * r + i)] - expect) <= 1e-12);
      }
  }
  SUBCASE("example 3 initial spot and file round trip") {
    const auto p = example3(10.0);
    const int r = 51;
    // The projected spot overshoots slightly outside its support. The spot is
    // C^1 across the square's edge, so the overshoot should shrink about 4x per
    // halving of h once the mesh resolves it.
    auto leak = [&](const SpectralBasis& b) {
      const auto s = sample_snapshot(initialize(p, b, TimeGrid::uniform(10.0, 10)).whole, b, r);
      double out = 0.0;
      for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) {
          const double x = 2.5 * i / (r - 1), y = 2.5 * j / (r - 1);
          if (x < 1.0 || x > 1.5 || y < 1.0 || y > 1.5)
            out = std::max(out, std::abs(s.v[static_cast<std::size_t>(j * r + i)]));
        }
      return std::make_pair(out, s);
    };
    const auto coarse = SpectralBasis::compute(make_space({0, 2.5, 0, 2.5}, 5, 3));
    const auto fine = SpectralBasis::compute(make_space({0, 2.5, 0, 2.5}, 10, 3));
    const auto [coarse_leak, snap] = leak(coarse);
    const auto [fine_leak, fine_snap] = leak(fine);
    CHECK(fine_leak <= coarse_leak / 3);
    CHECK(*std::max_element(fine_snap.v.begin(), fine_snap.v.end()) >= 10 * fine_leak);
    std::stringstream io;
    write_snapshot(io, snap);
    std::string header;
    std::getline(io, header);
    CHECK(header == "# gs-snapshot v1 time=0 nx=51 ny=51 xmin=0 xmax=2.5 ymin=0 ymax=2.5");
    io.seekg(0);
    const auto back = read_snapshot(io);
    CHECK(back.resolution == r);
    CHECK(back.u == snap.u);
    CHECK(back.v == snap.v);
    CHECK(back.domain.x_max == 2.5);
  }
  CHECK_THROWS_AS(sample_snapshot({0.0, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)}, basis, 1), Error);
}

TEST_CASE("config parsing") {
  SUBCASE("spatial sweep") {
    const auto c = parse({"run", "--example", "1", "--q", "2", "--h-exp", "3,4,5", "--sigma-exp", "8"});
    CHECK(c.example == 1);
    CHECK(c.q == 2);
    CHECK(c.h_exponents == std::vector<int>{3, 4, 5});
    CHECK(c.sigma_exponents == std::vector<int>{8});
    const auto s = to_study_config(c);
    CHECK(s.cells_per_side == std::vector<int>{16, 32, 64});
    CHECK(s.sigmas == std::vector<double>{1.0 / 256});
    CHECK_FALSE(s.reference_sigma.has_value());
  }
  SUBCASE("self-convergence") {
    const auto c = parse({"run", "--example", "3", "--t-final", "10", "--ref-sigma-exp", "9"});
    CHECK(c.t_final == 10.0);
    CHECK(c.reference_sigma_exponent == 9);
    const auto s = to_study_config(c);
    CHECK(*s.reference_sigma == 1.0 / 512);
    CHECK(*s.t_final == 10.0);
    // Example 3 defaults: reduced horizon, reference one level below the finest step.
    const auto d = to_study_config(parse({"run", "--example", "3", "--sigma-exp", "5,6"}));
    CHECK(*d.t_final == 10.0);
    CHECK(*d.reference_sigma == 1.0 / 128);
  }
  SUBCASE("other options") {
    const auto c = parse({"run", "--example", "2", "--out", "dir", "--snapshots", "0.5,1",
                          "--fp-tol", "1e-10", "--fp-max-iter", "7", "--threads", "2"});
    CHECK(c.output_dir == "dir");
    CHECK(c.snapshot_times == std::vector<double>{0.5, 1.0});
    CHECK(c.fp_tol == 1e-10);
    CHECK(c.fp_max_iter == 7);
    CHECK(c.threads == 2);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse({"run", "--q", "2"}), ConfigError);
    CHECK_THROWS_AS(parse({"run", "--example", "4"}), ConfigError);
    CHECK_THROWS_AS(parse({"run", "--example", "1", "--q", "1"}), ConfigError);
    CHECK_THROWS_AS(parse({"run", "--example", "1", "--nope"}), ConfigError);
    CHECK_THROWS_AS(parse({"--example", "1"}), ConfigError);
    CHECK_THROWS_AS(parse({"run", "--example", "1", "--ref-sigma-exp", "9"}), ConfigError);
    CHECK_THROWS_AS(parse({"run", "--example", "1", "--fp-tol", "0"}), ConfigError);
    // 2.5 * 2^1 = 5 cells is fine, 2.5 * 2^0 is not a whole number.
    CHECK(cells_for_exponent(2.5, 1) == 5);
    CHECK_THROWS_AS(to_study_config(parse({"run", "--example", "3", "--h-exp", "0"})), ConfigError);
    CHECK_THROWS_AS(parse({"run", "--help"}), HelpRequested);
  }
  SUBCASE("config file with an unknown key") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto good = dir / "gs_good.toml";
    const auto bad = dir / "gs_bad.toml";
    std::ofstream(good) << "[run]\nexample = 2\nq = 3\n";
    std::ofstream(bad) << "[run]\nexample = 2\ncolour = \"red\"\n";
    const auto c = parse({"run", "--config", good.c_str()});
    CHECK(c.example == 2);
    CHECK(c.q == 3);
    CHECK_THROWS_AS(parse({"run", "--config", bad.c_str()}), ConfigError);
  }
}

TEST_CASE("small convergence study") {
  StudyConfig cfg;
  cfg.example = 2;
  cfg.q = 2;
  cfg.cells_per_side = {2, 4};
  cfg.sigmas = {0.25, 0.125};
  cfg.t_final = 0.5;
  std::vector<std::pair<int, double>> seen;
  const auto t = run_convergence_study(cfg, [&](const ErrorRecord& r) { seen.push_back({r.cells, r.sigma}); });
  REQUIRE(t.rows.size() == 4);
  CHECK(seen.size() == 4);
  for (const auto& r : t.rows) {
    CHECK_FALSE(r.failed);
    CHECK(r.norms.err_u > 0.0);
    CHECK(std::isfinite(r.norms.err_u));
    CHECK(r.norms.steps_seen == static_cast<int>(std::lround(0.5 / r.sigma)) + 1);
    CHECK(r.norms.norm_exact_u == doctest::Approx(r.norms.norm_num_u).epsilon(0.05));
  }
  CHECK(t.rows[1].co_u.has_value());
  CHECK(t.rows[2].co_u.has_value());
  CHECK_FALSE(t.rows[0].co_u.has_value());

  StudyConfig self = cfg;
  self.example = 3;
  self.cells_per_side = {2};
  self.sigmas = {0.25, 0.125};
  self.reference_sigma = 0.0625;
  const auto s = run_convergence_study(self);
  REQUIRE(s.rows.size() == 2);
  CHECK(s.rows[1].norms.err_u < s.rows[0].norms.err_u);
  CHECK(*s.reference_sigma == 0.0625);

  self.reference_sigma.reset();
  CHECK_THROWS_AS(run_convergence_study(self), Error);
  self.reference_sigma = 0.1;
  CHECK_THROWS_AS(run_convergence_study(self), Error);
}
