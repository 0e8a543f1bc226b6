#include <doctest.h>

#include <bqvc/basis.hpp>

#include <cmath>
#include <vector>

#include "support.hpp"

using bqvc::SplineConfig;

namespace {

// Normalized B-spline via confluent divided differences of (t - x)_+^k:
// B_i(x) = (t_{i+k+1} - t_i) [t_i .. t_{i+k+1}] (. - x)_+^k.
// Only valid away from the knots, where no (0)^0 ambiguity arises.
double truncated_power_derivative(double t, double x, int k, int order) {
  if (order > k || t <= x) return 0.0;
  double c = 1.0;
  for (int r = 0; r < order; ++r) c *= k - r;
  return c * std::pow(t - x, k - order);
}

double divided_difference(const std::vector<double>& t, int lo, int hi, double x, int k) {
  if (t[hi] == t[lo]) {
    double fact = 1.0;
    for (int r = 2; r <= hi - lo; ++r) fact *= r;
    return truncated_power_derivative(t[lo], x, k, hi - lo) / fact;
  }
  return (divided_difference(t, lo + 1, hi, x, k) - divided_difference(t, lo, hi - 1, x, k)) /
         (t[hi] - t[lo]);
}

Eigen::VectorXd oracle_basis(double x, const SplineConfig& cfg) {
  const auto t = bqvc::knot_sequence(cfg);
  const int k = cfg.degree();
  Eigen::VectorXd out(cfg.basis_count());
  for (int i = 0; i < cfg.basis_count(); ++i)
    out[i] = (t[i + k + 1] - t[i]) * divided_difference(t, i, i + k + 1, x, k);
  return out;
}

bool is_knot(double x, const SplineConfig& cfg) {
  for (double t : bqvc::knot_sequence(cfg))
    if (std::abs(x - t) < 1e-9) return true;
  return false;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("knot sequences") {
  const auto k22 = bqvc::knot_sequence(SplineConfig(2, 2));
  const std::vector<double> want{0, 0, 0, 1.0 / 3, 2.0 / 3, 1, 1, 1};
  REQUIRE(k22.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(k22[i] == doctest::Approx(want[i]));
  CHECK(bqvc::knot_sequence(SplineConfig(1, 0)) == std::vector<double>{0, 0, 1, 1});
  CHECK(SplineConfig(2, 2).basis_count() == 5);
  CHECK_THROWS_AS(SplineConfig(-1, 2), std::invalid_argument);
}

TEST_CASE("endpoint and constant bases") {
  for (double v : {0.0, 0.3, 1.0}) {
    const auto b = bqvc::evaluate_basis(v, SplineConfig(0, 0));
    REQUIRE(b.size() == 1);
    CHECK(b[0] == 1.0);
  }
  const auto at0 = bqvc::evaluate_basis(0.0, SplineConfig(2, 2));
  CHECK(at0.isApprox(Eigen::VectorXd::Unit(5, 0)));
  const auto at1 = bqvc::evaluate_basis(1.0, SplineConfig(2, 2));
  CHECK(at1.isApprox(Eigen::VectorXd::Unit(5, 4)));
  CHECK_THROWS_AS(bqvc::evaluate_basis(-0.01, SplineConfig(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(bqvc::evaluate_basis(1.01, SplineConfig(2, 2)), std::invalid_argument);
}

TEST_CASE("Cox-de Boor agrees with the divided-difference oracle") {
  const SplineConfig standard(2, 2);
  const auto mid = bqvc::evaluate_basis(0.5, standard);
  CHECK(mid.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((mid - oracle_basis(0.5, standard)).cwiseAbs().maxCoeff() < 1e-12);

  bqvc::Rng rng(11);
  for (int degree = 0; degree <= 3; ++degree)
    for (int knots = 0; knots <= 5; ++knots) {
      const SplineConfig cfg(degree, knots);
      for (int r = 0; r < 50; ++r) {
        const double x = rng.uniform();
        if (is_knot(x, cfg)) continue;
        CHECK((bqvc::evaluate_basis(x, cfg) - oracle_basis(x, cfg)).cwiseAbs().maxCoeff() <
              1e-10);
      }
    }
}

TEST_CASE("partition of unity and non-negativity") {
  bqvc::Rng rng(5);
  for (int degree = 1; degree <= 3; ++degree)
    for (int knots = 0; knots <= 5; ++knots) {
      const SplineConfig cfg(degree, knots);
      for (int r = 0; r < 1000; ++r) {
        const auto b = bqvc::evaluate_basis(rng.uniform(), cfg);
        CHECK(std::abs(b.sum() - 1.0) < 1e-12);
        CHECK(b.minCoeff() >= 0.0);
        CHECK(b.maxCoeff() <= 1.0);
      }
    }
}

TEST_CASE("local support") {
  const SplineConfig cfg(2, 4);
  const auto t = bqvc::knot_sequence(cfg);
  bqvc::Rng rng(9);
  for (int r = 0; r < 500; ++r) {
    const double x = rng.uniform();
    const auto b = bqvc::evaluate_basis(x, cfg);
    int nonzero = 0;
    for (int s = 0; s < cfg.basis_count(); ++s) {
      if (x < t[s] || x >= t[s + cfg.degree() + 1]) CHECK(b[s] == 0.0);
      if (b[s] != 0.0) ++nonzero;
    }
    CHECK(nonzero <= cfg.degree() + 1);
  }
}

TEST_CASE("degree one reproduces piecewise-linear interpolation") {
  const SplineConfig cfg(1, 3);
  const Eigen::VectorXd alpha = (Eigen::VectorXd(5) << 1.0, -2.0, 0.5, 3.0, -1.0).finished();
  const std::vector<double> nodes{0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t k = 0; k < nodes.size(); ++k)
    CHECK(alpha.dot(bqvc::evaluate_basis(nodes[k], cfg)) == doctest::Approx(alpha[k]));
  bqvc::Rng rng(3);
  for (int r = 0; r < 200; ++r) {
    const double x = rng.uniform();
    const auto k = static_cast<std::size_t>(std::min(3.0, std::floor(x / 0.25)));
    const double w = (x - nodes[k]) / 0.25;
    const double want = (1 - w) * alpha[k] + w * alpha[k + 1];
    CHECK(alpha.dot(bqvc::evaluate_basis(x, cfg)) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("grid and basis matrix") {
  const auto grid = bqvc::uniform_grid();
  REQUIRE(grid.size() == 200);
  CHECK(grid[0] == 0.0);
  CHECK(grid[199] == 1.0);
  const auto m = bqvc::basis_matrix(grid, SplineConfig(2, 2));
  CHECK(m.rows() == 200);
  CHECK(m.cols() == 5);
  CHECK((m.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("expanded design blocks") {
  bqvc::Rng rng(21);
  bqvc::Dataset data;
  data.v = (Eigen::VectorXd(3) << 0.1, 0.55, 0.9).finished();
  data.x = testing::random_matrix(rng, 3, 2);
  data.y = Eigen::VectorXd::Zero(3);
  const SplineConfig cfg(1, 0);
  bqvc::ExpandedDesign design(data, cfg);
  CHECK(design.d() == 2);
  CHECK(design.p() == 2);
  CHECK(design.block(0) == design.basis());
  for (Eigen::Index j = 1; j <= 2; ++j)
    for (Eigen::Index i = 0; i < 3; ++i) {
      const Eigen::RowVectorXd row = bqvc::evaluate_basis(data.v[i], cfg).transpose();
      CHECK((design.block(j).row(i) - data.x(i, j - 1) * row).cwiseAbs().maxCoeff() == 0.0);
    }

  data.x.col(0).setZero();
  data.x.col(1).setOnes();
  bqvc::ExpandedDesign special(data, cfg);
  CHECK(special.block(1).isZero(0.0));
  CHECK(special.block(2) == special.basis());

  data.v.resize(2);
  CHECK_THROWS_AS(bqvc::ExpandedDesign(data, cfg), std::invalid_argument);
}

}
