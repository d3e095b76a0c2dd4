#include "doctest.h"
#include "oracles.hpp"
#include "turanlab/norms.hpp"

using namespace turanlab;

namespace {

const ConvexBody kDisk = ConvexBody::disk({0, 0}, 1.0);
const ConvexBody kInterval = ConvexBody::polygon({{-1, 0}, {1, 0}});

}  // namespace

TEST_CASE("log_sum_exp") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  CHECK(log_sum_exp(a) == doctest::Approx(std::log(std::exp(1.0) + std::exp(2.0) + std::exp(3.0))));
  const std::vector<double> big{1000.0, 1000.0};
  CHECK(log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)));
  const std::vector<double> none{kNegInf, kNegInf};
  CHECK(log_sum_exp(none) == kNegInf);
  const std::vector<double> some{kNegInf, 0.0};
  CHECK(log_sum_exp(some) == 0.0);
}

TEST_CASE("L2 norm of a linear factor on the circle") {
  const ZeroPoly p({Complex{5, 0}});
  const QuadratureRule r = build_quadrature(kDisk, MeasureModel::boundary_arclength(), 256);
  CHECK(std::exp(lq_norm(p, r, 2.0).log_norm) == doctest::Approx(std::sqrt(52 * M_PI)).epsilon(1e-12));
  CHECK(std::exp(lq_norm(p, r, 1.0).log_norm) ==
        doctest::Approx([] {
          double s = 0.0;
          const int N = 200000;
          for (int j = 0; j < N; ++j) s += std::abs(std::polar(1.0, 2 * M_PI * j / N) - 5.0);
          return s * 2 * M_PI / N;
        }())
            .epsilon(1e-10));
}

TEST_CASE("large q approaches the sup norm") {
  for (int n : {4, 20, 100}) {
    const ZeroPoly p = endpoint_poly(n, 0);
    const QuadratureRule r = build_quadrature(kDisk, MeasureModel::boundary_arclength(), default_order(n, MeasureModel::boundary_arclength(), 128));
    const double sup = sup_norm(p, r).log_norm;
    CHECK(sup == doctest::Approx(n * std::log(2.0)).epsilon(1e-14));
    CHECK(std::abs(lq_norm(p, r, 128).log_norm - sup) <= 0.02 * sup);
    CHECK(norm(p, r, kInf).log_norm == sup);
  }
}

TEST_CASE("single atom") {
  const Complex z0{0.3, -0.2};
  const ConvexBody body = ConvexBody::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  const QuadratureRule r = build_quadrature(body, MeasureModel::discrete({{z0, 2.5}}), 1);
  const std::vector<Complex> zs{{0.1, 0.1}, {-0.7, 0.4}, {0.9, 0.0}};
  const ZeroPoly p(zs);
  for (double q : {0.5, 1.0, 3.0}) {
    CHECK(std::exp(lq_norm(p, r, q).log_norm) ==
          doctest::Approx(std::abs(oracle::product(zs, z0)) * std::pow(2.5, 1 / q)).epsilon(1e-13));
  }
  CHECK(std::exp(sup_norm(p, r).log_norm) == doctest::Approx(std::abs(oracle::product(zs, z0))));
  CHECK_THROWS_AS(oscillation_ratio(ZeroPoly({z0}), r, 2.0), std::domain_error);
}

TEST_CASE("sup norms on an interval and a thin rectangle") {
  const ZeroPoly p = endpoint_poly(40, 20);  // (1+x)^20 (1-x)^20, max 1 at 0
  // Node max; the nearest node to the peak at 0 is within 2/4096.
  const QuadratureRule r = build_quadrature(kInterval, MeasureModel::boundary_arclength(), 4096);
  CHECK(sup_norm(p, r).log_norm <= 0.0);
  CHECK(sup_norm(p, r).log_norm > -1e-5);

  const ConvexBody rect = ConvexBody::polygon({{-1, -0.1}, {1, -0.1}, {1, 0.1}, {-1, 0.1}});
  const ZeroPoly wit = endpoint_poly(100, 20);
  const auto arc = MeasureModel::boundary_arclength();
  const double coarse = sup_norm(wit, build_quadrature(rect, arc, 2048)).log_norm;
  const double fine = sup_norm(wit, build_quadrature(rect, arc, 20480)).log_norm;
  CHECK(std::abs(coarse - fine) < 1e-6 * std::abs(fine));
}

TEST_CASE("oscillation ratio on the disk") {
  for (int n : {1, 2, 5, 16, 64}) {
    const double r = oscillation_ratio(endpoint_poly(n, 0), kDisk, MeasureModel::boundary_arclength(), kInf);
    CHECK(r == doctest::Approx(n / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("interval ratio grows like sqrt(n/e)") {
  const int n = 200;
  const double r = oscillation_ratio(endpoint_poly(n, n / 2), kInterval, MeasureModel::boundary_arclength(), kInf);
  CHECK(std::abs(r / std::sqrt(n / std::exp(1.0)) - 1.0) < 0.15);
}

TEST_CASE("ratio scales with the inverse dilation") {
  const ConvexBody body = ConvexBody::polygon({{0, 0}, {2, 0}, {1.5, 1}, {0.2, 0.8}});
  const std::vector<Complex> zs{{0.5, 0.2}, {1.0, 0.5}, {1.5, 0.3}, {0.4, 0.7}};
  for (const MeasureModel& mu : {MeasureModel::boundary_arclength(), MeasureModel::area()}) {
    for (double q : {1.0, 2.0, kInf}) {
      const double a = oscillation_ratio(ZeroPoly(zs), body, mu, q, 128);
      // A real dilation maps the node set onto itself.
      const Complex kappa{2.7, 0.0}, z0{0.3, -1.0};
      const double b = oscillation_ratio(ZeroPoly(zs).mapped(kappa, z0), body.mapped(kappa, z0),
                                         mu.mapped({kappa, z0}), q, 128);
      CHECK(b == doctest::Approx(a / 2.7).epsilon(1e-10));
      // A rotation moves the nodes. That matters for the node max, and for
      // |p| on an area, which has cusps at the interior zeros.
      const Complex rot = std::polar(2.7, 0.4);
      const double c = oscillation_ratio(ZeroPoly(zs).mapped(rot, z0), body.mapped(rot, z0), mu.mapped({rot, z0}), q, 128);
      const double tol = is_max_norm(q) ? 1e-3 : (mu.kind() == MeasureKind::area && q == 1.0 ? 1e-4 : 1e-10);
      CHECK(c == doctest::Approx(a / 2.7).epsilon(tol));
    }
  }
}

TEST_CASE("ratio matches a direct evaluation") {
  // Independent trapezoid sums of |p|^2 and |p'|^2 over the circle.
  const std::vector<Complex> zs{{0.2, 0.1}, {-0.4, 0.5}, {0.0, -0.6}};
  double sp = 0.0, sd = 0.0;
  const int N = 4096;
  for (int j = 0; j < N; ++j) {
    const Complex z = std::polar(1.0, 2 * M_PI * j / N);
    sp += std::norm(oracle::product(zs, z));
    sd += std::norm(oracle::product_deriv(zs, z));
  }
  const double ref = std::sqrt(sd / sp);
  CHECK(oscillation_ratio(ZeroPoly(zs), kDisk, MeasureModel::boundary_arclength(), 2.0) ==
        doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("default order") {
  CHECK(default_order(10, MeasureModel::discrete({{{0, 0}, 1}}), 2.0) == 1);
  CHECK(default_order(10, MeasureModel::boundary_arclength(), 2.0) == 256);
  CHECK(default_order(1000, MeasureModel::boundary_arclength(), kInf) == 8000);
  CHECK(default_order(4, MeasureModel::area(), 2.0) == 64);
  CHECK(default_order(1000, MeasureModel::area(), 2.0) == static_cast<int>(std::ceil(16 * std::sqrt(2000.0))));
}
