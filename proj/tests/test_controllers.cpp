#include <doctest.h>

#include <cmath>
#include <vector>

#include "predt/controllers.hpp"
#include "predt/errors.hpp"

using namespace predt;

namespace {
const std::vector<double> kOne = {1.0};
double at(const Controller& c, double x) {
  const std::vector<double> state = {x};
  return c.eval(state);
}
double at2(const Controller& c, double x1, double x2) {
  const std::vector<double> state = {x1, x2};
  return c.eval(state);
}
}  // namespace

TEST_CASE("fixed-time law values and bound") {
  const Controller c = fixed_time_controller(0.5, 2.0);
  CHECK(at(c, 0.0) == 0.0);
  CHECK(at(c, 1.0) == doctest::Approx(-2.5));
  CHECK(at(c, 4.0) == doctest::Approx(-4.0 / 2.0 - 2.0 - 16.0));
  CHECK(at(c, -1.0) == doctest::Approx(2.5));
  CHECK(c.params.at("a") == 0.5);
  CHECK(c.params.at("b") == 2.0);
  CHECK(!c.description.empty());

  CHECK(tmax_fixed_time(0.5, 2.0) == doctest::Approx(3.0));
  CHECK(tmax_fixed_time(0.5, 3.0) == doctest::Approx(2.5));
  CHECK_THROWS_AS((void)fixed_time_controller(1.0, 2.0), domain_error);
  CHECK_THROWS_AS((void)fixed_time_controller(0.5, 1.0), domain_error);
  CHECK_THROWS_AS((void)tmax_fixed_time(0.0, 2.0), domain_error);
}

TEST_CASE("scalar exponential law, frozen values") {
  const Controller c1 = predefined_controller_scalar(1.0);
  CHECK(at(c1, 0.0) == 0.0);
  CHECK(at(c1, 1.0) == doctest::Approx(-2.909014547349361).epsilon(1e-14));
  CHECK(at(c1, -1.0) == doctest::Approx(2.909014547349361).epsilon(1e-14));

  const Controller c2 = predefined_controller_scalar(2.0);
  CHECK(at(c2, 1.0) == doctest::Approx(-1.704507273674681).epsilon(1e-14));

  CHECK(c1.params.at("alpha") == 1.0);
  CHECK(c1.params.at("u_max") == 1e12);
  CHECK_THROWS_AS((void)predefined_controller_scalar(0.0), domain_error);
}

TEST_CASE("scalar exponential law saturates instead of overflowing") {
  const Controller c = predefined_controller_scalar(1.0, 6.0, 1e12);
  CHECK(at(c, 30.0) == doctest::Approx(-1e12));
  CHECK(at(c, -30.0) == doctest::Approx(1e12));
  CHECK(std::isfinite(at(c, 100.0)));
  const Controller tight = predefined_controller_scalar(1.0, 2.0, 50.0);
  CHECK(at(tight, 3.0) == doctest::Approx(-50.0));
}

TEST_CASE("scalar preset companion gain") {
  CHECK(example41_gain_k2(4.1, 3.0) == doctest::Approx(164.0 / 3.0).epsilon(1e-14));
  CHECK(example41_gain_k2(8.0, 3.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(example41_gain_k2(4.0001, 2.0) == doctest::Approx(106669.3333333).epsilon(1e-9));
  CHECK_THROWS_AS((void)example41_gain_k2(4.0, 3.0), domain_error);
  CHECK_THROWS_AS((void)example41_gain_k2(5.0, 1.0), domain_error);
}

TEST_CASE("scalar preset law, frozen value") {
  const double k2 = example41_gain_k2(4.1, 3.0);
  const Controller c = example41_controller(4.1, k2, 3.0, 2.0);
  CHECK(at(c, 0.0) == 0.0);
  CHECK(at(c, 1.0) == doctest::Approx(-16.191666666666666).epsilon(1e-13));
  CHECK(at(c, -1.0) == doctest::Approx(16.191666666666666).epsilon(1e-13));
  CHECK(c.params.at("k4") == 2.0);
  CHECK_THROWS_AS((void)example41_controller(3.0, k2, 3.0, 2.0), domain_error);
  CHECK_THROWS_AS((void)example41_controller(4.1, -1.0, 3.0, 2.0), domain_error);
  CHECK_THROWS_AS((void)example41_controller(4.1, k2, 0.5, 2.0), domain_error);
  CHECK_THROWS_AS((void)example41_controller(4.1, k2, 3.0, 0.0), domain_error);
}

TEST_CASE("two-state printed law") {
  const Controller c = example42_controller();
  CHECK(at2(c, 0.0, 0.0) == 0.0);
  CHECK(at2(c, 0.0, 1.0) == doctest::Approx(-128.6086073717030).epsilon(1e-12));
  CHECK(at2(c, 0.0, -1.0) == doctest::Approx(128.6086073717030).epsilon(1e-12));

  // odd symmetry of the full law
  for (const auto& s : std::vector<std::vector<double>>{{0.3, -0.7}, {1.1, 0.4}, {-0.2, 1.3}}) {
    const std::vector<double> neg = {-s[0], -s[1]};
    CHECK(c.eval(s) == doctest::Approx(-c.eval(neg)).epsilon(1e-12));
  }

  // beta1(0) = 47.1^{0.6}
  CHECK(c.params.at("b10") == 47.1);
  const std::vector<double> wrong_dim = {1.0};
  CHECK_THROWS_AS((void)c.eval(wrong_dim), domain_error);
}

TEST_CASE("controllers reject wrong state dimension") {
  const std::vector<double> two = {1.0, 2.0};
  CHECK_THROWS_AS((void)fixed_time_controller(0.5, 2.0).eval(two), domain_error);
  CHECK_THROWS_AS((void)predefined_controller_scalar(1.0).eval(two), domain_error);
}
