#include <catch_amalgamated.hpp>

#include <cmath>

#include "hypcap/specfun.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using hypcap::kPi;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("ellint_K at zero is pi/2", "[specfun]") { CHECK(hypcap::ellint_K(0.0) == kPi / 2.0); }

TEST_CASE("ellint_K matches the quadrature oracle", "[specfun]") {
  for (double r : {kInvSqrt2, 0.1, 0.5, 0.9, 0.99}) {
    INFO("r = " << r);
    CHECK_THAT(hypcap::ellint_K(r), WithinAbs(oracle::ellint_K(r), 1e-11));
  }
}

TEST_CASE("ellint_K is finite and increasing near 1", "[specfun]") {
  const double k = hypcap::ellint_K(0.999999);
  CHECK(std::isfinite(k));
  CHECK(k > hypcap::ellint_K(0.9));
  double prev = hypcap::ellint_K(0.0);
  for (int i = 1; i < 100; ++i) {
    const double cur = hypcap::ellint_K(i / 100.0);
    REQUIRE(cur > prev);
    prev = cur;
  }
}

TEST_CASE("ellint_K rejects arguments outside [0,1)", "[specfun]") {
  CHECK_THROWS_AS(hypcap::ellint_K(1.0), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::ellint_K(-0.1), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::ellint_K(std::nan("")), hypcap::DomainError);
}

TEST_CASE("mu special values", "[specfun]") {
  CHECK(hypcap::mu(1.0) == 0.0);
  CHECK_THAT(hypcap::mu(kInvSqrt2), WithinAbs(kPi / 2.0, 1e-13));
  const double m = hypcap::mu(0.5);
  CHECK_THAT(m, WithinAbs(oracle::mu(0.5), 1e-11));
  CHECK(m > std::log(2.0));
  CHECK(m < std::log(8.0));
}

TEST_CASE("mu domain", "[specfun]") {
  CHECK_THROWS_AS(hypcap::mu(0.0), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::mu(-0.5), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::mu(1.0 + 1e-12), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::mu(5e-9), hypcap::DomainError);
  CHECK_NOTHROW(hypcap::mu(hypcap::kMuMinArg));
}

TEST_CASE("mu satisfies the complementary and doubling identities", "[specfun]") {
  for (int i = 1; i <= 99; ++i) {
    const double r = i / 100.0;
    const double rc = std::sqrt(1.0 - r * r);
    INFO("r = " << r);
    CHECK_THAT(hypcap::mu(r) * hypcap::mu(rc), WithinAbs(kPi * kPi / 4.0, 1e-11));
    const double t = r / (1.0 + rc);
    CHECK_THAT(hypcap::mu(r), WithinAbs(0.5 * hypcap::mu(t * t), 1e-11));
  }
}

TEST_CASE("mu is decreasing and bracketed by log(1/r) and log(4/r)", "[specfun]") {
  double prev = hypcap::mu(0.001);
  for (int i = 2; i < 1000; ++i) {
    const double r = i / 1000.0;
    const double m = hypcap::mu(r);
    REQUIRE(m < prev);
    REQUIRE(m > std::log(1.0 / r));
    REQUIRE(m < std::log(4.0 / r));
    prev = m;
  }
}

TEST_CASE("mu_derivative agrees with a central difference", "[specfun]") {
  for (double r : {0.05, 0.3, 0.7, 0.95}) {
    const double h = 1e-6 * r;
    const double fd = (hypcap::mu(r + h) - hypcap::mu(r - h)) / (2.0 * h);
    CHECK_THAT(hypcap::mu_derivative(r), WithinRel(fd, 1e-7));
  }
}

TEST_CASE("mu_inverse special values and roundtrip", "[specfun]") {
  CHECK(hypcap::mu_inverse(0.0) == 1.0);
  CHECK_THAT(hypcap::mu_inverse(kPi / 2.0), WithinAbs(kInvSqrt2, 1e-12));
  CHECK_THAT(hypcap::mu_inverse(hypcap::mu(0.3)), WithinAbs(0.3, 1e-10));
  for (int i = 1; i < 100; ++i) {
    const double r = i / 100.0;
    REQUIRE_THAT(hypcap::mu_inverse(hypcap::mu(r)), WithinAbs(r, 1e-10));
  }
  for (double y : {0.3, 0.5, 0.8, 2.0, 7.5, 15.0, 19.0}) {
    const double r = hypcap::mu_inverse(y);
    INFO("y = " << y);
    CHECK(std::abs(hypcap::mu(r) - y) <= 1e-12 * std::max(1.0, y));
  }
}

TEST_CASE("mu_inverse saturates where r is not representable", "[specfun]") {
  // mu(largest double below 1) is about 0.127; smaller values need 1 - r below one ulp
  const double below_one = std::nextafter(1.0, 0.0);
  const double floor_y = hypcap::mu(below_one);
  CHECK(floor_y > 0.1);
  for (double y : {1e-6, 0.01, 0.1}) {
    const double r = hypcap::mu_inverse(y);
    CHECK(r > 1.0 - 1e-12);
    CHECK(r <= 1.0);
  }
  // just above the floor one ulp of r moves mu by more than 1e-12; the best double is within one step
  for (double y : {0.15, 0.2}) {
    const double r = hypcap::mu_inverse(y);
    const double step = std::abs(hypcap::mu(std::nextafter(r, 0.0)) - hypcap::mu(r));
    INFO("y = " << y << " step = " << step);
    CHECK(std::abs(hypcap::mu(r) - y) <= step);
  }
}

TEST_CASE("mu_inverse domain", "[specfun]") {
  CHECK_THROWS_AS(hypcap::mu_inverse(-1.0), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::mu_inverse(100.0), hypcap::DomainError);
}

TEST_CASE("annulus_cap", "[specfun]") {
  CHECK_THAT(hypcap::annulus_cap(1.0, std::exp(1.0)), WithinRel(2.0 * kPi, 1e-15));
  CHECK_THAT(hypcap::annulus_cap(0.5, 1.0), WithinRel(2.0 * kPi / std::log(2.0), 1e-15));
  const double q = std::exp(-2.0 * kPi / 5.9799062371);
  CHECK_THAT(hypcap::annulus_cap(q, 1.0), WithinRel(5.9799062371, 1e-14));
  CHECK_THROWS_AS(hypcap::annulus_cap(1.0, 1.0), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::annulus_cap(0.0, 1.0), hypcap::DomainError);
}

TEST_CASE("grotzsch_cap", "[specfun]") {
  CHECK_THAT(hypcap::grotzsch_cap(kInvSqrt2), WithinAbs(4.0, 1e-13));
  CHECK_THAT(hypcap::grotzsch_cap(0.5), WithinRel(2.0 * kPi / oracle::mu(0.5), 1e-11));
  CHECK(hypcap::grotzsch_cap(1e-6) < 0.45);
  CHECK_THROWS_AS(hypcap::grotzsch_cap(1.0), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::grotzsch_cap(0.0), hypcap::DomainError);
}

TEST_CASE("f1 and f2", "[specfun]") {
  CHECK_THAT(hypcap::f1(2.0 * kPi), WithinRel(2.0 * kPi / std::log(1.0 + std::sqrt(2.0)), 1e-14));
  CHECK_THAT(hypcap::f2(4.0 * std::atanh(kInvSqrt2)), WithinAbs(4.0, 1e-12));
  for (double c : {0.1, 1.0, 5.0, 20.0, 100.0}) {
    INFO("c = " << c);
    CHECK(hypcap::f1(c) - hypcap::f2(c) > 0.0);
  }
  double p1 = hypcap::f1(0.05);
  double p2 = hypcap::f2(0.05);
  for (int i = 1; i < 200; ++i) {
    const double c = 0.05 * std::pow(2000.0, i / 199.0);
    REQUIRE(hypcap::f1(c) > p1);
    REQUIRE(hypcap::f2(c) > p2);
    p1 = hypcap::f1(c);
    p2 = hypcap::f2(c);
  }
  // both branches of f2 agree where they meet, and the tail stays finite
  const double c_switch = 4.0 * std::atanh(kInvSqrt2);
  CHECK_THAT(hypcap::f2(c_switch * (1.0 + 1e-12)), WithinRel(hypcap::f2(c_switch), 1e-10));
  CHECK_THAT(hypcap::f2(60.0), WithinRel(8.0 / kPi * std::log(4.0 * std::cosh(15.0)), 1e-12));
  CHECK(std::isfinite(hypcap::f2(1e4)));
  CHECK_THROWS_AS(hypcap::f1(0.0), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::f2(-1.0), hypcap::DomainError);
}

TEST_CASE("two-sided mu bound", "[specfun]") {
  for (double t : {kInvSqrt2, 0.01, 0.99}) {
    const auto b = hypcap::check_mu_bound(t);
    INFO("t = " << t << " ratio = " << b.ratio);
    CHECK(b.lower_ok);
    CHECK(b.upper_ok);
    CHECK(b.ratio > 1.0);
    CHECK(b.ratio < kPi / 2.0);
  }
  for (int i = 0; i < 1000; ++i) {
    const double t = 0.001 + 0.998 * i / 999.0;
    const auto b = hypcap::check_mu_bound(t);
    REQUIRE(b.lower_ok);
    REQUIRE(b.upper_ok);
  }
  CHECK_THROWS_AS(hypcap::check_mu_bound(0.0), hypcap::DomainError);
  CHECK_THROWS_AS(hypcap::check_mu_bound(1.0), hypcap::DomainError);
}
