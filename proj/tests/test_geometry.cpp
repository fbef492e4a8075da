#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "martinlab/errors.hpp"
#include "martinlab/geometry.hpp"
#include "martinlab/rng.hpp"

using namespace martinlab;

namespace {

Domain punctured_interval() {
  return Domain::punctured(Domain::box(Vec{-1.0}, Vec{1.0}), Vec{0.0});
}

Domain two_balls() {
  return Domain::unite({Domain::ball(Vec{-2.0}, 1.0), Domain::ball(Vec{2.0}, 1.0)});
}

}  // namespace

TEST_CASE("membership on the primitive tree") {
  CHECK(Domain::ball(Vec{0.0}, 1.0).contains(Vec{0.0}));
  CHECK_FALSE(Domain::ball(Vec{0.0}, 1.0).contains(Vec{1.0}));  // open

  const auto punct = Domain::punctured(Domain::ball(Vec{0.0, 0.0}, 1.0), Vec{0.0, 0.0});
  CHECK_FALSE(punct.contains(Vec{0.0, 0.0}));
  CHECK(punct.contains(Vec{1e-300, 0.0}));

  const auto u = two_balls();
  CHECK_FALSE(u.contains(Vec{0.0}));
  CHECK(u.contains(Vec{2.0}));
  CHECK(u.contains(Vec{-2.9}));

  // Difference removes the closure of the subtracted shape.
  const auto ann = Domain::difference(Domain::ball(Vec{0.0, 0.0}, 2.0),
                                      Domain::ball(Vec{0.0, 0.0}, 1.0));
  CHECK_FALSE(ann.contains(Vec{1.0, 0.0}));
  CHECK(ann.contains(Vec{1.5, 0.0}));

  const auto bx = Domain::box(Vec{0.0, 0.0}, Vec{1.0, 2.0});
  CHECK(bx.contains(Vec{0.5, 1.9}));
  CHECK_FALSE(bx.contains(Vec{0.5, 2.0}));
}

TEST_CASE("inscribed_radius bounds and examples") {
  CHECK(Domain::ball(Vec{0.0}, 1.0).inscribed_radius(Vec{0.0}) == 1.0);

  const auto punct = Domain::punctured(Domain::ball(Vec{0.0}, 1.0), Vec{0.0});
  CHECK(punct.inscribed_radius(Vec{0.25}) == doctest::Approx(0.25));

  const auto u = two_balls();
  CHECK(u.inscribed_radius(Vec{2.0}) == doctest::Approx(1.0));

  CHECK_THROWS_AS(u.inscribed_radius(Vec{0.0}), std::domain_error);
}

TEST_CASE("inscribed_radius soundness by angular scan") {
  // For random interior probes, a dense scan of the sphere of radius
  // inscribed_radius * (1 - 1e-9) finds no exterior point.
  const auto dom = Domain::difference(
      Domain::unite({Domain::ball(Vec{0.0, 0.0}, 1.0), Domain::box(Vec{0.0, -0.4}, Vec{2.2, 0.4})}),
      Domain::ball(Vec{1.0, 1.0}, 0.6));
  Rng rng(11);
  const auto probes = sample_region(dom, std::nullopt, 2000, rng);
  for (const auto& x : probes) {
    const double rho = dom.inscribed_radius(x) * (1.0 - 1e-9);
    REQUIRE(rho >= 0.0);
    if (rho == 0.0) continue;
    for (int k = 0; k < 256; ++k) {
      const double th = 2.0 * 3.14159265358979 * k / 256;
      const Vec y{x[0] + rho * std::cos(th), x[1] + rho * std::sin(th)};
      REQUIRE(dom.contains(y));
    }
  }
}

TEST_CASE("truncation algebra") {
  const auto dom = Domain::ball(Vec{0.0, 0.0}, 1.0);
  const Vec x0{1.0, 0.0};
  const auto t = dom.truncated(x0, 0.5);
  CHECK(t.contains(Vec{0.9, 0.0}));
  CHECK_FALSE(t.contains(Vec{0.4, 0.0}));

  Rng rng(3);
  const auto probes = sample_region(dom, std::nullopt, 500, rng);
  int inside = 0;
  for (const auto& x : probes) {
    // membership(truncate(dom,x0,r), x) == membership(dom,x) && |x-x0| < r
    CHECK(t.contains(x) == (dom.contains(x) && dist(x, x0) < 0.5));
    if (t.contains(x)) {
      ++inside;
      CHECK(t.inscribed_radius(x) <= dom.inscribed_radius(x));
    }
  }
  CHECK(inside > 0);

  // Truncation by a huge ball is the identity on a probe grid.
  const auto big = dom.truncated(x0, 10.0);
  for (const auto& x : probes) CHECK(big.contains(x) == dom.contains(x));
}

TEST_CASE("sample_region contracts") {
  Rng rng(17);
  const auto ball = Domain::ball(Vec{0.0, 0.0}, 1.0);
  const auto pts = sample_region(ball, std::nullopt, 10000, rng);
  Vec mean = Vec::zero(2);
  for (const auto& p : pts) mean += p;
  mean *= 1.0 / static_cast<double>(pts.size());
  // Symmetric region: empirical mean within 3 sigma of 0 (sd of a coordinate = 1/2).
  for (int i = 0; i < 2; ++i) CHECK(std::abs(mean[i]) < 3.0 * 0.5 / std::sqrt(10000.0));

  const RingSpec ring{Vec{0.0, 0.0}, 0.5, 1.0};
  const auto ringed = sample_region(ball, ring, 2000, rng);
  for (const auto& p : ringed) {
    const double r = norm(p);
    CHECK(r > 0.5);
    CHECK(r < 1.0);
  }

  // Near-empty region: a shell of relative width 1e-7 exhausts the budget.
  const auto shell = Domain::difference(Domain::ball(Vec{0.0, 0.0}, 1.0),
                                        Domain::ball(Vec{0.0, 0.0}, 1.0 - 1e-7));
  CHECK_THROWS_AS(sample_region(shell, std::nullopt, 1, rng, 10000), empty_region_error);
}

TEST_CASE("boundary query validation") {
  Rng rng(23);
  // Shipped configurations: interval endpoint, punctured interval, punctured disc.
  const auto interval = Domain::box(Vec{0.0}, Vec{1.0});
  validate_boundary_query(interval, {Vec{0.0}, 0.25, Vec{0.7}}, rng);

  const auto punct = punctured_interval();
  validate_boundary_query(punct, {Vec{0.0}, 0.25, Vec{0.6}}, rng);

  const auto disc = Domain::punctured(Domain::ball(Vec{0.0, 0.0}, 1.0), Vec{0.0, 0.0});
  validate_boundary_query(disc, {Vec{0.0, 0.0}, 0.25, Vec{0.6, 0.0}}, rng);

  // x0 inside D is rejected, as is xref too close to x0.
  CHECK_THROWS_AS(validate_boundary_query(interval, {Vec{0.5}, 0.25, Vec{0.7}}, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_boundary_query(interval, {Vec{0.0}, 0.25, Vec{0.1}}, rng),
                  std::invalid_argument);
  // A point with no domain nearby fails the shrinking-ball probe.
  CHECK_THROWS_AS(validate_boundary_query(interval, {Vec{-5.0}, 0.25, Vec{0.7}}, rng),
                  std::invalid_argument);
}

TEST_CASE("JSON round trip is lossless") {
  const auto dom = Domain::difference(
      Domain::unite({Domain::ball(Vec{0.0, 0.0}, 1.0),
                     Domain::box(Vec{-0.25, -1.5}, Vec{0.25, 1.5})}),
      Domain::ball(Vec{0.125, 0.25}, 0.03125));
  const auto j = dom.to_json();
  const auto back = Domain::from_json(j);
  CHECK(back.to_json() == j);

  Rng rng(5);
  Vec lo, hi;
  dom.bounding_box(lo, hi);
  for (int k = 0; k < 4000; ++k) {
    Vec x{lo[0] + (hi[0] - lo[0]) * rng.uniform(), lo[1] + (hi[1] - lo[1]) * rng.uniform()};
    CHECK(dom.contains(x) == back.contains(x));
  }

  // The documented punctured-interval form parses.
  const auto j2 = nlohmann::json::parse(
      R"({"difference":[{"box":{"lo":[-1.0],"hi":[1.0]}},{"point":[0.0]}]})");
  const auto p = Domain::from_json(j2);
  CHECK_FALSE(p.contains(Vec{0.0}));
  CHECK(p.contains(Vec{0.5}));
  CHECK(p.punctures().size() == 1);
  CHECK(Domain::from_json(p.to_json()).to_json() == p.to_json());

  CHECK_THROWS_AS(Domain::from_json(nlohmann::json::parse(R"({"point":[0.0]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(Domain::from_json(nlohmann::json::parse(R"({"blob":1})")),
                  std::invalid_argument);
}

TEST_CASE("bounding volumes contain the domain") {
  const auto dom = Domain::unite(
      {Domain::ball(Vec{1.0, 2.0}, 0.5), Domain::box(Vec{-3.0, 0.0}, Vec{-1.0, 1.0})});
  Vec c;
  double R;
  dom.bounding_ball(c, R);
  Rng rng(29);
  const auto pts = sample_region(dom, std::nullopt, 3000, rng);
  for (const auto& p : pts) CHECK(dist(p, c) <= R * (1.0 + 1e-12));
}
