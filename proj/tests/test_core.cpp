#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_helpers.hpp"
#include "vrid/core/quaternion.hpp"
#include "vrid/core/windowing.hpp"
#include "vrid/error.hpp"
#include "vrid/util/rng.hpp"

using namespace vrid;

namespace {

Trace trace_with_head(std::vector<Quaternion> qs) {
  Trace t;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    MovementSample s;
    s.t = static_cast<double>(i) / 60.0;
    s.head.orientation = qs[i];
    t.movement.push_back(s);
  }
  t.duration = static_cast<double>(qs.size()) / 60.0;
  return t;
}

bool quat_eq(const Quaternion& a, const Quaternion& b, double tol = 1e-12) {
  return test::close(a.w, b.w, tol) && test::close(a.x, b.x, tol) && test::close(a.y, b.y, tol) &&
         test::close(a.z, b.z, tol);
}

/// Trace of `seconds` with 60 Hz movement and one packet every 0.25 s.
Trace regular_trace(double seconds) {
  Trace t;
  const auto n = static_cast<std::size_t>(std::llround(seconds * 60.0));
  for (std::size_t i = 0; i < n; ++i) {
    MovementSample s;
    s.t = static_cast<double>(i) / 60.0;
    t.movement.push_back(s);
  }
  for (double p = 0.0; p < seconds; p += 0.25) t.traffic.push_back({p, 100, Direction::Uplink});
  t.duration = seconds;
  return t;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("canonicalization removes sign flips") {
    const auto out = canonicalize_quaternions(trace_with_head({{1, 0, 0, 0}, {-1, 0, 0, 0}}));
    CHECK(out.movement[0].head.orientation == Quaternion{1, 0, 0, 0});
    CHECK(out.movement[1].head.orientation == Quaternion{1, 0, 0, 0});
  }

  TEST_CASE("canonical unit input is unchanged and scaled input is renormalized") {
    const Quaternion q{std::sqrt(0.5), 0, std::sqrt(0.5), 0};
    CHECK(quat_eq(canonicalize_quaternions(trace_with_head({q})).movement[0].head.orientation, q));
    CHECK(canonicalize_quaternions(trace_with_head({{2, 0, 0, 0}})).movement[0].head.orientation ==
          Quaternion{1, 0, 0, 0});
  }

  TEST_CASE("first quaternion gets w >= 0, ties broken by x >= 0") {
    CHECK(canonicalize_quaternions(trace_with_head({{-0.6, 0.8, 0, 0}}))
              .movement[0]
              .head.orientation == Quaternion{0.6, -0.8, 0, 0});
    CHECK(canonicalize_quaternions(trace_with_head({{0, -1, 0, 0}})).movement[0].head.orientation ==
          Quaternion{0, 1, 0, 0});
  }

  TEST_CASE("zero-norm quaternion is rejected with its sample index") {
    auto t = trace_with_head({{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}});
    try {
      canonicalize_quaternions(t);
      FAIL("expected DataQualityError");
    } catch (const DataQualityError& e) {
      CHECK(e.sample_index() == 2);
    }
  }

  TEST_CASE("canonicalization is idempotent and preserves rotations") {
    CounterRng rng(11);
    std::vector<Quaternion> qs;
    for (int i = 0; i < 200; ++i) {
      qs.push_back({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
    }
    const auto once = canonicalize_quaternions(trace_with_head(qs));
    const auto twice = canonicalize_quaternions(once);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const auto& c = once.movement[i].head.orientation;
      CHECK(quat_eq(c, twice.movement[i].head.orientation));
      CHECK(std::abs(norm(c) - 1.0) < 1e-12);
      const Quaternion unit = scaled(qs[i], 1.0 / norm(qs[i]));
      CHECK(rotation_angle_between(unit, c) < 1e-6);
      // same rotation: both map a test vector identically
      const Vec3 v{0.3, -0.5, 0.8};
      const Vec3 r1 = rotate(unit, v), r2 = rotate(c, v);
      CHECK(test::close(r1.x, r2.x, 1e-12));
      CHECK(test::close(r1.y, r2.y, 1e-12));
      CHECK(test::close(r1.z, r2.z, 1e-12));
      if (i > 0) CHECK(dot(c, once.movement[i - 1].head.orientation) >= 0.0);
    }
  }

  TEST_CASE("time rebasing uses the earliest timestamp of both streams") {
    Trace t = regular_trace(20);
    for (auto& s : t.movement) s.t += 5.0;
    for (auto& p : t.traffic) p.t += 3.0;
    t.duration += 5.0;
    const auto r = rebase_time(t);
    CHECK(r.traffic.front().t == 0.0);
    CHECK(r.movement.front().t == doctest::Approx(2.0));
    CHECK(r.duration == doctest::Approx(22.0));
  }

  TEST_CASE("window counts follow the truncation rule") {
    CHECK(window_trace(regular_trace(600), 10).size() == 60);
    CHECK(window_trace(regular_trace(605), 10).size() == 60);
    CHECK(full_window_count(605, 10) == 60);
    CHECK(window_trace(Trace{}, 10).empty());
    CHECK_THROWS_AS(window_trace(regular_trace(20), 0.0), ArgumentError);
    CHECK_THROWS_AS(window_trace(regular_trace(20), -1.0), ArgumentError);
  }

  TEST_CASE("a sample at t = W belongs to window 1") {
    Trace t;
    for (double ts : {0.0, 9.999, 10.0, 15.0}) {
      MovementSample s;
      s.t = ts;
      t.movement.push_back(s);
    }
    t.traffic.push_back({10.0, 5, Direction::Downlink});
    t.duration = 20.0;
    const auto w = window_trace(t, 10);
    REQUIRE(w.size() == 2);
    CHECK(w[0].movement.size() == 2);
    CHECK(w[1].movement.size() == 2);
    CHECK(w[1].movement.front().t == 10.0);
    CHECK(w[0].traffic.empty());
    CHECK(w[1].traffic.size() == 1);
  }

  TEST_CASE("windows partition the truncated trace") {
    const Trace t = regular_trace(95.5);
    const auto w = window_trace(t, 10);
    REQUIRE(w.size() == 9);
    std::size_t samples = 0, packets = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(w[i].window_index == i);
      CHECK(w[i].start == doctest::Approx(10.0 * static_cast<double>(i)));
      for (const auto& s : w[i].movement) CHECK((s.t >= w[i].start && s.t < w[i].start + 10.0));
      samples += w[i].movement.size();
      packets += w[i].traffic.size();
    }
    std::size_t expect_samples = 0, expect_packets = 0;
    for (const auto& s : t.movement) expect_samples += s.t < 90.0 ? 1 : 0;
    for (const auto& p : t.traffic) expect_packets += p.t < 90.0 ? 1 : 0;
    CHECK(samples == expect_samples);
    CHECK(packets == expect_packets);
  }

  TEST_CASE("dropout tolerance keeps windows with at least half the nominal samples") {
    Trace t = regular_trace(30);
    // window 1 keeps 300 of 600 samples, window 2 keeps 299
    std::vector<MovementSample> kept;
    for (const auto& s : t.movement) {
      const bool in1 = s.t >= 10.0 && s.t < 20.0, in2 = s.t >= 20.0;
      const auto idx = static_cast<long>(std::llround(s.t * 60.0));
      if (in1 && idx % 2 == 1) continue;
      if (in2 && idx >= 1200 + 299) continue;
      kept.push_back(s);
    }
    t.movement = kept;
    const auto r = apply_dropout_tolerance(window_trace(t, 10));
    REQUIRE(r.kept.size() == 2);
    CHECK(r.kept[1].movement.size() == 300);
    REQUIRE(r.dropped.size() == 1);
    CHECK(r.dropped[0] == 2);
  }

  TEST_CASE("default split yields 48 train and 12 test windows") {
    const Trace t = regular_trace(600);
    const auto w = window_trace(t, 10);
    const auto split = split_train_test(std::span(w), t.duration);
    CHECK(split.train.size() == 48);
    CHECK(split.test.size() == 12);
    CHECK(split.train.back().window_index + 1 == split.test.front().window_index);
    for (const auto& s : split.test) CHECK(s.start >= 480.0);
  }

  TEST_CASE("train_s = 0 gives an all-test split") {
    const Trace t = regular_trace(600);
    const auto w = window_trace(t, 10);
    const auto split = split_train_test(std::span(w), t.duration, 0.0, 120.0);
    CHECK(split.train.empty());
    CHECK(split.test.size() == 12);
  }

  TEST_CASE("short traces and misaligned boundaries are rejected") {
    const Trace t = regular_trace(420);
    const auto w = window_trace(t, 10);
    try {
      split_train_test(std::span(w), t.duration);
      FAIL("expected InsufficientDurationError");
    } catch (const InsufficientDurationError& e) {
      CHECK(std::string(e.what()).find("insufficient duration") != std::string::npos);
      CHECK(e.shortfall() == doctest::Approx(180.0));
    }
    const Trace full = regular_trace(600);
    const auto fw = window_trace(full, 10);
    CHECK_THROWS_AS(split_train_test(std::span(fw), full.duration, 485.0, 115.0), ArgumentError);
  }
}
