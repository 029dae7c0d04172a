#include "support.hpp"

using namespace smaxwell;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("normal draws have unit variance and separate streams") {
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = counter_normal(7, RandomStream::test, std::uint32_t(i), 0, 0, 0);
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 5.0 / std::sqrt(double(n)));
  CHECK(sq / n == Catch::Approx(1.0).margin(0.02));
  CHECK(counter_normal(7, RandomStream::test, 1, 2, 3, 4) == counter_normal(7, RandomStream::test, 1, 2, 3, 4));
  CHECK(counter_normal(7, RandomStream::test, 1, 2, 3, 4) != counter_normal(7, RandomStream::wiener, 1, 2, 3, 4));
  CHECK(counter_normal(7, RandomStream::test, 1, 2, 3, 4) != counter_normal(8, RandomStream::test, 1, 2, 3, 4));
}

TEST_CASE("basis modes are sorted by eigenvalue and tabulated on each dof's node") {
  const GridSpec g(4);
  const NoiseBasis b(g, 2, 2.0);
  REQUIRE(b.size() == 4);
  CHECK(b.modes()[0].m == 1);
  CHECK(b.modes()[0].n == 1);
  CHECK(b.modes()[0].lambda == 0.25);
  CHECK(b.modes()[1].m == 1);
  CHECK(b.modes()[1].n == 2);
  CHECK(b.modes()[2].m == 2);
  CHECK(b.modes()[2].n == 1);
  CHECK(b.modes()[3].lambda == 1.0 / 64.0);
  CHECK(b.trace() == Catch::Approx(0.25 + 2.0 / 25.0 + 1.0 / 64.0).epsilon(1e-15));
  CHECK(b.sqrt_lambda()[1] == Catch::Approx(0.2).epsilon(1e-15));

  const double pi = std::numbers::pi;
  // Ez(1,2) sits at (1/4, 1/2); Hx(2,0) at (1/2, 1/8); Hy(0,4) at (1/8, 1) where every mode vanishes.
  CHECK(b.table()(g.ez_index(1, 2), 1) == Catch::Approx(2 * std::sin(pi / 4) * std::sin(pi)).margin(1e-15));
  CHECK(b.table()(g.ez_index(1, 2), 0) == Catch::Approx(2 * std::sin(pi / 4)).epsilon(1e-15));
  CHECK(b.table()(g.hx_index(2, 0), 2) == Catch::Approx(2 * std::sin(pi) * std::sin(pi / 8)).margin(1e-15));
  CHECK(b.table()(g.hx_index(2, 0), 0) == Catch::Approx(2 * std::sin(pi / 8)).epsilon(1e-15));
  CHECK(std::abs(b.table()(g.hy_index(0, 4), 0)) < 1e-15);
}

TEST_CASE("basis parameters are validated") {
  const GridSpec g(4);
  CHECK_THROWS_AS(NoiseBasis(g, -1, 2.0), ValidationError);
  CHECK_THROWS_AS(NoiseBasis(g, 2, 1.0), ValidationError);
  CHECK_THROWS_AS(NoiseBasis(g, 2, std::nan("")), ValidationError);
}

TEST_CASE("pointwise increment variance matches delta sum lambda e^2") {
  const GridSpec g(8);
  const NoiseBasis b(g, 4, 1.5);
  const double delta = 1e-3;
  const WienerPath path(b, 42, 0, 10.0, delta);
  REQUIRE(path.steps() == 10000);
  const auto node = g.ez_index(3, 5);
  double expect = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) expect += b.modes()[k].lambda * std::pow(b.table()(node, k), 2);
  expect *= delta;
  double sq = 0.0;
  for (std::int64_t s = 0; s < path.steps(); ++s) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(g.dof());
    add_step_field(b, path, s, f);
    sq += f(node) * f(node);
  }
  CHECK(std::abs(sq / double(path.steps()) - expect) < 0.1 * expect);
}

TEST_CASE("window increments aggregate the finest steps bitwise") {
  const GridSpec g(5);
  const NoiseBasis b(g, 3, 2.0);
  const WienerPath path(b, 3, 1, 1.0, 0x1.0p-7);
  for (auto [a, e] : {std::pair{0, 128}, std::pair{5, 6}, std::pair{17, 90}}) {
    const FieldState whole = increment_state(b, path, LatticeWindow{a, e});
    FieldState sum = increment_state(b, path, LatticeWindow{a, a + 1});
    for (std::int64_t s = a + 1; s < e; ++s) sum += increment_state(b, path, LatticeWindow{s, s + 1});
    CHECK(whole == sum);
    double w = 0.0;
    for (std::int64_t s = a; s < e; ++s) w += path.increment(2, s);
    CHECK(path.window_increment(2, LatticeWindow{a, e}) == w);
  }
  CHECK(increment_state(b, path, 0.25, 0.5) == increment_state(b, path, LatticeWindow{32, 64}));
  CHECK(increment_field(b, path, 0.25, 0.5, Component::hy) ==
        increment_state(b, path, LatticeWindow{32, 64}).hy());
}

TEST_CASE("paths are pure functions of seed and sample index") {
  const GridSpec g(4);
  const NoiseBasis b(g, 2, 2.0);
  const WienerPath p1(b, 9, 0, 1.0, 0.125), p2(b, 9, 0, 1.0, 0.125), p3(b, 9, 1, 1.0, 0.125);
  const WienerPath longer(b, 9, 0, 2.0, 0.125);
  CHECK(p1.increment(3, 5) == p2.increment(3, 5));
  CHECK(p1.increment(3, 5) != p3.increment(3, 5));
  CHECK(p1.increment(1, 7) == longer.increment(1, 7));
  CHECK(p1.increment(0, 0) == std::sqrt(0.125) * counter_normal(9, RandomStream::wiener, 0, 0, 0, 0));
}

TEST_CASE("memoised window fields match fresh assemblies and respect the basis") {
  const GridSpec g(4);
  const NoiseBasis b(g, 3, 2.0), other(g, 3, 3.0);
  const WienerPath path(b, 11, 0, 1.0, 0x1.0p-6);
  const LatticeWindow w{5, 37};
  const FieldState first = increment_state(b, path, w);
  const FieldState hit = increment_state(b, path, w);
  path.clear_field_cache();
  CHECK(path.field_cache().fields.empty());
  CHECK(hit == first);
  CHECK(increment_state(b, path, w) == first);
  const FieldState alt = increment_state(other, path, w);
  CHECK_FALSE(alt == first);
  path.clear_field_cache();
  CHECK(increment_state(other, path, w) == alt);
}

TEST_CASE("empty basis gives zero increments") {
  const GridSpec g(4);
  const NoiseBasis b(g, 0, 2.0);
  CHECK(b.size() == 0);
  CHECK(b.trace() == 0.0);
  const WienerPath path(b, 1, 0, 1.0, 0.25);
  CHECK(increment_state(b, path, 0.0, 1.0) == FieldState(g));
}

TEST_CASE("windows and times off the lattice are rejected") {
  const GridSpec g(4);
  const NoiseBasis b(g, 1, 2.0);
  const WienerPath path(b, 1, 0, 1.0, 0.25);
  CHECK(path.steps() == 4);
  CHECK_THROWS_AS(path.window(0.0, 0.3), ValidationError);
  CHECK_THROWS_AS(path.window(0.0, 1.25), ValidationError);
  CHECK_THROWS_AS(increment_state(b, path, LatticeWindow{2, 2}), ValidationError);
  CHECK_THROWS_AS(WienerPath(b, 1, 0, 1.0, 0.3), ValidationError);
  CHECK_THROWS_AS(WienerPath(b, 1, 0, -1.0, 0.25), ValidationError);
  CHECK(lattice_count(1.0, 0.1, "t") == 10);
}
