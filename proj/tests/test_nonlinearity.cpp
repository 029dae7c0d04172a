#include "support.hpp"

using namespace smaxwell;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("pointwise values of every drift and diffusion") {
  NonlinearitySpec s;
  s.drift = DriftKind::u_plus_cos;
  CHECK(s.drift_value(0.5) == 0.5 + std::cos(0.5));
  s.drift = DriftKind::cos;
  CHECK(s.drift_value(0.5) == std::cos(0.5));
  s.drift = DriftKind::linear;
  s.drift_param = -2.0;
  CHECK(s.drift_value(0.5) == -1.0);
  CHECK(s.drift_lipschitz() == 2.0);
  s.drift = DriftKind::constant;
  s.drift_param = 3.0;
  CHECK(s.drift_value(0.5) == 3.0);
  CHECK_FALSE(s.drift_is_zero());
  s.drift_param = 0.0;
  CHECK(s.drift_is_zero());
  s.diffusion = DiffusionKind::sin;
  CHECK(s.diffusion_value(0.5) == std::sin(0.5));
  s.diffusion = DiffusionKind::constant;
  s.diffusion_param = 0.25;
  CHECK(s.diffusion_value(9.0) == 0.25);
  CHECK_FALSE(s.deterministic());
  s.diffusion = DiffusionKind::zero;
  CHECK(s.deterministic());
}

TEST_CASE("stated Lipschitz constants bound sampled difference quotients") {
  for (const auto& [d, g] : {std::pair{"u_plus_cos", "sin"}, std::pair{"cos", "identity"}}) {
    const NonlinearitySpec s = parse_nonlinearity(d, g);
    double worst_f = 0.0, worst_g = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double a = counter_normal(4, RandomStream::test, std::uint32_t(i), 0, 0, 0) * 5.0;
      const double b = a + counter_normal(4, RandomStream::test, std::uint32_t(i), 1, 0, 0) * 0.1;
      if (a == b) continue;
      worst_f = std::max(worst_f, std::abs(s.drift_value(a) - s.drift_value(b)) / std::abs(a - b));
      worst_g = std::max(worst_g, std::abs(s.diffusion_value(a) - s.diffusion_value(b)) / std::abs(a - b));
    }
    CHECK(worst_f <= s.drift_lipschitz() * (1 + 1e-12));
    CHECK(worst_g <= s.diffusion_lipschitz() * (1 + 1e-12));
    CHECK(worst_f > 0.5 * s.drift_lipschitz());
  }
}

TEST_CASE("kind names round-trip through the parser") {
  for (std::string d : {"u_plus_cos", "cos", "zero", "linear(-1.5)", "constant(2)"})
    for (std::string g : {"sin", "identity", "zero", "constant(0.125)"}) {
      const NonlinearitySpec s = parse_nonlinearity(d, g);
      const NonlinearitySpec t = parse_nonlinearity(drift_name(s), diffusion_name(s));
      CHECK(t.drift == s.drift);
      CHECK(t.drift_param == s.drift_param);
      CHECK(t.diffusion == s.diffusion);
      CHECK(t.diffusion_param == s.diffusion_param);
    }
  CHECK(drift_name(parse_nonlinearity("linear(0.1)", "sin")) == "linear(0.10000000000000001)");
}

TEST_CASE("malformed kinds are rejected with a message") {
  CHECK_THROWS_WITH(parse_nonlinearity("tanh", "sin"), ContainsSubstring("unknown drift kind 'tanh'"));
  CHECK_THROWS_WITH(parse_nonlinearity("cos", "cos"), ContainsSubstring("unknown diffusion kind"));
  CHECK_THROWS_AS(parse_nonlinearity("linear", "sin"), ValidationError);
  CHECK_THROWS_AS(parse_nonlinearity("linear(x)", "sin"), ValidationError);
  CHECK_THROWS_AS(parse_nonlinearity("linear(1", "sin"), ValidationError);
  CHECK_THROWS_AS(parse_nonlinearity("cos(1)", "sin"), ValidationError);
  CHECK_THROWS_AS(parse_nonlinearity("constant(inf)", "sin"), ValidationError);
}

TEST_CASE("Nemytskii maps act on every stored value") {
  const GridSpec g(3);
  const FieldState u = random_state(g, 6, 0), dw = random_state(g, 6, 1);
  const NonlinearitySpec s = parse_nonlinearity("u_plus_cos", "sin");
  const FieldState f = apply_drift(s, u);
  const FieldState b = apply_diffusion(s, u, dw);
  for (std::ptrdiff_t i = 0; i < g.dof(); ++i) {
    CHECK(f.values()(i) == u.values()(i) + std::cos(u.values()(i)));
    CHECK(b.values()(i) == std::sin(u.values()(i)) * dw.values()(i));
  }
  FieldState bad = u;
  bad.values()(2) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(apply_drift(s, bad), ValidationError);
  CHECK_THROWS_AS(apply_diffusion(s, u, FieldState(GridSpec(4))), ValidationError);
}
