#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mke/bloch.hpp"
#include "mke/errors.hpp"
#include "support/dense_ref.hpp"
#include "support/sampling.hpp"

using Catch::Approx;
using namespace mke;

namespace {

double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

}  // namespace

TEST_CASE("vector algebra basics") {
  const Vec3 a{1.0, 2.0, 3.0};
  const Vec3 b{-2.0, 0.5, 4.0};
  CHECK(dot(a, b) == Approx(11.0));
  const Vec3 c = cross(a, b);
  CHECK(c.x == Approx(2.0 * 4.0 - 3.0 * 0.5));
  CHECK(c.y == Approx(3.0 * -2.0 - 1.0 * 4.0));
  CHECK(c.z == Approx(1.0 * 0.5 - 2.0 * -2.0));
  CHECK(dot(c, a) == Approx(0.0).margin(1e-14));
  CHECK(norm(Vec3{3.0, 4.0, 0.0}) == Approx(5.0));
  CHECK(dist(2.0 * a, a + a) == 0.0);
}

TEST_CASE("state_from_angles places the Bloch vector") {
  SECTION("equator at purity 0.68") {
    const BlochVector t = state_from_angles({detail::kPi / 2.0, 0.0, 0.68});
    CHECK(t.x == Approx(0.6).margin(1e-15));
    CHECK(t.y == Approx(0.0).margin(1e-15));
    CHECK(t.z == Approx(0.0).margin(1e-15));
  }
  SECTION("poles") {
    const BlochVector up = state_from_angles({0.0, 0.0, 1.0});
    CHECK(dist(up, {0.0, 0.0, 1.0}) < 1e-15);
    const BlochVector down = state_from_angles({detail::kPi, 1.3, 1.0});
    CHECK(down.z == Approx(-1.0));
    CHECK(std::abs(down.x) < 1e-15);
  }
  SECTION("maximally mixed at any angle") {
    const BlochVector t = state_from_angles({1.1, 2.2, 0.5});
    CHECK(norm(t) == 0.0);
  }
  SECTION("purity is honored") {
    for (int i = 0; i < 20; ++i) {
      const double mu = uniform_in(11, i, 0, 0.5, 1.0);
      const double th = uniform_in(11, i, 1, 0.0, detail::kPi);
      const double ph = uniform_in(11, i, 2, 0.0, 2.0 * detail::kPi);
      CHECK(purity(state_from_angles({th, ph, mu})) == Approx(mu).margin(1e-14));
    }
  }
  SECTION("domain validation") {
    CHECK_THROWS_AS(state_from_angles({-0.1, 0.0, 0.7}), Error);
    CHECK_THROWS_AS(state_from_angles({3.3, 0.0, 0.7}), Error);
    CHECK_THROWS_AS(state_from_angles({1.0, 7.0, 0.7}), Error);
    CHECK_THROWS_AS(state_from_angles({1.0, 0.0, 0.4}), Error);
    CHECK_THROWS_AS(state_from_angles({1.0, 0.0, 1.1}), Error);
    try {
      state_from_angles({1.0, 0.0, 0.4});
      FAIL("expected a domain error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::domain);
    }
  }
}

TEST_CASE("purity endpoints and values") {
  CHECK(purity({0.0, 0.0, 0.0}) == 0.5);
  CHECK(purity({0.0, 0.0, 1.0}) == 1.0);
  CHECK(purity({0.0, 0.0, 0.5}) == Approx(0.625));
}

TEST_CASE("fidelity agrees with the dense Uhlmann form") {
  SECTION("fixed values") {
    CHECK(fidelity({0.2, -0.1, 0.4}, {0.2, -0.1, 0.4}) == Approx(1.0).margin(1e-14));
    CHECK(fidelity({0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}) == Approx(0.0).margin(1e-14));
    CHECK(fidelity({0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}) == Approx(0.5).margin(1e-14));
  }
  SECTION("random pairs vs dense reference") {
    for (int i = 0; i < 50; ++i) {
      const BlochVector r1 = sampling::interior_bloch(21, i, 0, 0.999);
      const BlochVector r2 = sampling::interior_bloch(21, i, 10, 0.999);
      const double lib = fidelity(r1, r2);
      const double ref = dense::fidelity(dense::from_bloch(r1), dense::from_bloch(r2));
      CHECK(lib == Approx(ref).margin(1e-12));
      CHECK(lib == Approx(fidelity(r2, r1)).margin(1e-15));
      CHECK(lib >= 0.0);
      CHECK(lib <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("herm_log matches the eigendecomposition route") {
  SECTION("diagonal state") {
    const HermitianOp l = herm_log({0.0, 0.0, 0.5});
    CHECK(l.c0 == Approx(-0.8369882167858358).margin(1e-14));
    CHECK(l.c.z == Approx(0.5493061443340549).margin(1e-14));
    CHECK(l.c.x == 0.0);
  }
  SECTION("random states vs dense") {
    for (int i = 0; i < 50; ++i) {
      const BlochVector r = sampling::interior_bloch(22, i, 0, 0.999);
      const HermitianOp l = herm_log(r);
      const HermitianOp ref = dense::to_op(dense::logm_pd(dense::from_bloch(r)));
      CHECK(l.c0 == Approx(ref.c0).margin(1e-11));
      CHECK(dist(l.c, ref.c) < 1e-11);
    }
  }
  SECTION("round trip exp(log rho) = rho") {
    for (int i = 0; i < 30; ++i) {
      const BlochVector r = sampling::interior_bloch(23, i, 0, 0.999);
      const HermitianOp back = herm_exp(herm_log(r));
      CHECK(back.c0 == Approx(0.5).margin(1e-13));
      CHECK(dist(2.0 * back.c, r) < 1e-12);
    }
  }
  SECTION("pure states are rejected") {
    try {
      herm_log({0.0, 0.0, 1.0});
      FAIL("expected rank_deficient");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::rank_deficient);
    }
  }
}

TEST_CASE("herm_exp matches the dense series") {
  SECTION("exponential of sigma3") {
    const HermitianOp e = herm_exp({0.0, {0.0, 0.0, 1.0}});
    CHECK(e.c0 == Approx(1.5430806348152437).margin(1e-15));
    CHECK(e.c.z == Approx(1.1752011936438014).margin(1e-15));
  }
  SECTION("exponential of zero is the identity") {
    const HermitianOp e = herm_exp({0.0, {0.0, 0.0, 0.0}});
    CHECK(e.c0 == 1.0);
    CHECK(norm(e.c) == 0.0);
  }
  SECTION("random operators vs dense") {
    for (int i = 0; i < 50; ++i) {
      HermitianOp x;
      x.c0 = uniform_in(24, i, 0, -3.0, 3.0);
      x.c = uniform_in(24, i, 1, 0.1, 5.0) * sampling::unit_vector(24, i, 2);
      const HermitianOp e = herm_exp(x);
      const HermitianOp ref = dense::to_op(dense::expm(dense::from_op(x)));
      const double scale_ref = std::abs(ref.c0) + norm(ref.c);
      CHECK(std::abs(e.c0 - ref.c0) / scale_ref < 1e-12);
      CHECK(dist(e.c, ref.c) / scale_ref < 1e-12);
    }
  }
  SECTION("tiny traceless parts use the stable branch") {
    const HermitianOp e = herm_exp({0.3, {1e-9, 0.0, 0.0}});
    const HermitianOp ref = dense::to_op(dense::expm(dense::from_op({0.3, {1e-9, 0.0, 0.0}})));
    CHECK(e.c0 == Approx(ref.c0).margin(1e-14));
    CHECK(dist(e.c, ref.c) < 1e-14);
  }
  SECTION("overflow guard") {
    try {
      herm_exp({400.0, {0.0, 0.0, 400.0}});
      FAIL("expected overflow");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::overflow);
    }
  }
}

TEST_CASE("trace_norm") {
  CHECK(trace_norm({0.0, {0.0, 0.0, 1.0}}) == Approx(2.0));
  CHECK(trace_norm({0.5, {0.0, 0.0, 0.25}}) == Approx(1.0));
  CHECK(trace_norm({0.5, {0.0, 0.0, -0.7}}) == Approx(1.4));
  for (int i = 0; i < 30; ++i) {
    HermitianOp x;
    x.c0 = uniform_in(25, i, 0, -2.0, 2.0);
    x.c = uniform_in(25, i, 1, 0.0, 2.0) * sampling::unit_vector(25, i, 2);
    CHECK(trace_norm(x) == Approx(dense::trace_norm_herm(dense::from_op(x))).margin(1e-12));
  }
}

TEST_CASE("sandwich is the dense congruence") {
  SECTION("identity leaves the state alone") {
    const HermitianOp rho{0.5, {0.1, -0.2, 0.15}};
    const HermitianOp w = sandwich({1.0, {0.0, 0.0, 0.0}}, rho);
    CHECK(w.c0 == Approx(rho.c0));
    CHECK(dist(w.c, rho.c) < 1e-15);
  }
  SECTION("random congruences vs dense") {
    for (int i = 0; i < 50; ++i) {
      HermitianOp e;
      e.c0 = uniform_in(26, i, 0, -2.0, 2.0);
      e.c = uniform_in(26, i, 1, 0.0, 2.0) * sampling::unit_vector(26, i, 2);
      HermitianOp b;
      b.c0 = uniform_in(26, i, 5, -2.0, 2.0);
      b.c = uniform_in(26, i, 6, 0.0, 2.0) * sampling::unit_vector(26, i, 7);
      const HermitianOp w = sandwich(e, b);
      const dense::Mat em = dense::from_op(e);
      const HermitianOp ref = dense::to_op(em * dense::from_op(b) * em);
      CHECK(w.c0 == Approx(ref.c0).margin(1e-11));
      CHECK(dist(w.c, ref.c) < 1e-11);
    }
  }
}

TEST_CASE("relative_entropy") {
  SECTION("zero iff equal") {
    CHECK(relative_entropy({0.2, 0.1, 0.3}, {0.2, 0.1, 0.3}) == Approx(0.0).margin(1e-13));
  }
  SECTION("fixed values") {
    CHECK(relative_entropy({0.0, 0.0, 0.0}, {0.0, 0.0, 0.5}) ==
          Approx(0.14384103622589043).margin(1e-14));
    CHECK(relative_entropy({0.0, 0.0, 0.5}, {0.0, 0.0, 0.0}) ==
          Approx(0.13081203594113698).margin(1e-14));
  }
  SECTION("pure argument stays finite") {
    const double k = relative_entropy({0.0, 0.0, 1.0}, {0.0, 0.0, 0.5});
    const double ref = dense::relative_entropy(dense::from_bloch({0.0, 0.0, 1.0}),
                                               dense::from_bloch({0.0, 0.0, 0.5}));
    CHECK(k == Approx(ref).margin(1e-12));
  }
  SECTION("random pairs vs dense, and nonnegativity") {
    for (int i = 0; i < 100; ++i) {
      const BlochVector r = sampling::interior_bloch(27, i, 0, 1.0);
      const BlochVector t = sampling::interior_bloch(27, i, 10, 0.999);
      const double k = relative_entropy(r, t);
      const double ref =
          dense::relative_entropy(dense::from_bloch(r), dense::from_bloch(t));
      CHECK(k == Approx(ref).margin(1e-11));
      CHECK(k >= -1e-12);
    }
  }
  SECTION("pure reference") {
    try {
      relative_entropy({0.1, 0.0, 0.0}, {0.0, 0.0, 1.0});
      FAIL("expected undefined_divergence");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::undefined_divergence);
    }
    CHECK(relative_entropy({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}) == 0.0);
  }
}

TEST_CASE("guarded small-argument helpers stay continuous") {
  const double x_lo = 9.9e-5;  // series branch
  const double x_hi = 1.01e-4; // direct branch
  CHECK(detail::atanh_over_x(x_lo) == Approx(std::atanh(x_lo) / x_lo).margin(1e-14));
  CHECK(detail::atanh_over_x(x_hi) == Approx(std::atanh(x_hi) / x_hi).margin(1e-14));
  CHECK(detail::tanh_over_x(x_lo) == Approx(std::tanh(x_lo) / x_lo).margin(1e-14));
  CHECK(detail::tanh_over_x(x_hi) == Approx(std::tanh(x_hi) / x_hi).margin(1e-14));
  CHECK(detail::atanh_over_x(0.0) == 1.0);
  CHECK(detail::tanh_over_x(0.0) == 1.0);
}
