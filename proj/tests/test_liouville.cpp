#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "stochhyp/baselines.hpp"
#include "stochhyp/errors.hpp"
#include "stochhyp/liouville.hpp"
#include "stochhyp/reference.hpp"

using namespace stochhyp;
using namespace stochhyp::liouville;

namespace {

PhaseSpaceGrid small_grid(double dt = 0.002) { return PhaseSpaceGrid(1.0, 1.0, 0.05, 0.05, dt); }

std::size_t at(const PhaseSpaceGrid& g, int i, int j) { return static_cast<std::size_t>(i * g.nv() + j); }

std::vector<double> rhs(const LiouvilleScheme& s, const std::vector<double>& u, double z) {
  std::vector<double> out(u.size());
  s.rhs_deterministic(u, s.context_at(z), out);
  return out;
}

GpcField2D random_field(const PhaseSpaceGrid& g, std::size_t modes, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  GpcField2D f(static_cast<std::size_t>(g.nx()), static_cast<std::size_t>(g.nv()), modes);
  for (int i = 2; i < g.nx() - 2; ++i) {
    for (int j = 2; j < g.nv() - 2; ++j) {
      for (std::size_t k = 0; k < modes; ++k) {
        f(static_cast<std::size_t>(i), static_cast<std::size_t>(j), k) = d(rng) / (1.0 + static_cast<double>(k * k));
      }
    }
  }
  return f;
}

}  // namespace

TEST(PhaseGrid, EvenSymmetricLayout) {
  const PhaseSpaceGrid g(2.0, 2.0, 0.03, 0.03, 0.002);
  EXPECT_EQ(g.nx() % 2, 0);
  EXPECT_EQ(g.nv() % 2, 0);
  EXPECT_EQ(g.x_edge(g.barrier_edge()), 0.0);
  EXPECT_GE(g.x_hi(), 2.0);
  for (int j = 0; j < g.nv(); ++j) EXPECT_EQ(g.v_center(g.reflect_index(j)), -g.v_center(j));
  EXPECT_THROW(PhaseSpaceGrid(2.0, 2.0, 0.0, 0.03, 0.002), ConfigError);
}

TEST(Potential, CellGradientExcludesJump) {
  const PhaseSpaceGrid g = small_grid();
  const PotentialBarrier b;
  for (int i = 0; i < g.nx(); ++i) EXPECT_NEAR(b.cell_gradient(g, i, 0.5), 0.05, 1e-12);
  EXPECT_NEAR(b.max_abs_gradient(g), 0.1, 1e-12);
}

TEST(Interface, Examples) {
  const PhaseSpaceGrid g(2.0, 2.0, 0.03, 0.03, 0.002);
  const auto t = resolve_interface(0.5, 0.2, 0.0, g);
  EXPECT_EQ(t.branch, Branch::transmit);
  EXPECT_NEAR(t.velocity, 0.8062258, 1e-7);
  EXPECT_NEAR(g.v_center(t.k) * t.c1 + g.v_center(t.k + 1) * t.c2, std::sqrt(0.65), 1e-12);
  EXPECT_GE(t.c1, 0.0);
  EXPECT_GE(t.c2, 0.0);
  EXPECT_FALSE(t.truncated);

  const auto r = resolve_interface(0.5, 0.0, 0.2, g);
  EXPECT_EQ(r.branch, Branch::reflect);
  EXPECT_EQ(r.velocity, -0.5);
  EXPECT_NEAR(g.v_center(r.k), -0.5, 0.5 * g.dv());
}

TEST(Interface, NoBarrierReproducesSameCell) {
  const PhaseSpaceGrid g = small_grid();
  for (int j = 0; j < g.nv(); ++j) {
    const double v = g.v_center(j);
    const auto e = resolve_interface(v, 0.1, 0.1, g);
    EXPECT_EQ(e.branch, Branch::transmit);
    EXPECT_EQ(e.k, j);
    EXPECT_EQ(e.c1, 1.0);
    EXPECT_EQ(e.c2, 0.0);
    EXPECT_FALSE(e.truncated);
  }
}

TEST(Interface, ReflectionStencilAndTruncation) {
  const PhaseSpaceGrid g = small_grid();
  PotentialBarrier tall;
  tall.v_left = 0.0;
  tall.v_right = 10.0;
  tall.slope_amp = 0.0;
  const LiouvilleScheme s(g, tall, {});
  const auto ctx = s.context_at(0.0);
  for (int j = 0; j < g.nv() / 2; ++j) {
    EXPECT_EQ(ctx.stencil[static_cast<std::size_t>(j)].branch, Branch::reflect);
    EXPECT_EQ(ctx.stencil[static_cast<std::size_t>(j)].k, g.reflect_index(j));
  }
  // Rightward arrivals come from far above the v-range: all truncated.
  EXPECT_EQ(ctx.truncations, g.nv() / 2);
}

TEST(Scheme, ConstructorChecks) {
  const PhaseSpaceGrid bad_dt = small_grid(0.05);
  EXPECT_THROW(LiouvilleScheme(bad_dt, PotentialBarrier{}, {}), ConfigError);
  SchemeOptions low_alpha;
  low_alpha.alpha = 0.01;
  EXPECT_THROW(LiouvilleScheme(small_grid(), PotentialBarrier{}, low_alpha), ConfigError);
  SchemeOptions order3;
  order3.order = 3;
  EXPECT_THROW(LiouvilleScheme(small_grid(), PotentialBarrier{}, order3), ConfigError);
}

TEST(Rhs, ZeroAndFreeStream) {
  const PhaseSpaceGrid g = small_grid();
  for (int order : {1, 2}) {
    SchemeOptions o;
    o.order = order;
    const LiouvilleScheme s(g, PotentialBarrier{}, o);
    const std::vector<double> zero(static_cast<std::size_t>(g.nx() * g.nv()), 0.0);
    for (double r : rhs(s, zero, 0.3)) EXPECT_EQ(r, 0.0);

    PotentialBarrier flat;
    flat.v_left = flat.v_right = 0.2;
    const LiouvilleScheme f(g, flat, o);
    const std::vector<double> one(zero.size(), 1.0);
    for (double r : rhs(f, one, 0.7)) EXPECT_NEAR(r, 0.0, 1e-14);
  }
}

TEST(Rhs, LaxFriedrichsUpwindLimit) {
  // alpha = |DV| with DV > 0: G = -DV u_{j+1}, so du/dt = DV (u_{j+1} - u_j) / dv.
  const PhaseSpaceGrid g = small_grid();
  PotentialBarrier b;
  b.v_left = b.v_right = 0.0;
  const LiouvilleScheme s(g, b, {});
  ASSERT_NEAR(s.alpha(), 0.1, 1e-12);
  std::vector<double> u(static_cast<std::size_t>(g.nx() * g.nv()));
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.nv(); ++j) u[at(g, i, j)] = std::sin(3.0 * g.v_center(j));
  }
  const auto r = rhs(s, u, 1.0);
  const double dv = g.dv();
  for (int i = 1; i < g.nx() - 1; ++i) {
    for (int j = 1; j < g.nv() - 1; ++j) {
      const double dvx = b.cell_gradient(g, i, 1.0);
      EXPECT_NEAR(r[at(g, i, j)], dvx * (u[at(g, i, j + 1)] - u[at(g, i, j)]) / dv, 1e-12);
    }
  }
}

TEST(Rhs, LaxFriedrichsPureDissipation) {
  const PhaseSpaceGrid g = small_grid();
  PotentialBarrier b;
  b.v_left = b.v_right = 0.0;
  const LiouvilleScheme s(g, b, {});
  std::vector<double> u(static_cast<std::size_t>(g.nx() * g.nv()));
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.nv(); ++j) u[at(g, i, j)] = g.v_center(j) * g.v_center(j);
  }
  const auto r = rhs(s, u, 0.0);  // DV = 0
  for (int i = 1; i < g.nx() - 1; ++i) {
    for (int j = 1; j < g.nv() - 1; ++j) {
      const double lap = u[at(g, i, j + 1)] - 2.0 * u[at(g, i, j)] + u[at(g, i, j - 1)];
      EXPECT_NEAR(r[at(g, i, j)], 0.5 * s.alpha() * lap / g.dv(), 1e-12);
    }
  }
}

TEST(Rhs, LaxWendroffExactOnLinearData) {
  const PhaseSpaceGrid g = small_grid();
  PotentialBarrier b;
  b.v_left = b.v_right = 0.0;
  SchemeOptions o;
  o.order = 2;
  const LiouvilleScheme s(g, b, o);
  std::vector<double> u(static_cast<std::size_t>(g.nx() * g.nv()));
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.nv(); ++j) u[at(g, i, j)] = 1.0 + 0.5 * g.v_center(j);
  }
  const auto r = rhs(s, u, -0.6);
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 1; j < g.nv() - 1; ++j) {
      // u_t = V_x u_v
      EXPECT_NEAR(r[at(g, i, j)], b.cell_gradient(g, i, -0.6) * 0.5, 1e-12);
    }
  }
}

TEST(Rhs, SecondOrderEdgeIsMidpointOnLinearData) {
  // No barrier, linear in x: x-term equals -v u_x exactly.
  const PhaseSpaceGrid g = small_grid();
  PotentialBarrier b;
  b.v_left = b.v_right = 0.0;
  b.slope_amp = 0.0;
  SchemeOptions o;
  o.order = 2;
  const LiouvilleScheme s(g, b, o);
  std::vector<double> u(static_cast<std::size_t>(g.nx() * g.nv()));
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.nv(); ++j) u[at(g, i, j)] = 2.0 + 0.3 * g.x_center(i);
  }
  const auto r = rhs(s, u, 0.0);
  for (int i = 2; i < g.nx() - 2; ++i) {
    for (int j = 0; j < g.nv(); ++j) EXPECT_NEAR(r[at(g, i, j)], -g.v_center(j) * 0.3, 1e-12);
  }
}

TEST(Rhs, SlopesOfUniformAndLinearFields) {
  const PhaseSpaceGrid g = small_grid();
  SchemeOptions o;
  o.order = 2;
  const LiouvilleScheme s(g, PotentialBarrier{}, o);
  std::vector<double> u(static_cast<std::size_t>(g.nx() * g.nv()), 3.0);
  std::vector<double> sl(u.size());
  s.slopes(u, sl);
  for (double x : sl) EXPECT_EQ(x, 0.0);
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.nv(); ++j) u[at(g, i, j)] = -0.7 * g.x_center(i);
  }
  s.slopes(u, sl);
  for (int i = 1; i < g.nx() - 1; ++i) EXPECT_NEAR(sl[at(g, i, 3)], -0.7, 1e-12);
}

TEST(Conservation, PerNodeWithoutJump) {
  const PhaseSpaceGrid g = small_grid();
  PotentialBarrier b;
  b.v_left = b.v_right = 0.0;
  const LiouvilleScheme s(g, b, {});
  for (double z : {-1.0, -0.2, 0.9}) {
    const DeterministicLiouville det(s, z);
    auto u = sample_profile(sine_disk, g);
    double m0 = 0.0;
    for (double x : u) m0 += x;
    for (int n = 0; n < 50; ++n) u = det.advance(u, Integrator::euler);
    double m1 = 0.0;
    for (double x : u) m1 += x;
    EXPECT_NEAR(m1, m0, 1e-12 * m0);
  }
}

TEST(MaximumPrinciple, FirstOrderShortRun) {
  const PhaseSpaceGrid g(2.0, 2.0, 0.06, 0.06, 0.004);
  const LiouvilleScheme s(g, PotentialBarrier{}, {});
  const DeterministicLiouville det(s, 0.0);
  auto u = sample_profile(two_quarter_disks, g);
  for (int n = 0; n < 100; ++n) {
    u = det.advance(u, Integrator::euler);
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    ASSERT_GE(*lo, -1e-12);
    ASSERT_LE(*hi, 1.0 + 1e-12);
  }
}

TEST(Galerkin, OrderZeroSingleNodeIsDeterministicBitwise) {
  const PhaseSpaceGrid g(2.0, 2.0, 0.06, 0.06, 0.004);
  for (int order : {1, 2}) {
    SchemeOptions o;
    o.order = order;
    const LiouvilleScheme s(g, PotentialBarrier{}, o);
    const GalerkinLiouville gl(s, 0, gpc::gauss_rule(1));
    const DeterministicLiouville det(s, 0.0);
    auto f = project_initial(two_quarter_disks, g, 1);
    auto u = sample_profile(two_quarter_disks, g);
    for (int n = 0; n < 20; ++n) {
      f = gl.advance(f, Integrator::rk2, 2);
      u = det.advance(u, Integrator::rk2);
    }
    for (std::size_t c = 0; c < u.size(); ++c) ASSERT_EQ(f.raw()[c], u[c]) << order << " " << c;
  }
}

TEST(Galerkin, ThreadsBitwiseAndReference) {
  const PhaseSpaceGrid g = small_grid();
  for (int order : {1, 2}) {
    SchemeOptions o;
    o.order = order;
    const LiouvilleScheme s(g, PotentialBarrier{}, o);
    const GalerkinLiouville gl(s, 4, gpc::gauss_rule(8));
    const auto f = random_field(g, 5, 11);
    GpcField2D a;
    GpcField2D b;
    GpcField2D c;
    gl.galerkin_rhs(f, a, 1);
    gl.galerkin_rhs(f, b, 4);
    reference::liouville_galerkin_rhs(gl, f, c);
    EXPECT_EQ(a, b);
    for (std::size_t n = 0; n < a.raw().size(); ++n) ASSERT_NEAR(a.raw()[n], c.raw()[n], 1e-12);
  }
}

TEST(Galerkin, PolynomialRhsProjectedExactly) {
  // Field of degree K-1 in z: the first-order RHS is degree K, so K+1 nodes are exact.
  const PhaseSpaceGrid g = small_grid();
  const LiouvilleScheme s(g, PotentialBarrier{}, {});
  const int K = 5;
  const GalerkinLiouville few(s, K, gpc::gauss_rule(K + 1));
  const GalerkinLiouville dense(s, K, gpc::gauss_rule(64));
  auto f = random_field(g, K + 1, 12);
  for (std::size_t c = 0; c < f.cells(); ++c) f.raw()[c * (K + 1) + K] = 0.0;
  GpcField2D a;
  GpcField2D b;
  few.galerkin_rhs(f, a);
  dense.galerkin_rhs(f, b);
  for (std::size_t n = 0; n < a.raw().size(); ++n) ASSERT_NEAR(a.raw()[n], b.raw()[n], 1e-10);
}

TEST(Galerkin, ShapeAndRuleErrors) {
  const PhaseSpaceGrid g = small_grid();
  const LiouvilleScheme s(g, PotentialBarrier{}, {});
  EXPECT_THROW(GalerkinLiouville(s, 4, gpc::gauss_rule(4)), ConfigError);
  const GalerkinLiouville gl(s, 2, gpc::gauss_rule(3));
  GpcField2D wrong(3, 3, 3);
  GpcField2D out;
  EXPECT_THROW(gl.galerkin_rhs(wrong, out), UsageError);
}

TEST(Galerkin, ZeroFieldStaysZero) {
  const PhaseSpaceGrid g = small_grid();
  const LiouvilleScheme s(g, PotentialBarrier{}, {});
  const GalerkinLiouville gl(s, 3, gpc::gauss_rule(8));
  GpcField2D f(static_cast<std::size_t>(g.nx()), static_cast<std::size_t>(g.nv()), 4);
  const auto zero = f;
  for (auto integrator : {Integrator::euler, Integrator::rk2}) {
    auto h = f;
    for (int n = 0; n < 5; ++n) h = gl.advance(h, integrator);
    EXPECT_EQ(h, zero);
  }
}

TEST(Profiles, Examples) {
  EXPECT_EQ(two_quarter_disks(0.5, -0.5), 1.0);
  EXPECT_EQ(two_quarter_disks(-0.5, 0.5), 1.0);
  EXPECT_EQ(two_quarter_disks(0.5, 0.5), 0.0);
  EXPECT_EQ(two_quarter_disks(0.9, -0.9), 0.0);
  EXPECT_NEAR(sine_disk(0.0, 0.0), 1.0, 1e-15);
  EXPECT_EQ(sine_disk(0.6, 0.0), 0.0);
  EXPECT_THROW(phase_profile_from_id("ex2_init3"), ConfigError);
}

TEST(Characteristics, AgreesWithSchemeUnderRefinement) {
  PotentialBarrier b;
  b.slope_amp = 0.0;
  const baselines::LiouvilleCharacteristics exact(b, 0.0, two_quarter_disks);
  double prev = 1e300;
  for (double h : {0.08, 0.04}) {
    const PhaseSpaceGrid g(2.0, 2.0, h, h, h / 10);
    const LiouvilleScheme s(g, b, {});
    const int steps = static_cast<int>(std::lround(0.5 / g.dt()));
    const auto u = baselines::deterministic_liouville(s, two_quarter_disks, steps, Integrator::euler, 0.0);
    const auto ref = exact.sample(g, 0.5);
    double err = 0.0;
    for (std::size_t c = 0; c < u.size(); ++c) err += std::abs(u[c] - ref[c]) * h * h;
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 0.3);
}

TEST(Characteristics, TransmitAndReflect) {
  PotentialBarrier b;
  b.slope_amp = 0.0;
  const baselines::LiouvilleCharacteristics exact(b, 0.3, [](double x, double v) { return x + 10.0 * v; });
  // Free flight away from the barrier.
  EXPECT_NEAR(exact.value(-1.0, 0.5, 0.2), -1.1 + 5.0, 1e-14);
  // v = 0.5 on the low side cannot have come over the barrier: reflected on the right.
  EXPECT_NEAR(exact.value(0.3, 0.5, 1.0), 0.2 - 5.0, 1e-14);
  // v = -0.8 on the high side came over from the right at -sqrt(0.64 + 0.4).
  const double vb = -std::sqrt(1.04);
  const double rest = 1.0 - 0.3 / 0.8;
  EXPECT_NEAR(exact.value(-0.3, -0.8, 1.0), -vb * rest + 10.0 * vb, 1e-12);
  PotentialBarrier sloped;
  EXPECT_THROW(baselines::LiouvilleCharacteristics(sloped, 0.5, two_quarter_disks), UsageError);
}
