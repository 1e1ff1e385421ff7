#include <doctest.h>

#include <cmath>

#include "escat/fields.hpp"
#include "escat/green.hpp"

using namespace escat;

namespace {

struct Fixture {
  LameParameters lame{1.5, 1.0};
  WaveContext ctx = wavenumbers(lame, 2.0);
};

}  // namespace

TEST_CASE("fundamental tensor reciprocity") {
  const Fixture fix;
  Rng rng(77);
  for (int k = 0; k < 20; ++k) {
    const Vec2 x = rng.in_disk(Vec2(0, 0), 3.0);
    const Vec2 y = rng.in_disk(Vec2(1, 1), 3.0);
    if ((x - y).norm() < 1e-3) continue;
    const CMat2 a = green_tensor(x, y, fix.lame, fix.ctx);
    const CMat2 b = green_tensor(y, x, fix.lame, fix.ctx);
    CHECK((a - b.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  }
  CHECK_THROWS_AS(green_tensor(Vec2(1, 1), Vec2(1, 1), fix.lame, fix.ctx), Error);
}

TEST_CASE("fundamental tensor columns solve the homogeneous equation") {
  const Fixture fix;
  const Vec2 y(0.1, -0.2);
  const Real wavelength = 2.0 * M_PI / fix.ctx.kappa_s;
  for (int col = 0; col < 2; ++col) {
    for (const auto& dir : {Vec2(1, 0), Vec2(0.8, 0.6), Vec2(-0.6, 0.8)}) {
      const Vec2 x = y + 3.0 * wavelength * dir;
      const auto rep = navier_residual_at(
          [&](const Vec2& z) { return CVec2(green_tensor(z, y, fix.lame, fix.ctx).col(col)); },
          x, 1e-4, 1.0, fix.ctx, fix.lame);
      CHECK(rep.max_rel <= 1e-4);
    }
  }
}

TEST_CASE("fundamental tensor far-field decay rate") {
  const Fixture fix;
  const Vec2 y(0, 0);
  const Vec2 dir = Vec2(1.0, 0.4).normalized();
  const Real r = 50.0;
  const Real g1 = green_tensor(y + r * dir, y, fix.lame, fix.ctx).norm();
  const Real g2 = green_tensor(y + 4.0 * r * dir, y, fix.lame, fix.ctx).norm();
  CHECK(g1 / g2 == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("equal-area disk self integral matches brute quadrature") {
  const Fixture fix;
  for (const Real a : {0.01, 0.05}) {
    Complex brute{0.0, 0.0};
    const int nr = 600, nt = 64;
    for (int i = 0; i < nr; ++i) {
      const Real r = a * (i + 0.5) / nr;
      for (int j = 0; j < nt; ++j) {
        const Real t = 2.0 * M_PI * (j + 0.5) / nt;
        const Vec2 x(r * std::cos(t), r * std::sin(t));
        brute += green_tensor(Vec2::Zero(), x, fix.lame, fix.ctx)(0, 0) * r * (a / nr) *
                 (2.0 * M_PI / nt);
      }
    }
    const Complex exact = green_disk_integral(a, fix.lame, fix.ctx);
    CHECK(std::abs(exact - brute) <= 2e-5 * std::abs(exact));

    // off-diagonal entries average out over the disk
    Complex off{0.0, 0.0};
    for (int i = 0; i < nr; i += 10)
      for (int j = 0; j < nt; ++j) {
        const Real r = a * (i + 0.5) / nr;
        const Real t = 2.0 * M_PI * (j + 0.5) / nt;
        off += green_tensor(Vec2::Zero(), Vec2(r * std::cos(t), r * std::sin(t)), fix.lame,
                            fix.ctx)(0, 1) *
               r;
      }
    CHECK(std::abs(off) * (a / nr) * (2.0 * M_PI / nt) < 1e-8);
  }
  CHECK_THROWS_AS(green_disk_integral(0.0, fix.lame, fix.ctx), Error);
}
