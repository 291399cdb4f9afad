#include <doctest.h>

#include "cqs/contour.hpp"
#include "cqs/cqs2p.hpp"
#include "cqs/error.hpp"

using namespace cqs;

namespace
{

const double E0 = 0.735;

ContourSpec c1(int panels = 64)
{
  ContourSpec s;
  s.kind = ContourKind::rotated_line;
  s.E = E0;
  s.extent = 1e6;
  s.panels = panels;
  return s;
}

ContourSpec c2(double D = 0.85, int panels = 64)
{
  ContourSpec s;
  s.kind = ContourKind::rational_deformation;
  s.E = E0;
  s.D = D;
  s.extent = 1e6;
  s.panels = panels;
  return s;
}

cplx cauchy(const std::vector<ContourNode> &nodes, cplx z0)
{
  cplx sum = 0.0;
  for (const auto &n : nodes)
  {
    sum += n.weight / (n.energy - z0);
  }
  return sum;
}

}  // namespace

TEST_SUITE("contour")
{
  TEST_CASE("contour points")
  {
    CHECK(std::abs(c1_point(0.0, E0, -pi / 3.0) - E0 / 2.0) < 1e-16);
    const cplx p = c1_point(2.0, E0, -pi / 3.0);
    CHECK(p.real() == doctest::Approx(E0 / 2.0 + 1.0).epsilon(1e-15));
    CHECK(p.imag() == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-15));
    // C2 meets the real axis only at E/2 and flattens onto it at both ends
    CHECK(c2_point(E0 / 2.0, E0, 0.85).imag() == 0.0);
    CHECK(c2_point(-2.0, E0, 0.85).imag() == doctest::Approx(0.402475).epsilon(1e-12));
    CHECK(c2_point(3.0, E0, 0.85).imag() < 0.0);
    CHECK(std::abs(c2_point(1e6, E0, 0.85).imag()) < 1e-6);
  }

  TEST_CASE("contour parameter validation")
  {
    auto s = c1();
    s.phi = 0.1;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    auto t = c2();
    t.D = 0.0;
    CHECK_THROWS_AS(t.validate(), ConfigError);
    t = c2();
    t.panels = 0;
    CHECK_THROWS_AS(t.validate(), ConfigError);
    CHECK(c1().canonical() != c2().canonical());
  }

  TEST_CASE("tracked momenta square to the node energies")
  {
    for (const auto &spec : {c1(), c2(), c2(15.0, 96)})
    {
      const auto nodes = discretize(spec);
      REQUIRE(nodes.size() == static_cast<std::size_t>(spec.panels * spec.nodes_per_panel));
      for (std::size_t i = 0; i < nodes.size(); ++i)
      {
        const auto &n = nodes[i];
        const double scale = std::max(1.0, std::abs(n.energy));
        CHECK(std::abs(n.k1.value * n.k1.value - 2.0 * n.energy) < 1e-13 * scale);
        CHECK(std::abs(n.k2.value * n.k2.value - 2.0 * (E0 - n.energy)) < 1e-13 * scale);
        CHECK((n.k1.sheet == Sheet::physical) == (n.k1.value.imag() > 0.0));
        CHECK((n.k2.sheet == Sheet::physical) == (n.k2.value.imag() > 0.0));
        if (i > 0)
        {
          CHECK(nodes[i].param > nodes[i - 1].param);
          // continuity: neighbouring roots never flip sign
          CHECK(std::abs(std::arg(n.k1.value / nodes[i - 1].k1.value)) < pi / 4.0);
          CHECK(std::abs(std::arg(n.k2.value / nodes[i - 1].k2.value)) < pi / 4.0);
        }
      }
      // anchors: decaying at the far ends
      CHECK(nodes.front().k1.sheet == Sheet::physical);
      CHECK(nodes.back().k2.sheet == Sheet::physical);
    }
  }

  TEST_CASE("C1 lower half puts k1 on the unphysical sheet")
  {
    const auto nodes = discretize(c1());
    for (const auto &n : nodes)
    {
      if (n.param > 0.5)
      {
        CHECK(n.k1.sheet == Sheet::unphysical);
      }
      if (n.param < -0.5)
      {
        CHECK(n.k2.sheet == Sheet::unphysical);
      }
    }
  }

  TEST_CASE("Cauchy integral separates the two sides of the path")
  {
    for (int panels : {64, 128})
    {
      const auto nodes = discretize(c2(0.85, panels));
      // between C2 (Im = -0.2775 at Re = 2) and the real axis
      CHECK(std::abs(cauchy(nodes, cplx(2.0, -0.05)) + 0.5) < 1e-5);
      // below C2
      CHECK(std::abs(cauchy(nodes, cplx(2.0, -0.5)) - 0.5) < 1e-5);
      // a bound-state pole of the first factor lies under the upper half of C2
      CHECK(std::abs(cauchy(nodes, cplx(-0.5, 0.0)) - 0.5) < 1e-5);
    }
    const auto line = discretize(c1());
    CHECK(std::abs(cauchy(line, cplx(1.0, 0.0)) + 0.5) < 1e-5);
    CHECK(std::abs(cauchy(line, cplx(0.0, -3.0)) - 0.5) < 1e-5);
  }

  TEST_CASE("bound-state poles are kept at a distance")
  {
    auto s = c2(0.01, 64);
    CHECK_THROWS_AS(discretize(s), DomainError);
  }

  TEST_CASE("tensor does not depend on the contour shape")
  {
    const LaguerreBasisSpec spec{1.6875, 0, 5};
    auto a = c1(256);
    a.extent = 1e10;
    auto b = c2(0.85, 256);
    b.extent = 1e10;
    const CqsTensor ta = build_tensor(E0, spec, spec, a);
    const CqsTensor tb = build_tensor(E0, spec, spec, b);
    const double scale = ta.entries.cwiseAbs().maxCoeff();
    CHECK((ta.entries - tb.entries).cwiseAbs().maxCoeff() < 1e-8 * scale);
  }
}
