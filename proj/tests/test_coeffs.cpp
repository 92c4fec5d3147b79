#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "opuc/coeffs.hpp"
#include "oracles.hpp"

using namespace opuc;

namespace {

double limit_error(const VerblunskyDescriptor& desc,
                   const VerblunskyDescriptor& lim, std::int64_t m) {
  double worst = 0.0;
  for (std::int64_t n = -5; n <= 5; ++n)
    worst = std::max(worst, std::abs(value_at(desc, n + m) - value_at(lim, n)));
  return worst;
}

}  // namespace

TEST_CASE("window reproduces generator values") {
  auto c = VerblunskyDescriptor::constant(0.5);
  auto w = window(c, 10, 2);
  REQUIRE(w.values.size() == 5);
  for (auto v : w.values) CHECK(v == cdouble{0.5});

  auto fs = VerblunskyDescriptor::finite_support({{0, cdouble{0.3, 0.4}}});
  auto away = window(fs, 3, 1);
  for (auto v : away.values) CHECK(v == cdouble{});

  auto lz = VerblunskyDescriptor::lopez(0, 2, 0.5, 0.5, 0.0, 0.0,
                                        Orientation::whole_line);
  auto lw = window(lz, 0, 2);
  std::vector<double> moduli;
  for (auto v : lw.values) moduli.push_back(std::abs(v));
  CHECK(moduli == std::vector<double>{0.5, 0.0, 0.5, 0.0, 0.5});

  SUBCASE("half-line edge") {
    CHECK(window(c, 1, 2).at(-1) == cdouble{-1.0});
    CHECK_THROWS_AS(window(c, 0, 2), std::invalid_argument);
  }
}

TEST_CASE("lopez support pattern and phase steps") {
  double t = 1.1, t0 = 0.4;
  auto lz = VerblunskyDescriptor::lopez(3, 3, 0.6, 0.25, t, t0,
                                        Orientation::whole_line);
  for (std::int64_t j = -4; j <= 4; ++j) {
    cdouble lo = value_at(lz, 3 + j * 3);
    cdouble hi = value_at(lz, 3 + (j + 1) * 3);
    CHECK(std::abs(std::conj(hi) * lo - 0.15 * std::polar(1.0, t)) < 1e-12);
    CHECK(std::abs(std::abs(lo) - (j % 2 == 0 ? 0.6 : 0.25)) < 1e-15);
    CHECK(value_at(lz, 3 + j * 3 + 1) == cdouble{});
    CHECK(value_at(lz, 3 + j * 3 + 2) == cdouble{});
  }
  CHECK(std::abs(value_at(lz, 3) - 0.6 * std::polar(1.0, t0)) < 1e-15);
}

TEST_CASE("shift") {
  auto c = VerblunskyDescriptor::constant(cdouble{0.2, 0.1});
  CHECK(shift(c, 7) == c);

  auto fs = VerblunskyDescriptor::finite_support({{0, cdouble{0.5, 0.1}}});
  auto moved = shift(fs, 1);
  CHECK(moved ==
        VerblunskyDescriptor::finite_support({{-1, cdouble{0.5, 0.1}}}));

  std::vector<cdouble> plist{{0.1, 0.0}, {0.0, 0.2}, {-0.3, 0.0}};
  auto p = VerblunskyDescriptor::periodic(plist, Orientation::whole_line);
  CHECK(shift(p, 3) == p);

  SUBCASE("window commutation over the catalog") {
    std::mt19937_64 gen(11);
    auto base = VerblunskyDescriptor::constant(0.1, Orientation::whole_line);
    std::vector<VerblunskyDescriptor> descs{
        VerblunskyDescriptor::periodic(plist, Orientation::whole_line),
        VerblunskyDescriptor::sparse(3, 0.4, Orientation::half_line, 2),
        VerblunskyDescriptor::lopez(1, 2, 0.7, 0.3, 0.9, 0.2,
                                    Orientation::whole_line),
        VerblunskyDescriptor::random(base, {0.3, 0.0},
                                     Distribution::rademacher, 77),
        VerblunskyDescriptor::explicit_list({{0.4, 0.0}, {0.0, 0.1}},
                                            ConstantTail{{0.05, 0.0}}),
    };
    for (const auto& d : descs)
      for (std::int64_t m : {0, 1, 5, 12}) {
        auto s = shift(d, m);
        auto ws = window(s, 20, 6);
        auto wd = window(d, 20 + m, 6);
        for (std::int64_t n = 14; n <= 26; ++n)
          CHECK(std::abs(ws.at(n) - wd.at(n + m)) == 0.0);
      }
  }

  SUBCASE("half-line rejects negative shifts") {
    CHECK_THROWS_AS(shift(VerblunskyDescriptor::constant(0.5), -1),
                    std::invalid_argument);
  }
}

TEST_CASE("right limits of the structured catalog") {
  SUBCASE("constant") {
    auto lims = right_limits(VerblunskyDescriptor::constant(0.5));
    REQUIRE(lims.size() == 1);
    CHECK(lims[0].descriptor ==
          VerblunskyDescriptor::constant(0.5, Orientation::whole_line));
  }

  SUBCASE("periodic gives the p shifts") {
    std::vector<cdouble> plist{{0.1, 0.0}, {0.2, 0.0}, {0.3, 0.0}};
    auto lims = right_limits(VerblunskyDescriptor::periodic(plist));
    REQUIRE(lims.size() == 3);
  }

  SUBCASE("sparse gives zero and one-site limits") {
    auto sp = VerblunskyDescriptor::sparse(4, 0.5);
    auto lims = right_limits(sp);
    REQUIRE(lims.size() == 2);
    CHECK(lims[0].descriptor ==
          VerblunskyDescriptor::constant(0.0, Orientation::whole_line));
    CHECK(lims[1].descriptor ==
          VerblunskyDescriptor::finite_support({{0, cdouble{0.5}}}));
  }

  SUBCASE("witness shifts converge") {
    std::vector<VerblunskyDescriptor> descs{
        VerblunskyDescriptor::constant(0.5),
        VerblunskyDescriptor::periodic({{0.1, 0.0}, {0.6, 0.0}}),
        VerblunskyDescriptor::sparse(4, 0.5),
        VerblunskyDescriptor::explicit_list({{0.9, 0.0}},
                                            PeriodicTail{{{0.2, 0.0}, {0.5, 0.0}}}),
        VerblunskyDescriptor::lopez(0, 2, 0.5, 0.5, oracle::kPi / 3, 0.0),
        VerblunskyDescriptor::lopez(0, 1, 0.4, 0.4, 1.0, 0.0),
    };
    for (const auto& d : descs)
      for (const auto& lim : right_limits(d)) {
        REQUIRE(lim.witness_shifts.size() >= 3);
        std::vector<double> errs;
        for (auto m : lim.witness_shifts)
          errs.push_back(limit_error(d, lim.descriptor, m));
        if (lim.phase_class) {
          for (double e : errs) CHECK(e < 0.01);
        } else {
          CHECK(errs.back() < 1e-9);
        }
      }
  }

  SUBCASE("random is refused") {
    auto r = VerblunskyDescriptor::random(VerblunskyDescriptor::constant(0.0),
                                          {0.5, 0.0},
                                          Distribution::rademacher, 1);
    CHECK_THROWS_AS(right_limits(r), std::invalid_argument);
  }
}

TEST_CASE("sparse condition check") {
  SUBCASE("sparse support indicates singular spectrum") {
    auto rep = sparse_condition_check(VerblunskyDescriptor::sparse(4, 0.5), 4,
                                      4096);
    CHECK(rep.singular_indicated);
    CHECK(rep.limsup_estimate == 0.5);
    for (double d : rep.pair_decay) CHECK(d < rep.tol);
  }

  SUBCASE("constant fails the decay condition") {
    auto rep =
        sparse_condition_check(VerblunskyDescriptor::constant(0.5), 4, 4096);
    CHECK(!rep.singular_indicated);
    CHECK(std::abs(rep.pair_decay[0] - 0.25) < 1e-15);
  }

  SUBCASE("decaying coefficients are not flagged") {
    std::vector<cdouble> vals;
    for (int n = 0; n < 4200; ++n) vals.push_back(1.0 / (n + 2.0));
    auto rep = sparse_condition_check(
        VerblunskyDescriptor::explicit_list(vals), 4, 4096);
    CHECK(!rep.singular_indicated);
    CHECK(rep.limsup_estimate < 1e-3);
  }

  SUBCASE("window precondition") {
    CHECK_THROWS_AS(
        sparse_condition_check(VerblunskyDescriptor::constant(0.5), 4, 30),
        std::invalid_argument);
  }
}

TEST_CASE("seeded randomness is reproducible") {
  auto mk = [] {
    return VerblunskyDescriptor::random(
        VerblunskyDescriptor::constant(0.1), {0.3, 0.0},
        Distribution::rademacher, 2024);
  };
  auto w1 = window(mk(), 50, 40);
  auto w2 = window(mk(), 50, 40);
  CHECK(w1.values == w2.values);
  for (auto v : w1.values) {
    CHECK(std::abs(v) < 1.0);
    CHECK(std::min(std::abs(v - cdouble{0.4}), std::abs(v - cdouble{-0.2})) <
          1e-15);
  }

  SUBCASE("scale sequence decays as declared") {
    auto r = VerblunskyDescriptor::random(
        VerblunskyDescriptor::constant(0.0), {0.5, 1.0},
        Distribution::rademacher, 9);
    for (std::int64_t n : {0, 3, 9, 99})
      CHECK(std::abs(std::abs(value_at(r, n)) - 0.5 / (n + 1.0)) < 1e-15);
  }

  SUBCASE("uniform draws differ between seeds") {
    auto a = VerblunskyDescriptor::random(VerblunskyDescriptor::constant(0.0),
                                          {0.5, 0.0}, Distribution::uniform, 1);
    auto b = VerblunskyDescriptor::random(VerblunskyDescriptor::constant(0.0),
                                          {0.5, 0.0}, Distribution::uniform, 2);
    bool differ = false;
    for (std::int64_t n = 0; n < 32; ++n)
      differ = differ || std::abs(value_at(a, n) - value_at(b, n)) > 1e-12;
    CHECK(differ);
  }
}

TEST_CASE("jacobi descriptors") {
  auto cj = JacobiDescriptor::constant({1.0, 0.0});
  CHECK(jacobi_at(cj, -7) == JacobiPair{1.0, 0.0});

  auto pj = JacobiDescriptor::periodic({{1.0, 0.5}, {2.0, 0.5}});
  CHECK(jacobi_at(pj, 0) == JacobiPair{1.0, 0.5});
  CHECK(jacobi_at(pj, 1) == JacobiPair{2.0, 0.5});
  CHECK(jacobi_at(pj, -1) == JacobiPair{2.0, 0.5});

  auto dj = JacobiDescriptor::deviation({1.0, 0.0}, {{3, {0.5, -1.0}}});
  CHECK(jacobi_at(dj, 3) == JacobiPair{0.5, -1.0});
  CHECK(jacobi_at(dj, 4) == JacobiPair{1.0, 0.0});

  auto ej = JacobiDescriptor::explicit_list({{2.0, 1.0}}, {1.0, 0.0});
  CHECK(jacobi_at(ej, 0) == JacobiPair{2.0, 1.0});
  CHECK(jacobi_at(ej, 5) == JacobiPair{1.0, 0.0});

  auto w = jacobi_window(pj, 4, 3);
  REQUIRE(w.values.size() == 7);
  CHECK(w.at(4) == jacobi_at(pj, 4));
  CHECK(w.at(1) == jacobi_at(pj, 1));
}
