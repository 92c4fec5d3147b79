#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "opuc/jacobi.hpp"
#include "oracles.hpp"

using namespace opuc;

namespace {

JacobiPair site(const JacobiDescriptor& d, std::int64_t n) {
  if (d.orientation == Orientation::half_line && n < 0) return {0.0, 0.0};
  return jacobi_at(d, n);
}

// <delta_n, (H|_{[lo, hi]} - z)^{-1} delta_n> by direct tridiagonal solve.
cdouble truncated_resolvent(const JacobiDescriptor& d, std::int64_t lo,
                            std::int64_t hi, std::int64_t n, cdouble z) {
  auto len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<cdouble> diag(len), rhs(len);
  std::vector<double> off(len - 1);
  for (std::int64_t i = lo; i <= hi; ++i) {
    diag[static_cast<std::size_t>(i - lo)] = site(d, i).b - z;
    if (i < hi) off[static_cast<std::size_t>(i - lo)] = site(d, i).a;
  }
  rhs[static_cast<std::size_t>(n - lo)] = 1.0;
  return oracle::tridiag_solve(diag, off, rhs)[static_cast<std::size_t>(n - lo)];
}

JacobiDescriptor random_periodic(std::mt19937_64& gen, int period) {
  std::vector<JacobiPair> vals;
  for (int i = 0; i < period; ++i)
    vals.push_back({0.5 + oracle::rand_u(gen),
                    2.0 * oracle::rand_u(gen) - 1.0});
  return JacobiDescriptor::periodic(std::move(vals));
}

}  // namespace

TEST_CASE("jacobi window entries") {
  auto desc = JacobiDescriptor::deviation({1.0, 0.5}, {{2, {1.5, -0.25}}});

  SUBCASE("symmetric tridiagonal layout") {
    auto w = build_jacobi(desc, 0, 5);
    for (std::int64_t i = -5; i <= 5; ++i) {
      CHECK(w.at(i, i) == site(desc, i).b);
      CHECK(w.at(i, i + 1) == site(desc, i).a);
      if (i < 5) CHECK(w.at(i + 1, i) == site(desc, i).a);
      CHECK(w.at(i, i + 2) == 0.0);
    }
    CHECK(w.at(2, 2) == -0.25);
    CHECK(w.at(2, 3) == 1.5);
  }

  SUBCASE("half-line embedding decouples the negative axis") {
    auto h = JacobiDescriptor::explicit_list({{0.9, 0.1}, {1.1, -0.2}},
                                             {1.0, 0.0});
    auto w = build_jacobi(h, 0, 3);
    CHECK(w.at(-1, -1) == 0.0);
    CHECK(w.at(-1, 0) == 0.0);
    CHECK(w.at(0, -1) == 0.0);
    CHECK(w.at(0, 0) == 0.1);
    CHECK(w.at(0, 1) == 0.9);
    CHECK(w.at(1, 1) == -0.2);
    CHECK(w.at(2, 3) == 1.0);
  }

  SUBCASE("negative halfwidth rejected") {
    CHECK_THROWS_AS(build_jacobi(desc, 0, -1), std::invalid_argument);
  }
}

TEST_CASE("jacobi moments") {
  SUBCASE("first and second moment formulas") {
    auto desc = JacobiDescriptor::deviation(
        {1.0, 0.3}, {{0, {1.4, -0.6}}, {1, {0.7, 0.2}}});
    for (std::int64_t n = -2; n <= 3; ++n) {
      JacobiPair here = site(desc, n);
      JacobiPair left = site(desc, n - 1);
      CHECK(jacobi_moment(desc, n, 1) == here.b);
      CHECK(jacobi_moment(desc, n, 2) ==
            left.a * left.a + here.b * here.b + here.a * here.a);
    }
  }

  SUBCASE("free walk counts") {
    auto free = JacobiDescriptor::constant({1.0, 0.0});
    const double expected[] = {0.0, 2.0, 0.0, 6.0, 0.0, 20.0};
    for (std::int64_t n : {std::int64_t{-3}, std::int64_t{0}, std::int64_t{4}})
      for (std::int64_t l = 1; l <= 6; ++l)
        CHECK(std::abs(jacobi_moment(free, n, l) - expected[l - 1]) < 1e-12);
  }

  SUBCASE("windowed powers match dense powers") {
    std::mt19937_64 gen(57);
    for (int rep = 0; rep < 20; ++rep) {
      JacobiDescriptor desc =
          rep % 2 ? random_periodic(gen, 1 + rep % 4)
                  : JacobiDescriptor::deviation(
                        {0.5 + oracle::rand_u(gen), oracle::rand_u(gen) - 0.5},
                        {{-1, {0.5 + oracle::rand_u(gen), 0.4}},
                         {2, {0.5 + oracle::rand_u(gen), -0.3}}});
      for (std::int64_t n : {std::int64_t{-2}, std::int64_t{0}, std::int64_t{3}})
        for (std::int64_t l = 3; l <= 6; ++l) {
          std::int64_t h = l + 6;
          auto len = static_cast<std::size_t>(2 * h + 1);
          oracle::Dense m(len, std::vector<cdouble>(len));
          for (std::int64_t i = -h; i <= h; ++i) {
            auto r = static_cast<std::size_t>(i + h);
            m[r][r] = site(desc, n + i).b;
            if (i < h) {
              m[r][r + 1] = site(desc, n + i).a;
              m[r + 1][r] = site(desc, n + i).a;
            }
          }
          oracle::Dense acc = m;
          for (std::int64_t j = 1; j < l; ++j) acc = oracle::matmul(acc, m);
          auto c = static_cast<std::size_t>(h);
          CHECK(std::abs(jacobi_moment(desc, n, l) - acc[c][c]) < 1e-12);
        }
    }
  }

  SUBCASE("preconditions") {
    auto desc = JacobiDescriptor::constant({1.0, 0.0});
    auto half = JacobiDescriptor::explicit_list({{1.0, 0.2}}, {1.0, 0.0});
    CHECK_THROWS_AS(jacobi_moment(desc, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_moment(half, -1, 2), std::invalid_argument);
  }
}

TEST_CASE("m-function recursion") {
  SUBCASE("herglotz on both sides") {
    std::mt19937_64 gen(91);
    const cdouble zs[] = {{0.25, 0.5}, {-0.7, 1.0}, {1.2, 2.0}};
    for (int rep = 0; rep < 25; ++rep) {
      auto desc = random_periodic(gen, 1 + rep % 4);
      for (cdouble z : zs)
        for (std::int64_t n : {std::int64_t{-1}, std::int64_t{0},
                               std::int64_t{2}}) {
          CHECK(m_function(desc, n, Side::minus, z).imag() > 0.0);
          CHECK(m_function(desc, n, Side::plus, z).imag() > 0.0);
        }
    }
  }

  SUBCASE("depth stability") {
    auto desc = JacobiDescriptor::deviation({1.0, 0.1}, {{1, {1.6, -0.5}}});
    cdouble z{0.4, 1.0};
    for (Side s : {Side::minus, Side::plus})
      CHECK(std::abs(m_function(desc, 0, s, z, 200) -
                     m_function(desc, 0, s, z, 400)) < 1e-8);
  }

  SUBCASE("free tail satisfies its quadratic") {
    auto free = JacobiDescriptor::constant({1.0, 0.0});
    const cdouble zs[] = {{0.0, 0.5}, {1.3, 0.8}, {-2.2, 1.0}, {0.4, 2.0},
                          {3.1, 0.6}};
    for (cdouble z : zs)
      for (Side s : {Side::minus, Side::plus}) {
        cdouble m = m_function(free, 0, s, z, 400);
        CHECK(std::abs(m * m + z * m + 1.0) < 1e-10);
      }
  }

  SUBCASE("half-line minus tail is the finite truncated inverse") {
    auto half = JacobiDescriptor::explicit_list(
        {{0.9, 0.15}, {1.2, -0.3}, {0.8, 0.05}, {1.05, 0.4}, {1.0, -0.1},
         {0.95, 0.2}, {1.1, 0.0}, {0.85, -0.25}},
        {1.0, 0.0});
    cdouble z{0.3, 0.8};
    for (std::int64_t n : {std::int64_t{0}, std::int64_t{3}, std::int64_t{7}})
      CHECK(std::abs(m_function(half, n, Side::minus, z) -
                     truncated_resolvent(half, 0, n, n, z)) < 1e-13);
  }

  SUBCASE("period-2 tails repeat with period 2, not 1") {
    auto desc = JacobiDescriptor::periodic({{1.0, 0.5}, {2.0, 0.5}});
    cdouble z{0.3, 1.0};
    for (Side s : {Side::minus, Side::plus}) {
      CHECK(std::abs(m_function(desc, 0, s, z, 300) -
                     m_function(desc, 2, s, z, 300)) < 1e-10);
      CHECK(std::abs(m_function(desc, 0, s, z, 300) -
                     m_function(desc, 1, s, z, 300)) > 1e-3);
    }
  }

  SUBCASE("preconditions") {
    auto desc = JacobiDescriptor::constant({1.0, 0.0});
    auto half = JacobiDescriptor::explicit_list({{1.0, 0.0}}, {1.0, 0.0});
    CHECK_THROWS_AS(m_function(desc, 0, Side::plus, cdouble{0.5, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(m_function(desc, 0, Side::plus, cdouble{0.5, 1.0}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(m_function(half, -1, Side::minus, cdouble{0.5, 1.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("diagonal resolvent") {
  SUBCASE("matches a wide truncated inverse") {
    const JacobiDescriptor descs[] = {
        JacobiDescriptor::periodic({{1.0, 0.5}, {2.0, 0.5}}),
        JacobiDescriptor::deviation({1.0, 0.0}, {{0, {1.3, -0.4}}}),
        JacobiDescriptor::constant({0.8, 0.2})};
    const cdouble zs[] = {{0.3, 1.0}, {-1.1, 0.9}};
    for (const auto& desc : descs)
      for (cdouble z : zs)
        for (std::int64_t n : {std::int64_t{-1}, std::int64_t{0},
                               std::int64_t{2}})
          CHECK(std::abs(resolvent_diagonal(desc, n, z, 400) -
                         truncated_resolvent(desc, n - 400, n + 400, n, z)) <
                1e-8);
  }

  SUBCASE("free closed form") {
    auto free = JacobiDescriptor::constant({1.0, 0.0});
    const cdouble zs[] = {{0.0, 0.5}, {1.3, 0.8}, {-2.2, 1.0}};
    for (cdouble z : zs)
      for (std::int64_t n : {std::int64_t{-2}, std::int64_t{0},
                             std::int64_t{5}}) {
        cdouble g = resolvent_diagonal(free, n, z, 400);
        CHECK(std::abs((z * z - 4.0) * g * g - 1.0) < 1e-10);
        CHECK(g.imag() > 0.0);
      }
  }

  SUBCASE("herglotz for random coefficients") {
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 15; ++rep) {
      auto desc = random_periodic(gen, 1 + rep % 3);
      for (cdouble z : {cdouble{0.2, 0.5}, cdouble{-0.9, 1.0}})
        CHECK(resolvent_diagonal(desc, rep % 5 - 2, z).imag() > 0.0);
    }
  }
}

TEST_CASE("simon classification") {
  SUBCASE("alternating period-2 example") {
    auto desc = JacobiDescriptor::periodic({{1.0, 0.5}, {2.0, 0.5}});
    auto out = simon_classify(desc, -8, 8);
    CHECK(out.in_class);
    CHECK(out.a == 1.0);
    CHECK(out.c == 2.0);
    CHECK(out.b == 0.5);
    CHECK(out.A == 5.0);
    CHECK(out.B == 0.5);
    CHECK(out.spectral_tag == "periodic/reflectionless");
    CHECK(out.max_moment_drift < 1e-12);
  }

  SUBCASE("classified operator has a site-independent diagonal resolvent") {
    auto desc = JacobiDescriptor::periodic({{1.0, 0.5}, {2.0, 0.5}});
    const cdouble zs[] = {{0.3, 1.0}, {-1.2, 0.7}, {2.4, 0.5}};
    for (cdouble z : zs) {
      cdouble g0 = resolvent_diagonal(desc, 0, z, 400);
      CHECK(std::abs(g0 - resolvent_diagonal(desc, 1, z, 400)) < 1e-8);
      CHECK(std::abs(g0 - resolvent_diagonal(desc, 2, z, 400)) < 1e-8);
    }
  }

  SUBCASE("vanishing even coupling decomposes into blocks") {
    auto desc = JacobiDescriptor::periodic({{0.0, 0.3}, {1.5, 0.3}});
    auto out = simon_classify(desc, -6, 6);
    CHECK(out.in_class);
    CHECK(out.a == 0.0);
    CHECK(out.c == 1.5);
    CHECK(out.spectral_tag == "direct-sum/pure-point");
  }

  SUBCASE("non-constant diagonal rejected with witness") {
    auto desc = JacobiDescriptor::periodic({{1.0, 0.5}, {2.0, 0.6}});
    auto out = simon_classify(desc, -6, 6);
    CHECK(!out.in_class);
    CHECK(out.witness == -5);
    CHECK(out.witness_field == "b");
    CHECK(out.spectral_tag.empty());
    // The rejection is spectral, not cosmetic: the diagonal measures at
    // adjacent sites have visibly different second moments.
    CHECK(std::abs(jacobi_moment(desc, 0, 2) - jacobi_moment(desc, 1, 2)) >
          1e-6);
  }

  SUBCASE("off-pattern coupling rejected with witness") {
    auto desc = JacobiDescriptor::deviation({1.0, 0.2}, {{3, {1.3, 0.2}}});
    auto out = simon_classify(desc, -6, 6);
    CHECK(!out.in_class);
    CHECK(out.witness == 3);
    CHECK(out.witness_field == "a");
  }

  SUBCASE("preconditions") {
    auto half = JacobiDescriptor::explicit_list({{1.0, 0.0}}, {1.0, 0.0});
    auto whole = JacobiDescriptor::constant({1.0, 0.0});
    CHECK_THROWS_AS(simon_classify(half, -6, 6), std::invalid_argument);
    CHECK_THROWS_AS(simon_classify(whole, 0, 2), std::invalid_argument);
  }
}
