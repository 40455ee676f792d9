#include "doctest.h"

#include <cmath>

#include "distort/certificate.hpp"
#include "distort/embed.hpp"
#include "distort/solver.hpp"
#include "oracles/oracles.hpp"

using namespace distort;

TEST_CASE("separation base and constant") {
  CHECK(separation_base(1) == 2);
  CHECK(separation_base(Rational(6, 5)) == 2);
  CHECK(separation_base(Rational(4, 3)) == 3);
  CHECK(separation_base(Rational(3, 2)) == 4);
  CHECK(separation_base(Rational(7, 4)) == 8);
  CHECK_THROWS(separation_base(2));
  CHECK_THROWS(separation_base(Rational(1, 2)));
  CHECK(constant_cd(1) == doctest::Approx(1 / std::log(2.0)));
  CHECK(constant_cd(Rational(3, 2)) == doctest::Approx(1 / std::log(4.0)));
}

TEST_CASE("analytic coordinate counts") {
  CHECK(analytic_min_coords(1, 8) == 3);
  CHECK(analytic_min_coords(Rational(3, 2), 5) == 2);
  CHECK(analytic_min_coords(1, 2) == 1);
  CHECK(analytic_min_coords(1, 9) == 4);
  CHECK(analytic_min_coords(Rational(3, 2), 16) == 2);
  CHECK(analytic_min_coords(Rational(3, 2), 17) == 3);
  CHECK(analytic_min_coords(1, 1) == 0);
  // agrees with the capacity: least n with k^n >= m
  for (auto D : {Rational(1), Rational(6, 5), Rational(4, 3), Rational(3, 2), Rational(7, 4)})
    for (std::uint64_t m = 2; m <= 70; ++m) {
      unsigned n = analytic_min_coords(D, m);
      CHECK(max_separated(D, n) >= m);
      if (n > 1) CHECK(max_separated(D, n - 1) < m);
    }
}

TEST_CASE("separated capacity against packing") {
  CHECK(max_separated(1, 1) == 2);
  CHECK(max_separated(Rational(3, 2), 2) == 16);
  CHECK(max_separated(Rational(6, 5), 1) == 2);
  for (auto D : {Rational(1), Rational(6, 5), Rational(4, 3), Rational(3, 2)})
    for (unsigned n = 1; n <= 2; ++n) {
      auto p = oracle::packing(D, n);
      CHECK(p.box_bound == p.grid_best);
      CHECK(max_separated(D, n) == p.grid_best);
    }
  CHECK_THROWS(max_separated(1, 0));
}

TEST_CASE("byproduct parameters") {
  auto a = byproduct_params(1, 1);
  CHECK(a.k == 3);
  CHECK(a.n_exponent == 5);
  REQUIRE(a.n);
  CHECK(*a.n == 32);
  auto b = byproduct_params(Rational(3, 2), 2);
  CHECK(b.k == 17);
  REQUIRE(b.n);
  CHECK(*b.n == mpz_class(1) << 19);
  auto c = byproduct_params(1, 6);
  CHECK(c.k == 65);
  CHECK(c.n_exponent == 67);
  CHECK_FALSE(c.n);
  mpz_class prev = 0;
  for (std::uint64_t m = 1; m <= 8; ++m) {
    auto p = byproduct_params(Rational(6, 5), m);
    CHECK(p.k >= prev);
    // ln k / ln base > m holds at k and fails at k-1
    CHECK(std::log(p.k.get_d()) / std::log(2.0) > double(m));
    CHECK_FALSE(std::log(p.k.get_d() - 1) / std::log(2.0) > double(m));
    prev = p.k;
  }
}

TEST_CASE("certificates") {
  auto c = make_certificate(Rational(3, 2), 5, 3);
  CHECK(c.base == 4);
  CHECK(c.n_min == 2);
  REQUIRE(c.capacities.size() == 3);
  CHECK(c.capacities[1].second == 16);
}

TEST_CASE("witness counting on isometric embeddings") {
  for (std::vector<std::uint64_t> sizes : {std::vector<std::uint64_t>{2}, {3}, {4}, {2, 2}, {2, 3}, {3, 2}}) {
    auto e = embed_finite(GraphSpec{sizes}).embedding;
    auto r = verify_witness_counting(e, 1, GraphSpec{sizes});
    CHECK(r.ok);
    CHECK(r.failure.empty());
    CHECK(r.threshold == Rational(2));
    CHECK(r.min_gamma >= r.required_gamma);
    std::uint64_t expect_choices = 1;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) expect_choices *= sizes[i] * (sizes[i] - 1);
    CHECK(r.choices == expect_choices);
    auto r2 = verify_witness_counting(to_step_embedding(e), Rational(3, 2), GraphSpec{sizes});
    CHECK(r2.ok);
  }
}

TEST_CASE("witness counting rejects broken embeddings") {
  auto e = embed_finite(GraphSpec{{3}}).embedding;
  auto z = e;
  z.rows[z.domain.at("{1,a1_1}")][0] = 50;
  auto r = verify_witness_counting(z, 1, GraphSpec{{3}});
  CHECK_FALSE(r.ok);
  CHECK(r.failure.find("distortion") != std::string::npos);

  auto s = e;
  for (auto& v : s.rows[s.domain.at("bot")]) v = 1;
  r = verify_witness_counting(s, 1, GraphSpec{{3}});
  CHECK_FALSE(r.ok);
  CHECK(r.failure.find("normalization") != std::string::npos);

  auto half = e;
  for (auto& row : half.rows)
    for (auto& v : row) v = v / Rational(2);
  CHECK_FALSE(verify_witness_counting(half, Rational(3, 2), GraphSpec{{3}}).ok);
}

TEST_CASE("solver witnesses pass the counting check") {
  std::size_t below_two = 0;
  for (std::uint64_t m = 2; m <= 4; ++m) {
    auto sp = build_graph({{m}});
    for (unsigned n = 1; n <= 2; ++n) {
      auto res = min_distortion(sp, n);
      REQUIRE(res.status == SolveStatus::exact);
      if (!(res.upper < Rational(2))) continue;
      ++below_two;
      auto r = verify_witness_counting(res.witness, res.upper, GraphSpec{{m}});
      CHECK(r.ok);
      CHECK(analytic_min_coords(res.upper, m) <= n);
    }
  }
  CHECK(below_two >= 1);
}
