#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "fglthh/errors.hpp"
#include "fglthh/linalg.hpp"
#include "oracles.hpp"

using namespace fglthh;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

IntMatrix permuted(const IntMatrix& m, const std::vector<std::size_t>& rp, const std::vector<std::size_t>& cp) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(rp[i], cp[j]) = m.at(i, j);
  return r;
}

void check_smith(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(s.U * s.Uinv == IntMatrix::identity(m.rows()));
  CHECK(s.V * s.Vinv == IntMatrix::identity(m.cols()));
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D.at(i, j) == 0);
  for (std::size_t i = 1; i < s.diagonal.size(); ++i)
    CHECK(mpz_divisible_p(s.diagonal[i].get_mpz_t(), s.diagonal[i - 1].get_mpz_t()));
  CHECK(s.diagonal == oracle::invariant_factors_by_minors(m));
}

}  // namespace

TEST_CASE("rational solving") {
  RatMatrix I{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<Rational> v{Rational(1, 2), 3, -7};
  CHECK(solve_rational_linear(I, v) == v);

  // 4 m1^2 - 3 m2 in the basis {m1^2, m2}
  RatMatrix B{{1, 0}, {0, 1}};
  CHECK(solve_rational_linear(B, {4, -3}) == std::vector<Rational>{4, -3});

  RatMatrix sing{{1, 2}, {2, 4}};
  CHECK_THROWS_AS(solve_rational_linear(sing, {1, 3}), NoSolutionError);
  try {
    solve_rational_linear(sing, {1, 2});
    FAIL("expected an underdetermined system");
  } catch (const UnderdeterminedError& e) {
    CHECK(e.kernel_dimension == 1);
  }
  CHECK(rational_rank(sing) == 1);
}

TEST_CASE("rational solving agrees with Cramer's rule") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    IntMatrix m = oracle::random_matrix(3, 3, -6, 6, rng);
    std::vector<std::vector<Integer>> a(3, std::vector<Integer>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = m.at(i, j);
    Integer d = oracle::det(a);
    if (d == 0) continue;
    std::vector<Rational> rhs{Rational(trial), Rational(-2), Rational(1, 3)};
    RatMatrix A(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A[i][j] = Rational(m.at(i, j));
    auto x = solve_rational_linear(A, rhs);
    for (int j = 0; j < 3; ++j) {
      // replace column j by the right-hand side, scaled to stay integral
      std::vector<std::vector<Integer>> aj = a;
      for (int i = 0; i < 3; ++i) aj[i][j] = Integer(rhs[i] * 3);
      CHECK(x[j] == Rational(oracle::det(aj)) / Rational(d * 3));
    }
  }
}

TEST_CASE("Smith normal form examples") {
  auto a = smith_normal_form(IntMatrix::from_rows({{-4, -4}, {0, -3}}));
  CHECK(a.diagonal == ints({1, 12}));
  CHECK(smith_normal_form(IntMatrix::from_rows({{2}})).diagonal == ints({2}));
  auto m = IntMatrix::from_rows({{-6, -4, -5}, {0, -2, -4}, {0, -3, -6}, {0, 0, -2}});
  check_smith(m);
  CHECK(smith_normal_form(m).diagonal == oracle::invariant_factors_by_minors(m));
  CHECK(smith_normal_form(IntMatrix(3, 2)).rank == 0);
}

TEST_CASE("Smith normal form matches the gcd-of-minors oracle on random matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m = oracle::random_matrix(dim(rng), dim(rng), -9, 9, rng);
    // thin out entries so low ranks and nontrivial torsion both occur
    std::uniform_int_distribution<int> coin(0, 2);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (coin(rng) == 0) m.at(i, j) = 0;
    check_smith(m);
  }
}

TEST_CASE("finite abelian group bookkeeping") {
  auto g = group_from_orders(ints({4, 3, 16, 6, 5, 1}));
  CHECK(g.invariant_factors == ints({2, 12, 240}));
  CHECK(g.primary() == ints({2, 4, 16, 3, 3, 5}));
  CHECK(group_from_orders(ints({16, 6, 5})).invariant_factors == ints({2, 240}));
  CHECK(localize(group_from_orders(ints({16, 6, 5})), 2).invariant_factors == ints({2, 16}));
  CHECK(localize(group_from_orders(ints({12})), 3).invariant_factors == ints({3}));
  CHECK(group_from_orders(ints({0, 1})).free_rank == 1);
  CHECK(group_from_orders({}).is_zero());
  CHECK(g.to_text() == "Z/2 + Z/12 + Z/240");
}

TEST_CASE("subquotient examples") {
  Subquotient s(IntMatrix::from_rows({{-2}}), IntMatrix(0, 1));
  CHECK(s.group().invariant_factors == ints({2}));
  REQUIRE(s.generators().size() == 1);
  CHECK(s.generators()[0].lift == ints({1}));

  CHECK(subquotient_group(IntMatrix(2, 0), IntMatrix::from_rows({{1, 0}, {0, 3}})).is_zero());
  CHECK_THROWS_AS(Subquotient(IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{1}})), ContractError);

  // degree 8 -> 9 -> 10 of the moving-coordinate complex
  auto d_in = IntMatrix::from_rows({{-8, -4, -5, 0, 0},
                                    {0, -4, -4, -8, 4},
                                    {0, 0, -2, 0, -8},
                                    {0, -3, -6, 0, -3},
                                    {0, 0, 0, -6, -6},
                                    {0, 0, -2, 0, -8},
                                    {0, 0, 0, 0, -5}});
  auto d_out = IntMatrix::from_rows({{0, -3, -6, 4, 4, 0, 0}, {0, 0, -2, 0, 0, 2, 0}});
  Subquotient q(d_in, d_out);
  CHECK(q.group().invariant_factors == ints({2, 240}));
  CHECK(q.group().primary() == ints({2, 16, 3, 5}));
  for (const auto& g : q.generators()) {
    CHECK(q.is_cocycle(g.lift));
    CHECK(q.order_of(g.lift) == g.order);
  }
}

TEST_CASE("subquotient is invariant under relabeling") {
  auto d_in = IntMatrix::from_rows({{-6, -4, -5}, {0, -2, -4}, {0, -3, -6}, {0, 0, -2}});
  auto d_out = IntMatrix::from_rows({{0, -3, 2, 0}});
  auto base = subquotient_group(d_in, d_out);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> p0(3), p1(4), p2(1, 0);
    std::iota(p0.begin(), p0.end(), 0);
    std::iota(p1.begin(), p1.end(), 0);
    std::shuffle(p0.begin(), p0.end(), rng);
    std::shuffle(p1.begin(), p1.end(), rng);
    CHECK(subquotient_group(permuted(d_in, p1, p0), permuted(d_out, p2, p1)) == base);
  }
}

TEST_CASE("subquotient coordinates detect multiples") {
  Subquotient s(IntMatrix::from_rows({{4, 0}, {0, 3}}), IntMatrix(0, 2));
  CHECK(s.group().invariant_factors == ints({12}));
  CHECK(s.order_of(ints({1, 0})) == 4);
  CHECK(s.order_of(ints({0, 1})) == 3);
  CHECK(s.order_of(ints({1, 1})) == 12);
  CHECK(s.order_of(ints({4, 3})) == 1);
}
