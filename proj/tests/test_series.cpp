#include "doctest.h"
#include "fglthh/errors.hpp"
#include "fglthh/series.hpp"

using namespace fglthh;

namespace {

std::vector<GradedPoly> gens(const RingPtr& r, const std::string& s, int n) {
  std::vector<GradedPoly> out;
  for (int i = 1; i <= n; ++i) out.push_back(GradedPoly::generator(r, s, i));
  return out;
}

// Lagrange inversion: [x^n] f^{-1} = (1/n) [x^{n-1}] (x / f(x))^n.
GradedPoly lagrange_coefficient(const Series& f, int n) {
  const int N = f.bound();
  // x / f(x) = 1 / (1 + u) with u = f/x - 1
  Series u(f.ring(), N);
  for (int k = 1; k + 1 <= N; ++k) u.set_coeff(k, f.coeff(k + 1));
  Series inv(f.ring(), N);
  Series power(f.ring(), N);
  power.set_coeff(0, GradedPoly::constant(f.ring(), 1));
  for (int k = 0; k <= N; ++k) {
    inv += (k % 2 == 0 ? 1 : -1) * GradedPoly::constant(f.ring(), 1) * power;
    power = power * u;
  }
  Series p(f.ring(), N);
  p.set_coeff(0, GradedPoly::constant(f.ring(), 1));
  for (int k = 0; k < n; ++k) p = p * inv;
  return Rational(1, n) * p.coeff(n - 1);
}

}  // namespace

TEST_CASE("composition") {
  auto r = Ring::indexed("b", {1, 2, 3, 4, 5});
  auto f = Series::strict(r, 6, gens(r, "b", 5));
  CHECK(compose(f, Series::identity(r, 6)) == f);
  CHECK(compose(Series::identity(r, 6), f) == f);

  auto g = Series::strict(r, 3, {GradedPoly::generator(r, "b", 1)});
  auto gg = compose(g, g);
  auto b1 = GradedPoly::generator(r, "b", 1);
  CHECK(gg.coeff(1) == GradedPoly::constant(r, 1));
  CHECK(gg.coeff(2) == 2 * b1);
  CHECK(gg.coeff(3) == 2 * b1 * b1);
  CHECK_THROWS_AS(compose(f, Series::identity(r, 5)), TruncationError);
}

TEST_CASE("compositional inverse") {
  auto r = Ring::indexed("b", {1, 2, 3, 4, 5, 6});
  auto f = Series::strict(r, 7, gens(r, "b", 6));
  auto g = comp_inverse(f);
  CHECK(g.coeff(3) == parse_poly(r, "2*b_1^2 - b_2"));
  CHECK(g.coeff(5) == parse_poly(r, "14*b_1^4 - 21*b_1^2*b_2 + 3*b_2^2 + 6*b_1*b_3 - b_4"));
  CHECK(compose(f, g) == Series::identity(r, 7));
  CHECK(compose(g, f) == Series::identity(r, 7));
  CHECK(comp_inverse(g) == f);
  for (int n = 2; n <= 7; ++n) CHECK(g.coeff(n) == lagrange_coefficient(f, n));
  for (int n = 2; n <= 7; ++n) CHECK(g.coeff(n).weight() == n - 1);
  CHECK(comp_inverse(Series::identity(r, 5)) == Series::identity(r, 5));
  Series bad(r, 3);
  bad.set_coeff(1, GradedPoly::constant(r, 2));
  CHECK_THROWS_AS(comp_inverse(bad), DomainError);
}

TEST_CASE("formal group law from the logarithm") {
  auto r = Ring::indexed("m", {1, 2, 3, 4, 5});
  const int N = 6;
  auto F = fgl_from_log(r, "m", N);
  CHECK(F.a(1, 1) == parse_poly(r, "-2*m_1"));
  CHECK(F.a(2, 2) == parse_poly(r, "-20*m_1^3 + 24*m_1*m_2 - 6*m_3"));
  CHECK(F.a(1, 0) == GradedPoly::constant(r, 1));
  CHECK(F.a(2, 0).is_zero());
  CHECK(F.series().swapped() == F.series());
  for (int i = 1; i <= N; ++i)
    for (int j = 1; i + j <= N; ++j) {
      CHECK(F.a(i, j).is_integral());
      CHECK(F.a(i, j).weight() == i + j - 1);
    }
  // log F(x, y) = log x + log y
  auto log = Series::strict(r, N, gens(r, "m", 5));
  CHECK(compose(log, F.series()) == Series2::in_x(log) + Series2::in_y(log));

  auto zero = Ring::indexed("m", {1});
  auto Fa = fgl_from_log(Series::identity(zero, 5));
  CHECK(Fa.series() == additive_law(zero, 5).series());
}

TEST_CASE("formal group law associativity through the bound") {
  auto r = Ring::indexed("m", {1, 2, 3, 4});
  const int N = 5;
  auto F = fgl_from_log(r, "m", N);
  // F(F(x,y),z) and F(x,F(y,z)) as polynomials in x, y, z (weights 100, 1000, 10000)
  auto big = Ring::join({r, Ring::make({{"X", 1, 100}, {"Y", 1, 1000}, {"Z", 1, 10000}})});
  RingMap up = RingMap::renaming(r, big, [&](const Generator& g) { return big->find(g.symbol, g.index); });
  auto X = GradedPoly::generator(big, "X", 1);
  auto Y = GradedPoly::generator(big, "Y", 1);
  auto Z = GradedPoly::generator(big, "Z", 1);
  auto total_degree_ok = [&](const Monomial& m) {
    int d = 0;
    for (std::size_t i = 0; i < big->size(); ++i)
      if (big->gen(i).symbol.size() == 1 && std::isupper(big->gen(i).symbol[0])) d += m.exps[i];
    return d <= N;
  };
  auto apply = [&](const GradedPoly& u, const GradedPoly& v) {
    GradedPoly out(big);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j <= N; ++j) {
        if (F.a(i, j).is_zero()) continue;
        auto t = multiply_filtered(multiply_filtered(up(F.a(i, j)), u.pow(i).filtered(total_degree_ok), total_degree_ok),
                                   v.pow(j).filtered(total_degree_ok), total_degree_ok);
        out += t;
      }
    return out;
  };
  CHECK(apply(apply(X, Y), Z) == apply(X, apply(Y, Z)));
}

TEST_CASE("formal sums") {
  auto r = Ring::join({Ring::indexed("m", {1, 2, 3}), Ring::indexed("c", {1, 2, 3})});
  const int N = 4;
  auto F = fgl_from_log(r, "m", N);
  auto c1 = GradedPoly::generator(r, "c", 1);
  Series t1 = Series::identity(r, N);
  Series t2(r, N);
  t2.set_coeff(2, c1);
  auto Fa = additive_law(r, N);
  CHECK(fgl_formal_sum(Fa, {t1, t2}) == t1 + t2);
  auto s = fgl_formal_sum(F, {t1, t2});
  CHECK(s.coeff(1) == GradedPoly::constant(r, 1));
  CHECK(s.coeff(2) == c1);
  CHECK(s.coeff(3) == F.a(1, 1) * c1);
  CHECK(fgl_formal_sum(F, {t1}) == t1);
}
