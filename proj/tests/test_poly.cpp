#include <random>

#include "doctest.h"
#include "fglthh/errors.hpp"
#include "fglthh/poly.hpp"

using namespace fglthh;

namespace {

RingPtr b_ring() { return Ring::indexed("b", {1, 2, 3, 4}); }

GradedPoly random_homogeneous(const RingPtr& r, std::int64_t w, std::mt19937& rng) {
  GradedPoly p(r);
  std::uniform_int_distribution<int> c(-5, 5);
  for (const auto& m : monomials_of_weight(*r, w)) p.add_term(m, c(rng));
  return p;
}

}  // namespace

TEST_CASE("monomial products and cancellation") {
  auto r = b_ring();
  auto b1 = GradedPoly::generator(r, "b", 1);
  auto b2 = GradedPoly::generator(r, "b", 2);
  CHECK((2 * b1) * (2 * b1) == parse_poly(r, "4*b_1^2"));
  CHECK(parse_poly(r, "2*b_1") + parse_poly(r, "-2*b_1") == GradedPoly(r));
  // (2b1^2 - b2)(-b1) expanded by hand
  CHECK((2 * b1 * b1 - b2) * (-b1) == -2 * b1.pow(3) + b1 * b2);
  CHECK(((2 * b1 * b1 - b2) * (-b1)).weight() == 3);
}

TEST_CASE("checked arithmetic rejects mixed weights and tables") {
  auto r = b_ring();
  auto other = Ring::indexed("x", {1, 2});
  auto b1 = GradedPoly::generator(r, "b", 1);
  auto b2 = GradedPoly::generator(r, "b", 2);
  CHECK_THROWS_AS(poly_arith(b1, b2, PolyOp::Add), WeightError);
  CHECK(poly_arith(b1, b2, PolyOp::Mul).weight() == 3);
  CHECK_THROWS_AS(b1 + GradedPoly::generator(other, "x", 1), MismatchError);
  CHECK_THROWS_AS((b1 + b2).weight(), WeightError);
}

TEST_CASE("canonical monomial order") {
  auto r = Ring::indexed("x", {1, 2, 3, 4});
  auto ms = monomials_of_weight(*r, 4);
  std::vector<std::string> names;
  for (const auto& m : ms) names.push_back(monomial_text(*r, m));
  CHECK(names == std::vector<std::string>{"x_1^4", "x_1^2*x_2", "x_1*x_3", "x_2^2", "x_4"});
  CHECK(monomials_of_weight(*r, 0).size() == 1);
  CHECK(monomials_of_weight(*r, 6).size() == 9);
}

TEST_CASE("text and tex formatting round trip") {
  auto r = Ring::indexed("x", {1, 2, 3});
  auto p = parse_poly(r, "-4*x_2 - 5*x_1^2 + 1/2*x_1*x_1");
  CHECK(p.to_text() == "-9/2*x_1^2 - 4*x_2");
  CHECK(parse_poly(r, p.to_text()) == p);
  CHECK(p.to_tex() == "-\\frac{9}{2}x_1^2 - 4x_2");
  CHECK(GradedPoly(r).to_text() == "0");
  CHECK(parse_poly(r, "3").to_text() == "3");
  CHECK_THROWS_AS(parse_poly(r, "y_1"), DomainError);
}

TEST_CASE("ring axioms on random homogeneous triples") {
  auto r = b_ring();
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> wd(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_homogeneous(r, wd(rng), rng);
    auto b = random_homogeneous(r, wd(rng), rng);
    auto c = random_homogeneous(r, wd(rng), rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == GradedPoly(r));
  }
}

TEST_CASE("ring maps substitute and filter") {
  auto b = Ring::indexed("b", {1, 2});
  auto x = Ring::indexed("x", {1, 2});
  // b1 -> x1 + x1, b2 -> x1^2 - x2
  RingMap phi(b, x, {parse_poly(x, "2*x_1"), parse_poly(x, "x_1^2 - x_2")});
  auto p = parse_poly(b, "b_1^2 + 3*b_2");
  CHECK(phi(p) == parse_poly(x, "7*x_1^2 - 3*x_2"));
  auto lin = phi.apply_filtered(p, [](const Monomial& m) { return m.total_degree() <= 1; });
  CHECK(lin == parse_poly(x, "-3*x_2"));
  auto ren = RingMap::renaming(b, x, [&](const Generator& g) { return x->find("x", g.index); });
  CHECK(ren(p) == parse_poly(x, "x_1^2 + 3*x_2"));
}

TEST_CASE("derivatives and integrality") {
  auto r = Ring::indexed("m", {1, 2});
  auto p = parse_poly(r, "1/2*m_1^2*m_2 + 3*m_2");
  CHECK(p.derivative(0) == parse_poly(r, "m_1*m_2"));
  CHECK(p.derivative(1) == parse_poly(r, "1/2*m_1^2 + 3"));
  CHECK_FALSE(p.is_integral());
  CHECK(p.is_p_integral(3));
  CHECK_FALSE(p.is_p_integral(2));
  CHECK(p.denominator_lcm() == 2);
}
