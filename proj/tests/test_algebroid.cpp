#include "doctest.h"
#include "fglthh/algebroid.hpp"
#include "fglthh/errors.hpp"

using namespace fglthh;

namespace {

const MUAlgebroid& mu6() {
  static MUAlgebroid a(6);
  return a;
}

// F(u, v) for bivariate series u, v without constant terms.
Series2 substitute(const FGLaw& F, const Series2& u, const Series2& v) {
  const int N = F.bound();
  std::vector<Series2> up{Series2(u.ring(), N)}, vp{Series2(v.ring(), N)};
  up[0].set_coeff(0, 0, GradedPoly::constant(u.ring(), 1));
  vp[0].set_coeff(0, 0, GradedPoly::constant(v.ring(), 1));
  for (int k = 1; k <= N; ++k) {
    up.push_back(up.back() * u);
    vp.push_back(vp.back() * v);
  }
  Series2 r = u + v;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; i + j <= N; ++j) r += F.a(i, j) * (up[i] * vp[j]);
  return r;
}

}  // namespace

TEST_CASE("conjugation and exp coefficients") {
  const auto& a = mu6();
  auto B = a.B();
  CHECK(a.conjugate_b(1) == parse_poly(B, "-b_1"));
  CHECK(a.conjugate_b(2) == parse_poly(B, "2*b_1^2 - b_2"));
  CHECK(a.conjugate_b(3) == parse_poly(B, "-5*b_1^3 + 5*b_1*b_2 - b_3"));
  CHECK(a.conjugate_b(4) == parse_poly(B, "14*b_1^4 - 21*b_1^2*b_2 + 3*b_2^2 + 6*b_1*b_3 - b_4"));
  CHECK(a.exp_coefficient(4) == parse_poly(a.M(), "14*m_1^4 - 21*m_1^2*m_2 + 3*m_2^2 + 6*m_1*m_3 - m_4"));
  CHECK_THROWS_AS(a.conjugate_b(7), TruncationError);
  auto chi = conjugation_chi(4);
  CHECK(chi[3].to_text() == a.conjugate_b(4).to_text());
}

TEST_CASE("right unit on the x-basis") {
  const auto& a = mu6();
  auto XB = a.XB();
  CHECK(a.eta_R_x(1) == parse_poly(XB, "x_1 + 2*b_1"));
  CHECK(a.eta_R_x(2) == parse_poly(XB, "x_2 + x_1*b_1 + 3*b_2 - 2*b_1^2"));
  CHECK(a.eta_R_x(3) == parse_poly(XB, "x_3 + 2*x_2*b_1 + x_1^2*b_1 + 4*x_1*b_2 - x_1*b_1^2 + 2*b_3 + 2*b_1*b_2 - 2*b_1^3"));
  CHECK(a.eta_R_x(4) == parse_poly(XB,
                                   "x_4 + 2*x_1*x_2*b_1 - 2*x_3*b_1 + x_2*b_2 - x_2*b_1^2 + 3*x_1*b_3 - 8*x_1*b_1*b_2"
                                   " + 5*x_1*b_1^3 + 5*b_4 - 14*b_1*b_3 - 6*b_2^2 + 25*b_1^2*b_2 - 10*b_1^4"));
  const auto lin = [&](const Monomial& m) {
    unsigned d = 0;
    for (std::size_t i = 0; i < XB->size(); ++i)
      if (XB->gen(i).symbol == "b") d += m.exps[i];
    return d <= 1;
  };
  for (int n = 1; n <= 6; ++n) {
    const auto full = a.eta_R_x(n);
    CHECK(full.is_integral());
    CHECK(a.eta_R_x(n, true) == full.filtered(lin));
    CHECK(augmentation(full, a.X()) == GradedPoly::generator(a.X(), n - 1));
  }
}

TEST_CASE("right unit classifies the conjugated law") {
  // F'(x, y) = f(F(fbar x, fbar y)); its generators x_n must equal eta_R(x_n)
  const int N = 5;
  MUAlgebroid a(N);
  auto MB = a.MB();
  const FGLaw F = lazard_law_in_m(N + 1).mapped(RingMap::inclusion(lazard_law_in_m(N + 1).ring(), MB));
  std::vector<GradedPoly> bs;
  for (int n = 1; n <= N; ++n) bs.push_back(GradedPoly::generator(MB, "b", n));
  const Series f = Series::strict(MB, N + 1, bs);
  const Series fbar = comp_inverse(f);
  const Series2 inner = substitute(F, Series2::in_x(fbar), Series2::in_y(fbar));
  const FGLaw Fp(compose(f, inner));
  for (int n = 1; n <= N; ++n) {
    const GradedPoly xn = evaluate_aexpr(a.basis().x_in_a[n - 1], Fp);
    CHECK(a.to_x(xn) == a.eta_R_x(n));
  }
}

TEST_CASE("coproduct") {
  const auto& a = mu6();
  auto BB = a.BB();
  CHECK(a.coproduct(1) == parse_poly(BB, "bL_1 + bR_1"));
  CHECK(a.coproduct(2) == parse_poly(BB, "bL_2 + 2*bL_1*bR_1 + bR_2"));
  CHECK(a.coproduct(3) == parse_poly(BB, "bL_3 + bL_1^2*bR_1 + 2*bL_2*bR_1 + 3*bL_1*bR_2 + bR_3"));
  CHECK(a.coproduct(4) == parse_poly(BB, "bL_4 + 2*bL_1*bL_2*bR_1 + 2*bL_3*bR_1 + 3*bL_1^2*bR_2 + 3*bL_2*bR_2"
                                         " + 4*bL_1*bR_3 + bR_4"));
  CHECK(tensor_text(a.coproduct_tensor(2)) == "b_2 (x) 1 + 2*b_1 (x) b_1 + 1 (x) b_2");
  CHECK(tensor_text(a.coproduct_tensor(3)) == "b_3 (x) 1 + (b_1^2 + 2*b_2) (x) b_1 + 3*b_1 (x) b_2 + 1 (x) b_3");
  CHECK(tensor_tex(a.coproduct_tensor(1)) == "b_1 \\otimes 1 + 1 \\otimes b_1");
}

TEST_CASE("Hopf algebra axioms on B") {
  const int N = 5;
  MUAlgebroid a(N);
  auto BB = a.BB();
  auto B3 = Ring::join({weight_ring("bA", N), weight_ring("bB", N), weight_ring("bC", N)});
  std::vector<GradedPoly> psi;
  for (int n = 1; n <= N; ++n) psi.push_back(a.coproduct(n));
  auto pair_map = [&](const std::string& l, const std::string& r) {
    std::vector<GradedPoly> im;
    for (const auto& g : BB->generators())
      im.push_back(GradedPoly::generator(B3, g.symbol == "bL" ? l : r, g.index));
    return RingMap(BB, B3, im);
  };
  const RingMap AB = pair_map("bA", "bB"), BC = pair_map("bB", "bC");
  std::vector<GradedPoly> left_im, right_im;
  for (const auto& g : BB->generators()) {
    if (g.symbol == "bL") {
      left_im.push_back(AB(psi[g.index - 1]));
      right_im.push_back(GradedPoly::generator(B3, "bA", g.index));
    } else {
      left_im.push_back(GradedPoly::generator(B3, "bC", g.index));
      right_im.push_back(BC(psi[g.index - 1]));
    }
  }
  const RingMap psi1(BB, B3, left_im), psi2(BB, B3, right_im);
  auto B = a.B();
  std::vector<GradedPoly> chi_l, chi_r, counit_l, counit_r;
  for (const auto& g : BB->generators()) {
    const bool L = g.symbol == "bL";
    chi_l.push_back(L ? a.conjugate_b(g.index) : GradedPoly::generator(B, "b", g.index));
    chi_r.push_back(L ? GradedPoly::generator(B, "b", g.index) : a.conjugate_b(g.index));
    counit_l.push_back(L ? GradedPoly(B) : GradedPoly::generator(B, "b", g.index));
    counit_r.push_back(L ? GradedPoly::generator(B, "b", g.index) : GradedPoly(B));
  }
  for (int n = 1; n <= N; ++n) {
    CAPTURE(n);
    CHECK(psi1(psi[n - 1]) == psi2(psi[n - 1]));
    CHECK(RingMap(BB, B, chi_l)(psi[n - 1]).is_zero());
    CHECK(RingMap(BB, B, chi_r)(psi[n - 1]).is_zero());
    CHECK(RingMap(BB, B, counit_l)(psi[n - 1]) == GradedPoly::generator(B, "b", n));
    CHECK(RingMap(BB, B, counit_r)(psi[n - 1]) == GradedPoly::generator(B, "b", n));
  }
}

TEST_CASE("moving coordinates") {
  const auto& a = mu6();
  auto XB = a.XB();
  auto P = [&](const char* s) { return parse_poly(XB, s); };
  CHECK(a.moving_coordinate(1) == P("-b_1"));
  CHECK(a.moving_coordinate(2) == P("x_1*b_1 + 2*b_1^2 - b_2"));
  CHECK(a.moving_coordinate(3) == P("x_2*b_1 - x_1^2*b_1 + x_1*b_2 - 2*x_1*b_1^2 - 5*b_1^3 + 5*b_1*b_2 - b_3"));
  const GradedPoly c4 = P("14*b_1^4") + P("x_1^2 - x_2") * P("b_1^2") - P("21*b_1^2*b_2") +
                        P("x_1^2 + x_1*b_1 - x_2") * P("2*b_1^2 - b_2") + P("x_1") * P("5*b_1^3 - 5*b_1*b_2 + b_3") +
                        P("x_1^3 - 4*x_1*x_2 + 2*x_3") * P("b_1") + P("3*b_2^2 + 6*b_1*b_3 - b_4");
  CHECK(a.moving_coordinate(4) == c4);
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(a.moving_coordinate(n).is_integral());
    CHECK(a.moving_to_absolute(a.eta_R_m_moving(n)) == a.eta_R_m(n));
  }
  CHECK(a.eta_R_m_moving(5) == parse_poly(a.MC(), "m_5 + m_2*c_1^3 + m_1*c_2^2 + c_5"));
}

TEST_CASE("p-typical right unit") {
  TypicalAlgebroid t2(2, 3);
  auto VT = t2.VT();
  CHECK(t2.eta_R_v(1) == parse_poly(VT, "v_1 + 2*t_1"));
  CHECK(t2.eta_R_v(2) == parse_poly(VT, "v_2 + 2*t_2 - 5*v_1*t_1^2 - 3*v_1^2*t_1 - 4*t_1^3"));
  CHECK(t2.eta_R_v(3).is_p_integral(2));
  CHECK(t2.eta_R_ell(2) == parse_poly(t2.ET(), "ell_2 + ell_1*t_1^2 + t_2"));

  TypicalAlgebroid t3(3, 2);
  CHECK(t3.eta_R_v(1) == parse_poly(t3.VT(), "v_1 + 3*t_1"));
  CHECK(t3.eta_R_v(2).is_p_integral(3));

  // projection of the moving-coordinate formula gives the p-typical one
  const auto& a = mu6();
  CHECK(typical_projection(a.eta_R_m_moving(1), a, t2) == t2.eta_R_ell(1));
  CHECK(typical_projection(a.eta_R_m_moving(3), a, t2) == t2.eta_R_ell(2));
  CHECK(typical_projection(a.eta_R_m_moving(2), a, t3) == t3.eta_R_ell(1));
  CHECK(typical_projection(a.eta_R_m_moving(5), a, t2).is_zero());
}
