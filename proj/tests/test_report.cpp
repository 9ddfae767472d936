#include "doctest.h"
#include "fglthh/errors.hpp"
#include "fglthh/report.hpp"

using namespace fglthh;

namespace {

RunConfig config(const std::string& command, Flavor f = Flavor::MUMoving) {
  RunConfig c;
  c.command = command;
  c.flavor = f;
  c.truncation = 6;
  return c;
}

}  // namespace

TEST_CASE("scalar JSON") {
  CHECK(integer_to_json(Integer(-7)) == Json(-7));
  const Integer big("123456789012345678901234567890");
  CHECK(integer_to_json(big) == Json("123456789012345678901234567890"));
  CHECK(integer_from_json(integer_to_json(big)) == big);
  CHECK(rational_to_json(Rational(3, 4)) == Json::array({3, 4}));
  CHECK(rational_from_json(Json::array({6, -8})) == Rational(-3, 4));
  CHECK(rational_to_json(Rational(5)) == Json(5));
  CHECK_THROWS_AS(integer_from_json(Json(1.5)), DomainError);
}

TEST_CASE("group JSON") {
  const auto g = group_from_orders({Integer(12)});
  const Json j = group_to_json(g);
  CHECK(j["free_rank"] == 0);
  CHECK(j["invariant_factors"] == Json::array({12}));
  CHECK(j["primary"] == Json::array({4, 3}));
  CHECK(group_from_json(j) == g);
  FinAbGroup h = group_from_orders({Integer(2), Integer(240)});
  h.free_rank = 2;
  CHECK(group_from_json(Json::parse(group_to_json(h).dump())) == h);
}

TEST_CASE("polynomial and exterior JSON round trip") {
  const RingPtr X = weight_ring("x", 4);
  const GradedPoly p = parse_poly(X, "-5*x_1^2 + 4*x_2 + 1/3*x_1*x_3");
  const Json j = poly_to_json(p);
  CHECK(j["terms"][0]["mono"] == Json{{"x_1", 2}});
  CHECK(poly_from_json(X, Json::parse(j.dump())) == p);
  CHECK(poly_from_json(X, poly_to_json(GradedPoly(X))).is_zero());

  for (Flavor f : {Flavor::MUMoving, Flavor::MUSplit}) {
    const ExtKind k{f, 0};
    ExtElement x = ExtElement::term(p, k, {1, 3}) + ExtElement::term(parse_poly(X, "7"), k, {2});
    CHECK(ext_from_json(X, k, Json::parse(ext_to_json(x).dump())) == x);
  }
  const ExtKind bp{Flavor::BP, 3};
  const RingPtr V = typical_ring("v", 3, 2);
  const ExtElement y = ExtElement::term(parse_poly(V, "v_1"), bp, {2});
  CHECK(ext_to_json(y)["terms"][0]["ext"] == Json::array({"lambda_2"}));
  CHECK(ext_from_json(V, bp, ext_to_json(y)) == y);
  const ExtKind dr{Flavor::DeRham, 0, X};
  const ExtElement w = ExtElement::term(parse_poly(X, "x_2"), dr, {1, 4});
  CHECK(ext_to_json(w)["terms"][0]["ext"] == Json::array({"dx_1", "dx_4"}));
  CHECK(ext_from_json(X, dr, ext_to_json(w)) == w);
  CHECK_THROWS_AS(ext_from_json(X, ExtKind{Flavor::MUSplit, 0}, ext_to_json(ExtElement::generator(X, ExtKind{Flavor::MUMoving, 0}, 1))),
                  DomainError);
}

TEST_CASE("formula rendering") {
  const MUAlgebroid mu(4);
  const auto t = sigma_table_mu(mu, Flavor::MUMoving);
  const Json f = formula("sigma(x_1)", "\\sigma(x_1)", t.on_base(1));
  CHECK(formula_tex(f) == "\\sigma(x_1) = -2\\lambda'_1");
  CHECK(formula_text(f) == "sigma(x_1) = -2*lambda'_1");
}

TEST_CASE("empty table is a valid document") {
  CohomologyTable empty;
  const Json j = cohomology_to_json(empty);
  CHECK(j["degrees"].empty());
  CHECK(Json::parse(j.dump()) == j);
  Json doc = {{"schema", kSchema}, {"command", "cohomology"}, {"config", Json::object()}, {"cohomology", j}};
  CHECK_NOTHROW(render(doc, Format::Text));
  CHECK_NOTHROW(render(doc, Format::Tex));
  CHECK(Json::parse(render(doc, Format::Json)) == doc);
}

TEST_CASE("cohomology report") {
  RunConfig c = config("cohomology");
  const Json doc = cohomology_report(c);
  CHECK(doc["schema"] == "fgl-thh/1");
  const auto& d9 = doc["cohomology"]["degrees"][9];
  CHECK(d9["degree"] == 9);
  CHECK(d9["group"]["invariant_factors"] == Json::array({2, 240}));
  CHECK(d9["group"]["generators"].size() == 2);
  const auto& d10 = doc["cohomology"]["degrees"][10];
  REQUIRE(d10["pieces"].size() == 1);
  CHECK(d10["pieces"][0]["q"] == 2);
  CHECK(d10["pieces"][0]["weight"] == 4);
  CHECK(Json::parse(doc.dump()) == doc);
  // the weight-4 matrices are part of the output
  bool found = false;
  for (const auto& m : doc["differentials"])
    if (m["weight"] == 4 && m["q"] == 0) found = m["matrix"].size() == 7 && m["matrix"][0].size() == 5;
  CHECK(found);
  // generators parse back to cocycles of the stated order
  const MUAlgebroid mu(6);
  const auto t = sigma_table_mu(mu, Flavor::MUMoving);
  for (const auto& g : d9["group"]["generators"]) {
    const ExtElement z = ext_from_json(t.base(), t.kind(), g["cocycle"]);
    CHECK(t.apply(z).is_zero());
    const auto r = verify_generators(sigma_differential(t), 9, g["q"].get<int>(), {z}, {integer_from_json(g["order"])});
    CHECK(r.cocycles);
    CHECK(r.orders_match);
  }
}

TEST_CASE("reports are deterministic") {
  for (const char* cmd : {"structure-maps", "sigma", "cohomology"}) {
    CAPTURE(cmd);
    for (Flavor f : {Flavor::MUMoving, Flavor::MUSplit, Flavor::BP}) {
      RunConfig c = config(cmd, f);
      c.prime = 3;
      c.max_n = 3;
      if (std::string(cmd) == "cohomology") c.max_n.reset();
      const Json a = build_report(c), b = build_report(c);
      for (Format fmt : {Format::Json, Format::Tex, Format::Text}) CHECK(render(a, fmt) == render(b, fmt));
      CHECK(Json::parse(render(a, Format::Json)) == a);
    }
  }
}

TEST_CASE("sigma report text and TeX") {
  RunConfig c = config("sigma", Flavor::BP);
  c.prime = 2;
  c.max_n = 3;
  const std::string text = render(sigma_report(c), Format::Text);
  CHECK(text.find("sigma(v_1) = 2*lambda_1\n") != std::string::npos);
  RunConfig m = config("sigma");
  const std::string tex = render(sigma_report(m), Format::Tex);
  CHECK(tex.find("\\begin{align*}") != std::string::npos);
  CHECK(tex.find("\\sigma(x_1) &= -2\\lambda'_1") != std::string::npos);
  RunConfig s = config("sigma", Flavor::MUSplit);
  const std::string st = render(sigma_report(s), Format::Text);
  CHECK(st.find("sigma(e_3) = e_1*e_2") != std::string::npos);
  CHECK(st.find("sigma(e_4) = 2*e_1*e_3") != std::string::npos);
}

TEST_CASE("structure-map report") {
  const Json doc = structure_maps_report(config("structure-maps"));
  const std::string text = render(doc, Format::Text);
  CHECK(text.find("eta_R(x_1) = 2*b_1 + x_1") != std::string::npos);
  CHECK(text.find("c_1 = -b_1") != std::string::npos);
  CHECK(text.find("x_1 = -2*m_1") != std::string::npos);
  RunConfig bp = config("structure-maps", Flavor::BP);
  bp.prime = 3;
  const std::string bt = render(structure_maps_report(bp), Format::Text);
  CHECK(bt.find("l_1 = 1/3*v_1") != std::string::npos);
}

TEST_CASE("verify, bar-tor and de Rham reports") {
  RunConfig v = config("verify", Flavor::MUSplit);
  v.max_degree = 10;
  const Json vd = verify_report(v);
  CHECK(vd["ok"] == true);
  RunConfig bp = config("verify", Flavor::BP);
  bp.prime = 3;
  CHECK(verify_report(bp)["ok"] == true);
  RunConfig b = config("bar-tor");
  b.coalgebra = Coalgebra::T;
  b.max_weight = 6;
  CHECK(bar_tor_report(b)["ok"] == true);
  RunConfig d = config("de-rham");
  d.max_degree = 12;
  const Json dd = de_rham_report(d);
  CHECK(dd["ok"] == true);
  CHECK(dd["cohomology"]["degrees"][5]["group"]["invariant_factors"] == Json::array({2}));
  CHECK(dd["cohomology"]["degrees"][11]["group"]["invariant_factors"] == Json::array({5}));
}

TEST_CASE("configuration validation") {
  RunConfig c = config("cohomology", Flavor::BP);
  c.prime = 7;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.unsafe_large_prime = true;
  CHECK_NOTHROW(c.validate());
  c.prime = 9;
  CHECK_THROWS_AS(c.validate(), DomainError);
  RunConfig m = config("cohomology");
  m.max_degree = 14;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m.truncation = 7;
  CHECK_NOTHROW(m.validate());
  RunConfig b = config("cohomology", Flavor::BP);
  b.prime = 2;
  b.max_degree = 11;
  CHECK_THROWS_AS(b.validate(), DomainError);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
  CHECK_THROWS_AS(build_report(config("frobnicate")), DomainError);
}
