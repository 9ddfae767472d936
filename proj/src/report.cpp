#include "fglthh/report.hpp"

#include <sstream>

#include "fglthh/errors.hpp"

namespace fglthh {

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "tex") return Format::Tex;
  if (s == "text") return Format::Text;
  throw DomainError("unknown format '" + s + "' (expected json, tex or text)");
}

namespace {

bool is_mu(Flavor f) { return f == Flavor::MUMoving || f == Flavor::MUSplit; }

std::string coalgebra_name(Coalgebra c) {
  switch (c) {
    case Coalgebra::C: return "C";
    case Coalgebra::B: return "B";
    case Coalgebra::T: return "T";
  }
  return "?";
}

std::string format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Tex: return "tex";
    case Format::Text: return "text";
  }
  return "?";
}

std::int64_t bp_top(long p) { return 2 * p * p + 4 * p - 6; }

}  // namespace

// ---------------------------------------------------------------- RunConfig

void RunConfig::validate() const {
  if (truncation < 1) throw DomainError("--truncation must be at least 1");
  if (max_n && *max_n < 1) throw DomainError("--max-n must be at least 1");
  if (max_degree && *max_degree < 0) throw DomainError("--max-degree must be non-negative");
  if (flavor == Flavor::DeRham) throw DomainError("de-rham is a command, not a flavor");
  if (flavor == Flavor::BP || (command == "bar-tor" && coalgebra == Coalgebra::T)) {
    if (!is_prime(prime)) throw DomainError(std::to_string(prime) + " is not prime");
    if (!unsafe_large_prime && prime > 5)
      throw DomainError("prime " + std::to_string(prime) + " is above 5; pass --unsafe-large-prime to allow it");
  }
  const std::int64_t d = degree_bound();
  const bool mu_degrees = command == "de-rham" || (is_mu(flavor) && (command == "cohomology" || command == "verify"));
  if (mu_degrees && truncation < (d + 1) / 2)
    throw DomainError("--truncation " + std::to_string(truncation) + " is too small for degree " + std::to_string(d) +
                      " (need at least " + std::to_string((d + 1) / 2) + ")");
  if (flavor == Flavor::BP && (command == "cohomology" || command == "verify") && d > bp_top(prime))
    throw DomainError("BP tables are computed through degree " + std::to_string(bp_top(prime)));
  if (command == "bar-tor" && (max_weight < 0 || max_weight > 8 || max_q < 0 || max_q > 3))
    throw DomainError("bar-tor supports weights 0..8 and q 0..3");
  if (is_mu(flavor) && max_n && *max_n > truncation && (command == "sigma" || command == "structure-maps"))
    throw DomainError("--max-n exceeds --truncation");
}

std::int64_t RunConfig::degree_bound() const {
  if (max_degree) return *max_degree;
  if (flavor == Flavor::BP && command != "de-rham") return bp_top(prime);
  return 10;
}

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["format"] = format_name(format);
  if (command == "bar-tor") {
    j["coalgebra"] = coalgebra_name(coalgebra);
    j["max_weight"] = max_weight;
    j["max_q"] = max_q;
    if (coalgebra == Coalgebra::T) j["prime"] = prime;
    return j;
  }
  if (command != "de-rham") j["flavor"] = to_string(flavor);
  if (flavor == Flavor::BP && command != "de-rham") j["prime"] = prime;
  else j["truncation"] = truncation;
  if (command == "cohomology" || command == "verify" || command == "de-rham") j["max_degree"] = degree_bound();
  if (max_n) j["max_n"] = *max_n;
  return j;
}

// --------------------------------------------------------------- scalars

Json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return Json(static_cast<std::int64_t>(n.get_si()));
  return Json(n.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw DomainError("expected an integer, got " + j.dump());
}

Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) return integer_to_json(q.get_num());
  return Json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Rational rational_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw DomainError("a rational is [num, den]");
    Rational q(integer_from_json(j[0]), integer_from_json(j[1]));
    q.canonicalize();
    return q;
  }
  return Rational(integer_from_json(j));
}

// ------------------------------------------------------------ polynomials

namespace {

Json mono_to_json(const Ring& R, const Monomial& m) {
  Json o = Json::object();
  for (std::size_t i = 0; i < m.exps.size(); ++i)
    if (m.exps[i] != 0) o[R.gen(i).name()] = m.exps[i];
  return o;
}

std::pair<std::string, int> split_name(const std::string& name) {
  const auto pos = name.rfind('_');
  if (pos == std::string::npos || pos + 1 >= name.size()) throw DomainError("bad generator name '" + name + "'");
  return {name.substr(0, pos), std::stoi(name.substr(pos + 1))};
}

Monomial mono_from_json(const Ring& R, const Json& j) {
  Monomial m = Monomial::one(R);
  for (const auto& [name, e] : j.items()) {
    const auto [sym, idx] = split_name(name);
    const auto at = R.find(sym, idx);
    if (!at) throw DomainError("generator " + name + " is not in the ring");
    m = m * Monomial::of_generator(R, *at, e.get<std::uint32_t>());
  }
  return m;
}

int ext_index_from_name(const ExtKind& kind, const std::string& name) {
  const auto [sym, idx] = split_name(name);
  if (kind.flavor != Flavor::DeRham) {
    if (kind.name(idx) != name) throw DomainError("'" + name + "' is not an exterior generator of this kind");
    return idx;
  }
  if (sym.empty() || sym[0] != 'd') throw DomainError("'" + name + "' is not a form generator");
  const auto at = kind.forms->find(sym.substr(1), idx);
  if (!at) throw DomainError("'" + name + "' is not a form generator");
  return static_cast<int>(*at) + 1;
}

}  // namespace

Json poly_to_json(const GradedPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back({{"coeff", rational_to_json(c)}, {"mono", mono_to_json(*p.ring(), m)}});
  return {{"terms", terms}};
}

GradedPoly poly_from_json(const RingPtr& ring, const Json& j) {
  GradedPoly p(ring);
  for (const auto& t : j.at("terms")) p.add_term(mono_from_json(*ring, t.at("mono")), rational_from_json(t.at("coeff")));
  return p;
}

Json ext_to_json(const ExtElement& x) {
  Json terms = Json::array();
  for (const auto& [s, c] : x.terms()) {
    Json names = Json::array();
    for (int n : s) names.push_back(x.kind().name(n));
    for (const auto& [m, a] : c.terms())
      terms.push_back({{"coeff", rational_to_json(a)}, {"mono", mono_to_json(*x.base(), m)}, {"ext", names}});
  }
  return {{"terms", terms}};
}

ExtElement ext_from_json(const RingPtr& base, const ExtKind& kind, const Json& j) {
  ExtElement r(base, kind);
  for (const auto& t : j.at("terms")) {
    IndexSet s;
    for (const auto& n : t.at("ext")) s.push_back(ext_index_from_name(kind, n.get<std::string>()));
    const GradedPoly c = GradedPoly::term(base, mono_from_json(*base, t.at("mono")), rational_from_json(t.at("coeff")));
    r += ExtElement::term(c, kind, s);
  }
  return r;
}

Json group_to_json(const FinAbGroup& g) {
  Json inv = Json::array(), prim = Json::array();
  for (const auto& d : g.invariant_factors) inv.push_back(integer_to_json(d));
  for (const auto& d : g.primary()) prim.push_back(integer_to_json(d));
  return {{"free_rank", g.free_rank}, {"invariant_factors", inv}, {"primary", prim}};
}

FinAbGroup group_from_json(const Json& j) {
  FinAbGroup g;
  g.free_rank = j.at("free_rank").get<std::size_t>();
  std::vector<Integer> orders;
  for (const auto& d : j.at("invariant_factors")) orders.push_back(integer_from_json(d));
  return direct_sum(g, group_from_orders(orders));
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(integer_to_json(m.at(i, j)));
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------- formulas

Json formula(const std::string& lhs, const std::string& lhs_tex, const GradedPoly& rhs) {
  return {{"lhs", lhs}, {"lhs_tex", lhs_tex}, {"rhs", rhs.to_text()}, {"rhs_tex", rhs.to_tex()}, {"value", poly_to_json(rhs)}};
}

Json formula(const std::string& lhs, const std::string& lhs_tex, const ExtElement& rhs) {
  return {{"lhs", lhs}, {"lhs_tex", lhs_tex}, {"rhs", rhs.to_text()}, {"rhs_tex", rhs.to_tex()}, {"value", ext_to_json(rhs)}};
}

std::string formula_tex(const Json& f) {
  return f.at("lhs_tex").get<std::string>() + " = " + f.at("rhs_tex").get<std::string>();
}

std::string formula_text(const Json& f) { return f.at("lhs").get<std::string>() + " = " + f.at("rhs").get<std::string>(); }

namespace {

std::string tex_index(int n) { return n < 10 ? std::to_string(n) : "{" + std::to_string(n) + "}"; }

Json section(const std::string& title, Json formulas) { return {{"title", title}, {"formulas", std::move(formulas)}}; }

Json document(const RunConfig& c) { return {{"schema", kSchema}, {"command", c.command}, {"config", c.to_json()}}; }

}  // namespace

// ------------------------------------------------------------- cohomology

Json cohomology_to_json(const CohomologyTable& t) {
  Json degrees = Json::array();
  for (const auto& d : t.degrees) {
    Json g = group_to_json(d.group);
    Json gens = Json::array();
    for (const auto& pc : d.pieces)
      for (const auto& cg : pc.generators)
        gens.push_back({{"order", integer_to_json(cg.order)},
                        {"weight", pc.weight},
                        {"q", pc.q},
                        {"text", cg.cocycle.to_text()},
                        {"tex", cg.cocycle.to_tex()},
                        {"cocycle", ext_to_json(cg.cocycle)}});
    g["generators"] = gens;
    Json pieces = Json::array();
    for (const auto& pc : d.pieces) pieces.push_back({{"weight", pc.weight}, {"q", pc.q}, {"group", group_to_json(pc.group)}});
    degrees.push_back({{"degree", d.degree}, {"group", g}, {"pieces", pieces}});
  }
  Json out = {{"flavor", to_string(t.kind.flavor)}, {"degrees", degrees}};
  if (t.p != 0) out["localized_at"] = t.p;
  return out;
}

// ------------------------------------------------------------------ reports

Json structure_maps_report(const RunConfig& c) {
  c.validate();
  Json doc = document(c);
  Json sections = Json::array();
  if (c.flavor == Flavor::BP) {
    const int n_max = c.max_n.value_or(3);
    const TypicalAlgebroid bp(c.prime, n_max);
    const auto& b = bp.basis();
    Json ell = Json::array(), res = Json::array(), er = Json::array(), ev = Json::array();
    for (int n = 1; n <= n_max; ++n) {
      const std::string i = std::to_string(n);
      ell.push_back(formula("l_" + i, "\\ell_" + tex_index(n), b.ell_in_v[n - 1]));
      const GradedPoly r = hazewinkel_residual(b, n);
      if (!r.is_zero()) throw ContractError("Hazewinkel recursion fails at n = " + i + ": " + r.to_text());
      res.push_back(formula("residual_" + i, "r_" + tex_index(n), r));
      er.push_back(formula("eta_R(l_" + i + ")", "\\eta_R(\\ell_" + tex_index(n) + ")", bp.eta_R_ell(n)));
      ev.push_back(formula("eta_R(v_" + i + ")", "\\eta_R(v_" + tex_index(n) + ")", bp.eta_R_v(n)));
    }
    sections.push_back(section("l_n in the v-basis", ell));
    sections.push_back(section("Hazewinkel recursion residuals", res));
    sections.push_back(section("right unit on l_n", er));
    sections.push_back(section("right unit on v_n", ev));
  } else {
    const int n_max = c.max_n.value_or(std::min(4, c.truncation));
    const MUAlgebroid mu(c.truncation);
    Json xm = Json::array(), er = Json::array(), cn = Json::array(), chi = Json::array(), mbar = Json::array(),
         psi = Json::array();
    for (int n = 1; n <= n_max; ++n) {
      const std::string i = std::to_string(n);
      const std::string t = tex_index(n);
      xm.push_back(formula("x_" + i, "x_" + t, mu.basis().x_in_m[n - 1]));
      er.push_back(formula("eta_R(x_" + i + ")", "\\eta_R(x_" + t + ")", mu.eta_R_x(n)));
      cn.push_back(formula("c_" + i, "c_" + t, mu.moving_coordinate(n)));
      chi.push_back(formula("chi(b_" + i + ")", "\\chi(b_" + t + ")", mu.conjugate_b(n)));
      mbar.push_back(formula("mbar_" + i, "\\bar m_" + t, mu.exp_coefficient(n)));
      const auto tensor = mu.coproduct_tensor(n);
      Json f = formula("psi(b_" + i + ")", "\\psi(b_" + t + ")", mu.coproduct(n));
      f["rhs"] = tensor_text(tensor);
      f["rhs_tex"] = tensor_tex(tensor);
      psi.push_back(f);
    }
    sections.push_back(section("x_n in the m-basis", xm));
    sections.push_back(section("right unit", er));
    sections.push_back(section("moving coordinates", cn));
    sections.push_back(section("conjugation", chi));
    sections.push_back(section("exponential coefficients", mbar));
    sections.push_back(section("coproduct", psi));
  }
  doc["sections"] = sections;
  return doc;
}

Json sigma_report(const RunConfig& c) {
  c.validate();
  Json doc = document(c);
  Json sections = Json::array();
  if (c.flavor == Flavor::BP) {
    const int n_max = c.max_n.value_or(3);
    const SigmaTable t = sigma_table_bp(hazewinkel_generators(c.prime, n_max));
    Json f = Json::array();
    for (int n = 1; n <= n_max; ++n)
      f.push_back(formula("sigma(v_" + std::to_string(n) + ")", "\\sigma(v_" + tex_index(n) + ")", t.on_base(n)));
    sections.push_back(section("sigma on v_n", f));
  } else {
    const int n_max = c.max_n.value_or(std::min(4, c.truncation));
    const MUAlgebroid mu(c.truncation);
    const SigmaTable t = sigma_table_mu(mu, c.flavor);
    Json f = Json::array();
    for (int n = 1; n <= n_max; ++n)
      f.push_back(formula("sigma(x_" + std::to_string(n) + ")", "\\sigma(x_" + tex_index(n) + ")", t.on_base(n)));
    sections.push_back(section("sigma on x_n", f));
    if (c.flavor == Flavor::MUSplit) {
      Json e = Json::array(), lam = Json::array();
      const auto lambda = lambda_in_e(mu);
      for (int n = 1; n <= n_max; ++n) {
        e.push_back(formula("sigma(e_" + std::to_string(n) + ")", "\\sigma(e_" + tex_index(n) + ")", t.on_ext(n)));
        lam.push_back(formula("lambda'_" + std::to_string(n), "\\lambda'_" + tex_index(n), lambda[n - 1]));
      }
      sections.push_back(section("sigma on e_n", e));
      sections.push_back(section("lambda'_n in the e-basis", lam));
    }
  }
  doc["sections"] = sections;
  return doc;
}

namespace {

Json differentials_json(const Differential& D, std::int64_t d_max) {
  Json out = Json::array();
  for (std::int64_t W = 0; 2 * W < d_max; ++W) {
    const WeightComplex wc = assemble_weight_complex(D, W);
    for (std::size_t q = 0; q < wc.d.size(); ++q) {
      if (wc.degree(static_cast<int>(q) + 1) > d_max) break;
      if (wc.d[q].rows() == 0 || wc.d[q].cols() == 0) continue;
      out.push_back({{"weight", W},
                     {"from_degree", wc.degree(static_cast<int>(q))},
                     {"q", q},
                     {"matrix", matrix_to_json(wc.d[q])}});
    }
  }
  return out;
}

}  // namespace

Json cohomology_report(const RunConfig& c) {
  c.validate();
  Json doc = document(c);
  const std::int64_t d_max = c.degree_bound();
  if (c.flavor == Flavor::BP) {
    CohomologyTable t = bp_cohomology_table(c.prime, c.unsafe_large_prime);
    t.degrees.resize(static_cast<std::size_t>(d_max + 1));
    doc["cohomology"] = cohomology_to_json(t);
    doc["differentials"] = differentials_json(sigma_differential(sigma_table_bp(hazewinkel_generators(c.prime, 2))), d_max);
  } else {
    const MUAlgebroid mu(c.truncation);
    const SigmaTable s = sigma_table_mu(mu, c.flavor);
    doc["cohomology"] = cohomology_to_json(cohomology_groups(s, d_max));
    doc["differentials"] = differentials_json(sigma_differential(s), d_max);
  }
  return doc;
}

Json bar_tor_report(const RunConfig& c) {
  c.validate();
  Json doc = document(c);
  Json rows = Json::array();
  bool ok = true;
  for (const auto& e : bar_tor_check(c.coalgebra, c.max_weight, c.max_q, c.prime)) {
    Json tors = Json::array();
    for (const auto& x : e.torsion) tors.push_back(integer_to_json(x));
    rows.push_back({{"q", e.q}, {"weight", e.weight}, {"rank", e.rank}, {"expected_rank", e.expected_rank},
                    {"torsion", tors}, {"ok", e.ok()}});
    ok = ok && e.ok();
  }
  doc["bar_tor"] = rows;
  doc["ok"] = ok;
  return doc;
}

Json de_rham_report(const RunConfig& c) {
  c.validate();
  Json doc = document(c);
  const std::int64_t d_max = c.degree_bound();
  doc["cohomology"] = cohomology_to_json(de_rham_cohomology({1}, d_max));
  const MUAlgebroid mu(c.truncation);
  const InclusionReport r = de_rham_inclusions(mu, d_max);
  Json induced = Json::array();
  for (const auto& ind : r.induced) {
    auto coords = [](const std::vector<std::vector<Integer>>& v) {
      Json a = Json::array();
      for (const auto& row : v) {
        Json b = Json::array();
        for (const auto& x : row) b.push_back(integer_to_json(x));
        a.push_back(b);
      }
      return a;
    };
    induced.push_back({{"degree", ind.degree},
                       {"omega_L", group_to_json(ind.source)},
                       {"thh", group_to_json(ind.middle)},
                       {"omega_C", group_to_json(ind.target)},
                       {"first", coords(ind.first)},
                       {"second", coords(ind.second)}});
  }
  doc["inclusions"] = {{"checked", r.checked},
                       {"residual_first", r.residual_first},
                       {"residual_second", r.residual_second},
                       {"chain_maps", r.chain_maps()},
                       {"induced", induced}};
  doc["ok"] = r.chain_maps();
  return doc;
}

namespace {

struct Checks {
  Json list = Json::array();
  bool ok = true;

  template <class F>
  void run(const std::string& name, F f) {
    std::string detail;
    bool pass = false;
    try {
      detail = f();
      pass = detail.empty();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    Json item = {{"name", name}, {"ok", pass}};
    if (!pass) item["detail"] = detail;
    list.push_back(item);
    ok = ok && pass;
  }
};

std::string basis_square_zero(const SigmaTable& t, std::int64_t d_max) {
  for (std::int64_t d = 0; d <= d_max; ++d)
    for (const auto& b : ext_basis(t.base(), t.kind(), d, t.ext_bound())) {
      const ExtElement x = basis_element(t.base(), t.kind(), b);
      const ExtElement y = t.apply(t.apply(x));
      if (!y.is_zero()) return "sigma^2(" + x.to_text() + ") = " + y.to_text();
    }
  return "";
}

std::string generators_generate(const CohomologyTable& table, const Differential& D, long p) {
  for (const auto& d : table.degrees)
    for (const auto& pc : d.pieces) {
      std::vector<ExtElement> gens;
      std::vector<Integer> orders;
      for (const auto& g : pc.generators) {
        gens.push_back(g.cocycle);
        orders.push_back(g.order);
      }
      const auto r = verify_generators(D, d.degree, pc.q, gens, orders, p);
      if (!r.ok()) return "generators of degree " + std::to_string(d.degree) + " fail the membership check";
    }
  return "";
}

}  // namespace

Json verify_report(const RunConfig& c) {
  c.validate();
  Json doc = document(c);
  Checks checks;
  const std::int64_t d_max = c.degree_bound();
  if (c.flavor == Flavor::BP) {
    const long p = c.prime;
    const int n_max = c.max_n.value_or(3);
    checks.run("Hazewinkel recursion", [&]() -> std::string {
      const auto b = hazewinkel_generators(p, n_max);
      for (int n = 1; n <= n_max; ++n)
        if (!hazewinkel_residual(b, n).is_zero()) return "nonzero residual at n = " + std::to_string(n);
      return "";
    });
    checks.run("p^n l_n integral", [&]() -> std::string {
      const auto b = hazewinkel_generators(p, n_max);
      for (int n = 1; n <= n_max; ++n)
        if (!(Rational(ipow(p, n)) * b.ell_in_v[n - 1]).is_integral()) return "p^n l_n not integral at n = " + std::to_string(n);
      return "";
    });
    checks.run("right unit p-integral", [&]() -> std::string {
      const TypicalAlgebroid bp(p, n_max);
      for (int n = 1; n <= n_max; ++n) (void)bp.eta_R_v(n);
      return "";
    });
    checks.run("sigma routes agree", [&]() -> std::string {
      (void)sigma_table_bp(hazewinkel_generators(p, n_max));
      return "";
    });
    const SigmaTable t = sigma_table_bp(hazewinkel_generators(p, 2));
    checks.run("sigma^2 = 0 on basis", [&] { return basis_square_zero(t, d_max); });
    checks.run("Hurewicz images integral", [&]() -> std::string {
      const auto b = hazewinkel_generators(p, n_max);
      for (int n = 1; n <= n_max; ++n)
        if (!hurewicz_map(b, GradedPoly::generator(b.v_ring, "v", n)).integral) return "h(v_" + std::to_string(n) + ")";
      return "";
    });
    const CohomologyTable table = bp_cohomology_table(p, c.unsafe_large_prime);
    checks.run("cohomology matches the closed form", [&]() -> std::string {
      const auto e = bp_expected_table(p);
      for (std::int64_t d = 0; d <= d_max; ++d)
        if (!(table.at(d).group == e[static_cast<std::size_t>(d)]))
          return "degree " + std::to_string(d) + ": " + table.at(d).group.to_text() + " vs " + e[static_cast<std::size_t>(d)].to_text();
      return "";
    });
    checks.run("generators generate", [&] { return generators_generate(table, sigma_differential(t), p); });
    checks.run("rational collapse", [&]() -> std::string {
      return rational_collapse_check(table).collapses ? "" : "free rank outside degree 0";
    });
  } else {
    const MUAlgebroid mu(c.truncation);
    const SigmaTable t = sigma_table_mu(mu, c.flavor);
    const int n_small = std::min(4, c.truncation);
    checks.run("counit of the right unit", [&]() -> std::string {
      for (int n = 1; n <= n_small; ++n) {
        const GradedPoly x = GradedPoly::generator(mu.X(), "x", n);
        if (!(augmentation(mu.eta_R_x(n), mu.X()) == x)) return "eps(eta_R(x_" + std::to_string(n) + "))";
      }
      return "";
    });
    checks.run("sigma integral", [&]() -> std::string {
      for (int n = 1; n <= c.truncation; ++n)
        if (!t.on_base(n).is_integral() || !t.on_ext(n).is_integral()) return "sigma at n = " + std::to_string(n);
      return "";
    });
    checks.run("sigma^2 = 0 on basis", [&] { return basis_square_zero(t, std::min<std::int64_t>(d_max, 2 * c.truncation)); });
    checks.run("moving and split flavors agree", [&]() -> std::string {
      const SigmaTable moving = c.flavor == Flavor::MUMoving ? t : sigma_table_mu(mu, Flavor::MUMoving);
      const SigmaTable split = c.flavor == Flavor::MUSplit ? t : sigma_table_mu(mu, Flavor::MUSplit);
      const auto lam = lambda_in_e(mu);
      for (int n = 1; n <= c.truncation; ++n) {
        if (!(moving_to_split(moving.on_base(n), lam) == split.on_base(n))) return "sigma(x_" + std::to_string(n) + ")";
        if (!split.apply(lam[n - 1]).is_zero()) return "sigma(lambda'_" + std::to_string(n) + ")";
      }
      return "";
    });
    checks.run("Hurewicz images integral", [&]() -> std::string {
      for (int n = 1; n <= n_small; ++n)
        if (!hurewicz_map(mu.basis(), GradedPoly::generator(mu.X(), "x", n)).integral) return "h(x_" + std::to_string(n) + ")";
      return "";
    });
    const CohomologyTable table = cohomology_groups(t, d_max);
    checks.run("generators generate", [&] { return generators_generate(table, sigma_differential(t), 0); });
    checks.run("rational collapse", [&]() -> std::string {
      const auto r = rational_collapse_check(table);
      if (!r.collapses) return "free rank outside degree 0";
      if (r.degree10_injective && !*r.degree10_injective) return "degree-10 injectivity";
      return "";
    });
    checks.run("de Rham inclusions are chain maps", [&]() -> std::string {
      const auto r = de_rham_inclusions(mu, std::min<std::int64_t>(d_max, 10));
      if (!r.chain_maps())
        return std::to_string(r.residual_first) + " + " + std::to_string(r.residual_second) + " nonzero residuals";
      return "";
    });
    doc["cohomology"] = cohomology_to_json(table);
  }
  doc["checks"] = checks.list;
  doc["ok"] = checks.ok;
  return doc;
}

Json build_report(const RunConfig& c) {
  if (c.command == "structure-maps") return structure_maps_report(c);
  if (c.command == "sigma") return sigma_report(c);
  if (c.command == "cohomology") return cohomology_report(c);
  if (c.command == "bar-tor") return bar_tor_report(c);
  if (c.command == "de-rham") return de_rham_report(c);
  if (c.command == "verify") return verify_report(c);
  throw DomainError("unknown command '" + c.command + "'");
}

// ---------------------------------------------------------------- rendering

namespace {

std::string json_int_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string group_text(const Json& g) {
  FinAbGroup h = group_from_json(g);
  return h.to_text();
}

std::string group_tex(const Json& g) {
  std::vector<std::string> parts;
  const auto r = g.at("free_rank").get<std::size_t>();
  if (r == 1) parts.push_back("\\mathbb{Z}");
  else if (r > 1) parts.push_back("\\mathbb{Z}^{" + std::to_string(r) + "}");
  for (const auto& d : g.at("invariant_factors")) parts.push_back("\\mathbb{Z}/" + json_int_text(d));
  if (parts.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " \\oplus " : "") + parts[i];
  return s;
}

void render_text(const Json& doc, std::ostream& out) {
  out << "# " << doc.at("command").get<std::string>() << " " << doc.at("config").dump() << "\n";
  if (doc.contains("sections"))
    for (const auto& s : doc["sections"]) {
      out << "\n## " << s.at("title").get<std::string>() << "\n";
      for (const auto& f : s.at("formulas")) out << formula_text(f) << "\n";
    }
  if (doc.contains("cohomology")) {
    out << "\n## cohomology\n";
    for (const auto& d : doc["cohomology"].at("degrees")) {
      out << "H_" << d.at("degree").get<std::int64_t>() << " = " << group_text(d.at("group")) << "\n";
      for (const auto& g : d.at("group").at("generators"))
        out << "  order " << json_int_text(g.at("order")) << ": " << g.at("text").get<std::string>() << "\n";
    }
  }
  if (doc.contains("differentials")) {
    out << "\n## differentials\n";
    for (const auto& m : doc["differentials"]) {
      out << "weight " << m.at("weight").get<std::int64_t>() << ", degree " << m.at("from_degree").get<std::int64_t>()
          << " -> " << m.at("from_degree").get<std::int64_t>() + 1 << "\n";
      for (const auto& row : m.at("matrix")) {
        out << "  [";
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << json_int_text(row[j]);
        out << "]\n";
      }
    }
  }
  if (doc.contains("bar_tor")) {
    out << "\n## bar-Tor\n";
    for (const auto& e : doc["bar_tor"]) {
      out << "q=" << e.at("q").get<int>() << " weight=" << e.at("weight").get<std::int64_t>()
          << " rank=" << e.at("rank").get<std::size_t>() << " expected=" << e.at("expected_rank").get<std::size_t>();
      if (!e.at("torsion").empty()) out << " torsion=" << e.at("torsion").dump();
      out << (e.at("ok").get<bool>() ? "" : " MISMATCH") << "\n";
    }
  }
  if (doc.contains("inclusions")) {
    const auto& r = doc["inclusions"];
    out << "\n## inclusions\n"
        << "checked " << r.at("checked").get<std::size_t>() << " basis elements, residuals "
        << r.at("residual_first").get<std::size_t>() << " and " << r.at("residual_second").get<std::size_t>() << "\n";
    for (const auto& ind : r.at("induced"))
      out << "degree " << ind.at("degree").get<std::int64_t>() << ": " << group_text(ind.at("omega_L")) << " -> "
          << group_text(ind.at("thh")) << " -> " << group_text(ind.at("omega_C")) << "\n";
  }
  if (doc.contains("checks")) {
    out << "\n## checks\n";
    for (const auto& c : doc["checks"]) {
      out << (c.at("ok").get<bool>() ? "PASS " : "FAIL ") << c.at("name").get<std::string>();
      if (c.contains("detail")) out << ": " << c["detail"].get<std::string>();
      out << "\n";
    }
  }
  if (doc.contains("ok")) out << "\n" << (doc["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
}

void render_tex(const Json& doc, std::ostream& out) {
  out << "% " << doc.at("command").get<std::string>() << " " << doc.at("config").dump() << "\n";
  if (doc.contains("sections"))
    for (const auto& s : doc["sections"]) {
      out << "% " << s.at("title").get<std::string>() << "\n\\begin{align*}\n";
      const auto& fs = s.at("formulas");
      for (std::size_t i = 0; i < fs.size(); ++i)
        out << fs[i].at("lhs_tex").get<std::string>() << " &= " << fs[i].at("rhs_tex").get<std::string>()
            << (i + 1 < fs.size() ? " \\\\" : "") << "\n";
      out << "\\end{align*}\n";
    }
  if (doc.contains("cohomology")) {
    out << "\\begin{align*}\n";
    const auto& ds = doc["cohomology"].at("degrees");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto& d = ds[i];
      out << "H_{" << d.at("degree").get<std::int64_t>() << "} &= " << group_tex(d.at("group"));
      const auto& gens = d.at("group").at("generators");
      if (!gens.empty()) {
        out << " &&";
        for (std::size_t k = 0; k < gens.size(); ++k)
          out << (k ? ",\\ " : " ") << "\\{" << gens[k].at("tex").get<std::string>() << "\\}";
      }
      out << (i + 1 < ds.size() ? " \\\\" : "") << "\n";
    }
    out << "\\end{align*}\n";
  }
  if (doc.contains("checks")) {
    for (const auto& c : doc["checks"])
      out << "% " << (c.at("ok").get<bool>() ? "PASS " : "FAIL ") << c.at("name").get<std::string>() << "\n";
  }
  if (doc.contains("bar_tor"))
    for (const auto& e : doc["bar_tor"])
      out << "% Tor_" << e.at("q").get<int>() << " weight " << e.at("weight").get<std::int64_t>() << ": rank "
          << e.at("rank").get<std::size_t>() << "\n";
}

}  // namespace

std::string render(const Json& doc, Format f) {
  std::ostringstream out;
  switch (f) {
    case Format::Json: out << doc.dump(2) << "\n"; break;
    case Format::Text: render_text(doc, out); break;
    case Format::Tex: render_tex(doc, out); break;
  }
  return out.str();
}

}  // namespace fglthh
