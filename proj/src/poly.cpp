#include "fglthh/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <tuple>

#include "fglthh/errors.hpp"

namespace fglthh {

namespace {

std::string index_suffix(int index) {
  std::string s = std::to_string(index);
  return s.size() == 1 ? "_" + s : "_{" + s + "}";
}

std::string exponent_tex(std::uint32_t e) {
  std::string s = std::to_string(e);
  return s.size() == 1 ? "^" + s : "^{" + s + "}";
}

}  // namespace

std::string Generator::name() const { return symbol + "_" + std::to_string(index); }

std::string Generator::tex() const {
  std::string head = symbol;
  if (symbol == "lambda'") head = "\\lambda'";
  else if (symbol == "lambda") head = "\\lambda";
  else if (symbol == "ell") head = "\\ell";
  else if (symbol == "bL") head = "b";
  else if (symbol == "bR") head = "b";
  return head + index_suffix(index);
}

RingPtr Ring::make(std::vector<Generator> gens) {
  std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
    return std::tie(a.weight, a.symbol, a.index) < std::tie(b.weight, b.symbol, b.index);
  });
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].weight <= 0) throw DomainError("generator " + gens[i].name() + " has non-positive weight");
    if (i > 0 && gens[i].symbol == gens[i - 1].symbol && gens[i].index == gens[i - 1].index)
      throw DomainError("duplicate generator " + gens[i].name());
  }
  return RingPtr(new Ring(std::move(gens)));
}

RingPtr Ring::indexed(const std::string& symbol, const std::vector<std::int64_t>& weights) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < weights.size(); ++i)
    gens.push_back({symbol, static_cast<int>(i + 1), weights[i]});
  return make(std::move(gens));
}

RingPtr Ring::join(std::initializer_list<RingPtr> parts) {
  std::vector<Generator> gens;
  for (const auto& r : parts) gens.insert(gens.end(), r->gens_.begin(), r->gens_.end());
  return make(std::move(gens));
}

std::optional<std::size_t> Ring::find(const std::string& symbol, int index) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].symbol == symbol && gens_[i].index == index) return i;
  return std::nullopt;
}

std::size_t Ring::index_of(const std::string& symbol, int index) const {
  auto i = find(symbol, index);
  if (!i) throw MismatchError("generator " + symbol + "_" + std::to_string(index) + " not in table");
  return *i;
}

bool Ring::operator==(const Ring& other) const {
  if (gens_.size() != other.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& a = gens_[i];
    const auto& b = other.gens_[i];
    if (a.symbol != b.symbol || a.index != b.index || a.weight != b.weight) return false;
  }
  return true;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::one(const Ring& ring) { return Monomial{0, std::vector<std::uint32_t>(ring.size(), 0)}; }

Monomial Monomial::of_generator(const Ring& ring, std::size_t i, std::uint32_t e) {
  Monomial m = one(ring);
  m.exps.at(i) = e;
  m.weight = ring.gen(i).weight * e;
  return m;
}

std::uint32_t Monomial::total_degree() const { return std::accumulate(exps.begin(), exps.end(), 0u); }

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  const std::size_t n = std::min(a.exps.size(), b.exps.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
  return a.exps.size() < b.exps.size();
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r{a.weight + b.weight, a.exps};
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
  return r;
}

// -------------------------------------------------------------- GradedPoly

GradedPoly GradedPoly::constant(RingPtr ring, const Rational& c) {
  GradedPoly p(ring);
  p.add_term(Monomial::one(*ring), c);
  return p;
}

GradedPoly GradedPoly::generator(RingPtr ring, std::size_t i) {
  GradedPoly p(ring);
  p.add_term(Monomial::of_generator(*ring, i), 1);
  return p;
}

GradedPoly GradedPoly::generator(RingPtr ring, const std::string& symbol, int index) {
  const std::size_t i = ring->index_of(symbol, index);
  return generator(std::move(ring), i);
}

GradedPoly GradedPoly::term(RingPtr ring, Monomial m, const Rational& c) {
  GradedPoly p(std::move(ring));
  p.add_term(m, c);
  return p;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GradedPoly::constant_term() const { return coefficient(Monomial::one(*ring_)); }

bool GradedPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.weight == terms_.rbegin()->first.weight;
}

std::int64_t GradedPoly::weight() const {
  if (terms_.empty()) throw WeightError("weight of the zero polynomial is undefined");
  if (!is_homogeneous()) throw WeightError("polynomial is not homogeneous: " + to_text());
  return terms_.begin()->first.weight;
}

GradedPoly GradedPoly::homogeneous_part(std::int64_t w) const {
  GradedPoly r(ring_);
  for (const auto& [m, c] : terms_)
    if (m.weight == w) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

bool GradedPoly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.get_den() == 1; });
}

bool GradedPoly::is_p_integral(long p) const {
  return std::all_of(terms_.begin(), terms_.end(), [p](const auto& t) {
    return mpz_divisible_ui_p(t.second.get_den().get_mpz_t(), static_cast<unsigned long>(p)) == 0;
  });
}

Integer GradedPoly::denominator_lcm() const {
  Integer l = 1;
  for (const auto& [m, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  return l;
}

GradedPoly GradedPoly::derivative(std::size_t i) const {
  GradedPoly r(ring_);
  const std::int64_t w = ring_->gen(i).weight;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.exps.at(i);
    if (e == 0) continue;
    Monomial d = m;
    d.exps[i] -= 1;
    d.weight -= w;
    r.add_term(d, c * e);
  }
  return r;
}

GradedPoly GradedPoly::filtered(const std::function<bool(const Monomial&)>& keep) const {
  GradedPoly r(ring_);
  for (const auto& [m, c] : terms_)
    if (keep(m)) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

GradedPoly GradedPoly::pow(unsigned k) const {
  GradedPoly result = constant(ring_, 1);
  GradedPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  if (!same_ring(ring_, o.ring_)) throw MismatchError("adding polynomials over different generator tables");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  if (!same_ring(ring_, o.ring_)) throw MismatchError("subtracting polynomials over different generator tables");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

GradedPoly multiply_filtered(const GradedPoly& a, const GradedPoly& b,
                             const std::function<bool(const Monomial&)>& keep) {
  if (!same_ring(a.ring(), b.ring())) throw MismatchError("multiplying polynomials over different generator tables");
  GradedPoly r(a.ring());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = ma * mb;
      if (keep && !keep(m)) continue;
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return multiply_filtered(a, b, nullptr); }

bool operator==(const GradedPoly& a, const GradedPoly& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string GradedPoly::to_text() const {
  std::vector<std::pair<Rational, std::string>> ts;
  for (const auto& [m, c] : terms_) ts.emplace_back(c, monomial_text(*ring_, m));
  return format_sum_text(ts);
}

std::string GradedPoly::to_tex() const {
  std::vector<std::pair<Rational, std::string>> ts;
  for (const auto& [m, c] : terms_) ts.emplace_back(c, monomial_tex(*ring_, m));
  return format_sum_tex(ts);
}

GradedPoly poly_arith(const GradedPoly& a, const GradedPoly& b, PolyOp op) {
  if (!same_ring(a.ring(), b.ring())) throw MismatchError("poly_arith: mismatched generator tables");
  if (op == PolyOp::Mul) return a * b;
  if (!a.is_zero() && !b.is_zero() && a.is_homogeneous() && b.is_homogeneous() && a.weight() != b.weight())
    throw WeightError("poly_arith: adding homogeneous polynomials of weights " + std::to_string(a.weight()) +
                      " and " + std::to_string(b.weight()));
  return a + b;
}

// ----------------------------------------------------------------- RingMap

RingMap::RingMap(RingPtr source, RingPtr target, std::vector<GradedPoly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->size()) throw MismatchError("ring map needs one image per source generator");
  for (const auto& im : images_)
    if (!same_ring(im.ring(), target_)) throw MismatchError("ring map image over the wrong generator table");
}

RingMap RingMap::renaming(RingPtr source, RingPtr target,
                          const std::function<std::optional<std::size_t>(const Generator&)>& rule) {
  std::vector<GradedPoly> images;
  for (const auto& g : source->generators()) {
    auto j = rule(g);
    images.push_back(j ? GradedPoly::generator(target, *j) : GradedPoly(target));
  }
  return RingMap(std::move(source), std::move(target), std::move(images));
}

RingMap RingMap::inclusion(RingPtr source, RingPtr target) {
  for (const auto& g : source->generators())
    if (!target->find(g.symbol, g.index)) throw MismatchError("generator " + g.name() + " missing from the target table");
  return renaming(source, target, [&](const Generator& g) { return target->find(g.symbol, g.index); });
}

GradedPoly RingMap::operator()(const GradedPoly& p) const { return apply_filtered(p, nullptr); }

GradedPoly RingMap::apply_filtered(const GradedPoly& p, const std::function<bool(const Monomial&)>& keep) const {
  if (!same_ring(p.ring(), source_)) throw MismatchError("ring map applied to a polynomial over the wrong table");
  // powers[i][e-1] = image(i)^e, grown on demand
  std::vector<std::vector<GradedPoly>> powers(source_->size());
  auto power = [&](std::size_t i, std::uint32_t e) -> const GradedPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(images_[i]);
    while (cache.size() < e) cache.push_back(multiply_filtered(cache.back(), images_[i], keep));
    return cache[e - 1];
  };
  GradedPoly result(target_);
  for (const auto& [m, c] : p.terms()) {
    GradedPoly t = GradedPoly::constant(target_, c);
    for (std::size_t i = 0; i < m.exps.size() && !t.is_zero(); ++i) {
      if (m.exps[i] == 0) continue;
      t = multiply_filtered(t, power(i, m.exps[i]), keep);
    }
    result += t;
  }
  return result;
}

// ----------------------------------------------------------------- helpers

std::vector<Monomial> monomials_of_weight(const Ring& ring, std::int64_t weight) {
  std::vector<Monomial> out;
  if (weight < 0) return out;
  Monomial cur = Monomial::one(ring);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t rest) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    if (i == ring.size()) return;
    const std::int64_t w = ring.gen(i).weight;
    for (std::uint32_t e = 0; static_cast<std::int64_t>(e) * w <= rest; ++e) {
      cur.exps[i] = e;
      cur.weight = weight - rest + static_cast<std::int64_t>(e) * w;
      rec(i + 1, rest - static_cast<std::int64_t>(e) * w);
    }
    cur.exps[i] = 0;
  };
  rec(0, weight);
  for (auto& m : out) m.weight = weight;
  std::sort(out.begin(), out.end());
  return out;
}

std::string monomial_text(const Ring& ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.gen(i).name();
    if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
  }
  return s;
}

std::string monomial_tex(const Ring& ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += ring.gen(i).tex();
    if (m.exps[i] > 1) s += exponent_tex(m.exps[i]);
  }
  return s;
}

std::string rational_text(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_sum_text(const std::vector<std::pair<Rational, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [c, f] : terms) {
    const bool neg = c < 0;
    const Rational a = abs(c);
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    if (f.empty()) s += rational_text(a);
    else if (a == 1) s += f;
    else s += rational_text(a) + "*" + f;
  }
  return s;
}

std::string format_sum_tex(const std::vector<std::pair<Rational, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [c, f] : terms) {
    const bool neg = c < 0;
    const Rational a = abs(c);
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    std::string coeff;
    if (a.get_den() == 1) coeff = a.get_num().get_str();
    else coeff = "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
    if (f.empty()) s += coeff;
    else if (a == 1) s += f;
    else s += coeff + f;
  }
  return s;
}

}  // namespace fglthh

namespace fglthh {

GradedPoly parse_poly(RingPtr ring, std::string_view text) {
  GradedPoly result(ring);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> DomainError {
    return DomainError("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_uint = [&]() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw fail("expected digits at offset " + std::to_string(start));
    return std::string(text.substr(start, pos - start));
  };
  skip();
  if (text.substr(pos) == "0") return result;
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) {
      if (first) throw fail("empty input");
      break;
    }
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw fail("expected + or - at offset " + std::to_string(pos));
    }
    first = false;
    Rational coeff = sign;
    GradedPoly term = GradedPoly::constant(ring, 1);
    bool any = false;
    while (pos < text.size()) {
      skip();
      if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
      if (text[pos] == '*') {
        ++pos;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::string num = read_uint();
        Rational q(Integer(num), 1);
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          q /= Rational(Integer(read_uint()), 1);
        }
        coeff *= q;
        any = true;
        continue;
      }
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != '_') ++pos;
      if (pos >= text.size()) throw fail("generator without index");
      std::string symbol(text.substr(start, pos - start));
      ++pos;
      int index = std::stoi(read_uint());
      auto gi = ring->find(symbol, index);
      if (!gi) throw fail("unknown generator " + symbol + "_" + std::to_string(index));
      unsigned e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = static_cast<unsigned>(std::stoul(read_uint()));
      }
      term = term * GradedPoly::term(ring, Monomial::of_generator(*ring, *gi, e), 1);
      any = true;
    }
    if (!any) throw fail("empty term");
    result += coeff * term;
  }
  return result;
}

}  // namespace fglthh
