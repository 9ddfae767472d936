#include "fglthh/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fglthh/errors.hpp"

namespace fglthh {

// ------------------------------------------------------- rational systems

namespace {

// Bareiss elimination on an integer matrix; returns pivot columns.
std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<Integer>>& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  const std::size_t m = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < a[i].size(); ++j) {
        Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Integer>> clear_denominators(const RatMatrix& A, const std::vector<Rational>* rhs) {
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = 0; i < A.size(); ++i) {
    Integer l = 1;
    for (const auto& q : A[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    if (rhs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*rhs)[i].get_den().get_mpz_t());
    std::vector<Integer> row;
    for (const auto& q : A[i]) row.push_back(Integer(q * l));
    if (rhs) row.push_back(Integer((*rhs)[i] * l));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::vector<Rational> solve_rational_linear(const RatMatrix& A, const std::vector<Rational>& rhs) {
  if (A.size() != rhs.size()) throw MismatchError("right-hand side length does not match the row count");
  const std::size_t n = A.empty() ? 0 : A[0].size();
  for (const auto& row : A)
    if (row.size() != n) throw MismatchError("ragged coefficient matrix");
  auto a = clear_denominators(A, &rhs);
  auto pivots = bareiss_echelon(a, n + 1);
  if (!pivots.empty() && pivots.back() == n) throw NoSolutionError("inconsistent linear system");
  if (pivots.size() < n) throw UnderdeterminedError("linear system has no unique solution", n - pivots.size());
  std::vector<Rational> x(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational s = Rational(a[k][n]);
    for (std::size_t j = k + 1; j < n; ++j) s -= Rational(a[k][j]) * x[j];
    x[k] = s / Rational(a[k][k]);
    x[k].canonicalize();
  }
  return x;
}

std::size_t rational_rank(const RatMatrix& A) {
  if (A.empty()) return 0;
  auto a = clear_denominators(A, nullptr);
  return bareiss_echelon(a, A[0].size()).size();
}

// -------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw MismatchError("ragged integer matrix");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
  std::vector<Integer> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const {
  if (v.size() != cols_) throw MismatchError("vector length does not match the column count");
  std::vector<Integer> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j] != 0) r[i] += at(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::block(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) const {
  IntMatrix b(i1 - i0, j1 - j0);
  for (std::size_t i = i0; i < i1; ++i)
    for (std::size_t j = j0; j < j1; ++j) b.at(i - i0, j - j0) = at(i, j);
  return b;
}

std::string IntMatrix::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    os << "]\n";
  }
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw MismatchError("matrix product of incompatible shapes");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += x * b.at(k, j);
    }
  c.row_labels = a.row_labels;
  c.col_labels = b.col_labels;
  return c;
}

// ------------------------------------------------------------------- Smith

namespace {

class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& M, bool track = true)
      : m(M),
        U(IntMatrix::identity(track ? M.rows() : 0)),
        Uinv(U),
        V(IntMatrix::identity(track ? M.cols() : 0)),
        Vinv(V) {
    m.row_labels.clear();
    m.col_labels.clear();
  }

  // row_i += q row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) += q * m.at(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U.at(i, c) += q * U.at(j, c);
    for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv.at(r, j) -= q * Uinv.at(r, i);
  }
  // col_i += q col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, i) += q * m.at(r, j);
    for (std::size_t r = 0; r < V.rows(); ++r) V.at(r, i) += q * V.at(r, j);
    for (std::size_t c = 0; c < Vinv.cols(); ++c) Vinv.at(j, c) -= q * Vinv.at(i, c);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
    for (std::size_t r = 0; r < Uinv.rows(); ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
    for (std::size_t c = 0; c < Vinv.cols(); ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U.at(i, c) = -U.at(i, c);
    for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv.at(r, i) = -Uinv.at(r, i);
  }

  bool move_min_pivot(std::size_t t) {
    bool found = false;
    std::size_t bi = t, bj = t;
    Integer best;
    for (std::size_t i = t; i < m.rows(); ++i)
      for (std::size_t j = t; j < m.cols(); ++j) {
        const Integer& x = m.at(i, j);
        if (x == 0) continue;
        if (!found || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
          found = true;
          best = x;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void run() {
    const std::size_t lim = std::min(m.rows(), m.cols());
    std::size_t t = 0;
    for (; t < lim; ++t) {
      if (!move_min_pivot(t)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m.rows(); ++i) {
          if (m.at(i, t) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
          add_row(i, t, -q);
          if (m.at(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < m.cols(); ++j) {
          if (m.at(t, j) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
          add_col(j, t, -q);
          if (m.at(t, j) != 0) dirty = true;
        }
        if (dirty) {
          move_min_pivot(t);
          continue;
        }
        // pivot must divide the remaining block
        std::size_t bad = m.rows();
        for (std::size_t i = t + 1; i < m.rows() && bad == m.rows(); ++i)
          for (std::size_t j = t + 1; j < m.cols(); ++j)
            if (!mpz_divisible_p(m.at(i, j).get_mpz_t(), m.at(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad == m.rows()) break;
        add_row(t, bad, 1);
      }
      if (m.at(t, t) < 0) negate_row(t);
    }
    rank = t;
  }

  IntMatrix m, U, Uinv, V, Vinv;
  std::size_t rank = 0;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
  SmithWorker w(M);
  w.run();
  SmithForm s{w.U, w.Uinv, w.m, w.V, w.Vinv, w.rank, {}};
  for (std::size_t i = 0; i < w.rank; ++i) s.diagonal.push_back(w.m.at(i, i));
  return s;
}

std::vector<Integer> smith_diagonal(const IntMatrix& M) {
  SmithWorker w(M, false);
  w.run();
  std::vector<Integer> d;
  for (std::size_t i = 0; i < w.rank; ++i) d.push_back(w.m.at(i, i));
  return d;
}

// ------------------------------------------------------------- FinAbGroup

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(Integer n) {
  std::vector<long> ps;
  n = abs(n);
  for (long d = 2; n > 1; ++d) {
    if (Integer(d) * d > n) {
      if (!n.fits_slong_p()) throw DomainError("prime factor too large");
      ps.push_back(n.get_si());
      break;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ps.push_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) n /= d;
    }
  }
  return ps;
}

Integer FinAbGroup::torsion_order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::vector<Integer> FinAbGroup::primary() const {
  std::vector<std::pair<long, Integer>> parts;
  for (const auto& d : invariant_factors)
    for (long p : prime_factors(d)) {
      Integer q = 1;
      Integer r = d;
      while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
        r /= p;
        q *= p;
      }
      parts.emplace_back(p, q);
    }
  std::sort(parts.begin(), parts.end());
  std::vector<Integer> out;
  for (auto& [p, q] : parts) out.push_back(q);
  return out;
}

std::string FinAbGroup::to_text() const {
  if (is_zero()) return "0";
  std::string s;
  auto add = [&](const std::string& t) { s += (s.empty() ? "" : " + ") + t; };
  if (free_rank == 1) add("Z");
  else if (free_rank > 1) add("Z^" + std::to_string(free_rank));
  for (const auto& d : invariant_factors) add("Z/" + d.get_str());
  return s;
}

FinAbGroup group_from_orders(const std::vector<Integer>& orders) {
  FinAbGroup g;
  std::map<long, std::vector<Integer>> by_prime;
  for (const auto& o : orders) {
    if (o == 0) {
      ++g.free_rank;
      continue;
    }
    for (long p : prime_factors(o)) {
      Integer q = 1;
      Integer r = abs(o);
      while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
        r /= p;
        q *= p;
      }
      by_prime[p].push_back(q);
    }
  }
  std::size_t len = 0;
  for (auto& [p, qs] : by_prime) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    len = std::max(len, qs.size());
  }
  // d_len-1 takes the largest power of each prime, and so on down
  std::vector<Integer> factors(len, 1);
  for (auto& [p, qs] : by_prime)
    for (std::size_t i = 0; i < qs.size(); ++i) factors[len - 1 - i] *= qs[i];
  g.invariant_factors = factors;
  return g;
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<Integer> orders(a.invariant_factors);
  orders.insert(orders.end(), b.invariant_factors.begin(), b.invariant_factors.end());
  orders.insert(orders.end(), a.free_rank + b.free_rank, Integer(0));
  return group_from_orders(orders);
}

FinAbGroup localize(const FinAbGroup& g, long p) {
  std::vector<Integer> orders(g.free_rank, Integer(0));
  for (const auto& d : g.invariant_factors) {
    Integer q = 1;
    Integer r = d;
    while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
      r /= p;
      q *= p;
    }
    orders.push_back(q);
  }
  return group_from_orders(orders);
}

// ------------------------------------------------------------ Subquotient

Subquotient::Subquotient(const IntMatrix& d_in, const IntMatrix& d_out) : n1_(d_in.rows()), d_out_(d_out) {
  if (d_out.cols() != d_in.rows())
    throw MismatchError("d_out and d_in do not compose through a common free module");
  if (!(d_out * d_in).is_zero()) throw ContractError("d_out * d_in != 0: not a cochain complex");

  const SmithForm s1 = smith_normal_form(d_out);
  const std::size_t k = n1_ - s1.rank;
  const IntMatrix K = s1.V.block(0, n1_, s1.rank, n1_);
  to_kernel_ = s1.Vinv.block(s1.rank, n1_, 0, n1_);
  const IntMatrix Y = to_kernel_ * d_in;
  const SmithForm s2 = smith_normal_form(Y);
  U2_ = s2.U;

  std::vector<Integer> diag(k, Integer(0));
  for (std::size_t i = 0; i < s2.rank; ++i) diag[i] = s2.diagonal[i];
  first_nontrivial_ = 0;
  while (first_nontrivial_ < s2.rank && diag[first_nontrivial_] == 1) ++first_nontrivial_;

  for (std::size_t i = first_nontrivial_; i < k; ++i) {
    std::vector<Integer> y(k);
    for (std::size_t r = 0; r < k; ++r) y[r] = s2.Uinv.at(r, i);
    std::vector<Integer> lift = K.apply(y);
    auto lead = std::find_if(lift.begin(), lift.end(), [](const Integer& x) { return x != 0; });
    const bool flip = lead != lift.end() && *lead < 0;
    if (flip)
      for (auto& x : lift) x = -x;
    flipped_.push_back(flip);
    gens_.push_back({diag[i], std::move(lift)});
  }
  std::vector<Integer> orders;
  for (const auto& g : gens_) orders.push_back(g.order);
  group_ = group_from_orders(orders);
}

bool Subquotient::is_cocycle(const std::vector<Integer>& z) const {
  const auto r = d_out_.apply(z);
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

std::vector<Integer> Subquotient::coordinates(const std::vector<Integer>& z) const {
  if (!is_cocycle(z)) throw ContractError("coordinates requested for a non-cocycle");
  const auto y = U2_.apply(to_kernel_.apply(z));
  std::vector<Integer> out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    Integer c = y[first_nontrivial_ + i];
    if (flipped_[i]) c = -c;
    if (gens_[i].order != 0) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), gens_[i].order.get_mpz_t());
    out.push_back(c);
  }
  return out;
}

Integer Subquotient::order_of(const std::vector<Integer>& z) const {
  const auto c = coordinates(z);
  Integer o = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (gens_[i].order == 0) return 0;
    Integer g;
    mpz_gcd(g.get_mpz_t(), c[i].get_mpz_t(), gens_[i].order.get_mpz_t());
    Integer oi = gens_[i].order / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), oi.get_mpz_t());
  }
  return o;
}

}  // namespace fglthh
