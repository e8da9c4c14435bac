#include "envlab/poly.hpp"

#include <algorithm>
#include <sstream>

namespace envlab {

Int rat_floor(const Rat& x) {
  Int n = numerator(x), d = denominator(x);
  Int q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

bool is_integer(const Rat& x) { return denominator(x) == 1; }

Rat parse_rat(const std::string& s) {
  auto pos = s.find('/');
  try {
    if (pos == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, pos)), d(s.substr(pos + 1));
    if (d == 0) throw ConfigError("zero denominator in rational: " + s);
    return Rat(n, d);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse rational: " + s);
  }
}

std::string rat_str(const Rat& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

ExpMap exp_mul(const ExpMap& a, const ExpMap& b) {
  ExpMap r = a;
  for (auto& [v, e] : b) {
    Rat s = (r.count(v) ? r[v] : Rat(0)) + e;
    if (s == 0)
      r.erase(v);
    else
      r[v] = s;
  }
  return r;
}

ExpMap exp_inv(const ExpMap& a) {
  ExpMap r;
  for (auto& [v, e] : a) r[v] = -e;
  return r;
}

ExpMap exp_pow(const ExpMap& a, const Rat& k) {
  ExpMap r;
  if (k == 0) return r;
  for (auto& [v, e] : a) r[v] = e * k;
  return r;
}

bool exp_on_lattice(const ExpMap& e, long N) {
  for (auto& [v, x] : e)
    if (denominator(x * N) != 1) return false;
  return true;
}

Monomial::Monomial(Rat c, ExpMap e) : coeff(std::move(c)) {
  if (coeff != 0)
    for (auto& [v, x] : e)
      if (x != 0) exps[v] = x;
}

Monomial Monomial::var(const std::string& v, const Rat& k) {
  return Monomial(1, {{v, k}});
}

Monomial Monomial::operator*(const Monomial& o) const {
  return Monomial(coeff * o.coeff, exp_mul(exps, o.exps));
}

Monomial Monomial::inverse() const {
  if (coeff == 0) throw MathError("inverse of zero monomial");
  return Monomial(Rat(1) / coeff, exp_inv(exps));
}

Monomial Monomial::pow_int(long k) const {
  Monomial r = Monomial::one();
  Monomial b = k >= 0 ? *this : inverse();
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) r = r * b;
  return r;
}

Rat Monomial::exp_of(const std::string& v) const {
  auto it = exps.find(v);
  return it == exps.end() ? Rat(0) : it->second;
}

LaurentPoly::LaurentPoly(const Rat& c) {
  if (c != 0) terms[{}] = c;
}

LaurentPoly::LaurentPoly(const Monomial& m) {
  if (!m.is_zero()) terms[m.exps] = m.coeff;
}

LaurentPoly LaurentPoly::var(const std::string& v, const Rat& k) {
  return LaurentPoly(Monomial::var(v, k));
}

bool LaurentPoly::is_one() const {
  return terms.size() == 1 && terms.begin()->first.empty() && terms.begin()->second == 1;
}

std::optional<Monomial> LaurentPoly::as_monomial() const {
  if (terms.size() != 1) return std::nullopt;
  return Monomial(terms.begin()->second, terms.begin()->first);
}

bool LaurentPoly::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
}

Rat LaurentPoly::constant_value() const {
  if (terms.empty()) return 0;
  if (!is_constant()) throw MathError("not a constant polynomial");
  return terms.begin()->second;
}

void LaurentPoly::add_term(const ExpMap& e, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms[e] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (auto& [e, c] : o.terms) r.add_term(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (auto& [e, c] : terms) r.terms[e] = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto& [e1, c1] : terms)
    for (auto& [e2, c2] : o.terms) r.add_term(exp_mul(e1, e2), c1 * c2);
  return r;
}

LaurentPoly LaurentPoly::operator*(const Monomial& m) const {
  LaurentPoly r;
  if (m.is_zero()) return r;
  for (auto& [e, c] : terms) r.terms[exp_mul(e, m.exps)] = c * m.coeff;
  return r;
}

std::vector<std::string> LaurentPoly::variables() const {
  std::vector<std::string> vs;
  for (auto& [e, c] : terms)
    for (auto& [v, x] : e)
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  return vs;
}

bool LaurentPoly::depends_on(const std::string& v) const {
  for (auto& [e, c] : terms)
    if (e.count(v)) return true;
  return false;
}

std::optional<std::pair<Rat, Rat>> LaurentPoly::exp_range(const std::string& v) const {
  if (terms.empty()) return std::nullopt;
  bool first = true;
  Rat lo, hi;
  for (auto& [e, c] : terms) {
    Rat x = e.count(v) ? e.at(v) : Rat(0);
    if (first) {
      lo = hi = x;
      first = false;
    } else {
      if (x < lo) lo = x;
      if (x > hi) hi = x;
    }
  }
  return std::make_pair(lo, hi);
}

LaurentPoly LaurentPoly::substitute_monomial(const std::string& v, const Monomial& m) const {
  LaurentPoly r;
  for (auto& [e, c] : terms) {
    ExpMap rest = e;
    Rat k = 0;
    auto it = rest.find(v);
    if (it != rest.end()) {
      k = it->second;
      rest.erase(it);
    }
    if (k == 0) {
      r.add_term(rest, c);
      continue;
    }
    if (denominator(k) != 1) throw MathError("fractional power in monomial substitution");
    Monomial repl = m.pow_int(static_cast<long>(numerator(k)));
    r.add_term(exp_mul(rest, repl.exps), c * repl.coeff);
  }
  return r;
}

LaurentPoly LaurentPoly::rename_var(const std::string& from, const std::string& to) const {
  return substitute_monomial(from, Monomial::var(to));
}

namespace {

// lex comparison with variables in ascending name order
int lex_cmp(const ExpMap& a, const ExpMap& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ia == a.end()) {
      // a has exponent 0 where b has nonzero
      if (ib->second > 0) return -1;
      return 1;
    }
    if (ib == b.end()) {
      if (ia->second > 0) return 1;
      return -1;
    }
    if (ia->first != ib->first) {
      if (ia->first < ib->first) {
        if (ia->second > 0) return 1;
        return -1;
      }
      if (ib->second > 0) return -1;
      return 1;
    }
    if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
    ++ia;
    ++ib;
  }
  return 0;
}

}  // namespace

std::optional<LaurentPoly> poly_divide_exact(const LaurentPoly& x, const LaurentPoly& y) {
  if (y.is_zero()) throw MathError("division by zero polynomial");
  if (x.is_zero()) return LaurentPoly::zero();
  // leading term of y in lex order
  auto lead = [](const LaurentPoly& p) {
    auto best = p.terms.begin();
    for (auto it = p.terms.begin(); it != p.terms.end(); ++it)
      if (lex_cmp(it->first, best->first) > 0) best = it;
    return best;
  };
  auto ly = lead(y);
  Monomial ly_m(ly->second, ly->first);
  LaurentPoly rem = x, quot;
  // exact division: strip leading terms; terminates because the lex-leading
  // exponent strictly decreases within the finite support of x * y^-deg shifts
  std::size_t guard = 4 * (x.terms.size() + 2) * (y.terms.size() + 2) + 64;
  while (!rem.is_zero()) {
    if (guard-- == 0) return std::nullopt;
    auto lr = lead(rem);
    Monomial q = Monomial(lr->second, lr->first) * ly_m.inverse();
    quot.add_term(q.exps, q.coeff);
    rem = rem - (y * q);
    if (!rem.is_zero() && lex_cmp(lead(rem)->first, lr->first) >= 0) return std::nullopt;
  }
  return quot;
}

RationalFn::RationalFn(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw MathError("zero denominator");
  canonicalize();
}

void RationalFn::canonicalize() {
  if (num.is_zero()) {
    den = LaurentPoly::one();
    return;
  }
  // normalize by the lex-least denominator term so den has constant term 1
  auto least = den.terms.begin();
  for (auto it = den.terms.begin(); it != den.terms.end(); ++it)
    if (lex_cmp(it->first, least->first) < 0) least = it;
  Monomial u(least->second, least->first);
  Monomial ui = u.inverse();
  num = num * ui;
  den = den * ui;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  return RationalFn(num * o.den + o.num * den, den * o.den);
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
  return RationalFn(num * o.den - o.num * den, den * o.den);
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  return RationalFn(num * o.num, den * o.den);
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
  if (o.is_zero()) throw MathError("division by zero rational function");
  return RationalFn(num * o.den, den * o.num);
}

bool RationalFn::operator==(const RationalFn& o) const {
  return (num * o.den) == (o.num * den);
}

bool RationalFn::depends_on(const std::string& v) const {
  RationalFn c = *this;
  c.reduce_if_exact();
  return c.num.depends_on(v) || c.den.depends_on(v);
}

void RationalFn::reduce_if_exact() {
  if (den.is_one()) return;
  auto q = poly_divide_exact(num, den);
  if (q) {
    num = *q;
    den = LaurentPoly::one();
  }
}

std::optional<Monomial> RationalFn::as_monomial() const {
  RationalFn c = *this;
  c.reduce_if_exact();
  auto n = c.num.as_monomial();
  auto d = c.den.as_monomial();
  if (n && d) return *n * d->inverse();
  return std::nullopt;
}

namespace {

std::string term_str(const ExpMap& e, const Rat& c, bool lead_sign) {
  std::ostringstream os;
  Rat ac = c < 0 ? Rat(-c) : c;
  if (!lead_sign)
    os << (c < 0 ? " - " : " + ");
  else if (c < 0)
    os << "-";
  os << rat_str(ac);
  // variables printed in descending name order, matching e.g. h^{1/2}*a^{-1}
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    os << "*" << it->first;
    if (it->second != 1) os << "^{" << rat_str(it->second) << "}";
  }
  return os.str();
}

}  // namespace

std::string LaurentPoly::str() const {
  if (terms.empty()) return "0";
  std::vector<std::pair<ExpMap, Rat>> ts(terms.begin(), terms.end());
  std::sort(ts.begin(), ts.end(),
            [](const auto& a, const auto& b) { return lex_cmp(a.first, b.first) > 0; });
  std::string out;
  bool first = true;
  for (auto& [e, c] : ts) {
    if (e.empty()) {
      std::ostringstream os;
      if (!first)
        os << (c < 0 ? " - " : " + ") << rat_str(c < 0 ? Rat(-c) : c);
      else
        os << rat_str(c);
      out += os.str();
    } else {
      out += term_str(e, c, first);
    }
    first = false;
  }
  return out;
}

std::string Monomial::str() const { return LaurentPoly(*this).str(); }

std::string RationalFn::str() const {
  RationalFn c = *this;
  c.reduce_if_exact();
  if (c.den.is_one()) return c.num.str();
  return "(" + c.num.str() + ") / (" + c.den.str() + ")";
}

QSeries QSeries::one(const Rat& M) {
  QSeries s(M);
  s.add_term(0, LaurentPoly::one());
  return s;
}

QSeries QSeries::monomial(const Monomial& m, const Rat& qexp, const Rat& M) {
  QSeries s(M);
  s.add_term(qexp, LaurentPoly(m));
  return s;
}

void QSeries::add_term(const Rat& qexp, const LaurentPoly& c) {
  if (qexp >= trunc || c.is_zero()) return;
  auto it = coeffs.find(qexp);
  if (it == coeffs.end()) {
    coeffs[qexp] = c;
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

std::optional<Rat> QSeries::valuation() const {
  if (coeffs.empty()) return std::nullopt;
  return coeffs.begin()->first;
}

LaurentPoly QSeries::coeff_at(const Rat& qexp) const {
  auto it = coeffs.find(qexp);
  return it == coeffs.end() ? LaurentPoly::zero() : it->second;
}

QSeries QSeries::operator+(const QSeries& o) const {
  QSeries r(std::min(trunc, o.trunc));
  for (auto& [q, c] : coeffs) r.add_term(q, c);
  for (auto& [q, c] : o.coeffs) r.add_term(q, c);
  return r;
}

QSeries QSeries::operator-(const QSeries& o) const {
  QSeries r(std::min(trunc, o.trunc));
  for (auto& [q, c] : coeffs) r.add_term(q, c);
  for (auto& [q, c] : o.coeffs) r.add_term(q, -c);
  return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
  // accuracy of a product of truncated series
  Rat v1 = coeffs.empty() ? Rat(0) : coeffs.begin()->first;
  Rat v2 = o.coeffs.empty() ? Rat(0) : o.coeffs.begin()->first;
  QSeries r(std::min(trunc + v2, o.trunc + v1));
  for (auto& [q1, c1] : coeffs)
    for (auto& [q2, c2] : o.coeffs) {
      if (q1 + q2 >= r.trunc) continue;
      r.add_term(q1 + q2, c1 * c2);
    }
  return r;
}

QSeries QSeries::inverse() const {
  if (coeffs.empty()) throw MathError("inverse of zero q-series");
  Rat v = coeffs.begin()->first;
  const LaurentPoly& c0 = coeffs.begin()->second;
  Rat M = trunc - 2 * v;  // relative precision is preserved
  QSeries r(M);
  // order-by-order: d_k = (delta_{k,0} - sum_{0<j<=k} c_j d_{k-j}) / c0
  std::map<Rat, LaurentPoly> d;
  std::vector<std::pair<Rat, LaurentPoly>> cs;
  for (auto& [q, c] : coeffs)
    if (q > v) cs.emplace_back(q - v, c);
  auto divide = [&](const LaurentPoly& p) {
    auto q = poly_divide_exact(p, c0);
    if (!q)
      throw MathError("q-series leading coefficient not invertible: " + c0.str());
    return *q;
  };
  d[0] = divide(LaurentPoly::one());
  // orders appearing are sums of the increments present in the series
  std::map<Rat, LaurentPoly> rhs;  // accumulated -sum c_j d_{k-j} for future k
  std::vector<Rat> todo;
  auto push_products = [&](const Rat& k) {
    for (auto& [j, cj] : cs) {
      Rat kk = k + j;
      if (kk >= M) continue;
      auto it = rhs.find(kk);
      LaurentPoly add = cj * d[k];
      if (it == rhs.end())
        rhs[kk] = add;
      else
        it->second = it->second + add;
    }
  };
  push_products(0);
  while (!rhs.empty()) {
    auto it = rhs.begin();
    Rat k = it->first;
    LaurentPoly val = -it->second;
    rhs.erase(it);
    if (val.is_zero()) continue;
    d[k] = divide(val);
    push_products(k);
  }
  for (auto& [k, dk] : d) r.add_term(k - v, dk);
  return r;
}

void QSeries::check_lattice(long N) const {
  for (auto& [q, c] : coeffs) {
    if (denominator(q * N) != 1)
      throw ConfigError("q-exponent " + rat_str(q) + " not on lattice 1/" + std::to_string(N));
    for (auto& [e, cc] : c.terms)
      if (!exp_on_lattice(e, N))
        throw ConfigError("exponent off the declared lattice 1/" + std::to_string(N));
  }
}

std::string QSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [q, c] : coeffs) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")*q^{" << rat_str(q) << "}";
    first = false;
  }
  if (first) os << "0";
  os << " + O(q^{" << rat_str(trunc) << "})";
  return os.str();
}

QSeries substitute_shift(const QSeries& x, const std::string& var, const Rat& s, long lattice_N) {
  if (var == "q") throw ConfigError("cannot shift q itself");
  QSeries r(x.trunc);  // conservative: shifted terms beyond trunc are dropped
  for (auto& [q, c] : x.coeffs) {
    for (auto& [e, cc] : c.terms) {
      Rat k = e.count(var) ? e.at(var) : Rat(0);
      Rat qq = q + k * s;
      if (denominator(qq * lattice_N) != 1)
        throw ConfigError("substitute_shift leaves lattice 1/" + std::to_string(lattice_N) +
                          ": q-exponent " + rat_str(qq));
      LaurentPoly t;
      t.add_term(e, cc);
      r.add_term(qq, t);
    }
  }
  return r;
}

LaurentPoly substitute_shift_poly_check(const LaurentPoly& x, const std::string& var, const Rat& s,
                                        long lattice_N) {
  LaurentPoly r;
  for (auto& [e, c] : x.terms) {
    Rat k = e.count(var) ? e.at(var) : Rat(0);
    Rat qq = k * s;
    if (denominator(qq * lattice_N) != 1)
      throw ConfigError("substitute_shift leaves lattice 1/" + std::to_string(lattice_N));
    ExpMap ee = exp_mul(e, ExpMap{{"q", qq}});
    r.add_term(ee, c);
  }
  return r;
}

}  // namespace envlab
