#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace envlab {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);
bool is_integer(const Rat& x);
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& x);

/// Exponent vector: variable name -> rational exponent, zeros dropped.
using ExpMap = std::map<std::string, Rat>;

ExpMap exp_mul(const ExpMap& a, const ExpMap& b);
ExpMap exp_inv(const ExpMap& a);
ExpMap exp_pow(const ExpMap& a, const Rat& k);
bool exp_on_lattice(const ExpMap& e, long N);

struct Monomial {
  Rat coeff{0};
  ExpMap exps;

  Monomial() = default;
  Monomial(Rat c, ExpMap e);
  static Monomial one() { return Monomial(1, {}); }
  static Monomial var(const std::string& v, const Rat& k = 1);

  bool is_zero() const { return coeff == 0; }
  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow_int(long k) const;
  Rat exp_of(const std::string& v) const;
  bool operator==(const Monomial& o) const { return coeff == o.coeff && exps == o.exps; }
  std::string str() const;
};

class LaurentPoly {
 public:
  // exponent vector -> nonzero coefficient
  std::map<ExpMap, Rat> terms;

  LaurentPoly() = default;
  explicit LaurentPoly(const Rat& c);
  explicit LaurentPoly(const Monomial& m);
  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return LaurentPoly(Rat(1)); }
  static LaurentPoly var(const std::string& v, const Rat& k = 1);

  bool is_zero() const { return terms.empty(); }
  bool is_one() const;
  std::optional<Monomial> as_monomial() const;
  bool is_constant() const;
  Rat constant_value() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Monomial& m) const;
  bool operator==(const LaurentPoly& o) const { return terms == o.terms; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  void add_term(const ExpMap& e, const Rat& c);

  std::vector<std::string> variables() const;
  bool depends_on(const std::string& v) const;
  // [min,max] exponent of v over all terms; nullopt when zero polynomial
  std::optional<std::pair<Rat, Rat>> exp_range(const std::string& v) const;
  LaurentPoly substitute_monomial(const std::string& v, const Monomial& m) const;
  LaurentPoly rename_var(const std::string& from, const std::string& to) const;

  std::string str() const;
};

/// q with q*y == x, or nullopt when y does not divide x exactly.
std::optional<LaurentPoly> poly_divide_exact(const LaurentPoly& x, const LaurentPoly& y);

struct RationalFn {
  LaurentPoly num;
  LaurentPoly den;

  RationalFn() : num(LaurentPoly::zero()), den(LaurentPoly::one()) {}
  RationalFn(LaurentPoly n, LaurentPoly d);
  explicit RationalFn(const Rat& c) : RationalFn(LaurentPoly(c), LaurentPoly::one()) {}
  static RationalFn one() { return RationalFn(Rat(1)); }
  static RationalFn zero() { return RationalFn(); }
  static RationalFn from_poly(const LaurentPoly& p) { return RationalFn(p, LaurentPoly::one()); }

  bool is_zero() const { return num.is_zero(); }
  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  bool operator==(const RationalFn& o) const;
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  bool depends_on(const std::string& v) const;
  // exact simplification when den | num
  void reduce_if_exact();
  // nullopt unless the function is a single monomial num/den
  std::optional<Monomial> as_monomial() const;
  std::string str() const;

 private:
  void canonicalize();
};

/// Truncated q-series with LaurentPoly coefficients in the non-q variables.
class QSeries {
 public:
  Rat trunc;  // all stored orders are < trunc
  std::map<Rat, LaurentPoly> coeffs;

  explicit QSeries(Rat truncation = 0) : trunc(std::move(truncation)) {}
  static QSeries one(const Rat& M);
  static QSeries monomial(const Monomial& m, const Rat& qexp, const Rat& M);

  void add_term(const Rat& qexp, const LaurentPoly& c);
  bool is_zero() const { return coeffs.empty(); }
  std::optional<Rat> valuation() const;
  LaurentPoly coeff_at(const Rat& qexp) const;

  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator*(const QSeries& o) const;
  QSeries inverse() const;  // throws MathError when leading coeff not invertible

  void check_lattice(long N) const;
  std::string str() const;
};

/// z -> z q^s on a q-series (var must not be "q").
QSeries substitute_shift(const QSeries& x, const std::string& var, const Rat& s, long lattice_N);
LaurentPoly substitute_shift_poly_check(const LaurentPoly& x, const std::string& var, const Rat& s,
                                        long lattice_N);

}  // namespace envlab
