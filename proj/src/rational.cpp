#include "cantor_moran/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace moran {

RationalPoint::RationalPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) c.canonicalize();
}

RationalPoint::RationalPoint(std::initializer_list<Rational> coords)
    : RationalPoint(std::vector<Rational>(coords)) {}

RationalPoint RationalPoint::zero(std::size_t dimension) {
  return RationalPoint(std::vector<Rational>(dimension, Rational(0)));
}

Rational RationalPoint::norm_squared() const {
  Rational s = 0;
  for (const auto& c : coords_) s += c * c;
  return s;
}

bool RationalPoint::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("point dimension mismatch");
  std::vector<Rational> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] + b.coords_[i];
  return RationalPoint(std::move(out));
}

RationalPoint operator*(const Rational& s, const RationalPoint& p) {
  std::vector<Rational> out(p.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * p.coords_[i];
  return RationalPoint(std::move(out));
}

bool operator==(const RationalPoint& a, const RationalPoint& b) { return a.coords_ == b.coords_; }

bool operator<(const RationalPoint& a, const RationalPoint& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                      b.coords_.end());
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const RationalPoint& p) {
  if (p.dimension() == 1) return to_string(p[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (i) out += ", ";
    out += to_string(p[i]);
  }
  return out + ")";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  Integer out;
  out.set_str(std::string(body), 10);
  if (!s.empty() && s.front() == '-') out = -out;
  return out;
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    bool negative = !s.empty() && s.front() == '-';
    std::string_view whole = s.substr(0, dot);
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
    Integer num;
    num.set_str(std::string(whole) + std::string(frac), 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational out(num, den);
    out.canonicalize();
    return negative ? Rational(-out) : out;
  }
  return Rational(parse_integer(s));
}

double to_double(const Rational& x) { return x.get_d(); }
double to_double(const Integer& x) { return x.get_d(); }

Integer floor_of(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational fractional_part(const Rational& x) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational out(r, x.get_den());
  out.canonicalize();
  return out;
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::size_t decimal_digits(const Integer& x) {
  std::size_t n = mpz_sizeinbase(x.get_mpz_t(), 10);
  if (n > 1) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, n - 1);
    if (abs(x) < p) --n;
  }
  return n;
}

// Leaves two bits of headroom so that sums of two values cannot overflow.
bool fits_int64(const Integer& x) {
  return mpz_sizeinbase(x.get_mpz_t(), 2) <= 62;
}

}  // namespace moran
