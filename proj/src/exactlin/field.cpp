#include "cobarlab/field.hpp"

#include <algorithm>
#include <cctype>

namespace cobarlab {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31))
    throw FieldError("prime field characteristic must be below 2^31");
  if (!is_prime_number(p))
    throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  FieldSpec f;
  f.kind_ = FieldKind::prime;
  f.p_ = static_cast<std::uint32_t>(p);
  return f;
}

namespace {

mpz_class mod_p(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r;
}

}  // namespace

Scalar FieldSpec::normalize(const Scalar& x) const {
  if (kind_ == FieldKind::rationals) {
    Scalar y = x;
    y.canonicalize();
    return y;
  }
  mpz_class num = mod_p(x.get_num(), p_);
  mpz_class den = mod_p(x.get_den(), p_);
  if (den == 0) throw FieldError("denominator divisible by the characteristic");
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p_).get_mpz_t());
    num = mod_p(num * inv, p_);
  }
  return Scalar(num);
}

Scalar FieldSpec::inv(const Scalar& a) const {
  if (a == 0) throw FieldError("division by zero");
  if (kind_ == FieldKind::rationals) return Scalar(1) / a;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), mpz_class(p_).get_mpz_t());
  return Scalar(inv);
}

Scalar FieldSpec::parse(std::string_view text) const {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw FieldError("malformed scalar \"" + std::string(text) + "\"");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw FieldError("zero denominator in scalar \"" + std::string(text) + "\"");
  return normalize(Scalar(n, d));
}

std::string FieldSpec::format(const Scalar& x) const { return normalize(x).get_str(); }

std::string FieldSpec::name() const {
  return kind_ == FieldKind::rationals ? "Q" : "GF(" + std::to_string(p_) + ")";
}

Vector FieldSpec::unit_vector(std::size_t n, std::size_t i) const {
  Vector v(n, Scalar(0));
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == 0; });
}

}  // namespace cobarlab
