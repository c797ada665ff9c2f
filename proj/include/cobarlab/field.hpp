#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cobarlab {

/// Exact field element. Over the rationals this is a reduced fraction; over
/// GF(p) it is an integer residue in [0, p). The owning FieldSpec keeps the
/// representation canonical.
using Scalar = mpq_class;

/// Dense coordinate vector with respect to some chosen basis.
using Vector = std::vector<Scalar>;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldKind { rationals, prime };

/// The ground field of a computation: either Q or GF(p) with p < 2^31.
class FieldSpec {
 public:
  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::uint64_t p);

  FieldKind kind() const { return kind_; }
  bool is_prime() const { return kind_ == FieldKind::prime; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }

  Scalar normalize(const Scalar& x) const;
  Scalar from_int(long v) const { return normalize(Scalar(v)); }
  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  /// Accepts "n", "-n" and "a/b".
  Scalar parse(std::string_view text) const;
  std::string format(const Scalar& x) const;
  std::string name() const;

  Vector zeros(std::size_t n) const { return Vector(n, Scalar(0)); }
  Vector unit_vector(std::size_t n, std::size_t i) const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  FieldKind kind_ = FieldKind::rationals;
  std::uint32_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);

bool is_zero(const Vector& v);

}  // namespace cobarlab
