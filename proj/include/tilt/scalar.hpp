#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace tilt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base field of a session: the rationals (p == 0) or a prime field F_p.
struct Field {
  unsigned long p = 0;

  bool is_rational() const { return p == 0; }
  bool operator==(const Field&) const = default;
  std::string str() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

Field rationals();
Field prime_field(unsigned long p);

/// An exact field element. All arithmetic is exact; there is no floating
/// point anywhere in the library. Over F_p the value is kept as the
/// canonical integer representative in [0, p). Small fractions are stored
/// as machine integers; GMP is the overflow fallback.
class Scalar {
 public:
  Scalar() = default;  // zero over Q
  Scalar(Field f, long v) : field_(f), n_(v) { normalize_small(); }
  Scalar(Field f, const mpq_class& v);
  Scalar(Field f, long num, long den);

  Scalar(const Scalar& o)
      : field_(o.field_), n_(o.n_), d_(o.d_),
        big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
  Scalar(Scalar&&) = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      field_ = o.field_;
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Scalar& operator=(Scalar&&) = default;

  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }

  Field field() const { return field_; }
  /// The exact value as a rational (canonical representative over F_p).
  mpq_class value() const;
  bool is_zero() const { return big_ ? *big_ == 0 : n_ == 0; }
  bool is_one() const { return big_ ? *big_ == 1 : (n_ == 1 && d_ == 1); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  static Scalar make(Field f, __int128 num, __int128 den);  // canonicalizing
  void normalize_small();  // F_p reduction of n_/d_
  static Scalar from_big(Field f, mpq_class v);

  Field field_;
  long n_ = 0, d_ = 1;            // valid when !big_
  std::unique_ptr<mpq_class> big_;  // engaged only when the value needs it
};

}  // namespace tilt
