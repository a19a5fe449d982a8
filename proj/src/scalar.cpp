#include "tilt/scalar.hpp"

#include <climits>

namespace tilt {

Field rationals() { return Field{0}; }

Field prime_field(unsigned long p) {
  if (p < 2) throw Error("prime_field: p must be a prime >= 2");
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error("prime_field: " + std::to_string(p) + " is not prime");
  if (p > (unsigned long)LONG_MAX) throw Error("prime_field: p too large");
  return Field{p};
}

namespace {

void check_same(const Field& a, const Field& b) {
  if (!(a == b)) throw Error("scalar arithmetic across different fields");
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_long(__int128 v) { return v >= LONG_MIN && v <= LONG_MAX; }

mpz_class mpz_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  mpz_class hi((unsigned long)(u >> 64));
  mpz_class out = (hi << 64) + mpz_class((unsigned long)u);
  if (neg) out = -out;
  return out;
}

long mod_p(__int128 v, long p) {
  long r = (long)(v % p);
  return r < 0 ? r + p : r;
}

long inv_mod_p(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw Error("scalar: non-invertible element in F_p");
  return t < 0 ? t + p : t;
}

}  // namespace

Scalar Scalar::make(Field f, __int128 num, __int128 den) {
  Scalar out;
  out.field_ = f;
  if (den == 0) throw Error("scalar: zero denominator");
  if (f.p != 0) {
    long p = (long)f.p;
    long n = mod_p(num, p), d = mod_p(den, p);
    if (d == 0) throw Error("scalar: denominator divisible by p in F_p");
    out.n_ = (long)(((__int128)n * inv_mod_p(d, p)) % p);
    return out;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return out;
  __int128 g = gcd128(num, den);
  num /= g;
  den /= g;
  if (fits_long(num) && fits_long(den)) {
    out.n_ = (long)num;
    out.d_ = (long)den;
  } else {
    out.big_ = std::make_unique<mpq_class>(mpq_class(mpz_from_i128(num)) /
                                           mpq_class(mpz_from_i128(den)));
  }
  return out;
}

void Scalar::normalize_small() {
  if (field_.p == 0) return;
  long p = (long)field_.p;
  n_ = mod_p(n_, p);
  d_ = 1;
}

Scalar Scalar::from_big(Field f, mpq_class v) {
  if (f.p != 0) {
    mpz_class p((unsigned long)f.p);
    mpz_class num = v.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = v.get_den() % p;
    if (den == 0) throw Error("scalar: denominator divisible by p in F_p");
    if (den != 1) {
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error("scalar: non-invertible denominator in F_p");
      num = (num * inv) % p;
    }
    Scalar out;
    out.field_ = f;
    out.n_ = (long)num.get_si();
    out.d_ = 1;
    return out;
  }
  v.canonicalize();
  Scalar out;
  out.field_ = f;
  if (v.get_num().fits_slong_p() && v.get_den().fits_slong_p()) {
    out.n_ = v.get_num().get_si();
    out.d_ = v.get_den().get_si();
  } else {
    out.big_ = std::make_unique<mpq_class>(std::move(v));
  }
  return out;
}

Scalar::Scalar(Field f, const mpq_class& v) { *this = from_big(f, v); }

Scalar::Scalar(Field f, long num, long den) { *this = make(f, num, den); }

mpq_class Scalar::value() const {
  if (big_) return *big_;
  return mpq_class(n_, d_);
}

Scalar Scalar::operator-() const {
  if (big_) return from_big(field_, mpq_class(-*big_));
  if (field_.p != 0) return Scalar(field_, n_ == 0 ? 0 : (long)field_.p - n_);
  Scalar out = *this;
  out.n_ = -out.n_;
  return out;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(field_, o.field_);
  if (!big_ && !o.big_) {
    if (field_.p != 0) {
      Scalar out;
      out.field_ = field_;
      out.n_ = (n_ + o.n_) % (long)field_.p;
      return out;
    }
    if (d_ == 1 && o.d_ == 1) {
      __int128 s = (__int128)n_ + o.n_;
      if (fits_long(s)) {
        Scalar out;
        out.field_ = field_;
        out.n_ = (long)s;
        return out;
      }
    }
    return make(field_, (__int128)n_ * o.d_ + (__int128)o.n_ * d_, (__int128)d_ * o.d_);
  }
  return from_big(field_, mpq_class(value() + o.value()));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(field_, o.field_);
  if (!big_ && !o.big_) {
    if (field_.p != 0) {
      Scalar out;
      out.field_ = field_;
      out.n_ = (long)(((__int128)n_ * o.n_) % (long)field_.p);
      return out;
    }
    if (n_ == 0 || o.n_ == 0) return zero(field_);
    if (d_ == 1 && o.d_ == 1) {
      __int128 p = (__int128)n_ * o.n_;
      if (fits_long(p)) {
        Scalar out;
        out.field_ = field_;
        out.n_ = (long)p;
        return out;
      }
    }
    return make(field_, (__int128)n_ * o.n_, (__int128)d_ * o.d_);
  }
  return from_big(field_, mpq_class(value() * o.value()));
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same(field_, o.field_);
  return *this * o.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("scalar: division by zero");
  if (big_) {
    if (field_.p == 0) return from_big(field_, mpq_class(1 / *big_));
    throw Error("scalar: inconsistent F_p representation");
  }
  if (field_.p != 0) {
    Scalar out;
    out.field_ = field_;
    out.n_ = inv_mod_p(n_, (long)field_.p);
    return out;
  }
  return make(field_, d_, n_);
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(field_, o.field_);
  if (!big_ && !o.big_) return n_ == o.n_ && d_ == o.d_;
  return value() == o.value();
}

std::string Scalar::str() const {
  if (big_) return big_->get_str();
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

}  // namespace tilt
