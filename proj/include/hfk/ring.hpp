#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hfk {

using Coeff = std::int64_t;

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficient ring: p == 0 is Z, p == 2 is F2, odd prime p is F_p.
struct Ring {
  int p = 2;

  bool is_field() const { return p != 0; }
  bool is_z() const { return p == 0; }
  bool is_f2() const { return p == 2; }

  Coeff norm(Coeff a) const {
    if (p == 0) return a;
    a %= p;
    return a < 0 ? a + p : a;
  }
  Coeff add(Coeff a, Coeff b) const {
    if (p == 0) {
      Coeff r;
      if (__builtin_add_overflow(a, b, &r)) throw IntegrityError("integer coefficient overflow");
      return r;
    }
    return norm(a + b);
  }
  Coeff sub(Coeff a, Coeff b) const { return add(a, neg(b)); }
  Coeff neg(Coeff a) const { return p == 0 ? -a : norm(-a); }
  Coeff mul(Coeff a, Coeff b) const {
    if (p == 0) {
      Coeff r;
      if (__builtin_mul_overflow(a, b, &r)) throw IntegrityError("integer coefficient overflow");
      return r;
    }
    return static_cast<Coeff>((static_cast<__int128>(a) * b) % p + p) % p;
  }
  bool invertible(Coeff a) const {
    if (p == 0) return a == 1 || a == -1;
    return norm(a) != 0;
  }
  Coeff inv(Coeff a) const {
    if (p == 0) {
      if (a == 1 || a == -1) return a;
      throw IntegrityError("non-invertible pivot");
    }
    a = norm(a);
    if (a == 0) throw IntegrityError("non-invertible pivot");
    Coeff r = 1, b = a, e = p - 2;
    while (e > 0) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  Coeff sign(int parity) const { return norm((parity & 1) ? -1 : 1); }

  std::string name() const {
    if (p == 0) return "z";
    if (p == 2) return "f2";
    return "fp:" + std::to_string(p);
  }
  static Ring parse(const std::string& s);
};

}  // namespace hfk
