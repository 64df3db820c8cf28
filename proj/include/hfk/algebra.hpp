#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hfk/ring.hpp"

namespace hfk {

constexpr int kMaxStrands = 16;

// Idempotent state: bit g set means gap g in {0..2n} is occupied.
using State = std::uint32_t;

inline int popcount(State x) { return std::popcount(x); }
inline bool has(State x, int g) { return g >= 0 && ((x >> g) & 1u); }
inline State bit(int g) { return State(1) << g; }

// v^x_i = #{g in x : g >= i}.
inline int vcount(State x, int i) { return std::popcount(x >> i); }

std::string state_str(State x);

// Weight vector over strands 1..2n, stored doubled (h[i-1] = 2 w_i).
struct Weight {
  std::array<std::uint8_t, kMaxStrands> h{};

  int operator[](int strand) const { return h[strand - 1]; }
  void set(int strand, int v);
  void add(int strand, int v) { set(strand, (*this)[strand] + v); }
  Weight& operator+=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  bool operator==(const Weight& o) const = default;
  auto operator<=>(const Weight& o) const = default;
  int total2() const;  // doubled total weight
  bool zero() const { return total2() == 0; }
  std::size_t hash() const;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const { return w.hash(); }
};

// w^{x,y}, doubled.
Weight min_weight(State x, State y, int n);

// w - w^{x,y} is a nonnegative integer vector.
bool admissible_weight(State x, State y, const Weight& w, int n);

// Whether phi^{x,y}(U^{w - w^{x,y}}) survives in B(2n,k). Requires admissible_weight.
bool is_nonzero_b(State x, State y, const Weight& w, int n);

// Full check: admissible and nonzero.
inline bool b_exists(State x, State y, const Weight& w, int n) {
  return admissible_weight(x, y, w, n) && is_nonzero_b(x, y, w, n);
}

// Matching on strands 1..2n; partner[i] = j for {i,j} in M, 0 if unused.
struct Matching {
  std::array<std::int8_t, kMaxStrands + 1> partner{};

  int of(int i) const { return partner[i]; }
  void pair(int i, int j) {
    partner[i] = static_cast<std::int8_t>(j);
    partner[j] = static_cast<std::int8_t>(i);
  }
  bool contains(int i, int j) const { return partner[i] == j; }
  bool valid(int n) const;
  bool operator==(const Matching& o) const = default;
  std::vector<std::pair<int, int>> pairs() const;
  std::string str() const;
};

struct Ambient {
  int n = 0;
  int k = 0;
  Matching m;
  bool operator==(const Ambient& o) const = default;
  std::vector<State> states() const;
};

// Pure element b * C_{p1} ... C_{pr} with C-pairs sorted by smaller strand; cmask bit i marks
// the pair whose smaller strand is i.
struct Pure {
  State x = 0, y = 0;
  Weight w;
  std::uint32_t cmask = 0;
  bool operator==(const Pure& o) const = default;
  auto operator<=>(const Pure& o) const = default;
};

struct Term {
  Pure e;
  Coeff c = 1;
};

// Normalized sum of pure elements over one ambient.
class Element {
 public:
  Element() = default;
  Element(const Ambient& a, Ring r) : amb_(a), ring_(r) {}
  static Element pure(const Ambient& a, Ring r, const Pure& e, Coeff c = 1);
  static Element idempotent(const Ambient& a, Ring r, State x);
  // Elementary generators; zero element when the idempotent does not admit them.
  static Element gen_L(const Ambient& a, Ring r, State x, int i);
  static Element gen_R(const Ambient& a, Ring r, State x, int i);
  static Element gen_U(const Ambient& a, Ring r, State x, int i);
  static Element gen_C(const Ambient& a, Ring r, State x, int i);

  const std::vector<Term>& terms() const { return terms_; }
  const Ambient& ambient() const { return amb_; }
  Ring ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Pure& e, Coeff c);
  Element& operator+=(const Element& o);
  Element operator*(const Element& o) const;
  Element scaled(Coeff c) const;
  Element differential() const;
  Element reduce_mod(int p) const;
  bool operator==(const Element& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  void normalize();
  Ambient amb_;
  Ring ring_;
  std::vector<Term> terms_;
  friend bool operator==(const Term& a, const Term& b);
};

inline bool operator==(const Term& a, const Term& b) { return a.e == b.e && a.c == b.c; }

// Product of pure elements; returns false if zero. Sign is +1/-1 from C reordering.
bool multiply_pure(const Ambient& a, const Pure& p, const Pure& q, Pure& out, int& sign);

struct Grading {
  int delta2 = 0;  // doubled Delta
  Weight alex;     // doubled Alexander multigrading (C factors contribute e_i + e_j)
  int exterior = 0;
};

Grading gradings(const Ambient& a, const Pure& e);

// Doubled scalar Alexander grading of a doubled multigrading vector given the Upwards mask
// (bit s set for strand s pointing up).
int alex_scalar2(const Weight& w, std::uint32_t upwards, int n);
int alex_scalar2(const Ambient& a, const Pure& e, std::uint32_t upwards);

std::string pure_str(const Ambient& a, const Pure& e);

}  // namespace hfk
