#include "hfk/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace hfk {

std::string state_str(State x) {
  std::string s = "{";
  bool first = true;
  for (int g = 0; g < 32; ++g) {
    if (!has(x, g)) continue;
    if (!first) s += ",";
    s += std::to_string(g);
    first = false;
  }
  return s + "}";
}

void Weight::set(int strand, int v) {
  if (v < 0 || v > 255) throw IntegrityError("weight out of range");
  h[strand - 1] = static_cast<std::uint8_t>(v);
}

Weight& Weight::operator+=(const Weight& o) {
  for (int i = 0; i < kMaxStrands; ++i) {
    int v = h[i] + o.h[i];
    if (v > 255) throw IntegrityError("weight overflow");
    h[i] = static_cast<std::uint8_t>(v);
  }
  return *this;
}

int Weight::total2() const {
  int t = 0;
  for (auto v : h) t += v;
  return t;
}

std::size_t Weight::hash() const {
  std::uint64_t a, b;
  static_assert(sizeof(h) == 16);
  __builtin_memcpy(&a, h.data(), 8);
  __builtin_memcpy(&b, h.data() + 8, 8);
  return std::hash<std::uint64_t>()(a * 0x9E3779B97F4A7C15ull ^ (b + 0x632BE59BD9B4E019ull));
}

Weight min_weight(State x, State y, int n) {
  Weight w;
  for (int i = 1; i <= 2 * n; ++i) w.set(i, std::abs(vcount(x, i) - vcount(y, i)));
  return w;
}

bool admissible_weight(State x, State y, const Weight& w, int n) {
  for (int i = 1; i <= 2 * n; ++i) {
    int d = std::abs(vcount(x, i) - vcount(y, i));
    if (w[i] < d || ((w[i] - d) & 1)) return false;
  }
  for (int i = 2 * n + 1; i <= kMaxStrands; ++i)
    if (w[i] != 0) return false;
  return true;
}

namespace {

// Is there an intermediate pair (y1, y2) with a relation generator g from y1 to y2 such that
// w >= w^{x,y1} + g + w^{y2,z}? kind 0: I_y U_i with y missing gaps i-1, i. kind 1: L_{i+1} L_i.
// kind 2: R_i R_{i+1}. Dynamic program over gaps from 2n down to 0 tracking v^{y1}.
bool killer_fits(int n, int k, State x, State z, const Weight& w, int kind, int i) {
  int forced_in = 0, forced_out = 0;
  int shift[kMaxStrands + 2] = {};
  int extra[kMaxStrands + 2] = {};
  if (kind == 0) {
    forced_out = (1 << (i - 1)) | (1 << i);
    extra[i] = 2;
  } else {
    extra[i] = extra[i + 1] = 1;
    if (kind == 1) {
      forced_in = 1 << (i + 1);
      forced_out = (1 << (i - 1)) | (1 << i);
      shift[i] = shift[i + 1] = -1;
    } else {
      forced_in = 1 << (i - 1);
      forced_out = (1 << i) | (1 << (i + 1));
      shift[i] = shift[i + 1] = 1;
    }
  }
  std::uint32_t reach = 1;  // bit c: c points chosen among gaps above
  for (int g = 2 * n; g >= 0; --g) {
    std::uint32_t nxt = 0;
    if (!(forced_in >> g & 1)) nxt |= reach;
    if (!(forced_out >> g & 1)) nxt |= reach << 1;
    if (g >= 1) {
      std::uint32_t ok = 0;
      int vx = vcount(x, g), vz = vcount(z, g);
      for (int c = 0; c <= k; ++c) {
        if (!(nxt >> c & 1)) continue;
        int c2 = c + shift[g];
        if (c2 < 0) continue;
        if (std::abs(vx - c) + extra[g] + std::abs(c2 - vz) <= w[g]) ok |= 1u << c;
      }
      nxt = ok;
    }
    reach = nxt & ((2u << k) - 1);
    if (!reach) return false;
  }
  return (reach >> k) & 1;
}

struct NzKey {
  State x, y;
  Weight w;
  int n;
  bool operator==(const NzKey& o) const = default;
};
struct NzHash {
  std::size_t operator()(const NzKey& k) const {
    return k.w.hash() ^ (std::size_t(k.x) * 0x100000001B3ull) ^ (std::size_t(k.y) << 20) ^ k.n;
  }
};

}  // namespace

bool is_nonzero_b(State x, State y, const Weight& w, int n) {
  thread_local std::unordered_map<NzKey, bool, NzHash> cache;
  NzKey key{x, y, w, n};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int k = popcount(x);
  bool nz = true;
  for (int i = 1; nz && i <= 2 * n; ++i) {
    if (killer_fits(n, k, x, y, w, 0, i)) nz = false;
    if (nz && i + 1 <= 2 * n && (killer_fits(n, k, x, y, w, 1, i) || killer_fits(n, k, x, y, w, 2, i)))
      nz = false;
  }
  if (cache.size() > (1u << 22)) cache.clear();
  cache.emplace(key, nz);
  return nz;
}

bool Matching::valid(int n) const {
  for (int i = 1; i <= 2 * n; ++i) {
    int j = partner[i];
    if (j < 1 || j > 2 * n || j == i || partner[j] != i) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= kMaxStrands; ++i)
    if (partner[i] > i) out.emplace_back(i, partner[i]);
  return out;
}

std::string Matching::str() const {
  std::string s = "{";
  bool first = true;
  for (auto [i, j] : pairs()) {
    if (!first) s += ",";
    s += "{" + std::to_string(i) + "," + std::to_string(j) + "}";
    first = false;
  }
  return s + "}";
}

std::vector<State> Ambient::states() const {
  std::vector<State> out;
  for (State x = 0; x < (State(1) << (2 * n + 1)); ++x)
    if (popcount(x) == k) out.push_back(x);
  return out;
}

bool multiply_pure(const Ambient& a, const Pure& p, const Pure& q, Pure& out, int& sign) {
  if (p.y != q.x || (p.cmask & q.cmask)) return false;
  Weight w = p.w + q.w;
  if (!is_nonzero_b(p.x, q.y, w, a.n)) return false;
  int inv = 0;
  for (int s = 0; s < 32; ++s)
    if (p.cmask >> s & 1) inv += std::popcount(q.cmask & ((std::uint32_t(1) << s) - 1));
  out = Pure{p.x, q.y, w, p.cmask | q.cmask};
  sign = (inv & 1) ? -1 : 1;
  return true;
}

Element Element::pure(const Ambient& a, Ring r, const Pure& e, Coeff c) {
  Element el(a, r);
  if (b_exists(e.x, e.y, e.w, a.n)) el.add(e, c);
  return el;
}

Element Element::idempotent(const Ambient& a, Ring r, State x) { return pure(a, r, Pure{x, x, {}, 0}); }

Element Element::gen_L(const Ambient& a, Ring r, State x, int i) {
  if (!has(x, i) || has(x, i - 1)) return Element(a, r);
  State y = (x & ~bit(i)) | bit(i - 1);
  return pure(a, r, Pure{x, y, min_weight(x, y, a.n), 0});
}

Element Element::gen_R(const Ambient& a, Ring r, State x, int i) {
  if (!has(x, i - 1) || has(x, i)) return Element(a, r);
  State y = (x & ~bit(i - 1)) | bit(i);
  return pure(a, r, Pure{x, y, min_weight(x, y, a.n), 0});
}

Element Element::gen_U(const Ambient& a, Ring r, State x, int i) {
  Weight w;
  w.set(i, 2);
  return pure(a, r, Pure{x, x, w, 0});
}

Element Element::gen_C(const Ambient& a, Ring r, State x, int i) {
  int j = a.m.of(i);
  if (j == 0) return Element(a, r);
  return pure(a, r, Pure{x, x, {}, std::uint32_t(1) << std::min(i, j)});
}

void Element::add(const Pure& e, Coeff c) {
  c = ring_.norm(c);
  if (c != 0) terms_.push_back(Term{e, c});
  normalize();
}

void Element::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().e == t.e)
      out.back().c = ring_.add(out.back().c, t.c);
    else
      out.push_back(t);
    if (out.back().c == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

Element& Element::operator+=(const Element& o) {
  if (!(amb_ == o.amb_)) throw std::invalid_argument("ambient mismatch");
  for (auto& t : o.terms_) terms_.push_back(t);
  normalize();
  return *this;
}

Element Element::operator*(const Element& o) const {
  if (!(amb_ == o.amb_)) throw std::invalid_argument("ambient mismatch");
  Element r(amb_, ring_);
  for (auto& s : terms_)
    for (auto& t : o.terms_) {
      Pure e;
      int sg;
      if (multiply_pure(amb_, s.e, t.e, e, sg)) r.terms_.push_back(Term{e, ring_.mul(ring_.mul(s.c, t.c), sg)});
    }
  r.normalize();
  return r;
}

Element Element::scaled(Coeff c) const {
  Element r(amb_, ring_);
  for (auto& t : terms_) r.terms_.push_back(Term{t.e, ring_.mul(t.c, c)});
  r.normalize();
  return r;
}

Element Element::differential() const {
  Element r(amb_, ring_);
  for (auto& t : terms_) {
    int j = 0;
    for (int s = 0; s < 32; ++s) {
      if (!(t.e.cmask >> s & 1)) continue;
      int u = s, v = amb_.m.of(s);
      Pure e = t.e;
      e.cmask &= ~(std::uint32_t(1) << s);
      e.w.add(u, 2);
      e.w.add(v, 2);
      if (is_nonzero_b(e.x, e.y, e.w, amb_.n)) r.terms_.push_back(Term{e, ring_.mul(t.c, (j & 1) ? -1 : 1)});
      ++j;
    }
  }
  r.normalize();
  return r;
}

Element Element::reduce_mod(int p) const {
  Element r(amb_, Ring{p});
  for (auto& t : terms_) r.terms_.push_back(Term{t.e, Ring{p}.norm(t.c)});
  r.normalize();
  return r;
}

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    Coeff c = terms_[i].c;
    if (i > 0) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    if (std::abs(c) != 1) s += std::to_string(std::abs(c)) + "*";
    s += pure_str(amb_, terms_[i].e);
  }
  return s;
}

Grading gradings(const Ambient& a, const Pure& e) {
  Grading g;
  g.alex = e.w;
  int nc = 0;
  for (int s = 0; s < 32; ++s) {
    if (!(e.cmask >> s & 1)) continue;
    ++nc;
    g.alex.add(s, 2);
    g.alex.add(a.m.of(s), 2);
  }
  g.delta2 = -e.w.total2() - 2 * nc;
  g.exterior = nc & 1;
  return g;
}

int alex_scalar2(const Weight& w, std::uint32_t upwards, int n) {
  int s = 0;
  for (int i = 1; i <= 2 * n; ++i) s += (upwards >> i & 1) ? -w[i] : w[i];
  return s;
}

int alex_scalar2(const Ambient& a, const Pure& e, std::uint32_t upwards) {
  return alex_scalar2(gradings(a, e).alex, upwards, a.n);
}

std::string pure_str(const Ambient& a, const Pure& e) {
  Weight mw = min_weight(e.x, e.y, a.n);
  std::string mid;
  for (int i = 1; i <= 2 * a.n; ++i) {
    int m = (e.w[i] - mw[i]) / 2;
    if (m == 0) continue;
    if (!mid.empty()) mid += " ";
    mid += "U" + std::to_string(i);
    if (m > 1) mid += "^" + std::to_string(m);
  }
  for (int s = 0; s < 32; ++s) {
    if (!(e.cmask >> s & 1)) continue;
    if (!mid.empty()) mid += " ";
    mid += "C{" + std::to_string(s) + "," + std::to_string(a.m.of(s)) + "}";
  }
  if (mid.empty()) mid = "1";
  return "[" + state_str(e.x) + "|" + mid + "|" + state_str(e.y) + "]";
}

}  // namespace hfk
