#include "hfk/bimodules.hpp"

#include <algorithm>
#include <functional>

namespace hfk {

Matching transpose_matching(const Matching& m, int i) {
  auto sw = [i](int j) { return j == i ? i + 1 : j == i + 1 ? i : j; };
  Matching out;
  for (int j = 1; j <= kMaxStrands; ++j)
    if (m.of(j)) out.partner[sw(j)] = static_cast<std::int8_t>(sw(m.of(j)));
  return out;
}

LocalElt local_type(const Pure& a, int i) {
  int hi = a.w[i], hj = a.w[i + 1];
  LocalElt t;
  if ((hi & 1) && (hj & 1)) {
    t.e = vcount(a.x, i + 1) < vcount(a.y, i + 1) ? kR2R1 : kL1L2;
    t.p = (hi - 1) / 2;
    t.q = (hj - 1) / 2;
  } else if (hj & 1) {
    t.e = vcount(a.x, i + 1) < vcount(a.y, i + 1) ? kR2 : kL2;
    t.p = hi / 2;
    t.q = (hj - 1) / 2;
  } else if (hi & 1) {
    t.e = vcount(a.x, i) < vcount(a.y, i) ? kR1 : kL1;
    t.p = (hi - 1) / 2;
    t.q = hj / 2;
  } else {
    t.e = kOne;
    t.p = hi / 2;
    t.q = hj / 2;
  }
  return t;
}

std::string local_str(const LocalElt& t) {
  static const char* names[] = {"1", "L1", "R1", "L2", "R2", "L1L2", "R2R1"};
  std::string s = names[t.e];
  if (t.p) s += " U1^" + std::to_string(t.p);
  if (t.q) s += " U2^" + std::to_string(t.q);
  return s;
}

namespace {

struct BaseEntry {
  int x, ein, pin, qin, eout, pout, qout, y;
};

constexpr BaseEntry kBase[] = {
    {kN, kOne, 0, 0, kOne, 0, 0, kN},   {kN, kL1L2, 0, 0, kL1L2, 0, 0, kN}, {kN, kR2R1, 0, 0, kR2R1, 0, 0, kN},
    {kN, kL1, 0, 0, kOne, 0, 1, kW},    {kN, kR2, 0, 0, kR2R1, 0, 0, kW},   {kN, kR2, 0, 0, kOne, 1, 0, kE},
    {kN, kL1, 0, 0, kL1L2, 0, 0, kE},   {kW, kOne, 0, 0, kOne, 0, 0, kW},   {kW, kR1, 0, 0, kOne, 0, 0, kN},
    {kW, kL2, 1, 0, kL1L2, 0, 0, kN},   {kW, kOne, 1, 0, kL1L2, 0, 0, kE},  {kE, kOne, 0, 0, kOne, 0, 0, kE},
    {kE, kL2, 0, 0, kOne, 0, 0, kN},    {kE, kR1, 0, 1, kR2R1, 0, 0, kN},   {kE, kOne, 0, 1, kR2R1, 0, 0, kW},
    {kS, kOne, 0, 0, kOne, 0, 0, kS},
};

}  // namespace

bool local_delta2(int xt, const LocalElt& a, const LocalElt& b, int yt) {
  for (const auto& be : kBase) {
    if (be.x != xt || be.y != yt || be.ein != a.e || be.eout != b.e) continue;
    int di = a.p - be.pin, dj = a.q - be.qin, dop = b.p - be.pout, doq = b.q - be.qout;
    if (di < 0 || dj < 0 || dop != dj || doq != di) continue;
    if (xt == kW && di < dj) continue;
    if (xt == kE && dj < di) continue;
    if (xt == kS && di != dj) continue;
    return true;
  }
  return false;
}

int local_delta3(const LocalElt& a1, const LocalElt& a2, const LocalElt& b, int yt) {
  auto L = [](int e, int p, int q) { return LocalElt{e, p, q}; };
  bool hit = false;
  auto pair_is = [&](LocalElt x1, LocalElt x2) { return a1 == x1 && a2 == x2; };
  if (yt == kE && b.e == kR1 && b.q == 0) {
    // R1 U1^t (x) E from (R1, R2 U2^t)
    int t = b.p;
    hit = pair_is(L(kR1, 0, 0), L(kR2, 0, t));
  } else if (yt == kE && b.e == kL2) {
    int t = b.p, n = b.q;
    if (n < t)
      hit = pair_is(L(kOne, n + 1, 0), L(kOne, 0, t)) || pair_is(L(kR1, n, 0), L(kL1, 0, t)) ||
            pair_is(L(kL2, n + 1, 0), L(kR2, 0, t - 1));
    else if (t >= 1)
      hit = pair_is(L(kOne, 0, t), L(kOne, n + 1, 0)) || pair_is(L(kR1, 0, t), L(kL1, n, 0)) ||
            pair_is(L(kL2, 0, t - 1), L(kR2, n + 1, 0));
  } else if (yt == kW && b.e == kL2 && b.p == 0) {
    int n = b.q;
    hit = pair_is(L(kL2, 0, 0), L(kL1, n, 0));
  } else if (yt == kW && b.e == kR1) {
    int t = b.p, n = b.q;
    if (t < n)
      hit = pair_is(L(kOne, 0, t + 1), L(kOne, n, 0)) || pair_is(L(kL2, 0, t), L(kR2, n, 0)) ||
            pair_is(L(kR1, 0, t + 1), L(kL1, n - 1, 0));
    else if (n >= 1)
      hit = pair_is(L(kOne, n, 0), L(kOne, 0, t + 1)) || pair_is(L(kL2, n, 0), L(kR2, 0, t)) ||
            pair_is(L(kR1, n - 1, 0), L(kL1, 0, t + 1));
  }
  if (!hit && yt == kN && b.e == kL2) {
    int t = b.p, n = b.q;
    if (n < t)
      hit = pair_is(L(kOne, n + 1, 0), L(kL2, 0, t)) || pair_is(L(kR1, n, 0), L(kL1L2, 0, t)) ||
            pair_is(L(kL2, n + 1, 0), L(kOne, 0, t));
    else if (t >= 1)
      hit = pair_is(L(kL2, 0, t), L(kOne, n + 1, 0)) || pair_is(L(kOne, 0, t), L(kL2, n + 1, 0)) ||
            pair_is(L(kR1, 0, t), L(kL1L2, n, 0));
    else
      hit = pair_is(L(kL2, 0, 0), L(kOne, n + 1, 0));
  }
  if (!hit && yt == kN && b.e == kR1) {
    int t = b.p, n = b.q;
    if (t < n)
      hit = pair_is(L(kOne, 0, t + 1), L(kR1, n, 0)) || pair_is(L(kL2, 0, t), L(kR2R1, n, 0)) ||
            pair_is(L(kR1, 0, t + 1), L(kOne, n, 0));
    else if (n >= 1)
      hit = pair_is(L(kR1, n, 0), L(kOne, 0, t + 1)) || pair_is(L(kOne, n, 0), L(kR1, 0, t + 1)) ||
            pair_is(L(kL2, n, 0), L(kR2R1, 0, t));
    else
      hit = pair_is(L(kR1, 0, 0), L(kOne, 0, t + 1));
  }
  if (!hit) return 0;
  // sign: positive when U2 dominates the second input, negative when U1 does
  int w1 = 2 * a2.p + (a2.e == kL1 || a2.e == kR1 || a2.e == kL1L2 || a2.e == kR2R1);
  int w2 = 2 * a2.q + (a2.e == kL2 || a2.e == kR2 || a2.e == kL1L2 || a2.e == kR2R1);
  if (w1 == w2) throw IntegrityError("ambiguous sign in triple crossing action");
  return w2 > w1 ? 1 : -1;
}

void Bimodule::arrows(const BGen& g, const DStructure& X, int y, std::vector<TensorArrow>& out) const {
  const int lmax = max_inputs(g);
  std::vector<Pure> seq;
  std::function<void(int, Coeff)> walk = [&](int cur, Coeff c) {
    for (auto& t : gamma(g, seq)) {
      if (!seq.empty() && t.target.right != X.gen(cur).idem) continue;
      out.push_back(TensorArrow{t.target.label, t.target.left, cur, t.b.w, X.ring.mul(c, t.sign)});
    }
    if (static_cast<int>(seq.size()) >= lmax) return;
    for (auto& [k, v] : X.out(cur)) {
      seq.push_back(Pure{X.gen(cur).idem, X.gen(k.to).idem, k.w, 0});
      walk(k.to, X.ring.mul(c, v));
      seq.pop_back();
    }
  };
  walk(y, 1);
}

std::string Bimodule::name() const {
  switch (kind) {
    case BimoduleKind::Pos: return "Pos^" + std::to_string(pos);
    case BimoduleKind::Neg: return "Neg^" + std::to_string(pos);
    case BimoduleKind::Max: return "Max^" + std::to_string(pos);
    case BimoduleKind::Min: return "Min^" + std::to_string(pos);
  }
  return "?";
}

namespace {

// Local quarter-unit multigradings of N, S, W, E at strands (i, i+1) for Pos.
constexpr int kGq[4][2] = {{1, 1}, {-1, -1}, {1, -1}, {-1, 1}};

class Crossing : public Bimodule {
 public:
  bool neg = false;
  int i = 1;

  BGen make(int label, State r) const {
    BGen g;
    g.label = label;
    g.right = r;
    switch (label) {
      case kN: g.left = r; break;
      case kS: g.left = r; break;
      case kW: g.left = (r & ~bit(i - 1)) | bit(i); break;
      case kE: g.left = (r & ~bit(i + 1)) | bit(i); break;
    }
    int s1 = (out_upwards >> i & 1) ? -1 : 1, s2 = (out_upwards >> (i + 1) & 1) ? -1 : 1;
    int d = (label == kW || label == kE) ? 1 : 0;
    int a = (kGq[label][0] * s1 + kGq[label][1] * s2) / 2;
    g.delta2 = neg ? -d : d;
    g.alex2 = neg ? -a : a;
    g.ext = label == kS ? 1 : 0;
    return g;
  }

  std::vector<BGen> generators(State r) const override {
    std::vector<BGen> gs;
    if (has(r, i)) {
      gs.push_back(make(kN, r));
    } else {
      gs.push_back(make(kS, r));
      if (has(r, i - 1)) gs.push_back(make(kW, r));
      if (has(r, i + 1)) gs.push_back(make(kE, r));
    }
    return gs;
  }

  // Positive crossing operation delta^1_{l+1}(X, a_1..a_l) on B inputs, l in {1,2}.
  void pos_delta(const BGen& X, const std::vector<Pure>& a, std::vector<GammaTerm>& res) const {
    const int l = static_cast<int>(a.size());
    if (l == 2 && X.label != kS) return;
    Weight sum;
    for (auto& e : a) sum += e.w;
    LocalElt t1 = local_type(a[0], i);
    LocalElt t2 = l == 2 ? local_type(a[1], i) : LocalElt{};
    for (const BGen& Y : generators(a.back().y)) {
      Weight hb = sum;
      int hi = (kGq[X.label][0] - kGq[Y.label][0]) / 2 + sum[i + 1];
      int hj = (kGq[X.label][1] - kGq[Y.label][1]) / 2 + sum[i];
      if (hi < 0 || hj < 0) continue;
      hb.set(i, hi);
      hb.set(i + 1, hj);
      Pure b{X.left, Y.left, hb, 0};
      if (!b_exists(b.x, b.y, b.w, out.n)) continue;
      LocalElt tb = local_type(b, i);
      int s = 0;
      if (l == 1) s = local_delta2(X.label, t1, tb, Y.label) ? 1 : 0;
      else s = local_delta3(t1, t2, tb, Y.label);
      if (s) res.push_back(GammaTerm{s, b, Y});
    }
  }

  Pure idem_move(State from, State to, int extra_strand) const {
    Weight w = min_weight(from, to, out.n);
    if (extra_strand) w.add(extra_strand, 2);
    return Pure{from, to, w, 0};
  }

  std::vector<GammaTerm> gamma(const BGen& g, const std::vector<Pure>& betas) const override {
    std::vector<GammaTerm> res;
    const bool far_pair = !in.m.contains(i, i + 1);
    const int alpha = in.m.of(i), beta = in.m.of(i + 1);
    auto push = [&](int s, const Pure& b, const BGen& t) {
      if (b_exists(b.x, b.y, b.w, out.n)) res.push_back(GammaTerm{s, b, t});
    };
    if (betas.empty()) {
      State r = g.right;
      if (!neg) {
        if (g.label == kW) push(-1, idem_move(g.left, r, 0), make(kS, r));
        if (g.label == kE) push(1, idem_move(g.left, r, 0), make(kS, r));
        if (g.label == kS && far_pair) {
          if (has(r, i - 1)) {
            BGen w = make(kW, r);
            push(-1, idem_move(r, w.left, beta), w);
          }
          if (has(r, i + 1)) {
            BGen e = make(kE, r);
            push(1, idem_move(r, e.left, alpha), e);
          }
        }
      } else {
        if (g.label == kS) {
          if (has(r, i - 1)) {
            BGen w = make(kW, r);
            push(neg_sign_d1w, idem_move(r, w.left, 0), w);
          }
          if (has(r, i + 1)) {
            BGen e = make(kE, r);
            push(neg_sign_d1e, idem_move(r, e.left, 0), e);
          }
        }
        if (far_pair && g.label == kW) push(neg_sign_cw, idem_move(g.left, r, beta), make(kS, r));
        if (far_pair && g.label == kE) push(neg_sign_ce, idem_move(g.left, r, alpha), make(kS, r));
      }
      return res;
    }
    const int l = static_cast<int>(betas.size());
    if (!neg) {
      if (l > 2) return res;
      pos_delta(g, betas, res);
      if ((l * g.ext) & 1)
        for (auto& t : res) t.sign = -t.sign;
      return res;
    }
    if (l > 2) return res;
    std::vector<Pure> rev;
    for (int j = l - 1; j >= 0; --j) rev.push_back(Pure{betas[j].y, betas[j].x, betas[j].w, 0});
    for (const BGen& X : generators(betas.back().y)) {
      std::vector<GammaTerm> tmp;
      pos_delta(X, rev, tmp);
      for (auto& t : tmp) {
        if (!(t.target == g)) continue;
        int s = t.sign * neg_sign(l, g, X);
        res.push_back(GammaTerm{s, Pure{t.b.y, t.b.x, t.b.w, 0}, X});
      }
    }
    return res;
  }

  // Opposite-module sign on reversed sequences of length l.
  static int neg_sign(int l, const BGen& src, const BGen&) { return (l * src.ext) & 1 ? -1 : 1; }

  static constexpr int neg_sign_d1w = -1, neg_sign_d1e = 1;
  static constexpr int neg_sign_cw = -1, neg_sign_ce = 1;

 protected:
  int max_inputs(const BGen& g) const override { return neg ? 2 : (g.label == kS ? 2 : 1); }
};

class MaxBim : public Bimodule {
 public:
  int c = 1;

  State phi(State r) const {
    State low = r & ((State(1) << c) - 1);
    State high = r >> c;
    return low | (high << (c + 2));
  }
  int strand_map(int s) const { return s < c ? s : s + 2; }

  BGen make(int label, State r) const {
    BGen g;
    g.label = label;
    g.right = r;
    State p = phi(r);
    if (label == kMaxY) g.left = (p & ~bit(c - 1)) | bit(c) | bit(c + 1);
    else g.left = p | bit(c);
    g.ext = popcount(g.left & ((State(1) << c) - 1)) & 1;
    return g;
  }

  std::vector<BGen> generators(State r) const override {
    if (has(r, c - 1)) return {make(kMaxX, r), make(kMaxY, r)};
    return {make(kMaxZ, r)};
  }

  std::vector<GammaTerm> gamma(const BGen& g, const std::vector<Pure>& betas) const override {
    std::vector<GammaTerm> res;
    if (betas.empty()) {
      if (g.label == kMaxX) {
        BGen t = make(kMaxY, g.right);
        res.push_back(GammaTerm{1, Pure{g.left, t.left, min_weight(g.left, t.left, out.n), 0}, t});
      } else if (g.label == kMaxY) {
        BGen t = make(kMaxX, g.right);
        res.push_back(GammaTerm{1, Pure{g.left, t.left, min_weight(g.left, t.left, out.n), 0}, t});
      }
      return res;
    }
    if (betas.size() != 1) return res;
    const Pure& a = betas[0];
    Weight h;
    for (int s = 1; s <= 2 * in.n; ++s) h.set(strand_map(s), a.w[s]);
    for (const BGen& z : generators(a.y)) {
      if (!b_exists(g.left, z.left, h, out.n)) continue;
      res.push_back(GammaTerm{g.ext ? -1 : 1, Pure{g.left, z.left, h, 0}, z});
    }
    if (res.size() > 1) throw IntegrityError("maximum bimodule produced two targets for one input");
    return res;
  }

 protected:
  int max_inputs(const BGen&) const override { return 1; }
};

int eta(int j) { return (j % 4 == 2 || j % 4 == 3) ? 1 : 0; }

class MinBim : public Bimodule {
 public:
  int alpha = 0, beta = 0;  // output strands matched to input strands 1 and 2

  static bool preferred(State r) {
    State low = r & 7u;
    return low == 1u || low == 4u || low == 5u;
  }
  static State psi(State r) {
    State high = r >> 3;  // gaps >= 3 move down by 2
    State out = high << 1;
    if ((r & 7u) == 5u) out |= 1u;
    return out;
  }

  BGen make(State r) const {
    BGen g;
    g.label = has(r, 0) ? kXL1 : kYR2;
    g.right = r;
    g.left = psi(r);
    g.ext = has(r, 0) ? 1 : 0;
    return g;
  }

  std::vector<BGen> generators(State r) const override {
    if (!preferred(r)) return {};
    return {make(r)};
  }

  enum Vertex { VXL1, VX, VY, VYR2 };

  // One edge of the path graph; returns false if the element labels no edge.
  static bool step(Vertex v, const Pure& a, Vertex& nv, int& m, bool& c_one) {
    int h1 = a.w[1], h2 = a.w[2];
    switch (v) {
      case VXL1:
        if (h2) return false;
        c_one = false;
        if (h1 & 1) { nv = VY; m = (h1 - 1) / 2; }
        else { nv = VXL1; m = h1 / 2; }
        return true;
      case VX:
        if (h2 || h1 == 0) return false;
        c_one = false;
        if (h1 & 1) { nv = VXL1; m = (h1 - 1) / 2; }
        else { nv = VY; m = h1 / 2 - 1; }
        return true;
      case VY:
        if (h1 || h2 == 0) return false;
        c_one = true;
        if (h2 & 1) { nv = VYR2; m = (h2 - 1) / 2; }
        else { nv = VX; m = h2 / 2 - 1; }
        return true;
      case VYR2:
        if (h1) return false;
        c_one = true;
        if (h2 & 1) { nv = VX; m = (h2 - 1) / 2; }
        else { nv = VYR2; m = h2 / 2; }
        return true;
    }
    return false;
  }

  struct PathState {
    Vertex v;
    Weight h;  // output weight so far
    int j = 0;         // entries consumed, counting inserted C's
    int n_c1 = 0, n_c2 = 0;
    int sum_cpos = 0;  // sum of positions of C entries
  };

  bool advance(PathState& st, const Pure& a, bool& terminal) const {
    Vertex nv;
    int m;
    bool c_one;
    if (!step(st.v, a, nv, m, c_one)) return false;
    for (int s = 3; s <= 2 * in.n; ++s)
      if (a.w[s]) st.h.add(s - 2, a.w[s]);
    st.j += 1;
    for (int r = 0; r < m; ++r) {
      st.j += 1;
      st.sum_cpos += st.j;
    }
    if (c_one) {
      st.n_c1 += m;
      if (m) st.h.add(alpha, 2 * m);
    } else {
      st.n_c2 += m;
      if (m) st.h.add(beta, 2 * m);
    }
    st.v = nv;
    terminal = nv == VXL1 || nv == VYR2;
    return true;
  }

  int path_sign(const BGen& g, const PathState& st) const {
    int nc = st.n_c1 + st.n_c2;
    int e = st.j * g.ext + nc * st.j - st.sum_cpos;
    int par = nc + e + st.n_c1 + eta(st.j) + st.j - 1;
    return (par & 1) ? -1 : 1;
  }

  std::vector<GammaTerm> gamma(const BGen& g, const std::vector<Pure>& betas) const override {
    std::vector<GammaTerm> res;
    if (betas.empty()) return res;
    PathState st;
    st.v = g.label == kXL1 ? VXL1 : VYR2;
    for (std::size_t idx = 0; idx < betas.size(); ++idx) {
      bool terminal = false;
      if (!advance(st, betas[idx], terminal)) return res;
      if (terminal != (idx + 1 == betas.size())) return res;
    }
    State yend = betas.back().y;
    if (!preferred(yend)) return res;
    BGen t = make(yend);
    if (!b_exists(g.left, t.left, st.h, out.n)) return res;
    res.push_back(GammaTerm{path_sign(g, st), Pure{g.left, t.left, st.h, 0}, t});
    return res;
  }

  void arrows(const BGen& g, const DStructure& X, int y, std::vector<TensorArrow>& res) const override {
    int maxd = -1 << 30;
    for (int z = 0; z < X.size(); ++z)
      if (X.alive(z)) maxd = std::max(maxd, X.gen(z).delta2);
    const int budget = maxd - X.gen(y).delta2 + 2;
    const int depth_cap = 4 * X.live_count() + 64;
    PathState st0;
    st0.v = g.label == kXL1 ? VXL1 : VYR2;
    std::function<void(int, const PathState&, Coeff, int)> dfs = [&](int cur, const PathState& st, Coeff c, int depth) {
      if (depth > depth_cap) throw IntegrityError("minimum bimodule path search exceeded its depth bound");
      for (auto& [k, v] : X.out(cur)) {
        PathState nx = st;
        bool terminal = false;
        Pure a{X.gen(cur).idem, X.gen(k.to).idem, k.w, 0};
        if (!advance(nx, a, terminal)) continue;
        if (nx.h.total2() > budget) continue;
        Coeff c2 = X.ring.mul(c, v);
        if (terminal) {
          State yend = X.gen(k.to).idem;
          if (!preferred(yend)) continue;
          BGen t = make(yend);
          if (!b_exists(g.left, t.left, nx.h, out.n)) continue;
          res.push_back(TensorArrow{t.label, t.left, k.to, nx.h, X.ring.mul(c2, path_sign(g, nx))});
        } else {
          dfs(k.to, nx, c2, depth + 1);
        }
      }
    };
    dfs(y, st0, 1, 0);
  }

 protected:
  int max_inputs(const BGen&) const override { return 0; }
};

}  // namespace

std::unique_ptr<Bimodule> make_bimodule(BimoduleKind kind, int pos, const SliceData& above, const SliceData& below,
                                        int k_in) {
  std::unique_ptr<Bimodule> b;
  switch (kind) {
    case BimoduleKind::Pos:
    case BimoduleKind::Neg: {
      auto c = std::make_unique<Crossing>();
      c->neg = kind == BimoduleKind::Neg;
      c->i = pos;
      c->in = Ambient{above.n, k_in, above.matching};
      c->out = Ambient{below.n, k_in, transpose_matching(above.matching, pos)};
      b = std::move(c);
      break;
    }
    case BimoduleKind::Max: {
      auto m = std::make_unique<MaxBim>();
      m->c = pos;
      m->in = Ambient{above.n, k_in, above.matching};
      m->out = Ambient{below.n, k_in + 1, below.matching};
      b = std::move(m);
      break;
    }
    case BimoduleKind::Min: {
      if (pos != 1) throw std::invalid_argument("minimum bimodule is only evaluated directly at position 1");
      auto m = std::make_unique<MinBim>();
      m->in = Ambient{above.n, k_in, above.matching};
      m->out = Ambient{below.n, k_in - 1, below.matching};
      m->alpha = above.matching.of(1) - 2;
      m->beta = above.matching.of(2) - 2;
      if (m->alpha < 1 || m->beta < 1) throw DiagramError("minimum caps a matched pair");
      b = std::move(m);
      break;
    }
  }
  b->kind = kind;
  b->pos = pos;
  b->in_upwards = above.upwards;
  b->out_upwards = below.upwards;
  return b;
}

}  // namespace hfk
