#include "hfk/homology.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace hfk {

namespace {

struct Fp {
  Coeff p;
  using T = Coeff;
  T from(Coeff c) const { return Ring{static_cast<int>(p)}.norm(c); }
  bool zero(const T& a) const { return a == 0; }
  T sub(const T& a, const T& b) const { return ((a - b) % p + p) % p; }
  T mul(const T& a, const T& b) const { return static_cast<T>((static_cast<__int128>(a) * b) % p); }
  T inv(const T& a) const { return Ring{static_cast<int>(p)}.inv(a); }
};

struct Fq {
  using T = mpq_class;
  T from(Coeff c) const { return T(static_cast<long>(c)); }
  bool zero(const T& a) const { return sgn(a) == 0; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return 1 / a; }
};

template <class F>
using Mat = std::vector<std::vector<typename F::T>>;  // rows

// Row-reduces in place to reduced echelon form; returns pivot columns.
template <class F>
std::vector<int> rref(const F& f, Mat<F>& m, int cols) {
  std::vector<int> piv;
  int r = 0;
  const int rows = static_cast<int>(m.size());
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (!f.zero(m[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    auto iv = f.inv(m[r][c]);
    for (int j = c; j < cols; ++j) m[r][j] = f.mul(m[r][j], iv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || f.zero(m[i][c])) continue;
      auto fac = m[i][c];
      for (int j = c; j < cols; ++j)
        if (!f.zero(m[r][j])) m[i][j] = f.sub(m[i][j], f.mul(fac, m[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <class F>
int rank(const F& f, Mat<F> m, int cols) {
  return static_cast<int>(rref(f, m, cols).size());
}

// One Alexander slice of a complex over R, or a quotient/localization of it.
enum class SliceKind { Full, QuotientV, LocalU, Hat };

struct Slice {
  std::vector<int> local;  // gen -> local index or -1
  std::vector<int> gens;
  std::vector<int> deg;     // delta of the basis element
  std::vector<int> upow;    // U exponent of the basis element (-1 if V type with b > 0)
  std::vector<std::tuple<int, int, Coeff>> entries;  // (row=target, col=source, c)
};

Slice make_slice(const BigradedComplex& c, SliceKind kind, int s) {
  Slice sl;
  const int n = static_cast<int>(c.gens.size());
  sl.local.assign(n, -1);
  std::vector<int> ua(n, 0), vb(n, 0);
  for (int g = 0; g < n; ++g) {
    const CGen& cg = c.gens[g];
    int a = cg.alex - s;
    if (kind == SliceKind::QuotientV && a < 0) continue;
    if (kind == SliceKind::Hat && a != 0) continue;
    if (kind == SliceKind::Full && a < 0) {
      ua[g] = 0;
      vb[g] = -a;
    } else {
      ua[g] = a;
    }
    sl.local[g] = static_cast<int>(sl.gens.size());
    sl.gens.push_back(g);
    sl.deg.push_back(cg.delta - ua[g] - vb[g]);
    sl.upow.push_back(vb[g] > 0 ? -1 : ua[g]);
  }
  for (const CEntry& e : c.diff) {
    int src = sl.local[e.from], dst = sl.local[e.to];
    if (src < 0 || dst < 0) continue;
    if (kind == SliceKind::Hat && (e.u || e.v)) continue;
    if ((kind == SliceKind::QuotientV || kind == SliceKind::LocalU) && e.v) continue;
    int u = ua[e.from] + e.u, v = vb[e.from] + e.v;
    if (u > 0 && v > 0) continue;
    sl.entries.emplace_back(dst, src, e.c);
  }
  return sl;
}

template <class F>
Mat<F> dense(const F& f, const Slice& sl, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> rpos(sl.gens.size(), -1), cpos(sl.gens.size(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < cols.size(); ++j) cpos[cols[j]] = static_cast<int>(j);
  Mat<F> m(rows.size(), std::vector<typename F::T>(cols.size(), f.from(0)));
  for (auto& [r, c, v] : sl.entries)
    if (rpos[r] >= 0 && cpos[c] >= 0) m[rpos[r]][cpos[c]] = f.sub(m[rpos[r]][cpos[c]], f.from(-v));
  return m;
}

std::vector<int> all_of(const Slice& sl) {
  std::vector<int> v(sl.gens.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
  return v;
}

std::vector<int> of_degree(const Slice& sl, int d) {
  std::vector<int> v;
  for (std::size_t i = 0; i < sl.gens.size(); ++i)
    if (sl.deg[i] == d) v.push_back(static_cast<int>(i));
  return v;
}

// Kernel basis of the differential restricted to the given source columns, as vectors over all
// local indices of the slice.
template <class F>
std::vector<std::vector<typename F::T>> kernel(const F& f, const Slice& sl, const std::vector<int>& cols) {
  Mat<F> m = dense(f, sl, all_of(sl), cols);
  const int nc = static_cast<int>(cols.size());
  auto piv = rref(f, m, nc);
  std::vector<char> is_piv(nc, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<std::vector<typename F::T>> out;
  for (int fc = 0; fc < nc; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<typename F::T> v(sl.gens.size(), f.from(0));
    v[cols[fc]] = f.from(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[cols[piv[r]]] = f.sub(f.from(0), m[r][fc]);
    out.push_back(std::move(v));
  }
  return out;
}

// Rank of the map on homology induced by sending basis element i of src to basis element
// target_of[i] of dst (or to zero when -1), restricted to cycles of the given source columns.
template <class F>
int induced_rank(const F& f, const Slice& src, const std::vector<int>& cols, const Slice& dst,
                 const std::vector<int>& target_of) {
  auto ker = kernel(f, src, cols);
  if (ker.empty()) return 0;
  Mat<F> bnd = dense(f, dst, all_of(dst), all_of(dst));
  const int nb = static_cast<int>(dst.gens.size());
  int base = rank(f, bnd, nb);
  for (auto& row : bnd) row.resize(nb + ker.size(), f.from(0));
  for (std::size_t k = 0; k < ker.size(); ++k)
    for (std::size_t i = 0; i < ker[k].size(); ++i)
      if (target_of[i] >= 0 && !f.zero(ker[k][i])) bnd[target_of[i]][nb + k] = ker[k][i];
  return rank(f, bnd, nb + static_cast<int>(ker.size())) - base;
}

// Nonzero invariant factors of an integer matrix.
std::vector<mpz_class> smith_invariants(std::vector<std::vector<mpz_class>> m) {
  std::vector<mpz_class> out;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      int pr = -1, pc = -1;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr < 0 || abs(m[i][j]) < abs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) goto done;
      std::swap(m[t], m[pr]);
      for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q = m[i][t] / m[t][t];
        for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q = m[t][j] / m[t][t];
        for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the remaining block
      int bad = -1;
      for (int i = t + 1; i < rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = t; j < cols; ++j) m[t][j] += m[bad][j];
    }
    out.push_back(abs(m[t][t]));
  }
done:
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
std::map<int, int> homology_by_degree(const F& f, const Slice& sl) {
  std::set<int> degs(sl.deg.begin(), sl.deg.end());
  std::map<int, int> rk_out;
  for (int d : degs) {
    auto cols = of_degree(sl, d);
    auto rows = of_degree(sl, d - 1);
    rk_out[d] = rows.empty() ? 0 : rank(f, dense(f, sl, rows, cols), static_cast<int>(cols.size()));
  }
  std::map<int, int> h;
  for (int d : degs) {
    int n = static_cast<int>(of_degree(sl, d).size());
    int in = rk_out.count(d + 1) ? rk_out[d + 1] : 0;
    h[d] = n - rk_out[d] - in;
  }
  return h;
}

template <class Fn>
auto with_field(const Ring& r, Fn&& fn) {
  if (r.is_z()) return fn(Fq{});
  return fn(Fp{r.p});
}

std::pair<int, int> alex_range(const BigradedComplex& c) {
  int lo = INT_MAX, hi = INT_MIN;
  for (auto& g : c.gens) {
    lo = std::min(lo, g.alex);
    hi = std::max(hi, g.alex);
  }
  return {lo, hi};
}

// Delta degree of the one-dimensional homology of C with U inverted at s = 0.
int localized_degree(const BigradedComplex& c) {
  return with_field(c.ring, [&](auto f) {
    Slice l = make_slice(c, SliceKind::LocalU, 0);
    auto h = homology_by_degree(f, l);
    int found = INT_MIN, total = 0;
    for (auto& [d, dim] : h) {
      total += dim;
      if (dim) found = d;
    }
    if (total != 1) throw IntegrityError("localized homology is not one-dimensional");
    return found;
  });
}

// -max{s : the natural map from the s-slice of C (or C/V) to the localization is nonzero}.
int concordance_value(const BigradedComplex& c, SliceKind kind) {
  if (c.gens.empty()) throw IntegrityError("empty complex has no nontorsion class");
  localized_degree(c);
  auto [lo, hi] = alex_range(c);
  return with_field(c.ring, [&](auto f) {
    for (int s = hi; s >= lo - 1; --s) {
      Slice src = make_slice(c, kind, s);
      Slice dst = make_slice(c, SliceKind::LocalU, s);
      std::vector<int> tgt(src.gens.size(), -1);
      for (std::size_t i = 0; i < src.gens.size(); ++i)
        if (src.upow[i] >= 0) tgt[i] = dst.local[src.gens[i]];
      if (induced_rank(f, src, all_of(src), dst, tgt) > 0) return -s;
    }
    throw IntegrityError("no nontorsion class found; the complex does not come from a knot");
  });
}

}  // namespace

void check_complex(const BigradedComplex& c) {
  const int n = static_cast<int>(c.gens.size());
  std::vector<std::vector<const CEntry*>> out(n);
  for (const CEntry& e : c.diff) {
    if (e.u > 0 && e.v > 0) throw IntegrityError("differential entry mixes U and V");
    const CGen &a = c.gens[e.from], &b = c.gens[e.to];
    if (a.alex != b.alex - e.u + e.v) throw IntegrityError("differential breaks the Alexander grading");
    if (a.delta - 1 != b.delta - e.u - e.v) throw IntegrityError("differential breaks the Delta grading");
    out[e.from].push_back(&e);
  }
  for (int g = 0; g < n; ++g) {
    std::map<std::tuple<int, int, int>, Coeff> sq;
    for (auto* e1 : out[g])
      for (auto* e2 : out[e1->to]) {
        int u = e1->u + e2->u, v = e1->v + e2->v;
        if (u > 0 && v > 0) continue;
        auto& s = sq[{e2->to, u, v}];
        s = c.ring.add(s, c.ring.mul(e1->c, e2->c));
      }
    for (auto& [k, v] : sq)
      if (c.ring.norm(v) != 0) throw IntegrityError("d^2 != 0 in the final complex");
  }
}

void normalize_gradings(BigradedComplex& c) {
  if (c.gens.empty()) return;
  int d0 = localized_degree(c);
  for (auto& g : c.gens) g.delta -= d0;
}

BigradedComplex reduce_mod(const BigradedComplex& c, int p) {
  BigradedComplex out;
  out.ring = Ring{p};
  out.gens = c.gens;
  for (const CEntry& e : c.diff) {
    Coeff v = out.ring.norm(e.c);
    if (v) out.diff.push_back(CEntry{e.from, e.to, v, e.u, e.v});
  }
  return out;
}

BigradedComplex dual(const BigradedComplex& c) {
  BigradedComplex out;
  out.ring = c.ring;
  for (auto& g : c.gens) out.gens.push_back(CGen{-g.alex, -g.delta, g.tag});
  for (const CEntry& e : c.diff) out.diff.push_back(CEntry{e.to, e.from, e.c, e.u, e.v});
  normalize_gradings(out);
  return out;
}

std::vector<HatEntry> hfk_hat(const BigradedComplex& c) {
  std::map<int, std::vector<int>> by_a;
  for (std::size_t g = 0; g < c.gens.size(); ++g) by_a[c.gens[g].alex].push_back(static_cast<int>(g));
  std::vector<HatEntry> res;
  for (auto& [a, gs] : by_a) {
    Slice sl = make_slice(c, SliceKind::Hat, a);
    std::map<int, HatEntry> ent;
    if (!c.ring.is_z()) {
      auto h = with_field(c.ring, [&](auto f) { return homology_by_degree(f, sl); });
      for (auto& [d, dim] : h)
        if (dim) ent[d] = HatEntry{a, d + a, dim, {}};
    } else {
      std::set<int> degs(sl.deg.begin(), sl.deg.end());
      std::map<int, int> rk_out;
      std::map<int, std::vector<mpz_class>> factors_out;
      for (int d : degs) {
        auto cols = of_degree(sl, d), rows = of_degree(sl, d - 1);
        std::vector<std::vector<mpz_class>> m(rows.size(), std::vector<mpz_class>(cols.size(), 0));
        std::vector<int> rp(sl.gens.size(), -1), cp(sl.gens.size(), -1);
        for (std::size_t i = 0; i < rows.size(); ++i) rp[rows[i]] = static_cast<int>(i);
        for (std::size_t j = 0; j < cols.size(); ++j) cp[cols[j]] = static_cast<int>(j);
        for (auto& [r, cc, v] : sl.entries)
          if (rp[r] >= 0 && cp[cc] >= 0) m[rp[r]][cp[cc]] += static_cast<long>(v);
        auto inv = smith_invariants(m);
        rk_out[d] = static_cast<int>(inv.size());
        factors_out[d] = inv;
      }
      for (int d : degs) {
        int n = static_cast<int>(of_degree(sl, d).size());
        int in = rk_out.count(d + 1) ? rk_out[d + 1] : 0;
        HatEntry he{a, d + a, n - rk_out[d] - in, {}};
        if (factors_out.count(d + 1))
          for (auto& q : factors_out[d + 1])
            if (q > 1) he.torsion.push_back(q.get_str());
        if (he.dim || !he.torsion.empty()) ent[d] = he;
      }
    }
    for (auto& [d, he] : ent) res.push_back(he);
  }
  std::sort(res.begin(), res.end(), [](const HatEntry& x, const HatEntry& y) {
    return std::tie(x.a, x.m) < std::tie(y.a, y.m);
  });
  return res;
}

std::map<int, long> alexander_polynomial(const BigradedComplex& c) {
  std::map<int, long> p;
  for (auto& g : c.gens) p[g.alex] += (g.maslov() & 1) ? -1 : 1;
  for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
  return p;
}

std::string poly_str(const std::map<int, long>& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    auto [e, c] = *it;
    long mag = c < 0 ? -c : c;
    if (first) os << (c < 0 ? "-" : "");
    else os << (c < 0 ? " - " : " + ");
    first = false;
    if (e == 0 || mag != 1) os << mag;
    if (e != 0) os << "t" << (e == 1 ? "" : "^" + std::to_string(e));
  }
  return os.str();
}

std::map<std::pair<int, int>, int> hwz_dims(const BigradedComplex& c, int dlo, int dhi, int slo, int shi) {
  std::map<std::pair<int, int>, int> out;
  with_field(c.ring, [&](auto f) {
    for (int s = slo; s <= shi; ++s) {
      Slice sl = make_slice(c, SliceKind::Full, s);
      auto h = homology_by_degree(f, sl);
      for (auto& [d, dim] : h)
        if (dim && d >= dlo && d <= dhi) out[{d, s}] = dim;
    }
    return 0;
  });
  return out;
}

ActionRanks hwz_action_ranks(const BigradedComplex& c, int delta, int s) {
  ActionRanks r;
  with_field(c.ring, [&](auto f) {
    Slice src = make_slice(c, SliceKind::Full, s);
    auto cols = of_degree(src, delta);
    if (cols.empty()) return 0;
    Slice du = make_slice(c, SliceKind::Full, s - 1);
    Slice dv = make_slice(c, SliceKind::Full, s + 1);
    std::vector<int> tu(src.gens.size(), -1), tv(src.gens.size(), -1);
    for (std::size_t i = 0; i < src.gens.size(); ++i) {
      int g = src.gens[i];
      if (src.upow[i] >= 0) tu[i] = du.local[g];
      if (src.upow[i] <= 0) tv[i] = dv.local[g];
    }
    r.u = induced_rank(f, src, cols, du, tu);
    r.v = induced_rank(f, src, cols, dv, tv);
    return 0;
  });
  return r;
}

int tau(const BigradedComplex& c) { return concordance_value(c, SliceKind::QuotientV); }
int nu(const BigradedComplex& c) { return concordance_value(c, SliceKind::Full); }

int epsilon(const BigradedComplex& c) {
  BigradedComplex d = dual(c);
  return (tau(c) - nu(c)) - (tau(d) - nu(d));
}

int nu_p(const BigradedComplex& c, int p) { return nu(reduce_mod(c, p)); }

}  // namespace hfk
