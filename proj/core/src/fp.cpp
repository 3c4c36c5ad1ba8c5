#include "berkcrucial/fp.hpp"

#include <algorithm>
#include <sstream>

namespace berk {

namespace {
long norm(long x, long p) { return ((x % p) + p) % p; }

long fp_inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = norm(a, p);
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw std::logic_error("fp_inv: not invertible");
  return norm(t, p);
}
}  // namespace

int FpPoly::deg() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[i] % p != 0) return i;
  return -1;
}

void FpPoly::trim() {
  for (auto& x : c) x = norm(x, p);
  while (!c.empty() && c.back() == 0) c.pop_back();
}

long FpPoly::eval(long x) const {
  long acc = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    acc = norm(acc * x + c[i], p);
  return acc;
}

FpPoly FpPoly::derivative() const {
  FpPoly d{p, {}};
  for (size_t i = 1; i < c.size(); ++i)
    d.c.push_back(norm(c[i] * static_cast<long>(i % p), p));
  d.trim();
  return d;
}

std::string FpPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    os << c[i];
    if (i >= 1) os << "z";
    if (i > 1) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  FpPoly r{a.p, a.c};
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = norm(r.c[i] + b.c[i], a.p);
  r.trim();
  return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  FpPoly nb = b;
  for (auto& x : nb.c) x = norm(-x, b.p);
  return fp_add(a, nb);
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p);
  FpPoly r{a.p, std::vector<long>(a.c.size() + b.c.size() - 1, 0)};
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = norm(r.c[i + j] + a.c[i] * b.c[j], a.p);
  }
  r.trim();
  return r;
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b) {
  int db = b.deg();
  if (db < 0) throw DivisionByZero("fp_divmod by zero");
  FpPoly rem = a, q{a.p, {}};
  rem.trim();
  long binv = fp_inv(b.c[db], a.p);
  int da = rem.deg();
  if (da >= db) q.c.assign(da - db + 1, 0);
  while (da >= db) {
    long coef = norm(rem.c[da] * binv, a.p);
    q.c[da - db] = coef;
    for (int i = 0; i <= db; ++i)
      rem.c[da - db + i] = norm(rem.c[da - db + i] - coef * b.c[i], a.p);
    rem.trim();
    da = rem.deg();
  }
  q.trim();
  return {q, rem};
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    auto [q, r] = fp_divmod(a, b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    long inv = fp_inv(a.c[a.deg()], a.p);
    for (auto& x : a.c) x = norm(x * inv, a.p);
  }
  return a;
}

int fp_ord_at(const FpPoly& f, long x) {
  if (f.is_zero()) throw std::logic_error("fp_ord_at of zero polynomial");
  FpPoly g = f;
  FpPoly lin{f.p, {norm(-x, f.p), 1}};
  int ord = 0;
  while (true) {
    auto [q, r] = fp_divmod(g, lin);
    if (!r.is_zero()) break;
    ++ord;
    g = q;
  }
  return ord;
}

ResidueMap::ResidueMap(long p, std::vector<long> g0, std::vector<long> g1) : p_(p) {
  if (g0.size() != g1.size())
    throw std::logic_error("ResidueMap: mismatched form degrees");
  int d = static_cast<int>(g0.size()) - 1;
  for (auto& x : g0) x = norm(x, p);
  for (auto& x : g1) x = norm(x, p);
  // strip common powers of p1 (leading structure, index = power of p1)
  auto low = [&](const std::vector<long>& v) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return static_cast<int>(i);
    return static_cast<int>(v.size());
  };
  auto high = [&](const std::vector<long>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
      if (v[i] != 0) return i;
    return -1;
  };
  if (high(g0) < 0 && high(g1) < 0)
    throw std::logic_error("ResidueMap: zero pair");
  int alpha = std::min(low(g0), low(g1));           // common p1-power
  int beta = std::min(high(g0) < 0 ? d : d - high(g0),
                      high(g1) < 0 ? d : d - high(g1));  // common p0-power
  auto strip = [&](std::vector<long> v) {
    std::vector<long> w;
    for (int i = alpha; i <= d - beta; ++i)
      w.push_back(i < static_cast<int>(v.size()) ? v[i] : 0);
    return w;
  };
  std::vector<long> a0 = strip(g0), a1 = strip(g1);
  // cancel the univariate gcd of the remaining parts
  FpPoly f0{p, a0}, f1{p, a1};
  f0.trim();
  f1.trim();
  FpPoly g = (f0.is_zero() || f1.is_zero()) ? FpPoly::zero(p) : fp_gcd(f0, f1);
  int dd = static_cast<int>(a0.size()) - 1;
  if (g.deg() > 0) {
    // both parts share g as a dehomogenized factor of the same degree shift
    auto [q0, r0] = fp_divmod(f0, g);
    auto [q1, r1] = fp_divmod(f1, g);
    if (!r0.is_zero() || !r1.is_zero())
      throw std::logic_error("ResidueMap: gcd division failed");
    f0 = q0;
    f1 = q1;
    dd -= g.deg();
  }
  deg_ = dd;
  h0_.assign(dd + 1, 0);
  h1_.assign(dd + 1, 0);
  for (int i = 0; i <= dd; ++i) {
    if (i < static_cast<int>(f0.c.size())) h0_[i] = f0.c[i];
    if (i < static_cast<int>(f1.c.size())) h1_[i] = f1.c[i];
  }
  // canonical scaling: first nonzero coefficient becomes 1
  long lead = 0;
  for (long x : h0_)
    if (x != 0) {
      lead = x;
      break;
    }
  if (lead == 0)
    for (long x : h1_)
      if (x != 0) {
        lead = x;
        break;
      }
  long inv = fp_inv(lead, p);
  for (auto& x : h0_) x = norm(x * inv, p);
  for (auto& x : h1_) x = norm(x * inv, p);
  g0_ = FpPoly{p, h0_};
  g0_.trim();
  g1_ = FpPoly{p, h1_};
  g1_.trim();
}

bool ResidueMap::is_identity() const {
  return deg_ == 1 && h0_[0] == 1 && h0_[1] == 0 && h1_[0] == 0 && h1_[1] == 1;
}

P1Fp ResidueMap::eval(const P1Fp& a) const {
  long v0, v1;
  if (a.inf) {
    v0 = h0_.back();
    v1 = h1_.back();
  } else {
    // evaluate homogeneous forms at (1, r)
    v0 = 0;
    v1 = 0;
    long pw = 1;
    for (int i = 0; i <= deg_; ++i) {
      v0 = norm(v0 + h0_[i] * pw, p_);
      v1 = norm(v1 + h1_[i] * pw, p_);
      pw = norm(pw * a.r, p_);
    }
  }
  if (v0 == 0 && v1 == 0)
    throw std::logic_error("ResidueMap: common zero survived cancellation");
  if (v0 == 0) return P1Fp::infinity();
  return P1Fp::finite(norm(v1 * fp_inv(v0, p_), p_), p_);
}

int ResidueMap::local_degree(const P1Fp& a) const {
  if (deg_ == 0) throw std::logic_error("local_degree of a constant map");
  P1Fp b = eval(a);
  // multiplicity of a as a solution of map(z) = b
  if (!a.inf) {
    FpPoly target;
    if (b.inf) {
      target = g0_;
    } else {
      FpPoly bb{p_, {b.r}};
      target = fp_sub(g1_, fp_mul(bb, g0_));
    }
    // map has full formal degree in the homogeneous sense; vanishing order of
    // target at a.r is the multiplicity
    return fp_ord_at(target, a.r);
  }
  // multiplicity at infinity: degree drop of the target form at p0 = 0 side
  std::vector<long> t(deg_ + 1, 0);
  for (int i = 0; i <= deg_; ++i)
    t[i] = b.inf ? h0_[i] : norm(h1_[i] - b.r * h0_[i], p_);
  int ord = 0;
  for (int i = deg_; i >= 0; --i) {
    if (t[i] == 0)
      ++ord;
    else
      break;
  }
  return ord;
}

int ResidueMap::fixed_order(const P1Fp& a) const {
  // divisor [map(z) = z]: zeros of h1(1,z) - z*h0(1,z); at infinity the order
  // is (deg + 1) - deg(that polynomial).
  FpPoly zpoly{p_, {0, 1}};
  FpPoly fx = fp_sub(g1_, fp_mul(zpoly, g0_));
  if (fx.is_zero()) throw std::logic_error("fixed_order of the identity map");
  if (a.inf) return deg_ + 1 - (fx.deg() < 0 ? 0 : fx.deg());
  return fp_ord_at(fx, a.r);
}

int ResidueMap::fixed_divisor_total() const {
  if (is_identity()) throw std::logic_error("fixed divisor of identity");
  return deg_ + 1;
}

int ResidueMap::fibre_residual_degree(const P1Fp& w) const {
  if (deg_ == 0) throw std::logic_error("fibre of a constant map");
  FpPoly target =
      w.inf ? g0_ : fp_sub(g1_, fp_mul(FpPoly{p_, {norm(w.r, p_)}}, g0_));
  int rational = deg_ - (target.deg() < 0 ? 0 : target.deg());  // infinity part
  if (!target.is_zero())
    for (long r = 0; r < p_; ++r) rational += fp_ord_at(target, r);
  return deg_ - rational;
}

}  // namespace berk
