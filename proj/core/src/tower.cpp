#include "berkcrucial/tower.hpp"

#include <numeric>
#include <sstream>

namespace berk {

long padic_val(const ZZ& n, long p) {
  if (n == 0) throw std::logic_error("padic_val of 0");
  ZZ rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), ZZ(p).get_mpz_t()));
}

long padic_val(const QQ& q, long p) {
  if (q == 0) throw std::logic_error("padic_val of 0");
  return padic_val(q.get_num(), p) - padic_val(q.get_den(), p);
}

ZZ mod_inverse(const ZZ& a, const ZZ& m) {
  ZZ r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::logic_error("mod_inverse: not invertible");
  return r;
}

ZZ mod_prime_power(const QQ& q, long p, long k) {
  if (k <= 0 || q == 0) return ZZ(0);
  ZZ pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  ZZ den_inv = mod_inverse(q.get_den(), pk);
  ZZ r = (q.get_num() % pk) * den_inv % pk;
  if (r < 0) r += pk;
  return r;
}

QQ parse_rational(const std::string& s) {
  QQ q;
  if (q.set_str(s, 10) != 0) throw InputError("bad rational: " + s);
  q.canonicalize();
  return q;
}

std::string rational_str(const QQ& q) { return q.get_str(); }

TowerContext TowerContext::join(const TowerContext& a, const TowerContext& b) {
  if (a.p != b.p) throw std::logic_error("TowerContext: mismatched primes");
  return TowerContext{a.p, std::lcm(a.e, b.e)};
}

TowerContext TowerContext::extended_for(const QQ& t) const {
  long den = static_cast<long>(t.get_den().get_si());
  return TowerContext{p, std::lcm(e, static_cast<int>(den))};
}

TowerElem::TowerElem(TowerContext ctx, QQ q) : ctx_(ctx), c_(ctx.e, QQ(0)) {
  c_[0] = std::move(q);
}

TowerElem::TowerElem(TowerContext ctx, std::vector<QQ> coeffs)
    : ctx_(ctx), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != ctx_.e)
    throw std::logic_error("TowerElem: coefficient count != e");
}

TowerElem TowerElem::pi(const TowerContext& ctx) {
  std::vector<QQ> c(ctx.e, QQ(0));
  if (ctx.e == 1)
    c[0] = ctx.p;
  else
    c[1] = 1;
  return TowerElem(ctx, std::move(c));
}

TowerElem TowerElem::uniformizer(const TowerContext& ctx, const QQ& t) {
  QQ te = t * ctx.e;
  if (te.get_den() != 1)
    throw std::logic_error("uniformizer: t*e not integral; extend the context first");
  long k = static_cast<long>(te.get_num().get_si());  // t = k/e
  long q = k >= 0 ? k / ctx.e : -((-k + ctx.e - 1) / ctx.e);  // floor(k/e)
  long r = k - q * ctx.e;                                     // in [0, e)
  std::vector<QQ> c(ctx.e, QQ(0));
  QQ pq;
  ZZ pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(ctx.p),
                static_cast<unsigned long>(q >= 0 ? q : -q));
  pq = q >= 0 ? QQ(pw) : QQ(1) / QQ(pw);
  c[r] = pq;
  return TowerElem(ctx, std::move(c));
}

bool TowerElem::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool TowerElem::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

const QQ& TowerElem::rational_value() const {
  if (!is_rational()) throw std::logic_error("TowerElem: not rational");
  return c_[0];
}

ExtValue TowerElem::val() const {
  ExtValue best = ExtValue::infinity();
  for (int i = 0; i < ctx_.e; ++i) {
    if (c_[i] == 0) continue;
    QQ v = QQ(padic_val(c_[i], ctx_.p)) + QQ(i, ctx_.e);
    v.canonicalize();
    best = min(best, ExtValue(v));
  }
  return best;
}

long TowerElem::residue() const {
  ExtValue v = val();
  if (!v.is_infinity() && v.value() < 0)
    throw NotIntegral("residue: element has negative valuation");
  if (v.is_infinity() || v.value() > 0) return 0;
  // val = 0 is attained by a unique index, necessarily i = 0.
  ZZ r = mod_prime_power(c_[0], ctx_.p, 1);
  return static_cast<long>(r.get_si());
}

TowerElem TowerElem::embed(const TowerContext& finer) const {
  if (finer.p != ctx_.p || finer.e % ctx_.e != 0)
    throw std::logic_error("embed: not a refinement");
  if (finer.e == ctx_.e) return *this;
  int k = finer.e / ctx_.e;
  std::vector<QQ> c(finer.e, QQ(0));
  for (int i = 0; i < ctx_.e; ++i) c[i * k] = c_[i];
  return TowerElem(finer, std::move(c));
}

TowerElem TowerElem::truncate_below(const QQ& t) const {
  std::vector<QQ> c(ctx_.e, QQ(0));
  for (int i = 0; i < ctx_.e; ++i) {
    if (c_[i] == 0) continue;
    // keep digits with v_p(digit) + i/e < t, i.e. v_p(digit) < t - i/e
    QQ bound = t - qq(i, ctx_.e);
    // k = ceil(bound): digits p^j with j < bound survive <=> c_i mod p^k with
    // k the smallest integer >= bound.
    ZZ num = bound.get_num(), den = bound.get_den();
    ZZ k = (num + den - 1) / den;  // ceil for positive; floor-adjust below
    if (bound <= 0 && QQ(k) != bound) {
      // mpz division truncates toward zero; recompute ceil for negatives
      k = num / den;
      if (QQ(k) < bound) k += 1;
    }
    long kk = static_cast<long>(k.get_si());
    long vi = padic_val(c_[i], ctx_.p);
    if (vi >= kk) continue;
    // shift so the digit window starts at p^vi >= p^{vi}
    QQ scaled = c_[i];
    ZZ pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(ctx_.p),
                  static_cast<unsigned long>(vi >= 0 ? vi : -vi));
    QQ shift = vi >= 0 ? QQ(pv) : QQ(1) / QQ(pv);
    scaled /= shift;  // now p-integral with v_p = 0
    ZZ rep = mod_prime_power(scaled, ctx_.p, kk - vi);
    c[i] = QQ(rep) * shift;
  }
  return TowerElem(ctx_, std::move(c));
}

void TowerElem::align(TowerElem& a, TowerElem& b) {
  if (a.ctx_ == b.ctx_) return;
  TowerContext j = TowerContext::join(a.ctx_, b.ctx_);
  a = a.embed(j);
  b = b.embed(j);
}

TowerElem TowerElem::operator-() const {
  std::vector<QQ> c(c_);
  for (auto& q : c) q = -q;
  return TowerElem(ctx_, std::move(c));
}

TowerElem TowerElem::operator+(const TowerElem& o) const {
  TowerElem a = *this, b = o;
  align(a, b);
  for (int i = 0; i < a.ctx_.e; ++i) a.c_[i] += b.c_[i];
  return a;
}

TowerElem TowerElem::operator-(const TowerElem& o) const { return *this + (-o); }

TowerElem TowerElem::operator*(const TowerElem& o) const {
  TowerElem a = *this, b = o;
  align(a, b);
  int e = a.ctx_.e;
  std::vector<QQ> prod(2 * e - 1, QQ(0));
  for (int i = 0; i < e; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j < e; ++j) {
      if (b.c_[j] == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  std::vector<QQ> c(e, QQ(0));
  for (int k = 0; k < 2 * e - 1; ++k) {
    if (prod[k] == 0) continue;
    if (k < e)
      c[k] += prod[k];
    else
      c[k - e] += prod[k] * a.ctx_.p;  // pi^e = p
  }
  return TowerElem(a.ctx_, std::move(c));
}

namespace {
// Extended Euclid over Q[X] modulo X^e - p, for inverses in the tower field.
using PolyQ = std::vector<QQ>;

int degq(const PolyQ& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

PolyQ polyq_scale(PolyQ f, const QQ& c) {
  for (auto& x : f) x *= c;
  return f;
}

PolyQ polyq_sub(PolyQ a, const PolyQ& b) {
  if (a.size() < b.size()) a.resize(b.size(), QQ(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

PolyQ polyq_shift_mul(const PolyQ& f, int k, const QQ& c) {
  PolyQ r(f.size() + k, QQ(0));
  for (size_t i = 0; i < f.size(); ++i) r[i + k] = f[i] * c;
  return r;
}

// (quotient, remainder) of a by b, b nonzero
std::pair<PolyQ, PolyQ> polyq_divmod(PolyQ a, const PolyQ& b) {
  int db = degq(b);
  PolyQ q(std::max<size_t>(a.size(), 1), QQ(0));
  int da = degq(a);
  while (da >= db && da >= 0) {
    QQ c = a[da] / b[db];
    q[da - db] = c;
    a = polyq_sub(a, polyq_shift_mul(b, da - db, c));
    da = degq(a);
  }
  return {q, a};
}
}  // namespace

TowerElem TowerElem::inverse() const {
  if (is_zero()) throw DivisionByZero("TowerElem: inverse of 0");
  int e = ctx_.e;
  if (e == 1) return TowerElem(ctx_, QQ(1) / c_[0]);
  // modulus m = X^e - p (irreducible by Eisenstein)
  PolyQ m(e + 1, QQ(0));
  m[0] = -QQ(ctx_.p);
  m[e] = 1;
  PolyQ r0 = m, r1(c_.begin(), c_.end());
  PolyQ s0(1, QQ(0)), s1(1, QQ(1));  // s tracks coefficients of the element
  while (degq(r1) > 0) {
    auto [q, r] = polyq_divmod(r0, r1);
    PolyQ s2 = polyq_sub(s0, [&] {
      // s0 - q*s1
      PolyQ t(s1.size() + q.size(), QQ(0));
      for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (size_t j = 0; j < s1.size(); ++j) t[i + j] += q[i] * s1[j];
      }
      return t;
    }());
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (degq(r1) < 0) throw std::logic_error("inverse: gcd degenerate");
  QQ lead = r1[0];
  s1 = polyq_scale(s1, QQ(1) / lead);
  // reduce s1 mod X^e - p
  std::vector<QQ> c(e, QQ(0));
  for (size_t i = 0; i < s1.size(); ++i) {
    if (s1[i] == 0) continue;
    size_t k = i;
    QQ v = s1[i];
    while (k >= static_cast<size_t>(e)) {
      k -= e;
      v *= ctx_.p;
    }
    c[k] += v;
  }
  return TowerElem(ctx_, std::move(c));
}

TowerElem TowerElem::operator/(const TowerElem& o) const { return *this * o.inverse(); }

TowerElem TowerElem::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  TowerElem r = one(ctx_), b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

bool TowerElem::operator==(const TowerElem& o) const {
  TowerElem a = *this, b = o;
  align(a, b);
  return (a - b).is_zero();
}

std::string TowerElem::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < ctx_.e; ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << rational_str(c_[i]);
    if (i == 1) os << "*pi";
    if (i > 1) os << "*pi^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace berk
