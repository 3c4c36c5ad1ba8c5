#include "berkcrucial/poly.hpp"

#include <sstream>

namespace berk {

Poly::Poly(TowerContext ctx, std::vector<TowerElem> coeffs)
    : ctx_(ctx), c_(std::move(coeffs)) {
  for (auto& x : c_)
    if (x.context() != ctx_) x = x.embed(TowerContext::join(x.context(), ctx_));
  trim();
}

Poly Poly::constant(const TowerElem& c) {
  return Poly(c.context(), {c});
}

Poly Poly::from_rationals(const TowerContext& ctx, const std::vector<QQ>& cs) {
  std::vector<TowerElem> v;
  v.reserve(cs.size());
  for (const auto& q : cs) v.emplace_back(ctx, q);
  return Poly(ctx, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TowerElem Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return TowerElem::zero(ctx_);
  return c_[i];
}

void Poly::align(Poly& a, Poly& b) {
  if (a.ctx_ == b.ctx_) return;
  TowerContext j = TowerContext::join(a.ctx_, b.ctx_);
  a = a.embed(j);
  b = b.embed(j);
}

Poly Poly::embed(const TowerContext& finer) const {
  std::vector<TowerElem> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(x.embed(finer));
  return Poly(finer, std::move(v));
}

TowerElem Poly::eval(const TowerElem& x) const {
  TowerContext j = TowerContext::join(ctx_, x.context());
  TowerElem acc = TowerElem::zero(j), xx = x.embed(j);
  for (int i = deg(); i >= 0; --i) acc = acc * xx + c_[i].embed(j);
  return acc;
}

Poly Poly::derivative() const {
  std::vector<TowerElem> v;
  for (int i = 1; i <= deg(); ++i)
    v.push_back(c_[i] * TowerElem(ctx_, QQ(i)));
  return Poly(ctx_, std::move(v));
}

Poly Poly::shift(const TowerElem& a) const {
  // Horner recentering: coefficients of P(a + z)
  if (is_zero()) return *this;
  TowerContext j = TowerContext::join(ctx_, a.context());
  TowerElem aa = a.embed(j);
  std::vector<TowerElem> r;
  for (int i = deg(); i >= 0; --i) {
    // r <- r*(z + aa) + c_i
    std::vector<TowerElem> nr(r.size() + 1, TowerElem::zero(j));
    for (size_t k = 0; k < r.size(); ++k) {
      nr[k + 1] = nr[k + 1] + r[k];
      nr[k] = nr[k] + aa * r[k];
    }
    nr[0] = nr[0] + c_[i].embed(j);
    r = std::move(nr);
  }
  return Poly(j, std::move(r));
}

Poly Poly::scale_arg(const TowerElem& c) const {
  TowerContext j = TowerContext::join(ctx_, c.context());
  std::vector<TowerElem> v;
  v.reserve(c_.size());
  TowerElem pw = TowerElem::one(j);
  for (int i = 0; i <= deg(); ++i) {
    v.push_back(c_[i].embed(j) * pw);
    pw = pw * c.embed(j);
  }
  return Poly(j, std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
  Poly a = *this, b = o;
  align(a, b);
  std::vector<TowerElem> v(std::max(a.c_.size(), b.c_.size()),
                           TowerElem::zero(a.ctx_));
  for (size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] = v[i] + a.c_[i];
    if (i < b.c_.size()) v[i] = v[i] + b.c_[i];
  }
  return Poly(a.ctx_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (o * TowerElem(o.context(), QQ(-1))); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return zero(ctx_);
  Poly a = *this, b = o;
  align(a, b);
  std::vector<TowerElem> v(a.c_.size() + b.c_.size() - 1, TowerElem::zero(a.ctx_));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j2 = 0; j2 < b.c_.size(); ++j2)
      v[i + j2] = v[i + j2] + a.c_[i] * b.c_[j2];
  }
  return Poly(a.ctx_, std::move(v));
}

Poly Poly::operator*(const TowerElem& c) const {
  std::vector<TowerElem> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(x * c);
  return Poly(TowerContext::join(ctx_, c.context()), std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
  if (o.is_zero()) throw DivisionByZero("Poly::divmod by zero");
  Poly a = *this, b = o;
  align(a, b);
  int db = b.deg();
  std::vector<TowerElem> q(a.deg() >= db && a.deg() >= 0
                               ? a.deg() - db + 1
                               : 0,
                           TowerElem::zero(a.ctx_));
  TowerElem lead_inv = b.c_[db].inverse();
  while (a.deg() >= db) {
    int k = a.deg() - db;
    TowerElem c = a.c_[a.deg()] * lead_inv;
    q[k] = c;
    std::vector<TowerElem> sub(k + db + 1, TowerElem::zero(a.ctx_));
    for (int i = 0; i <= db; ++i) sub[k + i] = b.c_[i] * c;
    a = a - Poly(a.ctx_, std::move(sub));
  }
  return {Poly(b.context(), std::move(q)), a};
}

Poly Poly::gcd(Poly a, Poly b) {
  align(a, b);
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = a * a.c_[a.deg()].inverse();
  return a;
}

std::vector<std::pair<Poly, int>> Poly::squarefree_decomposition() const {
  std::vector<std::pair<Poly, int>> out;
  if (deg() <= 0) return out;
  Poly f = *this;
  Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = f.divmod(a).first;
  Poly c = fp.divmod(a).first;
  Poly d = c - b.derivative();
  int i = 1;
  while (b.deg() > 0) {
    Poly q = gcd(b, d);
    if (q.deg() > 0) out.emplace_back(q, i);
    b = b.divmod(q).first;
    c = d.divmod(q).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (int i = 0; i <= deg(); ++i) {
    if (c_[i].is_zero()) continue;
    if (os.tellp() > 0) os << " + ";
    os << "(" << c_[i].str() << ")";
    if (i == 1) os << "*z";
    if (i > 1) os << "*z^" << i;
  }
  return os.str();
}

}  // namespace berk
