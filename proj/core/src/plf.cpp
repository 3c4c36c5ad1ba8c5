#include "berkcrucial/plf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace berk {

namespace {
QQ pick_anchor(bool lo_inf, const QQ& lo, bool hi_inf, const QQ& hi) {
  if (!lo_inf) return lo;
  if (!hi_inf) return hi;
  return QQ(0);
}
}  // namespace

Plf Plf::affine(bool lo_inf, QQ lo, bool hi_inf, QQ hi, QQ anchor_x,
                QQ value_at_anchor, QQ slope) {
  Plf f;
  f.lo_inf_ = lo_inf;
  f.hi_inf_ = hi_inf;
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  f.anchor_x_ = std::move(anchor_x);
  f.v0_ = std::move(value_at_anchor);
  f.slopes_ = {std::move(slope)};
  return f;
}

Plf Plf::lower_envelope(bool lo_inf, QQ lo, bool hi_inf, QQ hi,
                        const std::vector<std::pair<QQ, QQ>>& lines_in) {
  if (lines_in.empty()) throw std::logic_error("lower_envelope: no lines");
  // dedupe by slope, keeping the minimal intercept; sort by slope descending
  std::vector<std::pair<QQ, QQ>> lines = lines_in;
  std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::pair<QQ, QQ>> uniq;
  for (auto& l : lines)
    if (uniq.empty() || uniq.back().first != l.first) uniq.push_back(l);
  // sweep left to right: pieces have decreasing slope; maintain hull with
  // crossing points increasing.
  std::vector<std::pair<QQ, QQ>> hull;  // lines in envelope order
  std::vector<QQ> cross;                // cross[i] between hull[i] and hull[i+1]
  auto xcross = [](const std::pair<QQ, QQ>& a, const std::pair<QQ, QQ>& b) -> QQ {
    return QQ((b.second - a.second) / (a.first - b.first));
  };
  for (const auto& l : uniq) {
    while (!hull.empty()) {
      if (hull.size() == 1) {
        QQ x = xcross(hull.back(), l);
        cross = {x};
        break;
      }
      QQ x = xcross(hull.back(), l);
      if (x <= cross.back()) {
        hull.pop_back();
        cross.pop_back();
      } else {
        cross.push_back(x);
        break;
      }
    }
    hull.push_back(l);
  }
  Plf f;
  f.lo_inf_ = lo_inf;
  f.hi_inf_ = hi_inf;
  f.lo_ = lo;
  f.hi_ = hi;
  // clip crossings to the domain
  f.slopes_.clear();
  f.bps_.clear();
  for (size_t i = 0; i < hull.size(); ++i) {
    bool keep = true;
    if (i > 0) {
      const QQ& x = cross[i - 1];
      if (!lo_inf && x <= lo) {
        // piece entirely covers lo side; drop earlier pieces
        f.slopes_.clear();
        f.bps_.clear();
      } else if (!hi_inf && x >= hi) {
        keep = false;
      } else {
        f.bps_.push_back(x);
      }
    }
    if (!keep) break;
    f.slopes_.push_back(hull[i].first);
  }
  f.anchor_x_ = pick_anchor(lo_inf, lo, hi_inf, hi);
  // value at anchor from the line active there
  {
    size_t piece = 0;
    while (piece < f.bps_.size() && f.anchor_x_ > f.bps_[piece]) ++piece;
    // find that line: slopes_[piece]
    // recompute intercept from hull
    QQ slope = f.slopes_[piece];
    QQ intercept;
    for (const auto& l : hull)
      if (l.first == slope) intercept = l.second;
    f.v0_ = slope * f.anchor_x_ + intercept;
  }
  f.normalize();
  return f;
}

void Plf::normalize() {
  // merge equal adjacent slopes
  std::vector<QQ> nb, ns;
  ns.push_back(slopes_[0]);
  for (size_t i = 0; i < bps_.size(); ++i) {
    if (slopes_[i + 1] == ns.back()) continue;
    nb.push_back(bps_[i]);
    ns.push_back(slopes_[i + 1]);
  }
  bps_ = std::move(nb);
  slopes_ = std::move(ns);
}

int Plf::piece_of(const QQ& x) const {
  int i = 0;
  while (i < static_cast<int>(bps_.size()) && x > bps_[i]) ++i;
  return i;
}

QQ Plf::evaluate(const QQ& x) const {
  // integrate slopes from anchor to x
  QQ v = v0_;
  if (x >= anchor_x_) {
    QQ cur = anchor_x_;
    for (size_t i = 0; i <= bps_.size(); ++i) {
      QQ seg_end = (i < bps_.size() && bps_[i] < x) ? bps_[i] : x;
      if (seg_end > cur) {
        // slope of piece containing (cur, seg_end)
        v += slopes_[piece_of((cur + seg_end) / 2)] * (seg_end - cur);
        cur = seg_end;
      }
      if (cur == x) break;
    }
  } else {
    QQ cur = anchor_x_;
    for (int i = static_cast<int>(bps_.size()); i >= 0; --i) {
      QQ seg_end = (i > 0 && bps_[i - 1] > x) ? bps_[i - 1] : x;
      if (seg_end < cur) {
        v -= slopes_[piece_of((cur + seg_end) / 2)] * (cur - seg_end);
        cur = seg_end;
      }
      if (cur == x) break;
    }
  }
  return v;
}

QQ Plf::slope_right(const QQ& x) const {
  int i = 0;
  while (i < static_cast<int>(bps_.size()) && x >= bps_[i]) ++i;
  return slopes_[i];
}

QQ Plf::slope_left(const QQ& x) const {
  int i = static_cast<int>(bps_.size());
  while (i > 0 && x <= bps_[i - 1]) --i;
  return slopes_[i];
}

QQ Plf::first_slope() const { return slopes_.front(); }
QQ Plf::last_slope() const { return slopes_.back(); }

Plf Plf::combine(const Plf& a, const Plf& b, bool do_min, bool do_max) {
  Plf r;
  r.lo_inf_ = a.lo_inf_;
  r.hi_inf_ = a.hi_inf_;
  r.lo_ = a.lo_;
  r.hi_ = a.hi_;
  // merged breakpoints
  std::vector<QQ> xs;
  xs.insert(xs.end(), a.bps_.begin(), a.bps_.end());
  xs.insert(xs.end(), b.bps_.begin(), b.bps_.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (do_min || do_max) {
    // crossings of the two affine pieces on every wall-delimited interval
    std::vector<QQ> grid;
    if (!a.lo_inf_) grid.push_back(a.lo_);
    grid.insert(grid.end(), xs.begin(), xs.end());
    if (!a.hi_inf_) grid.push_back(a.hi_);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<QQ> crossings;
    auto cross_from = [&](const QQ& x0, const QQ& sa, const QQ& sb) -> QQ {
      QQ va = a.evaluate(x0), vb = b.evaluate(x0);
      return QQ(x0 + (vb - va) / (sa - sb));
    };
    // finite intervals
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
      QQ sa = a.slope_right(grid[i]), sb = b.slope_right(grid[i]);
      if (sa == sb) continue;
      QQ x = cross_from(grid[i], sa, sb);
      if (x > grid[i] && x < grid[i + 1]) crossings.push_back(x);
    }
    if (a.lo_inf_ && !grid.empty()) {
      QQ sa = a.slope_left(grid.front()), sb = b.slope_left(grid.front());
      if (sa != sb) {
        QQ x = cross_from(grid.front(), sa, sb);
        if (x < grid.front()) crossings.push_back(x);
      }
    }
    if (a.hi_inf_ && !grid.empty()) {
      QQ sa = a.slope_right(grid.back()), sb = b.slope_right(grid.back());
      if (sa != sb) {
        QQ x = cross_from(grid.back(), sa, sb);
        if (x > grid.back()) crossings.push_back(x);
      }
    }
    if (grid.empty()) {
      QQ sa = a.last_slope(), sb = b.last_slope();
      if (sa != sb) crossings.push_back(cross_from(QQ(0), sa, sb));
    }
    xs.insert(xs.end(), crossings.begin(), crossings.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }
  // drop walls outside the open domain
  std::vector<QQ> keep;
  for (const auto& x : xs) {
    if (!a.lo_inf_ && x <= a.lo_) continue;
    if (!a.hi_inf_ && x >= a.hi_) continue;
    keep.push_back(x);
  }
  xs = std::move(keep);
  r.anchor_x_ = pick_anchor(a.lo_inf_, a.lo_, a.hi_inf_, a.hi_);
  auto val = [&](const QQ& x) -> QQ {
    QQ va = a.evaluate(x), vb = b.evaluate(x);
    if (do_min) return std::min(va, vb);
    if (do_max) return std::max(va, vb);
    return QQ(va + vb);
  };
  r.v0_ = val(r.anchor_x_);
  r.bps_ = xs;
  r.slopes_.clear();
  // slope on each piece: evaluate at piece interior (or use representative)
  auto piece_slope = [&](const QQ& xl, const QQ& xr) -> QQ {
    QQ mid = (xl + xr) / 2;
    QQ h = (xr - xl) / 4;
    return QQ((val(mid + h) - val(mid - h)) / (2 * h));
  };
  if (xs.empty()) {
    if (!a.lo_inf_ && !a.hi_inf_)
      r.slopes_.push_back(piece_slope(a.lo_, a.hi_));
    else if (!a.lo_inf_)
      r.slopes_.push_back(piece_slope(a.lo_, a.lo_ + 1));
    else if (!a.hi_inf_)
      r.slopes_.push_back(piece_slope(a.hi_ - 1, a.hi_));
    else
      r.slopes_.push_back(piece_slope(QQ(-1), QQ(1)));
  } else {
    // leftmost piece
    if (a.lo_inf_)
      r.slopes_.push_back(piece_slope(xs.front() - 2, xs.front() - 1));
    else
      r.slopes_.push_back(piece_slope(a.lo_, xs.front()));
    for (size_t i = 0; i + 1 < xs.size(); ++i)
      r.slopes_.push_back(piece_slope(xs[i], xs[i + 1]));
    if (a.hi_inf_)
      r.slopes_.push_back(piece_slope(xs.back() + 1, xs.back() + 2));
    else
      r.slopes_.push_back(piece_slope(xs.back(), a.hi_));
  }
  r.normalize();
  return r;
}

Plf Plf::operator+(const Plf& o) const { return combine(*this, o, false, false); }
Plf Plf::operator-(const Plf& o) const { return combine(*this, -o, false, false); }

Plf Plf::operator-() const {
  Plf r = *this;
  r.v0_ = -r.v0_;
  for (auto& s : r.slopes_) s = -s;
  return r;
}

Plf Plf::scaled(const QQ& c) const {
  Plf r = *this;
  r.v0_ *= c;
  for (auto& s : r.slopes_) s *= c;
  if (c == 0) {
    r.bps_.clear();
    r.slopes_ = {QQ(0)};
  }
  return r;
}

Plf Plf::shifted(const QQ& c) const {
  Plf r = *this;
  r.v0_ += c;
  return r;
}

Plf Plf::x_shifted(const QQ& dx) const {
  Plf r = *this;
  r.lo_ += dx;
  r.hi_ += dx;
  r.anchor_x_ += dx;
  for (auto& x : r.bps_) x += dx;
  return r;
}

Plf Plf::min(const Plf& a, const Plf& b) { return combine(a, b, true, false); }
Plf Plf::max(const Plf& a, const Plf& b) { return combine(a, b, false, true); }

Plf::MinResult Plf::minimum() const {
  if (lo_inf_ && slopes_.front() > 0)
    throw std::logic_error("Plf::minimum: unbounded toward -inf");
  if (hi_inf_ && slopes_.back() < 0)
    throw std::logic_error("Plf::minimum: unbounded toward +inf");
  // candidate points: domain ends (finite) and breakpoints
  std::vector<QQ> cands = bps_;
  if (!lo_inf_) cands.push_back(lo_);
  if (!hi_inf_) cands.push_back(hi_);
  if (cands.empty()) cands.push_back(anchor_x_);
  std::sort(cands.begin(), cands.end());
  QQ best = evaluate(cands[0]);
  for (const auto& x : cands) best = std::min(best, evaluate(x));
  // argmin interval: leftmost and rightmost candidates attaining the min,
  // extended across flat pieces
  QQ arg_lo = cands.front(), arg_hi = cands.back();
  bool found = false;
  for (const auto& x : cands) {
    if (evaluate(x) == best) {
      if (!found) arg_lo = x;
      arg_hi = x;
      found = true;
    }
  }
  return MinResult{best, arg_lo, arg_hi};
}

Plf Plf::restrict(bool alo_inf, QQ a, bool ahi_inf, QQ b) const {
  Plf r;
  r.lo_inf_ = alo_inf;
  r.hi_inf_ = ahi_inf;
  r.lo_ = a;
  r.hi_ = b;
  r.anchor_x_ = pick_anchor(alo_inf, a, ahi_inf, b);
  r.v0_ = evaluate(r.anchor_x_);
  for (size_t i = 0; i < bps_.size(); ++i) {
    bool inside = true;
    if (!alo_inf && bps_[i] <= a) inside = false;
    if (!ahi_inf && bps_[i] >= b) inside = false;
    if (inside) r.bps_.push_back(bps_[i]);
  }
  r.slopes_.clear();
  if (r.bps_.empty()) {
    r.slopes_.push_back(!alo_inf ? slope_right(a) : slope_left(b));
  } else {
    r.slopes_.push_back(slope_left(r.bps_.front()));
    for (size_t i = 0; i + 1 < r.bps_.size(); ++i)
      r.slopes_.push_back(slope_right(r.bps_[i]));
    r.slopes_.push_back(slope_right(r.bps_.back()));
  }
  r.normalize();
  return r;
}

std::string Plf::str() const {
  std::ostringstream os;
  os << "Plf[" << (lo_inf_ ? std::string("-inf") : rational_str(lo_)) << ","
     << (hi_inf_ ? std::string("+inf") : rational_str(hi_)) << "] anchor("
     << rational_str(anchor_x_) << ")=" << rational_str(v0_) << " slopes ";
  for (size_t i = 0; i < slopes_.size(); ++i) {
    if (i > 0) os << " |" << rational_str(bps_[i - 1]) << "| ";
    os << rational_str(slopes_[i]);
  }
  return os.str();
}

}  // namespace berk
