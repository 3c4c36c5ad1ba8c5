#pragma once

#include <vector>

#include "berkcrucial/rational.hpp"

namespace berk {

/// Exact piecewise-linear function of one rational variable on an interval
/// whose ends may be infinite.  Finitely many breakpoints; evaluation,
/// arithmetic, min and argmin are all exact.
class Plf {
 public:
  Plf() = default;

  static Plf affine(bool lo_inf, QQ lo, bool hi_inf, QQ hi, QQ anchor_x,
                    QQ value_at_anchor, QQ slope);
  /// min over lines (slope, intercept): x -> min_i (s_i x + b_i).
  static Plf lower_envelope(bool lo_inf, QQ lo, bool hi_inf, QQ hi,
                            const std::vector<std::pair<QQ, QQ>>& lines);

  bool lo_inf() const { return lo_inf_; }
  bool hi_inf() const { return hi_inf_; }
  const QQ& lo() const { return lo_; }
  const QQ& hi() const { return hi_; }

  QQ evaluate(const QQ& x) const;
  /// Slope on the piece immediately right / left of x.
  QQ slope_right(const QQ& x) const;
  QQ slope_left(const QQ& x) const;
  QQ first_slope() const;  // leftmost piece
  QQ last_slope() const;   // rightmost piece
  const std::vector<QQ>& breakpoints() const { return bps_; }

  Plf operator+(const Plf& o) const;
  Plf operator-(const Plf& o) const;
  Plf operator-() const;
  Plf scaled(const QQ& c) const;
  Plf shifted(const QQ& c) const;    // f + c
  Plf x_shifted(const QQ& dx) const;  // x -> f(x - dx), domain moved by +dx
  static Plf min(const Plf& a, const Plf& b);
  static Plf max(const Plf& a, const Plf& b);

  /// Global minimum over the domain; requires the min to be attained
  /// (tail slopes pointing up at infinite ends).  Returns the value and the
  /// closed argmin interval [a, b].
  struct MinResult {
    QQ value;
    QQ arg_lo, arg_hi;
  };
  MinResult minimum() const;

  /// Restriction to [a, b] (subinterval of the domain).
  Plf restrict(bool alo_inf, QQ a, bool ahi_inf, QQ b) const;

  std::string str() const;

 private:
  bool lo_inf_ = false, hi_inf_ = false;
  QQ lo_{0}, hi_{1};
  QQ anchor_x_{0}, v0_{0};       // value at anchor (anchor inside the closure)
  std::vector<QQ> bps_;          // strictly increasing, inside (lo, hi)
  std::vector<QQ> slopes_;       // bps_.size() + 1 pieces

  int piece_of(const QQ& x) const;
  void normalize();
  static Plf combine(const Plf& a, const Plf& b, bool do_min, bool do_max);
};

}  // namespace berk
