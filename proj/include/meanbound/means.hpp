#pragma once

// Power means and exponential means over the extended parameter line
// {-inf} u R u {+inf}, evaluated in the log domain with max-shifted
// log-sum-exp so that large parameters and wide spreads do not overflow.

#include <span>
#include <stdexcept>
#include <vector>

namespace meanbound {

class ExtendedExponent {
 public:
  enum class Tag { neg_inf, finite, pos_inf };

  static ExtendedExponent neg_inf() { return ExtendedExponent(Tag::neg_inf, 0.0); }
  static ExtendedExponent pos_inf() { return ExtendedExponent(Tag::pos_inf, 0.0); }
  static ExtendedExponent finite(double p);
  // maps +-infinity to the corresponding tag, rejects NaN
  static ExtendedExponent from(double p);

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::finite; }
  double value() const;  // throws unless finite

 private:
  ExtendedExponent(Tag t, double v) : tag_(t), value_(v) {}
  Tag tag_;
  double value_;
};

// Nonempty vector of strictly positive finite reals.
class PositiveVector {
 public:
  explicit PositiveVector(std::vector<double> entries);
  std::span<const double> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<double> entries_;
};

// Nonempty vector of finite reals.
class RealVector {
 public:
  explicit RealVector(std::vector<double> entries);
  std::span<const double> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<double> entries_;
};

double log_power_mean(ExtendedExponent p, const PositiveVector& v);
double power_mean(ExtendedExponent p, const PositiveVector& v);
double exponential_mean(ExtendedExponent p, const RealVector& v);

// power_mean(p, v) / power_mean(q, v), formed from the log-domain values;
// exactly 1 for constant v
double ratio(ExtendedExponent p, ExtendedExponent q, const PositiveVector& v);

// max v / min v; exactly 1 iff v is constant
double spread_gamma(const PositiveVector& v);

}  // namespace meanbound
