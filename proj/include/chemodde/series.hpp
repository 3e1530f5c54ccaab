#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chemodde/errors.hpp"

namespace chemodde {

/// A sequence indexed by integer time t in [first(), last()].
///
/// Most sequences in the model start at a negative index (the initial history
/// window of length r+1 ends at t = 0), so plain vectors are wrapped with an
/// offset instead of shifting indices at every call site.
class Series {
 public:
  Series() = default;
  Series(long first, std::vector<double> values) : first_(first), values_(std::move(values)) {}
  Series(long first, long last, double fill)
      : first_(first), values_(last >= first ? static_cast<std::size_t>(last - first + 1) : 0, fill) {}

  long first() const noexcept { return first_; }
  long last() const noexcept { return first_ + static_cast<long>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  bool contains(long t) const noexcept { return t >= first_ && t <= last(); }

  double operator[](long t) const { return values_[static_cast<std::size_t>(t - first_)]; }
  double& operator[](long t) { return values_[static_cast<std::size_t>(t - first_)]; }

  double at(long t) const {
    if (!contains(t)) throw UsageError("series index " + std::to_string(t) + " outside [" +
                                       std::to_string(first_) + ", " + std::to_string(last()) + "]");
    return (*this)[t];
  }

  void push_back(double v) { values_.push_back(v); }

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }

 private:
  long first_ = 0;
  std::vector<double> values_;
};

}  // namespace chemodde
