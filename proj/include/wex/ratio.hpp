#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wex {

// Exact rational with positive denominator. All expansion ratios and the
// alpha parameter are kept exact so min/max selection has no float ties.
class Ratio {
public:
  Ratio() : num_(0), den_(1) {}
  Ratio(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Ratio: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }
  static Ratio of(long long v) { return Ratio(v, 1); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Ratio& a, const Ratio& b) { return !(a == b); }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return Ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) {
    return Ratio(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    return Ratio(a.num_ * b.num_, a.den_ * b.den_);
  }

  // Largest integer k with k <= value.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p/q", integers, and plain decimals ("0.3" -> 3/10).
  static Ratio parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      long long p = std::stoll(text.substr(0, slash));
      long long q = std::stoll(text.substr(slash + 1));
      return Ratio(p, q);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Ratio(std::stoll(text), 1);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    long long den = 1;
    for (size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Ratio(std::stoll(digits), den);
  }

private:
  long long num_;
  long long den_;
};

}  // namespace wex
