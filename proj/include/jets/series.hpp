#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jets/error.hpp"

namespace jets {

/// Element of the prime field F_p as a machine residue in [0, p).
class Residue {
 public:
  Residue(std::uint64_t value, std::uint32_t p) : value_(static_cast<std::uint32_t>(value % p)), p_(p) {}

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend Residue operator+(Residue a, Residue b) {
    return Residue(std::uint64_t{a.value_} + b.value_, a.p_);
  }
  friend Residue operator-(Residue a, Residue b) {
    return Residue(std::uint64_t{a.value_} + a.p_ - b.value_, a.p_);
  }
  friend Residue operator*(Residue a, Residue b) {
    return Residue(std::uint64_t{a.value_} * b.value_, a.p_);
  }
  Residue operator-() const { return Residue(p_ - value_, p_); }

  Residue pow(std::uint64_t e) const {
    Residue result(1, p_);
    Residue base = *this;
    while (e) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  bool operator==(const Residue&) const = default;
  auto operator<=>(const Residue&) const = default;

  friend std::ostream& operator<<(std::ostream& os, Residue r) { return os << r.value_; }

 private:
  std::uint32_t value_;
  std::uint32_t p_;
};

/// Element of R[t]/(t^{m+1}): coefficient j sits at index j, for j = 0..m.
/// The coefficient type only needs +, -, * and ==, so the same code carries
/// both symbolic prolongation (polynomial coefficients) and arcs over F_p.
template <class T>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("a truncated series needs at least one coefficient");
  }

  /// c + 0*t + ... + 0*t^m.
  static TruncatedSeries constant(const T& c, const T& zero, std::size_t order) {
    std::vector<T> coeffs(order + 1, zero);
    coeffs[0] = c;
    return TruncatedSeries(std::move(coeffs));
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const T& operator[](std::size_t j) const { return coeffs_.at(j); }
  const std::vector<T>& coefficients() const noexcept { return coeffs_; }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_order(b);
    std::vector<T> out;
    out.reserve(a.coeffs_.size());
    for (std::size_t j = 0; j < a.coeffs_.size(); ++j) out.push_back(a.coeffs_[j] + b.coeffs_[j]);
    return TruncatedSeries(std::move(out));
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_order(b);
    std::vector<T> out;
    out.reserve(a.coeffs_.size());
    for (std::size_t j = 0; j < a.coeffs_.size(); ++j) out.push_back(a.coeffs_[j] - b.coeffs_[j]);
    return TruncatedSeries(std::move(out));
  }

  /// Truncated convolution: coefficient k is the sum of a_i * b_j over i + j = k.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_order(b);
    const std::size_t n = a.coeffs_.size();
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      T acc = a.coeffs_[0] * b.coeffs_[k];
      for (std::size_t i = 1; i <= k; ++i) acc = acc + a.coeffs_[i] * b.coeffs_[k - i];
      out.push_back(std::move(acc));
    }
    return TruncatedSeries(std::move(out));
  }

  bool operator==(const TruncatedSeries& other) const { return coeffs_ == other.coeffs_; }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (j) os << " + ";
      os << "(" << coeffs_[j] << ")";
      if (j == 1) os << "*t";
      if (j > 1) os << "*t^" << j;
    }
    return os.str();
  }

 private:
  void require_order(const TruncatedSeries& other) const {
    if (coeffs_.size() != other.coeffs_.size())
      throw DomainError("truncated series orders differ: " + std::to_string(order()) + " vs " +
                        std::to_string(other.order()));
  }

  std::vector<T> coeffs_;
};

/// Reparametrization t -> z*t: coefficient j is multiplied by z^j.
template <class T>
TruncatedSeries<T> ts_scale_t(const TruncatedSeries<T>& a, const T& z) {
  std::vector<T> out;
  out.reserve(a.order() + 1);
  out.push_back(a[0]);
  if (a.order() == 0) return TruncatedSeries<T>(std::move(out));
  T zj = z;
  for (std::size_t j = 1; j <= a.order(); ++j) {
    out.push_back(zj * a[j]);
    if (j < a.order()) zj = zj * z;
  }
  return TruncatedSeries<T>(std::move(out));
}

/// Image under t -> 0.
template <class T>
const T& ts_eval_at_zero(const TruncatedSeries<T>& a) {
  return a[0];
}

template <class T>
TruncatedSeries<T> ts_mul(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  return a * b;
}

}  // namespace jets
