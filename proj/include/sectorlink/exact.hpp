#pragma once

// Exact sign evaluation for sums of products of doubles.
//
// Every angular and distance predicate in the library reduces to the sign of
// a polynomial of degree two in the input coordinates. Such a polynomial is
// written as a list of products a_i * b_i; each product is split exactly into
// two doubles with an FMA and the pieces are accumulated into a
// nonoverlapping floating-point expansion (Shewchuk's grow-expansion). A
// cheap floating-point estimate with a forward error bound answers the easy
// cases first. Products small enough to underflow go through GMP rationals.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>

namespace sectorlink::exact {

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

inline void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double bv = sum - a;
  const double av = sum - bv;
  err = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& prod, double& err) {
  prod = a * b;
  err = std::fma(a, b, -prod);
}

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Fixed-capacity nonoverlapping expansion, smallest magnitude first.
template <std::size_t Capacity>
class Expansion {
 public:
  void grow(double b) {
    double q = b;
    std::size_t out = 0;
    for (std::size_t i = 0; i < size_; ++i) {
      double s, e;
      two_sum(q, terms_[i], s, e);
      q = s;
      if (e != 0.0) terms_[out++] = e;
    }
    if (q != 0.0) {
      if (out >= Capacity) throw std::length_error("exact expansion overflow");
      terms_[out++] = q;
    }
    size_ = out;
  }

  [[nodiscard]] int sign() const { return size_ == 0 ? 0 : sign_of(terms_[size_ - 1]); }
  [[nodiscard]] double estimate() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size_; ++i) s += terms_[i];
    return s;
  }

 private:
  std::array<double, Capacity> terms_{};
  std::size_t size_ = 0;
};

/// Accumulates a polynomial as a list of exact products and answers its sign.
class ProductSum {
 public:
  static constexpr std::size_t kMaxTerms = 128;

  void add(double a, double b) {
    if (count_ == kMaxTerms) throw std::length_error("too many product terms");
    lhs_[count_] = a;
    rhs_[count_] = b;
    ++count_;
  }
  void add(double a) { add(a, 1.0); }

  [[nodiscard]] std::size_t size() const { return count_; }

  [[nodiscard]] int sign() const {
    double estimate = 0.0;
    double magnitude = 0.0;
    for (std::size_t i = 0; i < count_; ++i) {
      const double p = lhs_[i] * rhs_[i];
      estimate += p;
      magnitude += std::fabs(p);
    }
    if (magnitude == 0.0) {
      // Products may have underflowed to zero; fall through only if any
      // factor pair is nonzero.
      bool any = false;
      for (std::size_t i = 0; i < count_ && !any; ++i) any = lhs_[i] != 0.0 && rhs_[i] != 0.0;
      if (!any) return 0;
    }
    const double n = static_cast<double>(count_ + 1);
    const double bound = 2.0 * n * kUnitRoundoff * magnitude;
    if (std::fabs(estimate) > bound && bound > std::numeric_limits<double>::min() * 1e16)
      return sign_of(estimate);
    return exact_sign();
  }

 private:
  [[nodiscard]] int exact_sign() const {
    // Near the subnormal range the FMA error term is no longer exact.
    for (std::size_t i = 0; i < count_; ++i)
      if (lhs_[i] != 0.0 && rhs_[i] != 0.0 && std::fabs(lhs_[i] * rhs_[i]) < 0x1p-900) return rational_sign();
    Expansion<2 * kMaxTerms + 2> acc;
    for (std::size_t i = 0; i < count_; ++i) {
      double p, e;
      two_product(lhs_[i], rhs_[i], p, e);
      if (e != 0.0) acc.grow(e);
      if (p != 0.0) acc.grow(p);
    }
    return acc.sign();
  }

  [[nodiscard]] int rational_sign() const {
    mpq_class s = 0;
    for (std::size_t i = 0; i < count_; ++i) s += mpq_class(lhs_[i]) * mpq_class(rhs_[i]);
    return sgn(s);
  }

  std::array<double, kMaxTerms> lhs_{};
  std::array<double, kMaxTerms> rhs_{};
  std::size_t count_ = 0;
};

/// Exact sign of a plain sum of doubles.
inline int sign_of_sum(std::initializer_list<double> values) {
  ProductSum ps;
  for (double v : values) ps.add(v);
  return ps.sign();
}

/// A value represented exactly as a signed sum of at most four doubles.
/// Coordinate differences and the 45-degree rotations used for sector
/// bisectors are all of this form, so predicates over them stay exact.
struct LinearForm {
  std::array<double, 4> terms{};
  std::uint8_t count = 0;

  LinearForm() = default;
  LinearForm(std::initializer_list<double> values) {
    for (double v : values) push(v);
  }

  void push(double v) {
    if (count == terms.size()) throw std::length_error("linear form overflow");
    terms[count++] = v;
  }

  [[nodiscard]] double approx() const {
    double s = 0.0;
    for (std::uint8_t i = 0; i < count; ++i) s += terms[i];
    return s;
  }

  [[nodiscard]] LinearForm negated() const {
    LinearForm out;
    for (std::uint8_t i = 0; i < count; ++i) out.push(-terms[i]);
    return out;
  }

  [[nodiscard]] std::span<const double> values() const { return {terms.data(), count}; }

  friend LinearForm operator+(const LinearForm& a, const LinearForm& b) {
    LinearForm out = a;
    for (double v : b.values()) out.push(v);
    return out;
  }
  friend LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + b.negated(); }
  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    if (a.count != b.count) return false;
    for (std::uint8_t i = 0; i < a.count; ++i)
      if (a.terms[i] != b.terms[i]) return false;
    return true;
  }
};

/// Appends sign * (a * b) expanded term by term.
inline void add_product(ProductSum& ps, const LinearForm& a, const LinearForm& b, double sign = 1.0) {
  for (double x : a.values())
    for (double y : b.values()) ps.add(sign * x, y);
}

}  // namespace sectorlink::exact
