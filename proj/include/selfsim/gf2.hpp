#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace selfsim {

/// Polynomial in t over the two-element field, bit i holding the
/// coefficient of t^i.
class GF2Poly {
 public:
  GF2Poly() = default;
  static GF2Poly zero() { return {}; }
  static GF2Poly one() { return monomial(0); }
  static GF2Poly monomial(std::size_t degree);
  /// From coefficient bits, lowest degree first: {1,1} is 1+t.
  static GF2Poly from_bits(const std::vector<int>& bits);

  bool is_zero() const { return words_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const;
  bool coeff(std::size_t i) const;

  GF2Poly operator+(const GF2Poly& o) const;
  GF2Poly operator*(const GF2Poly& o) const;
  GF2Poly& operator+=(const GF2Poly& o);
  /// Quotient and remainder; divisor must be nonzero.
  void divmod(const GF2Poly& divisor, GF2Poly& quotient, GF2Poly& remainder) const;
  GF2Poly operator/(const GF2Poly& o) const;
  GF2Poly operator%(const GF2Poly& o) const;

  bool operator==(const GF2Poly& o) const = default;

  /// e.g. "1 + t + t^3"
  std::string to_string() const;

 private:
  void trim();
  void set(std::size_t i, bool v);
  std::vector<std::uint64_t> words_;
};

GF2Poly gcd(GF2Poly a, GF2Poly b);

/// Element of the field of rational functions GF(2)(t), kept in lowest terms
/// with a nonzero denominator. For series arising from tree automorphisms
/// the denominator has constant term 1.
class RationalSeries {
 public:
  RationalSeries() : num_(), den_(GF2Poly::one()) {}
  RationalSeries(GF2Poly num, GF2Poly den);
  static RationalSeries constant(bool c) { return {c ? GF2Poly::one() : GF2Poly::zero(), GF2Poly::one()}; }

  const GF2Poly& numerator() const { return num_; }
  const GF2Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalSeries operator+(const RationalSeries& o) const;
  RationalSeries operator*(const RationalSeries& o) const;
  RationalSeries inverse() const;
  RationalSeries operator/(const RationalSeries& o) const { return *this * o.inverse(); }

  bool operator==(const RationalSeries& o) const = default;

  /// First n coefficients of the power series expansion (needs den(0)=1).
  std::vector<int> expand(std::size_t n) const;
  std::string to_string() const;

 private:
  GF2Poly num_;
  GF2Poly den_;
};

/// 1/(1+t) = 1 + t + t^2 + ..., the series of a level-transitive element.
RationalSeries all_ones_series();

/// Solves (I + t B) x = c over GF(2)(t) and returns x. rows[i] lists the
/// column indices j (with multiplicity) of B's row i; rhs[i] is c_i in {0,1}.
std::vector<RationalSeries> solve_section_system(const std::vector<std::vector<std::size_t>>& rows,
                                                 const std::vector<int>& rhs);

}  // namespace selfsim
