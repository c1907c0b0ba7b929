#include "selfsim/gf2.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace selfsim {

GF2Poly GF2Poly::monomial(std::size_t degree) {
  GF2Poly p;
  p.set(degree, true);
  return p;
}

GF2Poly GF2Poly::from_bits(const std::vector<int>& bits) {
  GF2Poly p;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] & 1) p.set(i, true);
  return p;
}

void GF2Poly::set(std::size_t i, bool v) {
  const std::size_t w = i / 64;
  if (w >= words_.size()) {
    if (!v) return;
    words_.resize(w + 1, 0);
  }
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (v)
    words_[w] |= bit;
  else
    words_[w] &= ~bit;
  trim();
}

void GF2Poly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

long GF2Poly::degree() const {
  if (words_.empty()) return -1;
  return static_cast<long>((words_.size() - 1) * 64 + 63 - __builtin_clzll(words_.back()));
}

bool GF2Poly::coeff(std::size_t i) const {
  const std::size_t w = i / 64;
  return w < words_.size() && ((words_[w] >> (i % 64)) & 1);
}

GF2Poly& GF2Poly::operator+=(const GF2Poly& o) {
  if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
  for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
  trim();
  return *this;
}

GF2Poly GF2Poly::operator+(const GF2Poly& o) const {
  GF2Poly r = *this;
  r += o;
  return r;
}

GF2Poly GF2Poly::operator*(const GF2Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  GF2Poly r;
  r.words_.assign(words_.size() + o.words_.size(), 0);
  // shift-and-add, one bit of *this at a time
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (unsigned b = 0; b < 64; ++b) {
      if (!((words_[i] >> b) & 1)) continue;
      for (std::size_t j = 0; j < o.words_.size(); ++j) {
        const std::uint64_t v = o.words_[j];
        r.words_[i + j] ^= v << b;
        if (b) r.words_[i + j + 1] ^= v >> (64 - b);
      }
    }
  r.trim();
  return r;
}

void GF2Poly::divmod(const GF2Poly& divisor, GF2Poly& quotient, GF2Poly& remainder) const {
  if (divisor.is_zero()) throw std::domain_error("GF2Poly division by zero");
  quotient = GF2Poly();
  remainder = *this;
  const long dd = divisor.degree();
  while (!remainder.is_zero() && remainder.degree() >= dd) {
    const std::size_t shift = static_cast<std::size_t>(remainder.degree() - dd);
    quotient.set(shift, !quotient.coeff(shift));
    // remainder -= divisor * t^shift
    GF2Poly shifted;
    shifted.words_.assign(divisor.words_.size() + shift / 64 + 1, 0);
    const unsigned b = shift % 64;
    for (std::size_t j = 0; j < divisor.words_.size(); ++j) {
      shifted.words_[j + shift / 64] ^= divisor.words_[j] << b;
      if (b) shifted.words_[j + shift / 64 + 1] ^= divisor.words_[j] >> (64 - b);
    }
    shifted.trim();
    remainder += shifted;
  }
}

GF2Poly GF2Poly::operator/(const GF2Poly& o) const {
  GF2Poly q, r;
  divmod(o, q, r);
  return q;
}

GF2Poly GF2Poly::operator%(const GF2Poly& o) const {
  GF2Poly q, r;
  divmod(o, q, r);
  return r;
}

std::string GF2Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (long i = 0; i <= degree(); ++i) {
    if (!coeff(static_cast<std::size_t>(i))) continue;
    if (!out.empty()) out += " + ";
    if (i == 0)
      out += "1";
    else if (i == 1)
      out += "t";
    else
      out += "t^" + std::to_string(i);
  }
  return out;
}

GF2Poly gcd(GF2Poly a, GF2Poly b) {
  while (!b.is_zero()) {
    GF2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// ---------------------------------------------------------------------------

RationalSeries::RationalSeries(GF2Poly num, GF2Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  if (num_.is_zero()) {
    den_ = GF2Poly::one();
    return;
  }
  const GF2Poly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

RationalSeries RationalSeries::operator+(const RationalSeries& o) const {
  if (den_ == o.den_) return {num_ + o.num_, den_};
  return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

RationalSeries RationalSeries::operator*(const RationalSeries& o) const {
  return {num_ * o.num_, den_ * o.den_};
}

RationalSeries RationalSeries::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero");
  return {den_, num_};
}

std::vector<int> RationalSeries::expand(std::size_t n) const {
  if (!den_.coeff(0)) throw std::domain_error("series expansion needs a unit constant term");
  // den * s = num, solved coefficient by coefficient
  std::vector<int> s(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    int v = num_.coeff(k) ? 1 : 0;
    for (std::size_t j = 1; j <= k; ++j)
      if (den_.coeff(j)) v ^= s[k - j];
    s[k] = v;
  }
  return s;
}

std::string RationalSeries::to_string() const {
  if (den_ == GF2Poly::one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalSeries all_ones_series() { return {GF2Poly::one(), GF2Poly::from_bits({1, 1})}; }

std::vector<RationalSeries> solve_section_system(const std::vector<std::vector<std::size_t>>& rows,
                                                 const std::vector<int>& rhs) {
  const std::size_t k = rows.size();
  const RationalSeries t_series{GF2Poly::monomial(1), GF2Poly::one()};
  // sparse augmented rows; column k holds the right-hand side
  std::vector<std::map<std::size_t, RationalSeries>> m(k);
  for (std::size_t i = 0; i < k; ++i) {
    m[i][i] = RationalSeries::constant(true);
    for (std::size_t j : rows[i]) {
      RationalSeries v = m[i].count(j) ? m[i][j] + t_series : t_series;
      if (v.is_zero())
        m[i].erase(j);
      else
        m[i][j] = v;
    }
    if (rhs[i] & 1) m[i][k] = RationalSeries::constant(true);
  }

  std::vector<std::size_t> pivot_row(k);
  std::vector<bool> used(k, false);
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t best = k;
    long best_deg = 0;
    for (std::size_t r = 0; r < k; ++r) {
      if (used[r]) continue;
      auto it = m[r].find(col);
      if (it == m[r].end()) continue;
      const long deg = it->second.numerator().degree() + it->second.denominator().degree();
      if (best == k || deg < best_deg) {
        best = r;
        best_deg = deg;
      }
    }
    if (best == k) throw std::domain_error("singular section system");
    used[best] = true;
    pivot_row[col] = best;
    const RationalSeries inv = m[best][col].inverse();
    for (auto& [c, v] : m[best]) v = v * inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == best) continue;
      auto it = m[r].find(col);
      if (it == m[r].end()) continue;
      const RationalSeries f = it->second;
      for (const auto& [c, v] : m[best]) {
        RationalSeries nv = m[r].count(c) ? m[r][c] + f * v : f * v;
        if (nv.is_zero())
          m[r].erase(c);
        else
          m[r][c] = nv;
      }
    }
  }
  std::vector<RationalSeries> x(k);
  for (std::size_t col = 0; col < k; ++col) {
    auto it = m[pivot_row[col]].find(k);
    if (it != m[pivot_row[col]].end()) x[col] = it->second;
  }
  return x;
}

}  // namespace selfsim
