#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace selfsim {

using Point = std::uint16_t;
using Perm = std::vector<Point>;
using BigInt = boost::multiprecision::cpp_int;

Perm perm_identity(std::size_t n);
/// (p * q)(x) = p(q(x))
Perm perm_mul(const Perm& p, const Perm& q);
Perm perm_inv(const Perm& p);
bool perm_is_identity(const Perm& p);

/// Base and strong generating set built by deterministic Schreier-Sims.
/// Base points are the smallest points moved by the residue that forces
/// them; transversal elements are stored explicitly with their inverses.
class PermGroup {
 public:
  PermGroup(std::size_t degree, const std::vector<Perm>& generators);

  std::size_t degree() const { return n_; }
  BigInt order() const;
  std::vector<Point> base() const;
  std::vector<std::size_t> orbit_sizes() const;
  const std::vector<Perm>& strong_generators() const { return strong_; }
  bool contains(const Perm& g) const;
  /// True when the group acts transitively on all points.
  bool is_transitive() const;

 private:
  struct Level {
    Point point;
    std::vector<Point> orbit;
    std::vector<std::int32_t> slot;  // point -> index into orbit, or -1
    std::vector<Perm> u;             // u[i] maps point to orbit[i]
    std::vector<Perm> u_inv;
    std::vector<std::size_t> gens;   // strong generators fixing the earlier base points
    std::vector<std::size_t> tested; // per orbit index: count of gens already checked
  };

  // Residue after sifting from level `from`; `stop` receives the level where
  // sifting stopped (levels_.size() when it went through).
  Perm sift(Perm g, std::size_t from, std::size_t& stop) const;
  void add_generator(const Perm& g, std::size_t first_level, std::size_t last_level);
  void extend_orbit(std::size_t level);
  void build();

  std::size_t n_;
  std::vector<Perm> strong_;
  std::vector<Level> levels_;
};

/// Exhaustive closure of the generated group; only for small groups.
/// Returns 0 when the size would exceed cap.
std::uint64_t enumerate_perm_group_order(std::size_t degree, const std::vector<Perm>& generators,
                                         std::uint64_t cap);

}  // namespace selfsim
