#include "selfsim/perm_group.hpp"

#include <deque>
#include <set>

namespace selfsim {

Perm perm_identity(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Point>(i);
  return p;
}

Perm perm_mul(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Perm perm_inv(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<Point>(i);
  return r;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

namespace {

Point smallest_moved_point(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return static_cast<Point>(i);
  return 0;
}

}  // namespace

PermGroup::PermGroup(std::size_t degree, const std::vector<Perm>& generators) : n_(degree) {
  std::set<Perm> distinct;
  for (const auto& g : generators)
    if (!perm_is_identity(g) && distinct.insert(g).second) strong_.push_back(g);
  build();
}

Perm PermGroup::sift(Perm g, std::size_t from, std::size_t& stop) const {
  Perm tmp(n_);
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& lv = levels_[l];
    const std::int32_t k = lv.slot[g[lv.point]];
    if (k < 0) {
      stop = l;
      return g;
    }
    if (k == 0) continue;  // u[0] is the identity
    const Perm& ui = lv.u_inv[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < n_; ++i) tmp[i] = ui[g[i]];
    g.swap(tmp);
  }
  stop = levels_.size();
  return g;
}

void PermGroup::extend_orbit(std::size_t level) {
  Level& lv = levels_[level];
  for (std::size_t p = 0; p < lv.orbit.size(); ++p)
    for (std::size_t q : lv.gens) {
      const Perm& s = strong_[q];
      const Point image = s[lv.orbit[p]];
      if (lv.slot[image] >= 0) continue;
      lv.slot[image] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(image);
      Perm u = perm_mul(s, lv.u[p]);
      lv.u_inv.push_back(perm_inv(u));
      lv.u.push_back(std::move(u));
      lv.tested.push_back(0);
    }
}

void PermGroup::add_generator(const Perm& g, std::size_t first_level, std::size_t last_level) {
  strong_.push_back(g);
  const std::size_t id = strong_.size() - 1;
  for (std::size_t l = first_level; l <= last_level && l < levels_.size(); ++l) levels_[l].gens.push_back(id);
}

void PermGroup::build() {
  auto new_level = [&](Point point) {
    Level lv;
    lv.point = point;
    lv.orbit = {point};
    lv.slot.assign(n_, -1);
    lv.slot[point] = 0;
    lv.u = {perm_identity(n_)};
    lv.u_inv = {perm_identity(n_)};
    lv.tested = {0};
    levels_.push_back(std::move(lv));
  };
  // Initial base: every generator moves some base point.
  for (std::size_t q = 0; q < strong_.size(); ++q) {
    bool fixes_all = true;
    for (const auto& lv : levels_) fixes_all = fixes_all && strong_[q][lv.point] == lv.point;
    if (fixes_all) new_level(smallest_moved_point(strong_[q]));
  }
  for (std::size_t q = 0; q < strong_.size(); ++q)
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      levels_[l].gens.push_back(q);
      if (strong_[q][levels_[l].point] != levels_[l].point) break;
    }

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  Perm g(n_);
  while (i >= 0) {
    const std::size_t li = static_cast<std::size_t>(i);
    extend_orbit(li);
    bool restarted = false;
    for (std::size_t p = 0; p < levels_[li].orbit.size() && !restarted; ++p) {
      while (levels_[li].tested[p] < levels_[li].gens.size()) {
        Level& lv = levels_[li];
        const Perm& s = strong_[lv.gens[lv.tested[p]]];
        ++lv.tested[p];
        // Schreier generator u_{s(b)}^-1 s u_b
        const Point b = lv.orbit[p];
        const Perm& ub = lv.u[p];
        const Perm& back = lv.u_inv[static_cast<std::size_t>(lv.slot[s[b]])];
        for (std::size_t x = 0; x < n_; ++x) g[x] = back[s[ub[x]]];
        if (perm_is_identity(g)) continue;
        std::size_t stop = 0;
        Perm h = sift(g, li + 1, stop);
        if (perm_is_identity(h)) continue;
        if (stop == levels_.size()) new_level(smallest_moved_point(h));
        add_generator(h, li + 1, stop);
        i = static_cast<std::ptrdiff_t>(stop);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
}

BigInt PermGroup::order() const {
  BigInt r = 1;
  for (const auto& lv : levels_) r *= lv.orbit.size();
  return r;
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.point);
  return b;
}

std::vector<std::size_t> PermGroup::orbit_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& lv : levels_) s.push_back(lv.orbit.size());
  return s;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.size() != n_) return false;
  std::size_t stop = 0;
  const Perm h = sift(g, 0, stop);
  return stop == levels_.size() && perm_is_identity(h);
}

bool PermGroup::is_transitive() const {
  if (levels_.empty()) return n_ <= 1;
  return levels_[0].orbit.size() == n_;
}

std::uint64_t enumerate_perm_group_order(std::size_t degree, const std::vector<Perm>& generators,
                                         std::uint64_t cap) {
  std::set<Perm> seen{perm_identity(degree)};
  std::deque<Perm> queue{perm_identity(degree)};
  while (!queue.empty()) {
    const Perm p = queue.front();
    queue.pop_front();
    for (const auto& s : generators) {
      Perm q = perm_mul(s, p);
      if (seen.insert(q).second) {
        if (seen.size() > cap) return 0;
        queue.push_back(std::move(q));
      }
    }
  }
  return seen.size();
}

}  // namespace selfsim
