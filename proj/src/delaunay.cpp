#include "chirptf/delaunay.hpp"

#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace chirptf {

std::int64_t orient(const LatticeSite& a, const LatticeSite& b, const LatticeSite& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int incircle_sign(const LatticeSite& a, const LatticeSite& b, const LatticeSite& c,
                  const LatticeSite& d) {
  __extension__ typedef __int128 wide;
  const wide adx = a.x - d.x, ady = a.y - d.y;
  const wide bdx = b.x - d.x, bdy = b.y - d.y;
  const wide cdx = c.x - d.x, cdy = c.y - d.y;
  const wide det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
                   (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
                   (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

namespace {

constexpr std::size_t kGhost = std::numeric_limits<std::size_t>::max();

// Triangles are kept as counter-clockwise vertex cycles; a hull edge u->w is
// closed by the ghost triangle (u, w, kGhost) whose outside lies to the left
// of u->w.  Every directed edge belongs to exactly one live triangle.
class Builder {
 public:
  explicit Builder(std::span<const LatticeSite> sites) : p_(sites) {}

  void seed(std::size_t a, std::size_t b, std::size_t c) {
    if (orient(p_[a], p_[b], p_[c]) < 0) std::swap(b, c);
    add({a, b, c});
    add({b, a, kGhost});
    add({c, b, kGhost});
    add({a, c, kGhost});
  }

  void insert(std::size_t v) {
    std::size_t first = kGhost;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (alive_[t] && conflicts(t, v)) {
        first = t;
        break;
      }
    }
    if (first == kGhost) throw std::logic_error("delaunay: no conflicting triangle");

    std::vector<std::size_t> cavity;
    std::vector<std::uint8_t> seen(tris_.size(), 0);
    std::deque<std::size_t> queue{first};
    seen[first] = 1;
    while (!queue.empty()) {
      const std::size_t t = queue.front();
      queue.pop_front();
      cavity.push_back(t);
      for (int e = 0; e < 3; ++e) {
        const std::size_t nb = neighbour(t, e);
        if (!seen[nb] && conflicts(nb, v)) {
          seen[nb] = 1;
          queue.push_back(nb);
        }
      }
    }
    std::vector<std::array<std::size_t, 2>> rim;
    for (std::size_t t : cavity) {
      for (int e = 0; e < 3; ++e) {
        if (!seen[neighbour(t, e)]) rim.push_back(edge(t, e));
      }
    }
    for (std::size_t t : cavity) remove(t);
    for (const auto& [u, w] : rim) add({u, w, v});
  }

  std::vector<Triangle> finite() const {
    std::vector<Triangle> out;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      const Triangle& tr = tris_[t];
      if (alive_[t] && tr[0] != kGhost && tr[1] != kGhost && tr[2] != kGhost) out.push_back(tr);
    }
    return out;
  }

 private:
  static std::uint64_t key(std::size_t u, std::size_t w) {
    const auto cu = static_cast<std::uint32_t>(u == kGhost ? 0xffffffffu : u);
    const auto cw = static_cast<std::uint32_t>(w == kGhost ? 0xffffffffu : w);
    return (static_cast<std::uint64_t>(cu) << 32) | cw;
  }

  std::array<std::size_t, 2> edge(std::size_t t, int e) const {
    return {tris_[t][(e + 1) % 3], tris_[t][(e + 2) % 3]};
  }

  std::size_t neighbour(std::size_t t, int e) const {
    const auto [u, w] = edge(t, e);
    return edges_.at(key(w, u));
  }

  void add(Triangle tr) {
    // Keep the ghost vertex last so conflict tests can read the hull edge directly.
    while (tr[0] == kGhost || tr[1] == kGhost) tr = {tr[1], tr[2], tr[0]};
    const std::size_t id = tris_.size();
    tris_.push_back(tr);
    alive_.push_back(1);
    for (int e = 0; e < 3; ++e) {
      const auto [u, w] = edge(id, e);
      edges_[key(u, w)] = id;
    }
  }

  void remove(std::size_t t) {
    alive_[t] = 0;
    for (int e = 0; e < 3; ++e) {
      const auto [u, w] = edge(t, e);
      auto it = edges_.find(key(u, w));
      if (it != edges_.end() && it->second == t) edges_.erase(it);
    }
  }

  bool conflicts(std::size_t t, std::size_t v) const {
    const Triangle& tr = tris_[t];
    const LatticeSite& q = p_[v];
    if (tr[2] != kGhost) return incircle_sign(p_[tr[0]], p_[tr[1]], p_[tr[2]], q) > 0;
    const LatticeSite& u = p_[tr[0]];
    const LatticeSite& w = p_[tr[1]];
    const std::int64_t o = orient(u, w, q);
    if (o > 0) return true;
    if (o < 0) return false;
    // On the hull line: conflicts only strictly inside the segment.
    const std::int64_t dot = (q.x - u.x) * (w.x - u.x) + (q.y - u.y) * (w.y - u.y);
    const std::int64_t len2 = (w.x - u.x) * (w.x - u.x) + (w.y - u.y) * (w.y - u.y);
    return dot > 0 && dot < len2;
  }

  std::span<const LatticeSite> p_;
  std::vector<Triangle> tris_;
  std::vector<std::uint8_t> alive_;
  std::unordered_map<std::uint64_t, std::size_t> edges_;
};

}  // namespace

std::vector<Triangle> delaunay_triangulate(std::span<const LatticeSite> sites) {
  if (sites.size() < 3) return {};
  if (sites.size() >= 0xffffffffu) throw std::length_error("delaunay: too many sites");
  {
    std::unordered_set<std::uint64_t> seen;
    for (const auto& s : sites) {
      const auto k = (static_cast<std::uint64_t>(s.x) << 32) ^ static_cast<std::uint64_t>(s.y);
      if (!seen.insert(k).second) {
        for (const auto& r : sites) {
          if (&r != &s && r == s) throw std::invalid_argument("delaunay: duplicate site");
        }
      }
    }
  }
  std::size_t third = kGhost;
  for (std::size_t k = 2; k < sites.size(); ++k) {
    if (orient(sites[0], sites[1], sites[k]) != 0) {
      third = k;
      break;
    }
  }
  if (third == kGhost) return {};
  Builder b(sites);
  b.seed(0, 1, third);
  for (std::size_t k = 2; k < sites.size(); ++k) {
    if (k != third) b.insert(k);
  }
  return b.finite();
}

}  // namespace chirptf
