#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace chirptf {

struct LatticeSite {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const LatticeSite&) const = default;
};

// Exact predicates on integer sites.
// orient > 0: c lies to the left of a->b.
std::int64_t orient(const LatticeSite& a, const LatticeSite& b, const LatticeSite& c);
// > 0: d strictly inside the circle through the counter-clockwise triangle abc.
int incircle_sign(const LatticeSite& a, const LatticeSite& b, const LatticeSite& c,
                  const LatticeSite& d);

using Triangle = std::array<std::size_t, 3>;

/// Delaunay triangulation of distinct integer sites (incremental Bowyer-Watson
/// with exact arithmetic).  Triangles index into `sites` and are counter-
/// clockwise.  Returns no triangles when fewer than three sites exist or all
/// are collinear.
std::vector<Triangle> delaunay_triangulate(std::span<const LatticeSite> sites);

}  // namespace chirptf
