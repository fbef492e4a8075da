#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "martinlab/rng.hpp"
#include "martinlab/vec.hpp"

namespace martinlab {

namespace geom {
struct Node;
}

/// Bounded open subset of R^d built from balls and boxes with union,
/// intersection and difference.  A difference removes the *closure* of the
/// subtracted shape, so the result stays open; a removed point is excluded
/// exactly.  Immutable after construction, cheap to copy.
class Domain {
 public:
  static Domain ball(const Vec& center, double radius);
  static Domain box(const Vec& lo, const Vec& hi);
  static Domain unite(std::vector<Domain> parts);
  static Domain intersect(std::vector<Domain> parts);
  static Domain difference(const Domain& base, const Domain& sub);
  /// base with the single point p removed.
  static Domain punctured(const Domain& base, const Vec& p);

  int dim() const;

  /// Exact membership in the open set.
  bool contains(const Vec& x) const;

  /// Sound lower bound on dist(x, complement): B(x, inscribed_radius(x)) is
  /// always inside the domain, though the bound may undershoot the true
  /// distance for unions.  Requires contains(x).
  double inscribed_radius(const Vec& x) const;

  /// The intersection with B(x0, r).
  Domain truncated(const Vec& x0, double r) const;

  /// Axis-aligned box guaranteed to contain the domain.
  void bounding_box(Vec& lo, Vec& hi) const;

  /// Ball guaranteed to contain the domain.
  void bounding_ball(Vec& center, double& radius) const;

  /// Locations removed as single points, anywhere in the tree.
  const std::vector<Vec>& punctures() const { return punctures_; }

  nlohmann::json to_json() const;
  static Domain from_json(const nlohmann::json& j);

 private:
  explicit Domain(std::shared_ptr<const geom::Node> root);

  std::shared_ptr<const geom::Node> root_;
  std::vector<Vec> punctures_;
};

/// Annulus r < |x - center| < s used to restrict sampling.
struct RingSpec {
  Vec center;
  double r = 0.0;
  double s = 0.0;
};

/// n quasi-uniform points in dom (optionally within the ring) by rejection
/// from the bounding box.  Throws empty_region_error when a point exceeds
/// `budget` rejections.
std::vector<Vec> sample_region(const Domain& dom, const std::optional<RingSpec>& ring, int n,
                               Rng& rng, int budget = 100000);

/// Boundary point under study: x0 on the boundary of D, working radius R,
/// and a reference point xref in D with |xref - x0| > R.
struct BoundaryQuery {
  Vec x0;
  double R = 0.0;
  Vec xref;
};

/// Checks that x0 is outside D yet every B(x0, 2^-k), k = 1..20, meets D,
/// and that xref lies in D beyond radius R.  Throws std::invalid_argument.
void validate_boundary_query(const Domain& dom, const BoundaryQuery& q, Rng& rng);

}  // namespace martinlab
