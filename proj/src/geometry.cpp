#include "martinlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "martinlab/errors.hpp"

namespace martinlab {

namespace geom {

enum class Kind { kBall, kBox, kUnion, kIntersection, kDifference, kPoint };

struct Node {
  Kind kind;
  // kBall
  Vec center;
  double radius = 0.0;
  // kBox
  Vec lo, hi;
  // kPoint
  Vec point;
  // composites
  std::vector<std::shared_ptr<const Node>> children;  // union / intersection
  std::shared_ptr<const Node> base, sub;              // difference
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

int node_dim(const Node& n) {
  switch (n.kind) {
    case Kind::kBall:
      return n.center.dim();
    case Kind::kBox:
      return n.lo.dim();
    case Kind::kPoint:
      return n.point.dim();
    case Kind::kUnion:
    case Kind::kIntersection:
      return node_dim(*n.children.front());
    case Kind::kDifference:
      return node_dim(*n.base);
  }
  return 0;
}

// Membership in the open set.
bool open_member(const Node& n, const Vec& x);

// Membership in the closure (computed structurally: closed primitives,
// unions of closures, intersections of closures).  A superset of the true
// closure for intersections/differences, which keeps differences open.
bool closed_member(const Node& n, const Vec& x) {
  switch (n.kind) {
    case Kind::kBall:
      return dist(x, n.center) <= n.radius;
    case Kind::kBox:
      for (int i = 0; i < x.dim(); ++i)
        if (x[i] < n.lo[i] || x[i] > n.hi[i]) return false;
      return true;
    case Kind::kPoint:
      return x == n.point;
    case Kind::kUnion:
      for (const auto& c : n.children)
        if (closed_member(*c, x)) return true;
      return false;
    case Kind::kIntersection:
      for (const auto& c : n.children)
        if (!closed_member(*c, x)) return false;
      return true;
    case Kind::kDifference:
      return closed_member(*n.base, x) && !open_member(*n.sub, x);
  }
  return false;
}

bool open_member(const Node& n, const Vec& x) {
  switch (n.kind) {
    case Kind::kBall:
      return dist(x, n.center) < n.radius;
    case Kind::kBox:
      for (int i = 0; i < x.dim(); ++i)
        if (!(n.lo[i] < x[i] && x[i] < n.hi[i])) return false;
      return true;
    case Kind::kPoint:
      return false;  // a point has empty interior
    case Kind::kUnion:
      for (const auto& c : n.children)
        if (open_member(*c, x)) return true;
      return false;
    case Kind::kIntersection:
      for (const auto& c : n.children)
        if (!open_member(*c, x)) return false;
      return true;
    case Kind::kDifference:
      return open_member(*n.base, x) && !closed_member(*n.sub, x);
  }
  return false;
}

// Lower bound on dist(x, complement of the open set), for x inside.
double inner_clearance(const Node& n, const Vec& x);

// Lower bound on dist(x, closure of the set), for x outside the closure.
double outer_clearance(const Node& n, const Vec& x) {
  switch (n.kind) {
    case Kind::kBall:
      return dist(x, n.center) - n.radius;
    case Kind::kBox: {
      double s2 = 0.0;
      for (int i = 0; i < x.dim(); ++i) {
        const double g = std::max(std::max(n.lo[i] - x[i], x[i] - n.hi[i]), 0.0);
        s2 += g * g;
      }
      return std::sqrt(s2);
    }
    case Kind::kPoint:
      return dist(x, n.point);
    case Kind::kUnion: {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& c : n.children) m = std::min(m, outer_clearance(*c, x));
      return m;
    }
    case Kind::kIntersection: {
      // dist(x, A ∩ B) >= max(dist(x, A), dist(x, B))
      double m = 0.0;
      for (const auto& c : n.children) m = std::max(m, outer_clearance(*c, x));
      return m;
    }
    case Kind::kDifference:
      // Points of base \ sub are in base.
      return outer_clearance(*n.base, x);
  }
  return 0.0;
}

double inner_clearance(const Node& n, const Vec& x) {
  switch (n.kind) {
    case Kind::kBall:
      return n.radius - dist(x, n.center);
    case Kind::kBox: {
      double m = std::numeric_limits<double>::infinity();
      for (int i = 0; i < x.dim(); ++i) m = std::min(m, std::min(x[i] - n.lo[i], n.hi[i] - x[i]));
      return m;
    }
    case Kind::kPoint:
      return 0.0;
    case Kind::kUnion: {
      double m = 0.0;
      for (const auto& c : n.children)
        if (open_member(*c, x)) m = std::max(m, inner_clearance(*c, x));
      return m;
    }
    case Kind::kIntersection: {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& c : n.children) m = std::min(m, inner_clearance(*c, x));
      return m;
    }
    case Kind::kDifference:
      return std::min(inner_clearance(*n.base, x), outer_clearance(*n.sub, x));
  }
  return 0.0;
}

void node_bounding_box(const Node& n, Vec& lo, Vec& hi) {
  switch (n.kind) {
    case Kind::kBall: {
      lo = n.center;
      hi = n.center;
      for (int i = 0; i < lo.dim(); ++i) {
        lo[i] -= n.radius;
        hi[i] += n.radius;
      }
      return;
    }
    case Kind::kBox:
      lo = n.lo;
      hi = n.hi;
      return;
    case Kind::kPoint:
      lo = n.point;
      hi = n.point;
      return;
    case Kind::kUnion: {
      node_bounding_box(*n.children.front(), lo, hi);
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        Vec l2, h2;
        node_bounding_box(*n.children[i], l2, h2);
        for (int k = 0; k < lo.dim(); ++k) {
          lo[k] = std::min(lo[k], l2[k]);
          hi[k] = std::max(hi[k], h2[k]);
        }
      }
      return;
    }
    case Kind::kIntersection: {
      node_bounding_box(*n.children.front(), lo, hi);
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        Vec l2, h2;
        node_bounding_box(*n.children[i], l2, h2);
        for (int k = 0; k < lo.dim(); ++k) {
          lo[k] = std::max(lo[k], l2[k]);
          hi[k] = std::min(hi[k], h2[k]);
        }
      }
      return;
    }
    case Kind::kDifference:
      node_bounding_box(*n.base, lo, hi);
      return;
  }
}

void collect_punctures(const Node& n, std::vector<Vec>& out) {
  switch (n.kind) {
    case Kind::kPoint:
      out.push_back(n.point);
      return;
    case Kind::kUnion:
    case Kind::kIntersection:
      for (const auto& c : n.children) collect_punctures(*c, out);
      return;
    case Kind::kDifference:
      collect_punctures(*n.base, out);
      collect_punctures(*n.sub, out);
      return;
    default:
      return;
  }
}

void check_same_dim(int a, int b) {
  if (a != b) throw std::invalid_argument("Domain: mixed dimensions in one tree");
}

}  // namespace

}  // namespace geom

using geom::Node;
using NodePtr = std::shared_ptr<const geom::Node>;

Domain::Domain(NodePtr root) : root_(std::move(root)) {
  geom::collect_punctures(*root_, punctures_);
}

Domain Domain::ball(const Vec& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("Domain::ball: radius must be positive");
  auto n = std::make_shared<Node>();
  n->kind = geom::Kind::kBall;
  n->center = center;
  n->radius = radius;
  return Domain(n);
}

Domain Domain::box(const Vec& lo, const Vec& hi) {
  geom::check_same_dim(lo.dim(), hi.dim());
  for (int i = 0; i < lo.dim(); ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("Domain::box: need lo < hi");
  auto n = std::make_shared<Node>();
  n->kind = geom::Kind::kBox;
  n->lo = lo;
  n->hi = hi;
  return Domain(n);
}

Domain Domain::unite(std::vector<Domain> parts) {
  if (parts.empty()) throw std::invalid_argument("Domain::unite: no parts");
  auto n = std::make_shared<Node>();
  n->kind = geom::Kind::kUnion;
  for (auto& p : parts) {
    geom::check_same_dim(parts.front().dim(), p.dim());
    n->children.push_back(p.root_);
  }
  return Domain(n);
}

Domain Domain::intersect(std::vector<Domain> parts) {
  if (parts.empty()) throw std::invalid_argument("Domain::intersect: no parts");
  auto n = std::make_shared<Node>();
  n->kind = geom::Kind::kIntersection;
  for (auto& p : parts) {
    geom::check_same_dim(parts.front().dim(), p.dim());
    n->children.push_back(p.root_);
  }
  return Domain(n);
}

Domain Domain::difference(const Domain& base, const Domain& sub) {
  geom::check_same_dim(base.dim(), sub.dim());
  auto n = std::make_shared<Node>();
  n->kind = geom::Kind::kDifference;
  n->base = base.root_;
  n->sub = sub.root_;
  return Domain(n);
}

Domain Domain::punctured(const Domain& base, const Vec& p) {
  geom::check_same_dim(base.dim(), p.dim());
  auto pt = std::make_shared<Node>();
  pt->kind = geom::Kind::kPoint;
  pt->point = p;
  auto n = std::make_shared<Node>();
  n->kind = geom::Kind::kDifference;
  n->base = base.root_;
  n->sub = pt;
  return Domain(n);
}

int Domain::dim() const { return geom::node_dim(*root_); }

bool Domain::contains(const Vec& x) const {
  if (x.dim() != dim()) return false;
  return geom::open_member(*root_, x);
}

double Domain::inscribed_radius(const Vec& x) const {
  if (!contains(x)) throw std::domain_error("inscribed_radius: x is not in the domain");
  return std::max(0.0, geom::inner_clearance(*root_, x));
}

Domain Domain::truncated(const Vec& x0, double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("truncated: r must be positive");
  return intersect({*this, ball(x0, r)});
}

void Domain::bounding_box(Vec& lo, Vec& hi) const { geom::node_bounding_box(*root_, lo, hi); }

void Domain::bounding_ball(Vec& center, double& radius) const {
  Vec lo, hi;
  bounding_box(lo, hi);
  center = Vec(lo.dim());
  double r2 = 0.0;
  for (int i = 0; i < lo.dim(); ++i) {
    center[i] = 0.5 * (lo[i] + hi[i]);
    const double h = 0.5 * (hi[i] - lo[i]);
    r2 += h * h;
  }
  radius = std::sqrt(r2);
}

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim))
    throw std::invalid_argument("Domain JSON: bad coordinate array");
  Vec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.dim(); ++i) v[i] = j.at(i).get<double>();
  return v;
}

json node_to_json(const Node& n) {
  switch (n.kind) {
    case geom::Kind::kBall:
      return json{{"ball", {{"c", vec_to_json(n.center)}, {"r", n.radius}}}};
    case geom::Kind::kBox:
      return json{{"box", {{"lo", vec_to_json(n.lo)}, {"hi", vec_to_json(n.hi)}}}};
    case geom::Kind::kPoint:
      return json{{"point", vec_to_json(n.point)}};
    case geom::Kind::kUnion: {
      json a = json::array();
      for (const auto& c : n.children) a.push_back(node_to_json(*c));
      return json{{"union", a}};
    }
    case geom::Kind::kIntersection: {
      json a = json::array();
      for (const auto& c : n.children) a.push_back(node_to_json(*c));
      return json{{"intersection", a}};
    }
    case geom::Kind::kDifference:
      return json{{"difference", json::array({node_to_json(*n.base), node_to_json(*n.sub)})}};
  }
  return json();
}

Domain domain_from_json(const json& j);

std::vector<Domain> list_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("Domain JSON: expected a non-empty array");
  std::vector<Domain> out;
  for (const auto& c : j) out.push_back(domain_from_json(c));
  return out;
}

Domain domain_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw std::invalid_argument("Domain JSON: expected an object with one key");
  const auto it = j.begin();
  const std::string& key = it.key();
  const json& v = it.value();
  if (key == "ball") return Domain::ball(vec_from_json(v.at("c")), v.at("r").get<double>());
  if (key == "box") return Domain::box(vec_from_json(v.at("lo")), vec_from_json(v.at("hi")));
  if (key == "union") return Domain::unite(list_from_json(v));
  if (key == "intersection") return Domain::intersect(list_from_json(v));
  if (key == "difference") {
    if (!v.is_array() || v.size() != 2)
      throw std::invalid_argument("Domain JSON: difference takes [base, subtracted]");
    // A bare point is only meaningful as a subtrahend.
    const json& sub = v.at(1);
    if (sub.is_object() && sub.size() == 1 && sub.begin().key() == "point") {
      return Domain::punctured(domain_from_json(v.at(0)), vec_from_json(sub.begin().value()));
    }
    return Domain::difference(domain_from_json(v.at(0)), domain_from_json(v.at(1)));
  }
  if (key == "point")
    throw std::invalid_argument("Domain JSON: a point may appear only as a subtrahend");
  throw std::invalid_argument("Domain JSON: unknown primitive '" + key + "'");
}

}  // namespace

nlohmann::json Domain::to_json() const { return node_to_json(*root_); }

Domain Domain::from_json(const nlohmann::json& j) { return domain_from_json(j); }

std::vector<Vec> sample_region(const Domain& dom, const std::optional<RingSpec>& ring, int n,
                               Rng& rng, int budget) {
  if (n < 0) throw std::invalid_argument("sample_region: n must be non-negative");
  Vec lo, hi;
  dom.bounding_box(lo, hi);
  if (ring) {
    // Intersect the stretch with the ring's own bounding box.
    for (int i = 0; i < lo.dim(); ++i) {
      lo[i] = std::max(lo[i], ring->center[i] - ring->s);
      hi[i] = std::min(hi[i], ring->center[i] + ring->s);
    }
  }
  const int d = dom.dim();
  std::vector<Vec> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    bool found = false;
    for (int attempt = 0; attempt < budget; ++attempt) {
      Vec x(d);
      bool box_ok = true;
      for (int i = 0; i < d; ++i) {
        if (!(lo[i] < hi[i])) {
          box_ok = false;
          break;
        }
        x[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
      }
      if (!box_ok) break;
      if (!dom.contains(x)) continue;
      if (ring) {
        const double rr = dist(x, ring->center);
        if (!(ring->r < rr && rr < ring->s)) continue;
      }
      out.push_back(x);
      found = true;
      break;
    }
    if (!found)
      throw empty_region_error("sample_region: rejection budget exhausted; region may be empty");
  }
  return out;
}

void validate_boundary_query(const Domain& dom, const BoundaryQuery& q, Rng& rng) {
  if (dom.contains(q.x0)) throw std::invalid_argument("BoundaryQuery: x0 must not lie in D");
  if (!(q.R > 0.0)) throw std::invalid_argument("BoundaryQuery: R must be positive");
  if (!dom.contains(q.xref)) throw std::invalid_argument("BoundaryQuery: xref must lie in D");
  if (!(dist(q.xref, q.x0) > q.R))
    throw std::invalid_argument("BoundaryQuery: need |xref - x0| > R");
  for (int k = 1; k <= 20; ++k) {
    const RingSpec shell{q.x0, 0.0, std::ldexp(1.0, -k)};
    try {
      sample_region(dom, shell, 1, rng, 200000);
    } catch (const empty_region_error&) {
      throw std::invalid_argument(
          "BoundaryQuery: no interior point found near x0 at scale 2^-" + std::to_string(k));
    }
  }
}

}  // namespace martinlab
