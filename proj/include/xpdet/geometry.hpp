#ifndef XPDET_GEOMETRY_HPP
#define XPDET_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace xpdet {

// Right-handed sensor frame: x forward, y left, z up. Units are meters and
// radians throughout.

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// 3x3 rotation matrix, row-major.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 identity() { return Mat3{}; }

  double at(int r, int c) const { return m[3 * r + c]; }
  double& at(int r, int c) { return m[3 * r + c]; }

  Vec3 apply(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += at(i, k) * o.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }

  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
    return r;
  }

  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  // Orthonormality check: max |R^T R - I| element and det within tol of +1.
  bool is_rotation(double tol = 1e-10) const {
    Mat3 g = transposed() * (*this);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        worst = std::max(worst, std::abs(g.at(i, j) - (i == j ? 1.0 : 0.0)));
    return worst <= tol && std::abs(det() - 1.0) <= tol;
  }
};

// Rotation about +x by phi (roll): y -> z.
inline Mat3 rotation_x(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Mat3 r;
  r.m = {1, 0, 0, 0, c, -s, 0, s, c};
  return r;
}

// Rotation about +y by theta (pitch): z -> x.
inline Mat3 rotation_y(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat3 r;
  r.m = {c, 0, s, 0, 1, 0, -s, 0, c};
  return r;
}

// Rotation about +z by gamma (yaw): x -> y.
inline Mat3 rotation_z(double gamma) {
  const double c = std::cos(gamma), s = std::sin(gamma);
  Mat3 r;
  r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
  return r;
}

/// Composite sensor-jitter rotation: pitch about y applied after roll about
/// x, i.e. R = R_pitch * R_roll, about the sensor origin. Rejects non-finite
/// angles and magnitudes >= pi/2.
inline Mat3 rotation_from_jitter(double roll_rad, double pitch_rad) {
  if (!std::isfinite(roll_rad) || !std::isfinite(pitch_rad))
    throw std::invalid_argument("rotation_from_jitter: non-finite angle");
  if (std::abs(roll_rad) >= M_PI / 2 || std::abs(pitch_rad) >= M_PI / 2)
    throw std::invalid_argument("rotation_from_jitter: |angle| must be < pi/2");
  return rotation_y(pitch_rad) * rotation_x(roll_rad);
}

// Normalize an angle into (-pi, pi].
inline double normalize_yaw(double yaw) {
  double y = std::fmod(yaw + M_PI, 2.0 * M_PI);
  if (y <= 0.0) y += 2.0 * M_PI;
  return y - M_PI;
}

enum class ObjectClass : std::uint8_t { Car = 0, Pedestrian = 1 };
inline constexpr std::size_t kNumClasses = 2;

inline const char* class_name(ObjectClass c) {
  return c == ObjectClass::Car ? "Car" : "Pedestrian";
}

inline ObjectClass class_from_name(const std::string& s) {
  if (s == "Car") return ObjectClass::Car;
  if (s == "Pedestrian") return ObjectClass::Pedestrian;
  throw std::invalid_argument("unknown object class: " + s);
}

/// Oriented, gravity-aligned 3D box. Yaw is normalized to (-pi, pi] on
/// construction; dims must be strictly positive and the score in [0, 1]
/// (ground-truth labels carry score 1.0).
struct Box3D {
  Vec3 center;
  double length = 1.0;  // extent along heading
  double width = 1.0;   // extent across heading
  double height = 1.0;  // extent along z
  double yaw = 0.0;
  ObjectClass cls = ObjectClass::Car;
  double score = 1.0;

  Box3D() = default;
  Box3D(const Vec3& c, double l, double w, double h, double yaw_,
        ObjectClass cls_, double score_)
      : center(c),
        length(l),
        width(w),
        height(h),
        yaw(normalize_yaw(yaw_)),
        cls(cls_),
        score(score_) {
    if (!(l > 0.0) || !(w > 0.0) || !(h > 0.0) || !c.finite() ||
        !std::isfinite(yaw_))
      throw std::invalid_argument("Box3D: dims must be positive and finite");
    if (!(score_ >= 0.0 && score_ <= 1.0))
      throw std::invalid_argument("Box3D: score must be in [0, 1]");
  }

  double volume() const { return length * width * height; }
  double bev_area() const { return length * width; }
  double z_min() const { return center.z - height / 2.0; }
  double z_max() const { return center.z + height / 2.0; }
};

// BEV footprint corners, counter-clockwise.
inline std::array<Vec2, 4> bev_corners(const Box3D& b) {
  const double c = std::cos(b.yaw), s = std::sin(b.yaw);
  const double hl = b.length / 2.0, hw = b.width / 2.0;
  auto corner = [&](double dl, double dw) {
    return Vec2{b.center.x + c * dl - s * dw, b.center.y + s * dl + c * dw};
  };
  return {corner(hl, hw), corner(-hl, hw), corner(-hl, -hw), corner(hl, -hw)};
}

namespace detail {

inline constexpr double kVertexMergeTol = 1e-9;  // meters
inline constexpr double kAreaEpsilon = 1e-12;    // square meters

inline double polygon_area(const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return std::abs(s) / 2.0;
}

// Sutherland-Hodgman clip of a convex subject polygon against a convex,
// counter-clockwise clip polygon.
template <std::size_t N>
std::vector<Vec2> clip_convex(const std::vector<Vec2>& subject,
                              const std::array<Vec2, N>& clip) {
  std::vector<Vec2> out(subject);
  std::vector<Vec2> in;
  for (std::size_t e = 0; e < N && !out.empty(); ++e) {
    const Vec2& a = clip[e];
    const Vec2& b = clip[(e + 1) % N];
    in.swap(out);
    out.clear();
    auto side = [&](const Vec2& p) {
      return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    };
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Vec2& cur = in[i];
      const Vec2& nxt = in[(i + 1) % in.size()];
      const double sc = side(cur), sn = side(nxt);
      if (sc >= 0.0) out.push_back(cur);
      if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
        const double t = sc / (sc - sn);
        out.push_back(
            {cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
      }
    }
  }
  // Merge near-duplicate vertices so the shoelace sum stays clean.
  std::vector<Vec2> merged;
  for (const Vec2& p : out) {
    if (merged.empty() ||
        std::abs(p.x - merged.back().x) > kVertexMergeTol ||
        std::abs(p.y - merged.back().y) > kVertexMergeTol)
      merged.push_back(p);
  }
  while (merged.size() > 1 &&
         std::abs(merged.front().x - merged.back().x) <= kVertexMergeTol &&
         std::abs(merged.front().y - merged.back().y) <= kVertexMergeTol)
    merged.pop_back();
  return merged;
}

inline double bev_intersection_area(const Box3D& a, const Box3D& b) {
  const auto ca = bev_corners(a);
  const auto cb = bev_corners(b);
  std::vector<Vec2> subject(ca.begin(), ca.end());
  const std::vector<Vec2> poly = clip_convex(subject, cb);
  const double area = polygon_area(poly);
  return area < kAreaEpsilon ? 0.0 : area;
}

// Cheap reject: centers further apart than the sum of the BEV half-diagonals
// cannot overlap.
inline bool bev_disjoint(const Box3D& a, const Box3D& b) {
  const double dx = a.center.x - b.center.x;
  const double dy = a.center.y - b.center.y;
  const double ra = std::hypot(a.length, a.width) / 2.0;
  const double rb = std::hypot(b.length, b.width) / 2.0;
  return dx * dx + dy * dy > (ra + rb) * (ra + rb);
}

}  // namespace detail

/// Intersection-over-union of the yaw-rotated BEV rectangles.
inline double iou_bev(const Box3D& a, const Box3D& b) {
  if (detail::bev_disjoint(a, b)) return 0.0;
  const double inter = detail::bev_intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.bev_area() + b.bev_area() - inter;
  return uni <= 0.0 ? 0.0 : std::min(inter / uni, 1.0);
}

/// 3D IoU for gravity-aligned boxes: BEV intersection times the z-interval
/// overlap, over the union of volumes.
inline double iou_3d(const Box3D& a, const Box3D& b) {
  const double zo = std::min(a.z_max(), b.z_max()) - std::max(a.z_min(), b.z_min());
  if (zo <= 0.0) return 0.0;
  if (detail::bev_disjoint(a, b)) return 0.0;
  const double inter = detail::bev_intersection_area(a, b) * zo;
  if (inter <= 0.0) return 0.0;
  const double uni = a.volume() + b.volume() - inter;
  return uni <= 0.0 ? 0.0 : std::min(inter / uni, 1.0);
}

/// Greedy score-descending BEV non-maximum suppression. Ties are broken by
/// the lower input index; the output is sorted by descending score.
inline std::vector<Box3D> nms_bev(const std::vector<Box3D>& boxes,
                                  double iou_threshold) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return boxes[i].score > boxes[j].score;
  });
  std::vector<Box3D> kept;
  for (std::size_t idx : order) {
    const Box3D& cand = boxes[idx];
    bool suppressed = false;
    for (const Box3D& k : kept) {
      if (iou_bev(cand, k) >= iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(cand);
  }
  return kept;
}

}  // namespace xpdet

#endif  // XPDET_GEOMETRY_HPP
