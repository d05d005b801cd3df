#include "hypergrid/scene2d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace hg::scene2d {

using hyp::Isometry2;
using hyp::Vec;

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::sound: return "sound";
    case EventKind::win: return "win";
    case EventKind::lose: return "lose";
    case EventKind::info: return "info";
  }
  return "info";
}

namespace {

double center_distance(const Isometry2& m) {
  // distance of m(origin) from the origin
  return std::acosh(std::max(1.0, m.mat()[2][2]));
}

Vec<2> geodesic_lerp(const Vec<2>& a, const Vec<2>& b, double s) {
  const double dist = std::acosh(std::max(1.0, -hyp::minkowski_inner<2>(a, b)));
  if (dist < 1e-12) return a;
  const double sa = std::sinh((1.0 - s) * dist) / std::sinh(dist);
  const double sb = std::sinh(s * dist) / std::sinh(dist);
  return hyp::add<2>(hyp::scale<2>(a, sa), hyp::scale<2>(b, sb));
}

}  // namespace

std::vector<std::optional<Isometry2>> relative_placements(const tiling::TilePatch& patch, int anchor,
                                                          double max_distance) {
  patch.tile(anchor);
  std::vector<std::optional<Isometry2>> rel(patch.size());
  rel[anchor] = Isometry2::identity();
  std::deque<int> queue{anchor};
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const Isometry2 here = *rel[id];
    if (center_distance(here) > max_distance) continue;
    const auto& t = patch.tile(id);
    for (int k = 0; k < patch.edges(); ++k) {
      const auto& l = t.neighbors[k];
      if (!l.known() || rel[l.tile]) continue;
      rel[l.tile] = here * patch.step_isometry(k, l.ret);
      queue.push_back(l.tile);
    }
  }
  return rel;
}

int frame_radius(const tiling::TilingParams& params, double cutoff) {
  return static_cast<int>(std::ceil((cutoff + 2.0 * params.circumradius) / (2.0 * params.inradius))) + 1;
}

SceneFrame build_frame(const tiling::TilePatch& patch, const Camera2D& camera, const StyleFn& style,
                       double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("build_frame: cutoff must be positive");
  const double margin = 2.0 * patch.params().circumradius;
  // BFS in anchor frame; the margin keeps paths to in-range tiles connected.
  const Isometry2& view = camera.view;
  SceneFrame frame;
  std::vector<char> seen(patch.size(), 0);
  std::deque<std::pair<int, Isometry2>> queue;
  queue.emplace_back(camera.anchor, Isometry2::identity());
  seen[camera.anchor] = 1;
  const auto& verts = patch.canonical_vertices();
  const int p = patch.edges();
  const double r = patch.params().inradius;
  while (!queue.empty()) {
    auto [id, rel] = queue.front();
    queue.pop_front();
    const Isometry2 m = view * rel;
    const double dist = center_distance(m);
    if (dist > cutoff + margin) continue;
    const auto& t = patch.tile(id);
    if (dist <= cutoff) {
      const TileStyle st = style(t.coord);
      const double w = camera.w_base + camera.altitude_scale * std::max(0, st.altitude.value_or(0));
      FramePoly poly;
      poly.tile_id = id;
      poly.coord = t.coord;
      poly.fill = st.fill;
      poly.boundary.reserve(static_cast<std::size_t>(p) * kSamplesPerEdge);
      for (int e = 0; e < p; ++e) {
        // edge e runs from vertex e-1 to vertex e
        const Vec<2>& a = verts[(e + p - 1) % p];
        const Vec<2>& b = verts[e];
        for (int i = 0; i < kSamplesPerEdge; ++i) {
          const Vec<2> q = geodesic_lerp(a, b, static_cast<double>(i) / kSamplesPerEdge);
          poly.boundary.push_back(hyp::to_disk(m.apply(q), w));
        }
      }
      for (const auto& lab : st.labels) {
        Vec<2> at = hyp::origin_vec<2>();
        if (lab.anchor) {
          const int k = patch.edge_with_dir(id, *lab.anchor);
          const double th = 2.0 * std::numbers::pi * k / p;
          at = hyp::point_at<2>({std::cos(th), std::sin(th)}, 0.6 * r);
        }
        poly.labels.push_back({lab.text, hyp::to_disk(m.apply(at), w), lab.color});
      }
      frame.polys.push_back(std::move(poly));
    }
    for (int k = 0; k < p; ++k) {
      const auto& l = t.neighbors[k];
      if (!l.known() || seen[l.tile]) continue;
      seen[l.tile] = 1;
      queue.emplace_back(l.tile, rel * patch.step_isometry(k, l.ret));
    }
  }
  return frame;
}

std::optional<DiskPoint> project_center(const tiling::TilePatch& patch, const Camera2D& camera, int tile) {
  const auto rel = relative_placements(patch, camera.anchor, 1e300);
  if (tile < 0 || tile >= static_cast<int>(rel.size()) || !rel[tile]) return std::nullopt;
  return hyp::to_disk((camera.view * *rel[tile]).apply(hyp::origin_vec<2>()), camera.w_base);
}

std::vector<Camera2D> recenter_steps(const tiling::TilePatch& patch, const Camera2D& camera, int target,
                                     int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("recenter_steps: n_steps must be >= 1");
  if (target < 0 || target >= static_cast<int>(patch.size()))
    throw std::invalid_argument("recenter_steps: unknown tile " + std::to_string(target));
  const auto rel = relative_placements(patch, camera.anchor, 1e300);
  if (!rel[target]) throw std::invalid_argument("recenter_steps: tile not connected to the anchor");
  const Vec<2> c = (camera.view * *rel[target]).apply(hyp::origin_vec<2>());
  const hyp::Point2 cp = hyp::Point2::normalized(c);
  const double total = hyp::distance(hyp::Point2(), cp);
  std::vector<Camera2D> out;
  out.reserve(n_steps);
  for (int i = 1; i < n_steps; ++i) {
    Camera2D cam = camera;
    if (total > 0.0) {
      const auto dir = hyp::Direction<2>::tangent(hyp::Point2(), c);
      const auto g = hyp::geodesic_at(hyp::Point2(), dir, total * i / n_steps);
      cam.view = hyp::translation_to(g).inverse() * camera.view;
    }
    out.push_back(cam);
  }
  Camera2D last = camera;
  last.anchor = target;
  last.view = hyp::reorthonormalize(hyp::translation_to(cp).inverse() * camera.view * *rel[target]);
  out.push_back(last);
  return out;
}

namespace {

bool inside(const std::vector<DiskPoint>& poly, DiskPoint at) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y > at.y) != (b.y > at.y)) {
      const double x = a.x + (at.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (at.x < x) in = !in;
    }
  }
  return in;
}

}  // namespace

std::optional<int> pick(const SceneFrame& frame, DiskPoint at) {
  if (at.x * at.x + at.y * at.y >= 1.0) return std::nullopt;
  for (auto it = frame.polys.rbegin(); it != frame.polys.rend(); ++it)
    if (inside(it->boundary, at)) return it->tile_id;
  return std::nullopt;
}

namespace {

constexpr Rgb kDiskBackground{18, 18, 24};
constexpr Rgb kOutline{20, 20, 20};
constexpr Rgb kRim{200, 200, 200};

double disk_x(int x, int size) { return (x + 0.5) / size * 2.0 - 1.0; }
double disk_y(int y, int size) { return 1.0 - (y + 0.5) / size * 2.0; }

void fill_row(const SceneFrame& frame, int size, int y, ImageBuf& img) {
  const double py = disk_y(y, size);
  for (int x = 0; x < size; ++x) {
    const double px = disk_x(x, size);
    img.set(x, y, px * px + py * py < 1.0 ? kDiskBackground : colors::kBlack);
  }
  std::vector<double> xs;
  for (const auto& poly : frame.polys) {
    xs.clear();
    const std::size_t n = poly.boundary.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const auto& a = poly.boundary[i];
      const auto& b = poly.boundary[j];
      if ((a.y > py) != (b.y > py)) xs.push_back(a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int x0 = std::max(0, static_cast<int>(std::ceil((xs[k] + 1.0) * size / 2.0 - 0.5)));
      const int x1 = std::min(size - 1, static_cast<int>(std::floor((xs[k + 1] + 1.0) * size / 2.0 - 0.5)));
      for (int x = x0; x <= x1; ++x) img.set(x, y, poly.fill);
    }
  }
}

void plot(ImageBuf& img, int x, int y, Rgb c) {
  if (x >= 0 && y >= 0 && x < img.width && y < img.height) img.set(x, y, c);
}

void draw_line(ImageBuf& img, int x0, int y0, int x1, int y1, Rgb c) {
  const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    plot(img, x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

int to_px(double v, int size) { return static_cast<int>(std::floor((v + 1.0) * size / 2.0)); }
int to_py(double v, int size) { return static_cast<int>(std::floor((1.0 - v) * size / 2.0)); }

void overlay(const SceneFrame& frame, int size, ImageBuf& img) {
  for (const auto& poly : frame.polys) {
    const std::size_t n = poly.boundary.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = poly.boundary[i];
      const auto& b = poly.boundary[(i + 1) % n];
      draw_line(img, to_px(a.x, size), to_py(a.y, size), to_px(b.x, size), to_py(b.y, size), kOutline);
    }
  }
  for (const auto& poly : frame.polys)
    for (const auto& lab : poly.labels) {
      const int cx = to_px(lab.pos.x, size), cy = to_py(lab.pos.y, size);
      const int rad = std::max(1, size / 160);
      for (int dy = -rad; dy <= rad; ++dy)
        for (int dx = -rad; dx <= rad; ++dx)
          if (dx * dx + dy * dy <= rad * rad) plot(img, cx + dx, cy + dy, lab.color);
    }
  const int steps = 8 * size;
  for (int i = 0; i < steps; ++i) {
    const double th = 2.0 * std::numbers::pi * i / steps;
    plot(img, to_px(std::cos(th), size), to_py(std::sin(th), size), kRim);
  }
}

void check_size(int size) {
  if (size <= 0) throw std::invalid_argument("rasterize: size must be positive");
}

}  // namespace

ImageBuf rasterize_serial(const SceneFrame& frame, int size) {
  check_size(size);
  ImageBuf img(size, size);
  for (int y = 0; y < size; ++y) fill_row(frame, size, y, img);
  overlay(frame, size, img);
  return img;
}

ImageBuf rasterize(const SceneFrame& frame, int size) {
  check_size(size);
  ImageBuf img(size, size);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < size; ++y) fill_row(frame, size, y, img);
  overlay(frame, size, img);
  return img;
}

}  // namespace hg::scene2d
