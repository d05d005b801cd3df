#include "hypergrid/honeycomb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hg::honeycomb {

namespace {

using Spatial = std::array<double, 3>;

Spatial normalize3(Spatial v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dot3(const Spatial& a, const Spatial& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Spatial cross3(const Spatial& a, const Spatial& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Assembles a spec from face directions (face i + d opposite to face i) and
// vertex directions of the regular solid.
HoneycombSpec build(std::string name, int d, std::vector<Spatial> faces, std::vector<Spatial> vertex_dirs) {
  HoneycombSpec s;
  s.name = std::move(name);
  s.d = d;
  s.face_count = 2 * d;
  const int n = s.face_count;
  for (auto& f : faces) f = normalize3(f);
  s.face_dirs = faces;

  double adj_cos = -2.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) adj_cos = std::max(adj_cos, dot3(faces[i], faces[j]));
  // Right dihedral angle between adjacent faces: tanh^2(rho) = cos(angle between normals).
  const double th = std::sqrt(adj_cos);
  s.face_distance = std::atanh(th);
  const double ch = std::cosh(s.face_distance), sh = std::sinh(s.face_distance);

  s.adjacent.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    s.normals.push_back({ch * faces[i][0], ch * faces[i][1], ch * faces[i][2], sh});
    s.opposite.push_back((i + d) % n);
    for (int j = 0; j < n; ++j)
      s.adjacent[i][j] = (i != j) && std::abs(dot3(faces[i], faces[j]) - adj_cos) < 1e-9;
  }

  hyp::Mat<3> central = hyp::identity_mat<3>();
  for (int i = 0; i < 3; ++i) central[i][i] = -1.0;
  const auto central_sym = Isometry3::unchecked(central);
  for (int f = 0; f < n; ++f) {
    const auto refl = hyp::reflect_in_plane<3>(hyp::PlaneNormal<3>(s.normals[f]));
    const auto m = central_sym * refl;
    s.cross.push_back(m);
    std::vector<int> perm(n, -1);
    for (int i = 0; i < n; ++i) {
      const Vec<3> img = m.apply(refl.apply(s.normals[i]));
      for (int k = 0; k < n; ++k) {
        double err = 0.0;
        for (int c = 0; c < 4; ++c) err = std::max(err, std::abs(img[c] - s.normals[k][c]));
        if (err < 1e-9) perm[k] = i;
      }
    }
    if (std::count(perm.begin(), perm.end(), -1) != 0)
      throw std::logic_error("honeycomb: cross isometry does not permute faces");
    s.relabel.push_back(perm);
  }

  if (vertex_dirs.empty()) {
    // simple vertices: one per triple of mutually adjacent faces
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          if (s.adjacent[i][j] && s.adjacent[j][k] && s.adjacent[i][k])
            vertex_dirs.push_back(
                {faces[i][0] + faces[j][0] + faces[k][0], faces[i][1] + faces[j][1] + faces[k][1],
                 faces[i][2] + faces[j][2] + faces[k][2]});
  }
  for (auto w : vertex_dirs) {
    w = normalize3(w);
    double best = -2.0;
    for (const auto& f : faces) best = std::max(best, dot3(w, f));
    // <(s w, 1), n_i> = 0 for the faces through the vertex.
    const double scale = th / best;
    s.vertices.push_back({scale * w[0], scale * w[1], scale * w[2], 1.0});
  }

  for (int f = 0; f < n; ++f) {
    const Spatial& u = faces[f];
    Spatial a{1, 0, 0};
    if (std::abs(u[0]) > 0.6) a = {0, 1, 0};
    const Spatial e1 = normalize3(cross3(u, a));
    const Spatial e2 = cross3(u, e1);
    s.face_basis.push_back({e1, e2});
    double ext = 0.0;
    for (const auto& v : s.vertices) {
      const Spatial k{v[0] - th * u[0], v[1] - th * u[1], v[2] - th * u[2]};
      // vertex lies on face f when <v, n_f> == 0
      if (std::abs(hyp::minkowski_inner<3>(v, s.normals[f])) < 1e-9) ext = std::max(ext, std::sqrt(dot3(k, k)));
    }
    s.face_extent.push_back(ext);
  }
  return s;
}

}  // namespace

HoneycombSpec spec_344() {
  std::vector<Spatial> faces{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (int i = 0; i < 4; ++i) faces.push_back({-faces[i][0], -faces[i][1], -faces[i][2]});
  std::vector<Spatial> verts{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  return build("344", 4, faces, verts);
}

HoneycombSpec spec_534() {
  const double phi = std::numbers::phi;
  std::vector<Spatial> faces{{0, 1, phi}, {0, 1, -phi}, {1, phi, 0}, {-1, phi, 0}, {phi, 0, 1}, {phi, 0, -1}};
  for (int i = 0; i < 6; ++i) faces.push_back({-faces[i][0], -faces[i][1], -faces[i][2]});
  return build("534", 6, faces, {});
}

HoneycombSpec spec_by_name(const std::string& name) {
  if (name == "344") return spec_344();
  if (name == "534") return spec_534();
  throw std::invalid_argument("unknown honeycomb '" + name + "' (expected 344 or 534)");
}

RayState initial_state(const HoneycombSpec& spec, const ZVec& coord, const Vec<3>& dir) {
  if (coord.dim() != spec.d) throw std::invalid_argument("initial_state: coordinate dimension mismatch");
  RayState s;
  s.coord = coord;
  for (int k = 0; k < spec.face_count; ++k) s.face_dirs[k] = Dir::from_index(k, spec.d);
  s.pos = hyp::origin_vec<3>();
  s.dir = dir;
  return s;
}

FaceLabels crossed_labels(const HoneycombSpec& spec, const FaceLabels& dirs, int face) {
  FaceLabels mirrored = dirs;
  mirrored[face] = -dirs[face];
  mirrored[spec.opposite[face]] = dirs[face];
  FaceLabels out{};
  const auto& perm = spec.relabel[face];
  for (int k = 0; k < spec.face_count; ++k) out[k] = mirrored[perm[k]];
  return out;
}

Crossing advance_inplace(const HoneycombSpec& spec, RayState& st) {
  // tanh is monotone, so the first face hit minimizes -<p,n>/<v,n>.
  int best = -1;
  double best_q = 2.0;
  for (int i = 0; i < spec.face_count; ++i) {
    const double b = hyp::minkowski_inner<3>(st.dir, spec.normals[i]);
    if (b <= 0.0) continue;
    const double a = hyp::minkowski_inner<3>(st.pos, spec.normals[i]);
    const double q = std::max(0.0, -a / b);
    if (q < 1.0 && q < best_q) {
      best_q = q;
      best = i;
    }
  }
  Crossing c;
  if (best < 0) return c;
  c.face = best;
  c.t = std::atanh(best_q);
  c.hit = hyp::geodesic_vec<3>(st.pos, st.dir, c.t);

  const double t = c.t + kFaceNudge;
  Vec<3> p = hyp::geodesic_vec<3>(st.pos, st.dir, t);
  Vec<3> v = hyp::geodesic_velocity<3>(st.pos, st.dir, t);
  const auto& m = spec.cross[best];
  p = m.apply(p);
  v = m.apply(v);
  // project back onto the hyperboloid and the unit tangent bundle
  p = hyp::scale<3>(p, 1.0 / std::sqrt(-hyp::minkowski_inner<3>(p, p)));
  v = hyp::axpy<3>(hyp::minkowski_inner<3>(v, p), p, v);
  v = hyp::scale<3>(v, 1.0 / std::sqrt(hyp::minkowski_inner<3>(v, v)));

  st.coord = st.coord + st.face_dirs[best];
  st.face_dirs = crossed_labels(spec, st.face_dirs, best);
  st.pos = p;
  st.dir = v;
  st.traveled += t;
  st.steps += 1;
  return c;
}

std::pair<RayState, int> advance(const HoneycombSpec& spec, const RayState& state) {
  RayState next = state;
  const Crossing c = advance_inplace(spec, next);
  if (c.face < 0) throw std::logic_error("advance: ray hits no face of the cell");
  return {std::move(next), c.face};
}

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::optional<Rgb> diagonal_tunnel(const ZVec& z, int diag_axes, Rgb even, Rgb odd) {
  int lo = z[0], hi = z[0], sum = 0;
  for (int i = 0; i < diag_axes; ++i) {
    lo = std::min(lo, z[i]);
    hi = std::max(hi, z[i]);
    sum += z[i];
  }
  bool open = hi - lo <= 2;
  for (int i = diag_axes; i < z.dim(); ++i) open = open && std::abs(z[i]) <= 1;
  if (open) return std::nullopt;
  return (floor_div(sum, diag_axes) % 2 == 0) ? even : odd;
}

}  // namespace

std::vector<Scene> scene_catalog(int d) {
  if (d != 4 && d != 6) throw std::invalid_argument("scene_catalog: d must be 4 or 6");
  using namespace colors;
  std::vector<Scene> out;
  auto add = [&](char id, std::string name, ZVec start, std::function<std::optional<Rgb>(const ZVec&)> f) {
    out.push_back(Scene{id, std::move(name), d, std::move(start), std::move(f)});
  };
  const ZVec zero(d);
  ZVec e1(d);
  e1[0] = 1;
  ZVec ones(d);
  for (int i = 0; i < d; ++i) ones[i] = 1;

  // Cage: bars along the edges of the box [-2,2]^d, gold at the center.
  add('A', "cage with golden center", e1, [d](const ZVec& z) -> std::optional<Rgb> {
    if (z.linf() > 2) return std::nullopt;
    int at_wall = 0;
    for (int i = 0; i < d; ++i) at_wall += std::abs(z[i]) == 2;
    if (at_wall >= d - 1) return kSilver;
    if (z.l1() == 0) return kGold;
    return std::nullopt;
  });
  add('B', "one-dimensional tunnel", zero, [d](const ZVec& z) -> std::optional<Rgb> {
    for (int i = 1; i < d; ++i)
      if (z[i] != 0) return kBrightRed;
    return std::nullopt;
  });
  // 1-skeleton of the period-2 cubical complex: at least d-1 even coordinates.
  add('C', "1-skeleton of edge-2 cubes", ones, [d](const ZVec& z) -> std::optional<Rgb> {
    int even = 0;
    for (int i = 0; i < d; ++i) even += (z[i] % 2 == 0);
    if (even >= d - 1) return Rgb{235, 235, 225};
    return std::nullopt;
  });
  add('D', "two-dimensional tunnel", zero, [d](const ZVec& z) -> std::optional<Rgb> {
    for (int i = 2; i < d; ++i)
      if (z[i] != 0) return kOrange;
    return std::nullopt;
  });
  if (d == 4) {
    add('E', "two hyperplanes in distance 2", zero, [](const ZVec& z) -> std::optional<Rgb> {
      if (z[0] == -1) return kBlue;
      if (z[0] == 1) return kGreen;
      return std::nullopt;
    });
  } else {
    // four-dimensional tunnel z1 = z2 = 0
    add('E', "four-dimensional tunnel", zero, [](const ZVec& z) -> std::optional<Rgb> {
      if (std::max(std::abs(z[0]), std::abs(z[1])) != 1) return std::nullopt;
      return (z[0] == -1 || z[1] == -1) ? kBlue : kGreen;
    });
  }
  add('F', "two hyperplanes in distance 3", zero, [](const ZVec& z) -> std::optional<Rgb> {
    if (z[0] == -1) return kCyan;
    if (z[0] == 2) return kGreen;
    return std::nullopt;
  });
  add('G', "two orthogonal hyperplanes", zero, [](const ZVec& z) -> std::optional<Rgb> {
    if (z[0] == 1) return kRed;
    if (z[1] == 1) return kYellow;
    return std::nullopt;
  });
  add('H', "four quarterspaces", zero, [](const ZVec& z) -> std::optional<Rgb> {
    if (z[0] >= 1 && z[1] >= 1) return kRed;
    if (z[0] >= 1 && z[1] <= -1) return kYellow;
    if (z[0] <= -1 && z[1] >= 1) return kCyan;
    if (z[0] <= -1 && z[1] <= -1) return kBlue;
    return std::nullopt;
  });
  add('I', "diagonal tunnel in all coordinates but one", zero,
      [d](const ZVec& z) { return diagonal_tunnel(z, d - 1, kGold, kSilver); });
  add('J', "diagonal tunnel", zero, [d](const ZVec& z) { return diagonal_tunnel(z, d, kPurple, kGray); });
  return out;
}

Scene scene_by_id(char id, int d) {
  for (auto& s : scene_catalog(d))
    if (s.id == id) return s;
  throw std::invalid_argument(std::string("unknown scene '") + id + "' (expected A..J)");
}

std::optional<Hit> trace(const HoneycombSpec& spec, const Scene& scene, RayState state, int max_steps) {
  while (state.steps < max_steps) {
    const Crossing c = advance_inplace(spec, state);
    if (c.face < 0) return std::nullopt;
    if (auto color = scene.fill(state.coord)) {
      Hit h;
      h.color = *color;
      h.traveled = state.traveled;
      h.coord = state.coord;
      h.face = c.face;
      h.steps = state.steps;
      const double th = std::tanh(spec.face_distance);
      const auto& u = spec.face_dirs[c.face];
      const double k[3] = {c.hit[0] / c.hit[3] - th * u[0], c.hit[1] / c.hit[3] - th * u[1],
                           c.hit[2] / c.hit[3] - th * u[2]};
      const auto& basis = spec.face_basis[c.face];
      const double ext = spec.face_extent[c.face];
      h.u = (k[0] * basis[0][0] + k[1] * basis[0][1] + k[2] * basis[0][2]) / ext;
      h.v = (k[0] * basis[1][0] + k[1] * basis[1][1] + k[2] * basis[1][2]) / ext;
      return h;
    }
  }
  return std::nullopt;
}

Rgb shade(const Hit& hit) {
  const double fog = std::exp(-hit.traveled / 4.0);
  const bool checker = (hit.u >= 0.0) != (hit.v >= 0.0);
  const double f = fog * (checker ? 0.75 : 1.0);
  auto ch = [f](std::uint8_t c) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(c * f), 0L, 255L));
  };
  return {ch(hit.color.r), ch(hit.color.g), ch(hit.color.b)};
}

Isometry3 camera_pose(const std::array<double, 3>& offset, double yaw, double pitch) {
  const double len = std::sqrt(offset[0] * offset[0] + offset[1] * offset[1] + offset[2] * offset[2]);
  Isometry3 pose;
  if (len > 0.0) {
    const std::array<double, 3> u{offset[0] / len, offset[1] / len, offset[2] / len};
    pose = hyp::translation_to(hyp::Point3(hyp::point_at<3>(u, len)));
  }
  return pose * hyp::rotation<3>(2, 0, yaw) * hyp::rotation<3>(1, 2, pitch);
}

RayState locate_camera(const HoneycombSpec& spec, const Camera3D& cam, Isometry3& frame) {
  frame = Isometry3::identity();
  const Vec<3> target = cam.pose.apply(hyp::origin_vec<3>());
  RayState st = initial_state(spec, cam.cell, {0, 0, 1, 0});
  double remaining = std::acosh(std::max(1.0, target[3]));
  if (remaining < 1e-12) return st;
  // Walk the geodesic from the cell center toward the camera, cell by cell.
  st.dir = hyp::Direction<3>::tangent(hyp::Point3(), target).vec();
  Vec<3> goal = target;
  for (int guard = 0; guard < 100000; ++guard) {
    RayState probe = st;
    const Crossing c = advance_inplace(spec, probe);
    if (c.face < 0 || c.t >= remaining) break;
    remaining -= c.t + kFaceNudge;
    frame = spec.cross[c.face] * frame;
    goal = spec.cross[c.face].apply(goal);
    probe.traveled = 0.0;
    probe.steps = 0;
    st = probe;
  }
  st.pos = goal;
  return st;
}

Vec<3> pixel_direction(int x, int y, const RenderOptions& opt) {
  const double tan_half = std::tan(opt.fov_deg * std::numbers::pi / 360.0);
  const double sx = (2.0 * (x + 0.5) / opt.width - 1.0) * tan_half;
  const double sy = -(2.0 * (y + 0.5) / opt.height - 1.0) * tan_half * opt.height / opt.width;
  const double n = std::sqrt(sx * sx + sy * sy + 1.0);
  return {sx / n, sy / n, 1.0 / n, 0.0};
}

namespace {

void check_options(const RenderOptions& opt) {
  if (opt.width <= 0 || opt.height <= 0) throw std::invalid_argument("render: zero image dimensions");
  if (opt.max_steps < 0) throw std::invalid_argument("render: negative step budget");
}

Rgb render_pixel(const HoneycombSpec& spec, const Scene& scene, const RayState& base, const Isometry3& view,
                 int x, int y, const RenderOptions& opt) {
  RayState st = base;
  st.dir = view.apply(pixel_direction(x, y, opt));
  const auto hit = trace(spec, scene, std::move(st), opt.max_steps);
  return hit ? shade(*hit) : colors::kBlack;
}

}  // namespace

ImageBuf render_serial(const HoneycombSpec& spec, const Scene& scene, const Camera3D& cam,
                       const RenderOptions& opt) {
  check_options(opt);
  Isometry3 frame;
  const RayState base = locate_camera(spec, cam, frame);
  const Isometry3 view = frame * cam.pose;
  ImageBuf img(opt.width, opt.height);
  for (int y = 0; y < opt.height; ++y)
    for (int x = 0; x < opt.width; ++x) img.set(x, y, render_pixel(spec, scene, base, view, x, y, opt));
  return img;
}

ImageBuf render(const HoneycombSpec& spec, const Scene& scene, const Camera3D& cam, const RenderOptions& opt) {
  check_options(opt);
  Isometry3 frame;
  const RayState base = locate_camera(spec, cam, frame);
  const Isometry3 view = frame * cam.pose;
  ImageBuf img(opt.width, opt.height);
#pragma omp parallel for schedule(dynamic, 4)
  for (int y = 0; y < opt.height; ++y)
    for (int x = 0; x < opt.width; ++x) img.set(x, y, render_pixel(spec, scene, base, view, x, y, opt));
  return img;
}

}  // namespace hg::honeycomb
