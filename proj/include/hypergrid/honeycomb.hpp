#pragma once

// Right-angled honeycombs of H^3 whose cells carry Z^d coordinates, and the
// cell-to-cell raycaster that renders them.
//
//   {3,4,4}: octahedral cells, 8 faces, d = 4, ideal vertices.
//   {5,3,4}: dodecahedral cells, 12 faces, d = 6, material vertices.
//
// The canonical cell is centered at the origin. Face i has outward normal
// n_i = (cosh(rho) u_i, sinh(rho)), so a point is inside when <p, n_i> < 0 for
// every face. Faces i and i + d are opposite.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypergrid/color.hpp"
#include "hypergrid/hypmath.hpp"
#include "hypergrid/image.hpp"
#include "hypergrid/lattice.hpp"

namespace hg::honeycomb {

using hyp::Isometry3;
using hyp::Vec;

struct HoneycombSpec {
  int d = 4;
  int face_count = 8;
  std::string name;
  double face_distance = 0.0;  // rho: distance from cell center to each face
  std::vector<std::array<double, 3>> face_dirs;  // u_i, unit spatial directions
  std::vector<Vec<3>> normals;
  std::vector<int> opposite;
  std::vector<std::vector<bool>> adjacent;  // faces sharing an edge
  // Isometry taking the neighbor across face F onto the canonical cell
  // (reflection in F followed by the central symmetry of the cell).
  std::vector<Isometry3> cross;
  // relabel[F][k] = i: face k of the new frame is the image of face i.
  std::vector<std::vector<int>> relabel;
  // Cell vertices, scaled so the time coordinate is 1 (Klein form).
  std::vector<Vec<3>> vertices;
  // Per face: orthonormal spatial basis of the face and the Klein radius used
  // to normalize face texture coordinates.
  std::vector<std::array<std::array<double, 3>, 2>> face_basis;
  std::vector<double> face_extent;
};

HoneycombSpec spec_344();
HoneycombSpec spec_534();
/// 344 or 534; throws std::invalid_argument otherwise.
HoneycombSpec spec_by_name(const std::string& name);

// Face labels of a cell; only the first face_count entries are used.
using FaceLabels = std::array<Dir, 2 * kMaxDim>;

struct RayState {
  ZVec coord;
  FaceLabels face_dirs{};
  Vec<3> pos{0, 0, 0, 1};
  Vec<3> dir{0, 0, 1, 0};
  double traveled = 0.0;
  int steps = 0;
};

inline constexpr double kFaceNudge = 1e-9;

/// Ray at the origin of cell `coord` with the canonical face labeling.
RayState initial_state(const HoneycombSpec& spec, const ZVec& coord, const Vec<3>& dir);

struct Crossing {
  int face = -1;
  double t = 0.0;
  Vec<3> hit{};  // hit point in the frame of the cell that was left
};

/// Crosses into the next cell along the ray, in place. Returns face -1 when
/// no face lies ahead (only for rays running into an ideal vertex).
Crossing advance_inplace(const HoneycombSpec& spec, RayState& state);

/// One cell-to-cell step. Throws std::logic_error if no face is hit.
std::pair<RayState, int> advance(const HoneycombSpec& spec, const RayState& state);

/// Face labels after crossing face F: the return face gets -delta, its
/// opposite +delta, the rest follow the relabel permutation.
FaceLabels crossed_labels(const HoneycombSpec& spec, const FaceLabels& dirs, int face);

struct Scene {
  char id = 'A';
  std::string name;
  int d = 4;
  ZVec start;  // suggested camera cell
  std::function<std::optional<Rgb>(const ZVec&)> fill;
};

/// Scenes A..J for dimension d (4 or 6).
std::vector<Scene> scene_catalog(int d);
Scene scene_by_id(char id, int d);

struct Hit {
  Rgb color;
  double traveled = 0.0;
  double u = 0.0;
  double v = 0.0;
  ZVec coord;
  int face = -1;
  int steps = 0;
};

/// Marches the ray until it enters a filled cell, or gives up after
/// max_steps crossings.
std::optional<Hit> trace(const HoneycombSpec& spec, const Scene& scene, RayState state, int max_steps);

using hg::ImageBuf;

struct RenderOptions {
  int width = 320;
  int height = 240;
  double fov_deg = 90.0;
  int max_steps = 600;
};

/// Camera placement: `pose` maps camera-local coordinates (looking along +z,
/// y up) into the frame of the cell labeled `cell`, which uses the canonical
/// face labeling.
struct Camera3D {
  Isometry3 pose;
  ZVec cell;
};

/// Pose at the end of the geodesic from the cell center along `offset`
/// (length |offset|), turned by yaw about local y and then pitch about local x.
Isometry3 camera_pose(const std::array<double, 3>& offset, double yaw, double pitch);

/// Starting ray state for the camera, walking from the cell center to the
/// camera position if the pose leaves the canonical cell. `frame` receives the
/// isometry from the given cell frame into the frame of the returned state.
RayState locate_camera(const HoneycombSpec& spec, const Camera3D& cam, Isometry3& frame);

/// Camera-local unit direction of pixel (x, y).
Vec<3> pixel_direction(int x, int y, const RenderOptions& opt);

Rgb shade(const Hit& hit);

/// Per-pixel raycast, rows in parallel (OpenMP). Output matches render_serial.
ImageBuf render(const HoneycombSpec& spec, const Scene& scene, const Camera3D& cam, const RenderOptions& opt);
/// Single-threaded reference implementation.
ImageBuf render_serial(const HoneycombSpec& spec, const Scene& scene, const Camera3D& cam,
                       const RenderOptions& opt);

}  // namespace hg::honeycomb
