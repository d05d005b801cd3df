#pragma once

// Renderer-agnostic drawing lists for the {2d,4} tiling in the Poincare disk.
//
// A camera is anchored at a tile: `view` maps the anchor tile's frame to view
// coordinates, and every other tile is placed by walking the patch from the
// anchor. Absolute placements are never multiplied together here, so the
// camera stays accurate however far the player has walked.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypergrid/color.hpp"
#include "hypergrid/hypmath.hpp"
#include "hypergrid/image.hpp"
#include "hypergrid/lattice.hpp"
#include "hypergrid/tiling.hpp"
#include "json.hpp"

namespace hg::scene2d {

using hyp::DiskPoint;

inline constexpr int kSamplesPerEdge = 8;
inline constexpr double kDefaultCutoff = 5.0;
inline constexpr double kAltitudeScale = 0.5;

struct Camera2D {
  int anchor = 0;
  hyp::Isometry2 view;
  double w_base = 1.0;
  double altitude_scale = 0.0;  // 0 disables altitude perspective
};

struct Label {
  std::string text;
  std::optional<Dir> anchor;  // near the edge carrying this direction; center if empty
  Rgb color;
};

struct TileStyle {
  Rgb fill;
  std::vector<Label> labels;
  std::optional<int> altitude;
};

using StyleFn = std::function<TileStyle(const ZVec&)>;

struct FrameLabel {
  std::string text;
  DiskPoint pos;
  Rgb color;
};

struct FramePoly {
  int tile_id = 0;
  ZVec coord;
  std::vector<DiskPoint> boundary;
  Rgb fill;
  std::vector<FrameLabel> labels;
};

enum class EventKind { sound, win, lose, info };

struct Event {
  EventKind kind = EventKind::info;
  nlohmann::json payload = nlohmann::json::object();
};

std::string to_string(EventKind k);

struct SceneFrame {
  long long frame_seq = 0;
  std::vector<FramePoly> polys;
  std::vector<Event> events;
};

/// Isometries from each reachable tile's frame to the anchor's frame, by BFS
/// over already materialized neighbors. Unreached tiles stay empty.
std::vector<std::optional<hyp::Isometry2>> relative_placements(const tiling::TilePatch& patch, int anchor,
                                                               double max_distance);

/// Polygons of all tiles whose centers lie within `cutoff` of the view
/// center, in BFS order from the anchor. Only materialized tiles are drawn.
SceneFrame build_frame(const tiling::TilePatch& patch, const Camera2D& camera, const StyleFn& style,
                       double cutoff = kDefaultCutoff);

/// Number of edge steps from the anchor that build_frame may need.
int frame_radius(const tiling::TilingParams& params, double cutoff);

/// Cameras gliding from the current view center to the center of `target`.
/// The last camera is re-anchored at `target` and maps its center to the
/// disk origin.
std::vector<Camera2D> recenter_steps(const tiling::TilePatch& patch, const Camera2D& camera, int target,
                                     int n_steps);

/// Tile whose sampled polygon contains `at` (even-odd rule).
std::optional<int> pick(const SceneFrame& frame, DiskPoint at);

/// Projected tile center for the camera, or nothing if unreachable.
std::optional<DiskPoint> project_center(const tiling::TilePatch& patch, const Camera2D& camera, int tile);

/// Fills the frame's polygons into a size x size image (disk inscribed),
/// rows in parallel (OpenMP).
ImageBuf rasterize(const SceneFrame& frame, int size);
/// Single-threaded reference for rasterize.
ImageBuf rasterize_serial(const SceneFrame& frame, int size);

}  // namespace hg::scene2d
