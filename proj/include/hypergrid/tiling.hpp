#pragma once

// The {2d,4} tessellation of H^2 with its Z^d tile labeling.
//
// Tiles are created lazily across edges. Identity is combinatorial: each tile
// stores, per edge, the neighbor id and the neighbor's edge index that points
// back. Four tiles meet at every vertex, so once three of them are linked
// around a vertex the fourth link is forced; `TilePatch` closes such vertices
// eagerly and never creates a tile twice.
//
// Edge k of the canonical polygon has its midpoint in direction 2*pi*k/(2d);
// vertex k sits between edges k and k+1. Local frames are orientation
// preserving, so a neighbor across edge k walks the shared edge backwards.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypergrid/hypmath.hpp"
#include "hypergrid/lattice.hpp"

namespace hg::tiling {

struct TilingParams {
  int d = 3;
  int p = 6;  // polygon order 2d
  int q = 4;  // tiles per vertex
  double circumradius = 0.0;
  double inradius = 0.0;
  double edge_length = 0.0;
};

/// Metrics of the right-angled 2d-gon, 3 <= d <= 6.
///
/// From the characteristic triangle (angles pi/p, pi/q, pi/2):
///   cosh R = cot(pi/p) cot(pi/q), cosh r = cos(pi/q)/sin(pi/p),
///   cosh(l/2) = cos(pi/p)/sin(pi/q).
TilingParams polygon_metrics(int d);

/// Thrown when two discovery paths disagree on a tile's labeling.
class LabelingConflict : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Link {
  int tile = -1;
  int ret = -1;  // edge index of `tile` that leads back
  bool known() const { return tile >= 0; }
};

inline constexpr double kPlacementExactLimit = 1e6;

struct Tile {
  int id = 0;
  // Canonical polygon -> this tile. Exact only while cosh(distance) stays
  // below kPlacementExactLimit; rendering uses relative placements instead.
  hyp::Isometry2 placement;
  ZVec coord;
  std::vector<Dir> edge_dirs;
  std::vector<Link> neighbors;
  int compositions = 0;  // matrix products since the last renormalization
};

/// Labels of a tile entered through its edge `ret` from edge `k` of a tile
/// labeled `from`. The entry edge points back (-from[k]), its opposite
/// continues straight (+from[k]); the rest are the mirror image of `from`
/// in the shared edge: new[ret + m] = from[k - m].
std::vector<Dir> mirror_labels(const std::vector<Dir>& from, int k, int ret);

/// Canonical labeling: edge k -> +e_k for k < d, -e_(k-d) otherwise.
std::vector<Dir> canonical_labels(int d);

class TilePatch {
 public:
  explicit TilePatch(int d);

  const TilingParams& params() const { return params_; }
  int dim() const { return params_.d; }
  int edges() const { return params_.p; }
  int central() const { return 0; }
  std::size_t size() const { return tiles_.size(); }
  const Tile& tile(int id) const;
  const std::vector<Tile>& tiles() const { return tiles_; }

  /// Neighbor across edge k, created if needed.
  int neighbor(int id, int k);
  /// Neighbor across edge k if already materialized.
  std::optional<int> known_neighbor(int id, int k) const;

  /// Materializes every tile within `radius` edge steps of the central tile.
  void expand(int radius) { expand_around(central(), radius); }
  /// Materializes every tile within `radius` edge steps of `id`.
  void expand_around(int id, int radius);

  /// Edge of tile `id` labeled `dir`.
  int edge_with_dir(int id, Dir dir) const;

  /// Isometry taking the neighbor's frame (entered through its edge `ret`)
  /// to the frame of a tile, across that tile's edge k.
  hyp::Isometry2 step_isometry(int k, int ret) const;

  /// Vertices of the canonical polygon.
  const std::vector<hyp::Vec<2>>& canonical_vertices() const { return vertices_; }

  std::uint64_t closure_links() const { return closure_links_; }

 private:
  int create_across(int id, int k);
  void link(int a, int ea, int b, int eb, bool verify);
  void close_vertices(std::vector<std::pair<int, int>> work);
  bool close_vertex(int id, int v, std::vector<std::pair<int, int>>& work);
  int wrap(int k) const { return ((k % params_.p) + params_.p) % params_.p; }

  TilingParams params_;
  std::vector<Tile> tiles_;
  std::vector<hyp::Isometry2> rot_edge_;     // rotation taking direction 0 to edge k
  std::vector<hyp::Isometry2> rot_back_;     // rotation taking edge k to direction pi
  hyp::Isometry2 cross_;                     // translation by 2r along x
  std::vector<hyp::Vec<2>> vertices_;
  std::uint64_t closure_links_ = 0;
};

}  // namespace hg::tiling
