#include "hypergrid/tiling.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <string>

namespace hg::tiling {

using hyp::Isometry2;

TilingParams polygon_metrics(int d) {
  if (d < 3 || d > 6) throw std::invalid_argument("polygon_metrics: d must be in 3..6, got " + std::to_string(d));
  TilingParams t;
  t.d = d;
  t.p = 2 * d;
  t.q = 4;
  const double a = std::numbers::pi / t.p;
  const double b = std::numbers::pi / t.q;
  if (!(1.0 / t.p + 1.0 / t.q < 0.5)) throw std::invalid_argument("polygon_metrics: not hyperbolic");
  t.circumradius = std::acosh(1.0 / (std::tan(a) * std::tan(b)));
  t.inradius = std::acosh(std::cos(b) / std::sin(a));
  t.edge_length = 2.0 * std::acosh(std::cos(a) / std::sin(b));
  return t;
}

std::vector<Dir> canonical_labels(int d) {
  std::vector<Dir> r(2 * d);
  for (int k = 0; k < 2 * d; ++k) r[k] = Dir::from_index(k, d);
  return r;
}

std::vector<Dir> mirror_labels(const std::vector<Dir>& from, int k, int ret) {
  const int p = static_cast<int>(from.size());
  const int d = p / 2;
  auto w = [p](int i) { return ((i % p) + p) % p; };
  std::vector<Dir> out(p);
  for (int m = 1; m < p; ++m) out[w(ret + m)] = from[w(k - m)];
  out[w(ret)] = -from[k];
  out[w(ret + d)] = from[k];
  return out;
}

TilePatch::TilePatch(int d) : params_(polygon_metrics(d)) {
  const int p = params_.p;
  for (int k = 0; k < p; ++k) {
    const double th = 2.0 * std::numbers::pi * k / p;
    rot_edge_.push_back(hyp::rotation<2>(0, 1, th));
    rot_back_.push_back(hyp::rotation<2>(0, 1, std::numbers::pi - th));
    const double vt = th + std::numbers::pi / p;
    vertices_.push_back(hyp::point_at<2>({std::cos(vt), std::sin(vt)}, params_.circumradius));
  }
  cross_ = hyp::axis_translation<2>(0, 2.0 * params_.inradius);

  Tile c;
  c.id = 0;
  c.coord = ZVec(d);
  c.edge_dirs = canonical_labels(d);
  c.neighbors.assign(p, Link{});
  tiles_.push_back(std::move(c));
}

const Tile& TilePatch::tile(int id) const {
  if (id < 0 || id >= static_cast<int>(tiles_.size()))
    throw std::invalid_argument("TilePatch: unknown tile id " + std::to_string(id));
  return tiles_[id];
}

Isometry2 TilePatch::step_isometry(int k, int ret) const {
  return rot_edge_[wrap(k)] * cross_ * rot_back_[wrap(ret)];
}

std::optional<int> TilePatch::known_neighbor(int id, int k) const {
  const Link& l = tile(id).neighbors[wrap(k)];
  if (!l.known()) return std::nullopt;
  return l.tile;
}

int TilePatch::edge_with_dir(int id, Dir dir) const {
  const auto& dirs = tile(id).edge_dirs;
  for (int k = 0; k < params_.p; ++k)
    if (dirs[k] == dir) return k;
  throw std::logic_error("TilePatch: tile lacks a direction label");
}

int TilePatch::neighbor(int id, int k) {
  tile(id);
  if (k < 0 || k >= params_.p) throw std::invalid_argument("TilePatch::neighbor: edge index out of range");
  if (tiles_[id].neighbors[k].known()) return tiles_[id].neighbors[k].tile;
  // Both endpoints of edge k: vertex k-1 and vertex k.
  close_vertices({{id, k}, {id, wrap(k - 1)}});
  if (tiles_[id].neighbors[k].known()) return tiles_[id].neighbors[k].tile;
  return create_across(id, k);
}

int TilePatch::create_across(int id, int k) {
  const int d = params_.d;
  const int ret = wrap(k + d);  // pure translation from the parent frame
  Tile t;
  t.id = static_cast<int>(tiles_.size());
  const Tile& parent = tiles_[id];
  t.coord = parent.coord + parent.edge_dirs[k];
  t.edge_dirs = mirror_labels(parent.edge_dirs, k, ret);
  t.neighbors.assign(params_.p, Link{});
  t.placement = parent.placement * step_isometry(k, ret);
  t.compositions = parent.compositions + 1;
  if (t.compositions >= hyp::kRenormalizeEvery && t.placement.mat()[2][2] < kPlacementExactLimit) {
    t.placement = hyp::reorthonormalize(t.placement);
    t.compositions = 0;
  }
  const int nid = t.id;
  tiles_.push_back(std::move(t));
  link(id, k, nid, ret, false);
  close_vertices({{nid, ret}, {nid, wrap(ret - 1)}});
  return nid;
}

void TilePatch::link(int a, int ea, int b, int eb, bool verify) {
  if (verify) {
    const Tile& ta = tiles_[a];
    const Tile& tb = tiles_[b];
    if (!(tb.coord == ta.coord + ta.edge_dirs[ea]) || tb.edge_dirs != mirror_labels(ta.edge_dirs, ea, eb))
      throw LabelingConflict("labeling conflict between tiles " + std::to_string(a) + " and " +
                             std::to_string(b));
    ++closure_links_;
  }
  tiles_[a].neighbors[ea] = Link{b, eb};
  tiles_[b].neighbors[eb] = Link{a, ea};
}

void TilePatch::close_vertices(std::vector<std::pair<int, int>> work) {
  while (!work.empty()) {
    auto [id, v] = work.back();
    work.pop_back();
    close_vertex(id, v, work);
  }
}

// Vertex v of tile id lies between its edges v and v+1. Walking "right" leaves
// through edge v and, after entering a tile through edge r, continues through
// r-1; walking "left" leaves through v+1 and continues through r+1. The four
// tiles around the vertex form a cycle, so chains of length a and b with
// a + b = 3 have adjacent endpoints.
bool TilePatch::close_vertex(int id, int v, std::vector<std::pair<int, int>>& work) {
  int rt = id, rout = wrap(v), a = 0;
  while (a < 3) {
    const Link l = tiles_[rt].neighbors[rout];
    if (!l.known()) break;
    rt = l.tile;
    rout = wrap(l.ret - 1);
    ++a;
  }
  int lt = id, lout = wrap(v + 1), b = 0;
  while (a + b < 3) {
    const Link l = tiles_[lt].neighbors[lout];
    if (!l.known()) break;
    lt = l.tile;
    lout = wrap(l.ret + 1);
    ++b;
  }
  if (a + b < 3) return false;
  const Link existing = tiles_[rt].neighbors[rout];
  if (existing.known()) {
    if (existing.tile != lt || existing.ret != lout)
      throw LabelingConflict("vertex cycle does not close at tile " + std::to_string(id));
    return false;
  }
  if (tiles_[lt].neighbors[lout].known())
    throw LabelingConflict("half-linked edge at tile " + std::to_string(lt));
  link(rt, rout, lt, lout, true);
  work.emplace_back(rt, rout);
  work.emplace_back(rt, wrap(rout - 1));
  work.emplace_back(lt, lout);
  work.emplace_back(lt, wrap(lout - 1));
  return true;
}

void TilePatch::expand_around(int id, int radius) {
  tile(id);
  std::vector<int> dist(tiles_.size(), -1);
  std::deque<int> queue{id};
  dist[id] = 0;
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop_front();
    if (dist[t] >= radius) continue;
    for (int k = 0; k < params_.p; ++k) {
      const int n = neighbor(t, k);
      if (static_cast<int>(dist.size()) < static_cast<int>(tiles_.size())) dist.resize(tiles_.size(), -1);
      if (dist[n] < 0) {
        dist[n] = dist[t] + 1;
        queue.push_back(n);
      }
    }
  }
}

}  // namespace hg::tiling
