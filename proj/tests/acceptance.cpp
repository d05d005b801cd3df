// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hypergrid/engine_io.hpp"
#include "hypergrid/honeycomb.hpp"
#include "hypergrid/tiling.hpp"
#include "hypergrid/worlds.hpp"
#include "test_support.hpp"

using namespace hg;
using hyp::Vec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  int failures = 0;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 5) detail << " [" << what << "]";
    pass = false;
  }
};

int failed = 0;

void criterion(const std::string& name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  if (v.failures > 5) v.detail << " (" << v.failures << " violations)";
  std::printf("%s  %-28s %6.2fs %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
              v.detail.str().c_str());
  std::fflush(stdout);
  failed += !v.pass;
}

Dir dir(int axis, int sign) { return Dir{static_cast<std::int8_t>(axis), static_cast<std::int8_t>(sign)}; }

// ---------------------------------------------------------------------------
// {2d,4} patches

std::vector<int> graph_distance(const tiling::TilePatch& patch) {
  std::vector<int> dist(patch.size(), -1);
  std::vector<int> queue{0};
  dist[0] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& l : patch.tile(queue[i]).neighbors)
      if (l.known() && dist[l.tile] < 0) {
        dist[l.tile] = dist[queue[i]] + 1;
        queue.push_back(l.tile);
      }
  return dist;
}

int patch_radius(int d) { return d == 3 ? 7 : 5; }

std::map<int, tiling::TilePatch>& patches() {
  static std::map<int, tiling::TilePatch> cache;
  return cache;
}

const tiling::TilePatch& patch_for(int d) {
  auto it = patches().find(d);
  if (it != patches().end()) return it->second;
  tiling::TilePatch p(d);
  p.expand(patch_radius(d));
  return patches().emplace(d, std::move(p)).first->second;
}

Vec<2> center_of(const tiling::Tile& t) { return t.placement.apply(hyp::origin_vec<2>()); }

double center_distance(const tiling::Tile& a, const tiling::Tile& b) {
  return std::acosh(std::max(1.0, -hyp::minkowski_inner<2>(center_of(a), center_of(b))));
}

void labeling_soundness(Verdict& v) {
  const auto t0 = Clock::now();
  std::size_t tiles = 0, squares = 0;
  for (int d = 3; d <= 6; ++d) {
    patches().erase(d);
    const auto& patch = patch_for(d);
    tiles += patch.size();
    const int p = patch.edges();
    for (const auto& t : patch.tiles()) {
      std::set<int> seen;
      for (int k = 0; k < p; ++k) {
        seen.insert(t.edge_dirs[k].index(d));
        v.require(t.edge_dirs[(k + d) % p] == -t.edge_dirs[k], "opposite edge");
        const auto& l = t.neighbors[k];
        if (!l.known()) continue;
        const auto& n = patch.tile(l.tile);
        v.require(n.neighbors[l.ret].tile == t.id && n.neighbors[l.ret].ret == k, "symmetric link");
        v.require(n.coord == t.coord + t.edge_dirs[k], "coord step");
        v.require(n.edge_dirs[l.ret] == -t.edge_dirs[k], "shared edge label");
        v.require(n.edge_dirs[(l.ret + d) % p] == t.edge_dirs[k], "straight line");
      }
      v.require(static_cast<int>(seen.size()) == p, "direction bijection");
      for (int e = 0; e < p; ++e) {
        int cur = t.id, out = e;
        std::vector<int> ring{cur};
        for (int s = 0; s < 4 && cur >= 0; ++s) {
          const auto l = patch.tile(cur).neighbors[out];
          cur = l.tile;
          out = (l.ret - 1 + p) % p;
          ring.push_back(cur);
        }
        if (cur < 0) continue;
        ++squares;
        const Dir d1 = t.edge_dirs[e], d2 = t.edge_dirs[(e + 1) % p];
        v.require(ring[4] == t.id, "vertex closes after four tiles");
        v.require(d1.axis != d2.axis, "vertex square axes");
        v.require(patch.tile(ring[1]).coord == t.coord + d1 && patch.tile(ring[2]).coord == t.coord + d1 + d2 &&
                      patch.tile(ring[3]).coord == t.coord + d2,
                  "vertex square coords");
      }
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 10.0, "runtime over 10 s");
  v.detail << tiles << " tiles, " << squares << " vertex squares, build+check " << secs << "s";
}

void adjacency_iff(Verdict& v) {
  std::size_t geometric_pairs = 0;
  for (int d = 3; d <= 6; ++d) {
    const auto& patch = patch_for(d);
    const int p = patch.edges();
    const double two_r = 2.0 * patch.params().inradius;
    // patch form: each signed direction once per tile, leading to coord + delta
    for (const auto& t : patch.tiles())
      for (int k = 0; k < 2 * d; ++k) {
        const Dir delta = Dir::from_index(k, d);
        const int e = patch.edge_with_dir(t.id, delta);
        v.require(e >= 0 && e < p && t.edge_dirs[e] == delta, "signed direction present");
        const auto n = patch.known_neighbor(t.id, e);
        if (n) v.require(patch.tile(*n).coord == t.coord + delta, "coord + delta across edge");
      }
    // geometric side: tiles share an edge exactly when their centers are 2r
    // apart; such pairs are linked and their coords are at L1 distance 1
    const auto dist = graph_distance(patch);
    for (const auto& t : patch.tiles()) {
      if (dist[t.id] > 2) continue;
      std::set<int> linked;
      for (const auto& l : t.neighbors) linked.insert(l.tile);
      for (const auto& u : patch.tiles()) {
        if (u.id == t.id || dist[u.id] > 4) continue;
        const bool shares_edge = std::abs(center_distance(t, u) - two_r) < 1e-6;
        const bool l1_one = l1_distance(t.coord, u.coord) == 1;
        if (shares_edge) {
          ++geometric_pairs;
          v.require(linked.count(u.id) == 1, "edge-sharing tiles are linked");
          v.require(l1_one, "edge-sharing tiles at L1 distance 1");
        } else {
          v.require(linked.count(u.id) == 0, "linked tiles share an edge");
        }
      }
    }
  }
  v.detail << geometric_pairs << " edge-sharing pairs checked geometrically";
}

void corner_count(Verdict& v) {
  const auto& patch = patch_for(3);
  const auto dist = graph_distance(patch);
  const double two_R = 2.0 * patch.params().circumradius;
  int interior = 0;
  for (const auto& t : patch.tiles()) {
    if (dist[t.id] > patch_radius(3) - 2) continue;
    ++interior;
    std::set<int> touching;
    for (int e = 0; e < 6; ++e) {
      int cur = t.id, out = e;
      for (int s = 0; s < 3; ++s) {
        const auto l = patch.tile(cur).neighbors[out];
        cur = l.tile;
        out = (l.ret + 5) % 6;
        touching.insert(cur);
      }
    }
    v.require(touching.size() == 12, "12 tiles around");
    int single = 0, pair = 0;
    for (int id : touching) {
      const ZVec delta = patch.tile(id).coord - t.coord;
      int nonzero = 0;
      for (int i = 0; i < 3; ++i) nonzero += delta[i] != 0;
      single += nonzero == 1 && delta.linf() == 1;
      pair += nonzero == 2 && delta.linf() == 1;
    }
    v.require(single == 6 && pair == 6, "6 one-coordinate and 6 two-coordinate deltas");
    // geometric oracle: exactly 12 centers within 2R, all of them touching
    if (dist[t.id] <= 3) {
      int near = 0;
      for (const auto& u : patch.tiles())
        if (u.id != t.id && center_distance(t, u) < two_R + 1e-6) {
          ++near;
          v.require(touching.count(u.id) == 1, "near tile is corner-adjacent");
        }
      v.require(near == 12, "12 centers within 2R");
    }
  }
  v.detail << interior << " interior tiles";
}

// ---------------------------------------------------------------------------
// geometry and numerics

double right_angle_rho(double c) {
  auto f = [c](double rho) { return std::cosh(rho) * std::cosh(rho) * c - std::sinh(rho) * std::sinh(rho); };
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void geometry(Verdict& v) {
  double worst_angle = 0.0;
  for (int d = 3; d <= 6; ++d) {
    const tiling::TilePatch patch(d);
    const auto& vs = patch.canonical_vertices();
    const int p = 2 * d;
    for (int k = 0; k < p; ++k) {
      const hyp::Point2 b(vs[k]);
      const auto ta = hyp::Direction<2>::tangent(b, vs[(k + p - 1) % p]);
      const auto tc = hyp::Direction<2>::tangent(b, vs[(k + 1) % p]);
      const double angle = std::acos(hyp::minkowski_inner<2>(ta.vec(), tc.vec()));
      worst_angle = std::max(worst_angle, std::abs(angle - std::numbers::pi / 2));
    }
  }
  v.require(worst_angle < 1e-7, "right vertex angles");

  double worst_normal = 0.0, worst_light = 0.0, max_timelike = -1.0;
  for (const auto& s : {honeycomb::spec_344(), honeycomb::spec_534()}) {
    const double cos_dihedral_center = s.d == 4 ? 1.0 / 3.0 : 1.0 / std::sqrt(5.0);
    v.require(std::abs(s.face_distance - right_angle_rho(cos_dihedral_center)) < 1e-10, "face distance");
    for (int i = 0; i < s.face_count; ++i)
      for (int j = 0; j < s.face_count; ++j)
        if (s.adjacent[i][j])
          worst_normal = std::max(worst_normal, std::abs(hyp::minkowski_inner<3>(s.normals[i], s.normals[j])));
    for (const auto& q : s.vertices) {
      const double n = hyp::minkowski_inner<3>(q, q);
      if (s.d == 4)
        worst_light = std::max(worst_light, std::abs(n));
      else
        max_timelike = std::max(max_timelike, n);
    }
    v.require(!s.vertices.empty(), "vertices present");
  }
  v.require(worst_normal < 1e-8, "adjacent normals orthogonal");
  v.require(worst_light < 1e-7, "{3,4,4} vertices lightlike");
  v.require(max_timelike < 0.0, "{5,3,4} vertices timelike");
  v.detail << "angle err " << worst_angle << ", normal err " << worst_normal << ", lightlike err " << worst_light
           << ", max <v,v> (534) " << max_timelike;
}

double distance_to_geodesic(const Vec<3>& p, const Vec<3>& dirv, const Vec<3>& o) {
  const double a = -hyp::minkowski_inner<3>(o, p);
  const double b = hyp::minkowski_inner<3>(o, dirv);
  return std::acosh(std::max(1.0, std::sqrt(std::max(0.0, a * a - b * b))));
}

void raycaster(Verdict& v) {
  using namespace honeycomb;
  const auto spec = spec_344();
  RenderOptions opt;
  opt.width = 320;
  opt.height = 240;
  opt.max_steps = 600;
  double slowest = 0.0;
  for (const auto& scene : scene_catalog(4)) {
    Camera3D cam{camera_pose({0, 0, 0}, 0, 0), scene.start};
    const auto t0 = Clock::now();
    const auto a = render_serial(spec, scene, cam, opt);
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    v.require(secs < 30.0, std::string("scene ") + scene.id + " over 30 s");
    v.require(render_serial(spec, scene, cam, opt) == a, std::string("scene ") + scene.id + " not reproducible");
    v.require(render(spec, scene, cam, opt) == a, std::string("scene ") + scene.id + " parallel differs");
    v.require(encode_ppm(a) == encode_ppm(render_serial(spec, scene, cam, opt)), "ppm bytes differ");

    if (scene.id == 'E') {
      Isometry3 frame;
      const RayState base = locate_camera(spec, cam, frame);
      const Isometry3 view = frame * cam.pose;
      int hits = 0;
      for (int y = 0; y < opt.height; ++y)
        for (int x = 0; x < opt.width; ++x) {
          RayState st = base;
          st.dir = view.apply(pixel_direction(x, y, opt));
          const auto h = trace(spec, scene, st, opt.max_steps);
          v.require(a.at(x, y) == (h ? shade(*h) : colors::kBlack), "scene E pixel matches its trace");
          if (!h) continue;
          ++hits;
          v.require(std::abs(h->coord[0]) == 1, "scene E hit off the two hyperplanes");
        }
      v.require(hits > 0, "scene E has hits");
      v.detail << "E hits " << hits << "; ";
    }
  }

  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (const auto& s : {spec_344(), spec_534()})
    for (int i = 0; i < 10000; ++i) {
      const auto u = testing::random_direction<3>(rng, hyp::Point3());
      const RayState start = initial_state(s, ZVec(s.d), u.vec());
      RayState st = start;
      const int k = 1 + i % 12;
      for (int j = 0; j < k; ++j) st = advance(s, st).first;
      st.dir = hyp::scale<3>(st.dir, -1.0);
      for (int j = 0; j < k; ++j) st = advance(s, st).first;
      v.require(st.coord == start.coord, "reversed ray returns to its cell");
      worst = std::max(worst, distance_to_geodesic(st.pos, st.dir, hyp::origin_vec<3>()));
    }
  v.require(worst < 1e-6, "reversibility position error");
  v.detail << "slowest serial render " << slowest << "s, reversal error " << worst;
}

template <int N>
double composition_drift(std::mt19937_64& rng) {
  hyp::Isometry<N> acc;
  double worst = 0.0;
  for (int i = 1; i <= 10000; ++i) {
    acc = acc * testing::random_isometry<N>(rng, 0.05);
    if (i % hyp::kRenormalizeEvery == 0) acc = hyp::reorthonormalize(acc);
    worst = std::max(worst, hyp::form_defect<N>(acc.mat()));
  }
  return worst;
}

void numerics(Verdict& v) {
  std::mt19937_64 rng(99);
  const double d2 = composition_drift<2>(rng);
  const double d3 = composition_drift<3>(rng);
  v.require(d2 < 1e-8 && d3 < 1e-8, "composition drift");

  const double t_max = 12.0;
  int hits = 0, misses = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_point<2>(rng, 1.5);
    const auto dv = testing::random_direction<2>(rng, p);
    const auto n = testing::random_plane<2>(rng, 1.5);
    const auto got = hyp::ray_plane_hit(p, dv, n);
    const double oracle = testing::marching_hit<2>(p.vec(), dv.vec(), n.vec(), t_max);
    if (got && *got < t_max - 1e-3) {
      ++hits;
      worst = std::max(worst, std::abs(*got - oracle));
    } else if (!got) {
      ++misses;
      v.require(oracle < 0.0, "oracle finds a hit that ray_plane_hit missed");
    }
  }
  v.require(worst < 1e-3, "ray_plane_hit error");
  v.detail << "drift " << std::max(d2, d3) << ", ray_plane_hit err " << worst << " (" << hits << " hits, " << misses
           << " misses)";
}

// ---------------------------------------------------------------------------
// worlds

int house_bfs(const ZVec& from, const std::vector<int>& axes) {
  std::set<ZVec> walls;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      for (int z = -2; z <= 2; ++z)
        if (std::max({std::abs(x), std::abs(y), std::abs(z)}) == 2) walls.insert(ZVec{x, y, z, 0});
  std::map<ZVec, int> dist{{from, 0}};
  std::deque<ZVec> queue{from};
  while (!queue.empty()) {
    const ZVec z = queue.front();
    queue.pop_front();
    if (z == ZVec(4)) return dist[z];
    for (int a : axes)
      for (int s : {1, -1}) {
        const ZVec n = z + dir(a, s);
        if (n.linf() > 4 || walls.count(n) || dist.count(n)) continue;
        dist[n] = dist[z] + 1;
        queue.push_back(n);
      }
  }
  return -1;
}

void house(Verdict& v) {
  int sealed = 0;
  for (const ZVec& out : {ZVec{3, 0, 0, 0}, ZVec{0, -3, 0, 0}, ZVec{3, 3, 3, 0}, ZVec{0, 0, 4, 0}}) {
    v.require(house_bfs(out, {0, 1, 2}) == -1, "3D slice path to the center");
    ++sealed;
  }
  const auto spawn = worlds::house_new();
  const int len = house_bfs(spawn.player, {0, 1, 2, 3});
  v.require(len >= 0 && len <= 4, "path from the spawn via the fourth axis");

  io::Session session(io::SessionConfig{"house", 4, 0});
  std::string script;
  for (int i = 0; i < len; ++i) {
    const auto frames = session.handle(io::parse_script_line("-4", 4));
    v.require(!frames.empty(), "engine produced frames");
    script += "-4 ";
  }
  v.require(worlds::world_status(session.world()) == worlds::Status::won, "script reaches the center");
  v.detail << sealed << " outside starts sealed, spawn path length " << len << ", script '" << script << "' wins";
}

void rogue_replay(Verdict& v) {
  worlds::RogueState start;
  start.d = 3;
  start.player = ZVec{0, 0, 0};
  start.enemies = {ZVec{1, 0, 0}, ZVec{0, 1, 0}};
  start.radius = 50;
  int escapes = 0, worst = 0;
  for (int a = 0; a < 3; ++a)
    for (int sg : {1, -1}) {
      const auto first = worlds::rogue_step(start, worlds::RogueAction::move(dir(a, sg)));
      if (!first.accepted) continue;
      ++escapes;
      v.require(first.state.status == worlds::Status::lost, "escape survives under normal rules");
      auto replay = start;
      replay.lose_on_contact = false;
      for (int turn = 0; turn < 10; ++turn) {
        const auto t = worlds::rogue_step(replay, worlds::RogueAction::move(dir(a, sg)));
        v.require(t.accepted, "replay move accepted");
        replay = t.state;
        for (const auto& e : replay.enemies) {
          worst = std::max(worst, l1_distance(e, replay.player));
          v.require(l1_distance(e, replay.player) <= 2, "enemy fell behind");
        }
      }
    }
  v.require(escapes > 0, "some escape move accepted");
  v.detail << escapes << " escape directions x 10 turns, max enemy distance " << worst;
}

void pitch(Verdict& v) {
  using worlds::pitch_ratio;
  using worlds::Rational;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> e(-8, 8);
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) {
    const ZVec a{e(rng), e(rng), e(rng), e(rng)};
    const ZVec b{e(rng), e(rng), e(rng), e(rng)};
    v.require(pitch_ratio(a + b) == pitch_ratio(a) * pitch_ratio(b), "ratio(a+b) = ratio(a) ratio(b)");
  }
  v.require(pitch_ratio(ZVec{1, 0, 0, 0}) == Rational(3, 2), "3/2");
  v.require(pitch_ratio(ZVec{0, 1, 0, 0}) == Rational(4, 3), "4/3");
  v.require(pitch_ratio(ZVec{0, 0, 1, 0}) == Rational(5, 4), "5/4");
  v.require(pitch_ratio(ZVec{0, 0, 0, 1}) == Rational(7, 5), "7/5");
  v.require(pitch_ratio(ZVec{1, 1, 0, 0}) == Rational(2, 1), "2/1");
  v.require(worlds::ratio_string(pitch_ratio(ZVec{1, 1, 0, 0})) == "2/1", "2/1 string");
  v.detail << trials << " random pairs exact";
}

// ---------------------------------------------------------------------------
// determinism

std::string stream_of(const io::SessionConfig& cfg, const std::vector<std::string>& log) {
  io::Session s(cfg);
  std::string out = io::serialize_frame(s.snapshot()) + "\n";
  for (const auto& line : log)
    for (const auto& f : s.handle_line(line)) out += f + "\n";
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism(Verdict& v) {
  std::mt19937_64 rng(5);
  std::size_t bytes = 0;
  int streams = 0;
  for (const auto& [world, d] : std::vector<std::pair<std::string, int>>{
           {"colorpicker", 3}, {"pitch", 4}, {"rogue", 3}, {"rogue", 5}, {"house", 4}, {"center", 6}, {"sokoban", 4}}) {
    std::vector<std::string> log;
    for (int i = 0; i < 25; ++i) {
      const int axis = static_cast<int>(rng() % static_cast<unsigned>(d));
      io::Move m{dir(axis, rng() % 2 ? 1 : -1)};
      log.push_back(io::serialize_command(m));
    }
    log.push_back(R"({"type":"click","tile_id":0})");
    log.push_back(R"({"type":"reset","seed":9})");
    log.push_back(io::serialize_command(io::Move{dir(0, 1)}));
    const io::SessionConfig cfg{world, d, 17};
    const auto a = stream_of(cfg, log);
    const auto b = stream_of(cfg, log);
    v.require(a == b, "frame stream differs for " + world);
    bytes += a.size();
    ++streams;
  }

  const auto dirp = std::filesystem::temp_directory_path() / "hypergrid_acceptance";
  std::filesystem::create_directories(dirp);
  std::ostringstream out, err;
  for (const char* scene : {"A", "E", "H"}) {
    const auto p1 = (dirp / "one.ppm").string(), p2 = (dirp / "two.ppm").string();
    v.require(io::cli_main({"render-3d", "--scene", scene, "--out", p1}, out, err) == 0, "render-3d run");
    v.require(io::cli_main({"render-3d", "--scene", scene, "--out", p2}, out, err) == 0, "render-3d rerun");
    v.require(slurp(p1) == slurp(p2) && !slurp(p1).empty(), "render-3d PPMs differ");
  }
  const auto q1 = (dirp / "d1.ppm").string(), q2 = (dirp / "d2.ppm").string();
  v.require(io::cli_main({"render-2d", "--world", "rogue", "--d", "4", "--seed", "3", "--out", q1}, out, err) == 0,
            "render-2d run");
  v.require(io::cli_main({"render-2d", "--world", "rogue", "--d", "4", "--seed", "3", "--out", q2}, out, err) == 0,
            "render-2d rerun");
  v.require(slurp(q1) == slurp(q2), "render-2d PPMs differ");
  std::filesystem::remove_all(dirp);
  v.detail << streams << " frame streams (" << bytes << " bytes) and 4 CLI renders identical";
}

}  // namespace

int main() {
  criterion("labeling-soundness", labeling_soundness);
  criterion("adjacency-iff", adjacency_iff);
  criterion("corner-adjacency-count", corner_count);
  criterion("geometry", geometry);
  criterion("raycaster", raycaster);
  criterion("numerics", numerics);
  criterion("house-puzzle", house);
  criterion("rogue-two-attackers", rogue_replay);
  criterion("pitch-homomorphism", pitch);
  criterion("determinism", determinism);
  std::printf("%d of 10 criteria failed\n", failed);
  return failed;
}
