#include "hypergrid/worlds.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hg::worlds {

using nlohmann::json;
using scene2d::EventKind;
using scene2d::Label;

std::string to_string(Status s) {
  switch (s) {
    case Status::playing: return "playing";
    case Status::won: return "won";
    case Status::lost: return "lost";
  }
  return "playing";
}

Event rejection(const std::string& reason) {
  return {EventKind::info, json{{"rejected", true}, {"reason", reason}}};
}

json coord_json(const ZVec& z) { return z.to_vector(); }

namespace {

Event info(const std::string& text) { return {EventKind::info, json{{"message", text}}}; }

void check_dir(Dir dir, int d) {
  if (dir.axis < 0 || dir.axis >= d || (dir.sign != 1 && dir.sign != -1))
    throw std::invalid_argument("direction " + dir.str() + " outside dimension " + std::to_string(d));
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit(std::uint64_t u) { return static_cast<double>(u >> 11) * 0x1.0p-53; }

}  // namespace

// --- color picker ----------------------------------------------------------

ColorPickerState colorpicker_step(const ColorPickerState& s, Dir dir) {
  check_dir(dir, 3);
  ColorPickerState out = s;
  out.current[dir.axis] = std::clamp(s.current[dir.axis] + dir.sign * s.step, 0, 255);
  out.position = s.position + dir;
  return out;
}

ColorPickerState colorpicker_set_step(const ColorPickerState& s, int step) {
  if (std::find(kColorSteps.begin(), kColorSteps.end(), step) == kColorSteps.end())
    throw std::invalid_argument("step must be one of 1,2,4,8,16,32");
  ColorPickerState out = s;
  out.step = step;
  return out;
}

Rgb colorpicker_color(const ColorPickerState& s, const ZVec& rel) {
  auto ch = [&](int i) { return static_cast<std::uint8_t>(std::clamp(s.current[i] + rel[i] * s.step, 0, 255)); };
  return {ch(0), ch(1), ch(2)};
}

// --- pitch space -----------------------------------------------------------

Rational pitch_ratio(const ZVec& cell) {
  if (cell.dim() != 4) throw std::invalid_argument("pitch_ratio: cell must have 4 coordinates");
  static const std::array<Rational, 4> gens{Rational(3, 2), Rational(4, 3), Rational(5, 4), Rational(7, 5)};
  Rational r = 1;
  for (int i = 0; i < 4; ++i) {
    const Rational g = cell[i] >= 0 ? gens[i] : 1 / gens[i];
    for (int k = 0; k < std::abs(cell[i]); ++k) r *= g;
  }
  return r;
}

double pitch_frequency(const PitchState& s, const ZVec& cell) {
  return s.base_freq * static_cast<double>(pitch_ratio(cell));
}

std::string ratio_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Event pitch_sound(const PitchState& s, const ZVec& cell) {
  return {EventKind::sound,
          json{{"cell", coord_json(cell)}, {"ratio", ratio_string(pitch_ratio(cell))},
               {"frequency", pitch_frequency(s, cell)}}};
}

Transition<PitchState> pitch_step(const PitchState& s, Dir dir) {
  check_dir(dir, 4);
  PitchState out = s;
  out.cell = s.cell + dir;
  return {out, {pitch_sound(out, out.cell)}};
}

// --- roguelike -------------------------------------------------------------

namespace {

bool random_wall(const RogueState& s, const ZVec& z) {
  std::uint64_t h = splitmix(s.rng_seed);
  for (int i = 0; i < z.dim(); ++i) h = splitmix(h ^ static_cast<std::uint32_t>(z[i]));
  return unit(h) < kWallDensity;
}

bool is_wall(const RogueState& s, const ZVec& z) {
  if (z.linf() > s.radius) return true;
  if (s.walls.count(z)) return true;
  return s.random_walls && z.l1() > 1 && random_wall(s, z);
}

int enemy_at(const RogueState& s, const ZVec& z) {
  for (std::size_t i = 0; i < s.enemies.size(); ++i)
    if (s.enemies[i] == z) return static_cast<int>(i);
  return -1;
}

bool adjacent_enemy(const RogueState& s) {
  return std::any_of(s.enemies.begin(), s.enemies.end(),
                     [&](const ZVec& e) { return l1_distance(e, s.player) == 1; });
}

}  // namespace

RogueState rogue_new(int d, std::uint64_t seed) {
  if (d < 3 || d > kMaxDim) throw std::invalid_argument("rogue: d must be in 3..6");
  RogueState s;
  s.d = d;
  s.player = ZVec(d);
  s.rng_seed = seed;
  s.random_walls = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-s.radius, s.radius);
  while (s.enemies.size() < 3) {
    ZVec z(d);
    for (int i = 0; i < d; ++i) z[i] = coord(rng);
    if (z.l1() < 4 || is_wall(s, z) || enemy_at(s, z) >= 0) continue;
    s.enemies.push_back(z);
  }
  return s;
}

bool rogue_blocked(const RogueState& s, const ZVec& z) {
  return is_wall(s, z) || z == s.player || enemy_at(s, z) >= 0;
}

RogueState rogue_enemy_phase(RogueState s) {
  for (auto& e : s.enemies) {
    std::vector<int> axes;
    for (int i = 0; i < s.d; ++i)
      if (e[i] != s.player[i]) axes.push_back(i);
    std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) {
      return std::abs(s.player[a] - e[a]) > std::abs(s.player[b] - e[b]);
    });
    for (int a : axes) {
      const Dir dir{static_cast<std::int8_t>(a), static_cast<std::int8_t>(s.player[a] > e[a] ? 1 : -1)};
      const ZVec next = e + dir;
      if (rogue_blocked(s, next)) continue;
      e = next;
      break;
    }
  }
  return s;
}

Transition<RogueState> rogue_step(const RogueState& s, const RogueAction& action) {
  if (s.status != Status::playing) return {s, {rejection("game over")}, false};
  RogueState out = s;
  std::vector<Event> events;
  switch (action.kind) {
    case RogueAction::Kind::wait: break;
    case RogueAction::Kind::move: {
      check_dir(action.dir, s.d);
      const ZVec next = s.player + action.dir;
      if (is_wall(s, next)) return {s, {rejection("wall")}, false};
      if (enemy_at(s, next) >= 0) return {s, {rejection("occupied")}, false};
      out.player = next;
      break;
    }
    case RogueAction::Kind::attack: {
      check_dir(action.dir, s.d);
      const int i = enemy_at(s, s.player + action.dir);
      if (i < 0) return {s, {rejection("nothing to attack")}, false};
      out.enemies.erase(out.enemies.begin() + i);
      events.push_back(info("enemy destroyed"));
      break;
    }
  }
  ++out.turn;
  if (out.enemies.empty()) {
    out.status = Status::won;
    events.push_back({EventKind::win, json::object()});
    return {out, events};
  }
  out = rogue_enemy_phase(std::move(out));
  if (out.lose_on_contact && adjacent_enemy(out)) {
    out.status = Status::lost;
    events.push_back({EventKind::lose, json::object()});
  }
  return {out, events};
}

// --- puzzles ---------------------------------------------------------------

PuzzleState house_new() {
  PuzzleState s;
  s.kind = PuzzleKind::house;
  s.d = 4;
  s.r = 2;
  s.player = ZVec{0, 0, 0, 2};
  return s;
}

PuzzleState center_new(PuzzleKind kind, int d, int r) {
  if (kind == PuzzleKind::house) return house_new();
  if (d < 3 || d > kMaxDim) throw std::invalid_argument("center puzzle: d must be in 3..6");
  if (r < 1) throw std::invalid_argument("center puzzle: r must be positive");
  PuzzleState s;
  s.kind = kind;
  s.d = d;
  s.r = r;
  s.player = ZVec(d);
  for (int i = 0; i < d; ++i) s.player[i] = r;
  return s;
}

Cell classify(const PuzzleState& s, const ZVec& z) {
  bool zero = true;
  for (int i = 0; i < z.dim(); ++i) zero = zero && z[i] == 0;
  if (zero) return Cell::center;
  switch (s.kind) {
    case PuzzleKind::house: {
      if (z[3] != 0) return Cell::outside;
      int m = 0;
      for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(z[i]));
      if (m > s.r) return Cell::outside;
      return m == s.r ? Cell::wall : Cell::inside;
    }
    case PuzzleKind::hypercube: return z.linf() < s.r ? Cell::inside : Cell::outside;
    case PuzzleKind::orthoplex: return z.l1() < s.r ? Cell::inside : Cell::outside;
  }
  return Cell::outside;
}

Transition<PuzzleState> puzzle_step(const PuzzleState& s, Dir dir) {
  check_dir(dir, s.d);
  const ZVec next = s.player + dir;
  if (classify(s, next) == Cell::wall) return {s, {rejection("wall")}, false};
  PuzzleState out = s;
  out.player = next;
  std::vector<Event> events;
  if (!s.solved && puzzle_solved(out)) {
    out.solved = true;
    events.push_back({EventKind::win, json::object()});
  }
  out.solved = puzzle_solved(out);
  return {out, events};
}

bool puzzle_solved(const PuzzleState& s) { return classify(s, s.player) == Cell::center; }

// --- sokoban ---------------------------------------------------------------

namespace {

Dir down() { return Dir{kGravityAxis, -1}; }

bool won(const SokobanState& s) {
  if (s.targets.empty()) return false;
  return std::all_of(s.targets.begin(), s.targets.end(), [&](const ZVec& t) { return s.boxes.count(t) > 0; });
}

bool free_cell(const SokobanState& s, const ZVec& z) {
  return !sokoban_solid(s, z) && !s.boxes.count(z) && z != s.player;
}

}  // namespace

SokobanState sokoban_default() {
  SokobanState s;
  s.player = ZVec{0, 1, 0, 1};
  s.walls = {ZVec{0, 1, 0, 0}, ZVec{0, 2, 0, 0}};
  s.boxes = {ZVec{1, 0, 0, 0}, ZVec{0, 2, 0, 1}};
  s.targets = {ZVec{2, 0, 0, 0}, ZVec{0, 3, 0, 0}};
  s.floor = 0;
  return s;
}

bool sokoban_solid(const SokobanState& s, const ZVec& z) { return z[kGravityAxis] < s.floor || s.walls.count(z); }

SokobanState sokoban_settle(SokobanState s) {
  for (long iter = 0; iter < kGravityCap; ++iter) {
    bool moved = false;
    // lowest entities first so stacks fall together
    std::vector<ZVec> order(s.boxes.begin(), s.boxes.end());
    order.push_back(s.player);
    std::stable_sort(order.begin(), order.end(),
                     [](const ZVec& a, const ZVec& b) { return a[kGravityAxis] < b[kGravityAxis]; });
    for (const ZVec& z : order) {
      const ZVec below = z + down();
      if (!free_cell(s, below)) continue;
      if (z == s.player) {
        s.player = below;
      } else {
        s.boxes.erase(z);
        s.boxes.insert(below);
      }
      moved = true;
    }
    if (!moved) return s;
  }
  throw std::runtime_error("sokoban: gravity did not settle");
}

Transition<SokobanState> sokoban_step(const SokobanState& s, Dir dir) {
  check_dir(dir, 4);
  if (s.status != Status::playing) return {s, {rejection("game over")}, false};
  const ZVec next = s.player + dir;
  if (sokoban_solid(s, next)) return {s, {rejection("wall")}, false};
  SokobanState out = s;
  if (s.boxes.count(next)) {
    const ZVec beyond = next + dir;
    if (!free_cell(s, beyond)) return {s, {rejection("box blocked")}, false};
    out.boxes.erase(next);
    out.boxes.insert(beyond);
  }
  out.player = next;
  out = sokoban_settle(std::move(out));
  std::vector<Event> events;
  if (won(out)) {
    out.status = Status::won;
    events.push_back({EventKind::win, json::object()});
  }
  return {out, events};
}

// --- level files -----------------------------------------------------------

namespace {

ZVec parse_coord(const json& j, int d, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    throw std::invalid_argument(path + ": expected an array of " + std::to_string(d) + " integers");
  ZVec z(d);
  for (int i = 0; i < d; ++i) {
    if (!j[i].is_number_integer()) throw std::invalid_argument(path + "/" + std::to_string(i) + ": not an integer");
    z[i] = j[i].get<int>();
  }
  return z;
}

CellSet parse_cells(const json& j, const char* key, int d) {
  CellSet out;
  if (!j.contains(key)) return out;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw std::invalid_argument(std::string("/") + key + ": expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.insert(parse_coord(arr[i], d, std::string("/") + key + "/" + std::to_string(i)));
  return out;
}

json cells_json(const CellSet& cells) {
  json a = json::array();
  for (const auto& z : cells) a.push_back(coord_json(z));
  return a;
}

int parse_header(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("level: expected an object");
  if (j.value("format", 0) != 1) throw std::invalid_argument("/format: unsupported level format");
  if (!j.contains("d") || !j.at("d").is_number_integer()) throw std::invalid_argument("/d: missing");
  return j.at("d").get<int>();
}

}  // namespace

SokobanState sokoban_from_json(const json& j) {
  if (parse_header(j) != 4) throw std::invalid_argument("/d: sokoban levels are 4-dimensional");
  SokobanState s;
  s.player = parse_coord(j.at("player"), 4, "/player");
  s.walls = parse_cells(j, "walls", 4);
  s.boxes = parse_cells(j, "boxes", 4);
  s.targets = parse_cells(j, "targets", 4);
  s.floor = j.value("floor", 0);
  if (sokoban_solid(s, s.player)) throw std::invalid_argument("/player: inside a wall");
  for (const auto& b : s.boxes)
    if (sokoban_solid(s, b) || b == s.player) throw std::invalid_argument("/boxes: box " + b.str() + " overlaps");
  s = sokoban_settle(std::move(s));
  if (won(s)) s.status = Status::won;
  return s;
}

json sokoban_to_json(const SokobanState& s) {
  return json{{"format", 1},
              {"d", 4},
              {"player", coord_json(s.player)},
              {"walls", cells_json(s.walls)},
              {"boxes", cells_json(s.boxes)},
              {"targets", cells_json(s.targets)},
              {"floor", s.floor},
              {"status", to_string(s.status)}};
}

RogueState rogue_from_json(const json& j) {
  const int d = parse_header(j);
  if (d < 3 || d > kMaxDim) throw std::invalid_argument("/d: must be in 3..6");
  RogueState s;
  s.d = d;
  s.player = parse_coord(j.at("player"), d, "/player");
  s.walls = parse_cells(j, "walls", d);
  s.radius = j.value("radius", kArenaRadius);
  s.rng_seed = j.value("seed", std::uint64_t{0});
  s.random_walls = j.value("random_walls", false);
  s.turn = j.value("turn", 0);
  if (j.contains("enemies")) {
    const json& arr = j.at("enemies");
    for (std::size_t i = 0; i < arr.size(); ++i)
      s.enemies.push_back(parse_coord(arr[i], d, "/enemies/" + std::to_string(i)));
  }
  if (is_wall(s, s.player)) throw std::invalid_argument("/player: inside a wall");
  for (std::size_t i = 0; i < s.enemies.size(); ++i) {
    const ZVec& e = s.enemies[i];
    if (is_wall(s, e) || e == s.player || enemy_at(s, e) != static_cast<int>(i))
      throw std::invalid_argument("/enemies/" + std::to_string(i) + ": cell is taken");
  }
  if (s.enemies.empty()) s.status = Status::won;
  return s;
}

json rogue_to_json(const RogueState& s) {
  json enemies = json::array();
  for (const auto& e : s.enemies) enemies.push_back(coord_json(e));
  return json{{"format", 1},
              {"d", s.d},
              {"player", coord_json(s.player)},
              {"enemies", enemies},
              {"walls", cells_json(s.walls)},
              {"radius", s.radius},
              {"seed", s.rng_seed},
              {"random_walls", s.random_walls},
              {"status", to_string(s.status)},
              {"turn", s.turn}};
}

// --- world variant ---------------------------------------------------------

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const std::vector<std::string>& world_ids() {
  static const std::vector<std::string> ids{"colorpicker", "pitch",     "rogue",  "house",
                                            "center",      "orthoplex", "sokoban"};
  return ids;
}

World make_world(const std::string& id, int d, std::uint64_t seed) {
  auto need = [&](int want) {
    if (d != want) throw std::invalid_argument("world " + id + " requires d = " + std::to_string(want));
  };
  if (id == "colorpicker") {
    need(3);
    return ColorPickerState{};
  }
  if (id == "pitch") {
    need(4);
    return PitchState{};
  }
  if (id == "rogue") return rogue_new(d, seed);
  if (id == "house") {
    need(4);
    return house_new();
  }
  if (id == "center") return center_new(PuzzleKind::hypercube, d, 4);
  if (id == "orthoplex") return center_new(PuzzleKind::orthoplex, d, 4);
  if (id == "sokoban") {
    need(4);
    return sokoban_default();
  }
  throw std::invalid_argument("unknown world '" + id + "'");
}

std::string world_id(const World& w) {
  return std::visit(overloaded{[](const ColorPickerState&) { return std::string("colorpicker"); },
                               [](const PitchState&) { return std::string("pitch"); },
                               [](const RogueState&) { return std::string("rogue"); },
                               [](const PuzzleState& s) {
                                 switch (s.kind) {
                                   case PuzzleKind::house: return std::string("house");
                                   case PuzzleKind::hypercube: return std::string("center");
                                   case PuzzleKind::orthoplex: return std::string("orthoplex");
                                 }
                                 return std::string("house");
                               },
                               [](const SokobanState&) { return std::string("sokoban"); }},
                    w);
}

int command_dim(const World& w) {
  return std::visit(overloaded{[](const ColorPickerState&) { return 3; }, [](const PitchState&) { return 4; },
                               [](const RogueState& s) { return s.d; }, [](const PuzzleState& s) { return s.d; },
                               [](const SokobanState&) { return 4; }},
                    w);
}

int tiling_dim(const World& w) { return std::holds_alternative<SokobanState>(w) ? 3 : command_dim(w); }

ZVec tiled_position(const World& w) {
  return std::visit(overloaded{[](const ColorPickerState& s) { return s.position; },
                               [](const PitchState& s) { return s.cell; },
                               [](const RogueState& s) { return s.player; },
                               [](const PuzzleState& s) { return s.player; },
                               [](const SokobanState& s) { return ZVec{s.player[0], s.player[1], s.player[2]}; }},
                    w);
}

Status world_status(const World& w) {
  return std::visit(overloaded{[](const ColorPickerState&) { return Status::playing; },
                               [](const PitchState&) { return Status::playing; },
                               [](const RogueState& s) { return s.status; },
                               [](const PuzzleState& s) { return s.solved ? Status::won : Status::playing; },
                               [](const SokobanState& s) { return s.status; }},
                    w);
}

namespace {

template <class S>
Transition<World> widen(Transition<S> t) {
  return {World{std::move(t.state)}, std::move(t.events), t.accepted};
}

}  // namespace

Transition<World> world_move(const World& w, Dir dir) {
  check_dir(dir, command_dim(w));
  return std::visit(
      overloaded{[&](const ColorPickerState& s) {
                   return Transition<World>{World{colorpicker_step(s, dir)}, {}, true};
                 },
                 [&](const PitchState& s) { return widen(pitch_step(s, dir)); },
                 [&](const RogueState& s) { return widen(rogue_step(s, RogueAction::move(dir))); },
                 [&](const PuzzleState& s) { return widen(puzzle_step(s, dir)); },
                 [&](const SokobanState& s) { return widen(sokoban_step(s, dir)); }},
      w);
}

Transition<World> world_wait(const World& w) {
  if (const auto* s = std::get_if<RogueState>(&w)) return widen(rogue_step(*s, RogueAction::wait()));
  return {w, {info("nothing happens")}, true};
}

json world_to_json(const World& w) {
  json j = std::visit(
      overloaded{[](const ColorPickerState& s) {
                   return json{{"current", coord_json(s.current)}, {"step", s.step},
                               {"position", coord_json(s.position)}};
                 },
                 [](const PitchState& s) {
                   return json{{"base_freq", s.base_freq}, {"cell", coord_json(s.cell)},
                               {"ratio", ratio_string(pitch_ratio(s.cell))}};
                 },
                 [](const RogueState& s) { return rogue_to_json(s); },
                 [](const PuzzleState& s) {
                   return json{{"d", s.d}, {"r", s.r}, {"player", coord_json(s.player)}, {"solved", s.solved}};
                 },
                 [](const SokobanState& s) { return sokoban_to_json(s); }},
      w);
  j["world"] = world_id(w);
  j["status"] = to_string(world_status(w));
  return j;
}

json world_hud(const World& w) {
  return std::visit(
      overloaded{[](const ColorPickerState& s) {
                   return json{{"color", colorpicker_color(s, ZVec(3)).hex()}, {"step", s.step}};
                 },
                 [](const PitchState& s) {
                   return json{{"ratio", ratio_string(pitch_ratio(s.cell))},
                               {"frequency", pitch_frequency(s, s.cell)}};
                 },
                 [](const RogueState& s) {
                   return json{{"turn", s.turn}, {"enemies", static_cast<int>(s.enemies.size())}};
                 },
                 [](const PuzzleState& s) { return json{{"position", coord_json(s.player)}}; },
                 [](const SokobanState& s) {
                   int placed = 0;
                   for (const auto& t : s.targets) placed += s.boxes.count(t) ? 1 : 0;
                   return json{{"altitude", s.player[kGravityAxis]}, {"placed", placed},
                               {"targets", static_cast<int>(s.targets.size())}};
                 }},
      w);
}

// --- styles ----------------------------------------------------------------

namespace {

constexpr Rgb kFloor{70, 70, 80};
constexpr Rgb kOutsideCell{90, 110, 90};
constexpr Rgb kTarget{40, 110, 60};

Label player_glyph() { return {"*", std::nullopt, colors::kGold}; }
Label enemy_glyph() { return {"*", std::nullopt, colors::kGreen}; }

TileStyle rogue_style(const RogueState& s, const ZVec& z) {
  TileStyle st;
  st.fill = is_wall(s, z) ? colors::kBrown : kFloor;
  if (z == s.player) st.labels.push_back(player_glyph());
  if (enemy_at(s, z) >= 0) st.labels.push_back(enemy_glyph());
  return st;
}

TileStyle puzzle_style(const PuzzleState& s, const ZVec& z) {
  TileStyle st;
  switch (classify(s, z)) {
    case Cell::wall: st.fill = colors::kRed; break;
    case Cell::inside: st.fill = colors::kYellow; break;
    case Cell::center: st.fill = colors::kWhite; break;
    case Cell::outside: st.fill = kOutsideCell; break;
  }
  if (z == s.player) st.labels.push_back(player_glyph());
  return st;
}

TileStyle sokoban_style(const SokobanState& s, const ZVec& h) {
  // Column view from above: the topmost occupied cell decides the fill.
  int top = s.player[kGravityAxis];
  auto raise = [&](const CellSet& cells) {
    for (const auto& c : cells) top = std::max(top, c[kGravityAxis]);
  };
  raise(s.walls);
  raise(s.boxes);
  raise(s.targets);
  TileStyle st;
  st.fill = kFloor;
  st.altitude = 0;
  for (int a = top; a >= s.floor; --a) {
    const ZVec z{h[0], h[1], h[2], a};
    const bool target = s.targets.count(z) > 0;
    if (z == s.player) {
      st.fill = target ? kTarget : kFloor;
      st.labels.push_back(player_glyph());
    } else if (s.boxes.count(z)) {
      st.fill = colors::kOrange;
      if (target) st.labels.push_back({"+", std::nullopt, colors::kGreen});
    } else if (s.walls.count(z)) {
      st.fill = colors::kBrown;
    } else if (target) {
      st.fill = kTarget;
    } else {
      continue;
    }
    st.altitude = a - s.floor;
    return st;
  }
  return st;
}

}  // namespace

TileStyle style_at(const World& w, const ZVec& z) {
  return std::visit(overloaded{[&](const ColorPickerState& s) {
                                 TileStyle st;
                                 st.fill = colorpicker_color(s, z - s.position);
                                 if (z == s.position) st.labels.push_back({"o", std::nullopt, colors::kBlack});
                                 return st;
                               },
                               [&](const PitchState& s) {
                                 TileStyle st;
                                 // brightness follows log2 of the ratio, folded to an octave
                                 const double lr = std::log2(static_cast<double>(pitch_ratio(z)));
                                 const double frac = lr - std::floor(lr);
                                 const auto v = static_cast<std::uint8_t>(60 + 180 * frac);
                                 st.fill = {v, static_cast<std::uint8_t>(255 - v), 160};
                                 if (z == s.cell) st.labels.push_back(player_glyph());
                                 return st;
                               },
                               [&](const RogueState& s) { return rogue_style(s, z); },
                               [&](const PuzzleState& s) { return puzzle_style(s, z); },
                               [&](const SokobanState& s) { return sokoban_style(s, z); }},
                    w);
}

scene2d::StyleFn world_style(const World& w) {
  return [w](const ZVec& z) { return style_at(w, z); };
}

}  // namespace hg::worlds
