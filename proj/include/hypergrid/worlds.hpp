#pragma once

// Interactive worlds on Z^d as deterministic state machines, plus the style
// functions that color their tiles.
//
// Every step function is pure: (state, action) -> (state', events). A rejected
// action returns the input state unchanged with an info event whose payload
// carries "rejected": true.

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypergrid/color.hpp"
#include "hypergrid/lattice.hpp"
#include "hypergrid/scene2d.hpp"
#include "json.hpp"

namespace hg::worlds {

using scene2d::Event;
using scene2d::TileStyle;
using Rational = boost::multiprecision::cpp_rational;
using CellSet = std::set<ZVec>;

enum class Status { playing, won, lost };
std::string to_string(Status s);

template <class S>
struct Transition {
  S state;
  std::vector<Event> events;
  bool accepted = true;
};

// --- color picker ----------------------------------------------------------

inline constexpr std::array<int, 6> kColorSteps{1, 2, 4, 8, 16, 32};

struct ColorPickerState {
  ZVec current{128, 128, 128};
  int step = 1;
  ZVec position{0, 0, 0};  // lattice cell of the current tile
};

ColorPickerState colorpicker_step(const ColorPickerState& s, Dir dir);
/// Throws std::invalid_argument unless `step` is in kColorSteps.
ColorPickerState colorpicker_set_step(const ColorPickerState& s, int step);
/// Color shown on the tile at lattice offset `rel` from the current tile.
Rgb colorpicker_color(const ColorPickerState& s, const ZVec& rel);

// --- pitch space -----------------------------------------------------------

inline constexpr double kBaseFrequency = 261.63;

struct PitchState {
  double base_freq = kBaseFrequency;
  ZVec cell{0, 0, 0, 0};
};

/// (3/2)^x (4/3)^y (5/4)^z (7/5)^t, exact.
Rational pitch_ratio(const ZVec& cell);
double pitch_frequency(const PitchState& s, const ZVec& cell);
/// "p/q" in lowest terms.
std::string ratio_string(const Rational& r);
Transition<PitchState> pitch_step(const PitchState& s, Dir dir);
/// Sound event for the given cell.
Event pitch_sound(const PitchState& s, const ZVec& cell);

// --- roguelike -------------------------------------------------------------

inline constexpr int kArenaRadius = 6;
inline constexpr double kWallDensity = 0.1;

struct RogueState {
  int d = 3;
  ZVec player;
  std::vector<ZVec> enemies;
  CellSet walls;
  bool random_walls = false;  // add hashed walls at kWallDensity, keyed by rng_seed
  int radius = kArenaRadius;  // cells with |z|_inf > radius are blocked
  std::uint64_t rng_seed = 0;
  Status status = Status::playing;
  int turn = 0;
  bool lose_on_contact = true;  // false only for scripted what-if replays
};

struct RogueAction {
  enum class Kind { move, wait, attack };
  Kind kind = Kind::wait;
  Dir dir;
  static RogueAction move(Dir d) { return {Kind::move, d}; }
  static RogueAction wait() { return {Kind::wait, {}}; }
  static RogueAction attack(Dir d) { return {Kind::attack, d}; }
};

/// Default arena: box of radius 6, walls at density 0.1, three enemies, all
/// drawn from a mt19937_64 seeded with `seed`.
RogueState rogue_new(int d, std::uint64_t seed);
bool rogue_blocked(const RogueState& s, const ZVec& z);
/// Enemy phase only: each enemy in list order takes one greedy step.
RogueState rogue_enemy_phase(RogueState s);
Transition<RogueState> rogue_step(const RogueState& s, const RogueAction& action);

// --- puzzles ---------------------------------------------------------------

enum class PuzzleKind { house, hypercube, orthoplex };
enum class Cell { wall, inside, center, outside };

struct PuzzleState {
  PuzzleKind kind = PuzzleKind::house;
  int d = 4;
  int r = 2;
  ZVec player;
  bool solved = false;
};

/// 5x5x5 block at coordinates -2..2 in axes 1-3 and 0 in axis 4; spawn
/// (0,0,0,2).
PuzzleState house_new();
/// Free-movement find-the-center puzzle, player at (r, ..., r).
PuzzleState center_new(PuzzleKind kind, int d, int r);
Cell classify(const PuzzleState& s, const ZVec& z);
Transition<PuzzleState> puzzle_step(const PuzzleState& s, Dir dir);
bool puzzle_solved(const PuzzleState& s);

// --- sokoban ---------------------------------------------------------------

inline constexpr int kGravityAxis = 3;
inline constexpr long kGravityCap = 1'000'000;

struct SokobanState {
  ZVec player{0, 0, 0, 0};
  CellSet walls;
  CellSet boxes;
  CellSet targets;
  int floor = 0;  // lowest free altitude; everything below is solid ground
  Status status = Status::playing;
};

/// Built-in two-box level: one push on the ground, one push off a ledge.
SokobanState sokoban_default();
bool sokoban_solid(const SokobanState& s, const ZVec& z);
/// Drops boxes and player until everything is supported.
SokobanState sokoban_settle(SokobanState s);
Transition<SokobanState> sokoban_step(const SokobanState& s, Dir dir);

// --- level files -----------------------------------------------------------

/// {"format": 1, "d": 4, "player": [...], "walls": [[...]], "boxes": ...,
///  "targets": ..., "floor": 0}. Throws std::invalid_argument on schema errors.
SokobanState sokoban_from_json(const nlohmann::json& j);
nlohmann::json sokoban_to_json(const SokobanState& s);
/// {"format": 1, "d": N, "player", "enemies", "walls", "radius", "seed"}.
RogueState rogue_from_json(const nlohmann::json& j);
nlohmann::json rogue_to_json(const RogueState& s);

// --- world variant ---------------------------------------------------------

using World = std::variant<ColorPickerState, PitchState, RogueState, PuzzleState, SokobanState>;

/// World ids: colorpicker, pitch, rogue, house, center, orthoplex, sokoban.
const std::vector<std::string>& world_ids();
/// Throws std::invalid_argument for an unknown id or unsupported d.
World make_world(const std::string& id, int d, std::uint64_t seed);
std::string world_id(const World& w);
/// Lattice dimension of the world's 2D tiling (3 horizontal axes for sokoban).
int tiling_dim(const World& w);
/// Lattice dimension of the world's commands.
int command_dim(const World& w);
/// Player cell projected to the tiled axes.
ZVec tiled_position(const World& w);
Status world_status(const World& w);
Transition<World> world_move(const World& w, Dir dir);
Transition<World> world_wait(const World& w);
nlohmann::json world_to_json(const World& w);
nlohmann::json world_hud(const World& w);

/// Tile style at tiled lattice coordinate `z` (absolute, not relative).
TileStyle style_at(const World& w, const ZVec& z);
scene2d::StyleFn world_style(const World& w);

Event rejection(const std::string& reason);
nlohmann::json coord_json(const ZVec& z);

}  // namespace hg::worlds
