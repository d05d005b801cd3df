#pragma once

// Sessions, the newline-delimited JSON protocol, and the command-line tool.
//
// A session owns one world, the tile patch it is drawn on, and a camera
// anchored at the player's tile. Every command yields a batch of frames: the
// recentering animation (if the player tile changed) followed by one final
// frame that carries the events.

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypergrid/scene2d.hpp"
#include "hypergrid/tiling.hpp"
#include "hypergrid/worlds.hpp"
#include "json.hpp"

namespace hg::io {

using nlohmann::json;

// --- commands --------------------------------------------------------------

struct Move {
  Dir dir;
  friend bool operator==(const Move&, const Move&) = default;
};
struct Click {
  std::optional<int> tile_id;
  std::optional<hyp::DiskPoint> at;  // disk coordinates, resolved with pick
  friend bool operator==(const Click&, const Click&) = default;
};
struct Slider {
  std::string name;
  double value = 0.0;
  friend bool operator==(const Slider&, const Slider&) = default;
};
struct Mode {
  std::string world;
  int d = 3;
  friend bool operator==(const Mode&, const Mode&) = default;
};
struct Reset {
  std::uint64_t seed = 0;
  friend bool operator==(const Reset&, const Reset&) = default;
};
struct Quit {
  friend bool operator==(const Quit&, const Quit&) = default;
};
struct Wait {
  friend bool operator==(const Wait&, const Wait&) = default;
};

using Command = std::variant<Move, Click, Slider, Mode, Reset, Quit, Wait>;

/// Schema or validation failure; `pointer` is a JSON pointer into the input.
class CommandError : public std::runtime_error {
 public:
  CommandError(std::string pointer, const std::string& message)
      : std::runtime_error(message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Move axes must be below `active_d`.
Command command_from_json(const json& j, int active_d = kMaxDim);
Command parse_command(std::string_view text, int active_d = kMaxDim);
json command_to_json(const Command& cmd);
std::string serialize_command(const Command& cmd);

/// Script token form: "+1", "-3", "wait", "quit", "click 12", "step 8",
/// "reset 5", "mode rogue 3", or a JSON object. Axes are 1-based.
Command parse_script_line(std::string_view line, int active_d = kMaxDim);

// --- canonical JSON --------------------------------------------------------

/// Reals rounded to 6 fractional digits with -0 folded to 0.
json canonicalize(const json& j);
/// Compact dump of canonicalize(j); object keys come out sorted.
std::string canonical_dump(const json& j);

// --- frames ----------------------------------------------------------------

struct FrameMessage {
  scene2d::SceneFrame frame;
  std::string world;
  worlds::Status status = worlds::Status::playing;
  json hud = json::object();
  bool final = true;  // last frame of a batch
};

json frame_to_json(const FrameMessage& msg);
std::string serialize_frame(const FrameMessage& msg);
json error_to_json(const CommandError& e);

// --- sessions --------------------------------------------------------------

struct SessionConfig {
  std::string world = "colorpicker";
  int d = 3;
  std::uint64_t seed = 0;
  double cutoff = scene2d::kDefaultCutoff;
  int anim_steps = 8;
  std::optional<json> level;  // rogue or sokoban level file contents
};

/// World described by the config (the level file, if any, wins over the seed).
worlds::World initial_world(const SessionConfig& config);

class Session {
 public:
  /// Throws std::invalid_argument for an unknown world or unsupported d.
  explicit Session(SessionConfig config);

  /// Applies a command. Invalid commands throw CommandError and leave the
  /// session untouched.
  std::vector<FrameMessage> handle(const Command& cmd);
  /// Parses and applies one protocol line; returns serialized replies
  /// (frames, or a single error object).
  std::vector<std::string> handle_line(std::string_view line);
  /// Frame of the current state without applying anything.
  FrameMessage snapshot();

  const SessionConfig& config() const { return config_; }
  const worlds::World& world() const { return world_; }
  const tiling::TilePatch& patch() const { return patch_; }
  const scene2d::Camera2D& camera() const { return camera_; }
  int player_tile() const { return player_tile_; }
  const scene2d::SceneFrame& last_frame() const { return last_; }
  long long frame_seq() const { return seq_; }
  bool closed() const { return closed_; }

 private:
  void start();
  FrameMessage make_frame(const scene2d::Camera2D& cam, std::vector<scene2d::Event> events, bool final);
  std::vector<FrameMessage> apply(worlds::Transition<worlds::World> t);
  std::vector<FrameMessage> single(std::vector<scene2d::Event> events);
  std::vector<FrameMessage> click(const Click& c);

  SessionConfig config_;
  worlds::World world_;
  tiling::TilePatch patch_;
  scene2d::Camera2D camera_;
  ZVec offset_;
  int player_tile_ = 0;
  long long seq_ = 0;
  scene2d::SceneFrame last_;
  bool closed_ = false;
};

std::vector<FrameMessage> session_handle(Session& session, const Command& cmd);

// --- server and CLI --------------------------------------------------------

/// Serves sessions on 127.0.0.1:port, one per connection, each on its own
/// thread, until `stop` becomes true. `on_ready` gets the bound port (useful
/// with port 0). Returns 0 on clean shutdown, 1 if the socket cannot be set up.
int serve(int port, const SessionConfig& config, const std::atomic<bool>& stop,
          const std::function<void(int)>& on_ready = {});

/// Entry point of the hypergrid tool. 0 on success, 1 on render or IO
/// failure, 2 on bad flags.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hg::io
