#include "hypergrid/engine_io.hpp"

#include <cmath>
#include <sstream>

namespace hg::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw CommandError(std::string("/") + key, std::string("missing field '") + key + "'");
  return j.at(key);
}

long long int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw CommandError(std::string("/") + key, "expected an integer");
  return v.get<long long>();
}

double number_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw CommandError(std::string("/") + key, "expected a number");
  return v.get<double>();
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw CommandError(std::string("/") + key, "expected a string");
  return v.get<std::string>();
}

void only_fields(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = key == "type";
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw CommandError("/" + key, "unknown field '" + key + "'");
  }
}

}  // namespace

Command command_from_json(const json& j, int active_d) {
  if (!j.is_object()) throw CommandError("", "command must be a JSON object");
  const std::string type = string_field(j, "type");
  if (type == "move") {
    only_fields(j, {"axis", "sign"});
    const long long axis = int_field(j, "axis");
    const long long sign = int_field(j, "sign");
    if (axis < 0 || axis >= active_d)
      throw CommandError("/axis", "axis must be in 0.." + std::to_string(active_d - 1));
    if (sign != 1 && sign != -1) throw CommandError("/sign", "sign must be 1 or -1");
    return Move{Dir{static_cast<std::int8_t>(axis), static_cast<std::int8_t>(sign)}};
  }
  if (type == "click") {
    only_fields(j, {"tile_id", "at"});
    Click c;
    if (j.contains("tile_id")) {
      const long long id = int_field(j, "tile_id");
      if (id < 0) throw CommandError("/tile_id", "tile_id must be non-negative");
      c.tile_id = static_cast<int>(id);
    }
    if (j.contains("at")) {
      const json& at = j.at("at");
      if (!at.is_array() || at.size() != 2 || !at[0].is_number() || !at[1].is_number())
        throw CommandError("/at", "expected [x, y]");
      c.at = hyp::DiskPoint{at[0].get<double>(), at[1].get<double>()};
    }
    if (c.tile_id.has_value() == c.at.has_value()) throw CommandError("", "click needs exactly one of tile_id, at");
    return c;
  }
  if (type == "slider") {
    only_fields(j, {"name", "value"});
    return Slider{string_field(j, "name"), number_field(j, "value")};
  }
  if (type == "mode") {
    only_fields(j, {"world", "d"});
    return Mode{string_field(j, "world"), static_cast<int>(int_field(j, "d"))};
  }
  if (type == "reset") {
    only_fields(j, {"seed"});
    const json& v = field(j, "seed");
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
      throw CommandError("/seed", "expected a non-negative integer");
    return Reset{v.get<std::uint64_t>()};
  }
  if (type == "quit") {
    only_fields(j, {});
    return Quit{};
  }
  if (type == "wait") {
    only_fields(j, {});
    return Wait{};
  }
  throw CommandError("/type", "unknown command type '" + type + "'");
}

Command parse_command(std::string_view text, int active_d) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CommandError("", std::string("invalid JSON: ") + e.what());
  }
  return command_from_json(j, active_d);
}

json command_to_json(const Command& cmd) {
  return std::visit(overloaded{[](const Move& m) {
                                 return json{{"type", "move"}, {"axis", m.dir.axis}, {"sign", m.dir.sign}};
                               },
                               [](const Click& c) {
                                 json j{{"type", "click"}};
                                 if (c.tile_id) j["tile_id"] = *c.tile_id;
                                 if (c.at) j["at"] = json::array({c.at->x, c.at->y});
                                 return j;
                               },
                               [](const Slider& s) { return json{{"type", "slider"}, {"name", s.name}, {"value", s.value}}; },
                               [](const Mode& m) { return json{{"type", "mode"}, {"world", m.world}, {"d", m.d}}; },
                               [](const Reset& r) { return json{{"type", "reset"}, {"seed", r.seed}}; },
                               [](const Quit&) { return json{{"type", "quit"}}; },
                               [](const Wait&) { return json{{"type", "wait"}}; }},
                    cmd);
}

std::string serialize_command(const Command& cmd) { return canonical_dump(command_to_json(cmd)); }

Command parse_script_line(std::string_view line, int active_d) {
  std::string s(line);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) throw CommandError("", "empty line");
  s = s.substr(first);
  if (s.front() == '{') return parse_command(s, active_d);
  std::istringstream in(s);
  std::string word;
  in >> word;
  auto arg = [&](const char* what) {
    std::string v;
    if (!(in >> v)) throw CommandError("", std::string("'") + word + "' needs " + what);
    return v;
  };
  auto number = [&](const std::string& v) {
    try {
      std::size_t used = 0;
      const long long n = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return n;
    } catch (const std::exception&) {
      throw CommandError("", "expected an integer, got '" + v + "'");
    }
  };
  json j;
  if (word[0] == '+' || word[0] == '-') {
    const long long axis = number(word.substr(1));
    j = {{"type", "move"}, {"axis", axis - 1}, {"sign", word[0] == '+' ? 1 : -1}};
  } else if (word == "wait" || word == "quit") {
    j = {{"type", word}};
  } else if (word == "click") {
    j = {{"type", "click"}, {"tile_id", number(arg("a tile id"))}};
  } else if (word == "step") {
    j = {{"type", "slider"}, {"name", "step"}, {"value", number(arg("a value"))}};
  } else if (word == "reset") {
    j = {{"type", "reset"}, {"seed", number(arg("a seed"))}};
  } else if (word == "mode") {
    const std::string w = arg("a world");
    j = {{"type", "mode"}, {"world", w}, {"d", number(arg("a dimension"))}};
  } else {
    throw CommandError("", "unknown script token '" + word + "'");
  }
  return command_from_json(j, active_d);
}

// --- canonical JSON --------------------------------------------------------

json canonicalize(const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      json out = json::object();
      for (const auto& [k, v] : j.items()) out[k] = canonicalize(v);
      return out;
    }
    case json::value_t::array: {
      json out = json::array();
      for (const auto& v : j) out.push_back(canonicalize(v));
      return out;
    }
    case json::value_t::number_float: {
      double v = std::round(j.get<double>() * 1e6) / 1e6;
      if (v == 0.0) v = 0.0;
      return v;
    }
    default: return j;
  }
}

std::string canonical_dump(const json& j) {
  return canonicalize(j).dump(-1, ' ', false, json::error_handler_t::strict);
}

// --- frames ----------------------------------------------------------------

namespace {

json point_json(hyp::DiskPoint p) { return json::array({p.x, p.y}); }

}  // namespace

json frame_to_json(const FrameMessage& msg) {
  json polys = json::array();
  for (const auto& p : msg.frame.polys) {
    json boundary = json::array();
    for (const auto& q : p.boundary) boundary.push_back(point_json(q));
    json labels = json::array();
    for (const auto& l : p.labels)
      labels.push_back({{"text", l.text}, {"pos", point_json(l.pos)}, {"color", l.color.hex()}});
    polys.push_back({{"tile_id", p.tile_id},
                     {"coord", worlds::coord_json(p.coord)},
                     {"fill", p.fill.hex()},
                     {"boundary", boundary},
                     {"labels", labels}});
  }
  json events = json::array();
  for (const auto& e : msg.frame.events) events.push_back({{"kind", scene2d::to_string(e.kind)}, {"data", e.payload}});
  return {{"type", "frame"},        {"frame_seq", msg.frame.frame_seq},
          {"world", msg.world},     {"status", worlds::to_string(msg.status)},
          {"hud", msg.hud},         {"final", msg.final},
          {"polys", polys},         {"events", events}};
}

std::string serialize_frame(const FrameMessage& msg) { return canonical_dump(frame_to_json(msg)); }

json error_to_json(const CommandError& e) {
  return {{"type", "error"}, {"path", e.pointer()}, {"message", e.what()}};
}

// --- sessions --------------------------------------------------------------

worlds::World initial_world(const SessionConfig& config) {
  if (!config.level) return worlds::make_world(config.world, config.d, config.seed);
  if (config.world == "rogue") {
    auto s = worlds::rogue_from_json(*config.level);
    if (s.d != config.d) throw std::invalid_argument("level dimension does not match d");
    return s;
  }
  if (config.world == "sokoban") return worlds::sokoban_from_json(*config.level);
  throw std::invalid_argument("level files are only read for rogue and sokoban");
}

Session::Session(SessionConfig config)
    : config_(std::move(config)),
      world_(initial_world(config_)),
      patch_(worlds::tiling_dim(world_)) {
  if (!(config_.cutoff > 0.0)) throw std::invalid_argument("cutoff must be positive");
  if (config_.anim_steps < 1) throw std::invalid_argument("anim_steps must be >= 1");
  start();
}

void Session::start() {
  patch_ = tiling::TilePatch(worlds::tiling_dim(world_));
  offset_ = worlds::tiled_position(world_);
  player_tile_ = patch_.central();
  camera_ = scene2d::Camera2D{};
  if (std::holds_alternative<worlds::SokobanState>(world_)) camera_.altitude_scale = scene2d::kAltitudeScale;
  patch_.expand_around(player_tile_, scene2d::frame_radius(patch_.params(), config_.cutoff));
  last_ = {};
}

FrameMessage Session::make_frame(const scene2d::Camera2D& cam, std::vector<scene2d::Event> events, bool final) {
  const worlds::World& w = world_;
  const ZVec off = offset_;
  const scene2d::StyleFn style = [&w, &off](const ZVec& z) { return worlds::style_at(w, z + off); };
  FrameMessage msg;
  msg.frame = scene2d::build_frame(patch_, cam, style, config_.cutoff);
  for (auto& p : msg.frame.polys) p.coord = p.coord + offset_;
  msg.frame.frame_seq = ++seq_;
  msg.frame.events = std::move(events);
  msg.world = worlds::world_id(world_);
  msg.status = worlds::world_status(world_);
  msg.hud = worlds::world_hud(world_);
  msg.hud["position"] = worlds::coord_json(worlds::tiled_position(world_));
  msg.final = final;
  if (final) last_ = msg.frame;
  return msg;
}

FrameMessage Session::snapshot() { return make_frame(camera_, {}, true); }

std::vector<FrameMessage> Session::single(std::vector<scene2d::Event> events) {
  return {make_frame(camera_, std::move(events), true)};
}

std::vector<FrameMessage> Session::apply(worlds::Transition<worlds::World> t) {
  const ZVec before = worlds::tiled_position(world_);
  world_ = std::move(t.state);
  const ZVec delta = worlds::tiled_position(world_) - before;
  if (delta.l1() == 0) return single(std::move(t.events));
  std::vector<FrameMessage> out;
  // walk one lattice step at a time; moves change at most one coordinate by 1
  int tile = player_tile_;
  for (int a = 0; a < delta.dim(); ++a)
    for (int k = 0; k < std::abs(delta[a]); ++k) {
      const Dir dir{static_cast<std::int8_t>(a), static_cast<std::int8_t>(delta[a] > 0 ? 1 : -1)};
      tile = patch_.neighbor(tile, patch_.edge_with_dir(tile, dir));
    }
  patch_.expand_around(tile, scene2d::frame_radius(patch_.params(), config_.cutoff));
  const auto cams = scene2d::recenter_steps(patch_, camera_, tile, config_.anim_steps);
  for (std::size_t i = 0; i + 1 < cams.size(); ++i) out.push_back(make_frame(cams[i], {}, false));
  camera_ = cams.back();
  player_tile_ = tile;
  out.push_back(make_frame(camera_, std::move(t.events), true));
  return out;
}

std::vector<FrameMessage> Session::click(const Click& c) {
  int target = -1;
  if (c.tile_id) {
    target = *c.tile_id;
    if (target >= static_cast<int>(patch_.size())) throw CommandError("/tile_id", "unknown tile");
  } else {
    const auto hit = scene2d::pick(last_, *c.at);
    if (!hit) return single({worlds::rejection("no tile at that point")});
    target = *hit;
  }
  if (target == player_tile_) {
    if (const auto* p = std::get_if<worlds::PitchState>(&world_)) return single({worlds::pitch_sound(*p, p->cell)});
    return single({worlds::rejection("already here")});
  }
  const auto& t = patch_.tile(player_tile_);
  for (int k = 0; k < patch_.edges(); ++k)
    if (t.neighbors[k].tile == target) return handle(Move{t.edge_dirs[k]});
  if (const auto* p = std::get_if<worlds::PitchState>(&world_))
    return single({worlds::pitch_sound(*p, patch_.tile(target).coord + offset_)});
  return single({worlds::rejection("tile is not adjacent")});
}

std::vector<FrameMessage> Session::handle(const Command& cmd) {
  if (closed_) throw CommandError("", "session is closed");
  return std::visit(
      overloaded{
          [&](const Move& m) {
            if (m.dir.axis < 0 || m.dir.axis >= worlds::command_dim(world_))
              throw CommandError("/axis", "axis outside the world's dimension");
            return apply(worlds::world_move(world_, m.dir));
          },
          [&](const Click& c) { return click(c); },
          [&](const Slider& s) {
            if (s.name == "step") {
              auto* cp = std::get_if<worlds::ColorPickerState>(&world_);
              if (!cp) throw CommandError("/name", "slider 'step' needs the colorpicker world");
              const int v = static_cast<int>(s.value);
              if (v != s.value) throw CommandError("/value", "step must be an integer");
              try {
                *cp = worlds::colorpicker_set_step(*cp, v);
              } catch (const std::invalid_argument& e) {
                throw CommandError("/value", e.what());
              }
              return single({});
            }
            if (s.name == "base_freq") {
              auto* p = std::get_if<worlds::PitchState>(&world_);
              if (!p) throw CommandError("/name", "slider 'base_freq' needs the pitch world");
              if (!(s.value > 0.0) || !std::isfinite(s.value))
                throw CommandError("/value", "base_freq must be positive");
              p->base_freq = s.value;
              return single({});
            }
            throw CommandError("/name", "unknown slider '" + s.name + "'");
          },
          [&](const Mode& m) {
            worlds::World next;
            try {
              next = worlds::make_world(m.world, m.d, config_.seed);
            } catch (const std::invalid_argument& e) {
              throw CommandError("/world", e.what());
            }
            config_.world = m.world;
            config_.d = m.d;
            config_.level.reset();
            world_ = std::move(next);
            start();
            return single({});
          },
          [&](const Reset& r) {
            config_.seed = r.seed;
            world_ = initial_world(config_);
            start();
            return single({});
          },
          [&](const Quit&) {
            closed_ = true;
            return single({{scene2d::EventKind::info, json{{"message", "bye"}}}});
          },
          [&](const Wait&) { return apply(worlds::world_wait(world_)); }},
      cmd);
}

std::vector<std::string> Session::handle_line(std::string_view line) {
  std::vector<std::string> out;
  try {
    const Command cmd = parse_command(line, worlds::command_dim(world_));
    for (const auto& f : handle(cmd)) out.push_back(serialize_frame(f));
  } catch (const CommandError& e) {
    out.push_back(canonical_dump(error_to_json(e)));
  }
  return out;
}

std::vector<FrameMessage> session_handle(Session& session, const Command& cmd) { return session.handle(cmd); }

}  // namespace hg::io
