#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hypergrid/engine_io.hpp"
#include "hypergrid/honeycomb.hpp"
#include "hypergrid/image.hpp"

namespace hg::io {

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop.store(true); }

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--camera: '" + item + "' is not a number");
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

struct Render2D {
  int d = 3;
  std::string world = "center";
  std::uint64_t seed = 0;
  std::string out;
  int size = 512;
  double cutoff = scene2d::kDefaultCutoff;
  bool serial = false;
};

int run_render_2d(const Render2D& o) {
  SessionConfig cfg;
  cfg.world = o.world;
  cfg.d = o.d;
  cfg.seed = o.seed;
  cfg.cutoff = o.cutoff;
  std::optional<Session> session;
  try {
    session.emplace(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto msg = session->snapshot();
  const ImageBuf img =
      o.serial ? scene2d::rasterize_serial(msg.frame, o.size) : scene2d::rasterize(msg.frame, o.size);
  write_ppm(img, o.out);
  return 0;
}

struct Render3D {
  std::string honeycomb = "344";
  std::string scene = "A";
  std::string out;
  int width = 320;
  int height = 240;
  std::string camera = "0,0,0";
  int max_steps = 600;
  double fov = 90.0;
  bool serial = false;
};

int run_render_3d(const Render3D& o) {
  if (o.scene.size() != 1 || o.scene[0] < 'A' || o.scene[0] > 'J') throw UsageError("--scene must be one of A..J");
  const auto c = parse_numbers(o.camera);
  if (c.size() != 3 && c.size() != 5) throw UsageError("--camera expects x,y,z or x,y,z,yaw,pitch");
  const auto spec = honeycomb::spec_by_name(o.honeycomb);
  const auto scene = honeycomb::scene_by_id(o.scene[0], spec.d);
  honeycomb::Camera3D cam;
  cam.cell = scene.start;
  cam.pose = honeycomb::camera_pose({c[0], c[1], c[2]}, c.size() == 5 ? c[3] : 0.0, c.size() == 5 ? c[4] : 0.0);
  honeycomb::RenderOptions opt;
  opt.width = o.width;
  opt.height = o.height;
  opt.max_steps = o.max_steps;
  opt.fov_deg = o.fov;
  const ImageBuf img =
      o.serial ? honeycomb::render_serial(spec, scene, cam, opt) : honeycomb::render(spec, scene, cam, opt);
  write_ppm(img, o.out);
  return 0;
}

struct Play {
  std::string world = "colorpicker";
  int d = 3;
  std::uint64_t seed = 0;
  std::string script;
  std::string level;
  std::string frames;
};

int run_play(const Play& o, std::ostream& out, std::ostream& err) {
  SessionConfig cfg;
  cfg.world = o.world;
  cfg.d = o.d;
  cfg.seed = o.seed;
  if (!o.level.empty()) cfg.level = read_json_file(o.level);
  std::optional<Session> session;
  try {
    session.emplace(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ofstream frames;
  if (!o.frames.empty()) {
    frames.open(o.frames, std::ios::binary);
    if (!frames) throw std::runtime_error("cannot write " + o.frames);
    frames << serialize_frame(session->snapshot()) << '\n';
  }
  std::ifstream file;
  std::istream* in = &std::cin;
  if (o.script != "-") {
    file.open(o.script);
    if (!file) throw std::runtime_error("cannot open " + o.script);
    in = &file;
  }
  std::string line;
  int lineno = 0;
  while (!session->closed() && std::getline(*in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Command cmd = parse_script_line(line, worlds::command_dim(session->world()));
      for (const auto& f : session->handle(cmd))
        if (frames.is_open()) frames << serialize_frame(f) << '\n';
    } catch (const CommandError& e) {
      err << o.script << ":" << lineno << ": " << e.what() << "\n";
      return 1;
    }
  }
  json state = worlds::world_to_json(session->world());
  state["frame_seq"] = session->frame_seq();
  out << canonical_dump(state) << "\n";
  return 0;
}

struct Serve {
  int port = 7777;
  std::string world = "colorpicker";
  int d = 3;
  std::uint64_t seed = 0;
};

int run_serve(const Serve& o, std::ostream& out) {
  SessionConfig cfg;
  cfg.world = o.world;
  cfg.d = o.d;
  cfg.seed = o.seed;
  try {
    initial_world(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  g_stop.store(false);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  return serve(o.port, cfg, g_stop, [&](int port) { out << "listening on 127.0.0.1:" << port << std::endl; });
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Z^d worlds on hyperbolic tilings and honeycombs", "hypergrid"};
  app.require_subcommand(1);

  Render2D r2;
  auto* c2 = app.add_subcommand("render-2d", "Draw a world's tiling in the Poincare disk to a PPM file");
  c2->add_option("--d", r2.d, "Lattice dimension (tiling {2d,4})")->check(CLI::Range(3, 6));
  c2->add_option("--world", r2.world, "World id")->check(CLI::IsMember(worlds::world_ids()));
  c2->add_option("--seed", r2.seed, "World seed");
  c2->add_option("--out", r2.out, "Output PPM path")->required();
  c2->add_option("--size", r2.size, "Image side in pixels")->check(CLI::Range(1, 16384));
  c2->add_option("--cutoff", r2.cutoff, "Culling radius")->check(CLI::PositiveNumber);
  c2->add_flag("--serial", r2.serial, "Use the single-threaded rasterizer");

  Render3D r3;
  auto* c3 = app.add_subcommand("render-3d", "Raycast a honeycomb scene to a PPM file");
  c3->add_option("--honeycomb", r3.honeycomb, "344 or 534")->check(CLI::IsMember({"344", "534"}));
  c3->add_option("--scene", r3.scene, "Scene A..J");
  c3->add_option("--out", r3.out, "Output PPM path")->required();
  c3->add_option("--width", r3.width, "Image width")->check(CLI::Range(1, 16384));
  c3->add_option("--height", r3.height, "Image height")->check(CLI::Range(1, 16384));
  c3->add_option("--camera", r3.camera, "x,y,z[,yaw,pitch]: offset from the start cell center, angles in radians");
  c3->add_option("--max-steps", r3.max_steps, "Cell crossings per ray")->check(CLI::Range(1, 1000000));
  c3->add_option("--fov", r3.fov, "Horizontal field of view in degrees")->check(CLI::Range(1.0, 179.0));
  c3->add_flag("--serial", r3.serial, "Use the single-threaded renderer");

  Play pl;
  auto* cp = app.add_subcommand("play", "Run a command script headless and print the final state");
  cp->add_option("--world", pl.world, "World id")->check(CLI::IsMember(worlds::world_ids()));
  cp->add_option("--d", pl.d, "Lattice dimension")->check(CLI::Range(3, 6));
  cp->add_option("--seed", pl.seed, "World seed");
  cp->add_option("--script", pl.script, "Script file, one command per line ('-' for stdin)")->required();
  cp->add_option("--level", pl.level, "Rogue or sokoban level file (JSON)");
  cp->add_option("--frames", pl.frames, "Also write every frame as JSON lines to this file");

  Serve sv;
  auto* cs = app.add_subcommand("serve", "Speak the JSON-lines protocol on a local TCP port");
  cs->add_option("--port", sv.port, "TCP port on 127.0.0.1")->check(CLI::Range(0, 65535));
  cs->add_option("--world", sv.world, "Initial world id")->check(CLI::IsMember(worlds::world_ids()));
  cs->add_option("--d", sv.d, "Initial lattice dimension")->check(CLI::Range(3, 6));
  cs->add_option("--seed", sv.seed, "World seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*c2) return run_render_2d(r2);
    if (*c3) return run_render_3d(r3);
    if (*cp) return run_play(pl, out, err);
    if (*cs) return run_serve(sv, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hg::io
