// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "hypergrid/honeycomb.hpp"
#include "hypergrid/scene2d.hpp"
#include "hypergrid/worlds.hpp"

using namespace hg;

namespace {

template <bool Parallel>
void BM_render3d(benchmark::State& state) {
  const auto spec = honeycomb::spec_344();
  const auto scene = honeycomb::scene_by_id(static_cast<char>(state.range(0)), 4);
  const honeycomb::Camera3D cam{honeycomb::camera_pose({0, 0, 0}, 0, 0), scene.start};
  honeycomb::RenderOptions opt;
  opt.width = 160;
  opt.height = 120;
  for (auto _ : state) {
    auto img = Parallel ? honeycomb::render(spec, scene, cam, opt) : honeycomb::render_serial(spec, scene, cam, opt);
    benchmark::DoNotOptimize(img);
  }
  state.SetItemsProcessed(state.iterations() * opt.width * opt.height);
}

template <bool Parallel>
void BM_rasterize(benchmark::State& state) {
  tiling::TilePatch patch(static_cast<int>(state.range(0)));
  patch.expand(scene2d::frame_radius(patch.params(), scene2d::kDefaultCutoff));
  const auto world = worlds::make_world("colorpicker", 3, 0);
  const auto frame = scene2d::build_frame(patch, scene2d::Camera2D{}, worlds::world_style(world));
  const int size = 512;
  for (auto _ : state) {
    auto img = Parallel ? scene2d::rasterize(frame, size) : scene2d::rasterize_serial(frame, size);
    benchmark::DoNotOptimize(img);
  }
  state.SetItemsProcessed(state.iterations() * size * size);
}

}  // namespace

BENCHMARK(BM_render3d<false>)->Arg('A')->Arg('E')->Arg('H')->Unit(benchmark::kMillisecond);
BENCHMARK(BM_render3d<true>)->Arg('A')->Arg('E')->Arg('H')->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_rasterize<false>)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rasterize<true>)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
