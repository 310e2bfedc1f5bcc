// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "vf/render/render.hpp"
#include "vf/stamp/stamp_ops.hpp"

namespace {

using vf::kernels::Execution;

vf::ShapePtr scene() {
  vf::Transform up;
  up.location = {0, 0, 6};
  return vf::make_union({vf::make_torus(10.0, 3.0), vf::make_transformed(up, vf::make_sphere(6.0)),
                         vf::make_cube({30, 30, 2}, 0.5)},
                        1.0);
}

vf::GridSpec grid(int n) { return vf::GridSpec::centered({0, 0, 0}, {n, n, n}, 40.0 / n); }

void fill(benchmark::State& state, Execution exec) {
  const auto shape = scene();
  const vf::GridSpec spec = grid(static_cast<int>(state.range(0)));
  vf::StampOptions o;
  o.execution = exec;
  for (auto _ : state) {
    vf::Stamp s = vf::make_stamp_from_node(shape, vf::kDefaultMaterial, 0, {}, spec, vf::Palette::standard(), o);
    benchmark::DoNotOptimize(s.distance().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.voxel_count()));
  state.counters["threads"] = exec == Execution::Serial ? 1 : omp_get_max_threads();
}

void render(benchmark::State& state, Execution exec) {
  const vf::Stamp stamp = vf::make_stamp_from_node(scene(), vf::kDefaultMaterial, 0, {}, grid(96));
  const int w = static_cast<int>(state.range(0)), h = w * 9 / 16;
  const vf::Camera cam = vf::canonical_camera(vf::View::Perspective, stamp.spec().bounds(), w, h);
  vf::RenderOptions o;
  o.execution = exec;
  for (auto _ : state) {
    auto r = vf::render(stamp, cam, o);
    benchmark::DoNotOptimize(r.image.rgb.data());
  }
  state.SetItemsProcessed(state.iterations() * w * h);
  state.counters["threads"] = exec == Execution::Serial ? 1 : omp_get_max_threads();
}

}  // namespace

BENCHMARK_CAPTURE(fill, serial, Execution::Serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(fill, parallel, Execution::Parallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(render, serial, Execution::Serial)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(render, parallel, Execution::Parallel)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
