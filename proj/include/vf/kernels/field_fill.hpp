#pragma once

// Per-voxel fill kernels. fill_serial is the reference; fill_parallel splits
// rows across OpenMP threads. The body writes only to the voxel it is
// handed, so both produce bit-identical grids.

#include <atomic>
#include <functional>

#include <omp.h>

#include "vf/stamp/grid_spec.hpp"

namespace vf::kernels {

enum class Execution { Serial, Parallel };

/// Polled between rows; returning true abandons the remaining rows.
using StopPredicate = std::function<bool()>;

/// Returns false when `should_stop` cut the fill short.
template <class Body>
bool fill_serial(const GridSpec& spec, Body&& body, const StopPredicate* should_stop = nullptr) {
  for (int k = 0; k < spec.dims[2]; ++k)
    for (int j = 0; j < spec.dims[1]; ++j) {
      if (should_stop && (*should_stop)()) return false;
      for (int i = 0; i < spec.dims[0]; ++i) body(spec.index(i, j, k), spec.center(i, j, k));
    }
  return true;
}

template <class Body>
bool fill_parallel(const GridSpec& spec, Body&& body, const StopPredicate* should_stop = nullptr) {
  std::atomic<bool> stopped{false};
  const int ny = spec.dims[1];
  const long rows = static_cast<long>(spec.dims[2]) * ny;
#pragma omp parallel for schedule(dynamic, 16)
  for (long r = 0; r < rows; ++r) {
    if (stopped.load(std::memory_order_relaxed)) continue;
    if (should_stop && (*should_stop)()) {
      stopped.store(true, std::memory_order_relaxed);
      continue;
    }
    const int k = static_cast<int>(r / ny), j = static_cast<int>(r % ny);
    for (int i = 0; i < spec.dims[0]; ++i) body(spec.index(i, j, k), spec.center(i, j, k));
  }
  return !stopped.load();
}

template <class Body>
bool fill(Execution exec, const GridSpec& spec, Body&& body, const StopPredicate* should_stop = nullptr) {
  return exec == Execution::Serial ? fill_serial(spec, body, should_stop) : fill_parallel(spec, body, should_stop);
}

}  // namespace vf::kernels
