#pragma once

#include <cstddef>
#include <functional>

namespace egorov {

/// How grid sweeps run. Both paths compute every task independently and
/// write into a preallocated slot, so results are bitwise identical.
enum class Exec { serial, parallel };

/// Thread cap for parallel sweeps: EGOROV_GA_THREADS if set to a positive
/// integer, otherwise the OpenMP default.
int sweep_threads();

/// Runs body(i) for i in [0, n). The serial path is the reference; the
/// parallel path uses an OpenMP dynamic schedule. The first exception thrown
/// by any task is rethrown after the loop.
void sweep_for(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec = Exec::parallel);

}  // namespace egorov
