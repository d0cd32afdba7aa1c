#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace otdp {

/// Number of workers actually used for a given hint (0 = hardware default).
int resolve_threads(int hint);

/// Runs fn(begin, end) over a partition of [0, n) on up to `threads`
/// workers. Chunks are disjoint, so writes to per-index slots need no
/// synchronization. Falls back to a single inline call when n is small.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

/// Pairwise (tree) summation; deterministic for a fixed operand order and
/// more accurate than sequential accumulation on long vectors.
double pairwise_sum(std::span<const double> values);

}  // namespace otdp
