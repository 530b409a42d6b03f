#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace blindsearch {

/// Worker count: `requested` when positive, else BLINDSEARCH_THREADS when set
/// and positive, else the hardware concurrency.
int worker_count(int requested = 0);

/// Splits [0, n) into `chunks` contiguous pieces and runs fn(chunk, begin, end)
/// on up to `workers` threads. Chunk boundaries depend only on n and chunks,
/// so per-chunk results can be merged in chunk order deterministically.
/// The first exception thrown by any chunk is rethrown.
void parallel_chunks(std::size_t n, std::size_t chunks, int workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace blindsearch
