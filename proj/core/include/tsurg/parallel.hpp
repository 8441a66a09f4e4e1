#pragma once

#include <cstddef>
#include <functional>

namespace tsurg {

// Thread cap from TENSOR_SURGERY_THREADS (unset or 0 = hardware concurrency).
std::size_t worker_count();

// Splits [0, n) into at most worker_count() contiguous chunks and runs
// fn(chunk, begin, end) for each, chunk ids ascending with position. Callers
// merge per-chunk results in chunk order so output never depends on
// scheduling. Returns the number of chunks used.
std::size_t parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace tsurg
