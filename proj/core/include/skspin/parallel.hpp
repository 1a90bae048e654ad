#pragma once

#include <functional>

namespace skspin {

/// Worker count: SKSPIN_THREADS env var if set, else hardware concurrency.
int thread_count();

/// Runs body(chunk_index, begin, end) over a fixed grid of chunks covering
/// [0, n_items). The chunk grid depends only on n_items, never on the worker
/// count, so per-chunk partial results merged in chunk order are bit-stable
/// across thread counts.
void parallel_for_chunks(long n_items,
                         const std::function<void(int chunk, long begin, long end)>& body);

/// Number of chunks parallel_for_chunks will use for n_items.
int chunk_count(long n_items);

}  // namespace skspin
