#pragma once

#include <functional>

namespace qcn {

// Worker pool size. Defaults to hardware concurrency, capped by the
// QCS_THREADS environment variable when set.
int thread_count();
void set_thread_count(int n);

// Executes fn(chunk) for chunk in [0, n_chunks). The chunk decomposition is
// fixed, so any reduction combined in chunk-index order is bit-identical for
// every thread count.
void run_chunks(int n_chunks, const std::function<void(int)>& fn);

// Sums chunk_sum(chunk) over all chunks, combining the partials pairwise in
// chunk-index order.
double reduce_chunks(int n_chunks, const std::function<double(int)>& chunk_sum);

// Pairwise sum of a contiguous array, deterministic for a fixed layout.
double pairwise_sum(const double* data, int n);

}  // namespace qcn
