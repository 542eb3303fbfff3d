#ifndef DIOLAB_PARALLEL_HPP
#define DIOLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace diolab {

// Thread count from the THREADS env var, defaulting to hardware concurrency.
int thread_count();

// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on up to
// thread_count() workers.  Chunks must not share mutable state; results are
// combined by the caller in chunk order, so output is identical for any
// thread count.
void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn);

} // namespace diolab

#endif
