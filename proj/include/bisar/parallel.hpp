#pragma once

#include <cstddef>
#include <functional>

namespace bisar {

/// Worker cap used by every data-parallel loop. 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls fn(i) for i in [begin, end), split into contiguous chunks over the
/// worker pool. Each index is processed by exactly one worker, so results that
/// depend only on i are bit-identical for any thread count.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn);

}  // namespace bisar
