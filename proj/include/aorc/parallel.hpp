#pragma once

#include <functional>

namespace aorc {

// Thread count for parallel loops: the AORC_THREADS environment variable when
// set (values < 1 are treated as 1), otherwise std::thread::hardware_concurrency.
int default_thread_count();

// Runs fn(i) for i in [begin, end) on up to `threads` worker threads in
// contiguous chunks. Callers write results into preallocated slots indexed by
// i and reduce sequentially afterwards, so outputs never depend on the thread
// count. Exceptions from workers are rethrown on the calling thread.
void parallel_for(int begin, int end, int threads, const std::function<void(int)>& fn);

}  // namespace aorc
