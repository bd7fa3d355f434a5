#pragma once

#include <cstddef>
#include <functional>

namespace mgm {

// Worker count: MGM_THREADS if set and positive, otherwise the hardware
// concurrency (at least 1).
std::size_t default_thread_count();

// Calls fn(block) for every block in [0, blocks), spread over up to `threads`
// workers. Blocks are claimed dynamically, so fn must write only to state
// owned by its block.
void parallel_for_blocks(std::size_t blocks, const std::function<void(std::size_t)>& fn,
                         std::size_t threads = 0);

}  // namespace mgm
