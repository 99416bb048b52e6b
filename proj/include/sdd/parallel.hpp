#pragma once

#include <cstddef>
#include <functional>

namespace sdd {

int hardware_threads();

// Runs fn(i) for i in [0, n) on up to `threads` OS threads using contiguous
// static blocks. fn must write only to slots owned by index i, so results do
// not depend on the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace sdd
