#ifndef SCENEFST_APP_PARALLEL_H_
#define SCENEFST_APP_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace scenefst {

// Calls fn(i) for i in [0, count) on up to `threads` workers (0 picks the
// hardware concurrency). The exception of the lowest failing index, if any,
// is rethrown after all workers finish.
void ParallelFor(std::size_t count, std::size_t threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace scenefst

#endif  // SCENEFST_APP_PARALLEL_H_
