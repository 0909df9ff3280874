#pragma once

#include <cstddef>
#include <functional>

namespace bssk {

// Worker count from BSSK_WORKERS, else hardware concurrency; at least 1.
int default_workers();

// Calls body(k) for k in [0, count) on up to `workers` threads. Rethrows the
// first exception after all threads join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace bssk
