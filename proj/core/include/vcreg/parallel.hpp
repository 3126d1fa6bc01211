#pragma once

#include <cstddef>
#include <functional>

namespace vcreg {

/// Worker count used by library-internal parallel loops. Defaults to the
/// VCREG_THREADS environment variable when set, else hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n). Results must be written to per-index slots;
/// the schedule is unspecified.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace vcreg
