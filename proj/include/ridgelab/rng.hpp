#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

namespace ridgelab {

/// Expands a master seed into an independent component seed keyed by a
/// fixed label and index (FNV-1a of the label mixed through splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index = 0);

/// Number of worker threads used by parallel_for (default 1).
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, count) on thread_count() workers. Callers store
/// per-index results and reduce them in index order, which keeps the output
/// independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ridgelab
