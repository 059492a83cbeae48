#pragma once

#include <cstddef>
#include <functional>

namespace orca {

/// Worker count for internal parallel loops. Reads ORCA_THREADS (0 or unset
/// means hardware concurrency).
std::size_t thread_count();

/// Runs body(task) for every task in [0, tasks). Tasks must write disjoint
/// outputs; results are then independent of the schedule.
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& body);

}  // namespace orca
