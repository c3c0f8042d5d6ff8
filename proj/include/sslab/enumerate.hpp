#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sslab/market.hpp"

namespace sslab {

// All permutations of 0..n-1 in lexicographic order.
std::vector<std::vector<AgentIndex>> all_permutations(std::size_t n);

// Calls `visit` once for each of the (n!)^n preference profiles over n
// agents, in odometer order over all_permutations(n) (last agent fastest).
void for_each_profile(
    std::size_t n,
    const std::function<void(const std::vector<std::vector<AgentIndex>>&)>& visit);

// Calls `visit` once per set partition of 0..n-1 (Bell(n) of them).
// Blocks are ordered by their lowest member and sorted internally.
void for_each_partition(
    std::size_t n,
    const std::function<void(const std::vector<std::vector<AgentIndex>>&)>& visit);

}  // namespace sslab
