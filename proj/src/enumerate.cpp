#include "sslab/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace sslab {

std::vector<std::vector<AgentIndex>> all_permutations(std::size_t n) {
  std::vector<AgentIndex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<AgentIndex>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

void for_each_profile(
    std::size_t n,
    const std::function<void(const std::vector<std::vector<AgentIndex>>&)>& visit) {
  const auto perms = all_permutations(n);
  std::vector<std::size_t> digits(n, 0);
  std::vector<std::vector<AgentIndex>> rows(n, perms[0]);
  while (true) {
    visit(rows);
    // Odometer increment, last agent fastest.
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < perms.size()) {
        rows[pos] = perms[digits[pos]];
        break;
      }
      digits[pos] = 0;
      rows[pos] = perms[0];
      if (pos == 0) return;
    }
    if (n == 0) return;
  }
}

void for_each_partition(
    std::size_t n,
    const std::function<void(const std::vector<std::vector<AgentIndex>>&)>& visit) {
  if (n == 0) return;
  // Restricted growth strings: block[0] = 0, block[i] <= 1 + max(block[0..i)).
  std::vector<std::size_t> block(n, 0);
  std::vector<std::vector<AgentIndex>> blocks;
  while (true) {
    const std::size_t count = *std::max_element(block.begin(), block.end()) + 1;
    blocks.assign(count, {});
    for (std::size_t i = 0; i < n; ++i) {
      blocks[block[i]].push_back(static_cast<AgentIndex>(i));
    }
    visit(blocks);

    std::size_t i = n;
    bool advanced = false;
    while (i > 1) {
      --i;
      const std::size_t prefix_max =
          *std::max_element(block.begin(), block.begin() + static_cast<long>(i));
      if (block[i] <= prefix_max) {
        ++block[i];
        std::fill(block.begin() + static_cast<long>(i) + 1, block.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

}  // namespace sslab
