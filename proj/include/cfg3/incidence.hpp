#pragma once

#include <array>
#include <utility>
#include <vector>

namespace cfg3 {

/// A block: three marks (1-based). Element order is kept for serialization;
/// every semantic operation treats a block as a 3-set.
using Block = std::array<int, 3>;

/// An (n3) incidence table: n blocks of 3 marks on marks 1..n.
/// Degree-3 regularity is a semantic property checked by
/// mark_degree_profile / io::parse_table, not enforced by the type, so
/// defective structures can be built and diagnosed in memory.
struct IncidenceStructure {
  int n = 0;
  std::vector<Block> blocks;
};

/// Parameters of a generalized cyclic table: blocks {j, j+a, j+b} mod n,
/// j = 1..n, with 1 <= a < b < n.
struct GenCyclicParams {
  int n = 0;
  int a = 0;
  int b = 0;
};

/// One offending pair of blocks (1-based indices, block_a < block_b)
/// sharing two or more marks.
struct BlockPairWitness {
  int block_a = 0;
  int block_b = 0;
  std::vector<int> shared_marks;  // ascending
};

/// Result of the brute-force pairwise-intersection sweep. `witnesses` is
/// exhaustive over all unordered block pairs with intersection >= 2;
/// `valid` iff it is empty.
struct ValidityReport {
  bool valid = true;
  std::vector<BlockPairWitness> witnesses;
  int max_intersection = 0;
};

/// Representative of `value` in 1..n (marks are 1-based; reduction never
/// yields 0).
int reduce_mod(int value, int n);

/// Throws std::invalid_argument unless n >= 3 and 1 <= a < b < n.
void require_params(const GenCyclicParams& params);

/// Throws std::invalid_argument unless blocks.size() == n, every mark is
/// in 1..n and the three marks of each block are pairwise distinct.
void require_well_formed(const IncidenceStructure& s);

/// Builds the generalized cyclic table: block j = {j, j+a, j+b} reduced
/// to 1..n, ordered by j = 1..n.
IncidenceStructure build_gen_cyclic(const GenCyclicParams& params);

/// Brute-force combinatorial-validity oracle: enumerates all n(n-1)/2
/// block pairs and reports every pair sharing >= 2 marks.
ValidityReport check_incidence_structure(const IncidenceStructure& s);

/// (mark, number of blocks containing it) for marks 1..n. All degrees are
/// 3 exactly when s satisfies the (n3) condition.
std::vector<std::pair<int, int>> mark_degree_profile(const IncidenceStructure& s);

/// Copy of `b` sorted ascending.
Block sorted_block(const Block& b);

/// True iff the two structures have the same multiset of blocks-as-3-sets.
bool same_block_multiset(const IncidenceStructure& lhs, const IncidenceStructure& rhs);

}  // namespace cfg3
