#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfg3/incidence.hpp"

namespace cfg3 {

/// Raised when an input exceeds the desk-scale limits of the search
/// operations (n <= 30 for backtracking, n <= 10 for brute force).
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Bipartite incidence graph: mark vertices 1..n (black), block vertices
/// n+1..2n (white), an edge iff the mark lies in the block.
struct LeviGraph {
  int n = 0;
  std::vector<std::vector<int>> adjacency;  // index 1..2n, [0] unused; ascending
};

LeviGraph build_levi(const IncidenceStructure& s);

/// Incidence-preserving pair of bijections. Permutations are stored
/// 1-based (index 0 unused); block_perm is the one induced by point_perm.
struct ConfigAutomorphism {
  std::vector<int> point_perm;
  std::vector<int> block_perm;

  bool operator==(const ConfigAutomorphism& other) const = default;
};

struct IsomorphismMap {
  std::vector<int> point_map;  // 1-based, as in ConfigAutomorphism
  std::vector<int> block_map;
};

/// The complete color-preserving automorphism group of a configuration,
/// materialized element by element (desk scale).
struct AutomorphismGroup {
  int n = 0;
  std::vector<ConfigAutomorphism> elements;    // sorted by point_perm; [0] = identity
  std::vector<ConfigAutomorphism> generators;  // greedily minimized
  std::vector<std::vector<int>> point_orbits;  // each ascending, ordered by least member
  std::vector<std::vector<int>> block_orbits;

  std::size_t order() const { return elements.size(); }
};

/// Complete automorphism group via backtracking over point images with
/// iterated Levi-color refinement pruning. Requires an oracle-valid
/// structure; n > 30 raises CapacityError.
AutomorphismGroup automorphisms(const IncidenceStructure& s);

/// Independent oracle: enumerates all n! point permutations and keeps the
/// ones inducing a block bijection. Requires oracle-valid input and
/// n <= 10 (CapacityError above).
AutomorphismGroup brute_force_automorphisms(const IncidenceStructure& s);

/// Incidence-preserving bijection pair s1 -> s2, or nullopt. Mismatched n
/// yields nullopt immediately; both inputs must be oracle-valid.
std::optional<IsomorphismMap> is_isomorphic(const IncidenceStructure& s1,
                                            const IncidenceStructure& s2);

struct GroupReport {
  std::size_t order = 0;
  bool point_transitive = false;
  int max_element_order = 0;
  bool abelian = false;
  std::vector<std::pair<int, int>> element_order_histogram;  // (order, count) ascending
};

GroupReport group_report(const AutomorphismGroup& g);

/// True iff the element list contains the identity and is closed under
/// composition and inverses.
bool verify_group_axioms(const AutomorphismGroup& g);

/// compose(f, g): apply g first, then f.
ConfigAutomorphism compose(const ConfigAutomorphism& f, const ConfigAutomorphism& g);
ConfigAutomorphism inverse(const ConfigAutomorphism& f);
ConfigAutomorphism identity_automorphism(int n);
/// Order of the element in the group (= lcm of its two permutation orders).
int element_order(const ConfigAutomorphism& f);

/// True iff map is an incidence-preserving bijection pair from s1 to s2.
bool verify_isomorphism(const IncidenceStructure& s1, const IncidenceStructure& s2,
                        const IsomorphismMap& map);

/// Dual structure: mark j' = block j of s, block x' = the 3 blocks of s
/// through mark x (requires the (n3) degree condition).
IncidenceStructure dual_structure(const IncidenceStructure& s);

/// Color-swapping (duality) check, reported separately from
/// AutomorphismGroup: an isomorphism s -> dual(s) when one exists.
std::optional<IsomorphismMap> find_self_duality(const IncidenceStructure& s);

/// Cycle notation for a 1-based permutation, e.g. "(1 2 3)(4 6)".
std::string cycle_string(const std::vector<int>& perm);

}  // namespace cfg3
