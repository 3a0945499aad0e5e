#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfg3/incidence.hpp"

namespace cfg3 {

/// Closed-form reasons a generalized cyclic table C(n,a,b), a < b, fails
/// to be a combinatorial configuration. Each tag names one membership of
/// the forbidden set {n-a, (n+a)/2, n/2+a, n/2, 2a} for b, or a = n/2;
/// fractional memberships apply only when the right-hand side is integral.
enum class InvalidityReason {
  B_EQ_N_MINUS_A,            // b = n - a          (locus line n = a + b)
  B_EQ_HALF_N_PLUS_A_OVER_2, // b = (n + a) / 2    (locus line n = 2b - a)
  B_EQ_HALF_N_PLUS_A,        // b = n/2 + a        (locus line n = 2b - 2a)
  B_EQ_HALF_N,               // b = n / 2          (locus line n = 2b)
  B_EQ_2A,                   // b = 2a             (locus line 2a = b)
  A_EQ_HALF_N,               // a = n / 2          (locus line n = 2a)
};

/// Stable serialization tag, e.g. "B_EQ_2A".
std::string tag_name(InvalidityReason reason);
/// The (a,b)-plane line the reason lies on, e.g. "2a = b".
std::string line_equation(InvalidityReason reason);

struct PredicateResult {
  bool valid = true;
  std::vector<InvalidityReason> reasons;
};

struct LocusEntry {
  int a = 0;
  int b = 0;
  std::vector<InvalidityReason> reasons;  // nonempty, in enum order
  int oracle_max_intersection = 0;        // 2 or 3
};

/// All invalid (a,b) pairs for a fixed n, with the line reasons and the
/// oracle evidence. The triangle bounded by n=2b-2a, n=2a, n=2b is exposed
/// for even n; its centroid (n/3, 2n/3) is included exactly when it is an
/// integer point (6 | n), and the triple-intersection pair exactly when
/// 3 | n.
struct LocusReport {
  int n = 0;
  std::vector<LocusEntry> entries;  // ascending (a, b)
  std::optional<std::pair<int, int>> triple_intersection;
  std::optional<std::array<std::pair<int, int>, 3>> triangle;
  std::optional<std::pair<int, int>> centroid;
};

/// Isomorphism of cyclic tables given by m -> z*m (mod n), gcd(z, n) = 1.
struct MultiplierIsomorphism {
  int z = 1;
  std::vector<int> mark_map;  // size n+1, [0] unused; mark_map[m] in 1..n
};

struct ClassMember {
  GenCyclicParams params;
  /// Multiplier certifying isomorphism to the class representative, or
  /// empty when the membership was certified by the Levi search instead.
  std::optional<int> multiplier;
};

struct IsoClass {
  GenCyclicParams representative_params;
  IncidenceStructure representative;
  std::vector<ClassMember> members;  // ascending (a, b); first = representative
};

/// Closed-form validity test. valid iff no reason applies; every satisfied
/// condition is reported (a pair may lie on several lines).
PredicateResult predicate_valid(const GenCyclicParams& params);

/// Enumerates every oracle-invalid (a,b), 1 <= a < b < n. Requires n >= 7.
/// Throws std::logic_error if predicate and oracle ever disagree.
LocusReport invalid_locus(int n);

/// Smallest z >= 1 with gcd(z,n) = 1 whose mark map m -> z*m carries p1's
/// block multiset onto p2's; compared via the canonical form of the base
/// blocks {0,a,b}. Both parameter sets must be predicate-valid and share n.
std::optional<MultiplierIsomorphism> multiplier_isomorphism(const GenCyclicParams& p1,
                                                            const GenCyclicParams& p2);

/// Partitions all predicate-valid (a,b) for this n into isomorphism
/// classes. Membership is certified by a multiplier when one exists and by
/// the Levi backtracking search otherwise; distinctness of classes is
/// certified by exhausted Levi searches. Requires 7 <= n <= 30.
std::vector<IsoClass> classify_all(int n);

struct ChiralAstralResult {
  bool candidate = false;
  /// Set when the literal conditions hold but C(n, min(a,b), max(a,b))
  /// fails the combinatorial oracle (the theorem's span convention
  /// disagrees with the a < b table reading for such pairs).
  bool oracle_conflict = false;
};

/// Literal evaluation of the chiral-astral candidacy conditions for
/// n = 2m: a even, a < m, b odd, 0 < b < a or m < b < a+m. No a < b
/// constraint on the input; requires even n and a, b in 1..n-1.
ChiralAstralResult chiral_astral_candidate(int n, int a, int b);

/// Canonical (a,b) of the base block {0,c,d} mod n: lexicographic minimum
/// over its three translation-normalized representations.
std::pair<int, int> canonical_base(int n, int c, int d);

}  // namespace cfg3
