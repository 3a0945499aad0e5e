#include "cfg3/cyclic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cfg3/symmetry.hpp"

namespace cfg3 {

std::string tag_name(InvalidityReason reason) {
  switch (reason) {
    case InvalidityReason::B_EQ_N_MINUS_A: return "B_EQ_N_MINUS_A";
    case InvalidityReason::B_EQ_HALF_N_PLUS_A_OVER_2: return "B_EQ_HALF_N_PLUS_A_OVER_2";
    case InvalidityReason::B_EQ_HALF_N_PLUS_A: return "B_EQ_HALF_N_PLUS_A";
    case InvalidityReason::B_EQ_HALF_N: return "B_EQ_HALF_N";
    case InvalidityReason::B_EQ_2A: return "B_EQ_2A";
    case InvalidityReason::A_EQ_HALF_N: return "A_EQ_HALF_N";
  }
  return "UNKNOWN";
}

std::string line_equation(InvalidityReason reason) {
  switch (reason) {
    case InvalidityReason::B_EQ_N_MINUS_A: return "n = a + b";
    case InvalidityReason::B_EQ_HALF_N_PLUS_A_OVER_2: return "n = 2b - a";
    case InvalidityReason::B_EQ_HALF_N_PLUS_A: return "n = 2b - 2a";
    case InvalidityReason::B_EQ_HALF_N: return "n = 2b";
    case InvalidityReason::B_EQ_2A: return "2a = b";
    case InvalidityReason::A_EQ_HALF_N: return "n = 2a";
  }
  return "UNKNOWN";
}

PredicateResult predicate_valid(const GenCyclicParams& params) {
  require_params(params);
  const int n = params.n, a = params.a, b = params.b;
  PredicateResult result;
  // Forbidden-set memberships in the order the set is written; the
  // fractional entries only apply when integral (the congruences behind
  // them have no other integer solutions).
  if (b == n - a) result.reasons.push_back(InvalidityReason::B_EQ_N_MINUS_A);
  if ((n + a) % 2 == 0 && b == (n + a) / 2)
    result.reasons.push_back(InvalidityReason::B_EQ_HALF_N_PLUS_A_OVER_2);
  if (n % 2 == 0 && b == n / 2 + a)
    result.reasons.push_back(InvalidityReason::B_EQ_HALF_N_PLUS_A);
  if (n % 2 == 0 && b == n / 2) result.reasons.push_back(InvalidityReason::B_EQ_HALF_N);
  if (b == 2 * a) result.reasons.push_back(InvalidityReason::B_EQ_2A);
  if (n % 2 == 0 && a == n / 2) result.reasons.push_back(InvalidityReason::A_EQ_HALF_N);
  result.valid = result.reasons.empty();
  return result;
}

LocusReport invalid_locus(int n) {
  if (n < 7)
    throw std::invalid_argument("invalid_locus: requires n >= 7, got n=" + std::to_string(n));
  LocusReport report;
  report.n = n;
  for (int a = 1; a < n - 1; ++a) {
    for (int b = a + 1; b < n; ++b) {
      GenCyclicParams params{n, a, b};
      PredicateResult predicate = predicate_valid(params);
      ValidityReport oracle = check_incidence_structure(build_gen_cyclic(params));
      if (predicate.valid != oracle.valid)
        throw std::logic_error("invalid_locus: predicate/oracle disagreement at (" +
                               std::to_string(n) + "," + std::to_string(a) + "," +
                               std::to_string(b) + ")");
      if (!oracle.valid)
        report.entries.push_back({a, b, predicate.reasons, oracle.max_intersection});
    }
  }
  if (n % 3 == 0) report.triple_intersection = std::make_pair(n / 3, 2 * n / 3);
  if (n % 2 == 0) {
    report.triangle = std::array<std::pair<int, int>, 3>{
        std::make_pair(0, n / 2), std::make_pair(n / 2, n / 2), std::make_pair(n / 2, n)};
    if (n % 3 == 0) report.centroid = std::make_pair(n / 3, 2 * n / 3);
  }
  return report;
}

std::pair<int, int> canonical_base(int n, int c, int d) {
  if (!(0 < c && c < d && d < n))
    throw std::invalid_argument("canonical_base: require 0 < c < d < n");
  std::pair<int, int> best{c, d};
  best = std::min(best, std::make_pair(d - c, n - c));
  best = std::min(best, std::make_pair(n - d, n - d + c));
  return best;
}

std::optional<MultiplierIsomorphism> multiplier_isomorphism(const GenCyclicParams& p1,
                                                            const GenCyclicParams& p2) {
  require_params(p1);
  require_params(p2);
  if (p1.n != p2.n)
    throw std::invalid_argument("multiplier_isomorphism: mismatched n (" +
                                std::to_string(p1.n) + " vs " + std::to_string(p2.n) + ")");
  if (!predicate_valid(p1).valid || !predicate_valid(p2).valid)
    throw std::invalid_argument("multiplier_isomorphism: both parameter sets must be valid");

  const int n = p1.n;
  const std::pair<int, int> target = canonical_base(n, p2.a, p2.b);
  for (int z = 1; z < n; ++z) {
    if (std::gcd(z, n) != 1) continue;
    int za = static_cast<int>(static_cast<long long>(z) * p1.a % n);
    int zb = static_cast<int>(static_cast<long long>(z) * p1.b % n);
    int c = std::min(za, zb), d = std::max(za, zb);
    if (canonical_base(n, c, d) != target) continue;

    MultiplierIsomorphism iso;
    iso.z = z;
    iso.mark_map.assign(n + 1, 0);
    for (int m = 1; m <= n; ++m) iso.mark_map[m] = reduce_mod(z * m, n);

    IncidenceStructure mapped = build_gen_cyclic(p1);
    for (Block& blk : mapped.blocks)
      for (int& mark : blk) mark = iso.mark_map[mark];
    if (!same_block_multiset(mapped, build_gen_cyclic(p2)))
      throw std::logic_error("multiplier_isomorphism: canonical-form match not confirmed "
                             "by block multisets");
    return iso;
  }
  return std::nullopt;
}

std::vector<IsoClass> classify_all(int n) {
  if (n < 7)
    throw std::invalid_argument("classify_all: requires n >= 7, got n=" + std::to_string(n));
  if (n > 30) throw CapacityError("classify_all: desk-scale limit is n <= 30");

  std::vector<IsoClass> classes;
  for (int a = 1; a < n - 1; ++a) {
    for (int b = a + 1; b < n; ++b) {
      GenCyclicParams params{n, a, b};
      if (!predicate_valid(params).valid) continue;

      bool joined = false;
      for (IsoClass& cls : classes) {
        if (auto mult = multiplier_isomorphism(cls.representative_params, params)) {
          cls.members.push_back({params, mult->z});
          joined = true;
          break;
        }
        // Multiplier search failed; fall back on the full Levi search.
        // An exhausted search here is the distinctness certificate.
        if (is_isomorphic(cls.representative, build_gen_cyclic(params))) {
          cls.members.push_back({params, std::nullopt});
          joined = true;
          break;
        }
      }
      if (!joined) {
        IsoClass cls;
        cls.representative_params = params;
        cls.representative = build_gen_cyclic(params);
        cls.members.push_back({params, 1});
        classes.push_back(std::move(cls));
      }
    }
  }
  return classes;
}

ChiralAstralResult chiral_astral_candidate(int n, int a, int b) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("chiral_astral_candidate: requires even n >= 4, got n=" +
                                std::to_string(n));
  if (a < 1 || a >= n || b < 1 || b >= n)
    throw std::invalid_argument("chiral_astral_candidate: require 1 <= a, b < n");

  const int m = n / 2;
  ChiralAstralResult result;
  result.candidate = (a % 2 == 0) && (a < m) && (b % 2 == 1) &&
                     ((0 < b && b < a) || (m < b && b < a + m));
  if (result.candidate) {
    GenCyclicParams normalized{n, std::min(a, b), std::max(a, b)};
    result.oracle_conflict = !check_incidence_structure(build_gen_cyclic(normalized)).valid;
  }
  return result;
}

}  // namespace cfg3
