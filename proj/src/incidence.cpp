#include "cfg3/incidence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cfg3 {

int reduce_mod(int value, int n) {
  int r = (value - 1) % n;
  if (r < 0) r += n;
  return r + 1;
}

void require_params(const GenCyclicParams& params) {
  if (params.n < 3)
    throw std::invalid_argument("gen-cyclic parameters: n must be at least 3, got n=" +
                                std::to_string(params.n));
  if (params.a < 1)
    throw std::invalid_argument("gen-cyclic parameters: require a >= 1, got a=" +
                                std::to_string(params.a));
  if (params.a >= params.b)
    throw std::invalid_argument("gen-cyclic parameters: require a < b, got a=" +
                                std::to_string(params.a) + ", b=" + std::to_string(params.b));
  if (params.b >= params.n)
    throw std::invalid_argument("gen-cyclic parameters: require b < n, got b=" +
                                std::to_string(params.b) + ", n=" + std::to_string(params.n));
}

void require_well_formed(const IncidenceStructure& s) {
  if (s.n < 1) throw std::invalid_argument("incidence structure: n must be positive");
  if (static_cast<int>(s.blocks.size()) != s.n)
    throw std::invalid_argument("incidence structure: expected " + std::to_string(s.n) +
                                " blocks, got " + std::to_string(s.blocks.size()));
  for (std::size_t j = 0; j < s.blocks.size(); ++j) {
    const Block& blk = s.blocks[j];
    for (int mark : blk) {
      if (mark < 1 || mark > s.n)
        throw std::invalid_argument("incidence structure: block " + std::to_string(j + 1) +
                                    " contains mark " + std::to_string(mark) +
                                    " outside 1.." + std::to_string(s.n));
    }
    if (blk[0] == blk[1] || blk[0] == blk[2] || blk[1] == blk[2])
      throw std::invalid_argument("incidence structure: block " + std::to_string(j + 1) +
                                  " has repeated marks");
  }
}

IncidenceStructure build_gen_cyclic(const GenCyclicParams& params) {
  require_params(params);
  IncidenceStructure s;
  s.n = params.n;
  s.blocks.reserve(params.n);
  for (int j = 1; j <= params.n; ++j)
    s.blocks.push_back({j, reduce_mod(j + params.a, params.n), reduce_mod(j + params.b, params.n)});
  return s;
}

namespace {

// Intersection of two ascending 3-sets, ascending.
std::vector<int> intersect3(const Block& a, const Block& b) {
  std::vector<int> out;
  std::size_t i = 0, j = 0;
  while (i < 3 && j < 3) {
    if (a[i] < b[j]) {
      ++i;
    } else if (a[i] > b[j]) {
      ++j;
    } else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

ValidityReport check_incidence_structure(const IncidenceStructure& s) {
  require_well_formed(s);
  std::vector<Block> sorted(s.blocks.size());
  for (std::size_t j = 0; j < s.blocks.size(); ++j) sorted[j] = sorted_block(s.blocks[j]);

  ValidityReport report;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      std::vector<int> shared = intersect3(sorted[i], sorted[j]);
      int size = static_cast<int>(shared.size());
      report.max_intersection = std::max(report.max_intersection, size);
      if (size >= 2)
        report.witnesses.push_back(
            {static_cast<int>(i + 1), static_cast<int>(j + 1), std::move(shared)});
    }
  }
  report.valid = report.witnesses.empty();
  return report;
}

std::vector<std::pair<int, int>> mark_degree_profile(const IncidenceStructure& s) {
  require_well_formed(s);
  std::vector<int> degree(s.n + 1, 0);
  for (const Block& blk : s.blocks)
    for (int mark : blk) ++degree[mark];
  std::vector<std::pair<int, int>> profile;
  profile.reserve(s.n);
  for (int mark = 1; mark <= s.n; ++mark) profile.emplace_back(mark, degree[mark]);
  return profile;
}

Block sorted_block(const Block& b) {
  Block out = b;
  std::sort(out.begin(), out.end());
  return out;
}

bool same_block_multiset(const IncidenceStructure& lhs, const IncidenceStructure& rhs) {
  if (lhs.n != rhs.n || lhs.blocks.size() != rhs.blocks.size()) return false;
  std::vector<Block> a(lhs.blocks.size()), b(rhs.blocks.size());
  for (std::size_t j = 0; j < lhs.blocks.size(); ++j) a[j] = sorted_block(lhs.blocks[j]);
  for (std::size_t j = 0; j < rhs.blocks.size(); ++j) b[j] = sorted_block(rhs.blocks[j]);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace cfg3
