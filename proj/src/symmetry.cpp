#include "cfg3/symmetry.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>

namespace cfg3 {

LeviGraph build_levi(const IncidenceStructure& s) {
  require_well_formed(s);
  LeviGraph g;
  g.n = s.n;
  g.adjacency.assign(2 * s.n + 1, {});
  for (std::size_t j = 0; j < s.blocks.size(); ++j) {
    int block_vertex = s.n + static_cast<int>(j) + 1;
    for (int mark : s.blocks[j]) {
      g.adjacency[mark].push_back(block_vertex);
      g.adjacency[block_vertex].push_back(mark);
    }
  }
  for (auto& neighbors : g.adjacency) std::sort(neighbors.begin(), neighbors.end());
  return g;
}

namespace {

int perm_order(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size()) - 1;
  std::vector<char> seen(n + 1, 0);
  long long order = 1;
  for (int start = 1; start <= n; ++start) {
    if (seen[start]) continue;
    int length = 0;
    for (int x = start; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      ++length;
    }
    order = std::lcm(order, static_cast<long long>(length));
  }
  return static_cast<int>(order);
}

// Block lookup tables for one structure. Requires pairwise-distinct block
// sets, which oracle-valid structures guarantee.
struct StructureIndex {
  int n = 0;
  std::vector<Block> sorted_blocks;
  std::vector<std::vector<int>> blocks_of_mark;  // 0-based block ids
  std::vector<char> adj;                         // collinearity, (n+1)^2
  std::vector<int> block_id;                     // (n+1)^3, id + 1, 0 = absent

  int key(int x, int y, int z) const { return (x * (n + 1) + y) * (n + 1) + z; }
  int key_sorted(Block b) const {
    if (b[0] > b[1]) std::swap(b[0], b[1]);
    if (b[1] > b[2]) std::swap(b[1], b[2]);
    if (b[0] > b[1]) std::swap(b[0], b[1]);
    return key(b[0], b[1], b[2]);
  }
  bool adjacent(int x, int y) const { return adj[x * (n + 1) + y] != 0; }
};

StructureIndex make_index(const IncidenceStructure& s) {
  StructureIndex idx;
  idx.n = s.n;
  idx.sorted_blocks.resize(s.blocks.size());
  idx.blocks_of_mark.assign(s.n + 1, {});
  idx.adj.assign((s.n + 1) * (s.n + 1), 0);
  idx.block_id.assign((s.n + 1) * (s.n + 1) * (s.n + 1), 0);
  for (std::size_t j = 0; j < s.blocks.size(); ++j) {
    Block b = sorted_block(s.blocks[j]);
    idx.sorted_blocks[j] = b;
    idx.block_id[idx.key(b[0], b[1], b[2])] = static_cast<int>(j) + 1;
    for (int t = 0; t < 3; ++t) {
      idx.blocks_of_mark[b[t]].push_back(static_cast<int>(j));
      for (int u = 0; u < 3; ++u)
        if (t != u) idx.adj[b[t] * (s.n + 1) + b[u]] = 1;
    }
  }
  return idx;
}

// Iterated neighborhood refinement on the two Levi graphs with a shared
// color space, so classes are comparable across graphs. Degree pruning is
// useless on 3-regular graphs; this is the replacement.
struct RefinedColors {
  std::vector<int> colors1, colors2;  // per vertex, 1..2n
  bool compatible = true;
};

RefinedColors refine_colors(const LeviGraph& g1, const LeviGraph& g2) {
  const int m1 = 2 * g1.n, m2 = 2 * g2.n;
  RefinedColors rc;
  rc.colors1.assign(m1 + 1, 0);
  rc.colors2.assign(m2 + 1, 0);
  for (int v = 1; v <= m1; ++v) rc.colors1[v] = v <= g1.n ? 0 : 1;
  for (int v = 1; v <= m2; ++v) rc.colors2[v] = v <= g2.n ? 0 : 1;

  using Signature = std::pair<int, std::vector<int>>;
  int color_count = 2;
  for (int round = 0; round < m1 + 2; ++round) {
    auto signature = [](const LeviGraph& g, const std::vector<int>& colors, int v) {
      std::vector<int> neighborhood;
      neighborhood.reserve(g.adjacency[v].size());
      for (int u : g.adjacency[v]) neighborhood.push_back(colors[u]);
      std::sort(neighborhood.begin(), neighborhood.end());
      return Signature{colors[v], std::move(neighborhood)};
    };
    std::vector<Signature> sig1(m1 + 1), sig2(m2 + 1);
    std::vector<Signature> pool;
    pool.reserve(m1 + m2);
    for (int v = 1; v <= m1; ++v) pool.push_back(sig1[v] = signature(g1, rc.colors1, v));
    for (int v = 1; v <= m2; ++v) pool.push_back(sig2[v] = signature(g2, rc.colors2, v));
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    auto color_of = [&pool](const Signature& sig) {
      return static_cast<int>(std::lower_bound(pool.begin(), pool.end(), sig) - pool.begin());
    };
    for (int v = 1; v <= m1; ++v) rc.colors1[v] = color_of(sig1[v]);
    for (int v = 1; v <= m2; ++v) rc.colors2[v] = color_of(sig2[v]);
    int new_count = static_cast<int>(pool.size());
    if (new_count == color_count) break;
    color_count = new_count;
  }

  std::vector<int> h1(rc.colors1.begin() + 1, rc.colors1.end());
  std::vector<int> h2(rc.colors2.begin() + 1, rc.colors2.end());
  std::sort(h1.begin(), h1.end());
  std::sort(h2.begin(), h2.end());
  rc.compatible = (h1 == h2);
  return rc;
}

// Backtracking over point images; block images are checked as soon as a
// block's last mark is assigned.
struct Searcher {
  const StructureIndex& src;
  const StructureIndex& tgt;
  std::vector<int> src_color, tgt_color;  // mark colors
  std::vector<int> order;
  std::vector<int> img;
  std::vector<char> used;
  bool find_all = false;
  std::vector<IsomorphismMap> results;

  Searcher(const StructureIndex& src_idx, const StructureIndex& tgt_idx,
           std::vector<int> src_mark_color, std::vector<int> tgt_mark_color)
      : src(src_idx),
        tgt(tgt_idx),
        src_color(std::move(src_mark_color)),
        tgt_color(std::move(tgt_mark_color)),
        img(src_idx.n + 1, 0),
        used(tgt_idx.n + 1, 0) {
    build_order();
  }

  void build_order() {
    const int n = src.n;
    std::vector<int> class_size(n + 1, 0);
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y)
        if (src_color[y] == src_color[x]) ++class_size[x];

    std::vector<char> chosen(n + 1, 0);
    for (int step = 0; step < n; ++step) {
      int best = 0, best_links = -1, best_class = INT_MAX;
      for (int x = 1; x <= n; ++x) {
        if (chosen[x]) continue;
        int links = 0;
        for (int y : order)
          if (src.adjacent(x, y)) ++links;
        if (links > best_links || (links == best_links && class_size[x] < best_class)) {
          best = x;
          best_links = links;
          best_class = class_size[x];
        }
      }
      chosen[best] = 1;
      order.push_back(best);
    }
  }

  bool run() {
    return dfs(0);
  }

  bool dfs(std::size_t depth) {
    if (depth == order.size()) {
      record();
      return !find_all;
    }
    const int x = order[depth];
    for (int v = 1; v <= tgt.n; ++v) {
      if (used[v] || tgt_color[v] != src_color[x]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        int y = order[i];
        ok = src.adjacent(x, y) == tgt.adjacent(v, img[y]);
      }
      if (!ok) continue;
      img[x] = v;
      for (int bj : src.blocks_of_mark[x]) {
        const Block& b = src.sorted_blocks[bj];
        Block image;
        bool complete = true;
        for (int t = 0; t < 3; ++t) {
          image[t] = img[b[t]];
          if (image[t] == 0) {
            complete = false;
            break;
          }
        }
        if (complete && tgt.block_id[tgt.key_sorted(image)] == 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[v] = 1;
        bool stop = dfs(depth + 1);
        used[v] = 0;
        if (stop) {
          img[x] = 0;
          return true;
        }
      }
      img[x] = 0;
    }
    return false;
  }

  void record() {
    IsomorphismMap map;
    map.point_map = img;
    map.block_map.assign(src.sorted_blocks.size() + 1, 0);
    for (std::size_t j = 0; j < src.sorted_blocks.size(); ++j) {
      const Block& b = src.sorted_blocks[j];
      map.block_map[j + 1] = tgt.block_id[tgt.key_sorted({img[b[0]], img[b[1]], img[b[2]]})];
    }
    results.push_back(std::move(map));
  }
};

void require_oracle_valid(const IncidenceStructure& s, const char* op) {
  if (!check_incidence_structure(s).valid)
    throw std::invalid_argument(std::string(op) + ": input is not a valid configuration");
}

std::set<std::vector<int>> closure_of(int n, const std::vector<ConfigAutomorphism>& gens) {
  std::vector<int> id(n + 1);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> queue{id};
  while (!queue.empty()) {
    std::vector<int> u = std::move(queue.back());
    queue.pop_back();
    for (const ConfigAutomorphism& g : gens) {
      std::vector<int> w(n + 1, 0);
      for (int x = 1; x <= n; ++x) w[x] = g.point_perm[u[x]];
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return seen;
}

AutomorphismGroup finalize_group(int n, std::vector<ConfigAutomorphism> elements) {
  std::sort(elements.begin(), elements.end(),
            [](const ConfigAutomorphism& a, const ConfigAutomorphism& b) {
              return a.point_perm < b.point_perm;
            });

  AutomorphismGroup g;
  g.n = n;
  g.elements = std::move(elements);

  auto orbits_of = [n, &g](bool points) {
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const ConfigAutomorphism& e : g.elements) {
      const std::vector<int>& perm = points ? e.point_perm : e.block_perm;
      for (int x = 1; x <= n; ++x) {
        int a = find(x), b = find(perm[x]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::vector<std::vector<int>> orbits(n + 1);
    for (int x = 1; x <= n; ++x) orbits[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& orbit : orbits)
      if (!orbit.empty()) out.push_back(std::move(orbit));
    return out;
  };
  g.point_orbits = orbits_of(true);
  g.block_orbits = orbits_of(false);

  // Greedy generating set over the sorted element list, then a prune pass.
  for (const ConfigAutomorphism& e : g.elements) {
    if (perm_order(e.point_perm) == 1 && perm_order(e.block_perm) == 1) continue;
    if (closure_of(n, g.generators).count(e.point_perm)) continue;
    g.generators.push_back(e);
    if (closure_of(n, g.generators).size() == g.elements.size()) break;
  }
  for (std::size_t i = g.generators.size(); i-- > 0;) {
    std::vector<ConfigAutomorphism> trial = g.generators;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (closure_of(n, trial).size() == g.elements.size()) g.generators = std::move(trial);
  }
  return g;
}

ConfigAutomorphism map_to_automorphism(IsomorphismMap&& map) {
  return ConfigAutomorphism{std::move(map.point_map), std::move(map.block_map)};
}

}  // namespace

AutomorphismGroup automorphisms(const IncidenceStructure& s) {
  require_oracle_valid(s, "automorphisms");
  if (s.n > 30)
    throw CapacityError("automorphisms: desk-scale limit is n <= 30, got n=" +
                        std::to_string(s.n));

  LeviGraph levi = build_levi(s);
  RefinedColors colors = refine_colors(levi, levi);
  std::vector<int> mark_colors(colors.colors1.begin(), colors.colors1.begin() + s.n + 1);

  StructureIndex idx = make_index(s);
  Searcher searcher(idx, idx, mark_colors, mark_colors);
  searcher.find_all = true;
  searcher.run();

  std::vector<ConfigAutomorphism> elements;
  elements.reserve(searcher.results.size());
  for (IsomorphismMap& map : searcher.results) elements.push_back(map_to_automorphism(std::move(map)));
  return finalize_group(s.n, std::move(elements));
}

AutomorphismGroup brute_force_automorphisms(const IncidenceStructure& s) {
  if (s.n > 10)
    throw CapacityError("brute_force_automorphisms: limit is n <= 10, got n=" +
                        std::to_string(s.n));
  require_oracle_valid(s, "brute_force_automorphisms");

  StructureIndex idx = make_index(s);
  std::vector<int> perm(s.n + 1);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<ConfigAutomorphism> elements;
  do {
    bool ok = true;
    for (const Block& b : idx.sorted_blocks) {
      if (idx.block_id[idx.key_sorted({perm[b[0]], perm[b[1]], perm[b[2]]})] == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ConfigAutomorphism e;
    e.point_perm = perm;
    e.block_perm.assign(s.n + 1, 0);
    for (std::size_t j = 0; j < idx.sorted_blocks.size(); ++j) {
      const Block& b = idx.sorted_blocks[j];
      e.block_perm[j + 1] = idx.block_id[idx.key_sorted({perm[b[0]], perm[b[1]], perm[b[2]]})];
    }
    elements.push_back(std::move(e));
  } while (std::next_permutation(perm.begin() + 1, perm.end()));

  return finalize_group(s.n, std::move(elements));
}

std::optional<IsomorphismMap> is_isomorphic(const IncidenceStructure& s1,
                                            const IncidenceStructure& s2) {
  require_well_formed(s1);
  require_well_formed(s2);
  if (s1.n != s2.n) return std::nullopt;
  require_oracle_valid(s1, "is_isomorphic");
  require_oracle_valid(s2, "is_isomorphic");
  if (s1.n > 30)
    throw CapacityError("is_isomorphic: desk-scale limit is n <= 30, got n=" +
                        std::to_string(s1.n));

  RefinedColors colors = refine_colors(build_levi(s1), build_levi(s2));
  if (!colors.compatible) return std::nullopt;

  StructureIndex src = make_index(s1);
  StructureIndex tgt = make_index(s2);
  Searcher searcher(src, tgt,
                    std::vector<int>(colors.colors1.begin(), colors.colors1.begin() + s1.n + 1),
                    std::vector<int>(colors.colors2.begin(), colors.colors2.begin() + s2.n + 1));
  searcher.find_all = false;
  searcher.run();
  if (searcher.results.empty()) return std::nullopt;
  return std::move(searcher.results.front());
}

GroupReport group_report(const AutomorphismGroup& g) {
  GroupReport report;
  report.order = g.elements.size();
  report.point_transitive = g.point_orbits.size() == 1;

  std::vector<std::pair<int, int>> histogram;
  for (const ConfigAutomorphism& e : g.elements) {
    int order = element_order(e);
    report.max_element_order = std::max(report.max_element_order, order);
    auto it = std::find_if(histogram.begin(), histogram.end(),
                           [order](const auto& entry) { return entry.first == order; });
    if (it == histogram.end())
      histogram.emplace_back(order, 1);
    else
      ++it->second;
  }
  std::sort(histogram.begin(), histogram.end());
  report.element_order_histogram = std::move(histogram);

  report.abelian = true;
  for (std::size_t i = 0; i < g.elements.size() && report.abelian; ++i)
    for (std::size_t j = i + 1; j < g.elements.size() && report.abelian; ++j)
      report.abelian = compose(g.elements[i], g.elements[j]).point_perm ==
                       compose(g.elements[j], g.elements[i]).point_perm;
  return report;
}

bool verify_group_axioms(const AutomorphismGroup& g) {
  if (g.elements.empty()) return false;
  std::set<std::vector<int>> members;
  for (const ConfigAutomorphism& e : g.elements) members.insert(e.point_perm);

  if (!members.count(identity_automorphism(g.n).point_perm)) return false;
  for (const ConfigAutomorphism& e : g.elements)
    if (!members.count(inverse(e).point_perm)) return false;
  for (const ConfigAutomorphism& a : g.elements)
    for (const ConfigAutomorphism& b : g.elements)
      if (!members.count(compose(a, b).point_perm)) return false;
  return true;
}

ConfigAutomorphism compose(const ConfigAutomorphism& f, const ConfigAutomorphism& g) {
  const int n = static_cast<int>(f.point_perm.size()) - 1;
  ConfigAutomorphism h;
  h.point_perm.assign(n + 1, 0);
  h.block_perm.assign(n + 1, 0);
  for (int x = 1; x <= n; ++x) {
    h.point_perm[x] = f.point_perm[g.point_perm[x]];
    h.block_perm[x] = f.block_perm[g.block_perm[x]];
  }
  return h;
}

ConfigAutomorphism inverse(const ConfigAutomorphism& f) {
  const int n = static_cast<int>(f.point_perm.size()) - 1;
  ConfigAutomorphism h;
  h.point_perm.assign(n + 1, 0);
  h.block_perm.assign(n + 1, 0);
  for (int x = 1; x <= n; ++x) {
    h.point_perm[f.point_perm[x]] = x;
    h.block_perm[f.block_perm[x]] = x;
  }
  return h;
}

ConfigAutomorphism identity_automorphism(int n) {
  ConfigAutomorphism e;
  e.point_perm.assign(n + 1, 0);
  e.block_perm.assign(n + 1, 0);
  std::iota(e.point_perm.begin(), e.point_perm.end(), 0);
  std::iota(e.block_perm.begin(), e.block_perm.end(), 0);
  return e;
}

int element_order(const ConfigAutomorphism& f) {
  return static_cast<int>(
      std::lcm(static_cast<long long>(perm_order(f.point_perm)),
               static_cast<long long>(perm_order(f.block_perm))));
}

bool verify_isomorphism(const IncidenceStructure& s1, const IncidenceStructure& s2,
                        const IsomorphismMap& map) {
  if (s1.n != s2.n) return false;
  const int n = s1.n;
  if (static_cast<int>(s1.blocks.size()) != n || static_cast<int>(s2.blocks.size()) != n ||
      static_cast<int>(map.point_map.size()) != n + 1 ||
      static_cast<int>(map.block_map.size()) != n + 1)
    return false;
  std::vector<char> point_hit(n + 1, 0), block_hit(n + 1, 0);
  for (int x = 1; x <= n; ++x) {
    int p = map.point_map[x], b = map.block_map[x];
    if (p < 1 || p > n || b < 1 || b > n || point_hit[p] || block_hit[b]) return false;
    point_hit[p] = block_hit[b] = 1;
  }
  for (int j = 1; j <= n; ++j) {
    const Block& b = s1.blocks[j - 1];
    Block image = sorted_block({map.point_map[b[0]], map.point_map[b[1]], map.point_map[b[2]]});
    if (image != sorted_block(s2.blocks[map.block_map[j] - 1])) return false;
  }
  return true;
}

IncidenceStructure dual_structure(const IncidenceStructure& s) {
  require_well_formed(s);
  for (auto [mark, degree] : mark_degree_profile(s))
    if (degree != 3)
      throw std::invalid_argument("dual_structure: mark " + std::to_string(mark) +
                                  " has degree " + std::to_string(degree) + ", expected 3");
  IncidenceStructure dual;
  dual.n = s.n;
  dual.blocks.assign(s.n, Block{0, 0, 0});
  std::vector<int> filled(s.n + 1, 0);
  for (std::size_t j = 0; j < s.blocks.size(); ++j)
    for (int mark : s.blocks[j]) dual.blocks[mark - 1][filled[mark]++] = static_cast<int>(j) + 1;
  return dual;
}

std::optional<IsomorphismMap> find_self_duality(const IncidenceStructure& s) {
  return is_isomorphic(s, dual_structure(s));
}

std::string cycle_string(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size()) - 1;
  std::vector<char> seen(n + 1, 0);
  std::string out;
  for (int start = 1; start <= n; ++start) {
    if (seen[start]) continue;
    if (perm[start] == start) {
      seen[start] = 1;
      continue;
    }
    out += '(';
    bool first = true;
    for (int x = start; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      if (!first) out += ' ';
      out += std::to_string(x);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

}  // namespace cfg3
