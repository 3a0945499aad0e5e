#include "cfg3/realize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace cfg3 {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double signed_area2(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

namespace {

constexpr double kPi = 3.14159265358979323846;

// Intersection of the infinite lines through (p, q) and (r, s); NaN point
// when the lines are (nearly) parallel.
Vec2 line_intersect(Vec2 p, Vec2 q, Vec2 r, Vec2 s) {
  const Vec2 d1 = q - p, d2 = s - r;
  const double denom = cross(d1, d2);
  if (std::abs(denom) <= 1e-14 * norm(d1) * norm(d2))
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  const double t = cross(r - p, d2) / denom;
  return p + t * d1;
}

double point_line_distance(Vec2 p, Vec2 anchor, Vec2 direction) {
  const double len = norm(direction);
  if (len == 0.0) return norm(p - anchor);
  return std::abs(cross(direction, p - anchor)) / len;
}

double block_residual(Vec2 a, Vec2 b, Vec2 c) {
  const double perimeter = norm(a - b) + norm(b - c) + norm(c - a);
  if (perimeter == 0.0) return 0.0;
  return std::abs(signed_area2(a, b, c)) / (perimeter * perimeter);
}

double diameter_of(const std::vector<Vec2>& points, int n) {
  double best = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) best = std::max(best, norm(points[i] - points[j]));
  return best;
}

Vec2 rotate_about(Vec2 p, Vec2 center, double cos_t, double sin_t) {
  const Vec2 d = p - center;
  return center + Vec2{cos_t * d.x - sin_t * d.y, sin_t * d.x + cos_t * d.y};
}

Vec2 reflect_about(Vec2 p, Vec2 center, double axis_angle) {
  const double c = std::cos(2.0 * axis_angle), s = std::sin(2.0 * axis_angle);
  const Vec2 d = p - center;
  return center + Vec2{c * d.x + s * d.y, s * d.x - c * d.y};
}

}  // namespace

RealizationCheck verify_realization(const IncidenceStructure& s, const Realization& r) {
  require_well_formed(s);
  if (r.points.size() < static_cast<std::size_t>(s.n) + 1)
    throw std::invalid_argument("verify_realization: realization does not cover all marks");

  RealizationCheck check;
  const int n = s.n;
  const double diameter = diameter_of(r.points, n);

  check.block_residuals.reserve(s.blocks.size());
  for (const Block& b : s.blocks) {
    double residual = block_residual(r.points[b[0]], r.points[b[1]], r.points[b[2]]);
    check.block_residuals.push_back(residual);
    check.max_residual = std::max(check.max_residual, residual);
  }

  const double point_eps = 1e-6 * diameter;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (norm(r.points[i] - r.points[j]) <= point_eps) check.coincident_points.emplace_back(i, j);
  check.points_distinct = check.coincident_points.empty();

  // Supporting line of a block: through the farthest pair of its points.
  std::vector<std::pair<Vec2, Vec2>> lines;
  lines.reserve(s.blocks.size());
  for (const Block& b : s.blocks) {
    Vec2 anchor = r.points[b[0]], far = r.points[b[1]];
    double best = norm(anchor - far);
    for (int u = 0; u < 3; ++u)
      for (int v = u + 1; v < 3; ++v) {
        double d = norm(r.points[b[u]] - r.points[b[v]]);
        if (d > best) {
          best = d;
          anchor = r.points[b[u]];
          far = r.points[b[v]];
        }
      }
    lines.emplace_back(anchor, far - anchor);
  }
  const double line_eps = std::max(r.tolerance, 1e-12) * diameter;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < s.blocks.size(); ++j) {
      bool on_i = true, on_j = true;
      for (int t = 0; t < 3 && (on_i || on_j); ++t) {
        if (point_line_distance(r.points[s.blocks[j][t]], lines[i].first, lines[i].second) >
            line_eps)
          on_i = false;
        if (point_line_distance(r.points[s.blocks[i][t]], lines[j].first, lines[j].second) >
            line_eps)
          on_j = false;
      }
      if (on_i && on_j)
        check.coincident_lines.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    }
  }
  check.lines_distinct = check.coincident_lines.empty();
  return check;
}

CompletionResult complete_last_three(int n, const std::vector<Vec2>& points) {
  if (n < 9) throw std::domain_error("complete_last_three: requires n >= 9");
  if (points.size() < static_cast<std::size_t>(n) - 1)
    throw std::invalid_argument("complete_last_three: marks 2..n-2 must be placed");

  double scale = 0.0;
  for (int i = 2; i <= n - 2; ++i)
    for (int j = i + 1; j <= n - 2; ++j) scale = std::max(scale, norm(points[i] - points[j]));
  if (scale == 0.0)
    throw std::invalid_argument("complete_last_three: placed points are coincident");

  const Vec2 p2 = points[2], p3 = points[3], p4 = points[4];
  const Vec2 a = points[n - 4], b = points[n - 3], c = points[n - 2];
  const double tiny = 1e-12 * scale;
  if (norm(p2 - p4) <= tiny)
    throw std::invalid_argument("complete_last_three: line(2,4) undefined");
  if (norm(a - b) <= tiny)
    throw std::invalid_argument("complete_last_three: line(n-4,n-3) undefined");
  if (norm(b - c) <= tiny)
    throw std::invalid_argument("complete_last_three: line(n-3,n-2) undefined");

  const Vec2 direction = b - a;
  // Point n-1 at parameter t; point n on line(n-3,n-2) via block {n-1,n,2};
  // point 1 on line(2,4) via block {n-2,n-1,1}; block {n,1,3} gives the
  // residual to drive to zero.
  auto residual_at = [&](double t) -> double {
    const Vec2 pm1 = a + t * direction;
    const Vec2 pn = line_intersect(b, c, p2, pm1);
    const Vec2 p1 = line_intersect(p2, p4, c, pm1);
    return signed_area2(pn, p1, p3);
  };

  std::vector<double> ts;
  const double t0 = 1e-3, growth = 1.25, t_max = 2e4;
  for (double t = t_max; t >= t0; t /= growth) ts.push_back(-t);
  ts.push_back(0.0);
  for (double t = t0; t <= t_max; t *= growth) ts.push_back(t);

  std::vector<double> fs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) fs[i] = residual_at(ts[i]);

  const double accept = 1e-9 * scale * scale;
  int brackets_tried = 0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (!std::isfinite(fs[i]) || !std::isfinite(fs[i + 1])) continue;
    if (fs[i] == 0.0 || fs[i] * fs[i + 1] < 0.0) {
      ++brackets_tried;
      double lo = ts[i], hi = ts[i + 1], flo = fs[i];
      if (flo == 0.0) hi = lo;
      for (int iter = 0; iter < 300 && hi - lo > 1e-16 * (1.0 + std::abs(lo) + std::abs(hi));
           ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = residual_at(mid);
        if (!std::isfinite(fm)) break;
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      double root = 0.5 * (lo + hi);
      double f_root = residual_at(root);
      // A sign flip across a pole narrows to a huge |f|; skip those.
      if (std::isfinite(f_root) && std::abs(f_root) <= accept) {
        CompletionResult result;
        result.root_t = root;
        result.p_last_minus_1 = a + root * direction;
        result.p_last = line_intersect(b, c, p2, result.p_last_minus_1);
        result.p_first = line_intersect(p2, p4, c, result.p_last_minus_1);
        return result;
      }
    }
  }
  std::ostringstream msg;
  msg << "complete_last_three: no root of the closing residual for n=" << n << " (scanned t in ["
      << -t_max << ", " << t_max << "], " << brackets_tried << " sign changes rejected)";
  throw ConstructionError(msg.str());
}

Realization realize_gruenbaum(int n, const GruenbaumOptions& options) {
  if (n < 9)
    throw std::domain_error("realize_gruenbaum: geometric (n_3) configurations require n >= 9");
  if (!(options.spacing > 0.0) || !(options.slope_epsilon > 0.0) || !(options.tolerance > 0.0))
    throw std::invalid_argument("realize_gruenbaum: spacing, slope and tolerance must be positive");

  const double h = options.spacing, eps = options.slope_epsilon;
  std::vector<Vec2> points(n + 1);
  points[2] = {0.0, 0.0};
  points[4] = {-h, 0.0};
  points[3] = {-h / 2.0, -eps * h / 2.0};  // on the slope-eps line through 2
  points[5] = {h, eps * h};
  for (int m = 6; m <= n - 2; ++m) {
    const Vec2 u = points[m - 3], v = points[m - 2];
    const double dx = v.x - u.x;
    if (std::abs(dx) <= 1e-12 * h)
      throw ConstructionError("realize_gruenbaum: line(" + std::to_string(m - 3) + "," +
                              std::to_string(m - 2) + ") is vertical; adjust options");
    const double x = points[m - 1].x + h;
    points[m] = {x, u.y + (x - u.x) * (v.y - u.y) / dx};
  }

  const CompletionResult tail = complete_last_three(n, points);
  points[n - 1] = tail.p_last_minus_1;
  points[n] = tail.p_last;
  points[1] = tail.p_first;

  Realization realization;
  realization.structure = build_gen_cyclic({n, 1, 3});
  realization.points = std::move(points);
  realization.tolerance = options.tolerance;

  const RealizationCheck check = verify_realization(realization.structure, realization);
  realization.max_residual = check.max_residual;
  if (check.max_residual > options.tolerance)
    throw ConstructionError("realize_gruenbaum: residual " + std::to_string(check.max_residual) +
                            " exceeds tolerance for n=" + std::to_string(n));
  if (!check.points_distinct || !check.lines_distinct)
    throw ConstructionError("realize_gruenbaum: degenerate drawing for n=" + std::to_string(n) +
                            " (coincident points or lines); adjust options");
  return realization;
}

namespace {

// Dense Levenberg-Marquardt state for the polycyclic solver.
struct PolycyclicProblem {
  const IncidenceStructure* s = nullptr;
  int fold = 0;
  int orbit_count = 0;
  std::vector<int> orbit_of;  // per mark
  std::vector<int> step_of;   // per mark, rotation exponent
  std::vector<double> cos_step, sin_step;

  Vec2 position(int mark, const std::vector<Vec2>& seeds) const {
    const Vec2 seed = seeds[orbit_of[mark]];
    const int k = step_of[mark];
    return {cos_step[k] * seed.x - sin_step[k] * seed.y,
            sin_step[k] * seed.x + cos_step[k] * seed.y};
  }
};

PolycyclicProblem make_problem(const IncidenceStructure& s, int fold,
                               const ConfigAutomorphism& sigma) {
  PolycyclicProblem problem;
  problem.s = &s;
  problem.fold = fold;
  problem.orbit_of.assign(s.n + 1, -1);
  problem.step_of.assign(s.n + 1, 0);
  for (int mark = 1; mark <= s.n; ++mark) {
    if (problem.orbit_of[mark] >= 0) continue;
    int orbit = problem.orbit_count++;
    int x = mark;
    for (int k = 0; k < fold; ++k) {
      problem.orbit_of[x] = orbit;
      problem.step_of[x] = k;
      x = sigma.point_perm[x];
    }
  }
  problem.cos_step.resize(fold);
  problem.sin_step.resize(fold);
  for (int k = 0; k < fold; ++k) {
    problem.cos_step[k] = std::cos(2.0 * kPi * k / fold);
    problem.sin_step[k] = std::sin(2.0 * kPi * k / fold);
  }
  return problem;
}

// Solve (A + lambda I) delta = -g for small dense symmetric A.
bool solve_damped(std::vector<double> a, std::vector<double> rhs, double lambda, int d,
                  std::vector<double>& delta) {
  for (int i = 0; i < d; ++i) a[i * d + i] += lambda;
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    for (int row = col + 1; row < d; ++row)
      if (std::abs(a[row * d + col]) > std::abs(a[pivot * d + col])) pivot = row;
    if (std::abs(a[pivot * d + col]) < 1e-300) return false;
    if (pivot != col) {
      for (int k = col; k < d; ++k) std::swap(a[col * d + k], a[pivot * d + k]);
      std::swap(rhs[col], rhs[pivot]);
    }
    for (int row = col + 1; row < d; ++row) {
      const double factor = a[row * d + col] / a[col * d + col];
      for (int k = col; k < d; ++k) a[row * d + k] -= factor * a[col * d + k];
      rhs[row] -= factor * rhs[col];
    }
  }
  delta.assign(d, 0.0);
  for (int row = d - 1; row >= 0; --row) {
    double acc = rhs[row];
    for (int k = row + 1; k < d; ++k) acc -= a[row * d + k] * delta[k];
    delta[row] = acc / a[row * d + row];
  }
  return true;
}

double evaluate(const PolycyclicProblem& problem, const std::vector<Vec2>& seeds,
                std::vector<double>& residuals) {
  const IncidenceStructure& s = *problem.s;
  residuals.resize(s.blocks.size());
  double cost = 0.0;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const Block& b = s.blocks[i];
    residuals[i] = signed_area2(problem.position(b[0], seeds), problem.position(b[1], seeds),
                                problem.position(b[2], seeds));
    cost += residuals[i] * residuals[i];
  }
  return cost;
}

// Minimizes the summed squared block areas over seeds[1..q-1]; seeds[0]
// is gauge-fixed at (1,0) (rotation and scale freedom).
double levenberg_marquardt(const PolycyclicProblem& problem, std::vector<Vec2>& seeds) {
  const IncidenceStructure& s = *problem.s;
  const int d = 2 * (problem.orbit_count - 1);
  std::vector<double> residuals;
  double cost = evaluate(problem, seeds, residuals);
  if (d == 0) return cost;

  double lambda = 1e-3;
  std::vector<double> jac(s.blocks.size() * d);
  for (int iter = 0; iter < 250; ++iter) {
    std::fill(jac.begin(), jac.end(), 0.0);
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
      const Block& b = s.blocks[i];
      const Vec2 p0 = problem.position(b[0], seeds);
      const Vec2 p1 = problem.position(b[1], seeds);
      const Vec2 p2 = problem.position(b[2], seeds);
      const Vec2 grad[3] = {{p1.y - p2.y, p2.x - p1.x},
                            {p2.y - p0.y, p0.x - p2.x},
                            {p0.y - p1.y, p1.x - p0.x}};
      for (int t = 0; t < 3; ++t) {
        const int orbit = problem.orbit_of[b[t]];
        if (orbit == 0) continue;
        const int k = problem.step_of[b[t]];
        const double c = problem.cos_step[k], sn = problem.sin_step[k];
        jac[i * d + 2 * (orbit - 1)] += grad[t].x * c + grad[t].y * sn;
        jac[i * d + 2 * (orbit - 1) + 1] += -grad[t].x * sn + grad[t].y * c;
      }
    }

    std::vector<double> normal(d * d, 0.0), gradient(d, 0.0);
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
      for (int u = 0; u < d; ++u) {
        gradient[u] -= jac[i * d + u] * residuals[i];
        for (int v = u; v < d; ++v) normal[u * d + v] += jac[i * d + u] * jac[i * d + v];
      }
    }
    for (int u = 0; u < d; ++u)
      for (int v = 0; v < u; ++v) normal[u * d + v] = normal[v * d + u];

    bool improved = false;
    for (int attempt = 0; attempt < 40 && !improved; ++attempt) {
      std::vector<double> delta;
      if (!solve_damped(normal, gradient, lambda, d, delta)) {
        lambda *= 4.0;
        continue;
      }
      std::vector<Vec2> trial = seeds;
      double step = 0.0;
      for (int o = 1; o < problem.orbit_count; ++o) {
        trial[o].x += delta[2 * (o - 1)];
        trial[o].y += delta[2 * (o - 1) + 1];
        step += std::abs(delta[2 * (o - 1)]) + std::abs(delta[2 * (o - 1) + 1]);
      }
      std::vector<double> trial_residuals;
      const double trial_cost = evaluate(problem, trial, trial_residuals);
      if (trial_cost < cost) {
        seeds = std::move(trial);
        residuals = std::move(trial_residuals);
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-14);
        improved = true;
        if (cost < 1e-28 || step < 1e-15) return cost;
      } else {
        lambda *= 4.0;
        if (lambda > 1e12) return cost;
      }
    }
    if (!improved) return cost;
  }
  return cost;
}

}  // namespace

std::optional<Realization> realize_polycyclic(const IncidenceStructure& s, int fold,
                                              const PolycyclicOptions& options) {
  if (!check_incidence_structure(s).valid)
    throw std::invalid_argument("realize_polycyclic: input is not a valid configuration");
  if (fold < 2 || s.n % fold != 0)
    throw std::invalid_argument("realize_polycyclic: fold must be >= 2 and divide n");

  const AutomorphismGroup group = automorphisms(s);
  std::vector<ConfigAutomorphism> candidates;
  for (const ConfigAutomorphism& e : group.elements) {
    bool free_action = true;
    std::vector<char> seen(s.n + 1, 0);
    for (int start = 1; start <= s.n && free_action; ++start) {
      if (seen[start]) continue;
      int length = 0;
      for (int x = start; !seen[x]; x = e.point_perm[x]) {
        seen[x] = 1;
        ++length;
      }
      free_action = (length == fold);
    }
    if (free_action) candidates.push_back(e);
  }
  if (candidates.empty())
    throw std::invalid_argument(
        "realize_polycyclic: no order-" + std::to_string(fold) +
        " automorphism with free point action");

  const int q = s.n / fold;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> radius_dist(0.4, 2.2);
  std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * kPi);

  for (int restart = 0; restart < options.restarts; ++restart) {
    std::vector<Vec2> seeds(q);
    seeds[0] = {1.0, 0.0};
    for (int o = 1; o < q; ++o) {
      const double radius = radius_dist(rng);
      const double angle = angle_dist(rng);
      seeds[o] = {radius * std::cos(angle), radius * std::sin(angle)};
    }

    const ConfigAutomorphism& sigma = candidates[restart % candidates.size()];
    PolycyclicProblem problem = make_problem(s, fold, sigma);
    levenberg_marquardt(problem, seeds);

    Realization realization;
    realization.structure = s;
    realization.tolerance = options.tolerance;
    realization.points.assign(s.n + 1, Vec2{});
    for (int mark = 1; mark <= s.n; ++mark)
      realization.points[mark] = problem.position(mark, seeds);

    const RealizationCheck check = verify_realization(s, realization);
    if (check.max_residual <= options.tolerance && check.points_distinct &&
        check.lines_distinct) {
      realization.max_residual = check.max_residual;
      return realization;
    }
  }
  return std::nullopt;
}

SymmetryReport detect_symmetries(const Realization& r, const SymmetryOptions& options) {
  const IncidenceStructure& s = r.structure;
  const RealizationCheck check = verify_realization(s, r);
  if (!check.points_distinct)
    throw std::invalid_argument("detect_symmetries: realization has coincident points");

  const int n = s.n;
  Vec2 center{0.0, 0.0};
  for (int i = 1; i <= n; ++i) center = center + r.points[i];
  center = (1.0 / n) * center;
  const double diameter = diameter_of(r.points, n);
  const double tol = options.tolerance * diameter;

  std::map<Block, int> block_index;
  for (std::size_t j = 0; j < s.blocks.size(); ++j)
    block_index[sorted_block(s.blocks[j])] = static_cast<int>(j) + 1;

  // Matches the transformed points back onto the configuration and keeps
  // the isometry only if the induced permutation carries blocks to blocks.
  auto induced = [&](auto&& transform) -> std::optional<ConfigAutomorphism> {
    ConfigAutomorphism e;
    e.point_perm.assign(n + 1, 0);
    e.block_perm.assign(n + 1, 0);
    std::vector<char> taken(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
      const Vec2 q = transform(r.points[i]);
      int best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        const double dist = norm(q - r.points[j]);
        if (dist < best_dist) {
          best_dist = dist;
          best = j;
        }
      }
      if (best_dist > tol || taken[best]) return std::nullopt;
      taken[best] = 1;
      e.point_perm[i] = best;
    }
    for (std::size_t j = 0; j < s.blocks.size(); ++j) {
      const Block& b = s.blocks[j];
      const auto it = block_index.find(
          sorted_block({e.point_perm[b[0]], e.point_perm[b[1]], e.point_perm[b[2]]}));
      if (it == block_index.end()) return std::nullopt;
      e.block_perm[j + 1] = it->second;
    }
    return e;
  };

  SymmetryReport report;
  report.center = center;

  std::optional<ConfigAutomorphism> rotation_generator;
  for (int k = n; k >= 2; --k) {
    const double cos_t = std::cos(2.0 * kPi / k), sin_t = std::sin(2.0 * kPi / k);
    auto element = induced([&](Vec2 p) { return rotate_about(p, center, cos_t, sin_t); });
    if (element) {
      report.rotation_order = k;
      rotation_generator = std::move(element);
      break;
    }
  }
  if (rotation_generator) {
    ConfigAutomorphism power = *rotation_generator;
    for (int k = 1; k < report.rotation_order; ++k) {
      report.induced_elements.push_back(power);
      power = compose(*rotation_generator, power);
    }
  }

  // Mirror candidates: through the centroid and each point, through each
  // pair midpoint, and perpendicular bisectors of pairs straddling the
  // centroid.
  std::vector<double> angles;
  auto add_angle = [&angles](double angle) {
    angle = std::fmod(angle, kPi);
    if (angle < 0.0) angle += kPi;
    angles.push_back(angle);
  };
  for (int i = 1; i <= n; ++i) {
    const Vec2 d = r.points[i] - center;
    if (norm(d) > tol) add_angle(std::atan2(d.y, d.x));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const Vec2 mid = 0.5 * (r.points[i] + r.points[j]) - center;
      if (norm(mid) > tol)
        add_angle(std::atan2(mid.y, mid.x));
      else {
        const Vec2 d = r.points[j] - r.points[i];
        add_angle(std::atan2(d.y, d.x) + kPi / 2.0);
      }
    }
  std::sort(angles.begin(), angles.end());

  const double angle_eps = 1e-9;
  std::vector<double> accepted_axes;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (i > 0 && angles[i] - angles[i - 1] < angle_eps) continue;
    const double phi = angles[i];
    bool duplicate = false;
    for (double seen : accepted_axes) {
      double diff = std::abs(seen - phi);
      diff = std::min(diff, kPi - diff);
      if (diff < 1e-7) duplicate = true;
    }
    if (duplicate) continue;
    auto element = induced([&](Vec2 p) { return reflect_about(p, center, phi); });
    if (element) {
      accepted_axes.push_back(phi);
      report.induced_elements.push_back(std::move(*element));
    }
  }
  report.reflection_count = static_cast<int>(accepted_axes.size());
  report.group_label = (report.reflection_count > 0 ? "D" : "C") +
                       std::to_string(report.rotation_order);
  return report;
}

}  // namespace cfg3
