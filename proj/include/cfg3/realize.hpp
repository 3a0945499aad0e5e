#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfg3/incidence.hpp"
#include "cfg3/symmetry.hpp"

namespace cfg3 {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 v);

/// Twice the signed area of the triangle (a, b, c).
double signed_area2(Vec2 a, Vec2 b, Vec2 c);

/// Raised when the incremental construction cannot complete (no root
/// bracketed, or a degenerate placement).
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// A plane drawing of a configuration. Collinearity is certified by the
/// normalized residual 2*area/perimeter^2 per block; `max_residual` is the
/// largest over all blocks.
struct Realization {
  IncidenceStructure structure;
  std::vector<Vec2> points;  // 1-based, [0] unused
  double tolerance = 1e-9;
  double max_residual = 0.0;
};

struct RealizationCheck {
  double max_residual = 0.0;
  bool points_distinct = true;
  bool lines_distinct = true;
  std::vector<double> block_residuals;               // per block, block order
  std::vector<std::pair<int, int>> coincident_points;  // 1-based mark pairs
  std::vector<std::pair<int, int>> coincident_lines;   // 1-based block pairs
};

struct GruenbaumOptions {
  double tolerance = 1e-9;      // relative collinearity tolerance
  double slope_epsilon = 0.1;   // slope of the line carrying points 2, 3, 5
  double spacing = 1.0;         // x-distance between consecutive placed points
};

/// Incremental realization of C(n,1,3), n >= 9: point 2 at the origin,
/// point 4 on the negative x-axis, points 3 and 5 on a line of slope
/// slope_epsilon through point 2, then each point m = 6..n-2 on
/// line(m-3, m-2) at strictly increasing x, and the last three points by
/// complete_last_three.
Realization realize_gruenbaum(int n, const GruenbaumOptions& options = {});

struct CompletionResult {
  Vec2 p_last_minus_1;  // point n-1
  Vec2 p_last;          // point n
  Vec2 p_first;         // point 1
  double root_t = 0.0;  // parameter of point n-1 on line(n-4, n-3)
};

/// Places points n-1, n and 1 of a partial C(n,1,3) drawing (marks 2..n-2
/// already placed; `points` is 1-based). Point n-1 is parametrized on
/// line(n-4,n-3); points n and 1 follow as line intersections, and the
/// residual signed area of {n,1,3} is driven to zero by a sign-change scan
/// plus bisection. Throws ConstructionError when no root is bracketed.
CompletionResult complete_last_three(int n, const std::vector<Vec2>& points);

/// Recomputes every block's normalized residual and flags coincident
/// points (distance <= 1e-6 x diameter) and coincident supporting lines.
RealizationCheck verify_realization(const IncidenceStructure& s, const Realization& r);

struct PolycyclicOptions {
  int restarts = 100;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
};

/// Searches for a realization invariant under rotation by 2*pi/fold about
/// the origin: picks an order-`fold` automorphism with free point action,
/// places one seed point per orbit (first seed gauge-fixed at (1,0)) and
/// minimizes the summed squared block areas by Levenberg-Marquardt over
/// seeded random restarts. Returns nullopt when no restart reaches the
/// tolerance; throws std::invalid_argument when fold does not divide n or
/// no suitable automorphism exists.
std::optional<Realization> realize_polycyclic(const IncidenceStructure& s, int fold,
                                              const PolycyclicOptions& options = {});

struct SymmetryOptions {
  double tolerance = 1e-6;  // point-matching tolerance, times the diameter
};

/// Isometries of the plane mapping the realization onto itself. The
/// symmetry group of a plane figure is cyclic or dihedral; rotations are
/// tested about the point centroid for every order 2..n and reflections
/// across candidate axes through the centroid.
struct SymmetryReport {
  int rotation_order = 1;
  int reflection_count = 0;
  std::string group_label;  // "C<k>" or "D<k>"
  Vec2 center;
  /// Non-identity point/block permutations induced by accepted isometries;
  /// each is block-preserving by construction, i.e. a member of Aut.
  std::vector<ConfigAutomorphism> induced_elements;
};

SymmetryReport detect_symmetries(const Realization& r, const SymmetryOptions& options = {});

}  // namespace cfg3
