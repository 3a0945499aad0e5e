#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cfg3/cyclic.hpp"
#include "cfg3/incidence.hpp"
#include "cfg3/realize.hpp"
#include "cfg3/symmetry.hpp"

namespace cfg3::io {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  int line = 0;    // 1-based; 0 = whole document
  int column = 0;  // 1-based character position
  ParseError(int line_, int column_, const std::string& message);
};

/// TableFile: header line with n, then exactly 3 rows of n marks; column j
/// is block j. '#' lines are comments, trailing whitespace is ignored.
/// Rejects files violating the (n3) degree condition, naming the mark.
IncidenceStructure parse_table(std::string_view text);

/// Deterministic inverse of parse_table: columns in block order,
/// single-space separated, newline-terminated.
std::string write_table(const IncidenceStructure& s);

/// RealizationFile: JSON with keys n, blocks, points, tolerance,
/// maxResidual. Coordinates are written with 17 significant digits so the
/// round-trip is bit-exact for doubles.
std::string write_realization(const Realization& r);
Realization parse_realization(std::string_view text);

struct SvgStyle {
  int width = 800;
  int height = 800;
  double margin = 48.0;
  double point_radius = 4.5;
  double stroke_width = 1.4;
  double font_size = 12.0;
  double overhang = 0.12;  // segment extension beyond its extreme points
  bool labels = true;
};

/// Draws each block as a segment extended slightly past its extreme
/// points, marks as labeled filled circles. The y axis is flipped to the
/// usual mathematical orientation.
std::string write_svg(const Realization& r, const SvgStyle& style = {});

/// Scatter of the invalid (a,b) pairs with the six locus lines clipped to
/// 0 < a < b < n; the triple-intersection pair, when present, is
/// highlighted.
std::string write_locus_svg(const LocusReport& l, const SvgStyle& style = {});

json to_json(const ValidityReport& report);
json to_json(const PredicateResult& result);
json to_json(const LocusReport& report);
json to_json(const MultiplierIsomorphism& iso);
json to_json(const ConfigAutomorphism& e);
json to_json(const AutomorphismGroup& g);
json to_json(const GroupReport& report);
json to_json(const SymmetryReport& report);
json to_json(const std::vector<IsoClass>& classes);

}  // namespace cfg3::io
