#include "cfg3/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

namespace cfg3::io {

namespace {

std::string located(int line, int column, const std::string& message) {
  if (line <= 0) return message;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

int parse_int(const Token& token, int line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token.text, &used);
  } catch (const std::exception&) {
    throw ParseError(line, token.column, "expected an integer, got '" + token.text + "'");
  }
  if (used != token.text.size())
    throw ParseError(line, token.column, "expected an integer, got '" + token.text + "'");
  return value;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace

ParseError::ParseError(int line_, int column_, const std::string& message)
    : std::runtime_error(located(line_, column_, message)), line(line_), column(column_) {}

IncidenceStructure parse_table(std::string_view text) {
  std::vector<std::pair<int, std::string>> data_lines;  // (1-based line, content)
  {
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string line(text.substr(pos, end - pos));
      ++lineno;
      pos = end + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::size_t first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '#') continue;
      data_lines.emplace_back(lineno, line);
      if (pos > text.size()) break;
    }
  }

  if (data_lines.empty()) throw ParseError(0, 0, "empty table file");
  const auto& [header_line, header_text] = data_lines.front();
  std::vector<Token> header = tokenize(header_text);
  if (header.size() != 1)
    throw ParseError(header_line, header.size() > 1 ? header[1].column : 1,
                     "header must be a single integer n");
  const int n = parse_int(header[0], header_line);
  if (n < 1) throw ParseError(header_line, header[0].column, "n must be positive");

  if (data_lines.size() != 4)
    throw ParseError(data_lines.back().first, 1,
                     "expected exactly 3 rows after the header, got " +
                         std::to_string(data_lines.size() - 1));

  IncidenceStructure s;
  s.n = n;
  s.blocks.assign(n, Block{0, 0, 0});
  for (int row = 0; row < 3; ++row) {
    const auto& [lineno, content] = data_lines[row + 1];
    std::vector<Token> tokens = tokenize(content);
    if (static_cast<int>(tokens.size()) != n)
      throw ParseError(lineno,
                       tokens.size() > static_cast<std::size_t>(n)
                           ? tokens[n].column
                           : static_cast<int>(content.size()) + 1,
                       "row " + std::to_string(row + 1) + " has " +
                           std::to_string(tokens.size()) + " entries, expected " +
                           std::to_string(n));
    for (int j = 0; j < n; ++j) {
      const int mark = parse_int(tokens[j], lineno);
      if (mark < 1 || mark > n)
        throw ParseError(lineno, tokens[j].column,
                         "mark " + std::to_string(mark) + " outside 1.." + std::to_string(n));
      s.blocks[j][row] = mark;
    }
  }

  try {
    require_well_formed(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, 0, e.what());
  }
  for (auto [mark, degree] : mark_degree_profile(s)) {
    if (degree != 3)
      throw ParseError(0, 0,
                       "mark " + std::to_string(mark) + " appears in " + std::to_string(degree) +
                           " blocks, expected 3");
  }
  return s;
}

std::string write_table(const IncidenceStructure& s) {
  require_well_formed(s);
  std::ostringstream out;
  out << s.n << '\n';
  for (int row = 0; row < 3; ++row) {
    for (int j = 0; j < s.n; ++j) {
      if (j > 0) out << ' ';
      out << s.blocks[j][row];
    }
    out << '\n';
  }
  return out.str();
}

std::string write_realization(const Realization& r) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"n\": " << r.structure.n << ",\n";
  out << "  \"blocks\": [";
  for (std::size_t j = 0; j < r.structure.blocks.size(); ++j) {
    const Block& b = r.structure.blocks[j];
    out << (j == 0 ? "" : ", ") << '[' << b[0] << ", " << b[1] << ", " << b[2] << ']';
  }
  out << "],\n";
  out << "  \"points\": [\n";
  for (int mark = 1; mark <= r.structure.n; ++mark) {
    out << "    [" << fmt17(r.points[mark].x) << ", " << fmt17(r.points[mark].y) << ']'
        << (mark == r.structure.n ? "" : ",") << '\n';
  }
  out << "  ],\n";
  out << "  \"tolerance\": " << fmt17(r.tolerance) << ",\n";
  out << "  \"maxResidual\": " << fmt17(r.max_residual) << "\n";
  out << "}\n";
  return out.str();
}

Realization parse_realization(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, 0, std::string("realization file: ") + e.what());
  }

  Realization r;
  try {
    r.structure.n = doc.at("n").get<int>();
    for (const auto& item : doc.at("blocks")) {
      if (!item.is_array() || item.size() != 3)
        throw ParseError(0, 0, "realization file: blocks must be triples");
      r.structure.blocks.push_back(
          {item[0].get<int>(), item[1].get<int>(), item[2].get<int>()});
    }
    const auto& points = doc.at("points");
    if (static_cast<int>(points.size()) != r.structure.n)
      throw ParseError(0, 0, "realization file: expected " + std::to_string(r.structure.n) +
                                 " points, got " + std::to_string(points.size()));
    r.points.assign(r.structure.n + 1, Vec2{});
    for (int mark = 1; mark <= r.structure.n; ++mark) {
      const auto& pair = points[mark - 1];
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError(0, 0, "realization file: points must be [x, y] pairs");
      r.points[mark] = {pair[0].get<double>(), pair[1].get<double>()};
      if (!std::isfinite(r.points[mark].x) || !std::isfinite(r.points[mark].y))
        throw ParseError(0, 0, "realization file: non-finite coordinate for mark " +
                                   std::to_string(mark));
    }
    r.tolerance = doc.at("tolerance").get<double>();
    r.max_residual = doc.at("maxResidual").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, 0, std::string("realization file: ") + e.what());
  }

  try {
    require_well_formed(r.structure);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, 0, std::string("realization file: ") + e.what());
  }
  return r;
}

namespace {

struct Viewport {
  double min_x = 0, min_y = 0, scale = 1;
  double offset_x = 0, offset_y = 0;
  int height = 0;

  Vec2 map(Vec2 world) const {
    return {offset_x + (world.x - min_x) * scale,
            static_cast<double>(height) - (offset_y + (world.y - min_y) * scale)};
  }
};

Viewport fit_viewport(double min_x, double max_x, double min_y, double max_y,
                      const SvgStyle& style) {
  Viewport vp;
  vp.height = style.height;
  vp.min_x = min_x;
  vp.min_y = min_y;
  const double span_x = std::max(max_x - min_x, 1e-12);
  const double span_y = std::max(max_y - min_y, 1e-12);
  vp.scale = std::min((style.width - 2.0 * style.margin) / span_x,
                      (style.height - 2.0 * style.margin) / span_y);
  vp.offset_x = (style.width - span_x * vp.scale) / 2.0;
  vp.offset_y = (style.height - span_y * vp.scale) / 2.0;
  return vp;
}

void svg_open(std::ostringstream& out, const SvgStyle& style) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\""
      << style.height << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n"
      << "<rect width=\"" << style.width << "\" height=\"" << style.height
      << "\" fill=\"white\"/>\n";
}

void svg_line(std::ostringstream& out, Vec2 a, Vec2 b, const std::string& color, double width) {
  out << "<line x1=\"" << fmt3(a.x) << "\" y1=\"" << fmt3(a.y) << "\" x2=\"" << fmt3(b.x)
      << "\" y2=\"" << fmt3(b.y) << "\" stroke=\"" << color << "\" stroke-width=\""
      << fmt3(width) << "\"/>\n";
}

void svg_circle(std::ostringstream& out, Vec2 c, double radius, const std::string& fill,
                const std::string& stroke) {
  out << "<circle cx=\"" << fmt3(c.x) << "\" cy=\"" << fmt3(c.y) << "\" r=\"" << fmt3(radius)
      << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
}

void svg_text(std::ostringstream& out, Vec2 at, const std::string& text, double font_size,
              const std::string& fill) {
  out << "<text x=\"" << fmt3(at.x) << "\" y=\"" << fmt3(at.y) << "\" font-size=\""
      << fmt3(font_size) << "\" font-family=\"sans-serif\" fill=\"" << fill << "\">" << text
      << "</text>\n";
}

}  // namespace

std::string write_svg(const Realization& r, const SvgStyle& style) {
  const int n = r.structure.n;

  // Segment endpoints: extreme pair of each block, extended by the
  // overhang fraction of the span.
  std::vector<std::pair<Vec2, Vec2>> segments;
  segments.reserve(r.structure.blocks.size());
  for (const Block& blk : r.structure.blocks) {
    int u_best = blk[0], v_best = blk[1];
    double best = -1.0;
    for (int u = 0; u < 3; ++u)
      for (int v = u + 1; v < 3; ++v) {
        const double d = norm(r.points[blk[u]] - r.points[blk[v]]);
        if (d > best) {
          best = d;
          u_best = blk[u];
          v_best = blk[v];
        }
      }
    const Vec2 a = r.points[u_best], b = r.points[v_best];
    const Vec2 pad = style.overhang * (b - a);
    segments.emplace_back(a - pad, b + pad);
  }

  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = max_x;
  auto grow = [&](Vec2 p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (int i = 1; i <= n; ++i) grow(r.points[i]);
  for (const auto& [a, b] : segments) {
    grow(a);
    grow(b);
  }
  const Viewport vp = fit_viewport(min_x, max_x, min_y, max_y, style);

  std::ostringstream out;
  svg_open(out, style);
  for (const auto& [a, b] : segments)
    svg_line(out, vp.map(a), vp.map(b), "#35507a", style.stroke_width);
  for (int i = 1; i <= n; ++i)
    svg_circle(out, vp.map(r.points[i]), style.point_radius, "#c23b22", "#5a1a10");
  if (style.labels) {
    for (int i = 1; i <= n; ++i) {
      Vec2 at = vp.map(r.points[i]);
      svg_text(out, {at.x + 1.6 * style.point_radius, at.y - 1.6 * style.point_radius},
               std::to_string(i), style.font_size, "#222222");
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string write_locus_svg(const LocusReport& l, const SvgStyle& style) {
  const double n = l.n;
  const Viewport vp = fit_viewport(0.0, n, 0.0, n, style);

  std::ostringstream out;
  svg_open(out, style);

  // Axes.
  svg_line(out, vp.map({0, 0}), vp.map({n, 0}), "#555555", 1.0);
  svg_line(out, vp.map({0, 0}), vp.map({0, n}), "#555555", 1.0);
  if (style.labels) {
    svg_text(out, vp.map({n, 0}) + Vec2{6, 4}, "a", style.font_size, "#222222");
    svg_text(out, vp.map({0, n}) + Vec2{-14, -6}, "b", style.font_size, "#222222");
    svg_text(out, vp.map({0, 0}) + Vec2{-14, 14}, "0", style.font_size, "#222222");
    svg_text(out, vp.map({n, 0}) + Vec2{-4, 18}, std::to_string(l.n), style.font_size,
             "#222222");
  }

  struct LocusLine {
    const char* label;
    Vec2 point;
    Vec2 direction;
    const char* color;
  };
  const LocusLine lines[6] = {
      {"n = 2b - 2a", {0, n / 2}, {1, 1}, "#1f77b4"},
      {"n = 2a", {n / 2, 0}, {0, 1}, "#ff7f0e"},
      {"n = 2b", {0, n / 2}, {1, 0}, "#2ca02c"},
      {"n = a + b", {0, n}, {1, -1}, "#d62728"},
      {"n = 2b - a", {0, n / 2}, {2, 1}, "#9467bd"},
      {"2a = b", {0, 0}, {1, 2}, "#8c564b"},
  };

  // Clip each parametric line to {0 <= a <= n, 0 <= b <= n, b >= a}.
  struct HalfPlane {
    Vec2 normal;
    double offset;  // normal . p + offset >= 0
  };
  const HalfPlane region[5] = {
      {{1, 0}, 0.0}, {{-1, 0}, n}, {{0, 1}, 0.0}, {{0, -1}, n}, {{-1, 1}, 0.0}};

  for (const LocusLine& line : lines) {
    double t_min = -4.0 * n, t_max = 4.0 * n;
    bool empty = false;
    for (const HalfPlane& hp : region) {
      const double slope = dot(hp.normal, line.direction);
      const double base = dot(hp.normal, line.point) + hp.offset;
      if (std::abs(slope) < 1e-12) {
        if (base < 0) empty = true;
      } else if (slope > 0) {
        t_min = std::max(t_min, -base / slope);
      } else {
        t_max = std::min(t_max, -base / slope);
      }
    }
    if (empty || t_min >= t_max) continue;
    svg_line(out, vp.map(line.point + t_min * line.direction),
             vp.map(line.point + t_max * line.direction), line.color, style.stroke_width);
  }

  for (const LocusEntry& entry : l.entries) {
    const bool triple = entry.oracle_max_intersection >= 3;
    svg_circle(out, vp.map({static_cast<double>(entry.a), static_cast<double>(entry.b)}),
               triple ? style.point_radius * 1.3 : style.point_radius * 0.65,
               triple ? "#c23b22" : "#35507a", "none");
  }
  if (l.triple_intersection) {
    const Vec2 at = vp.map({static_cast<double>(l.triple_intersection->first),
                            static_cast<double>(l.triple_intersection->second)});
    out << "<circle cx=\"" << fmt3(at.x) << "\" cy=\"" << fmt3(at.y) << "\" r=\""
        << fmt3(style.point_radius * 2.6) << "\" fill=\"none\" stroke=\"#c23b22\" "
        << "stroke-width=\"" << fmt3(style.stroke_width * 1.4) << "\"/>\n";
    if (style.labels)
      svg_text(out, at + Vec2{10, -10},
               "(" + std::to_string(l.triple_intersection->first) + ", " +
                   std::to_string(l.triple_intersection->second) + ")",
               style.font_size, "#c23b22");
  }
  if (style.labels) {
    double y = style.margin;
    for (const LocusLine& line : lines) {
      svg_text(out, {style.margin, y}, line.label, style.font_size, line.color);
      y += style.font_size + 4.0;
    }
  }
  out << "</svg>\n";
  return out.str();
}

json to_json(const ValidityReport& report) {
  json witnesses = json::array();
  for (const BlockPairWitness& w : report.witnesses)
    witnesses.push_back({{"blockA", w.block_a}, {"blockB", w.block_b}, {"shared", w.shared_marks}});
  return {{"valid", report.valid},
          {"maxIntersection", report.max_intersection},
          {"witnesses", std::move(witnesses)}};
}

json to_json(const PredicateResult& result) {
  json reasons = json::array();
  for (InvalidityReason reason : result.reasons)
    reasons.push_back({{"tag", tag_name(reason)}, {"line", line_equation(reason)}});
  return {{"valid", result.valid}, {"reasons", std::move(reasons)}};
}

json to_json(const LocusReport& report) {
  json entries = json::array();
  for (const LocusEntry& entry : report.entries) {
    json reasons = json::array();
    for (InvalidityReason reason : entry.reasons) reasons.push_back(tag_name(reason));
    entries.push_back({{"a", entry.a},
                       {"b", entry.b},
                       {"reasons", std::move(reasons)},
                       {"maxIntersection", entry.oracle_max_intersection}});
  }
  json doc{{"n", report.n}, {"entries", std::move(entries)}};
  doc["tripleIntersection"] =
      report.triple_intersection
          ? json::array({report.triple_intersection->first, report.triple_intersection->second})
          : json();
  if (report.triangle) {
    json triangle = json::array();
    for (const auto& [a, b] : *report.triangle) triangle.push_back(json::array({a, b}));
    doc["triangle"] = std::move(triangle);
  } else {
    doc["triangle"] = json();
  }
  doc["centroid"] = report.centroid
                        ? json::array({report.centroid->first, report.centroid->second})
                        : json();
  return doc;
}

json to_json(const MultiplierIsomorphism& iso) {
  return {{"z", iso.z},
          {"markMap", std::vector<int>(iso.mark_map.begin() + 1, iso.mark_map.end())}};
}

json to_json(const ConfigAutomorphism& e) {
  return {{"pointPerm", std::vector<int>(e.point_perm.begin() + 1, e.point_perm.end())},
          {"blockPerm", std::vector<int>(e.block_perm.begin() + 1, e.block_perm.end())},
          {"pointCycles", cycle_string(e.point_perm)}};
}

json to_json(const AutomorphismGroup& g) {
  json generators = json::array();
  for (const ConfigAutomorphism& e : g.generators) generators.push_back(to_json(e));
  return {{"n", g.n},
          {"order", g.order()},
          {"generators", std::move(generators)},
          {"pointOrbits", g.point_orbits},
          {"blockOrbits", g.block_orbits}};
}

json to_json(const GroupReport& report) {
  json histogram = json::array();
  for (auto [order, count] : report.element_order_histogram)
    histogram.push_back(json::array({order, count}));
  return {{"order", report.order},
          {"pointTransitive", report.point_transitive},
          {"maxElementOrder", report.max_element_order},
          {"abelian", report.abelian},
          {"elementOrderHistogram", std::move(histogram)}};
}

json to_json(const SymmetryReport& report) {
  json induced = json::array();
  for (const ConfigAutomorphism& e : report.induced_elements) induced.push_back(to_json(e));
  return {{"rotationOrder", report.rotation_order},
          {"reflectionCount", report.reflection_count},
          {"group", report.group_label},
          {"center", json::array({report.center.x, report.center.y})},
          {"inducedElements", std::move(induced)}};
}

json to_json(const std::vector<IsoClass>& classes) {
  json out = json::array();
  for (const IsoClass& cls : classes) {
    json members = json::array();
    for (const ClassMember& member : cls.members) {
      json m{{"a", member.params.a}, {"b", member.params.b}};
      m["multiplier"] = member.multiplier ? json(*member.multiplier) : json();
      members.push_back(std::move(m));
    }
    out.push_back({{"representative",
                    json::array({cls.representative_params.a, cls.representative_params.b})},
                   {"members", std::move(members)}});
  }
  return out;
}

}  // namespace cfg3::io
