#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfg3/cyclic.hpp"
#include "cfg3/incidence.hpp"
#include "cfg3/io.hpp"
#include "cfg3/realize.hpp"
#include "cfg3/symmetry.hpp"

namespace {

using cfg3::io::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
}

void emit(const std::string& content, const std::string& path) {
  if (path.empty())
    std::cout << content;
  else
    write_file(path, content);
}

std::string params_label(const cfg3::GenCyclicParams& p) {
  return "C(" + std::to_string(p.n) + "," + std::to_string(p.a) + "," + std::to_string(p.b) + ")";
}

cfg3::IncidenceStructure load_structure(const std::vector<int>& params,
                                        const std::string& file) {
  if (!file.empty() && !params.empty())
    throw std::invalid_argument("give either positional n a b or -f FILE, not both");
  if (!file.empty()) return cfg3::io::parse_table(read_file(file));
  if (params.size() == 3)
    return cfg3::build_gen_cyclic({params[0], params[1], params[2]});
  throw std::invalid_argument("missing input: give n a b or -f FILE");
}

std::string shared_marks_text(const std::vector<int>& marks) {
  std::string out = "{";
  for (std::size_t i = 0; i < marks.size(); ++i)
    out += (i ? ", " : "") + std::to_string(marks[i]);
  return out + "}";
}

void print_validity(const cfg3::ValidityReport& report) {
  std::cout << "  oracle: " << (report.valid ? "valid" : "invalid") << ", max intersection "
            << report.max_intersection << ", " << report.witnesses.size()
            << " witnessing block pair" << (report.witnesses.size() == 1 ? "" : "s") << "\n";
  const std::size_t shown = std::min<std::size_t>(report.witnesses.size(), 12);
  for (std::size_t i = 0; i < shown; ++i) {
    const cfg3::BlockPairWitness& w = report.witnesses[i];
    std::cout << "    blocks " << w.block_a << " & " << w.block_b << " share "
              << shared_marks_text(w.shared_marks) << "\n";
  }
  if (shown < report.witnesses.size())
    std::cout << "    ... " << report.witnesses.size() - shown << " more\n";
}

void print_predicate(const cfg3::PredicateResult& result) {
  std::cout << "  predicate: " << (result.valid ? "valid" : "invalid");
  if (!result.reasons.empty()) {
    std::cout << " (";
    for (std::size_t i = 0; i < result.reasons.size(); ++i)
      std::cout << (i ? "; " : "") << cfg3::tag_name(result.reasons[i]) << " ["
                << cfg3::line_equation(result.reasons[i]) << "]";
    std::cout << ")";
  }
  std::cout << "\n";
}

int run_gen(const std::vector<int>& params, const std::string& out_path) {
  cfg3::IncidenceStructure s = cfg3::build_gen_cyclic({params[0], params[1], params[2]});
  emit(cfg3::io::write_table(s), out_path);
  return 0;
}

int run_validate(const std::vector<int>& params, const std::string& file, std::string method,
                 const std::string& json_path) {
  const bool from_params = file.empty();
  if (method == "auto") method = from_params ? "both" : "oracle";
  if (!from_params && method != "oracle")
    throw std::invalid_argument("--method " + method + " needs positional n a b input");

  std::optional<cfg3::PredicateResult> predicate;
  std::optional<cfg3::ValidityReport> oracle;
  std::string label;
  if (from_params) {
    cfg3::GenCyclicParams p{params.at(0), params.at(1), params.at(2)};
    label = params_label(p);
    if (method != "oracle") predicate = cfg3::predicate_valid(p);
    if (method != "predicate")
      oracle = cfg3::check_incidence_structure(cfg3::build_gen_cyclic(p));
  } else {
    label = "table " + file;
    oracle = cfg3::check_incidence_structure(load_structure(params, file));
  }

  const bool valid = predicate ? predicate->valid : oracle->valid;
  std::cout << label << ": " << (valid ? "VALID" : "INVALID") << "\n";
  if (predicate) print_predicate(*predicate);
  if (oracle) print_validity(*oracle);

  if (!json_path.empty()) {
    json doc;
    doc["input"] = label;
    doc["method"] = method;
    doc["predicate"] = predicate ? cfg3::io::to_json(*predicate) : json();
    doc["oracle"] = oracle ? cfg3::io::to_json(*oracle) : json();
    doc["valid"] = valid;
    write_file(json_path, doc.dump(2) + "\n");
  }

  if (predicate && oracle && predicate->valid != oracle->valid) {
    std::cerr << "error: predicate and oracle disagree; this contradicts the validity theorem\n";
    return 2;
  }
  return valid ? 0 : 1;
}

int run_locus(int n, const std::string& svg_path, const std::string& json_path) {
  const cfg3::LocusReport report = cfg3::invalid_locus(n);
  const long long pairs = static_cast<long long>(n - 1) * (n - 2) / 2;
  std::cout << "n = " << n << ": " << report.entries.size() << " invalid (a,b) pairs of "
            << pairs << " with a < b\n";
  if (report.triple_intersection)
    std::cout << "  triple intersection at (" << report.triple_intersection->first << ", "
              << report.triple_intersection->second << ")\n";
  else
    std::cout << "  no triple intersection (3 does not divide n)\n";
  if (report.triangle) {
    const auto& t = *report.triangle;
    std::cout << "  locus triangle (" << t[0].first << "," << t[0].second << "), ("
              << t[1].first << "," << t[1].second << "), (" << t[2].first << "," << t[2].second
              << ")";
    if (report.centroid)
      std::cout << "; centroid (" << report.centroid->first << ", " << report.centroid->second
                << ")";
    std::cout << "\n";
  }
  if (!svg_path.empty()) write_file(svg_path, cfg3::io::write_locus_svg(report));
  if (!json_path.empty()) write_file(json_path, cfg3::io::to_json(report).dump(2) + "\n");
  return 0;
}

int run_iso(const std::vector<int>& args, bool deep, const std::string& json_path) {
  cfg3::GenCyclicParams p1{args[0], args[1], args[2]};
  cfg3::GenCyclicParams p2{args[0], args[3], args[4]};
  json doc{{"n", args[0]},
           {"first", json::array({p1.a, p1.b})},
           {"second", json::array({p2.a, p2.b})}};

  auto finish = [&](bool isomorphic) {
    doc["isomorphic"] = isomorphic;
    if (!json_path.empty()) write_file(json_path, doc.dump(2) + "\n");
    return isomorphic ? 0 : 1;
  };

  if (auto mult = cfg3::multiplier_isomorphism(p1, p2)) {
    std::cout << params_label(p1) << " ~ " << params_label(p2) << ": isomorphic, z = "
              << mult->z << " (m -> " << mult->z << "*m mod " << p1.n << ")\n";
    doc["method"] = "multiplier";
    doc["multiplier"] = cfg3::io::to_json(*mult);
    return finish(true);
  }
  if (!deep) {
    std::cout << "no multiplier isomorphism found; rerun with --deep for the full search\n";
    doc["method"] = "multiplier";
    doc["multiplier"] = json();
    return finish(false);
  }
  const auto map =
      cfg3::is_isomorphic(cfg3::build_gen_cyclic(p1), cfg3::build_gen_cyclic(p2));
  doc["method"] = "levi";
  if (map) {
    std::cout << params_label(p1) << " ~ " << params_label(p2)
              << ": isomorphic (Levi search), points " << cfg3::cycle_string(map->point_map)
              << "\n";
    doc["pointMap"] = std::vector<int>(map->point_map.begin() + 1, map->point_map.end());
    doc["blockMap"] = std::vector<int>(map->block_map.begin() + 1, map->block_map.end());
    return finish(true);
  }
  std::cout << params_label(p1) << " !~ " << params_label(p2)
            << ": not isomorphic (exhaustive Levi search)\n";
  return finish(false);
}

int run_classify(int n, const std::string& json_path) {
  const std::vector<cfg3::IsoClass> classes = cfg3::classify_all(n);
  std::size_t valid_pairs = 0;
  for (const cfg3::IsoClass& cls : classes) valid_pairs += cls.members.size();
  std::cout << "n = " << n << ": " << valid_pairs << " valid parameter pairs, "
            << classes.size() << " isomorphism class" << (classes.size() == 1 ? "" : "es")
            << "\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const cfg3::IsoClass& cls = classes[c];
    std::cout << "  class " << c + 1 << " [" << params_label(cls.representative_params)
              << "]:";
    for (const cfg3::ClassMember& member : cls.members) {
      std::cout << " (" << member.params.a << "," << member.params.b << ")";
      if (member.multiplier)
        std::cout << "z=" << *member.multiplier;
      else
        std::cout << "levi";
    }
    std::cout << "\n";
  }
  if (!json_path.empty()) {
    json doc{{"n", n},
             {"classCount", classes.size()},
             {"classes", cfg3::io::to_json(classes)}};
    write_file(json_path, doc.dump(2) + "\n");
  }
  return 0;
}

int run_aut(const std::vector<int>& params, const std::string& file, bool brute, bool dual,
            const std::string& json_path) {
  const cfg3::IncidenceStructure s = load_structure(params, file);
  const cfg3::AutomorphismGroup group =
      brute ? cfg3::brute_force_automorphisms(s) : cfg3::automorphisms(s);
  const cfg3::GroupReport report = cfg3::group_report(group);

  std::cout << "|Aut| = " << group.order() << (brute ? "  (brute force)" : "") << "\n";
  std::cout << "  point-transitive: " << (report.point_transitive ? "yes" : "no")
            << ", abelian: " << (report.abelian ? "yes" : "no")
            << ", max element order: " << report.max_element_order << "\n";
  std::cout << "  element orders:";
  for (auto [order, count] : report.element_order_histogram)
    std::cout << " " << order << "x" << count;
  std::cout << "\n";
  std::cout << "  generators (" << group.generators.size() << "):\n";
  for (const cfg3::ConfigAutomorphism& g : group.generators)
    std::cout << "    points " << cfg3::cycle_string(g.point_perm) << ", blocks "
              << cfg3::cycle_string(g.block_perm) << "\n";
  auto print_orbits = [](const char* name, const std::vector<std::vector<int>>& orbits) {
    std::cout << "  " << name << " (" << orbits.size() << "):";
    for (const auto& orbit : orbits) {
      std::cout << " {";
      for (std::size_t i = 0; i < orbit.size(); ++i)
        std::cout << (i ? " " : "") << orbit[i];
      std::cout << "}";
    }
    std::cout << "\n";
  };
  print_orbits("point orbits", group.point_orbits);
  print_orbits("block orbits", group.block_orbits);

  std::optional<cfg3::IsomorphismMap> duality;
  if (dual) {
    duality = cfg3::find_self_duality(s);
    if (duality)
      std::cout << "  self-duality: found, marks -> blocks "
                << cfg3::cycle_string(duality->point_map) << "\n";
    else
      std::cout << "  self-duality: none\n";
  }

  if (!json_path.empty()) {
    json doc{{"group", cfg3::io::to_json(group)}, {"report", cfg3::io::to_json(report)}};
    if (dual) {
      doc["selfDual"] = static_cast<bool>(duality);
      if (duality)
        doc["dualityPointMap"] =
            std::vector<int>(duality->point_map.begin() + 1, duality->point_map.end());
    }
    write_file(json_path, doc.dump(2) + "\n");
  }
  return 0;
}

int emit_realization(const cfg3::Realization& r, const std::string& json_path,
                     const std::string& svg_path) {
  if (!svg_path.empty()) write_file(svg_path, cfg3::io::write_svg(r));
  const std::string doc = cfg3::io::write_realization(r);
  if (json_path.empty()) {
    std::cout << doc;
  } else {
    write_file(json_path, doc);
    std::cout << "wrote " << json_path << " (maxResidual " << r.max_residual << ")\n";
  }
  return 0;
}

int run_realize(int n, double tolerance, double slope, double spacing,
                const std::string& json_path, const std::string& svg_path) {
  cfg3::GruenbaumOptions options;
  options.tolerance = tolerance;
  options.slope_epsilon = slope;
  options.spacing = spacing;
  return emit_realization(cfg3::realize_gruenbaum(n, options), json_path, svg_path);
}

int run_polycyclic(const std::vector<int>& params, const std::string& file, int fold,
                   int restarts, std::uint64_t seed, double tolerance,
                   const std::string& json_path, const std::string& svg_path) {
  const cfg3::IncidenceStructure s = load_structure(params, file);
  cfg3::PolycyclicOptions options;
  options.restarts = restarts;
  options.seed = seed;
  options.tolerance = tolerance;
  const auto r = cfg3::realize_polycyclic(s, fold, options);
  if (!r) {
    std::cout << "no " << fold << "-fold realization reached tolerance " << tolerance
              << " within " << restarts << " restarts (seed " << seed
              << "); this reports non-convergence, not impossibility\n";
    return 1;
  }
  return emit_realization(*r, json_path, svg_path);
}

int run_sym(const std::string& file, double tolerance, const std::string& json_path) {
  const cfg3::Realization r = cfg3::io::parse_realization(read_file(file));
  cfg3::SymmetryOptions options;
  options.tolerance = tolerance;
  const cfg3::SymmetryReport report = cfg3::detect_symmetries(r, options);
  std::cout << "symmetry group: " << report.group_label << " (rotation order "
            << report.rotation_order << ", " << report.reflection_count << " mirror line"
            << (report.reflection_count == 1 ? "" : "s") << ")\n";
  std::cout << "  center (" << report.center.x << ", " << report.center.y << "), "
            << report.induced_elements.size()
            << " induced non-identity automorphisms, all block-preserving\n";
  for (const cfg3::ConfigAutomorphism& e : report.induced_elements)
    std::cout << "    points " << cfg3::cycle_string(e.point_perm) << "\n";
  if (!json_path.empty())
    write_file(json_path, cfg3::io::to_json(report).dump(2) + "\n");
  return 0;
}

int run_render(const std::string& file, const std::string& out_path) {
  const cfg3::Realization r = cfg3::io::parse_realization(read_file(file));
  write_file(out_path, cfg3::io::write_svg(r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cfg3: build, validate, classify and geometrically realize (n_3) point-line "
               "configurations"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write the generalized cyclic table C(n,a,b)");
  std::vector<int> gen_params;
  std::string gen_out;
  gen->add_option("params", gen_params, "n a b")->expected(3)->required();
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // validate
  auto* validate = app.add_subcommand("validate", "combinatorial validity of a configuration");
  std::vector<int> validate_params;
  std::string validate_file, validate_method = "auto", validate_json;
  validate->add_option("params", validate_params, "n a b")->expected(3);
  validate->add_option("-f,--file", validate_file, "read a table file instead");
  validate->add_option("--method", validate_method, "predicate|oracle|both (default both)")
      ->check(CLI::IsMember({"predicate", "oracle", "both", "auto"}));
  validate->add_option("--json", validate_json, "write a JSON report");

  // locus
  auto* locus = app.add_subcommand("locus", "invalid (a,b) locus for a fixed n");
  int locus_n = 0;
  std::string locus_svg, locus_json;
  locus->add_option("n", locus_n, "number of marks")->required();
  locus->add_option("--svg", locus_svg, "write the locus plot");
  locus->add_option("--json", locus_json, "write a JSON report");

  // iso
  auto* iso = app.add_subcommand("iso", "isomorphism test for two cyclic parameter pairs");
  std::vector<int> iso_params;
  bool iso_deep = false;
  std::string iso_json;
  iso->add_option("params", iso_params, "n a1 b1 a2 b2")->expected(5)->required();
  iso->add_flag("--deep", iso_deep, "fall back on the full Levi search");
  iso->add_option("--json", iso_json, "write a JSON report");

  // classify
  auto* classify = app.add_subcommand("classify", "isomorphism classes of all valid C(n,a,b)");
  int classify_n = 0;
  std::string classify_json;
  classify->add_option("n", classify_n, "number of marks")->required();
  classify->add_option("--json", classify_json, "write a JSON report");

  // aut
  auto* aut = app.add_subcommand("aut", "automorphism group of a configuration");
  std::vector<int> aut_params;
  std::string aut_file, aut_json;
  bool aut_brute = false, aut_dual = false;
  aut->add_option("params", aut_params, "n a b")->expected(3);
  aut->add_option("-f,--file", aut_file, "read a table file instead");
  aut->add_flag("--brute", aut_brute, "brute-force enumeration (n <= 10)");
  aut->add_flag("--dual", aut_dual, "also search for a self-duality");
  aut->add_option("--json", aut_json, "write a JSON report");

  // realize
  auto* realize = app.add_subcommand("realize", "geometric realization of C(n,1,3)");
  int realize_n = 0;
  double realize_tol = 1e-9, realize_slope = 0.1, realize_spacing = 1.0;
  std::string realize_json, realize_svg;
  realize->add_option("n", realize_n, "number of marks (n >= 9)")->required();
  realize->add_option("--tol", realize_tol, "relative collinearity tolerance");
  realize->add_option("--slope", realize_slope, "slope of the initial line");
  realize->add_option("--spacing", realize_spacing, "x spacing of consecutive points");
  realize->add_option("--json", realize_json, "write the realization file here, not stdout");
  realize->add_option("--svg", realize_svg, "write a drawing");

  // polycyclic
  auto* poly = app.add_subcommand("polycyclic",
                                  "search a rotationally symmetric realization");
  std::vector<int> poly_params;
  std::string poly_file, poly_json, poly_svg;
  int poly_fold = 0, poly_restarts = 100;
  std::uint64_t poly_seed = 0;
  double poly_tol = 1e-8;
  poly->add_option("params", poly_params, "n a b")->expected(3);
  poly->add_option("-f,--file", poly_file, "read a table file instead");
  poly->add_option("-m,--fold", poly_fold, "rotation order (must divide n)")->required();
  poly->add_option("--restarts", poly_restarts, "random restarts (default 100)");
  poly->add_option("--seed", poly_seed, "RNG seed (default 0)");
  poly->add_option("--tol", poly_tol, "relative collinearity tolerance");
  poly->add_option("--json", poly_json, "write the realization file here, not stdout");
  poly->add_option("--svg", poly_svg, "write a drawing");

  // sym
  auto* sym = app.add_subcommand("sym", "plane symmetries of a stored realization");
  std::string sym_file, sym_json;
  double sym_tol = 1e-6;
  sym->add_option("-f,--file", sym_file, "realization file")->required();
  sym->add_option("--tol", sym_tol, "matching tolerance, times the diameter");
  sym->add_option("--json", sym_json, "write a JSON report");

  // render
  auto* render = app.add_subcommand("render", "SVG drawing of a stored realization");
  std::string render_file, render_out;
  render->add_option("-f,--file", render_file, "realization file")->required();
  render->add_option("-o,--output", render_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_params, gen_out);
    if (validate->parsed())
      return run_validate(validate_params, validate_file, validate_method, validate_json);
    if (locus->parsed()) return run_locus(locus_n, locus_svg, locus_json);
    if (iso->parsed()) return run_iso(iso_params, iso_deep, iso_json);
    if (classify->parsed()) return run_classify(classify_n, classify_json);
    if (aut->parsed()) return run_aut(aut_params, aut_file, aut_brute, aut_dual, aut_json);
    if (realize->parsed())
      return run_realize(realize_n, realize_tol, realize_slope, realize_spacing, realize_json,
                         realize_svg);
    if (poly->parsed())
      return run_polycyclic(poly_params, poly_file, poly_fold, poly_restarts, poly_seed,
                            poly_tol, poly_json, poly_svg);
    if (sym->parsed()) return run_sym(sym_file, sym_tol, sym_json);
    if (render->parsed()) return run_render(render_file, render_out);
  } catch (const cfg3::ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
