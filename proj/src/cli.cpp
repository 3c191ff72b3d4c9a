#include "cubecut/cli.hpp"

#include <algorithm>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubecut/atlas.hpp"
#include "cubecut/cut_locus.hpp"
#include "cubecut/decomposition.hpp"
#include "cubecut/errors.hpp"
#include "cubecut/render.hpp"

namespace cubecut {

namespace {

struct Options {
  bool json = false;
  bool all = false;
  std::string svg;
  int grid = 256;
  int samples = -1;
  std::uint64_t seed = 0;
  int stretch = 1;
  std::vector<std::string> coords;
  std::vector<int> quadruple;
  std::string y;
  std::string tree;
};

FacePoint point_arg(const Options& o) {
  return {parse_rational(o.coords.at(0)), parse_rational(o.coords.at(1))};
}

void emit_svg(const SvgDocument& doc, const Options& o, std::ostream& out) {
  if (o.svg.empty()) {
    out << doc.str();
    return;
  }
  std::ofstream f(o.svg, std::ios::binary);
  if (!f) throw DomainError("cannot write " + o.svg);
  f << doc.str();
  out << "wrote " << o.svg << '\n';
}

std::string region_or_state(const TripleSet& t) {
  auto n = region_name(t);
  return n ? *n : t.to_string();
}

int cmd_point(const Options& o, std::ostream& out) {
  FacePoint p = point_arg(o);
  if (!in_face(p)) throw DomainError("point is outside the face [0,8] x [-4,4]");
  if (is_face_corner(p)) throw DomainError("face corners have no cut locus in this model; use classify");
  auto [q1, quadrant] = reduce_to_q1(p);
  CutLocusGraph g = compute_cut_locus(q1);
  OracleReport oracle = oracle_check(g);
  if (o.json) {
    nlohmann::json j = to_json(g);
    j["input"] = {to_string(p.x), to_string(p.y)};
    j["quadrant"] = quadrant;
    j["internal_vertices"] = std::count_if(g.vertices.begin(), g.vertices.end(), [](const CutVertex& v) { return !v.corner; });
    j["canonical"] = canonical_form(to_labeled_tree(g)).text;
    j["oracle"] = to_json(oracle);
    out << j.dump(2) << '\n';
  } else {
    out << "point (" << to_string(p.x) << ", " << to_string(p.y) << ") reduces to (" << to_string(q1.x) << ", "
        << to_string(q1.y) << ") in quadrant " << quadrant << '\n';
    for (const auto& v : g.vertices) {
      out << "  vertex " << v.sites.to_string() << " at (" << to_string(v.pos.v) << ", " << to_string(v.pos.w)
          << ") degree " << v.degree;
      if (v.corner) out << " corner " << *v.corner;
      out << '\n';
    }
    for (const auto& e : g.edges) out << "  edge " << e.site_a << e.site_b << ": " << e.from << " - " << e.to << '\n';
    out << "oracle " << (oracle.clean ? "clean" : "VIOLATED") << '\n';
  }
  return oracle.clean ? 0 : 1;
}

int cmd_classify(const Options& o, std::ostream& out) {
  FacePoint p = point_arg(o);
  Classification c = classify(p);
  const Catalog& cat = default_catalog();
  check_against(cat, c);
  std::string cid = cat.class_id(c.cls.canonical);
  if (o.json) {
    out << nlohmann::json{{"cell", to_json(c.id)},
                          {"class_id", cid},
                          {"canonical", c.cls.canonical.text},
                          {"degree3", c.cls.degree3_count},
                          {"degree4", c.cls.degree4_count},
                          {"tree", serialize_tree(c.tree)}}
               .dump(2)
        << '\n';
  } else {
    out << c.id.to_string() << "  " << cid << "  " << c.cls.canonical.text << '\n';
  }
  return 0;
}

int cmd_derive(const Options& o, std::ostream& out) {
  std::set<int> members(o.quadruple.begin(), o.quadruple.end());
  if (o.quadruple.size() != 4 || members.size() != 4 || *members.begin() < 1 || *members.rbegin() > 8) {
    throw DomainError("derive needs four distinct sites in 1..8");
  }
  SiteSet q(std::initializer_list<int>{o.quadruple[0], o.quadruple[1], o.quadruple[2], o.quadruple[3]});
  BivarPoly derived = derive_for(q);
  nlohmann::json j{{"quadruple", q.to_string()}, {"derived", derived.to_string()}};
  auto entry = std::find_if(builtin_atlas().begin(), builtin_atlas().end(), [&](const AtlasEntry& e) { return e.quadruple == q; });
  if (entry != builtin_atlas().end()) {
    j["atlas"] = entry->poly.to_string();
    auto factor = divide_up_to_scalar(derived, entry->poly);
    j["extraneous_factor"] = factor ? nlohmann::json(factor->primitive().to_string()) : nlohmann::json(nullptr);
  }
  if (o.json) {
    out << j.dump(2) << '\n';
  } else {
    out << "derived " << q.to_string() << ": " << j["derived"].get<std::string>() << '\n';
    if (j.contains("atlas")) {
      out << "atlas: " << j["atlas"].get<std::string>() << '\n';
      out << "extraneous factor: " << (j["extraneous_factor"].is_null() ? "none (no divisibility)" : j["extraneous_factor"].get<std::string>())
          << '\n';
    }
  }
  return entry == builtin_atlas().end() || !j["extraneous_factor"].is_null() ? 0 : 1;
}

int cmd_atlas(const Options& o, std::ostream& out) {
  nlohmann::json j;
  for (const auto& e : builtin_atlas()) {
    j["curves"].push_back({{"name", e.curve_name}, {"quadruple", e.quadruple.to_string()}, {"poly", e.poly.to_string()}, {"reflected", e.reflected}});
  }
  std::optional<RegionWalk> walk;
  if (!o.y.empty()) {
    walk = region_walk(parse_rational(o.y));
    for (auto& s : walk->steps) {
      if (!s.x.exact) s.x = refine(atlas_entry(s.quadruples[0]).poly.at_y(walk->y), s.x, ratio(1, 1000000000));
    }
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : walk->steps) {
      nlohmann::json qs = nlohmann::json::array();
      for (auto q : s.quadruples) qs.push_back(q.to_string());
      steps.push_back({{"quadruples", qs}, {"x", s.x.approx()}, {"region", region_or_state(s.state)}});
    }
    j["walk"] = {{"y", to_string(walk->y)}, {"start", region_or_state(walk->start)}, {"steps", steps}};
  }
  if (o.json) {
    out << j.dump(2) << '\n';
    return 0;
  }
  for (const auto& c : j["curves"]) {
    out << c["quadruple"].get<std::string>() << "  " << c["poly"].get<std::string>() << "  (" << c["name"].get<std::string>() << ")\n";
  }
  if (walk) {
    out << "walk at y = " << to_string(walk->y) << ": " << region_or_state(walk->start);
    for (const auto& s : walk->steps) {
      out << " -[";
      for (std::size_t i = 0; i < s.quadruples.size(); ++i) out << (i ? "," : "") << s.quadruples[i].to_string();
      out << " x~" << s.x.approx() << "]- " << region_or_state(s.state);
    }
    out << '\n';
  }
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Catalog& cat = default_catalog();
  CheckReport r = catalog_report(cat);
  if (o.json) {
    nlohmann::json j = to_json(r);
    j["catalog"] = to_json(cat);
    out << j.dump(2) << '\n';
  } else {
    const auto& n = r.details["counts"];
    out << "regions " << n["regions"] << " (" << n["region_classes"] << " classes)\n"
        << "curve portions " << n["curve_portions"] << " (" << n["curve_classes"] << " classes)\n"
        << "points " << n["points"] << " (" << n["point_classes"] << " classes)\n"
        << "cells " << n["cells"] << " (" << n["classes"] << " classes)\n"
        << "coincidence pairs " << n["coincidence_pairs"] << '\n';
    for (const auto& p : r.details["coincidences"]) out << "  " << p[0].get<std::string>() << " = " << p[1].get<std::string>() << '\n';
    if (!r.pass) {
      for (const auto& f : r.details["failures"]) out << "FAIL " << f.get<std::string>() << '\n';
    }
  }
  return r.pass ? 0 : 1;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<CheckReport> reports;
  auto guarded = [&](const std::string& name, const std::function<CheckReport()>& f) {
    try {
      reports.push_back(f());
    } catch (const Error& e) {
      CheckReport r{name, true, nlohmann::json::object()};
      r.fail(e.what());
      reports.push_back(r);
    }
  };
  guarded("derivations", [] { return verify_derivations(); });
  guarded("orderings", [] { return verify_orderings(); });
  guarded("remarkable_point", [] { return verify_remarkable_point(); });
  guarded("no_mixed_transitions", [&] { return verify_no_mixed_transitions(o.grid); });
  guarded("catalog", [] { return catalog_report(default_catalog()); });
  if (o.all) {
    int n = o.samples > 0 ? o.samples : 10000;
    guarded("equivariance", [&] { return equivariance_check(n, o.seed); });
    guarded("oracle_equivalence", [&] { return oracle_equivalence(n, o.seed); });
  }
  bool pass = std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
  if (o.json) {
    nlohmann::json j{{"pass", pass}, {"checks", nlohmann::json::array()}};
    for (const auto& r : reports) j["checks"].push_back(to_json(r));
    out << j.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << (r.pass ? "PASS " : "FAIL ") << r.name << '\n';
      if (!r.pass) {
        for (const auto& f : r.details["failures"]) out << "  " << f.get<std::string>() << '\n';
      }
    }
    out << (pass ? "all checks passed" : "verification FAILED") << '\n';
  }
  return pass ? 0 : 1;
}

LabeledTree tree_arg(const std::string& what) {
  auto names = fixture_names();
  if (std::find(names.begin(), names.end(), what) != names.end()) return fixture_tree(what);
  if (what.rfind("region ", 0) == 0 || what.rfind("curve ", 0) == 0 || what.rfind("point ", 0) == 0) {
    return default_catalog().at(parse_cell_id(what)).tree;
  }
  return parse_tree(what);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Cut loci of points on a cube face", "cutlocus"};
  app.require_subcommand(1);

  auto json_flag = [&](CLI::App* s) { s->add_flag("--json", o.json, "JSON output"); };
  auto svg_opt = [&](CLI::App* s) { s->add_option("--svg", o.svg, "write the SVG to this file instead of stdout"); };
  auto coords = [&](CLI::App* s) { s->add_option("coords", o.coords, "x and y, exact (3/2) or decimal")->expected(2)->required(); };

  auto* point = app.add_subcommand("point", "cut locus of a face point");
  coords(point);
  json_flag(point);
  auto* cls = app.add_subcommand("classify", "cell and class of a face point");
  coords(cls);
  json_flag(cls);
  auto* derive = app.add_subcommand("derive", "quadruple polynomial from the site formulas");
  derive->add_option("sites", o.quadruple, "four site indices")->expected(4)->required();
  json_flag(derive);
  auto* atlas = app.add_subcommand("atlas", "the curve table, and the region walk at y if given");
  atlas->add_option("y", o.y, "ordinate for a region walk");
  json_flag(atlas);
  auto* enumerate = app.add_subcommand("enumerate", "cell and class counts of the face decomposition");
  json_flag(enumerate);
  auto* verify = app.add_subcommand("verify", "run the verification checks");
  verify->add_flag("--all", o.all, "include the sampling checks");
  verify->add_option("--grid", o.grid, "grid size for the mixed-quadruple check")->check(CLI::Range(64, 4096));
  verify->add_option("--samples", o.samples, "random points for the sampling checks (default 10000)")->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed, "seed for the sampling checks");
  json_flag(verify);
  auto* map = app.add_subcommand("render-map", "SVG of the face decomposition");
  map->add_option("--stretch", o.stretch, "stretch x by this factor and draw Q1 only")->check(CLI::Range(1, 20));
  svg_opt(map);
  auto* unfold = app.add_subcommand("render-unfolding", "SVG of the star unfolding and cut locus of a Q1 point");
  coords(unfold);
  svg_opt(unfold);
  auto* tree = app.add_subcommand("render-tree", "SVG of a tree");
  tree->add_option("tree", o.tree, "fixture name, cell id such as 'curve BD q0', or tree text")->required();
  svg_opt(tree);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "cutlocus: " << e.what() << '\n';
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  try {
    if (point->parsed()) return cmd_point(o, out);
    if (cls->parsed()) return cmd_classify(o, out);
    if (derive->parsed()) return cmd_derive(o, out);
    if (atlas->parsed()) return cmd_atlas(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (map->parsed()) {
      emit_svg(svg_face_map(default_catalog(), o.stretch), o, out);
      return 0;
    }
    if (unfold->parsed()) {
      FacePoint p = point_arg(o);
      if (!in_q1(p)) throw DomainError("render-unfolding needs a point of Q1");
      emit_svg(svg_unfolding(p), o, out);
      return 0;
    }
    if (tree->parsed()) {
      emit_svg(svg_tree(tree_arg(o.tree)), o, out);
      return 0;
    }
  } catch (const ParseError& e) {
    err << "cutlocus: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "cutlocus: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "cutlocus: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cubecut
