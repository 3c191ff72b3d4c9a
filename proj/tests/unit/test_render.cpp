#include <doctest.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <vector>

#include "cubecut/atlas.hpp"
#include "cubecut/errors.hpp"
#include "cubecut/render.hpp"

using namespace cubecut;

namespace {

// Minimal XML well-formedness: one root, balanced tags, quoted attributes,
// escaped text.
bool well_formed(const std::string& s, std::string& why) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  int roots = 0;
  if (s.rfind("<?xml", 0) == 0) i = s.find("?>") + 2;
  while (i < s.size()) {
    if (s[i] != '<') {
      if (s[i] == '&') {
        auto semi = s.find(';', i);
        std::string ent = s.substr(i, semi - i + 1);
        if (ent != "&amp;" && ent != "&lt;" && ent != "&gt;" && ent != "&quot;" && ent != "&apos;") {
          why = "bad entity at " + std::to_string(i);
          return false;
        }
      }
      if (stack.empty() && !std::isspace(static_cast<unsigned char>(s[i]))) {
        why = "text outside the root";
        return false;
      }
      ++i;
      continue;
    }
    auto close = s.find('>', i);
    if (close == std::string::npos) {
      why = "unterminated tag";
      return false;
    }
    std::string tag = s.substr(i + 1, close - i - 1);
    i = close + 1;
    if (!tag.empty() && tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) {
        why = "mismatched </" + tag.substr(1) + ">";
        return false;
      }
      stack.pop_back();
      continue;
    }
    bool self_closing = !tag.empty() && tag.back() == '/';
    if (self_closing) tag.pop_back();
    static const std::regex shape(R"(^[A-Za-z][\w:-]*(\s+[\w:-]+="[^"<&]*(&(amp|lt|gt|quot);[^"<&]*)*")*\s*$)");
    if (!std::regex_match(tag, shape)) {
      why = "malformed tag <" + tag.substr(0, 60) + ">";
      return false;
    }
    std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
    if (stack.empty()) ++roots;
    if (!self_closing) stack.push_back(name);
  }
  if (!stack.empty()) why = "unclosed <" + stack.back() + ">";
  if (roots != 1) why = "expected one root element";
  return stack.empty() && roots == 1;
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

// Pixel text "123.45" as an exact rational.
Rational pixel(const std::string& t) { return parse_rational(t); }

}  // namespace

TEST_CASE("xml checker rejects broken documents") {
  std::string why;
  CHECK(well_formed("<a><b x=\"1\"/></a>", why));
  CHECK_FALSE(well_formed("<a><b></a>", why));
  CHECK_FALSE(well_formed("<a x=1/>", why));
  CHECK_FALSE(well_formed("<a>&bogus;</a>", why));
  CHECK_FALSE(well_formed("<a/><b/>", why));
}

TEST_CASE("face map") {
  std::string svg = svg_face_map(default_catalog()).str();
  std::string why;
  CHECK_MESSAGE(well_formed(svg, why), why);
  CHECK(count(svg, "<polyline class=\"curve\"") == 40);
  CHECK(count(svg, "<circle class=\"point\"") == 37);
  CHECK(count(svg, "class=\"diagonal\"") == 2);
  for (int q = 0; q < 4; ++q) CHECK(count(svg, "data-quadrant=\"" + std::to_string(q) + "\"") == 10);
}

TEST_CASE("face map matches the golden file") {
  std::string golden = read_file(std::string(CUBECUT_SOURCE_DIR) + "/tests/golden/face_map.svg");
  REQUIRE_FALSE(golden.empty());
  CHECK(svg_face_map(default_catalog()).str() == golden);
  CHECK(svg_face_map(default_catalog()).str() == svg_face_map(default_catalog()).str());
}

TEST_CASE("empty catalog draws the square and diagonals") {
  SvgDocument doc = svg_face_map(Catalog{});
  CHECK(doc.elements.size() == 3);
  std::string why;
  CHECK(well_formed(doc.str(), why));
  CHECK_THROWS_AS(svg_face_map(Catalog{}, 0), DomainError);
}

TEST_CASE("stretch mode draws Q1 only") {
  std::string svg = svg_face_map(default_catalog(), 5).str();
  CHECK(count(svg, "<polyline class=\"curve\"") == 10);
  // Eight intersection points, the Q1 corner and the center (off the canvas).
  CHECK(count(svg, "<circle class=\"point\"") == 10);
  std::string why;
  CHECK_MESSAGE(well_formed(svg, why), why);
}

TEST_CASE("property: polyline samples lie within half a pixel of a curve root") {
  std::string svg = svg_face_map(default_catalog()).str();
  std::regex line_re(R"re(data-quadrant="(\d)" data-quadruple="(\d+)"[^>]*points="([^"]*)")re");
  std::regex pt_re(R"((-?[\d.]+),(-?[\d.]+))");
  const Rational half_pixel = ratio(1, 200);
  int polylines = 0, points = 0;
  for (std::sregex_iterator it(svg.begin(), svg.end(), line_re), end; it != end; ++it) {
    int quadrant = std::stoi((*it)[1]);
    const BivarPoly& poly = atlas_entry(SiteSet::parse((*it)[2].str())).poly;
    std::string pts = (*it)[3];
    int k = 0;
    for (std::sregex_iterator p(pts.begin(), pts.end(), pt_re); p != end; ++p, ++k) {
      if (k % 7 != 0) continue;  // every seventh sample keeps the test quick
      FacePoint f{pixel((*p)[1]) / 100, 4 - pixel((*p)[2]) / 100};
      FacePoint q = rotate(f, (4 - quadrant) % 4);
      UniPoly row = poly.at_y(q.y);
      CHECK(sgn(row(q.x - half_pixel)) * sgn(row(q.x + half_pixel)) <= 0);
      ++points;
    }
    ++polylines;
  }
  CHECK(polylines == 40);
  CHECK(points > 1000);
}

TEST_CASE("unfolding drawings") {
  std::string why;
  std::string a = svg_unfolding({ratio(3, 2), ratio(1, 2)}).str();
  CHECK_MESSAGE(well_formed(a, why), why);
  CHECK(count(a, "class=\"vertex\"") == 6);
  CHECK(count(a, "class=\"cut\"") == 13);
  CHECK(count(a, "class=\"site\"") == 8);
  CHECK(count(a, "class=\"corner\"") == 8);

  std::string f = svg_unfolding({ratio(4, 5), ratio(8, 5)}).str();
  CHECK(count(f, "class=\"vertex degree4\"") == 2);

  // P = (0, 0) is fixed by y -> -y, so the drawing is mirror symmetric.
  SvgDocument z = svg_unfolding({Rational(0), Rational(0)});
  std::multiset<std::pair<std::string, std::string>> ends, mirrored;
  std::regex cut_re(R"re(class="cut"[^>]*x1="([^"]*)" y1="([^"]*)" x2="([^"]*)" y2="([^"]*)")re");
  auto mirror = [](const std::string& y) { return to_double(800 - parse_rational(y)); };
  for (const auto& e : z.elements) {
    std::smatch m;
    if (!std::regex_search(e, m, cut_re)) continue;
    for (int k : {1, 3}) {
      ends.insert({m[k], m[k + 1]});
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", mirror(m[k + 1]));
      mirrored.insert({m[k], buf});
    }
  }
  CHECK(ends.size() >= 10);
  CHECK(ends == mirrored);
}

TEST_CASE("tree drawings") {
  std::string why;
  std::string a = svg_tree(fixture_tree("region_A")).str();
  CHECK_MESSAGE(well_formed(a, why), why);
  CHECK(count(a, "class=\"labeled\"") == 8);
  CHECK(count(a, "class=\"label\"") == 8);

  LabeledTree dot;
  dot.add_vertex(5);
  std::string d = svg_tree(dot).str();
  CHECK(count(d, "class=\"labeled\"") == 1);
  CHECK(count(d, ">5</text>") == 1);
  CHECK(well_formed(d, why));

  std::string c = svg_tree(fixture_tree("point_corner")).str();
  CHECK(count(c, "class=\"labeled\"") == 7);
  CHECK(count(c, "class=\"edge\"") == 6);
  CHECK(count(c, ">2</text>") == 1);
}
