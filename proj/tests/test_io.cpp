#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asdim/io.hpp"

using namespace asdim;

namespace {

Json tree_descriptor(std::size_t q) { return {{"kind", "tree"}, {"q", q}}; }

std::size_t tree_window_count(std::size_t q, std::size_t r) {
  std::size_t total = 1, power = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    power *= q;
    total += 2 * power;
  }
  return total;
}

}  // namespace

TEST_CASE("coxeter json") {
  const CoxeterSystem aff = CoxeterSystem::affine_a2();
  const Json j = coxeter_to_json(aff.matrix());
  CHECK(j["rank"] == 3);
  CHECK(coxeter_from_json(j) == aff.matrix());
  CHECK(coxeter_to_json(CoxeterSystem::infinite_dihedral().matrix())["m"][0][1] == 0);
  CHECK(coxeter_by_name("B2").m(0, 1) == 4);
  CHECK(coxeter_by_name("I2(5)").m(0, 1) == 5);
  CHECK(coxeter_by_name("Dinf^2").rank() == 4);
  CHECK(parse_coxeter(Json("A2")).matrix() == CoxeterSystem::dihedral(3).matrix());
  CHECK_THROWS_AS(coxeter_by_name("E9"), InvalidArgument);
  CHECK_THROWS_AS(coxeter_from_json(Json{{"rank", 2}, {"m", {{1, 3}, {2, 1}}}}), InvalidArgument);
  CHECK_THROWS_AS(coxeter_from_json(Json{{"rank", 2}, {"m", {{1, 3}}}}), InvalidArgument);
  CHECK_THROWS_AS(coxeter_from_json(Json{{"m", {{1}}}}), InvalidArgument);
}

TEST_CASE("building descriptors") {
  CHECK(make_building(tree_descriptor(2))->panel(ChamberId{0}, 0).size() == 3);
  CHECK(make_building({{"kind", "fano"}})->coxeter().rank() == 2);
  CHECK(make_building({{"kind", "thin"}, {"coxeter", "A2"}})->coxeter().rank() == 2);
  const BuildingPtr rab = make_building({{"kind", "rab"}, {"coxeter", "Dinf^2"}, {"params", {2, 2, 3, 3}}});
  CHECK(rab->panel(rab->base(), 2).size() == 4);
  const BuildingPtr prod =
      make_building({{"kind", "product"}, {"first", tree_descriptor(2)}, {"second", {{"kind", "thin"}, {"coxeter", "Dinf"}}}});
  CHECK(prod->coxeter().rank() == 4);
  CHECK_THROWS_AS(make_building({{"kind", "torus"}}), InvalidArgument);
  CHECK_THROWS_AS(make_building({{"kind", "tree"}}), InvalidArgument);
  CHECK_THROWS_AS(make_building({{"kind", "tree"}, {"q", -1}}), InvalidArgument);
  CHECK_THROWS_AS(make_building({{"kind", "rab"}, {"coxeter", "A2"}, {"params", {2, 2}}}), InvalidArgument);
  CHECK_THROWS_AS(make_building(Json::array()), InvalidArgument);
}

TEST_CASE("window export round trip") {
  for (std::size_t q : {1, 2, 3}) {
    const BuildingPtr tree = make_building(tree_descriptor(q));
    const Window w = chamber_ball(*tree, tree->base(), 3);
    const Json j = window_to_json(*tree, w, tree_descriptor(q));
    CHECK(j["chamber_count"] == tree_window_count(q, 3));
    const WindowData parsed = window_from_json(Json::parse(dump_json(j)));
    CHECK(parsed.chambers.size() == tree_window_count(q, 3));
    CHECK(check_window(parsed).empty());
  }
  const Json a2{{"kind", "thin"}, {"coxeter", "A2"}};
  const BuildingPtr thin = make_building(a2);
  CHECK(window_to_json(*thin, chamber_ball(*thin, thin->base(), 10), a2)["chamber_count"] == 6);
  CHECK(window_to_json(*thin, chamber_ball(*thin, thin->base(), 0), a2)["chamber_count"] == 1);

  const Json rd{{"kind", "rab"}, {"coxeter", "Dinf^2"}, {"params", {2, 2, 3, 3}}};
  const BuildingPtr rab = make_building(rd);
  const WindowData rw = window_from_json(window_to_json(*rab, chamber_ball(*rab, rab->base(), 3), rd));
  CHECK(check_window(rw).empty());
  const BuildingPtr fano = fano_building();
  CHECK(check_window(window_from_json(window_to_json(*fano, chamber_ball(*fano, fano->base(), 3), {{"kind", "fano"}})))
            .empty());
}

TEST_CASE("window checks catch corruption") {
  const BuildingPtr tree = tree_building(2);
  const Json good = window_to_json(*tree, chamber_ball(*tree, tree->base(), 3), tree_descriptor(2));

  Json bad_fold = good;
  bad_fold["chambers"][5]["fold"] = Json::array({0, 1, 0, 1});
  CHECK_FALSE(check_window(window_from_json(bad_fold)).empty());

  Json bad_panel = good;
  bad_panel["chambers"][1]["panels"][0] = Json::array({1});
  CHECK_FALSE(check_window(window_from_json(bad_panel)).empty());

  Json bad_depth = good;
  bad_depth["chambers"][2]["depth"] = 3;
  CHECK_FALSE(check_window(window_from_json(bad_depth)).empty());

  Json bad_ref = good;
  bad_ref["chambers"][2]["panels"][0] = Json::array({9999});
  CHECK_THROWS_AS(window_from_json(bad_ref), InvalidArgument);
  Json bad_count = good;
  bad_count["chamber_count"] = 3;
  CHECK_THROWS_AS(window_from_json(bad_count), InvalidArgument);
}

TEST_CASE("cover and report round trip") {
  const BuildingPtr tree = tree_building(2);
  const FoldingMap fm(tree);
  const Window w = chamber_ball(*tree, tree->base(), 6);
  const LiftedCover lc = build_lifted_cover(fm, interval_cover(tree->coxeter(), 2, 6), 6, {});
  const Json cj = cover_to_json(lc, w, tree_descriptor(2));
  const std::string text = dump_json(cj);
  const LiftedCover back = cover_from_json(Json::parse(text), w, tree->coxeter());
  CHECK(dump_json(cover_to_json(back, w, tree_descriptor(2))) == text);
  REQUIRE(back.families.size() == lc.families.size());
  for (std::size_t i = 0; i < lc.families.size(); ++i) {
    REQUIRE(back.families[i].size() == lc.families[i].size());
    for (std::size_t k = 0; k < lc.families[i].size(); ++k) {
      CHECK(back.families[i][k].chambers == lc.families[i][k].chambers);
      CHECK(back.families[i][k].source == lc.families[i][k].source);
    }
  }

  const CoverReport r1 = verify_cover(*tree, lc, w, 2);
  const CoverReport r2 = verify_cover(*tree, back, w, 2);
  CHECK(dump_json(report_to_json(r1)) == dump_json(report_to_json(r2)));
  const Json rj = report_to_json(r1);
  CHECK(rj["covered"] == true);
  CHECK(rj["ok"] == true);
  const std::string csv = report_to_csv(r1);
  CHECK(csv.rfind("color,index,size,diameter\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r1.sets.size() + 1);

  // Same-color sets sit 2d+1 apart in the apartment, so d' = 2d+2 must fail.
  CHECK(verify_cover(*tree, back, w, 4).ok());
  CHECK_FALSE(verify_cover(*tree, back, w, 6).ok());

  Json missing = cj;
  missing["families"][0][0]["chambers"].erase(0);
  const CoverReport holes = verify_cover(*tree, cover_from_json(missing, w, tree->coxeter()), w, 2);
  CHECK_FALSE(holes.covered);
  CHECK(holes.uncovered.size() == 1);

  Json wrong_color = cj;
  wrong_color["families"][0][0]["source"]["color"] = 1;
  CHECK_THROWS_AS(cover_from_json(wrong_color, w, tree->coxeter()), InvalidArgument);
  Json outside = cj;
  outside["families"][0][0]["chambers"].push_back(w.size());
  CHECK_THROWS_AS(cover_from_json(outside, w, tree->coxeter()), InvalidArgument);
}

TEST_CASE("dot export") {
  const BuildingPtr tree = tree_building(2);
  const Window w0 = chamber_ball(*tree, tree->base(), 0);
  const std::string single = window_to_dot(*tree, w0);
  CHECK(std::count(single.begin(), single.end(), '[') == 2);
  CHECK(single.find("--") == std::string::npos);

  const Window w2 = chamber_ball(*tree, tree->base(), 2);
  const std::string dot = window_to_dot(*tree, w2);
  CHECK(dot.find("graph window {") == 0);
  CHECK(dot.find("doublecircle") != std::string::npos);
  // Each full panel of 3 chambers is a triangle; count edges by type.
  std::size_t edges = 0;
  for (std::size_t pos = dot.find("--"); pos != std::string::npos; pos = dot.find("--", pos + 2)) ++edges;
  std::size_t expected = 0;
  for (std::size_t i = 0; i < w2.size(); ++i) {
    for (GeneratorId s = 0; s < 2; ++s) {
      for (ChamberId p : tree->panel(w2.chambers[i], s)) {
        const auto it = std::find(w2.chambers.begin(), w2.chambers.end(), p);
        if (it != w2.chambers.end() && static_cast<std::size_t>(it - w2.chambers.begin()) > i) ++expected;
      }
    }
  }
  CHECK(edges == expected);

  const FoldingMap fm(tree);
  const LiftedCover lc = build_lifted_cover(fm, interval_cover(tree->coxeter(), 1, 2), 2, {});
  const std::string colored = window_to_dot(*tree, w2, &lc);
  CHECK(static_cast<std::size_t>(std::count(colored.begin(), colored.end(), '\n')) == w2.size() + expected + 3);
  CHECK(colored.find("fillcolor") != std::string::npos);
}

TEST_CASE("gallery json") {
  const CoxeterSystem a2 = CoxeterSystem::dihedral(3);
  const BuildingPtr thin = thin_building(a2);
  const Gallery g = minimal_gallery(*thin, thin->base(), thin_chamber(*thin, a2.element({0, 1, 0})));
  const Json j = gallery_to_json(*thin, g);
  CHECK(j["type"] == Json::array({0, 1, 0}));
  CHECK(j["length"] == 3);
  CHECK(j["chambers"].size() == 4);
}
