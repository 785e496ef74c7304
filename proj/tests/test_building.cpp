#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "asdim/building.hpp"
#include "corrupted_building.hpp"

using namespace asdim;
using asdim::testing::CorruptedBuilding;

namespace {

std::set<ChamberId> as_set(const ChamberSet& x) { return {x.begin(), x.end()}; }

ChamberSet all_chambers(const ChamberComplex& bld, std::size_t radius) {
  return chamber_ball(bld, bld.base(), radius).chambers;
}

void check_gate_property(const ChamberComplex& bld, const ChamberSet& sample) {
  const CoxeterSystem& sys = bld.coxeter();
  for (ChamberId c : sample) {
    for (ChamberId x : sample) {
      for (GeneratorId s = 0; s < sys.rank(); ++s) {
        const ChamberSet pan = bld.panel(x, s);
        std::size_t best = SIZE_MAX;
        std::size_t count = 0;
        ChamberId gate{};
        for (ChamberId p : pan) {
          const std::size_t d = bld.gallery_distance(c, p);
          if (d < best) {
            best = d;
            count = 1;
            gate = p;
          } else if (d == best) {
            ++count;
          }
        }
        REQUIRE(count == 1);
        for (ChamberId p : pan) {
          CHECK(bld.w_distance(c, p) == sys.multiply(bld.w_distance(c, gate), bld.w_distance(gate, p)));
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("thin building") {
  const CoxeterSystem a2 = CoxeterSystem::dihedral(3);
  const BuildingPtr thin = thin_building(a2);
  const ChamberId s = thin_chamber(*thin, a2.element({0}));
  const ChamberId st = thin_chamber(*thin, a2.element({0, 1}));
  CHECK(thin->w_distance(s, st) == a2.element({1}));
  CHECK(thin->w_distance(s, s).is_identity());
  CHECK(thin->gallery_distance(thin->base(), st) == 2);

  const ChamberSet all = all_chambers(*thin, 10);
  CHECK(all.size() == 6);
  for (ChamberId c : all) {
    for (GeneratorId g = 0; g < 2; ++g) CHECK(thin->panel(c, g).size() == 2);
  }
  CHECK(check_axioms(*thin, all).ok());

  const CoxeterSystem dinf = CoxeterSystem::infinite_dihedral();
  const BuildingPtr line = thin_building(dinf);
  for (std::size_t r = 0; r <= 6; ++r) {
    CHECK(chamber_ball(*line, line->base(), r).size() == dinf.ball(dinf.identity(), r).size());
  }
  const ChamberId u = thin_chamber(*line, dinf.element({0, 1, 0}));
  const ChamberId v = thin_chamber(*line, dinf.element({1}));
  CHECK(line->w_distance(u, v) == dinf.multiply(dinf.inverse(dinf.element({0, 1, 0})), dinf.element({1})));
  CHECK_THROWS_AS(thin_chamber(*tree_building(2), dinf.identity()), InvalidArgument);
}

TEST_CASE("tree building small cases") {
  const BuildingPtr tree = tree_building(2);
  const CoxeterSystem& sys = tree->coxeter();
  const ChamberId b = tree->base();
  const ChamberSet sp = tree->panel(b, 0);
  REQUIRE(sp.size() == 3);
  CHECK(tree->panel(b, 1).size() == 3);
  for (ChamberId c : sp) {
    if (c != b) CHECK(tree->w_distance(b, c) == sys.generator(0));
  }
  CHECK(tree->gallery_distance(b, b) == 0);
  CHECK(tree->gallery_distance(b, sp[1]) == 1);
  CHECK(tree->label(b) == "B");
  CHECK_THROWS_AS(tree->w_distance(b, ChamberId{999999}), UnknownChamber);
  CHECK_THROWS_AS(tree_building(0), InvalidArgument);

  // A path crossing five vertices: walk outward alternating s, t.
  ChamberId c = b;
  for (std::size_t i = 0; i < 5; ++i) {
    const ChamberSet pan = tree->panel(c, static_cast<GeneratorId>(i % 2));
    c = pan.back();
  }
  CHECK(tree->gallery_distance(b, c) == 5);
  CHECK(tree->w_distance(b, c) == sys.element({0, 1, 0, 1, 0}));

  const Gallery g = minimal_gallery(*tree, b, c);
  CHECK(g.chambers.size() == 6);
  CHECK(g.type == Word{0, 1, 0, 1, 0});
  CHECK(is_minimal_gallery(*tree, g));

  // Two children through the same vertex are s-adjacent, not two steps apart.
  const ChamberSet tp = tree->panel(b, 1);
  CHECK(tree->w_distance(tp[1], tp[2]) == sys.generator(1));
}

TEST_CASE("tree fibres have q^l chambers") {
  for (std::size_t q : {1, 2, 3}) {
    const BuildingPtr tree = tree_building(q);
    const CoxeterSystem& sys = tree->coxeter();
    const Window w = chamber_ball(*tree, tree->base(), 6);
    std::map<Word, std::size_t> fibres;
    for (ChamberId c : w.chambers) ++fibres[tree->w_distance(tree->base(), c).word()];
    for (std::size_t l = 0; l <= 6; ++l) {
      for (GeneratorId first : {GeneratorId{0}, GeneratorId{1}}) {
        if (l == 0 && first == 1) continue;
        const Word word = l == 0 ? Word{} : alternating_word(first, 1 - first, l);
        std::size_t expected = 1;
        for (std::size_t i = 0; i < l; ++i) expected *= q;
        CHECK(fibres[word] == expected);
        CHECK(sys.element(word).length() == l);
      }
    }
  }
}

TEST_CASE("tree(1) and rab(D-inf) match their oracles") {
  const CoxeterSystem dinf = CoxeterSystem::infinite_dihedral();
  const IsomorphismResult thin = compare_windows(*tree_building(1), *thin_building(dinf), 10);
  CHECK_MESSAGE(thin.isomorphic, thin.detail);
  CHECK(thin.chambers_matched == 21);

  for (std::size_t q : {2, 3}) {
    const IsomorphismResult rab = compare_windows(*right_angled_building(dinf, {q, q}), *tree_building(q), q == 2 ? 8 : 5);
    CHECK_MESSAGE(rab.isomorphic, rab.detail);
  }
  const IsomorphismResult mismatch = compare_windows(*tree_building(2), *tree_building(3), 3);
  CHECK_FALSE(mismatch.isomorphic);
  const IsomorphismResult thin_rab = compare_windows(*right_angled_building(dinf, {1, 1}), *thin_building(dinf), 10);
  CHECK(thin_rab.isomorphic);
}

TEST_CASE("right-angled building") {
  const CoxeterSystem dd = CoxeterSystem::product(CoxeterSystem::infinite_dihedral(), CoxeterSystem::infinite_dihedral());
  const BuildingPtr rab = right_angled_building(dd, {1, 1, 2, 2});
  const ChamberSet sample = all_chambers(*rab, 3);
  for (ChamberId c : sample) {
    CHECK(rab->panel(c, 0).size() == 2);
    CHECK(rab->panel(c, 1).size() == 2);
    CHECK(rab->panel(c, 2).size() == 3);
    CHECK(rab->panel(c, 3).size() == 3);
  }
  const AxiomReport rep = check_axioms(*rab, sample, 4);
  CHECK(rep.ok());
  CHECK(rep.triples_checked > 0);

  CHECK_THROWS_AS(right_angled_building(CoxeterSystem::dihedral(3), {2, 2}), InvalidArgument);
  CHECK_THROWS_AS(right_angled_building(dd, {2, 2}), InvalidArgument);
  CHECK_THROWS_AS(right_angled_building(dd, {0, 1, 1, 1}), InvalidArgument);

  // Labels depend only on the group element, not on the order of discovery.
  const BuildingPtr a = right_angled_building(dd, {2, 2, 2, 2});
  const BuildingPtr b = right_angled_building(dd, {2, 2, 2, 2});
  const ChamberSet wa = all_chambers(*a, 3);
  const ChamberId far = a->panel(a->panel(b->base(), 3).back(), 1).back();
  std::set<std::string> la, lb;
  for (ChamberId c : wa) la.insert(a->label(c));
  (void)b->panel(b->panel(b->base(), 2).back(), 0);
  for (ChamberId c : all_chambers(*b, 3)) lb.insert(b->label(c));
  CHECK(la == lb);
  CHECK(la.count(a->label(far)) == 1);
}

TEST_CASE("product building") {
  const CoxeterSystem dinf = CoxeterSystem::infinite_dihedral();
  const BuildingPtr prod = product_building(tree_building(2), tree_building(2));
  CHECK(prod->coxeter().rank() == 4);
  const ChamberSet sample = all_chambers(*prod, 3);
  for (ChamberId c : sample) {
    for (GeneratorId s = 0; s < 4; ++s) CHECK(prod->panel(c, s).size() == 3);
  }
  CHECK(check_axioms(*prod, sample, 4).ok());
  for (ChamberId x : sample) {
    CHECK(prod->gallery_distance(prod->base(), x) == prod->w_distance(prod->base(), x).length());
  }

  const IsomorphismResult thin = compare_windows(*product_building(thin_building(dinf), thin_building(dinf)),
                                                 *thin_building(CoxeterSystem::product(dinf, dinf)), 5);
  CHECK_MESSAGE(thin.isomorphic, thin.detail);
  CHECK_THROWS_AS(product_building(nullptr, tree_building(1)), InvalidArgument);
}

TEST_CASE("fano building") {
  const BuildingPtr fano = fano_building();
  const ChamberSet all = all_chambers(*fano, 5);
  CHECK(all.size() == 21);
  std::size_t max_dist = 0;
  for (ChamberId a : all) {
    for (GeneratorId s = 0; s < 2; ++s) CHECK(fano->panel(a, s).size() == 3);
    for (ChamberId b : all) max_dist = std::max(max_dist, fano->gallery_distance(a, b));
  }
  CHECK(max_dist == 3);
  CHECK(residue_chambers(*fano, fano->base(), 0b11).size() == 21);
  CHECK(residue_chambers(*fano, fano->base(), 0).size() == 1);
  CHECK(as_set(residue_chambers(*fano, fano->base(), 0b01)) == as_set(fano->panel(fano->base(), 0)));

  const AxiomReport rep = check_axioms(*fano, all, 4);
  CHECK(rep.ok());
  CHECK(rep.pairs_checked == 21 * 21);
  CHECK(rep.triples_checked == 21 * 21 * 4);
  CHECK(fano->label(fano->base()) == "p0L0");
}

TEST_CASE("axiom checker catches a corrupted delta") {
  const BuildingPtr fano = fano_building();
  const ChamberSet all = all_chambers(*fano, 5);
  const ChamberId a = all[0];
  const ChamberId b = all[7];
  const Element good = fano->w_distance(a, b);
  const Element bad = good.length() == 3 ? fano->coxeter().element({0}) : fano->coxeter().element({0, 1, 0});
  const CorruptedBuilding corrupted(fano, a, b, bad);
  const AxiomReport rep = check_axioms(corrupted, all);
  CHECK_FALSE(rep.ok());
  CHECK(!rep.violations.empty());

  const CoxeterSystem a2 = CoxeterSystem::dihedral(3);
  const BuildingPtr thin = thin_building(a2);
  const ChamberSet tall = all_chambers(*thin, 3);
  const CorruptedBuilding corrupted_thin(thin, tall[1], tall[4], a2.identity());
  CHECK_FALSE(check_axioms(corrupted_thin, tall).ok());
}

TEST_CASE("gate property on panels") {
  check_gate_property(*fano_building(), all_chambers(*fano_building(), 5));
  const BuildingPtr tree = tree_building(2);
  check_gate_property(*tree, all_chambers(*tree, 3));
}

TEST_CASE("galleries") {
  const BuildingPtr tree = tree_building(2);
  const ChamberId b = tree->base();

  const auto trivial = gallery_of_type(*tree, b, {}, b);
  REQUIRE(trivial);
  CHECK(trivial->chambers == ChamberSet{b});

  const std::vector<Gallery> st = galleries_of_type(*tree, b, {0, 1});
  CHECK(st.size() == 4);
  std::set<ChamberId> ends;
  for (const Gallery& g : st) {
    CHECK(is_minimal_gallery(*tree, g));
    ends.insert(g.chambers.back());
    const auto again = gallery_of_type(*tree, b, {0, 1}, g.chambers.back());
    REQUIRE(again);
    CHECK(*again == g);
  }
  CHECK(ends.size() == 4);
  CHECK_FALSE(gallery_of_type(*tree, b, {1, 0}, st[0].chambers.back()));
  CHECK_THROWS_AS(galleries_of_type(*tree, b, {0, 0}), InvalidArgument);

  const ChamberSet sample = all_chambers(*tree, 4);
  for (ChamberId x : sample) {
    const Gallery g = minimal_gallery(*tree, b, x);
    CHECK(g.length() == tree->gallery_distance(b, x));
    CHECK(g.type == tree->w_distance(b, x).word());
    CHECK(is_minimal_gallery(*tree, g));
    const auto all = enumerate_minimal_galleries(*tree, b, x);
    REQUIRE(all.size() == 1);
    CHECK(all[0] == g);
  }

  // Thin building: the minimal gallery walks the prefixes of the canonical word.
  const CoxeterSystem aff = CoxeterSystem::affine_a2();
  const BuildingPtr thin = thin_building(aff);
  const Element w = aff.element({0, 1, 2, 0, 1});
  const Gallery g = minimal_gallery(*thin, thin->base(), thin_chamber(*thin, w));
  Word prefix;
  for (std::size_t i = 0; i < g.type.size(); ++i) {
    CHECK(g.chambers[i] == thin_chamber(*thin, aff.element(prefix)));
    prefix.push_back(w.word()[i]);
  }
  CHECK(g.chambers.back() == thin_chamber(*thin, w));
  CHECK(enumerate_minimal_galleries(*thin, thin->base(), thin_chamber(*thin, w)).size() ==
        aff.reduced_words(w).size());

  // Fano: every pair at distance 3 has two minimal galleries, one per reduced word.
  const BuildingPtr fano = fano_building();
  for (ChamberId x : all_chambers(*fano, 5)) {
    const std::size_t expected = fano->gallery_distance(fano->base(), x) == 3 ? 2 : 1;
    CHECK(enumerate_minimal_galleries(*fano, fano->base(), x).size() == expected);
  }
}

TEST_CASE("thicken, neighborhood and components") {
  const CoxeterSystem dinf = CoxeterSystem::infinite_dihedral();
  const BuildingPtr thin = thin_building(dinf);
  const ChamberId w = thin_chamber(*thin, dinf.element({0, 1}));
  const ChamberSet tw = thicken(*thin, {w});
  CHECK(as_set(tw) == std::set<ChamberId>{w, thin_chamber(*thin, dinf.element({0})),
                                          thin_chamber(*thin, dinf.element({0, 1, 0}))});
  CHECK(thicken(*thin, {}).empty());
  CHECK(neighborhood(*thin, {}).empty());
  CHECK(as_set(neighborhood(*thin, {thin->base()})) ==
        std::set<ChamberId>{thin->base(), thin_chamber(*thin, dinf.element({0})),
                            thin_chamber(*thin, dinf.element({1}))});

  const BuildingPtr tree = tree_building(2);
  const ChamberId b = tree->base();
  CHECK(thicken(*tree, {b}).size() == 5);
  CHECK(neighborhood(*tree, {b}).size() == 5);

  // T(X) contains X and lies in N(X) for trees, where residues are panels.
  const ChamberSet x = {b, tree->panel(tree->panel(b, 0)[1], 1)[2]};
  const std::set<ChamberId> t = as_set(thicken(*tree, x));
  const std::set<ChamberId> n = as_set(neighborhood(*tree, x));
  for (ChamberId c : x) CHECK(t.count(c) == 1);
  for (ChamberId c : t) CHECK(n.count(c) == 1);

  // Fibre of st splits into q branches of q chambers.
  ChamberSet fibre;
  for (ChamberId c : all_chambers(*tree, 2)) {
    if (tree->w_distance(b, c) == tree->coxeter().element({0, 1})) fibre.push_back(c);
  }
  REQUIRE(fibre.size() == 4);
  const auto comps = components(*tree, fibre);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() == 2);
  CHECK(comps[1].size() == 2);

  CHECK(components(*tree, {b, tree->panel(b, 0)[1]}).size() == 1);
  const ChamberId far = tree->panel(tree->panel(b, 0)[1], 1)[1];
  CHECK(components(*tree, {b, far}).size() == 2);
  CHECK(components(*tree, {}).empty());

  const BuildingPtr fano = fano_building();
  CHECK(thicken(*fano, {fano->base()}).size() == 21);
}

TEST_CASE("panel adjacency is delta s") {
  std::vector<BuildingPtr> blds{tree_building(3), fano_building(),
                                right_angled_building(CoxeterSystem::infinite_dihedral(), {2, 4}),
                                thin_building(CoxeterSystem::affine_a2())};
  for (const BuildingPtr& bld : blds) {
    for (ChamberId c : all_chambers(*bld, 3)) {
      for (GeneratorId s = 0; s < bld->coxeter().rank(); ++s) {
        for (ChamberId p : bld->panel(c, s)) {
          if (p == c) continue;
          CHECK(bld->w_distance(c, p) == bld->coxeter().generator(s));
        }
      }
    }
  }
}

TEST_CASE("ball caps fail loudly") {
  const BuildingPtr tree = tree_building(3);
  CHECK_THROWS_AS(chamber_ball(*tree, tree->base(), 20, 1000), ResourceLimit);
  CHECK_THROWS_AS(residue_chambers(*tree, tree->base(), 0b11, 500), ResourceLimit);
}
