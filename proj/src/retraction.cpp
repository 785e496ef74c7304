#include "asdim/retraction.hpp"

#include <unordered_set>

#include "asdim/parallel.hpp"

namespace asdim {

FoldingMap::FoldingMap(BuildingPtr bld) : bld_(std::move(bld)) {
  if (!bld_) throw InvalidArgument("FoldingMap: null building");
  base_ = bld_->base();
}

FoldingMap::FoldingMap(BuildingPtr bld, ChamberId base) : bld_(std::move(bld)), base_(base) {
  if (!bld_) throw InvalidArgument("FoldingMap: null building");
  if (!bld_->contains(base_)) throw UnknownChamber("FoldingMap: unknown base chamber");
}

std::vector<Element> FoldingMap::fold_all(const ChamberSet& chambers, std::size_t workers) const {
  std::vector<Element> out(chambers.size(), coxeter().identity());
  parallel_for(chambers.size(), workers, [&](std::size_t i) { out[i] = fold(chambers[i]); });
  return out;
}

ChamberSet preimage(const FoldingMap& fm, const std::vector<Element>& u, const ChamberSet& window) {
  const std::unordered_set<Element, ElementHash> targets(u.begin(), u.end());
  ChamberSet out;
  for (ChamberId c : window) {
    if (targets.count(fm.fold(c))) out.push_back(c);
  }
  return out;
}

Gallery lift_braid_move(const ChamberComplex& bld, const Gallery& g, const BraidMove& move) {
  const CoxeterSystem& sys = bld.coxeter();
  if (!sys.is_reduced(g.type) || g.chambers.size() != g.type.size() + 1) {
    throw InvalidArgument("lift_braid_move: gallery is not minimal");
  }
  Gallery out = g;
  out.type = sys.apply_braid_move(g.type, move);
  const ChamberId from = g.chambers[move.position];
  const ChamberId to = g.chambers[move.position + move.length];
  const Word stretch(out.type.begin() + static_cast<long>(move.position),
                     out.type.begin() + static_cast<long>(move.position + move.length));
  const auto piece = gallery_of_type(bld, from, stretch, to);
  if (!piece) throw Error("lift_braid_move: no gallery of the moved type inside the rank-2 residue");
  std::copy(piece->chambers.begin(), piece->chambers.end(), out.chambers.begin() + static_cast<long>(move.position));
  return out;
}

Gallery lift_with_prefix(const FoldingMap& fm, ChamberId c, const Word& gamma) {
  const CoxeterSystem& sys = fm.coxeter();
  if (!sys.is_reduced(gamma)) throw InvalidArgument("lift_with_prefix: gamma is not reduced");
  const Element w = fm.fold(c);
  const Element rest = sys.multiply(sys.inverse(sys.element(gamma)), w);
  if (rest.length() + gamma.size() != w.length()) {
    throw InvalidArgument("lift_with_prefix: no reduced word of fold(c) = " + word_to_string(w.word()) +
                          " begins with " + word_to_string(gamma));
  }
  Word target = gamma;
  target.insert(target.end(), rest.word().begin(), rest.word().end());

  Gallery g = minimal_gallery(fm.building(), fm.base(), c);
  for (const BraidMove& move : sys.braid_move_sequence(g.type, target)) g = lift_braid_move(fm.building(), g, move);
  return g;
}

ChamberId prefix_chamber(const Gallery& g, std::size_t k) {
  if (k >= g.chambers.size()) {
    throw InvalidArgument("prefix_chamber: position " + std::to_string(k) + " outside a gallery of " +
                          std::to_string(g.chambers.size()) + " chambers");
  }
  return g.chambers[k];
}

ChamberId component_gate(const FoldingMap& fm, const ChamberSet& v, const Word& gamma, std::size_t workers) {
  if (v.empty()) throw InvalidArgument("component_gate: empty chamber set");
  if (components(fm.building(), v).size() != 1) throw InvalidArgument("component_gate: set is not gallery-connected");
  std::vector<ChamberId> gates(v.size());
  parallel_for(v.size(), workers,
               [&](std::size_t i) { gates[i] = prefix_chamber(lift_with_prefix(fm, v[i], gamma), gamma.size()); });
  for (std::size_t i = 1; i < gates.size(); ++i) {
    if (gates[i] != gates[0]) {
      throw Error("component_gate: lifts of " + fm.building().label(v[0]) + " and " + fm.building().label(v[i]) +
                  " leave the prefix at different chambers");
    }
  }
  return gates[0];
}

}  // namespace asdim
