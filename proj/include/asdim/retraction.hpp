#pragma once

#include <vector>

#include "asdim/building.hpp"

namespace asdim {

/// The folding map pi(c) = delta(B, c) onto the fundamental apartment.
class FoldingMap {
 public:
  explicit FoldingMap(BuildingPtr bld);
  FoldingMap(BuildingPtr bld, ChamberId base);

  const ChamberComplex& building() const { return *bld_; }
  const BuildingPtr& building_ptr() const { return bld_; }
  const CoxeterSystem& coxeter() const { return bld_->coxeter(); }
  ChamberId base() const { return base_; }

  Element fold(ChamberId c) const { return bld_->w_distance(base_, c); }
  std::vector<Element> fold_all(const ChamberSet& chambers, std::size_t workers = 1) const;

 private:
  BuildingPtr bld_;
  ChamberId base_;
};

/// Members of the window whose fold lies in u, in window order.
ChamberSet preimage(const FoldingMap& fm, const std::vector<Element>& u, const ChamberSet& window);

/// A minimal gallery from the base to c whose type begins with gamma. Built
/// from the canonical minimal gallery by lifting the braid moves that turn its
/// type into gamma followed by the canonical word of gamma^-1 fold(c).
Gallery lift_with_prefix(const FoldingMap& fm, ChamberId c, const Word& gamma);

/// Applies a braid move to the type of a minimal gallery, keeping the chambers
/// outside the moved rank-2 stretch.
Gallery lift_braid_move(const ChamberComplex& bld, const Gallery& g, const BraidMove& move);

ChamberId prefix_chamber(const Gallery& g, std::size_t k);

/// The chamber at position |gamma| on the gamma-prefixed lift of any member of
/// v. Computed for every member; throws Error if the members disagree.
ChamberId component_gate(const FoldingMap& fm, const ChamberSet& v, const Word& gamma, std::size_t workers = 1);

}  // namespace asdim
