#include "asdim/building.hpp"
#include "interner.hpp"

namespace asdim {

namespace {

class ThinBuilding final : public ChamberComplex {
 public:
  explicit ThinBuilding(CoxeterSystem sys) : sys_(std::move(sys)) { base_ = chambers_.intern(sys_.identity()); }

  const CoxeterSystem& coxeter() const override { return sys_; }
  ChamberId base() const override { return base_; }
  bool contains(ChamberId c) const override { return chambers_.contains(c); }

  Element w_distance(ChamberId a, ChamberId b) const override {
    return sys_.multiply(sys_.inverse(chambers_.key(a)), chambers_.key(b));
  }
  std::size_t gallery_distance(ChamberId a, ChamberId b) const override {
    return sys_.delta_w(chambers_.key(a), chambers_.key(b));
  }

  std::vector<ChamberId> panel(ChamberId c, GeneratorId s) const override {
    const Element w = chambers_.key(c);
    const Element ws = sys_.multiply(w, s);
    const ChamberId other = chambers_.intern(ws);
    return ws < w ? std::vector<ChamberId>{other, c} : std::vector<ChamberId>{c, other};
  }

  std::string label(ChamberId c) const override { return word_to_string(chambers_.key(c).word()); }

  ChamberId chamber(const Element& w) const { return chambers_.intern(w); }

 private:
  CoxeterSystem sys_;
  ChamberId base_{};
  mutable detail::Interner<Element, ElementHash> chambers_;
};

}  // namespace

BuildingPtr thin_building(const CoxeterSystem& sys) { return std::make_shared<ThinBuilding>(sys); }

ChamberId thin_chamber(const ChamberComplex& thin, const Element& w) {
  const auto* t = dynamic_cast<const ThinBuilding*>(&thin);
  if (!t) throw InvalidArgument("thin_chamber: not a thin building");
  return t->chamber(w);
}

}  // namespace asdim
