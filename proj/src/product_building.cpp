#include "asdim/building.hpp"
#include "interner.hpp"

namespace asdim {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<ChamberId, ChamberId>& p) const noexcept {
    const auto a = static_cast<std::uint64_t>(p.first);
    const auto b = static_cast<std::uint64_t>(p.second);
    return std::hash<std::uint64_t>{}(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x7F4A7C15ULL + (a << 6)));
  }
};

class ProductBuilding final : public ChamberComplex {
 public:
  ProductBuilding(BuildingPtr first, BuildingPtr second)
      : first_(std::move(first)),
        second_(std::move(second)),
        sys_(CoxeterSystem::product(first_->coxeter(), second_->coxeter())),
        split_(first_->coxeter().rank()) {
    base_ = chambers_.intern({first_->base(), second_->base()});
  }

  const CoxeterSystem& coxeter() const override { return sys_; }
  ChamberId base() const override { return base_; }
  bool contains(ChamberId c) const override { return chambers_.contains(c); }

  Element w_distance(ChamberId a, ChamberId b) const override {
    const auto [a1, a2] = chambers_.key(a);
    const auto [b1, b2] = chambers_.key(b);
    Word w = first_->w_distance(a1, b1).word();
    const Element tail = second_->w_distance(a2, b2);
    for (GeneratorId s : tail.word()) w.push_back(static_cast<GeneratorId>(s + split_));
    return sys_.element(w);
  }

  std::size_t gallery_distance(ChamberId a, ChamberId b) const override {
    const auto [a1, a2] = chambers_.key(a);
    const auto [b1, b2] = chambers_.key(b);
    return first_->gallery_distance(a1, b1) + second_->gallery_distance(a2, b2);
  }

  std::vector<ChamberId> panel(ChamberId c, GeneratorId s) const override {
    if (s >= sys_.rank()) throw InvalidArgument("product_building: generator out of range");
    const auto [c1, c2] = chambers_.key(c);
    std::vector<ChamberId> out;
    if (s < split_) {
      for (ChamberId p : first_->panel(c1, s)) out.push_back(chambers_.intern({p, c2}));
    } else {
      for (ChamberId p : second_->panel(c2, static_cast<GeneratorId>(s - split_))) {
        out.push_back(chambers_.intern({c1, p}));
      }
    }
    return out;
  }

  std::string label(ChamberId c) const override {
    const auto [c1, c2] = chambers_.key(c);
    return "(" + first_->label(c1) + " | " + second_->label(c2) + ")";
  }

 private:
  BuildingPtr first_;
  BuildingPtr second_;
  CoxeterSystem sys_;
  std::size_t split_;
  ChamberId base_{};
  mutable detail::Interner<std::pair<ChamberId, ChamberId>, PairHash> chambers_;
};

}  // namespace

BuildingPtr product_building(BuildingPtr first, BuildingPtr second) {
  if (!first || !second) throw InvalidArgument("product_building: null factor");
  if (first->coxeter().rank() + second->coxeter().rank() > kMaxRank) {
    throw InvalidArgument("product_building: combined rank too large");
  }
  return std::make_shared<ProductBuilding>(std::move(first), std::move(second));
}

}  // namespace asdim
