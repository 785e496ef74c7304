#include <algorithm>
#include <array>

#include "asdim/building.hpp"

namespace asdim {

namespace {

constexpr std::array<std::array<int, 3>, 7> kLines{{
    {0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}};

bool on_line(int point, int line) {
  const auto& l = kLines[static_cast<std::size_t>(line)];
  return std::find(l.begin(), l.end(), point) != l.end();
}

// Chambers are the 21 incident point-line flags. Generator 0 changes the
// line through a fixed point, generator 1 the point on a fixed line.
class FanoBuilding final : public ChamberComplex {
 public:
  FanoBuilding() : sys_(CoxeterSystem::dihedral(3)) {
    for (int p = 0; p < 7; ++p) {
      for (int l = 0; l < 7; ++l) {
        if (on_line(p, l)) flags_.push_back({p, l});
      }
    }
  }

  const CoxeterSystem& coxeter() const override { return sys_; }
  ChamberId base() const override { return ChamberId{0}; }
  bool contains(ChamberId c) const override { return static_cast<std::size_t>(c) < flags_.size(); }

  Element w_distance(ChamberId a, ChamberId b) const override {
    const auto [p, l] = flag(a);
    const auto [p2, l2] = flag(b);
    if (p == p2 && l == l2) return sys_.identity();
    if (p == p2) return sys_.element({0});
    if (l == l2) return sys_.element({1});
    if (on_line(p, l2)) return sys_.element({0, 1});  // rotate the line about p, then move the point
    if (on_line(p2, l)) return sys_.element({1, 0});
    return sys_.element({0, 1, 0});
  }

  std::vector<ChamberId> panel(ChamberId c, GeneratorId s) const override {
    if (s > 1) throw InvalidArgument("fano_building: generator out of range");
    const auto [p, l] = flag(c);
    std::vector<ChamberId> out;
    for (std::size_t i = 0; i < flags_.size(); ++i) {
      const bool same = s == 0 ? flags_[i][0] == p : flags_[i][1] == l;
      if (same) out.push_back(ChamberId{i});
    }
    return out;
  }

  std::string label(ChamberId c) const override {
    const auto [p, l] = flag(c);
    return "p" + std::to_string(p) + "L" + std::to_string(l);
  }

 private:
  std::array<int, 2> flag(ChamberId c) const {
    const auto i = static_cast<std::size_t>(c);
    if (i >= flags_.size()) throw UnknownChamber("fano_building: unknown chamber " + std::to_string(i));
    return flags_[i];
  }

  CoxeterSystem sys_;
  std::vector<std::array<int, 2>> flags_;
};

}  // namespace

BuildingPtr fano_building() { return std::make_shared<FanoBuilding>(); }

}  // namespace asdim
