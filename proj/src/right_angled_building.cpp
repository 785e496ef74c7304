#include <algorithm>
#include <string_view>

#include "asdim/building.hpp"
#include "interner.hpp"

namespace asdim {

namespace {

struct Syllable {
  GeneratorId gen;
  std::uint16_t exponent;  // 1 .. order-1
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

using NormalForm = std::vector<Syllable>;

struct NormalFormHash {
  std::size_t operator()(const NormalForm& nf) const noexcept {
    std::string key;
    key.reserve(nf.size() * 3);
    for (const Syllable& s : nf) {
      key.push_back(static_cast<char>(s.gen));
      key.push_back(static_cast<char>(s.exponent & 0xff));
      key.push_back(static_cast<char>(s.exponent >> 8));
    }
    return std::hash<std::string>{}(key);
  }
};

// Graph product of the cyclic groups Z/(thickness[s]+1), with generators s, t
// commuting exactly when m(s,t) = 2. Chambers are group elements in the
// lexicographic syllable normal form; delta sends each syllable to its generator.
class RightAngledBuilding final : public ChamberComplex {
 public:
  RightAngledBuilding(CoxeterSystem sys, std::vector<std::size_t> thickness)
      : sys_(std::move(sys)), thickness_(std::move(thickness)) {
    const std::size_t n = sys_.rank();
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        const int m = sys_.m(static_cast<GeneratorId>(s), static_cast<GeneratorId>(t));
        if (s != t && m != 2 && m != CoxeterMatrix::kInfinity) {
          throw InvalidArgument("right_angled_building: m(" + std::to_string(s) + "," + std::to_string(t) +
                                ") must be 2 or infinity");
        }
      }
    }
    if (thickness_.size() != n) throw InvalidArgument("right_angled_building: one thickness per generator required");
    for (std::size_t q : thickness_) {
      if (q < 1 || q > 1000) throw InvalidArgument("right_angled_building: thickness must lie in [1, 1000]");
    }
    base_ = chambers_.intern(NormalForm{});
  }

  const CoxeterSystem& coxeter() const override { return sys_; }
  ChamberId base() const override { return base_; }
  bool contains(ChamberId c) const override { return chambers_.contains(c); }

  Element w_distance(ChamberId a, ChamberId b) const override {
    NormalForm g = inverse(chambers_.key(a));
    for (const Syllable& s : chambers_.key(b)) multiply(g, s);
    normalize(g);
    Word w;
    w.reserve(g.size());
    for (const Syllable& s : g) w.push_back(s.gen);
    return sys_.element(w);
  }

  std::vector<ChamberId> panel(ChamberId c, GeneratorId s) const override {
    if (s >= sys_.rank()) throw InvalidArgument("right_angled_building: generator out of range");
    const NormalForm g = chambers_.key(c);
    const std::size_t order = thickness_[s] + 1;
    // Order the panel by the exponent of the trailing s-syllable, 0 first.
    NormalForm stripped = g;
    for (std::size_t i = stripped.size(); i-- > 0;) {
      if (stripped[i].gen == s) {
        stripped.erase(stripped.begin() + static_cast<long>(i));
        break;
      }
      if (!sys_.commute(stripped[i].gen, s)) break;
    }
    std::vector<ChamberId> out;
    out.reserve(order);
    for (std::size_t k = 0; k < order; ++k) {
      NormalForm h = stripped;
      if (k > 0) multiply(h, Syllable{s, static_cast<std::uint16_t>(k)});
      normalize(h);
      out.push_back(chambers_.intern(h));
    }
    return out;
  }

  std::string label(ChamberId c) const override {
    const NormalForm g = chambers_.key(c);
    if (g.empty()) return "e";
    std::string out;
    for (const Syllable& s : g) {
      if (!out.empty()) out += ' ';
      out += std::to_string(static_cast<int>(s.gen)) + "^" + std::to_string(s.exponent);
    }
    return out;
  }

 private:
  std::uint16_t order(GeneratorId s) const { return static_cast<std::uint16_t>(thickness_[s] + 1); }

  NormalForm inverse(const NormalForm& g) const {
    NormalForm out(g.rbegin(), g.rend());
    for (Syllable& s : out) s.exponent = static_cast<std::uint16_t>(order(s.gen) - s.exponent);
    return out;
  }

  // Right multiplication by one syllable; the result is reduced but not sorted.
  void multiply(NormalForm& g, Syllable x) const {
    for (std::size_t i = g.size(); i-- > 0;) {
      if (g[i].gen == x.gen) {
        const auto e = static_cast<std::uint16_t>((g[i].exponent + x.exponent) % order(x.gen));
        if (e == 0) {
          g.erase(g.begin() + static_cast<long>(i));
        } else {
          g[i].exponent = e;
        }
        return;
      }
      if (!sys_.commute(g[i].gen, x.gen)) break;
    }
    g.push_back(x);
  }

  // Lexicographically least linearisation of the syllable partial order.
  void normalize(NormalForm& g) const {
    NormalForm out;
    out.reserve(g.size());
    std::vector<bool> used(g.size(), false);
    for (std::size_t placed = 0; placed < g.size(); ++placed) {
      std::size_t best = g.size();
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (used[i]) continue;
        bool free = true;
        for (std::size_t j = 0; j < i && free; ++j) {
          if (!used[j] && !sys_.commute(g[j].gen, g[i].gen)) free = false;
        }
        if (free && (best == g.size() || g[i].gen < g[best].gen)) best = i;
      }
      used[best] = true;
      out.push_back(g[best]);
    }
    g = std::move(out);
  }

  CoxeterSystem sys_;
  std::vector<std::size_t> thickness_;
  ChamberId base_{};
  mutable detail::Interner<NormalForm, NormalFormHash> chambers_;
};

}  // namespace

BuildingPtr right_angled_building(const CoxeterSystem& sys, std::vector<std::size_t> thickness) {
  return std::make_shared<RightAngledBuilding>(sys, std::move(thickness));
}

}  // namespace asdim
