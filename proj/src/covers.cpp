#include "asdim/covers.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "asdim/parallel.hpp"

namespace asdim {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

bool is_infinite_dihedral(const CoxeterSystem& sys) {
  return sys.matrix() == CoxeterSystem::infinite_dihedral().matrix();
}

Element product_element(const CoxeterSystem& prod, std::size_t split, const Element& a, const Element& b) {
  Word w = a.word();
  for (GeneratorId s : b.word()) w.push_back(static_cast<GeneratorId>(s + split));
  return prod.element(w);
}

std::size_t element_set_diameter(const CoxeterSystem& sys, const ElementSet& x) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) best = std::max(best, sys.delta_w(x[i], x[j]));
  }
  return best;
}

bool exact_without_margin(const CoxeterSystem& sys) {
  const CoxeterSystem dinf = CoxeterSystem::infinite_dihedral();
  return sys.matrix() == dinf.matrix() || sys.matrix() == CoxeterSystem::product(dinf, dinf).matrix();
}

}  // namespace

std::size_t ApartmentCover::set_count() const {
  std::size_t n = 0;
  for (const auto& f : families) n += f.size();
  return n;
}

std::size_t LiftedCover::set_count() const {
  std::size_t n = 0;
  for (const auto& f : families) n += f.size();
  return n;
}

std::int64_t line_coordinate(const Element& w) {
  const auto len = static_cast<std::int64_t>(w.length());
  if (len == 0) return 0;
  return w.word().front() == 0 ? len : -len;
}

Element line_element(const CoxeterSystem& dinf, std::int64_t n) {
  if (n == 0) return dinf.identity();
  const auto len = static_cast<std::size_t>(n > 0 ? n : -n);
  return n > 0 ? dinf.element(alternating_word(0, 1, len)) : dinf.element(alternating_word(1, 0, len));
}

ApartmentCover interval_cover(const CoxeterSystem& dinf, std::size_t d, std::size_t window_radius) {
  if (!is_infinite_dihedral(dinf)) throw InvalidArgument("interval_cover: system is not infinite dihedral");
  if (d < 1) throw InvalidArgument("interval_cover: d must be positive");
  ApartmentCover cov;
  cov.d = d;
  cov.mesh = 2 * d - 1;
  cov.window_radius = window_radius;
  cov.families.resize(2);
  const auto block = static_cast<std::int64_t>(2 * d);
  const auto r = static_cast<std::int64_t>(window_radius);
  for (std::int64_t start = floor_div(-r, block) * block; start <= r; start += block) {
    ElementSet set;
    for (std::int64_t n = std::max(start, -r); n <= std::min(start + block - 1, r); ++n) {
      set.push_back(line_element(dinf, n));
    }
    if (set.empty()) continue;
    const auto color = static_cast<std::size_t>(floor_div(start, block) & 1);
    cov.families[color].push_back(std::move(set));
  }
  return cov;
}

ApartmentCover brick_cover_product(const CoxeterSystem& w1, const ApartmentCover& c1, const CoxeterSystem& w2,
                                   const ApartmentCover& c2, std::size_t d, ProductMode mode) {
  if (c1.d != d || c2.d != d) throw InvalidArgument("brick_cover_product: factor covers use a different scale");
  const CoxeterSystem prod = CoxeterSystem::product(w1, w2);
  const std::size_t split = w1.rank();
  ApartmentCover cov;
  cov.d = d;
  cov.window_radius = std::min(c1.window_radius, c2.window_radius);

  if (mode == ProductMode::Brick) {
    if (!is_infinite_dihedral(w1) || !is_infinite_dihedral(w2)) {
      throw InvalidArgument("brick_cover_product: brick mode needs two infinite dihedral factors");
    }
    const auto side = static_cast<std::int64_t>(4 * d);
    const auto rx = static_cast<std::int64_t>(c1.window_radius);
    const auto ry = static_cast<std::int64_t>(c2.window_radius);
    std::map<std::pair<std::int64_t, std::int64_t>, ElementSet> bricks;  // (row, column)
    for (std::int64_t y = -ry; y <= ry; ++y) {
      const std::int64_t row = floor_div(y, side);
      for (std::int64_t x = -rx; x <= rx; ++x) {
        const std::int64_t col = floor_div(x - row * (side / 2), side);
        bricks[{row, col}].push_back(product_element(prod, split, line_element(w1, x), line_element(w2, y)));
      }
    }
    cov.mesh = 8 * d - 2;
    cov.families.resize(3);
    for (auto& [key, set] : bricks) {
      const std::int64_t color = ((key.second + 2 * key.first) % 3 + 3) % 3;
      cov.families[static_cast<std::size_t>(color)].push_back(std::move(set));
    }
  } else {
    cov.mesh = c1.mesh + c2.mesh;
    for (const auto& f1 : c1.families) {
      for (const auto& f2 : c2.families) {
        std::vector<ElementSet> family;
        for (const ElementSet& u1 : f1) {
          for (const ElementSet& u2 : f2) {
            ElementSet set;
            set.reserve(u1.size() * u2.size());
            for (const Element& a : u1) {
              for (const Element& b : u2) set.push_back(product_element(prod, split, a, b));
            }
            family.push_back(std::move(set));
          }
        }
        if (!family.empty()) cov.families.push_back(std::move(family));
      }
    }
  }
  cov.families.erase(std::remove_if(cov.families.begin(), cov.families.end(), [](const auto& f) { return f.empty(); }),
                     cov.families.end());
  return cov;
}

ElementSet thicken_nd(const CoxeterSystem& sys, const ElementSet& u, std::size_t d, std::size_t cap) {
  ElementSet out;
  if (d == 0) return out;
  std::unordered_set<Element, ElementHash> seen;
  for (const Element& x : u) {
    for (Element& y : sys.ball(x, d - 1, cap)) {
      if (!seen.insert(y).second) continue;
      if (out.size() >= cap) throw ResourceLimit("thicken_nd: cap exceeded");
      out.push_back(std::move(y));
    }
  }
  return out;
}

std::size_t hull_margin(const CoxeterSystem& sys, const ApartmentCover& cov, std::size_t cap) {
  std::size_t out = 0;
  for (const auto& family : cov.families) {
    for (const ElementSet& u : family) {
      out = std::max(out, element_set_diameter(sys, sys.gallery_hull(thicken_nd(sys, u, cov.d, cap), cap)));
    }
  }
  return out + cov.d;
}

LiftedCover build_lifted_cover(const FoldingMap& fm, const ApartmentCover& cov, std::size_t window_radius,
                               const LiftOptions& options) {
  const CoxeterSystem& sys = fm.coxeter();
  const ChamberComplex& bld = fm.building();

  struct Source {
    std::size_t color;
    std::size_t index;
    const ElementSet* u;
    ElementSet thick_hull;
    std::size_t hull_diameter = 0;
    std::vector<LiftedSet> lifted;
  };
  std::vector<Source> sources;
  for (std::size_t i = 0; i < cov.families.size(); ++i) {
    for (std::size_t j = 0; j < cov.families[i].size(); ++j) sources.push_back({i, j, &cov.families[i][j], {}, 0, {}});
  }

  const bool margin_known = options.margin || exact_without_margin(sys);
  parallel_for(sources.size(), options.workers, [&](std::size_t k) {
    Source& src = sources[k];
    const ElementSet hull = sys.gallery_hull(thicken_nd(sys, *src.u, cov.d, options.cap), options.cap);
    if (!margin_known) src.hull_diameter = element_set_diameter(sys, hull);
    src.thick_hull = sys.thicken(hull, options.cap);
  });

  std::size_t margin = 0;
  if (options.margin) {
    margin = *options.margin;
  } else if (!margin_known) {
    for (const Source& src : sources) margin = std::max(margin, src.hull_diameter);
    margin += cov.d;
  }

  const Window big = chamber_ball(bld, fm.base(), window_radius + margin, options.cap);
  const std::vector<Element> folds = fm.fold_all(big.chambers, options.workers);
  std::unordered_map<Element, std::vector<std::size_t>, ElementHash> fibres;
  std::unordered_map<ChamberId, std::size_t> position;
  position.reserve(big.size());
  for (std::size_t i = 0; i < big.size(); ++i) {
    fibres[folds[i]].push_back(i);
    position.emplace(big.chambers[i], i);
  }

  parallel_for(sources.size(), options.workers, [&](std::size_t k) {
    Source& src = sources[k];
    std::vector<std::size_t> indices;
    for (const Element& w : src.thick_hull) {
      if (auto it = fibres.find(w); it != fibres.end()) indices.insert(indices.end(), it->second.begin(), it->second.end());
    }
    std::sort(indices.begin(), indices.end());
    ChamberSet p;
    p.reserve(indices.size());
    for (std::size_t i : indices) p.push_back(big.chambers[i]);

    const std::unordered_set<Element, ElementHash> targets(src.u->begin(), src.u->end());
    const std::vector<ChamberSet> comps = components(bld, p);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      LiftedSet set;
      for (ChamberId x : comps[c]) {
        const std::size_t i = position.at(x);
        if (big.depth[i] <= window_radius && targets.count(folds[i])) set.chambers.push_back(x);
      }
      if (set.chambers.empty()) continue;
      set.color = src.color;
      set.u_index = src.index;
      set.component = c;
      set.source = *src.u;
      src.lifted.push_back(std::move(set));
    }
  });

  LiftedCover out;
  out.d = cov.d;
  out.window_radius = window_radius;
  out.margin = margin;
  out.families.resize(cov.colors());
  for (Source& src : sources) {
    for (LiftedSet& set : src.lifted) out.families[src.color].push_back(std::move(set));
  }
  return out;
}

}  // namespace asdim
