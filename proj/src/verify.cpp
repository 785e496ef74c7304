#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "asdim/covers.hpp"
#include "asdim/parallel.hpp"

namespace asdim {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kMaxListed = 100;

struct ColorDistance {
  std::size_t distance = kNone;  // kNone: no pair found within the search radius
  std::string witness;
};

// Multi-source breadth-first search from every set of one color, each chamber
// owned by the set that reaches it first. An edge between chambers of
// different owners at depths a and b certifies a pair at distance <= a+1+b,
// and the smallest such value is the exact minimum whenever that minimum is at
// most 2*radius+1.
ColorDistance min_color_distance(const ChamberComplex& bld, const std::vector<const ChamberSet*>& sets,
                                 std::size_t radius) {
  ColorDistance out;
  struct Owner {
    std::size_t set;
    std::size_t depth;
  };
  std::unordered_map<ChamberId, Owner> owner;
  std::vector<ChamberId> queue;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (ChamberId c : *sets[k]) {
      auto [it, inserted] = owner.emplace(c, Owner{k, 0});
      if (inserted) {
        queue.push_back(c);
      } else if (it->second.set != k) {
        out.distance = 0;
        out.witness = "sets " + std::to_string(it->second.set) + " and " + std::to_string(k) + " share " + bld.label(c);
        return out;
      }
    }
  }
  const std::size_t rank = bld.coxeter().rank();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ChamberId c = queue[head];
    const Owner own = owner.at(c);
    for (std::size_t s = 0; s < rank; ++s) {
      for (ChamberId p : bld.panel(c, static_cast<GeneratorId>(s))) {
        if (p == c) continue;
        auto it = owner.find(p);
        if (it == owner.end()) {
          if (own.depth < radius) {
            owner.emplace(p, Owner{own.set, own.depth + 1});
            queue.push_back(p);
          }
          continue;
        }
        if (it->second.set == own.set) continue;
        const std::size_t dist = own.depth + 1 + it->second.depth;
        if (dist < out.distance) {
          out.distance = dist;
          out.witness = "sets " + std::to_string(std::min(own.set, it->second.set)) + " and " +
                        std::to_string(std::max(own.set, it->second.set)) + " meet near " + bld.label(c);
        }
      }
    }
  }
  return out;
}

// Buildings of type D-infinity are trees, and gallery distance is the tree
// distance between edge midpoints.
bool tree_metric(const CoxeterSystem& sys) {
  return sys.rank() == 1 || sys.matrix() == CoxeterSystem::infinite_dihedral().matrix();
}

std::vector<std::size_t> distance_row(const ChamberComplex& bld, const ChamberSet& x, std::size_t v,
                                      std::size_t workers) {
  std::vector<std::size_t> row(x.size(), 0);
  parallel_for(x.size(), workers, [&](std::size_t i) { row[i] = i == v ? 0 : bld.gallery_distance(x[v], x[i]); });
  return row;
}

std::size_t argmax(const std::vector<std::size_t>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

// In a tree metric a double sweep is exact. Otherwise bounding eccentricities:
// each computed row tightens lower and upper bounds on every eccentricity, and
// members whose upper bound cannot beat the current diameter are dropped.
std::size_t set_diameter(const ChamberComplex& bld, const ChamberSet& x, std::size_t workers) {
  const std::size_t n = x.size();
  if (n < 2) return 0;
  if (tree_metric(bld.coxeter())) {
    const std::vector<std::size_t> first = distance_row(bld, x, 0, workers);
    const std::vector<std::size_t> second = distance_row(bld, x, argmax(first), workers);
    return second[argmax(second)];
  }
  std::vector<std::size_t> lo(n, 0), hi(n, kNone);
  std::vector<bool> active(n, true);
  std::size_t best = 0;
  std::size_t remaining = n;
  bool pick_high = true;
  while (remaining > 0) {
    std::size_t v = kNone;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (v == kNone || (pick_high ? hi[i] > hi[v] : lo[i] < lo[v])) v = i;
    }
    pick_high = !pick_high;
    const std::vector<std::size_t> row = distance_row(bld, x, v, workers);
    const std::size_t ecc = row[argmax(row)];
    best = std::max(best, ecc);
    active[v] = false;
    --remaining;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      lo[i] = std::max({lo[i], row[i], ecc - row[i]});
      hi[i] = std::min(hi[i], ecc + row[i]);
      if (hi[i] <= best) {
        active[i] = false;
        --remaining;
      }
    }
  }
  return best;
}

CoverReport verify_cover(const ChamberComplex& bld, const LiftedCover& lc, const Window& window, std::size_t d,
                         std::size_t workers) {
  CoverReport rep;
  rep.d = d;
  rep.window_radius = window.radius;
  rep.window_size = window.size();
  rep.margin = lc.margin;

  const std::unordered_set<ChamberId> in_window(window.chambers.begin(), window.chambers.end());
  std::unordered_set<ChamberId> covered;
  std::size_t outside = 0;
  for (const auto& family : lc.families) {
    if (!family.empty()) ++rep.colors_used;
    for (const LiftedSet& set : family) {
      ++rep.set_count;
      for (ChamberId c : set.chambers) {
        if (in_window.count(c)) {
          covered.insert(c);
        } else {
          ++outside;
        }
      }
    }
  }
  std::size_t missing = 0;
  for (ChamberId c : window.chambers) {
    if (covered.count(c)) continue;
    if (missing++ < kMaxListed) rep.uncovered.push_back(bld.label(c));
  }
  rep.covered = missing == 0;
  if (missing) rep.violations.push_back(std::to_string(missing) + " window chambers are not covered");
  if (outside) rep.violations.push_back(std::to_string(outside) + " set members lie outside the window");

  const std::size_t radius = std::max<std::size_t>(1, (d + 1) / 2);
  std::vector<ColorDistance> per_color(lc.families.size());
  parallel_for(lc.families.size(), workers, [&](std::size_t i) {
    std::vector<const ChamberSet*> sets;
    for (const LiftedSet& set : lc.families[i]) sets.push_back(&set.chambers);
    per_color[i] = min_color_distance(bld, sets, radius);
  });
  rep.min_same_color_distance = kNone;
  for (std::size_t i = 0; i < per_color.size(); ++i) {
    const ColorDistance& cd = per_color[i];
    if (cd.distance < rep.min_same_color_distance) rep.min_same_color_distance = cd.distance;
    if (cd.distance < d) {
      rep.violations.push_back("color " + std::to_string(i) + ": " + cd.witness + " at distance " +
                               std::to_string(cd.distance) + " < " + std::to_string(d));
    }
  }
  if (rep.min_same_color_distance == kNone) {
    rep.min_same_color_distance = 2 * radius + 2;
    rep.min_distance_exact = false;
  }

  for (std::size_t i = 0; i < lc.families.size(); ++i) {
    for (std::size_t k = 0; k < lc.families[i].size(); ++k) {
      const ChamberSet& x = lc.families[i][k].chambers;
      const std::size_t diam = set_diameter(bld, x, workers);
      rep.sets.push_back({i, k, x.size(), diam});
      ++rep.diameter_histogram[diam];
      rep.max_set_diameter = std::max(rep.max_set_diameter, diam);
    }
  }
  return rep;
}

ApartmentReport verify_apartment_cover(const CoxeterSystem& sys, const ApartmentCover& cov, std::size_t workers) {
  const BuildingPtr thin = thin_building(sys);
  LiftedCover lc;
  lc.d = cov.d;
  lc.window_radius = cov.window_radius;
  lc.families.resize(cov.colors());
  for (std::size_t i = 0; i < cov.colors(); ++i) {
    for (const ElementSet& u : cov.families[i]) {
      LiftedSet set;
      for (const Element& w : u) set.chambers.push_back(thin_chamber(*thin, w));
      lc.families[i].push_back(std::move(set));
    }
  }
  // Brick sets reach past the ball; their members join the window.
  Window window = chamber_ball(*thin, thin->base(), cov.window_radius);
  std::unordered_set<ChamberId> seen(window.chambers.begin(), window.chambers.end());
  for (const auto& family : lc.families) {
    for (const LiftedSet& set : family) {
      for (ChamberId c : set.chambers) {
        if (seen.insert(c).second) window.chambers.push_back(c);
      }
    }
  }
  const CoverReport rep = verify_cover(*thin, lc, window, 2 * cov.d, workers);

  ApartmentReport out;
  out.covered = rep.covered;
  out.min_same_color_distance = rep.min_same_color_distance;
  out.min_distance_exact = rep.min_distance_exact;
  out.max_set_diameter = rep.max_set_diameter;
  out.violations = rep.violations;
  if (rep.max_set_diameter > cov.mesh) {
    out.violations.push_back("set diameter " + std::to_string(rep.max_set_diameter) + " exceeds the mesh " +
                             std::to_string(cov.mesh));
  }
  return out;
}

BoundCheck diameter_bound_check(const FoldingMap& fm, const ElementSet& u, const ChamberSet& v, std::size_t workers) {
  const CoxeterSystem& sys = fm.coxeter();
  const ChamberComplex& bld = fm.building();
  BoundCheck out;
  if (u.empty() || v.empty()) throw InvalidArgument("diameter_bound_check: empty input");
  out.gamma = sys.weak_order_gate(sys.neighborhood(u)).gallery_word;
  try {
    out.gate = component_gate(fm, v, out.gamma, workers);
  } catch (const Error& e) {
    out.detail = e.what();
    return out;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) out.n = std::max(out.n, sys.delta_w(u[i], u[j]));
  }

  const std::unordered_set<Element, ElementHash> targets(u.begin(), u.end());
  std::vector<std::size_t> entry(v.size(), 0);
  std::vector<std::size_t> to_gate(v.size(), 0);
  parallel_for(v.size(), workers, [&](std::size_t i) {
    const Gallery g = lift_with_prefix(fm, v[i], out.gamma);
    std::size_t k = out.gamma.size();
    while (!targets.count(fm.fold(g.chambers[k]))) ++k;
    entry[i] = bld.gallery_distance(out.gate, g.chambers[k]);
    to_gate[i] = bld.gallery_distance(out.gate, v[i]);
  });
  out.l = 1 + *std::max_element(entry.begin(), entry.end());
  out.max_gate_distance = *std::max_element(to_gate.begin(), to_gate.end());
  out.diameter = set_diameter(bld, v, workers);
  const bool near_gate = out.max_gate_distance < out.l + out.n;
  const bool small = out.diameter < 2 * out.l + 2 * out.n;
  out.ok = near_gate && small;
  if (!near_gate) out.detail = "a chamber lies at distance " + std::to_string(out.max_gate_distance) + " from the gate";
  if (!small) out.detail = "diameter " + std::to_string(out.diameter) + " reaches 2L+2N";
  return out;
}

}  // namespace asdim
