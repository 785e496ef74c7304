#include "asdim/building.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "asdim/parallel.hpp"

namespace asdim {

namespace {

std::string chamber_text(const ChamberComplex& bld, ChamberId c) { return "[" + bld.label(c) + "]"; }

}  // namespace

// ---------------------------------------------------------------------------
// Galleries

bool is_gallery(const ChamberComplex& bld, const Gallery& g) {
  if (g.chambers.empty() || g.type.size() + 1 != g.chambers.size()) return false;
  for (std::size_t i = 0; i < g.type.size(); ++i) {
    const ChamberId a = g.chambers[i];
    const ChamberId b = g.chambers[i + 1];
    if (a == b) return false;
    if (bld.w_distance(a, b) != bld.coxeter().generator(g.type[i])) return false;
  }
  return true;
}

bool is_minimal_gallery(const ChamberComplex& bld, const Gallery& g) {
  return is_gallery(bld, g) && bld.coxeter().is_reduced(g.type);
}

std::optional<Gallery> gallery_of_type(const ChamberComplex& bld, ChamberId from, const Word& type, ChamberId to) {
  const CoxeterSystem& sys = bld.coxeter();
  Element target = sys.element(type);
  if (target.length() != type.size()) throw InvalidArgument("gallery_of_type: type is not reduced");
  if (bld.w_distance(from, to) != target) return std::nullopt;
  std::vector<ChamberId> reversed{to};
  ChamberId cur = to;
  for (std::size_t i = type.size(); i-- > 0;) {
    const GeneratorId s = type[i];
    target = sys.multiply(target, s);
    std::optional<ChamberId> step;
    for (ChamberId p : bld.panel(cur, s)) {
      if (p != cur && bld.w_distance(from, p) == target) {
        step = p;
        break;
      }
    }
    if (!step) {
      throw std::logic_error("gallery_of_type: panel has no projection chamber; building axioms violated at " +
                             chamber_text(bld, cur));
    }
    cur = *step;
    reversed.push_back(cur);
  }
  Gallery g;
  g.chambers.assign(reversed.rbegin(), reversed.rend());
  g.type = type;
  return g;
}

std::vector<Gallery> galleries_of_type(const ChamberComplex& bld, ChamberId from, const Word& type, std::size_t cap) {
  const CoxeterSystem& sys = bld.coxeter();
  if (!sys.is_reduced(type)) throw InvalidArgument("galleries_of_type: type is not reduced");
  std::vector<Gallery> cur{Gallery{{from}, {}}};
  Element w = sys.identity();
  for (GeneratorId s : type) {
    w = sys.multiply(w, s);
    std::vector<Gallery> next;
    for (const Gallery& g : cur) {
      const ChamberId last = g.chambers.back();
      for (ChamberId p : bld.panel(last, s)) {
        if (p == last || bld.w_distance(from, p) != w) continue;
        if (next.size() >= cap) throw ResourceLimit("galleries_of_type: cap exceeded");
        Gallery ext = g;
        ext.chambers.push_back(p);
        ext.type.push_back(s);
        next.push_back(std::move(ext));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Gallery minimal_gallery(const ChamberComplex& bld, ChamberId from, ChamberId to) {
  const Element w = bld.w_distance(from, to);
  auto g = gallery_of_type(bld, from, w.word(), to);
  if (!g) throw std::logic_error("minimal_gallery: delta is inconsistent");
  return *g;
}

std::vector<Gallery> enumerate_minimal_galleries(const ChamberComplex& bld, ChamberId from, ChamberId to,
                                                 std::size_t cap) {
  const std::size_t dist = bld.gallery_distance(from, to);
  std::vector<Gallery> out;
  Gallery cur{{from}, {}};
  const std::size_t rank = bld.coxeter().rank();
  std::function<void()> extend = [&] {
    const ChamberId last = cur.chambers.back();
    const std::size_t k = cur.type.size();
    if (k == dist) {
      if (last == to) {
        if (out.size() >= cap) throw ResourceLimit("enumerate_minimal_galleries: cap exceeded");
        out.push_back(cur);
      }
      return;
    }
    for (std::size_t s = 0; s < rank; ++s) {
      for (ChamberId p : bld.panel(last, static_cast<GeneratorId>(s))) {
        if (p == last) continue;
        if (bld.gallery_distance(from, p) != k + 1 || bld.gallery_distance(p, to) != dist - k - 1) continue;
        cur.chambers.push_back(p);
        cur.type.push_back(static_cast<GeneratorId>(s));
        extend();
        cur.chambers.pop_back();
        cur.type.pop_back();
      }
    }
  };
  extend();
  return out;
}

// ---------------------------------------------------------------------------
// Chamber sets

Window chamber_ball(const ChamberComplex& bld, ChamberId center, std::size_t radius, std::size_t cap) {
  if (!bld.contains(center)) throw UnknownChamber("chamber_ball: unknown center");
  Window w;
  w.center = center;
  w.radius = radius;
  w.chambers.push_back(center);
  w.depth.push_back(0);
  std::unordered_set<ChamberId> seen{center};
  const std::size_t rank = bld.coxeter().rank();
  for (std::size_t i = 0; i < w.chambers.size(); ++i) {
    if (w.depth[i] == radius) continue;
    const ChamberId c = w.chambers[i];
    for (std::size_t s = 0; s < rank; ++s) {
      for (ChamberId p : bld.panel(c, static_cast<GeneratorId>(s))) {
        if (!seen.insert(p).second) continue;
        if (w.chambers.size() >= cap) {
          throw ResourceLimit("chamber ball of radius " + std::to_string(radius) + " exceeds the cap of " +
                              std::to_string(cap) + " chambers");
        }
        w.chambers.push_back(p);
        w.depth.push_back(w.depth[i] + 1);
      }
    }
  }
  return w;
}

ChamberSet residue_chambers(const ChamberComplex& bld, ChamberId anchor, GeneratorMask types, std::size_t cap) {
  ChamberSet out{anchor};
  std::unordered_set<ChamberId> seen{anchor};
  const std::size_t rank = bld.coxeter().rank();
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t s = 0; s < rank; ++s) {
      if (!(types & (GeneratorMask{1} << s))) continue;
      for (ChamberId p : bld.panel(out[i], static_cast<GeneratorId>(s))) {
        if (!seen.insert(p).second) continue;
        if (out.size() >= cap) throw ResourceLimit("residue_chambers: cap exceeded (non-spherical type?)");
        out.push_back(p);
      }
    }
  }
  return out;
}

ChamberSet thicken(const ChamberComplex& bld, const ChamberSet& x, std::size_t cap) {
  ChamberSet out;
  std::unordered_set<ChamberId> seen;
  for (ChamberId c : x) {
    for (GeneratorMask j : bld.coxeter().maximal_spherical_subsets()) {
      for (ChamberId r : residue_chambers(bld, c, j, cap)) {
        if (!seen.insert(r).second) continue;
        if (out.size() >= cap) throw ResourceLimit("thicken: cap exceeded");
        out.push_back(r);
      }
    }
  }
  return out;
}

ChamberSet neighborhood(const ChamberComplex& bld, const ChamberSet& x, std::size_t cap) {
  ChamberSet out;
  std::unordered_set<ChamberId> seen;
  for (ChamberId c : x) {
    if (seen.insert(c).second) out.push_back(c);
  }
  const std::size_t rank = bld.coxeter().rank();
  for (ChamberId c : x) {
    for (std::size_t s = 0; s < rank; ++s) {
      for (ChamberId p : bld.panel(c, static_cast<GeneratorId>(s))) {
        if (!seen.insert(p).second) continue;
        if (out.size() >= cap) throw ResourceLimit("neighborhood: cap exceeded");
        out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<ChamberSet> components(const ChamberComplex& bld, const ChamberSet& x) {
  std::unordered_map<ChamberId, std::size_t> index;
  index.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) index.emplace(x[i], i);
  std::vector<std::size_t> parent(x.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  const std::size_t rank = bld.coxeter().rank();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t s = 0; s < rank; ++s) {
      for (ChamberId p : bld.panel(x[i], static_cast<GeneratorId>(s))) {
        auto it = index.find(p);
        if (it == index.end()) continue;
        const std::size_t a = find(i);
        const std::size_t b = find(it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<ChamberSet> out;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t root = find(i);
    if (index.at(x[i]) != i) continue;  // duplicate entry in x
    auto [it, inserted] = slot.emplace(root, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(x[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

AxiomReport check_axioms(const ChamberComplex& bld, const ChamberSet& sample, std::size_t workers) {
  const CoxeterSystem& sys = bld.coxeter();
  const std::size_t rank = sys.rank();
  struct Partial {
    std::size_t pairs = 0;
    std::size_t triples = 0;
    std::vector<AxiomViolation> violations;
  };
  std::vector<Partial> partial(sample.size());
  // Panels of sample chambers are shared by every row.
  std::vector<std::vector<ChamberSet>> panels(sample.size(), std::vector<ChamberSet>(rank));
  parallel_for(sample.size(), workers, [&](std::size_t i) {
    for (std::size_t s = 0; s < rank; ++s) panels[i][s] = bld.panel(sample[i], static_cast<GeneratorId>(s));
  });
  constexpr std::size_t kMaxRecorded = 50;
  parallel_for(sample.size(), workers, [&](std::size_t i) {
    Partial& out = partial[i];
    auto report = [&](std::string axiom, std::string detail) {
      if (out.violations.size() < kMaxRecorded) out.violations.push_back({std::move(axiom), std::move(detail)});
    };
    const ChamberId c = sample[i];
    for (std::size_t j = 0; j < sample.size(); ++j) {
      const ChamberId c1 = sample[j];
      ++out.pairs;
      const Element w = bld.w_distance(c, c1);
      if (w.is_identity() != (c == c1)) {
        report("identity", "delta" + chamber_text(bld, c) + chamber_text(bld, c1) + " = " + word_to_string(w.word()));
      }
      if (bld.w_distance(c1, c) != sys.inverse(w)) {
        report("inverse", "delta not inverted under swap for " + chamber_text(bld, c) + chamber_text(bld, c1));
      }
      for (std::size_t s = 0; s < rank; ++s) {
        const auto gen = static_cast<GeneratorId>(s);
        const ChamberSet& pan = panels[j][s];
        if (pan.size() < 2 || std::find(pan.begin(), pan.end(), c1) == pan.end()) {
          report("panel", "s-panel of " + chamber_text(bld, c1) + " is malformed for s=" + std::to_string(s));
          continue;
        }
        const Element ws = sys.multiply(w, gen);
        const bool longer = ws.length() > w.length();
        bool found_ws = false;
        for (ChamberId c2 : pan) {
          if (c2 == c1) continue;
          ++out.triples;
          const Element w2 = bld.w_distance(c, c2);
          if (w2 == ws) {
            found_ws = true;
          } else if (longer || w2 != w) {
            report("panel-distance", "delta" + chamber_text(bld, c) + chamber_text(bld, c2) + " = " +
                                         word_to_string(w2.word()) + ", expected " + word_to_string(ws.word()) +
                                         (longer ? "" : " or " + word_to_string(w.word())));
          }
        }
        if (!found_ws) {
          report("projection", "no chamber of the " + std::to_string(s) + "-panel of " + chamber_text(bld, c1) +
                                   " at delta " + word_to_string(ws.word()) + " from " + chamber_text(bld, c));
        }
      }
    }
  });
  AxiomReport rep;
  for (auto& p : partial) {
    rep.pairs_checked += p.pairs;
    rep.triples_checked += p.triples;
    for (auto& v : p.violations) rep.violations.push_back(std::move(v));
  }
  return rep;
}

IsomorphismResult compare_windows(const ChamberComplex& a, const ChamberComplex& b, std::size_t radius) {
  IsomorphismResult res;
  if (a.coxeter().matrix() != b.coxeter().matrix()) {
    res.detail = "different Coxeter matrices";
    return res;
  }
  const std::size_t rank = a.coxeter().rank();
  const Window wa = chamber_ball(a, a.base(), radius);
  const Window wb = chamber_ball(b, b.base(), radius);
  if (wa.size() != wb.size()) {
    res.detail = "window sizes differ: " + std::to_string(wa.size()) + " vs " + std::to_string(wb.size());
    return res;
  }
  std::unordered_map<ChamberId, ChamberId> fwd;
  std::unordered_map<ChamberId, ChamberId> bwd;
  std::unordered_map<ChamberId, std::size_t> depth_a;
  for (std::size_t i = 0; i < wa.size(); ++i) depth_a.emplace(wa.chambers[i], wa.depth[i]);
  fwd.emplace(a.base(), b.base());
  bwd.emplace(b.base(), a.base());
  std::deque<ChamberId> queue{a.base()};
  while (!queue.empty()) {
    const ChamberId x = queue.front();
    queue.pop_front();
    const ChamberId y = fwd.at(x);
    for (std::size_t s = 0; s < rank; ++s) {
      const auto gen = static_cast<GeneratorId>(s);
      const ChamberSet pa = a.panel(x, gen);
      const ChamberSet pb = b.panel(y, gen);
      if (pa.size() != pb.size()) {
        res.detail = "panel sizes differ at " + chamber_text(a, x);
        return res;
      }
      std::vector<bool> used(pb.size(), false);
      for (std::size_t k = 0; k < pb.size(); ++k) {
        if (bwd.count(pb[k])) used[k] = true;
      }
      for (ChamberId p : pa) {
        auto dit = depth_a.find(p);
        if (dit == depth_a.end()) continue;  // outside the window
        if (auto it = fwd.find(p); it != fwd.end()) {
          if (std::find(pb.begin(), pb.end(), it->second) == pb.end()) {
            res.detail = "inconsistent panel image at " + chamber_text(a, p);
            return res;
          }
          continue;
        }
        const Element fold = a.w_distance(a.base(), p);
        bool matched = false;
        for (std::size_t k = 0; k < pb.size() && !matched; ++k) {
          if (used[k] || b.w_distance(b.base(), pb[k]) != fold) continue;
          used[k] = true;
          fwd.emplace(p, pb[k]);
          bwd.emplace(pb[k], p);
          queue.push_back(p);
          matched = true;
        }
        if (!matched) {
          res.detail = "no partner for " + chamber_text(a, p);
          return res;
        }
      }
    }
  }
  if (fwd.size() != wa.size()) {
    res.detail = "matched " + std::to_string(fwd.size()) + " of " + std::to_string(wa.size()) + " chambers";
    return res;
  }
  // The bijection must preserve delta on every pair, not just along panels.
  for (ChamberId x : wa.chambers) {
    for (ChamberId y : wa.chambers) {
      if (a.w_distance(x, y) != b.w_distance(fwd.at(x), fwd.at(y))) {
        res.detail = "delta differs on " + chamber_text(a, x) + chamber_text(a, y);
        return res;
      }
    }
  }
  res.isomorphic = true;
  res.chambers_matched = fwd.size();
  return res;
}

}  // namespace asdim
