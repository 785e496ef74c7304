#include <deque>
#include <mutex>
#include <shared_mutex>

#include "asdim/building.hpp"

namespace asdim {

namespace {

// Chambers are edges of the (q+1)-regular tree. Vertices carry type 0 or 1;
// the base edge joins vertex 0 (type 0) and vertex 1 (type 1). A vertex's
// incident edges are materialised the first time one of its panels is read.
class TreeBuilding final : public ChamberComplex {
 public:
  explicit TreeBuilding(std::size_t q) : sys_(CoxeterSystem::infinite_dihedral()), q_(q) {
    if (q < 1) throw InvalidArgument("tree_building: q must be >= 1");
    edges_.push_back(Edge{{0, 1}, kNone, 0, 0, 0});
    vertices_.push_back(Vertex{0, 0, false, {}});
    vertices_.push_back(Vertex{1, 0, false, {}});
  }

  const CoxeterSystem& coxeter() const override { return sys_; }
  ChamberId base() const override { return ChamberId{0}; }
  bool contains(ChamberId c) const override {
    std::shared_lock lock(mutex_);
    return index(c) < edges_.size();
  }

  Element w_distance(ChamberId a, ChamberId b) const override { return sys_.element(path_type(a, b)); }
  std::size_t gallery_distance(ChamberId a, ChamberId b) const override {
    std::shared_lock lock(mutex_);
    std::size_t x = edge_index(a);
    std::size_t y = edge_index(b);
    std::size_t steps = 0;
    GeneratorId last_up = 0, last_down = 0;
    bool moved_up = false, moved_down = false;
    while (edges_[x].depth > edges_[y].depth) {
      last_up = edges_[x].pivot;
      moved_up = true;
      x = edges_[x].parent;
      ++steps;
    }
    while (edges_[y].depth > edges_[x].depth) {
      last_down = edges_[y].pivot;
      moved_down = true;
      y = edges_[y].parent;
      ++steps;
    }
    while (x != y) {
      last_up = edges_[x].pivot;
      last_down = edges_[y].pivot;
      moved_up = moved_down = true;
      x = edges_[x].parent;
      y = edges_[y].parent;
      steps += 2;
    }
    return moved_up && moved_down && last_up == last_down ? steps - 1 : steps;
  }

  std::vector<ChamberId> panel(ChamberId c, GeneratorId s) const override {
    if (s > 1) throw InvalidArgument("tree_building: generator out of range");
    std::size_t v;
    {
      std::shared_lock lock(mutex_);
      v = edge(c).v[s];
      if (vertices_[v].expanded) return as_ids(vertices_[v].edges);
    }
    std::unique_lock lock(mutex_);
    expand(v);
    return as_ids(vertices_[v].edges);
  }

  std::string label(ChamberId c) const override {
    std::shared_lock lock(mutex_);
    std::string out;
    std::size_t e = edge_index(c);
    if (e == 0) return "B";
    std::vector<std::string> steps;
    while (e != 0) {
      const Edge& ed = edges_[e];
      steps.push_back((ed.pivot == 0 ? "s" : "t") + std::to_string(ed.child_index));
      e = ed.parent;
    }
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      if (!out.empty()) out += '.';
      out += *it;
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Edge {
    std::size_t v[2];        // endpoint of type 0, endpoint of type 1
    std::size_t parent;      // edge one step closer to the base
    GeneratorId pivot;       // type of the vertex shared with the parent
    std::size_t depth;
    std::size_t child_index;
  };
  struct Vertex {
    GeneratorId type;
    std::size_t owner;  // edge that created the vertex
    bool expanded;
    std::vector<std::size_t> edges;
  };

  static std::size_t index(ChamberId c) { return static_cast<std::size_t>(c); }
  static std::vector<ChamberId> as_ids(const std::vector<std::size_t>& e) {
    std::vector<ChamberId> out;
    out.reserve(e.size());
    for (std::size_t i : e) out.push_back(ChamberId{i});
    return out;
  }

  std::size_t edge_index(ChamberId c) const {
    const std::size_t i = index(c);
    if (i >= edges_.size()) throw UnknownChamber("tree_building: unknown chamber " + std::to_string(i));
    return i;
  }
  const Edge& edge(ChamberId c) const { return edges_[edge_index(c)]; }

  // Caller holds the unique lock.
  void expand(std::size_t v) const {
    if (vertices_[v].expanded) return;
    const GeneratorId type = vertices_[v].type;
    const std::size_t owner = vertices_[v].owner;
    std::vector<std::size_t> incident{owner};
    for (std::size_t k = 0; k < q_; ++k) {
      const std::size_t e = edges_.size();
      const std::size_t nv = vertices_.size();
      Edge ed{{0, 0}, owner, type, edges_[owner].depth + 1, k};
      ed.v[type] = v;
      ed.v[1 - type] = nv;
      edges_.push_back(ed);
      vertices_.push_back(Vertex{static_cast<GeneratorId>(1 - type), e, false, {}});
      incident.push_back(e);
    }
    vertices_[v].edges = std::move(incident);
    vertices_[v].expanded = true;
  }

  // Types of the vertices crossed by the tree path from edge a to edge b.
  Word path_type(ChamberId a, ChamberId b) const {
    std::shared_lock lock(mutex_);
    std::size_t x = edge_index(a);
    std::size_t y = edge_index(b);
    Word up;
    Word down;
    while (edges_[x].depth > edges_[y].depth) {
      up.push_back(edges_[x].pivot);
      x = edges_[x].parent;
    }
    while (edges_[y].depth > edges_[x].depth) {
      down.push_back(edges_[y].pivot);
      y = edges_[y].parent;
    }
    while (x != y) {
      up.push_back(edges_[x].pivot);
      x = edges_[x].parent;
      down.push_back(edges_[y].pivot);
      y = edges_[y].parent;
    }
    // Two children of the common ancestor through the same vertex share a panel.
    if (!up.empty() && !down.empty() && up.back() == down.back()) down.pop_back();
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }

  CoxeterSystem sys_;
  std::size_t q_;
  mutable std::shared_mutex mutex_;
  mutable std::deque<Edge> edges_;
  mutable std::deque<Vertex> vertices_;
};

}  // namespace

BuildingPtr tree_building(std::size_t q) { return std::make_shared<TreeBuilding>(q); }

}  // namespace asdim
