#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asdim/coxeter.hpp"

namespace asdim {

enum class ChamberId : std::uint64_t {};

class UnknownChamber : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultChamberCap = 1'000'000;

/// A building viewed as a W-metric chamber system with a fixed base chamber.
///
/// Implementations generate chambers lazily and must be safe for concurrent
/// readers. Panel order is a function of the chambers only, never of the
/// order in which chambers were discovered.
class ChamberComplex {
 public:
  virtual ~ChamberComplex() = default;

  virtual const CoxeterSystem& coxeter() const = 0;
  virtual ChamberId base() const = 0;
  virtual bool contains(ChamberId c) const = 0;

  /// delta_C(a, b).
  virtual Element w_distance(ChamberId a, ChamberId b) const = 0;
  virtual std::size_t gallery_distance(ChamberId a, ChamberId b) const { return w_distance(a, b).length(); }
  /// The s-panel of c, including c.
  virtual std::vector<ChamberId> panel(ChamberId c, GeneratorId s) const = 0;
  /// Canonical name of a chamber, independent of discovery order.
  virtual std::string label(ChamberId c) const = 0;
};

using BuildingPtr = std::shared_ptr<const ChamberComplex>;

struct Gallery {
  std::vector<ChamberId> chambers;
  Word type;

  std::size_t length() const { return type.size(); }
  friend bool operator==(const Gallery&, const Gallery&) = default;
};

/// Chambers within a gallery-distance radius of a center, breadth-first.
struct Window {
  ChamberId center{};
  std::size_t radius = 0;
  std::vector<ChamberId> chambers;
  std::vector<std::size_t> depth;

  std::size_t size() const { return chambers.size(); }
};

// Concrete buildings ---------------------------------------------------------

/// The Coxeter complex of W: chambers are group elements, base = identity.
BuildingPtr thin_building(const CoxeterSystem& sys);
/// Edges of the (q+1)-regular tree, a building of type D-infinity.
BuildingPtr tree_building(std::size_t q);
/// Graph product of cyclic groups over a right-angled W. `thickness[s]` is the
/// number of chambers in an s-panel minus one, so thickness 1 gives the thin
/// building and right_angled_building(D-inf, {q, q}) is isomorphic to tree_building(q).
BuildingPtr right_angled_building(const CoxeterSystem& sys, std::vector<std::size_t> thickness);
BuildingPtr product_building(BuildingPtr first, BuildingPtr second);
/// Flags of the Fano plane, a thick spherical building of type A2.
BuildingPtr fano_building();

// Chamber exposure for the thin building (chambers correspond to elements).
ChamberId thin_chamber(const ChamberComplex& thin, const Element& w);

// Galleries ------------------------------------------------------------------

bool is_gallery(const ChamberComplex& bld, const Gallery& g);
bool is_minimal_gallery(const ChamberComplex& bld, const Gallery& g);

/// The unique gallery from `from` to `to` of the given reduced type, built
/// backwards by projecting onto panels; absent if delta(from, to) is not the
/// element of `type`.
std::optional<Gallery> gallery_of_type(const ChamberComplex& bld, ChamberId from, const Word& type, ChamberId to);
/// Every gallery of the given reduced type starting at `from`.
std::vector<Gallery> galleries_of_type(const ChamberComplex& bld, ChamberId from, const Word& type,
                                       std::size_t cap = kDefaultChamberCap);
/// Minimal gallery whose type is the canonical word of delta(from, to).
Gallery minimal_gallery(const ChamberComplex& bld, ChamberId from, ChamberId to);
/// All minimal galleries from `from` to `to`, by depth-first search over
/// adjacent chambers that make progress in gallery distance.
std::vector<Gallery> enumerate_minimal_galleries(const ChamberComplex& bld, ChamberId from, ChamberId to,
                                                 std::size_t cap = 100'000);

// Chamber sets ---------------------------------------------------------------

using ChamberSet = std::vector<ChamberId>;

Window chamber_ball(const ChamberComplex& bld, ChamberId center, std::size_t radius,
                    std::size_t cap = kDefaultChamberCap);
ChamberSet residue_chambers(const ChamberComplex& bld, ChamberId anchor, GeneratorMask types,
                            std::size_t cap = kDefaultChamberCap);
/// Union of the maximal spherical residues of the members of X.
ChamberSet thicken(const ChamberComplex& bld, const ChamberSet& x, std::size_t cap = kDefaultChamberCap);
/// X followed by every chamber adjacent to a member of X.
ChamberSet neighborhood(const ChamberComplex& bld, const ChamberSet& x, std::size_t cap = kDefaultChamberCap);
/// Gallery-connected components of X, each listed in X order; components are
/// ordered by their first member.
std::vector<ChamberSet> components(const ChamberComplex& bld, const ChamberSet& x);

// Axioms ---------------------------------------------------------------------

struct AxiomViolation {
  std::string axiom;
  std::string detail;
};

struct AxiomReport {
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  std::vector<AxiomViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks the W-metric axioms on all pairs (c, c') of the sample and all
/// chambers c'' of the panels of c'.
AxiomReport check_axioms(const ChamberComplex& bld, const ChamberSet& sample, std::size_t workers = 1);

/// Chamber-graph isomorphism test between two windows: BFS from both bases in
/// lock step, matching panels by their delta to the base.
struct IsomorphismResult {
  bool isomorphic = false;
  std::size_t chambers_matched = 0;
  std::string detail;
};
IsomorphismResult compare_windows(const ChamberComplex& a, const ChamberComplex& b, std::size_t radius);

}  // namespace asdim
