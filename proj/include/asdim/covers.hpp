#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asdim/building.hpp"
#include "asdim/retraction.hpp"

namespace asdim {

// Apartment side -------------------------------------------------------------

using ElementSet = std::vector<Element>;

/// Colored families of finite subsets of W. `families[i]` holds the sets of
/// color i; sets of one color are meant to be 2d-disjoint and of diameter at
/// most `mesh`, covering the ball of radius `window_radius` about 1.
struct ApartmentCover {
  std::size_t d = 1;
  std::size_t mesh = 0;
  std::size_t window_radius = 0;
  std::vector<std::vector<ElementSet>> families;

  std::size_t colors() const { return families.size(); }
  std::size_t set_count() const;
};

/// Position of a D-infinity element on the line: words starting with
/// generator 0 go to +length, words starting with 1 to -length.
std::int64_t line_coordinate(const Element& w);
Element line_element(const CoxeterSystem& dinf, std::int64_t n);

/// Two-colored blocks of length 2d on the line, clipped to |n| <= window_radius.
ApartmentCover interval_cover(const CoxeterSystem& dinf, std::size_t d, std::size_t window_radius);

enum class ProductMode { Brick, ProductColors };

/// Cover of W1 x W2 built from covers of the factors. Brick mode needs both
/// factors to be D-infinity and ignores the factor sets beyond their windows:
/// it tiles the plane by 4d x 4d bricks with rows offset by half a brick and
/// uses 3 colors. ProductColors takes all products U1 x U2 and colors them
/// by the pair of factor colors.
ApartmentCover brick_cover_product(const CoxeterSystem& w1, const ApartmentCover& c1, const CoxeterSystem& w2,
                                   const ApartmentCover& c2, std::size_t d, ProductMode mode);

/// { w : delta_w(w, U) < d }.
ElementSet thicken_nd(const CoxeterSystem& sys, const ElementSet& u, std::size_t d,
                      std::size_t cap = kDefaultElementCap);

struct ApartmentReport {
  bool covered = false;
  std::size_t min_same_color_distance = 0;
  bool min_distance_exact = true;
  std::size_t max_set_diameter = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks coverage of the window, 2d-disjointness per color and the mesh.
ApartmentReport verify_apartment_cover(const CoxeterSystem& sys, const ApartmentCover& cov, std::size_t workers = 1);

// Building side --------------------------------------------------------------

struct LiftedSet {
  ChamberSet chambers;
  std::size_t color = 0;
  std::size_t u_index = 0;    // index of the source set within its color
  std::size_t component = 0;  // index among the components of the hull preimage
  ElementSet source;
};

struct LiftedCover {
  std::size_t d = 1;
  std::size_t window_radius = 0;
  std::size_t margin = 0;
  std::vector<std::vector<LiftedSet>> families;

  std::size_t set_count() const;
};

struct LiftOptions {
  /// Extra radius used while splitting into components. Unset means 0 for
  /// types D-infinity and D-infinity x D-infinity, where components of the
  /// clipped preimage are already exact, and hull_margin otherwise.
  std::optional<std::size_t> margin;
  std::size_t workers = 1;
  std::size_t cap = kDefaultChamberCap;
};

/// Largest diameter of hull(N_d(U)) over the source sets, plus d.
std::size_t hull_margin(const CoxeterSystem& sys, const ApartmentCover& cov, std::size_t cap = kDefaultChamberCap);

/// For each source set U: H = hull(N_d(U)), the preimage of T(H) in the ball of
/// radius window_radius + margin is split into gallery components A, and each
/// nonempty pi^-1(U) n A, clipped to the ball of radius window_radius, becomes
/// one lifted set of U's color.
LiftedCover build_lifted_cover(const FoldingMap& fm, const ApartmentCover& cov, std::size_t window_radius,
                               const LiftOptions& options = {});

struct SetStats {
  std::size_t color = 0;
  std::size_t index = 0;
  std::size_t size = 0;
  std::size_t diameter = 0;
};

struct CoverReport {
  std::size_t d = 0;
  std::size_t window_radius = 0;
  std::size_t window_size = 0;
  std::size_t margin = 0;
  bool covered = false;
  std::vector<std::string> uncovered;
  /// Exact when min_distance_exact; otherwise a lower bound above d.
  std::size_t min_same_color_distance = 0;
  bool min_distance_exact = true;
  std::size_t max_set_diameter = 0;
  std::size_t colors_used = 0;
  std::size_t set_count = 0;
  std::map<std::size_t, std::size_t> diameter_histogram;
  std::vector<SetStats> sets;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Recomputes coverage, same-color distances, diameters and color count from
/// the raw chamber sets. Distances are measured in the whole building.
CoverReport verify_cover(const ChamberComplex& bld, const LiftedCover& lc, const Window& window, std::size_t d,
                         std::size_t workers = 1);

struct BoundCheck {
  Word gamma;
  ChamberId gate{};
  std::size_t l = 0;
  std::size_t n = 0;
  std::size_t diameter = 0;
  std::size_t max_gate_distance = 0;
  bool ok = false;
  std::string detail;
};

/// For one gallery component V of pi^-1(U): gamma is the weak-order gate path
/// of N(U), e the component gate, N the diameter of U and L one more than the
/// largest distance from e to the first chamber of pi^-1(U) on a gamma-lift.
/// Checks delta(e, c) < L + N on V and diam(V) < 2L + 2N.
BoundCheck diameter_bound_check(const FoldingMap& fm, const ElementSet& u, const ChamberSet& v,
                                std::size_t workers = 1);

/// Largest pairwise gallery distance.
std::size_t set_diameter(const ChamberComplex& bld, const ChamberSet& x, std::size_t workers = 1);

}  // namespace asdim
