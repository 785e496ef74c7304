#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "asdim/building.hpp"
#include "asdim/covers.hpp"

namespace asdim {

using Json = nlohmann::json;

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string dump_json(const Json& j);

// Coxeter systems -----------------------------------------------------------

/// { "rank": n, "m": [[...]] } with 0 for infinity.
Json coxeter_to_json(const CoxeterMatrix& m);
CoxeterMatrix coxeter_from_json(const Json& j);
/// Dinf, A1, A2, B2, G2, I2(m), affine-A2, Dinf^2.
CoxeterSystem coxeter_by_name(const std::string& name);
/// A name from the list above, or a matrix object.
CoxeterSystem parse_coxeter(const Json& j);

// Buildings -----------------------------------------------------------------

/// Descriptors: {"kind":"thin","coxeter":...}, {"kind":"tree","q":q},
/// {"kind":"rab","coxeter":...,"params":[...]}, {"kind":"product","first":...,"second":...},
/// {"kind":"fano"}. Throws InvalidArgument on malformed input.
BuildingPtr make_building(const Json& descriptor);

/// Chamber window keyed by breadth-first index: label, depth, fold word and,
/// for each generator, the window indices of the panel and its full size.
Json window_to_json(const ChamberComplex& bld, const Window& window, const Json& descriptor);

struct WindowChamber {
  std::string label;
  std::size_t depth = 0;
  Word fold;
  std::vector<std::vector<std::size_t>> panels;
  std::vector<std::size_t> panel_sizes;
};

struct WindowData {
  Json descriptor;
  std::size_t radius = 0;
  CoxeterMatrix matrix;
  std::vector<WindowChamber> chambers;
};

WindowData window_from_json(const Json& j);
/// Building invariants that can be checked from the window alone: fold of the
/// base, depth = length of fold = breadth-first distance, panel symmetry and
/// sizes, panel folds in {w, ws} with ws for the longer one, and projections.
std::vector<std::string> check_window(const WindowData& w);

// Covers and reports --------------------------------------------------------

/// Chambers are written as window indices; sources keep their element words.
Json cover_to_json(const LiftedCover& lc, const Window& window, const Json& descriptor);
LiftedCover cover_from_json(const Json& j, const Window& window, const CoxeterSystem& sys);

Json apartment_cover_to_json(const ApartmentCover& cov);

Json report_to_json(const CoverReport& rep);
/// One row per lifted set.
std::string report_to_csv(const CoverReport& rep);

Json gallery_to_json(const ChamberComplex& bld, const Gallery& g);

/// Chambers as nodes, panel adjacencies as edges labelled by type. With a
/// cover, nodes are filled by color and labelled by set index; the base is
/// drawn as a double circle.
std::string window_to_dot(const ChamberComplex& bld, const Window& window, const LiftedCover* cover = nullptr);

}  // namespace asdim
