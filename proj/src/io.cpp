#include "asdim/io.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace asdim {

namespace {

bool is_count(const Json& x) { return x.is_number_integer() && x.get<std::int64_t>() >= 0; }

Json word_json(const Word& w) {
  Json out = Json::array();
  for (GeneratorId s : w) out.push_back(static_cast<int>(s));
  return out;
}

Word word_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected a word as an array of generator indices");
  Word w;
  for (const Json& x : j) {
    if (!is_count(x) || x.get<std::size_t>() >= kMaxRank) {
      throw InvalidArgument("bad generator index in word");
    }
    w.push_back(static_cast<GeneratorId>(x.get<std::size_t>()));
  }
  return w;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t unsigned_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!is_count(v)) throw InvalidArgument(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::unordered_map<ChamberId, std::size_t> window_index(const Window& window) {
  std::unordered_map<ChamberId, std::size_t> out;
  out.reserve(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) out.emplace(window.chambers[i], i);
  return out;
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json coxeter_to_json(const CoxeterMatrix& m) {
  Json out;
  out["rank"] = m.rank();
  out["m"] = m.rows();
  return out;
}

CoxeterMatrix coxeter_from_json(const Json& j) {
  const std::size_t rank = unsigned_field(j, "rank");
  const Json& rows = field(j, "m");
  if (!rows.is_array() || rows.size() != rank) throw InvalidArgument("coxeter matrix: 'm' must have 'rank' rows");
  std::vector<std::vector<int>> m;
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != rank) throw InvalidArgument("coxeter matrix: rows must have 'rank' entries");
    std::vector<int> r;
    for (const Json& x : row) {
      if (!x.is_number_integer()) throw InvalidArgument("coxeter matrix: entries must be integers");
      r.push_back(x.get<int>());
    }
    m.push_back(std::move(r));
  }
  CoxeterMatrix out = CoxeterMatrix::from_rows(m);
  if (const std::string err = out.validation_error(); !err.empty()) throw InvalidArgument("coxeter matrix: " + err);
  return out;
}

CoxeterSystem coxeter_by_name(const std::string& name) {
  if (name == "Dinf") return CoxeterSystem::infinite_dihedral();
  if (name == "A1") return CoxeterSystem(CoxeterMatrix(1, {1}));
  if (name == "A2") return CoxeterSystem::dihedral(3);
  if (name == "B2") return CoxeterSystem::dihedral(4);
  if (name == "G2") return CoxeterSystem::dihedral(6);
  if (name == "affine-A2") return CoxeterSystem::affine_a2();
  if (name == "Dinf^2") return CoxeterSystem::product(CoxeterSystem::infinite_dihedral(), CoxeterSystem::infinite_dihedral());
  if (name.size() > 4 && name.rfind("I2(", 0) == 0 && name.back() == ')') {
    const std::string digits = name.substr(3, name.size() - 4);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() < 6) {
      return CoxeterSystem::dihedral(std::stoi(digits));
    }
  }
  throw InvalidArgument("unknown Coxeter system '" + name + "'");
}

CoxeterSystem parse_coxeter(const Json& j) {
  if (j.is_string()) return coxeter_by_name(j.get<std::string>());
  return CoxeterSystem(coxeter_from_json(j));
}

BuildingPtr make_building(const Json& d) {
  const Json& kind_json = field(d, "kind");
  if (!kind_json.is_string()) throw InvalidArgument("descriptor 'kind' must be a string");
  const std::string kind = kind_json.get<std::string>();
  if (kind == "thin") return thin_building(parse_coxeter(field(d, "coxeter")));
  if (kind == "tree") return tree_building(unsigned_field(d, "q"));
  if (kind == "fano") return fano_building();
  if (kind == "product") return product_building(make_building(field(d, "first")), make_building(field(d, "second")));
  if (kind == "rab") {
    const CoxeterSystem sys = parse_coxeter(field(d, "coxeter"));
    const Json& params = field(d, "params");
    if (!params.is_array()) throw InvalidArgument("rab 'params' must be an array");
    std::vector<std::size_t> thickness;
    for (const Json& p : params) {
      if (!is_count(p)) throw InvalidArgument("rab 'params' entries must be positive integers");
      thickness.push_back(p.get<std::size_t>());
    }
    return right_angled_building(sys, std::move(thickness));
  }
  throw InvalidArgument("unknown building kind '" + kind + "'");
}

Json window_to_json(const ChamberComplex& bld, const Window& window, const Json& descriptor) {
  const auto index = window_index(window);
  const std::size_t rank = bld.coxeter().rank();
  Json chambers = Json::array();
  for (std::size_t i = 0; i < window.size(); ++i) {
    const ChamberId c = window.chambers[i];
    Json panels = Json::array();
    Json sizes = Json::array();
    for (std::size_t s = 0; s < rank; ++s) {
      const ChamberSet pan = bld.panel(c, static_cast<GeneratorId>(s));
      std::vector<std::size_t> inside;
      for (ChamberId p : pan) {
        if (auto it = index.find(p); it != index.end()) inside.push_back(it->second);
      }
      std::sort(inside.begin(), inside.end());
      panels.push_back(inside);
      sizes.push_back(pan.size());
    }
    Json ch;
    ch["id"] = i;
    ch["label"] = bld.label(c);
    ch["depth"] = window.depth[i];
    ch["fold"] = word_json(bld.w_distance(window.center, c).word());
    ch["panels"] = std::move(panels);
    ch["panel_sizes"] = std::move(sizes);
    chambers.push_back(std::move(ch));
  }
  Json out;
  out["descriptor"] = descriptor;
  out["radius"] = window.radius;
  out["chamber_count"] = window.size();
  out["coxeter"] = coxeter_to_json(bld.coxeter().matrix());
  out["chambers"] = std::move(chambers);
  return out;
}

WindowData window_from_json(const Json& j) {
  WindowData w;
  w.descriptor = field(j, "descriptor");
  w.radius = unsigned_field(j, "radius");
  w.matrix = coxeter_from_json(field(j, "coxeter"));
  const Json& chambers = field(j, "chambers");
  if (!chambers.is_array()) throw InvalidArgument("window 'chambers' must be an array");
  if (unsigned_field(j, "chamber_count") != chambers.size()) throw InvalidArgument("window chamber_count mismatch");
  const std::size_t rank = w.matrix.rank();
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    const Json& c = chambers[i];
    if (unsigned_field(c, "id") != i) throw InvalidArgument("window chamber ids must be consecutive");
    WindowChamber wc;
    const Json& label = field(c, "label");
    if (!label.is_string()) throw InvalidArgument("chamber label must be a string");
    wc.label = label.get<std::string>();
    wc.depth = unsigned_field(c, "depth");
    wc.fold = word_from_json(field(c, "fold"));
    const Json& panels = field(c, "panels");
    const Json& sizes = field(c, "panel_sizes");
    if (!panels.is_array() || panels.size() != rank || !sizes.is_array() || sizes.size() != rank) {
      throw InvalidArgument("chamber " + std::to_string(i) + ": one panel per generator required");
    }
    for (std::size_t s = 0; s < rank; ++s) {
      std::vector<std::size_t> members;
      if (!panels[s].is_array()) throw InvalidArgument("panel must be an array of chamber ids");
      for (const Json& x : panels[s]) {
        if (!is_count(x) || x.get<std::size_t>() >= chambers.size()) {
          throw InvalidArgument("chamber " + std::to_string(i) + ": panel refers to an unknown chamber");
        }
        members.push_back(x.get<std::size_t>());
      }
      wc.panels.push_back(std::move(members));
      if (!is_count(sizes[s])) throw InvalidArgument("panel sizes must be integers");
      wc.panel_sizes.push_back(sizes[s].get<std::size_t>());
    }
    w.chambers.push_back(std::move(wc));
  }
  return w;
}

std::vector<std::string> check_window(const WindowData& w) {
  std::vector<std::string> out;
  const CoxeterSystem sys(w.matrix);
  const std::size_t n = w.chambers.size();
  const std::size_t rank = sys.rank();
  auto name = [&](std::size_t i) { return "chamber " + std::to_string(i) + " [" + w.chambers[i].label + "]"; };
  if (n == 0) {
    out.push_back("window is empty");
    return out;
  }
  if (!w.chambers[0].fold.empty()) out.push_back("base chamber does not fold to the identity");

  std::vector<Element> folds;
  folds.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const WindowChamber& c = w.chambers[i];
    sys.check_word(c.fold);
    folds.push_back(sys.element(c.fold));
    if (folds.back().word() != c.fold) out.push_back(name(i) + ": fold word is not in normal form");
  }

  std::vector<std::size_t> dist(n, SIZE_MAX);
  dist[0] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& pan : w.chambers[i].panels) {
      for (std::size_t j : pan) {
        if (dist[j] == SIZE_MAX) {
          dist[j] = dist[i] + 1;
          queue.push_back(j);
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const WindowChamber& c = w.chambers[i];
    if (c.depth > w.radius) out.push_back(name(i) + ": depth exceeds the radius");
    if (dist[i] != c.depth) out.push_back(name(i) + ": depth differs from the breadth-first distance");
    if (folds[i].length() != c.depth) out.push_back(name(i) + ": fold length differs from the depth");
    for (std::size_t s = 0; s < rank; ++s) {
      const auto& pan = c.panels[s];
      if (std::find(pan.begin(), pan.end(), i) == pan.end()) out.push_back(name(i) + ": missing from its own panel");
      if (c.panel_sizes[s] < 2 || c.panel_sizes[s] < pan.size()) out.push_back(name(i) + ": bad panel size");
      const Element ws = sys.multiply(folds[i], static_cast<GeneratorId>(s));
      const bool longer = ws.length() > folds[i].length();
      bool projection = longer;
      for (std::size_t j : pan) {
        if (w.chambers[j].panels[s] != pan) out.push_back(name(i) + ": panel is not symmetric");
        if (j == i) continue;
        if (folds[j] == ws) {
          projection = true;
        } else if (longer || folds[j] != folds[i]) {
          out.push_back(name(i) + ": panel neighbour " + std::to_string(j) + " has the wrong fold");
        }
      }
      if (!projection) out.push_back(name(i) + ": no panel neighbour one step closer to the base");
    }
  }
  return out;
}

Json cover_to_json(const LiftedCover& lc, const Window& window, const Json& descriptor) {
  const auto index = window_index(window);
  Json families = Json::array();
  for (const auto& family : lc.families) {
    Json sets = Json::array();
    for (const LiftedSet& set : family) {
      std::vector<std::size_t> ids;
      for (ChamberId c : set.chambers) {
        auto it = index.find(c);
        if (it == index.end()) throw InvalidArgument("cover_to_json: a set member lies outside the window");
        ids.push_back(it->second);
      }
      Json elements = Json::array();
      for (const Element& w : set.source) elements.push_back(word_json(w.word()));
      Json source;
      source["color"] = set.color;
      source["u_index"] = set.u_index;
      source["component"] = set.component;
      source["elements"] = std::move(elements);
      Json s;
      s["chambers"] = ids;
      s["source"] = std::move(source);
      sets.push_back(std::move(s));
    }
    families.push_back(std::move(sets));
  }
  Json out;
  out["d"] = lc.d;
  out["window_radius"] = lc.window_radius;
  out["margin"] = lc.margin;
  out["descriptor"] = descriptor;
  out["families"] = std::move(families);
  return out;
}

LiftedCover cover_from_json(const Json& j, const Window& window, const CoxeterSystem& sys) {
  LiftedCover lc;
  lc.d = unsigned_field(j, "d");
  lc.window_radius = unsigned_field(j, "window_radius");
  lc.margin = unsigned_field(j, "margin");
  const Json& families = field(j, "families");
  if (!families.is_array()) throw InvalidArgument("cover 'families' must be an array");
  for (std::size_t color = 0; color < families.size(); ++color) {
    if (!families[color].is_array()) throw InvalidArgument("cover family must be an array");
    std::vector<LiftedSet> family;
    for (const Json& s : families[color]) {
      LiftedSet set;
      const Json& ids = field(s, "chambers");
      if (!ids.is_array()) throw InvalidArgument("cover set 'chambers' must be an array");
      for (const Json& x : ids) {
        if (!is_count(x) || x.get<std::size_t>() >= window.size()) {
          throw InvalidArgument("cover set refers to a chamber outside the window");
        }
        set.chambers.push_back(window.chambers[x.get<std::size_t>()]);
      }
      const Json& source = field(s, "source");
      set.color = unsigned_field(source, "color");
      if (set.color != color) throw InvalidArgument("cover set color disagrees with its family");
      set.u_index = unsigned_field(source, "u_index");
      set.component = unsigned_field(source, "component");
      const Json& elements = field(source, "elements");
      if (!elements.is_array()) throw InvalidArgument("cover source 'elements' must be an array");
      for (const Json& e : elements) {
        const Word w = word_from_json(e);
        sys.check_word(w);
        set.source.push_back(sys.element(w));
      }
      family.push_back(std::move(set));
    }
    lc.families.push_back(std::move(family));
  }
  return lc;
}

Json apartment_cover_to_json(const ApartmentCover& cov) {
  Json families = Json::array();
  for (const auto& family : cov.families) {
    Json sets = Json::array();
    for (const ElementSet& u : family) {
      Json elements = Json::array();
      for (const Element& w : u) elements.push_back(word_json(w.word()));
      sets.push_back({{"elements", std::move(elements)}});
    }
    families.push_back(std::move(sets));
  }
  return {{"d", cov.d}, {"mesh", cov.mesh}, {"window_radius", cov.window_radius}, {"families", std::move(families)}};
}

Json report_to_json(const CoverReport& rep) {
  Json hist = Json::object();
  for (const auto& [diam, count] : rep.diameter_histogram) hist[std::to_string(diam)] = count;
  Json sets = Json::array();
  for (const SetStats& s : rep.sets) {
    sets.push_back({{"color", s.color}, {"index", s.index}, {"size", s.size}, {"diameter", s.diameter}});
  }
  Json out;
  out["d"] = rep.d;
  out["window_radius"] = rep.window_radius;
  out["window_size"] = rep.window_size;
  out["margin"] = rep.margin;
  out["covered"] = rep.covered;
  out["uncovered"] = rep.uncovered;
  out["min_same_color_distance"] = rep.min_same_color_distance;
  out["min_distance_exact"] = rep.min_distance_exact;
  out["max_set_diameter"] = rep.max_set_diameter;
  out["colors_used"] = rep.colors_used;
  out["set_count"] = rep.set_count;
  out["diameter_histogram"] = std::move(hist);
  out["sets"] = std::move(sets);
  out["violations"] = rep.violations;
  out["ok"] = rep.ok();
  return out;
}

std::string report_to_csv(const CoverReport& rep) {
  std::ostringstream out;
  out << "color,index,size,diameter\n";
  for (const SetStats& s : rep.sets) out << s.color << ',' << s.index << ',' << s.size << ',' << s.diameter << '\n';
  return out.str();
}

Json gallery_to_json(const ChamberComplex& bld, const Gallery& g) {
  Json chambers = Json::array();
  for (ChamberId c : g.chambers) chambers.push_back(bld.label(c));
  return {{"chambers", std::move(chambers)}, {"type", word_json(g.type)}, {"length", g.length()}};
}

std::string window_to_dot(const ChamberComplex& bld, const Window& window, const LiftedCover* cover) {
  static const char* const kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                         "#ff7f00", "#ffff33", "#a65628", "#f781bf"};
  const auto index = window_index(window);
  std::vector<std::string> tag(window.size());
  std::vector<std::size_t> color(window.size(), SIZE_MAX);
  if (cover) {
    for (std::size_t i = 0; i < cover->families.size(); ++i) {
      for (std::size_t k = 0; k < cover->families[i].size(); ++k) {
        for (ChamberId c : cover->families[i][k].chambers) {
          auto it = index.find(c);
          if (it == index.end()) continue;
          if (!tag[it->second].empty()) tag[it->second] += ' ';
          tag[it->second] += std::to_string(i) + ":" + std::to_string(k);
          color[it->second] = i;
        }
      }
    }
  }
  auto escape = [](std::string s) {
    std::string out;
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out;
  };
  std::ostringstream out;
  out << "graph window {\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t i = 0; i < window.size(); ++i) {
    const ChamberId c = window.chambers[i];
    out << "  n" << i << " [label=\"" << escape(bld.label(c));
    if (!tag[i].empty()) out << "\\n" << tag[i];
    out << '"';
    if (c == window.center) out << ", shape=doublecircle";
    if (color[i] != SIZE_MAX) out << ", style=filled, fillcolor=\"" << kPalette[color[i] % 8] << '"';
    out << "];\n";
  }
  const std::size_t rank = bld.coxeter().rank();
  for (std::size_t i = 0; i < window.size(); ++i) {
    for (std::size_t s = 0; s < rank; ++s) {
      for (ChamberId p : bld.panel(window.chambers[i], static_cast<GeneratorId>(s))) {
        auto it = index.find(p);
        if (it == index.end() || it->second <= i) continue;
        out << "  n" << i << " -- n" << it->second << " [label=\"" << s << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace asdim
