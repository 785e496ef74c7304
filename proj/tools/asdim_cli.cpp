#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asdim/io.hpp"

namespace fs = std::filesystem;
using namespace asdim;

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kFailure = 2;

struct Options {
  std::string building = "tree";
  std::size_t q = 2;
  std::string coxeter;
  std::vector<std::size_t> params;
  std::size_t radius = 3;
  std::size_t d = 1;
  std::string cover_mode = "interval";
  std::size_t max_chambers = kDefaultChamberCap;
  std::string margin = "auto";
  std::string out;
  std::string report;
  std::string format = "json";
  std::size_t workers = 1;
  std::string from;
  std::string to;
  std::string prefix;
  std::string cover;
  std::optional<std::size_t> verify_d;
};

// Outputs are written to a sibling temporary and renamed once complete.
class OutputSet {
 public:
  void add(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      stdout_text_ += text;
      return;
    }
    const std::string tmp = path + ".partial";
    std::ofstream f(tmp, std::ios::binary);
    f << text;
    f.close();
    if (!f) {
      std::remove(tmp.c_str());
      throw Error("cannot write " + path);
    }
    pending_.emplace_back(tmp, path);
  }

  void commit() {
    for (const auto& [tmp, path] : pending_) fs::rename(tmp, path);
    pending_.clear();
    std::cout << stdout_text_;
  }

  ~OutputSet() {
    for (const auto& [tmp, path] : pending_) std::remove(tmp.c_str());
  }

 private:
  std::vector<std::pair<std::string, std::string>> pending_;
  std::string stdout_text_;
};

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

Json descriptor_from(const Options& o) {
  const Json tree{{"kind", "tree"}, {"q", o.q}};
  if (o.building == "tree") return tree;
  if (o.building == "fano") return {{"kind", "fano"}};
  if (o.building == "thin") return {{"kind", "thin"}, {"coxeter", o.coxeter.empty() ? "Dinf" : o.coxeter}};
  if (o.building == "rab") {
    return {{"kind", "rab"}, {"coxeter", o.coxeter.empty() ? "Dinf" : o.coxeter}, {"params", o.params}};
  }
  if (o.building == "product") return {{"kind", "product"}, {"first", tree}, {"second", tree}};
  if (fs::exists(o.building)) return read_json_file(o.building);
  throw InvalidArgument("unknown building '" + o.building + "' (tree, thin, rab, product, fano or a descriptor file)");
}

ChamberId find_label(const ChamberComplex& bld, const Window& window, const std::string& label) {
  for (ChamberId c : window.chambers) {
    if (bld.label(c) == label) return c;
  }
  throw UnknownChamber("no chamber labelled '" + label + "' within radius " + std::to_string(window.radius));
}

Word parse_word(const std::string& text) {
  std::string spaced = text;
  for (char& ch : spaced) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(spaced);
  Word w;
  for (std::string tok; in >> tok;) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 2 ||
        std::stoul(tok) >= kMaxRank) {
      throw InvalidArgument("bad generator '" + tok + "' in prefix");
    }
    w.push_back(static_cast<GeneratorId>(std::stoul(tok)));
  }
  return w;
}

ApartmentCover apartment_cover(const CoxeterSystem& sys, const Options& o) {
  const CoxeterSystem dinf = CoxeterSystem::infinite_dihedral();
  if (o.cover_mode == "interval") {
    if (sys.matrix() != dinf.matrix()) throw InvalidArgument("interval covers need a building of type Dinf");
    return interval_cover(sys, o.d, o.radius);
  }
  if (o.cover_mode != "brick" && o.cover_mode != "product") {
    throw InvalidArgument("unknown cover mode '" + o.cover_mode + "'");
  }
  if (sys.matrix() != coxeter_by_name("Dinf^2").matrix()) {
    throw InvalidArgument("brick and product covers need a building of type Dinf^2");
  }
  const ApartmentCover line = interval_cover(dinf, o.d, o.radius);
  const ProductMode mode = o.cover_mode == "brick" ? ProductMode::Brick : ProductMode::ProductColors;
  ApartmentCover cov = brick_cover_product(dinf, line, dinf, line, o.d, mode);
  cov.window_radius = o.radius;
  return cov;
}

std::string render_report(const CoverReport& rep, const std::string& format) {
  return format == "csv" ? report_to_csv(rep) : dump_json(report_to_json(rep));
}

int cmd_build(const Options& o) {
  const Json desc = descriptor_from(o);
  const BuildingPtr bld = make_building(desc);
  const Window w = chamber_ball(*bld, bld->base(), o.radius, o.max_chambers);
  OutputSet out;
  out.add(o.out, dump_json(window_to_json(*bld, w, desc)));
  out.commit();
  return kOk;
}

int cmd_cover(const Options& o) {
  const Json desc = descriptor_from(o);
  const BuildingPtr bld = make_building(desc);
  const FoldingMap fm(bld);
  const ApartmentCover cov = apartment_cover(bld->coxeter(), o);
  LiftOptions lo;
  lo.workers = o.workers;
  lo.cap = o.max_chambers;
  if (o.margin != "auto") {
    if (o.margin.empty() || o.margin.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidArgument("--margin takes a non-negative integer or 'auto'");
    }
    lo.margin = std::stoul(o.margin);
  }
  const LiftedCover lc = build_lifted_cover(fm, cov, o.radius, lo);
  const Window w = chamber_ball(*bld, bld->base(), o.radius, o.max_chambers);
  const CoverReport rep = verify_cover(*bld, lc, w, o.d, o.workers);

  OutputSet out;
  out.add(o.out, dump_json(cover_to_json(lc, w, desc)));
  out.add(o.report, render_report(rep, o.format));
  out.commit();
  for (const std::string& v : rep.violations) std::cerr << "violation: " << v << "\n";
  return rep.ok() ? kOk : kViolations;
}

int cmd_gallery(const Options& o) {
  const BuildingPtr bld = make_building(descriptor_from(o));
  const Window w = chamber_ball(*bld, bld->base(), o.radius, o.max_chambers);
  const ChamberId from = o.from.empty() ? bld->base() : find_label(*bld, w, o.from);
  const ChamberId to = find_label(*bld, w, o.to);
  Gallery g;
  if (!o.prefix.empty()) {
    if (from != bld->base()) throw InvalidArgument("--prefix galleries start at the base chamber");
    g = lift_with_prefix(FoldingMap(bld), to, parse_word(o.prefix));
  } else {
    g = minimal_gallery(*bld, from, to);
  }
  OutputSet out;
  out.add(o.out, dump_json(gallery_to_json(*bld, g)));
  out.commit();
  return kOk;
}

int cmd_verify(const Options& o) {
  if (o.cover.empty()) throw InvalidArgument("verify needs --cover");
  const Json cj = read_json_file(o.cover);
  if (!cj.is_object() || !cj.contains("descriptor") || !cj.contains("window_radius") || !cj.contains("d")) {
    throw InvalidArgument(o.cover + ": not a cover file");
  }
  const BuildingPtr bld = make_building(cj.at("descriptor"));
  const Window w = chamber_ball(*bld, bld->base(), cj.at("window_radius").get<std::size_t>(), o.max_chambers);
  const LiftedCover lc = cover_from_json(cj, w, bld->coxeter());
  const CoverReport rep = verify_cover(*bld, lc, w, o.verify_d.value_or(lc.d), o.workers);
  OutputSet out;
  out.add(o.out.empty() ? o.report : o.out, render_report(rep, o.format));
  out.commit();
  for (const std::string& v : rep.violations) std::cerr << "violation: " << v << "\n";
  return rep.ok() ? kOk : kViolations;
}

int cmd_export_dot(const Options& o) {
  std::optional<Json> cj;
  if (!o.cover.empty()) cj = read_json_file(o.cover);
  const Json desc = cj ? cj->at("descriptor") : descriptor_from(o);
  const BuildingPtr bld = make_building(desc);
  const std::size_t radius = cj ? cj->at("window_radius").get<std::size_t>() : o.radius;
  const Window w = chamber_ball(*bld, bld->base(), radius, o.max_chambers);
  std::optional<LiftedCover> lc;
  if (cj) lc = cover_from_json(*cj, w, bld->coxeter());
  OutputSet out;
  out.add(o.out, window_to_dot(*bld, w, lc ? &*lc : nullptr));
  out.commit();
  return kOk;
}

void building_flags(CLI::App* app, Options& o) {
  app->add_option("--building", o.building, "tree, thin, rab, product, fano or a JSON descriptor file");
  app->add_option("--q", o.q, "tree thickness (panel size q+1)");
  app->add_option("--coxeter", o.coxeter, "Coxeter system name for thin and rab buildings");
  app->add_option("--params", o.params, "rab thickness per generator")->delimiter(',');
  app->add_option("--radius", o.radius, "window radius");
  app->add_option("--max-chambers", o.max_chambers, "chamber cap");
  app->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "output path (stdout if omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifted covers of buildings and their verification"};
  app.require_subcommand(1);
  Options o;

  CLI::App* build = app.add_subcommand("build", "write the chamber window around the base chamber");
  building_flags(build, o);

  CLI::App* cover = app.add_subcommand("cover", "lift an apartment cover and verify it");
  building_flags(cover, o);
  cover->add_option("--d", o.d, "scale")->check(CLI::PositiveNumber);
  cover->add_option("--cover-mode", o.cover_mode, "interval, brick or product")
      ->check(CLI::IsMember({"interval", "brick", "product"}));
  cover->add_option("--margin", o.margin, "window enlargement, or 'auto'");
  cover->add_option("--report", o.report, "report path (stdout if omitted)");
  cover->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* gallery = app.add_subcommand("gallery", "print a minimal gallery");
  building_flags(gallery, o);
  gallery->add_option("--from", o.from, "start label (base if omitted)");
  gallery->add_option("--to", o.to, "end label")->required();
  gallery->add_option("--prefix", o.prefix, "required type prefix, e.g. \"0 1\"");

  CLI::App* verify = app.add_subcommand("verify", "recompute the report of a stored cover");
  verify->add_option("--cover", o.cover, "cover file")->required();
  verify->add_option("--d", o.verify_d, "scale to verify against (cover scale if omitted)");
  verify->add_option("--max-chambers", o.max_chambers, "chamber cap");
  verify->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--out,--report", o.out, "report path (stdout if omitted)");
  verify->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* dot = app.add_subcommand("export-dot", "write the window as a DOT graph");
  building_flags(dot, o);
  dot->add_option("--cover", o.cover, "cover file to overlay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (*build) return cmd_build(o);
    if (*cover) return cmd_cover(o);
    if (*gallery) return cmd_gallery(o);
    if (*verify) return cmd_verify(o);
    if (*dot) return cmd_export_dot(o);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kFailure;
}
