#include "folia/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "folia/error.hpp"

namespace folia::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Parse, where + ": " + what);
}

void expect_object(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(where, "expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!j.contains(k)) fail(where, std::string("missing key \"") + k + "\"");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail(where, "unknown key \"" + k + "\"");
  }
}

const Json& expect_array(const Json& j, const std::string& where, std::size_t size = 0) {
  if (!j.is_array()) fail(where, "expected an array");
  if (size && j.size() != size) fail(where, "expected " + std::to_string(size) + " elements");
  return j;
}

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Json maybe_double(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json to_json(const Interval& iv) { return Json::array({to_json(iv.lo()), to_json(iv.hi())}); }

Interval interval_from_json(const Json& j, const std::string& where) {
  expect_array(j, where, 2);
  Rational lo = rational_from_json(j[0], where + "[0]");
  Rational hi = rational_from_json(j[1], where + "[1]");
  if (!(lo < hi)) fail(where, "interval must have lo < hi");
  return Interval(lo, hi);
}

Json to_json(const geom::Point2& p) { return Json::array({to_json(p.x), to_json(p.y)}); }

geom::Point2 point_from_json(const Json& j, const std::string& where) {
  expect_array(j, where, 2);
  return {rational_from_json(j[0], where + "[0]"), rational_from_json(j[1], where + "[1]")};
}

Json to_json(const iet::PartialAiet& m) {
  Json j;
  j["ambient"] = to_json(m.ambient());
  Json pieces = Json::array();
  for (const auto& p : m.pieces()) {
    Json q;
    q["lo"] = to_json(p.domain.lo());
    q["hi"] = to_json(p.domain.hi());
    q["slope"] = to_json(p.slope);
    q["offset"] = to_json(p.offset);
    pieces.push_back(std::move(q));
  }
  j["pieces"] = std::move(pieces);
  if (!m.undefined_set().empty()) {
    Json u = Json::array();
    for (const auto& iv : m.undefined_set().parts()) u.push_back(to_json(iv));
    j["undefined"] = std::move(u);
  }
  return j;
}

Json to_json(const iet::Aiet& m) { return to_json(m.partial()); }

namespace {

std::pair<Interval, std::vector<iet::AffinePiece>> map_parts(const Json& j) {
  expect_object(j, "map", {"ambient", "pieces"}, {"undefined"});
  Interval ambient = interval_from_json(j["ambient"], "map.ambient");
  std::vector<iet::AffinePiece> pieces;
  const Json& arr = expect_array(j["pieces"], "map.pieces");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = "map.pieces[" + std::to_string(i) + "]";
    expect_object(arr[i], w, {"lo", "hi", "slope", "offset"});
    Rational lo = rational_from_json(arr[i]["lo"], w + ".lo");
    Rational hi = rational_from_json(arr[i]["hi"], w + ".hi");
    if (!(lo < hi)) fail(w, "piece must have lo < hi");
    pieces.emplace_back(Interval(lo, hi), rational_from_json(arr[i]["slope"], w + ".slope"),
                        rational_from_json(arr[i]["offset"], w + ".offset"));
  }
  return {ambient, std::move(pieces)};
}

}  // namespace

iet::PartialAiet partial_from_json(const Json& j) {
  auto [ambient, pieces] = map_parts(j);
  iet::PartialAiet m(ambient, std::move(pieces));
  if (j.contains("undefined")) {
    std::vector<Interval> u;
    const Json& arr = expect_array(j["undefined"], "map.undefined");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      u.push_back(interval_from_json(arr[i], "map.undefined[" + std::to_string(i) + "]"));
    }
    if (IntervalSet(u) != m.undefined_set()) fail("map.undefined", "does not match the gaps between pieces");
  }
  return m;
}

iet::Aiet aiet_from_json(const Json& j) {
  auto [ambient, pieces] = map_parts(j);
  if (j.contains("undefined")) fail("map", "a full map has no \"undefined\" part");
  return iet::Aiet(ambient, std::move(pieces));
}

Json to_json(const geom::Surface& s) {
  Json j;
  j["note"] = s.note;
  Json polys = Json::array();
  for (const auto& p : s.polygons) {
    Json q;
    q["id"] = p.id;
    Json vs = Json::array();
    for (const auto& v : p.vertices) vs.push_back(to_json(v));
    q["vertices"] = std::move(vs);
    polys.push_back(std::move(q));
  }
  j["polygons"] = std::move(polys);
  Json pairs = Json::array();
  for (const auto& e : s.pairings) {
    Json q;
    q["a"] = Json::array({e.a.polygon, e.a.edge});
    q["b"] = Json::array({e.b.polygon, e.b.edge});
    q["lambda"] = to_json(e.map.lambda);
    q["v"] = to_json(e.map.v);
    pairs.push_back(std::move(q));
  }
  j["pairings"] = std::move(pairs);
  return j;
}

geom::Surface surface_from_json(const Json& j) {
  expect_object(j, "surface", {"polygons", "pairings"}, {"note"});
  geom::Surface s;
  if (j.contains("note")) {
    if (!j["note"].is_string()) fail("surface.note", "expected a string");
    s.note = j["note"].get<std::string>();
  }
  const Json& polys = expect_array(j["polygons"], "surface.polygons");
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const std::string w = "surface.polygons[" + std::to_string(i) + "]";
    expect_object(polys[i], w, {"id", "vertices"});
    geom::Polygon p;
    p.id = int_from_json(polys[i]["id"], w + ".id");
    const Json& vs = expect_array(polys[i]["vertices"], w + ".vertices");
    for (std::size_t k = 0; k < vs.size(); ++k) {
      p.vertices.push_back(point_from_json(vs[k], w + ".vertices[" + std::to_string(k) + "]"));
    }
    s.polygons.push_back(std::move(p));
  }
  const Json& pairs = expect_array(j["pairings"], "surface.pairings");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string w = "surface.pairings[" + std::to_string(i) + "]";
    expect_object(pairs[i], w, {"a", "b", "lambda", "v"});
    auto edge = [&](const char* key) {
      const Json& e = expect_array(pairs[i][key], w + "." + key, 2);
      return geom::EdgeRef{int_from_json(e[0], w + "." + key), int_from_json(e[1], w + "." + key)};
    };
    geom::EdgePairing ep{edge("a"), edge("b"),
                         geom::DilationMap{rational_from_json(pairs[i]["lambda"], w + ".lambda"),
                                           point_from_json(pairs[i]["v"], w + ".v")}};
    s.pairings.push_back(ep);
  }
  return s;
}

Json to_json(const geom::ValidationReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["errors"] = r.errors;
  Json classes = Json::array();
  for (const auto& c : r.vertex_classes) {
    Json q;
    Json corners = Json::array();
    for (const auto& k : c.corners) corners.push_back(Json::array({k.polygon, k.vertex}));
    q["corners"] = std::move(corners);
    q["l"] = c.l;
    classes.push_back(std::move(q));
  }
  j["vertex_classes"] = std::move(classes);
  j["euler_characteristic"] = r.euler_characteristic;
  j["genus"] = r.genus;
  return j;
}

Json to_json(const iet::BijectivityCertificate& c) {
  Json j;
  j["bijective"] = c.bijective;
  Json d = Json::array();
  for (const auto& x : c.defects) {
    Json q;
    q["kind"] = x.kind == iet::ImageDefect::Kind::Gap ? "gap" : "overlap";
    q["where"] = to_json(x.where);
    d.push_back(std::move(q));
  }
  j["defects"] = std::move(d);
  return j;
}

Json to_json(const iet::Cycle& c) {
  Json j;
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(to_json(p));
  j["points"] = std::move(pts);
  j["period"] = c.period;
  j["multiplier"] = to_json(c.multiplier);
  j["kind"] = iet::to_string(c.kind);
  return j;
}

Json to_json(const geom::LeafTrace& t) {
  Json j;
  j["start"] = {{"polygon", t.start.polygon}, {"point", to_json(t.start.point)}};
  j["direction"] = t.direction.str();
  j["status"] = geom::to_string(t.status);
  j["crossings"] = t.events.size();
  Json ev = Json::array();
  for (const auto& e : t.events) {
    Json q;
    q["polygon"] = e.polygon;
    q["edge"] = e.edge;
    q["point"] = to_json(e.point);
    q["lambda"] = to_json(e.lambda);
    ev.push_back(std::move(q));
  }
  j["events"] = std::move(ev);
  j["accumulated_factor"] = to_json(t.accumulated_factor);
  if (t.vertex_class) j["vertex_class"] = *t.vertex_class;
  j["end"] = {{"polygon", t.end.polygon}, {"point", to_json(t.end.point)}};
  return j;
}

Json to_json(const geom::TransversalReturn& r) {
  Json j = to_json(r.map);
  if (!r.unresolved.empty()) {
    Json u = Json::array();
    for (const auto& iv : r.unresolved) u.push_back(to_json(iv));
    j["unresolved"] = std::move(u);
  }
  return j;
}

Json to_json(const rv::TwoBranchMap& m) {
  Json j;
  j["L"] = to_json(m.L());
  j["p"] = to_json(m.p());
  j["a"] = {{"slope", to_json(m.a().slope)}, {"offset", to_json(m.a().offset)}};
  j["b"] = {{"slope", to_json(m.b().slope)}, {"offset", to_json(m.b().offset)}};
  return j;
}

Json to_json(const rv::ClassificationReport& r) {
  Json j;
  j["outcome"] = rv::to_string(r.outcome);
  j["step"] = r.step;
  j["depth"] = r.depth;
  j["word"] = r.word;
  if (r.cycle) {
    Json pts = Json::array();
    for (const auto& p : r.cycle->points) pts.push_back(to_json(p));
    j["cycle"] = std::move(pts);
    j["multiplier"] = to_json(r.cycle->multiplier);
  }
  j["final_map"] = to_json(r.final_map);
  return j;
}

Json to_json(const rv::SweepResult& r) {
  Json j;
  j["counts"] = {{"morse-smale", r.counts.morse_smale},
                 {"saddle-connection", r.counts.saddle_connection},
                 {"undetermined", r.counts.undetermined},
                 {"non-standard", r.counts.non_standard},
                 {"errors", r.counts.errors}};
  Json es = Json::array();
  for (const auto& e : r.entries) {
    Json q;
    q["slope"] = to_json(e.slope);
    if (e.report) {
      q["report"] = to_json(*e.report);
    } else {
      q["error"] = e.error;
    }
    es.push_back(std::move(q));
  }
  j["entries"] = std::move(es);
  return j;
}

Json to_json(const attractor::CantorApprox& a) {
  Json j;
  j["L"] = to_json(a.L);
  j["hole"] = to_json(a.hole);
  j["depth"] = a.depth;
  Json gaps = Json::array();
  for (const auto& g : a.gaps) {
    Json q;
    q["n"] = g.n;
    q["lo"] = to_json(g.lo);
    q["hi"] = to_json(g.hi);
    gaps.push_back(std::move(q));
  }
  j["gaps"] = std::move(gaps);
  j["residualMeasure"] = to_json(a.residual_measure);
  if (a.singular_encounter) {
    j["singularEncounter"] = {{"n", a.singular_encounter->n}, {"point", to_json(a.singular_encounter->point)}};
  }
  return j;
}

Json to_json(const attractor::AttractionReport& r) {
  Json j;
  Json per = Json::array();
  for (const auto& s : r.samples) {
    Json q;
    q["sample"] = to_json(s.sample);
    Json d = Json::array();
    for (const auto& x : s.distances) d.push_back(to_json(x));
    q["distances"] = std::move(d);
    q["non_increasing"] = s.non_increasing;
    q["within_gap_bound"] = s.within_gap_bound;
    per.push_back(std::move(q));
  }
  j["samples"] = std::move(per);
  j["all_non_increasing"] = r.all_non_increasing;
  j["all_within_gap_bound"] = r.all_within_gap_bound;
  return j;
}

Json to_json(const attractor::BoxCounting& b) {
  Json j;
  j["approx"] = true;
  j["slope"] = b.slope;
  j["log_inverse_scale"] = b.log_inverse_scale;
  j["log_count"] = b.log_count;
  j["residuals"] = b.residuals;
  return j;
}

Json to_json(const conj::ConjugacyApprox& a, bool include_tables) {
  Json j;
  j["approx"] = true;
  j["lambda0"] = a.lambda0;
  j["betas"] = a.betas;
  j["points"] = a.sample ? a.sample->points.size() : 0;
  j["max_gap"] = a.sample ? a.sample->max_gap : 0.0;
  j["degenerate"] = a.degenerate;
  j["cauchy_max"] = a.cauchy_max;
  j["nearest_singular_orbit_distance"] = maybe_double(a.nearest_singular_orbit_distance);
  if (include_tables) {
    j["h"] = a.h;
    j["cauchy"] = a.cauchy;
  }
  return j;
}

Json to_json(const conj::DisplacementReport& r) {
  Json j;
  j["approx"] = true;
  j["pairs"] = r.pairs;
  j["max_violation_per_beta"] = r.max_violation_per_beta;
  j["max_violation"] = r.max_violation;
  j["monotone"] = r.monotone;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const conj::ExtractedIet& e) {
  Json j;
  j["map"] = to_json(e.map);
  Json q;
  q["approx"] = true;
  q["breakpoints"] = e.quality.breakpoints;
  q["translations"] = e.quality.translations;
  q["fit_residual"] = e.quality.fit_residual;
  q["max_translation_snap_error"] = e.quality.max_translation_snap_error;
  q["bijective"] = e.quality.bijective;
  j["quality"] = std::move(q);
  return j;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace folia::io
