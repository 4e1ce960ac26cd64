#include "cli.hpp"

#include <sys/resource.h>

#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "folia/attractor.hpp"
#include "folia/conjugacy.hpp"
#include "folia/error.hpp"
#include "folia/fixtures.hpp"
#include "folia/json_io.hpp"
#include "folia/rauzy.hpp"
#include "folia/surface.hpp"
#include "folia/svg.hpp"
#include "folia/sweep.hpp"
#include "folia/trace.hpp"

namespace folia::cli {

namespace {

using io::Json;

// A malformed flag value. Reported with exit code 2.
struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

template <class F>
auto flag_value(const std::string& flag, F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const Error& e) {
    throw UsageError(flag, e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag, e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(flag, e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

geom::Point2 parse_xy(const std::string& text) {
  auto xy = split(text, ',');
  if (xy.size() != 2) throw Error(ErrorCode::Parse, "expected x,y but got \"" + text + "\"");
  return {Rational::parse(xy[0]), Rational::parse(xy[1])};
}

// "poly:x,y"
geom::SurfacePoint parse_surface_point(const std::string& flag, const std::string& text) {
  return flag_value(flag, [&] {
    auto parts = split(text, ':');
    if (parts.size() != 2) throw Error(ErrorCode::Parse, "expected poly:x,y but got \"" + text + "\"");
    return geom::SurfacePoint{std::stoi(parts[0]), parse_xy(parts[1])};
  });
}

// "poly:x0,y0:x1,y1"
geom::Transversal parse_transversal(const std::string& flag, const std::string& text) {
  return flag_value(flag, [&] {
    auto parts = split(text, ':');
    if (parts.size() != 3) throw Error(ErrorCode::Parse, "expected poly:x0,y0:x1,y1 but got \"" + text + "\"");
    return geom::Transversal{std::stoi(parts[0]), parse_xy(parts[1]), parse_xy(parts[2])};
  });
}

geom::Direction parse_direction(const std::string& flag, const std::string& text) {
  return flag_value(flag, [&] { return geom::Direction::parse(text); });
}

Rational parse_rational(const std::string& flag, const std::string& text) {
  return flag_value(flag, [&] { return Rational::parse(text); });
}

// Edges of polygon 0 lying on its lowest horizontal line, left to right.
geom::TransversalSpec bottom_of_first_polygon(const geom::Surface& s) {
  if (s.polygons.empty()) throw Error(ErrorCode::InvalidSurface, "surface has no polygons");
  const auto& p = s.polygons[0];
  Rational low = p.vertices.at(0).y;
  for (const auto& v : p.vertices) low = min(low, v.y);
  geom::TransversalSpec spec;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p.vertex(i);
    const auto& b = p.vertex(i + 1);
    if (a.y == low && b.y == low && a.x < b.x) spec.transversals.push_back({0, a, b});
  }
  if (spec.transversals.empty()) throw Error(ErrorCode::InvalidTransversal, "polygon 0 has no bottom edge");
  std::sort(spec.transversals.begin(), spec.transversals.end(),
            [](const auto& u, const auto& v) { return u.start.x < v.start.x; });
  spec.origin = spec.transversals.front().start.x;
  return spec;
}

void emit(const Json& j, const std::string& output, std::ostream& out) {
  const std::string text = io::dump(j);
  if (output.empty()) {
    out << text;
  } else {
    io::write_file(output, text);
  }
}

geom::Surface load_surface(const std::string& path) { return io::surface_from_json(io::read_file(path)); }

// Piecewise map evaluated in double precision, for the conjugacy tools.
struct FloatMap {
  std::vector<double> lo, hi, slope, offset;
  double evaluate(double x) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (x >= lo[i] && x < hi[i]) return slope[i] * x + offset[i];
    }
    throw Error(ErrorCode::OutOfDomain, "point " + std::to_string(x) + " has no image");
  }
};

FloatMap float_map(const iet::PartialAiet& m) {
  FloatMap f;
  for (const auto& p : m.pieces()) {
    f.lo.push_back(p.domain.lo().to_double());
    f.hi.push_back(p.domain.hi().to_double());
    f.slope.push_back(p.slope.to_double());
    f.offset.push_back(p.offset.to_double());
  }
  return f;
}

struct Common {
  std::string output;
};

}  // namespace

bool apply_memory_cap(const char* value, std::ostream& err) {
  if (value == nullptr || *value == '\0') return true;
  std::string s(value);
  unsigned long long mult = 1;
  const char last = static_cast<char>(std::toupper(static_cast<unsigned char>(s.back())));
  if (last == 'K' || last == 'M' || last == 'G') {
    mult = last == 'K' ? 1ULL << 10 : last == 'M' ? 1ULL << 20 : 1ULL << 30;
    s.pop_back();
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 15) {
    err << "FOLIA_MAX_MEM: expected a byte count with optional K, M or G suffix, got \"" << value << "\"\n";
    return false;
  }
  rlimit lim{};
  getrlimit(RLIMIT_AS, &lim);
  rlim_t want = static_cast<rlim_t>(std::stoull(s) * mult);
  if (lim.rlim_max != RLIM_INFINITY && want > lim.rlim_max) want = lim.rlim_max;
  lim.rlim_cur = want;
  if (setrlimit(RLIMIT_AS, &lim) != 0) err << "FOLIA_MAX_MEM: could not set the limit, continuing without it\n";
  return true;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact foliations of polygonal dilation surfaces", "folia"};
  app.require_subcommand(1);
  Common common;

  // validate
  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a surface and report cone angles and genus");
  validate->add_option("surface", validate_path, "Surface JSON")->required();
  validate->add_option("-o,--output", common.output, "Write JSON here instead of stdout");

  // suspend
  std::string suspend_path;
  auto* suspend = app.add_subcommand("suspend", "Suspend an AIET to a dilation surface");
  suspend->add_option("map", suspend_path, "AIET JSON")->required();
  suspend->add_option("-o,--output", common.output, "Write JSON here instead of stdout");

  // trace / holonomy share their flags
  std::string trace_path, trace_start, trace_dir, svg_path;
  std::size_t trace_budget = 1000;
  auto* trace = app.add_subcommand("trace", "Follow one leaf");
  auto* holonomy = app.add_subcommand("holonomy", "Linear holonomy of a closed leaf");
  for (auto* sc : {trace, holonomy}) {
    sc->add_option("surface", trace_path, "Surface JSON")->required();
    sc->add_option("--start", trace_start, "Start point poly:x,y")->required();
    sc->add_option("--dir", trace_dir, "Direction dx/dy")->required();
    sc->add_option("--budget", trace_budget, "Maximum number of edge crossings");
    sc->add_option("-o,--output", common.output, "Write JSON here instead of stdout");
  }
  trace->add_option("--svg", svg_path, "Also draw the surface and the leaf to this SVG file");

  // first-return and classify share the transversal flags
  std::string fr_path, fr_dir, fr_origin;
  std::vector<std::string> fr_transversals;
  std::size_t fr_budget = 64;
  auto* first_return = app.add_subcommand("first-return", "First return map to a transversal");
  first_return->add_option("surface", fr_path, "Surface JSON")->required();

  bool classify_disco = false, no_cross_check = false;
  int depth = 60;
  auto* classify = app.add_subcommand("classify", "Rauzy-Veech classification of a direction");
  classify->add_option("surface", fr_path, "Surface JSON (omit with --disco)");
  classify->add_flag("--disco", classify_disco, "Use the built-in Disco surface and its bottom transversal");
  classify->add_option("--depth", depth, "Maximum number of induction steps")->check(CLI::PositiveNumber);
  classify->add_flag("--no-cross-check", no_cross_check, "Skip recomputing each step by generic first return");

  for (auto* sc : {first_return, classify}) {
    sc->add_option("--dir", fr_dir, "Direction dx/dy")->required();
    sc->add_option("--transversal", fr_transversals, "poly:x0,y0:x1,y1, repeatable; default is the bottom of polygon 0");
    sc->add_option("--origin", fr_origin, "Parameter of the first transversal's start");
    sc->add_option("--budget", fr_budget, "Maximum crossings on any return path");
    sc->add_option("-o,--output", common.output, "Write JSON here instead of stdout");
  }

  // sweep
  std::string grid_text;
  unsigned jobs = 1;
  bool sweep_disco = false;
  auto* sweep = app.add_subcommand("sweep", "Classify a grid of Disco directions");
  sweep->add_flag("--disco", sweep_disco, "Sweep the built-in Disco surface")->required();
  sweep->add_option("--grid", grid_text, "a/b:c/d:n for n+1 slopes dx/dy from a/b to c/d")->required();
  sweep->add_option("--depth", depth, "Maximum number of induction steps")->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--no-cross-check", no_cross_check, "Skip recomputing each step by generic first return");
  sweep->add_option("-o,--output", common.output, "Write JSON here instead of stdout");

  // attractor
  std::string attr_map, attr_dir, attr_hole, attr_side = "d1";
  bool attr_disco = false;
  int attr_depth = 20, attr_samples = 0, attr_iterations = -1;
  unsigned long long seed = 1;
  std::vector<double> box_scales;
  auto* attractor = app.add_subcommand("attractor", "Gap list approximating the Cantor attractor");
  attractor->add_option("map", attr_map, "Partial AIET JSON (omit with --disco)");
  attractor->add_flag("--disco", attr_disco, "Use the Disco first return map for --dir");
  attractor->add_option("--dir", attr_dir, "Direction dx/dy for --disco");
  attractor->add_option("--side", attr_side, "d1: return to the bottom of D1; d2: inverse return to the top of D2")
      ->check(CLI::IsMember({"d1", "d2"}));
  attractor->add_option("--hole", attr_hole, "lo:hi, default is the complement of the images");
  attractor->add_option("--depth", attr_depth, "Number of gap levels")->check(CLI::PositiveNumber);
  attractor->add_option("--samples", attr_samples, "Random samples for the attraction test");
  attractor->add_option("--iterations", attr_iterations, "Iterations per sample (default: depth)");
  attractor->add_option("--seed", seed, "Seed for the samples");
  attractor->add_option("--box-scale", box_scales, "Scale for the box counting estimate, repeatable");
  attractor->add_option("-o,--output", common.output, "Write JSON here instead of stdout");

  // conjugate
  std::string conj_map, conj_rotation;
  double conj_start = std::sqrt(2.0) - 1.0, conj_density = 1e-2, conj_tol = 1e-3;
  std::size_t conj_points = 987;
  std::string conj_exponents = "4:12";
  bool conj_tables = false;
  auto* conjugate = app.add_subcommand("conjugate", "Numerical semi-conjugacy to a standard IET");
  conjugate->add_option("map", conj_map, "AIET JSON (omit with --rotation)");
  conjugate->add_option("--rotation", conj_rotation, "Rotate [0,1) by this rational instead of reading a map");
  conjugate->add_option("--start", conj_start, "First orbit point");
  conjugate->add_option("--points", conj_points, "Orbit length N")->check(CLI::PositiveNumber);
  conjugate->add_option("--beta-exponents", conj_exponents, "a:b for betas 2^-a down to 2^-b");
  conjugate->add_option("--density", conj_density, "Largest allowed orbit gap as a fraction of the length");
  conjugate->add_option("--tol", conj_tol, "Displacement and snapping tolerance");
  conjugate->add_flag("--tables", conj_tables, "Include the per-beta h tables");
  conjugate->add_option("-o,--output", common.output, "Write JSON here instead of stdout");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*validate) {
      auto report = geom::validate(load_surface(validate_path));
      emit(io::to_json(report), common.output, out);
      return report.ok ? 0 : 1;
    }
    if (*suspend) {
      auto m = io::aiet_from_json(io::read_file(suspend_path));
      emit(io::to_json(geom::suspend(m)), common.output, out);
      return 0;
    }
    if (*trace || *holonomy) {
      auto start = parse_surface_point("--start", trace_start);
      auto dir = parse_direction("--dir", trace_dir);
      auto s = load_surface(trace_path);
      auto t = geom::trace_leaf(s, start, dir, trace_budget);
      if (*trace) {
        if (!svg_path.empty()) geom::render_svg_file(s, {t}, svg_path);
        emit(io::to_json(t), common.output, out);
        return 0;
      }
      Json j;
      j["status"] = geom::to_string(t.status);
      j["crossings"] = t.events.size();
      const Rational rho = geom::holonomy_of_closed_trace(t);
      j["holonomy"] = io::to_json(rho);
      j["cylinder"] = rho == 1 ? "flat" : "affine";
      j["attracting"] = rho < 1;
      emit(j, common.output, out);
      return 0;
    }
    if (*first_return || *classify) {
      auto dir = parse_direction("--dir", fr_dir);
      rv::ClassifyOptions copts;
      copts.max_depth = depth;
      copts.rv.cross_check = !no_cross_check;
      if (*classify && classify_disco) {
        if (!fr_path.empty() || !fr_transversals.empty()) {
          throw UsageError("--disco", "cannot be combined with a surface or --transversal");
        }
        auto report = rv::classify(rv::disco_first_return(dir), copts);
        Json j;
        j["direction"] = dir.str();
        const Json body = io::to_json(report);
        for (const auto& [k, v] : body.items()) j[k] = v;
        emit(j, common.output, out);
        return 0;
      }
      if (fr_path.empty()) throw UsageError("surface", "a surface file or --disco is required");
      auto s = load_surface(fr_path);
      geom::TransversalSpec spec;
      if (fr_transversals.empty()) {
        spec = bottom_of_first_polygon(s);
      } else {
        for (const auto& t : fr_transversals) spec.transversals.push_back(parse_transversal("--transversal", t));
      }
      if (!fr_origin.empty()) spec.origin = parse_rational("--origin", fr_origin);
      auto ret = geom::first_return_on_transversal(s, spec, dir, fr_budget);
      if (*first_return) {
        emit(io::to_json(ret), common.output, out);
        return 0;
      }
      if (!ret.unresolved.empty()) {
        throw Error(ErrorCode::NotFound, "first return not resolved within the budget; raise --budget");
      }
      auto report = rv::classify(rv::TwoBranchMap::from_partial(ret.map), copts);
      Json j;
      j["direction"] = dir.str();
      const Json body = io::to_json(report);
      for (const auto& [k, v] : body.items()) j[k] = v;
      emit(j, common.output, out);
      return 0;
    }
    if (*sweep) {
      auto grid = flag_value("--grid", [&] { return rv::parse_grid(grid_text); });
      rv::ClassifyOptions copts;
      copts.max_depth = depth;
      copts.rv.cross_check = !no_cross_check;
      auto res = rv::sweep_disco(grid, copts, jobs);
      err << "sweep: " << res.entries.size() << " directions in " << res.seconds << " s with " << jobs
          << " worker(s)\n";
      emit(io::to_json(res), common.output, out);
      return 0;
    }
    if (*attractor) {
      std::optional<iet::PartialAiet> f;     // map pushed forward
      std::optional<iet::PartialAiet> test;  // map whose invariant set is characterized
      if (attr_disco) {
        if (!attr_map.empty()) throw UsageError("--disco", "cannot be combined with a map file");
        if (attr_dir.empty()) throw UsageError("--dir", "required with --disco");
        auto dir = parse_direction("--dir", attr_dir);
        if (attr_side == "d1") {
          f = rv::disco_first_return(dir).to_partial();
          test = f;
        } else {
          test = rv::disco_d2_first_return(dir);
          f = iet::invert_partial(*test);
        }
      } else {
        if (attr_map.empty()) throw UsageError("map", "a map file or --disco is required");
        if (attr_side != "d1") throw UsageError("--side", "only meaningful with --disco");
        f = io::partial_from_json(io::read_file(attr_map));
        test = f;
      }
      Interval hole = [&] {
        if (!attr_hole.empty()) {
          return flag_value("--hole", [&] {
            auto parts = split(attr_hole, ':');
            if (parts.size() != 2) throw Error(ErrorCode::Parse, "expected lo:hi");
            return Interval(Rational::parse(parts[0]), Rational::parse(parts[1]));
          });
        }
        auto c = IntervalSet(f->ambient()).subtract(f->image());
        if (c.parts().size() != 1) {
          throw Error(ErrorCode::HoleMismatch, "complement of the images is " + c.str() + ", not one interval");
        }
        return c.parts()[0];
      }();
      auto approx = attractor::build_attractor(*f, hole, attr_depth);
      Json j;
      j["attractor"] = io::to_json(approx);
      j["character"] = attractor::to_string(attractor::invariant_set_character(*test, approx, attr_depth));
      if (attr_samples > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> pick(0, (1L << 30) - 1);
        std::vector<Rational> samples;
        for (int i = 0; i < attr_samples; ++i) {
          samples.push_back(f->ambient().lo() + f->ambient().length() * Rational(pick(rng), 1L << 30));
        }
        j["attraction"] = io::to_json(
            attractor::attraction_test(*f, approx, samples, attr_iterations < 0 ? attr_depth : attr_iterations));
      }
      if (!box_scales.empty()) j["box_counting"] = io::to_json(attractor::box_counting_estimate(approx, box_scales));
      emit(j, common.output, out);
      return 0;
    }
    if (*conjugate) {
      auto exps = flag_value("--beta-exponents", [&] {
        auto parts = split(conj_exponents, ':');
        if (parts.size() != 2) throw Error(ErrorCode::Parse, "expected a:b");
        int a = std::stoi(parts[0]), b = std::stoi(parts[1]);
        if (a < 1 || b < a || b > 60) throw Error(ErrorCode::Parse, "need 1 <= a <= b <= 60");
        return std::pair{a, b};
      });
      conj::ConjugacyOptions opts;
      for (int e = exps.first; e <= exps.second; ++e) opts.betas.push_back(std::ldexp(1.0, -e));
      opts.density_threshold = conj_density;

      std::function<double(const double&)> t;
      std::vector<double> singular;
      double lo = 0, hi = 1;
      if (!conj_rotation.empty()) {
        if (!conj_map.empty()) throw UsageError("--rotation", "cannot be combined with a map file");
        const double r = parse_rational("--rotation", conj_rotation).to_double();
        if (!(r >= 0 && r < 1)) throw UsageError("--rotation", "must lie in [0, 1)");
        t = [r](const double& x) {
          double y = x + r;
          return y >= 1 ? y - 1 : y;
        };
      } else {
        if (conj_map.empty()) throw UsageError("map", "a map file or --rotation is required");
        auto m = io::aiet_from_json(io::read_file(conj_map));
        auto fm = float_map(m);
        t = [fm](const double& x) { return fm.evaluate(x); };
        lo = m.ambient().lo().to_double();
        hi = m.ambient().hi().to_double();
        for (std::size_t i = 1; i < fm.lo.size(); ++i) singular.push_back(fm.lo[i]);
      }
      auto sample = conj::sample_orbit<double>(t, lo, hi, conj_start, conj_points, singular);
      auto approx = conj::build_h(sample, opts);
      auto tf = [&](double x) { return t(x); };
      Json j;
      j["approx"] = true;
      j["conjugacy"] = io::to_json(approx, conj_tables);
      j["displacement"] = io::to_json(conj::verify_displacement(approx, tf, conj::adjacent_pairs(approx), conj_tol));
      j["extracted"] = io::to_json(conj::extract_iet(approx, tf, conj_tol));
      emit(j, common.output, out);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory (see FOLIA_MAX_MEM)\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace folia::cli
