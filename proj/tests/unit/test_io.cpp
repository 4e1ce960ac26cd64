#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "folia/error.hpp"
#include "folia/fixtures.hpp"
#include "folia/json_io.hpp"
#include "support/generators.hpp"

using namespace folia;
using io::Json;

namespace {

std::string fixture(const std::string& name) { return std::string(FOLIA_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST(Json, RationalsAreStrings) {
  EXPECT_EQ(io::to_json(Rational(-3, 4)), Json("-3/4"));
  EXPECT_EQ(io::to_json(Rational(5)), Json("5"));
  EXPECT_EQ(io::rational_from_json(Json("6/8"), "x"), Rational(3, 4));
  EXPECT_EQ(code_of([] { io::rational_from_json(Json(0.5), "x"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { io::rational_from_json(Json("1/0"), "x"); }), ErrorCode::Parse);
}

TEST(Json, AietRoundTrip) {
  gen::Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    auto t = gen::random_bijective_aiet(rng, 6);
    Json j = io::to_json(t);
    EXPECT_EQ(io::aiet_from_json(j), t);
    EXPECT_EQ(io::aiet_from_json(Json::parse(io::dump(j))), t);
    EXPECT_FALSE(j.contains("undefined"));
  }
}

TEST(Json, PartialMapListsItsUndefinedSet) {
  iet::PartialAiet m(Interval(0, 1), {iet::AffinePiece(Interval(0, Rational(1, 3)), 1, Rational(1, 2))});
  Json j = io::to_json(m);
  ASSERT_TRUE(j.contains("undefined"));
  EXPECT_EQ(j["undefined"].size(), 1u);
  EXPECT_EQ(io::partial_from_json(j), m);
  EXPECT_THROW(io::aiet_from_json(j), Error);
}

TEST(Json, KeyOrderIsStable) {
  Json j = io::to_json(iet::Aiet(Interval(0, 1), {iet::AffinePiece(Interval(0, 1), 1, 0)}));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j["pieces"][0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"lo", "hi", "slope", "offset"}));
  EXPECT_EQ(io::dump(j), slurp(fixture("identity.json")));
}

TEST(Json, UnknownKeysAreRejected) {
  Json j = io::read_file(fixture("identity.json"));
  j["extra"] = 1;
  try {
    io::aiet_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("unknown key"), std::string::npos);
  }
  Json s = io::read_file(fixture("torus.json"));
  s["polygons"][0]["colour"] = "red";
  EXPECT_EQ(code_of([&] { io::surface_from_json(s); }), ErrorCode::Parse);
  Json missing = io::read_file(fixture("identity.json"));
  missing.erase("ambient");
  EXPECT_EQ(code_of([&] { io::aiet_from_json(missing); }), ErrorCode::Parse);
}

TEST(Json, SurfaceFixturesMatchTheBuiltInSurfaces) {
  const std::pair<const char*, geom::Surface> cases[] = {{"torus.json", geom::torus_surface()},
                                                         {"disco.json", geom::disco_surface()},
                                                         {"two_chamber.json", geom::two_chamber_surface()}};
  for (const auto& [name, built] : cases) {
    auto parsed = io::surface_from_json(io::read_file(fixture(name)));
    EXPECT_EQ(parsed, built) << name;
    EXPECT_FALSE(parsed.note.empty());
    EXPECT_EQ(io::dump(io::to_json(parsed)), slurp(fixture(name))) << name;
    EXPECT_TRUE(geom::validate(parsed).ok) << name;
  }
}

TEST(Json, AietFixturesRoundTrip) {
  for (const char* name : {"identity.json", "four_piece.json"}) {
    auto t = io::aiet_from_json(io::read_file(fixture(name)));
    EXPECT_TRUE(iet::check_bijective(t).bijective);
    EXPECT_EQ(io::dump(io::to_json(t)), slurp(fixture(name)));
  }
}

TEST(Json, FileErrors) {
  EXPECT_EQ(code_of([] { io::read_file("/nonexistent/folia.json"); }), ErrorCode::Io);
  EXPECT_EQ(code_of([] { io::write_file("/nonexistent/dir/out.json", "{}"); }), ErrorCode::Io);
  const std::string bad = ::testing::TempDir() + "/folia_bad.json";
  io::write_file(bad, "{ not json");
  EXPECT_EQ(code_of([&] { io::read_file(bad); }), ErrorCode::Parse);
}

TEST(Json, ReportsCarryExactFields) {
  auto rep = rv::classify(rv::disco_first_return(geom::Direction(0, 1)));
  Json j = io::to_json(rep);
  EXPECT_EQ(j["outcome"], "morse-smale");
  EXPECT_EQ(j["word"], "RRR");
  EXPECT_EQ(j["multiplier"], "1/32");
  EXPECT_EQ(j["cycle"][0], "11/620");
  auto plain = rv::classify(rv::disco_first_return(rv::direction_from_slope(gen::cantor_like_slope())));
  EXPECT_FALSE(io::to_json(plain).contains("cycle"));
  EXPECT_FALSE(io::to_json(plain).contains("multiplier"));
}
