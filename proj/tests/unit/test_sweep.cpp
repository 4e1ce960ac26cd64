#include <gtest/gtest.h>

#include "folia/error.hpp"
#include "folia/json_io.hpp"
#include "folia/sweep.hpp"

using namespace folia;
using namespace folia::rv;

TEST(Grid, Parse) {
  auto g = parse_grid("1/10:9/10:4");
  EXPECT_EQ(g.from, Rational(1, 10));
  EXPECT_EQ(g.to, Rational(9, 10));
  EXPECT_EQ(g.n, 4);
  EXPECT_EQ(grid_slopes(g), (std::vector<Rational>{Rational(1, 10), Rational(3, 10), Rational(1, 2), Rational(7, 10),
                                                   Rational(9, 10)}));
  for (const char* bad : {"", "1/10:9/10", "1/10:9/10:0", "a:b:3", "1/10:9/10:x", "9/10:1/10:4"}) {
    EXPECT_THROW(parse_grid(bad), Error) << bad;
  }
}

TEST(Sweep, OutputDoesNotDependOnWorkerCount) {
  const Grid g = parse_grid("1/10:9/10:100");
  ClassifyOptions o;
  const auto one = sweep_disco(g, o, 1);
  const auto many = sweep_disco(g, o, 8);
  EXPECT_EQ(io::dump(io::to_json(one)), io::dump(io::to_json(many)));
  ASSERT_EQ(one.entries.size(), 101u);
  for (std::size_t i = 0; i < one.entries.size(); ++i) EXPECT_EQ(one.entries[i].slope, grid_slopes(g)[i]);
  const auto& c = one.counts;
  EXPECT_EQ(c.morse_smale + c.saddle_connection + c.undetermined + c.non_standard + c.errors, 101u);
}

TEST(Sweep, JobErrorsAreRecordedInPlace) {
  std::vector<Rational> slopes{Rational(1, 10), Rational(3), Rational(1, 5)};
  auto r = sweep(slopes, [](const Rational& s) { return classify(disco_first_return(direction_from_slope(s))); }, 3);
  ASSERT_EQ(r.entries.size(), 3u);
  EXPECT_TRUE(r.entries[0].report.has_value());
  EXPECT_FALSE(r.entries[1].report.has_value());
  EXPECT_NE(r.entries[1].error.find("DirectionOutsideSector"), std::string::npos);
  EXPECT_TRUE(r.entries[2].report.has_value());
  EXPECT_EQ(r.counts.errors, 1u);
}
