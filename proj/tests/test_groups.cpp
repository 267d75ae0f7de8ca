// Homotopy-group assembly from decompositions: table-driven sphere
// contributions, exact Moore bottom groups plus symbolic residues, rational
// ranks as a table-independent cross-check, and the sphere table itself.

#include <gtest/gtest.h>

#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "loopcalc/abelian.hpp"
#include "loopcalc/decomposition.hpp"
#include "loopcalc/error.hpp"
#include "loopcalc/groups.hpp"
#include "loopcalc/hilton.hpp"
#include "loopcalc/series.hpp"
#include "loopcalc/sphere_table.hpp"
#include "loopcalc/theorems.hpp"
#include "loopcalc/wedge.hpp"

namespace loopcalc {
namespace {

LoopDecomposition make_dec(int cutoff,
                           std::vector<std::pair<LoopFactor, std::int64_t>> fs) {
  LoopDecomposition dec(cutoff);
  for (auto& [f, m] : fs) dec.add(f, m);
  return dec;
}

const SphereTable& table() { return builtin_sphere_table(); }

// --------------------------------------------------------------------------
// Homotopy groups of the decomposed complexes
// --------------------------------------------------------------------------

TEST(Groups, EvenRankTwoThroughDegreeSix) {
  auto g = homotopy_groups(decompose_pd_even(3, 2, 12), 6, table());
  EXPECT_EQ(g.groups.at(1), FGAbelianGroup::zero());
  EXPECT_EQ(g.groups.at(2), FGAbelianGroup::zero());
  EXPECT_EQ(g.groups.at(3), FGAbelianGroup::free_part(2));
  EXPECT_EQ(g.groups.at(4), FGAbelianGroup::cyclic(2).times(2));
  EXPECT_EQ(g.groups.at(5), FGAbelianGroup::cyclic(2).times(2));
  EXPECT_EQ(g.groups.at(6), parse_group("(Z/12)^2"));
  EXPECT_EQ(g.groups.at(6).to_string(), "(Z/3)^2 + (Z/4)^2");
  EXPECT_TRUE(g.residues.empty());
  EXPECT_TRUE(g.misses.empty());
  EXPECT_TRUE(g.warnings.empty());
}

TEST(Groups, EvenRankThreeWithMilnorMooreRankPeel) {
  auto dec = decompose_pd_even(3, 3, 12);
  auto g = homotopy_groups(dec, 5, table());
  EXPECT_EQ(g.groups.at(3), FGAbelianGroup::free_part(3));
  EXPECT_EQ(g.groups.at(4), FGAbelianGroup::cyclic(2).times(3));
  EXPECT_EQ(g.groups.at(5),
            FGAbelianGroup::free_part(2) + FGAbelianGroup::cyclic(2).times(3));

  // Rank cross-check straight from the rational loop series: peeling the
  // three bottom spheres off 1/(1 - 3t^2 + t^4) leaves rank 2 in degree 4,
  // i.e. rank pi_5 = 2 independently of the sphere table.
  Field q = Field::rationals();
  TruncatedSeries peel = TruncatedSeries::one(q, 4);
  peel.add_to(2, -1);
  TruncatedSeries peeled =
      loop_series(dec, q, 4) * peel * peel * peel;
  EXPECT_EQ(peeled.coeff(0), 1);
  EXPECT_EQ(peeled.coeff(2), 0);
  EXPECT_EQ(peeled.coeff(4), 2);
}

TEST(Groups, TableGapsAreReportedNeverZeroed) {
  auto dec = make_dec(13, {{LoopFactor::loop_sphere(3), 1}});
  auto g = homotopy_groups(dec, 12, table());
  EXPECT_EQ(g.groups.at(10), FGAbelianGroup::cyclic(15));
  ASSERT_EQ(g.misses.size(), 2u);
  EXPECT_EQ(g.misses[0].degree, 11);
  EXPECT_EQ(g.misses[0].sphere_dim, 3);
  EXPECT_EQ(g.misses[0].multiplicity, 1);
  EXPECT_NE(g.misses[0].message.find("pi_11(S^3)"), std::string::npos);
  EXPECT_EQ(g.misses[1].degree, 12);
  // The resolved part in the miss degrees stays zero rather than lying.
  EXPECT_EQ(g.groups.at(11), FGAbelianGroup::zero());
}

TEST(Groups, MooreFactorsGiveBottomGroupsAndResidues) {
  WedgeNF w(6);
  w.add(Atom::sphere(3));
  w.add(Atom::moore(4, 8));
  auto dec = loop_wedge_decompose(w, 6);
  auto g = homotopy_groups(dec, 5, table());
  EXPECT_EQ(g.groups.at(3), FGAbelianGroup::free_part(1) +
                                FGAbelianGroup::cyclic(8));
  EXPECT_EQ(g.groups.at(4), FGAbelianGroup::cyclic(2));
  EXPECT_EQ(g.groups.at(5), FGAbelianGroup::cyclic(2) +
                                FGAbelianGroup::cyclic(8));
  ASSERT_EQ(g.residues.size(), 2u);
  EXPECT_EQ(g.residues[0],
            (SymbolicResidue{4, "pi_4(P^4(8))", 1, false}));
  EXPECT_EQ(g.residues[1],
            (SymbolicResidue{5, "pi_5(P^4(8))", 1, false}));
  EXPECT_TRUE(g.warnings.empty());
}

TEST(Groups, SquareOrderResiduesAreFlagged) {
  WedgeNF w(4);
  w.add(Atom::moore(4, 4), 2);
  auto dec = loop_wedge_decompose(w, 4);  // below the smash guard: warns only
  auto g = homotopy_groups(dec, 4, table());
  EXPECT_EQ(g.groups.at(3), FGAbelianGroup::cyclic(4).times(2));
  ASSERT_EQ(g.residues.size(), 1u);
  EXPECT_EQ(g.residues[0], (SymbolicResidue{4, "pi_4(P^4(4))", 2, true}));
  ASSERT_EQ(g.warnings.size(), 2u);
  EXPECT_NE(g.warnings[0].find("admit no smash splitting"), std::string::npos);
  EXPECT_NE(g.warnings[1].find("residues of P^4(4) are untracked"),
            std::string::npos);
}

TEST(Groups, OpaqueFactorsContributeOnlyResidues) {
  auto dec = make_dec(6, {{LoopFactor::opaque("G"), 1}});
  auto g = homotopy_groups(dec, 3, table());
  EXPECT_EQ(g.groups.at(3), FGAbelianGroup::zero());
  ASSERT_EQ(g.residues.size(), 2u);
  EXPECT_EQ(g.residues[0].term, "pi_1(G)");
  EXPECT_EQ(g.residues[1].term, "pi_2(G)");
}

TEST(Groups, CircleContributesOnlyPiTwoOfTheDeloopedSpace) {
  auto g = homotopy_groups(decompose_pd_four(1, 0, 10), 5, table());
  EXPECT_EQ(g.groups.at(2), FGAbelianGroup::free_part(1));
  EXPECT_EQ(g.groups.at(3), FGAbelianGroup::zero());
  EXPECT_EQ(g.groups.at(5), FGAbelianGroup::free_part(1));
}

TEST(Groups, KmaxMustStayInTheCompleteRange) {
  auto dec = make_dec(6, {{LoopFactor::loop_sphere(3), 1}});
  EXPECT_THROW(homotopy_groups(dec, 0, table()), BadSpec);
  EXPECT_THROW(homotopy_groups(dec, 7, table()), BadSpec);
  EXPECT_NO_THROW(homotopy_groups(dec, 6, table()));
}

// --------------------------------------------------------------------------
// Series
// --------------------------------------------------------------------------

TEST(Series, LoopMooreSeriesDependsOnTheFieldTag) {
  auto dec = make_dec(12, {{LoopFactor::loop_moore(4, 8), 1}});
  TruncatedSeries f2 = loop_series(dec, Field::prime_field(2), 10);
  std::vector<std::int64_t> expected{1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7};
  for (int k = 0; k <= 10; ++k)
    EXPECT_EQ(f2.coeff(k), expected[static_cast<std::size_t>(k)]) << k;
  EXPECT_EQ(loop_series(dec, Field::rationals(), 10),
            TruncatedSeries::one(Field::rationals(), 10));
  EXPECT_EQ(loop_series(dec, Field::prime_field(3), 10),
            TruncatedSeries::one(Field::prime_field(3), 10));
}

TEST(Series, CircleTimesLoopFiveSphere) {
  auto dec = decompose_pd_four(1, 0, 10);
  TruncatedSeries s = loop_series(dec, Field::rationals(), 8);
  for (int k = 0; k <= 8; ++k)
    EXPECT_EQ(s.coeff(k), k % 4 <= 1 ? 1 : 0) << k;
}

TEST(Series, RefusesDegreesTheTruncationCannotSee) {
  auto dec = make_dec(4, {{LoopFactor::loop_sphere(3), 1}});
  try {
    loop_series(dec, Field::rationals(), 4);
    FAIL() << "expected BadSpec";
  } catch (const BadSpec& e) {
    EXPECT_NE(std::string(e.what()).find("above degree 3"), std::string::npos);
  }
  EXPECT_NO_THROW(loop_series(dec, Field::rationals(), 3));
}

TEST(Series, RationalRanksAndConsistency) {
  auto four = make_dec(12, {{LoopFactor::loop_sphere(4), 1}});
  EXPECT_EQ(rational_ranks(four, 11),
            (std::map<int, std::int64_t>{{4, 1}, {7, 1}}));
  auto circle = make_dec(12, {{LoopFactor::circle(), 1}});
  EXPECT_EQ(rational_ranks(circle, 11), (std::map<int, std::int64_t>{{2, 1}}));
  auto opaque = make_dec(12, {{LoopFactor::opaque("G"), 1}});
  EXPECT_THROW(rational_ranks(opaque, 11), UnsupportedNode);

  EXPECT_TRUE(check_rational_consistency(decompose_pd_even(3, 3, 12), 11));
  EXPECT_TRUE(
      check_rational_consistency(decompose_pd_odd(2, 1, {{2, 3, 1}}, 10), 9));
  EXPECT_TRUE(check_rational_consistency(decompose_pd_four(1, 2, 10), 9));
}

// --------------------------------------------------------------------------
// Sphere table
// --------------------------------------------------------------------------

TEST(SphereTableLookup, BuiltinValues) {
  auto& t = table();
  EXPECT_EQ(t.lookup(3, 6).group, parse_group("Z/12"));
  EXPECT_EQ(t.lookup(3, 10).group, parse_group("Z/15"));
  EXPECT_EQ(t.lookup(4, 7).group, parse_group("Z + Z/12"));
  EXPECT_EQ(t.lookup(5, 8).group, parse_group("Z/24"));
  EXPECT_EQ(t.lookup(6, 11).group, parse_group("Z"));
  EXPECT_EQ(t.lookup(8, 15).group, parse_group("Z + Z/120"));
  EXPECT_EQ(t.lookup(9, 16).group, parse_group("Z/240"));
  EXPECT_EQ(t.lookup(6, 10).group, FGAbelianGroup::zero());
}

TEST(SphereTableLookup, CircleAndConnectivityRows) {
  auto& t = table();
  EXPECT_EQ(t.lookup(1, 1).group, FGAbelianGroup::free_part(1));
  EXPECT_EQ(t.lookup(1, 5).group, FGAbelianGroup::zero());
  EXPECT_EQ(t.lookup(5, 3).group, FGAbelianGroup::zero());
  EXPECT_EQ(t.lookup(5, 3).provenance, "connectivity");
}

TEST(SphereTableLookup, HighRowsRedirectIntoTheStableRange) {
  auto& t = table();
  EXPECT_EQ(t.lookup(12, 15).group, parse_group("Z/24"));
  EXPECT_EQ(t.lookup(10, 10).group, parse_group("Z"));
  EXPECT_EQ(t.lookup(25, 32).group, parse_group("Z/240"));
  // Within the stored rows, every stable stem agrees with its stable row.
  for (int s = 0; s <= SphereTable::max_stem; ++s)
    for (int m = std::max(2, s + 2); m <= 9; ++m)
      EXPECT_EQ(t.lookup(m, m + s).group, t.lookup(s + 2, 2 * s + 2).group)
          << "stem " << s << ", row " << m;
}

TEST(SphereTableLookup, OutOfRangeMisses) {
  auto& t = table();
  try {
    t.lookup(3, 11);
    FAIL() << "expected TableMiss";
  } catch (const TableMiss& e) {
    EXPECT_NE(std::string(e.what()).find("pi_11(S^3)"), std::string::npos);
  }
  EXPECT_THROW(t.lookup(12, 20), TableMiss);
}

TEST(SphereTableFile, LoadedTableMatchesTheBuiltin) {
  const char* path = std::getenv("LOOPCALC_TABLE_FILE");
  ASSERT_NE(path, nullptr)
      << "set LOOPCALC_TABLE_FILE to the bundled sphere table";
  EXPECT_EQ(load_sphere_table(path), builtin_sphere_table());
  EXPECT_THROW(load_sphere_table("/nonexistent/table.tsv"), ParseError);
}

TEST(SphereTableFile, ParseErrorsCarrySourceAndLine) {
  auto expect_parse_error = [](const std::string& text,
                               const std::string& needle) {
    std::istringstream in(text);
    try {
      parse_sphere_table(in, "test.tsv");
      FAIL() << "expected ParseError for: " << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
          << e.what();
    }
  };
  expect_parse_error("# ok\n3\t4\tZ/2\n", "test.tsv:2: expected 4");
  expect_parse_error("1\t1\tZ\tdegree\n", "m >= 2");
  expect_parse_error("3\t11\tZ/2\tguess\n", "0 <= k - m <= 7");
  expect_parse_error("3\t4\tZ/2\tstable\n3\t4\tZ/2\tagain\n",
                     "test.tsv:2: duplicate");
  expect_parse_error("3\t4\tZ/0\tbad\n", "test.tsv:1:");
  expect_parse_error("3\t4\tZ/2\t \n", "empty provenance");
}

TEST(SphereTableFile, AcceptsCommentsBlanksAndCarriageReturns) {
  std::istringstream in("# header\n\n2\t2\tZ\tdegree\r\n  \n3\t3\tZ\tdegree\n");
  auto t = parse_sphere_table(in, "test.tsv");
  EXPECT_EQ(t.entries().size(), 2u);
  EXPECT_EQ(t.lookup(2, 2).provenance, "degree");
}

}  // namespace
}  // namespace loopcalc
