#include <gtest/gtest.h>

#include "dtregge/complex_core.hpp"
#include "dtregge/enumeration.hpp"

using namespace dtregge;

TEST(Triangulation, Tetrahedron) {
  auto t = examples::tetrahedron();
  EXPECT_EQ(t.vertex_count(), 4);
  EXPECT_EQ(t.face_count(), 4);
  EXPECT_EQ(t.edge_count(), 6);
  EXPECT_EQ(t.genus(), 0);
  EXPECT_EQ(curvature_assignments(t), (std::vector<int>{3, 3, 3, 3}));
  EXPECT_TRUE(gauss_bonnet_check(t).pass);
}

TEST(Triangulation, DoubleTriangleAndTorus) {
  auto s = examples::double_triangle();
  EXPECT_EQ(s.genus(), 0);
  EXPECT_EQ(curvature_assignments(s), (std::vector<int>{2, 2, 2}));
  auto t = examples::two_triangle_torus();
  EXPECT_EQ(t.genus(), 1);
  EXPECT_EQ(curvature_assignments(t), (std::vector<int>{6}));
  EXPECT_EQ(gauss_bonnet_check(t).total_curvature.coefficient, 0);
  EXPECT_TRUE(gauss_bonnet_check(t).pass);
}

TEST(Triangulation, DeficitsAreRationalMultiplesOfPi) {
  auto d = deficit_angles(examples::tetrahedron());
  ASSERT_EQ(d.size(), 4u);
  for (const auto& r : d) EXPECT_EQ(r.coefficient, Rational(1));  // 2pi - pi
}

TEST(Triangulation, DivisorDegreeIsMinusEuler) {
  for (const auto& t : {examples::tetrahedron(), examples::double_triangle(), examples::two_triangle_torus()}) {
    auto d = divisor(t);
    EXPECT_EQ(d.degree, Rational(-t.euler_characteristic()));
  }
}

TEST(Triangulation, RejectsSelfGluing) {
  EXPECT_THROW(Triangulation::build(1, {{1, 1, 1}, {1, 1, 1}}, {{{0, 0}, {0, 1}}, {{0, 2}, {1, 2}}, {{1, 0}, {1, 1}}}),
               InputError);
}

TEST(Triangulation, RejectsVertexPairMismatch) {
  EXPECT_THROW(Triangulation::build(3, {{1, 2, 3}, {1, 2, 3}}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}}),
               InputError);
}

TEST(Triangulation, RejectsUnmatchedSlotAndOddSlots) {
  EXPECT_THROW(Triangulation::build(3, {{1, 2, 3}, {2, 1, 3}}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}}), InputError);
  EXPECT_THROW(Triangulation::build(3, {{1, 2, 3}}, {}), InputError);
}

TEST(Triangulation, RejectsLabelOutOfRangeAndMissingLabel) {
  EXPECT_THROW(Triangulation::build(3, {{1, 2, 4}, {2, 1, 4}}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}}),
               InputError);
  EXPECT_THROW(Triangulation::build(4, {{1, 2, 3}, {2, 1, 3}}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}}),
               InputError);
}

TEST(Triangulation, RejectsDisconnected) {
  std::vector<std::array<int, 3>> f = {{1, 2, 3}, {2, 1, 3}, {4, 5, 6}, {5, 4, 6}};
  std::vector<SlotGluing> g = {{{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}},
                               {{2, 0}, {3, 0}}, {{2, 1}, {3, 2}}, {{2, 2}, {3, 1}}};
  EXPECT_THROW(Triangulation::build(6, f, g), InputError);
}

TEST(Triangulation, RejectsOneLabelOnTwoVertices) {
  // double triangle with corner labels merged: classes 3, labels 2
  EXPECT_THROW(Triangulation::build(2, {{1, 2, 1}, {2, 1, 1}}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}}),
               InputError);
}

class GaussBonnetCatalogs : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(GaussBonnetCatalogs, EveryEntryExact) {
  const auto [g, n0] = GetParam();
  for (const auto& q : sorted_q_vectors(g, n0)) {
    auto cat = enumerate_triangulations({g, n0, q});
    for (const auto& e : cat.entries) {
      auto res = gauss_bonnet_check(e.triangulation);
      EXPECT_TRUE(res.pass);
      EXPECT_EQ(res.total_curvature.coefficient, Rational(2 * (2 - 2 * g)));
      EXPECT_EQ(curvature_assignments(e.triangulation), q);
      EXPECT_EQ(e.triangulation.genus(), g);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallKeys, GaussBonnetCatalogs,
                         ::testing::Values(std::pair{0, 3}, std::pair{0, 4}, std::pair{0, 5}, std::pair{1, 1},
                                           std::pair{1, 2}, std::pair{1, 3}));
