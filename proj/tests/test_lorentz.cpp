#include <gtest/gtest.h>

#include "hyperglue/lorentz.hpp"
#include "hyperglue/polytope.hpp"
#include "hyperglue/symmetry.hpp"
#include "property_suite.hpp"

using namespace hyperglue;

namespace {

LorentzVector e(int i, int size = 7) { return LorentzVector::unit(size, i - 1); }

}  // namespace

TEST(LorentzProduct, Examples) {
  EXPECT_EQ(lorentz_product(e(7), e(7)), -1);
  EXPECT_EQ(lorentz_product(e(1), e(1)), 1);
  const LorentzVector a{0, 0, 0, -1, -1, -1, 1};
  EXPECT_EQ(lorentz_product(a, a), 2);
  EXPECT_THROW(lorentz_product(e(1, 6), e(1)), std::invalid_argument);
}

TEST(Reflect, Examples) {
  EXPECT_EQ(reflect(e(1), e(1)), -e(1));
  EXPECT_EQ(reflect(e(2) - e(1), e(1)), e(2));
  const LorentzVector a{0, 0, 0, -1, -1, -1, 1};
  const LorentzVector x{1, 1, 0, 0, 0, 0, 0};
  ASSERT_EQ(lorentz_product(a, x), 0);
  EXPECT_EQ(reflect(a, x), x);
  EXPECT_THROW(reflect(LorentzVector{1, 1, 1, 0, 0, 0, 0}, x), std::invalid_argument);
}

TEST(LorentzMatrix, IntegralityExamples) {
  EXPECT_TRUE(is_lorentzian_integral(LorentzMatrix::identity(7)));
  EXPECT_TRUE(is_lorentzian_integral(builtin_sigma(6)));
  EXPECT_TRUE(is_lorentzian_integral(builtin_sigma(5)));
  LorentzMatrix d = LorentzMatrix::identity(7);
  d(0, 0) = 2;
  EXPECT_FALSE(is_lorentzian_integral(d));
}

TEST(LorentzMatrix, OrderExamples) {
  EXPECT_EQ(matrix_order(LorentzMatrix::identity(7), 64), 1u);
  EXPECT_EQ(matrix_order(LorentzMatrix::sign_change(7, 1), 64), 2u);
  EXPECT_THROW(matrix_order(LorentzMatrix::identity(7), 0), std::invalid_argument);
}

// The generator of the symmetry is hyperbolic: its powers never return to
// the identity and the entries of sigma^(8j) grow with j.
TEST(LorentzMatrix, SymmetryGeneratorHasNoFiniteMatrixOrder) {
  const LorentzMatrix& s = builtin_sigma(6);
  EXPECT_FALSE(matrix_order(s, 64).has_value());
  auto largest = [](const LorentzMatrix& m) {
    Integer best = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) best = std::max(best, Integer(abs(m(i, j))));
    return best;
  };
  Integer prev = 1;
  LorentzMatrix p = LorentzMatrix::identity(7);
  for (int j = 1; j <= 4; ++j) {
    p = p * s.power(8);
    EXPECT_GT(largest(p), prev);
    prev = largest(p);
  }
}

TEST(LorentzMatrix, InverseAndDeterminant) {
  const LorentzMatrix& s = builtin_sigma(6);
  EXPECT_TRUE((s * s.lorentz_inverse()).is_identity());
  EXPECT_EQ(s.determinant(), 1);
  EXPECT_EQ(LorentzMatrix::reflection(e(1)).determinant(), -1);
}

TEST(Fold, Examples) {
  const Polytope& P = polytope(6);
  const LorentzVector& c = P.interior_point();
  const FoldResult still = fold_to_chamber(c, P.normals());
  EXPECT_EQ(still.point, c);
  EXPECT_TRUE(still.word.empty());

  const FoldResult back = fold_to_chamber(reflect(P.normal(0), c), P.normals());
  EXPECT_EQ(back.point, c);
  EXPECT_EQ(back.word, std::vector<int>{0});

  EXPECT_THROW(fold_to_chamber(e(1), P.normals()), std::invalid_argument);
}

TEST(LorentzProperties, Reflections) {
  const auto r = testkit::reflection_laws(11, 1000);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(LorentzProperties, IntegralClosure) {
  const auto r = testkit::integral_closure(12, 1000);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(LorentzProperties, Folding) {
  const auto r = testkit::fold_laws(13, 1000);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
