#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "expobasis/domain.hpp"
#include "expobasis/error.hpp"
#include "oracles.hpp"

using namespace expobasis;

namespace {
Rational q(long long p, long long d) { return Rational(BigInt(p), BigInt(d)); }

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}
}  // namespace

TEST(Domain, ValidatesOrderAndDisjointness) {
  EXPECT_EQ(code_of([] { RationalIntervalUnion({Rational(0), Rational(0)}); }), "invalid_domain");
  EXPECT_EQ(code_of([] { RationalIntervalUnion({Rational(2), Rational(1)}); }), "invalid_domain");
  EXPECT_EQ(code_of([] { RationalIntervalUnion({Rational(0), q(1, 2)}); }), "overlapping_intervals");
  EXPECT_NO_THROW(RationalIntervalUnion({Rational(0), Rational(1)}));
}

TEST(Domain, NormalizeToIntegerGrid) {
  const auto a = normalize_to_integer_grid(RationalIntervalUnion({Rational(0), q(10, 3)}));
  EXPECT_EQ(a.scale, 3);
  EXPECT_EQ(a.left_endpoints, (std::vector<std::int64_t>{0, 10}));

  const auto b = normalize_to_integer_grid(RationalIntervalUnion({Rational(0), Rational(3)}));
  EXPECT_EQ(b.scale, 1);
  EXPECT_EQ(b.left_endpoints, (std::vector<std::int64_t>{0, 3}));

  const auto c = normalize_to_integer_grid(RationalIntervalUnion({Rational(0)}));
  EXPECT_EQ(c.scale, 1);
  EXPECT_EQ(c.left_endpoints, (std::vector<std::int64_t>{0}));
}

TEST(Domain, NormalizeReportsOverflowingEndpoint) {
  const Rational big(BigInt(1) << 70, BigInt(3));
  try {
    normalize_to_integer_grid(RationalIntervalUnion({Rational(0), big}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "overflow");
    EXPECT_NE(std::string(e.what()).find(big.to_string()), std::string::npos);
  }
}

TEST(Domain, NormalizeIsIdempotentAndScalesMeasure) {
  oracle::Gen g(5);
  for (int t = 0; t < 200; ++t) {
    const auto den = g.integer(1, 9);
    std::vector<Rational> ends{Rational(0)};
    for (int k = 0; k < g.integer(0, 4); ++k) ends.push_back(ends.back() + Rational(1) + q(g.integer(0, 3 * den), den));
    const RationalIntervalUnion u(ends);
    const auto n = normalize_to_integer_grid(u);
    const auto unit = as_unit_union(n);
    EXPECT_EQ(unit.measure(), Rational(n.scale) * u.measure());
    const auto again = normalize_to_integer_grid(unit);
    EXPECT_EQ(again.scale, 1);
    std::vector<std::int64_t> ints;
    for (const auto& e : unit.left_endpoints()) ints.push_back(e.to_int64());
    EXPECT_EQ(again.left_endpoints, ints);
  }
}

TEST(Domain, CanonicalizeTranslatesToZero) {
  const auto c = canonicalize(RationalIntervalUnion({q(5, 2), q(9, 2)}, "x"));
  EXPECT_TRUE(c.domain.is_canonical());
  EXPECT_EQ(c.shift, q(5, 2));
  EXPECT_EQ(c.domain.left_endpoints()[1], Rational(2));
  EXPECT_EQ(c.domain.label(), std::optional<std::string>("x"));
}

TEST(Domain, Containment) {
  const std::vector<std::int64_t> big{0, 1, 2};
  const auto outer = RationalIntervalUnion::from_integers(big);
  EXPECT_TRUE(outer.contains(RationalIntervalUnion({q(1, 2)})));
  EXPECT_TRUE(outer.contains(RationalIntervalUnion({Rational(0), Rational(2)})));
  EXPECT_FALSE(outer.contains(RationalIntervalUnion({q(5, 2)})));
}

TEST(Domain, ResiduesDistinct) {
  const std::vector<std::int64_t> a{0, 3}, b{0, 2}, c{0, 1, 5};
  EXPECT_TRUE(residues_distinct(a, 2));
  EXPECT_FALSE(residues_distinct(b, 2));
  // 0, 1, 2 modulo 3 by direct scan
  std::set<std::int64_t> r;
  for (auto x : c) r.insert(x % 3);
  EXPECT_EQ(residues_distinct(c, 3), r.size() == c.size());
  EXPECT_TRUE(residues_distinct(c, 3));
  const std::vector<std::int64_t> neg{-1, 1};
  EXPECT_TRUE(residues_distinct(neg, 3));
}

TEST(Domain, ExponentSystemRejectsCoincidentBranches) {
  EXPECT_EQ(code_of([] { ExponentSystem({Rational(0), Rational(1)}); }), "duplicate_branch");
  EXPECT_EQ(code_of([] { ExponentSystem({q(1, 3), q(-2, 3)}); }), "duplicate_branch");
  EXPECT_EQ(code_of([] { ExponentSystem({Rational(0)}, Rational(0)); }), "invalid_argument");
  const ExponentSystem s({Rational(0), q(1, 2)}, Rational(2));
  const auto f = s.frequencies(1);
  ASSERT_EQ(f.size(), 6u);
  EXPECT_DOUBLE_EQ(f[0], -0.5);
  EXPECT_DOUBLE_EQ(f[4], 0.25);
}

TEST(Domain, RescalingConstants) {
  // Fourier basis on [0, 2) has A = B = 2; halving the domain halves them.
  const auto a = rescale_constants({2.0, 2.0}, 0.5);
  EXPECT_DOUBLE_EQ(a.A, 1.0);
  EXPECT_DOUBLE_EQ(a.B, 1.0);
  const auto b = rescale_constants({1.0, 3.0}, 3.0);
  EXPECT_DOUBLE_EQ(b.A, 3.0);
  EXPECT_DOUBLE_EQ(b.B, 9.0);
  const auto c = rescale_constants({1.5, 4.0}, 1.0);
  EXPECT_DOUBLE_EQ(c.A, 1.5);
  EXPECT_DOUBLE_EQ(c.B, 4.0);
  EXPECT_THROW(rescale_constants({1, 1}, 0.0), Error);
}

TEST(Domain, RescaleRoundTripIsExact) {
  oracle::Gen g(9);
  for (int t = 0; t < 100; ++t) {
    const ExponentSystem s({Rational(0), q(g.integer(1, 20), 21)}, q(g.integer(1, 9), g.integer(1, 9)));
    const Rational rho = q(g.integer(1, 30), g.integer(1, 30));
    const auto back = rescale_system(rescale_system(s, rho, Rational(7)), Rational(1) / rho);
    EXPECT_EQ(back, s);
  }
  EXPECT_THROW(rescale_system(ExponentSystem({Rational(0)}), Rational(-1)), Error);
}

TEST(Domain, LatticeBranchesCoverTheSameFrequencies) {
  const ExponentSystem s({Rational(0), q(1, 4)}, Rational(3));
  const auto br = lattice_branches(s);
  ASSERT_EQ(br.size(), 6u);
  // every (n + phi)/3 with |n| small appears as m + psi for some branch psi
  for (int n = -6; n <= 6; ++n)
    for (const auto& phi : s.branch_offsets()) {
      const Rational f = (Rational(n) + phi) / Rational(3);
      bool found = false;
      for (const auto& psi : br) found = found || (f - psi).is_integer();
      EXPECT_TRUE(found);
    }
}
