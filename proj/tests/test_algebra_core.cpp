#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "forge/polynomial.hpp"

using namespace forge;

namespace {

Ring P(int n, std::uint32_t p = 32003) { return Ring::projective(p, n); }

Polynomial parse(const Ring& R, const std::string& s) { return parse_polynomial(R, s); }

Monomial mono(std::initializer_list<int> e) {
  Monomial m;
  int i = 0;
  for (int x : e) m.exp[i++] = static_cast<std::uint8_t>(x);
  m.recompute_degree();
  return m;
}

}  // namespace

TEST(Field, RejectsNonPrimeAndOutOfRange) {
  EXPECT_THROW(PrimeField(2), UsageError);
  EXPECT_THROW(PrimeField(32004), UsageError);
  EXPECT_NO_THROW(PrimeField(23));
  EXPECT_NO_THROW(PrimeField(2147483647u));
}

TEST(Field, InverseTimesValueIsOne) {
  PrimeField F(32003);
  for (Coeff a = 1; a < 2000; ++a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
  PrimeField G(2147483647u);
  EXPECT_EQ(G.mul(123456789u, G.inv(123456789u)), 1u);
}

TEST(Monomial, DegrevlexSimpleCases) {
  EXPECT_TRUE(degrevlex(mono({2, 0}), mono({1, 1})) > 0);
  EXPECT_TRUE(degrevlex(mono({1, 2, 3}), mono({1, 2, 3})) == 0);
  EXPECT_THROW(compare(mono({1}), mono({1}), 2, 3), UsageError);
}

TEST(Monomial, DegreeTwoSortInThreeVariables) {
  auto ms = monomials_of_degree(3, 2);
  std::vector<Monomial> expected = {mono({2, 0, 0}), mono({1, 1, 0}), mono({0, 2, 0}),
                                    mono({1, 0, 1}), mono({0, 1, 1}), mono({0, 0, 2})};
  ASSERT_EQ(ms.size(), expected.size());
  for (std::size_t i = 0; i < ms.size(); ++i) EXPECT_EQ(ms[i], expected[i]) << i;
  std::reverse(ms.begin(), ms.end());
  std::sort(ms.begin(), ms.end(), [](auto& a, auto& b) { return degrevlex(a, b) > 0; });
  for (std::size_t i = 0; i < ms.size(); ++i) EXPECT_EQ(ms[i], expected[i]) << i;
}

TEST(Monomial, OrderIsTotalOnSmallDegrees) {
  std::vector<Monomial> all;
  for (int d = 0; d <= 3; ++d)
    for (auto& m : monomials_of_degree(3, d)) all.push_back(m);
  for (auto& a : all)
    for (auto& b : all) {
      auto ab = degrevlex(a, b), ba = degrevlex(b, a);
      EXPECT_EQ(ab == 0, a == b);
      EXPECT_EQ(ab > 0, ba < 0);
      for (auto& c : all) {
        if (ab > 0 && degrevlex(b, c) > 0) {
          EXPECT_TRUE(degrevlex(a, c) > 0);
        }
      }
      if (divides(a, b) && !(a == b)) {
        EXPECT_TRUE(ab < 0);
      }
    }
}

TEST(Polynomial, Arithmetic) {
  Ring R = P(1);
  auto z0 = Polynomial::variable(R, 0), z1 = Polynomial::variable(R, 1);
  EXPECT_EQ((z0 + z1) + z1.scaled(32002), z0);
  EXPECT_TRUE((z0 * Polynomial::constant(R, 0)).is_zero());
  EXPECT_EQ((z0 + z1) * (z0 - z1), parse(R, "z0^2 - z1^2"));
  EXPECT_THROW(z0 + Polynomial::variable(P(2), 0), UsageError);
}

TEST(Polynomial, Homogeneity) {
  Ring R = P(3);
  auto h = parse(R, "z0^3 + z1^3").homogeneity();
  EXPECT_TRUE(h.first);
  EXPECT_EQ(h.second, 3);
  EXPECT_FALSE(parse(R, "z0 + z1^2").is_homogeneous());
  auto z = Polynomial(R).homogeneity();
  EXPECT_TRUE(z.first);
  EXPECT_FALSE(z.second.has_value());
}

TEST(Polynomial, PrintAndParse) {
  Ring R = P(3);
  auto f = parse(R, "z1^3*z2^3 - 12625*z0*z3");
  EXPECT_EQ(f.to_string(), "z1^3*z2^3 - 12625*z0*z3");
  EXPECT_EQ(Polynomial(R).to_string(), "0");
  EXPECT_EQ(parse(R, "(z0+z1)^2 - 2*z0*z1"), parse(R, "z0^2+z1^2"));
  EXPECT_THROW(parse(R, "z0 +* z1"), UsageError);
  EXPECT_THROW(parse(R, "z9"), UsageError);
}

TEST(Polynomial, RingAxiomsOnRandomInputs) {
  Ring R = P(3, 101);
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_form(R, static_cast<int>(rng.below(3)), rng);
    auto b = random_form(R, static_cast<int>(rng.below(3)), rng);
    auto c = random_form(R, static_cast<int>(rng.below(3)), rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(parse(R, a.to_string()), a);
  }
}

TEST(RandomForm, HomogeneousAndDeterministic) {
  Ring R = P(3);
  for (int d = 0; d <= 8; ++d) {
    Rng r1(99), r2(99);
    auto f = random_form(R, d, r1);
    auto h = f.homogeneity();
    EXPECT_TRUE(h.first);
    if (h.second) {
      EXPECT_EQ(*h.second, d);
    }
    EXPECT_EQ(f, random_form(R, d, r2));
  }
  Rng r(5);
  EXPECT_TRUE(random_form(R, 0, r).is_constant());
}

TEST(RandomForm, GoldenLinearForm) {
  std::ifstream in(std::string(FORGE_DATA_DIR) + "/golden_linear_form.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::string line;
  std::getline(in, line);
  Ring R = P(3);
  Rng rng(20240601);
  EXPECT_EQ(random_form(R, 1, rng).to_string(), line);
}

TEST(Rng, DocumentedStream) {
  // First outputs of SplitMix64 from seed 0 (reference values of the generator).
  Rng r(0);
  EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(r.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(r.next(), 0x06C45D188009454FULL);
}
