#include <random>

#include <gtest/gtest.h>

#include "pgonal/errors.hpp"
#include "pgonal/nec.hpp"

using namespace pgonal;

namespace
{

NecSignature sig(std::string_view text)
{ return parse_signature(text); }

// Random valid signatures with sign - and no period cycles, or sign + with
// a few period cycles.
NecSignature random_signature(std::mt19937 &rng, bool with_cycles)
{
  std::uniform_int_distribution<int> small(0, 4);
  std::uniform_int_distribution<std::int64_t> period(2, 12);
  NecSignature s;
  s.orientable = with_cycles;
  s.genus = with_cycles ? small(rng) : 1 + small(rng);
  int const r = small(rng);
  for (int i = 0; i < r; ++i)
    s.proper_periods.push_back(period(rng));
  if (with_cycles) {
    int const k = small(rng) % 3;
    for (int i = 0; i < k; ++i) {
      std::vector<std::int64_t> cycle;
      int const len = small(rng) % 3;
      for (int j = 0; j < len; ++j)
        cycle.push_back(period(rng));
      s.period_cycles.push_back(cycle);
    }
  }
  return s;
}

} // namespace

TEST(Validate, AcceptsWellFormed)
{
  EXPECT_TRUE(validate(sig("(1;-;[3,3,2])")).empty());
  EXPECT_TRUE(is_valid(sig("(2;+;[];{})")));
}

TEST(Validate, NonOrientableNeedsPositiveGenus)
{
  NecSignature s{0, false, {3}, {}};
  auto const v = validate(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "sign - needs genus >= 1");
}

TEST(Validate, PeriodBelowTwo)
{
  NecSignature s{1, false, {1, 3}, {}};
  auto const v = validate(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "period < 2");
}

TEST(Validate, ReportsEveryViolation)
{
  NecSignature s{0, false, {1}, {{1}}};
  EXPECT_GE(validate(s).size(), 2u);
}

TEST(Area, ExactValues)
{
  EXPECT_EQ(normalized_area(sig("(1;-;[3,3,2])")), make_rational(5, 6));
  EXPECT_EQ(normalized_area(sig("(2;+;[];{})")), make_rational(2));
  EXPECT_EQ(normalized_area(sig("(1;-;[3,3,6])")), make_rational(7, 6));
}

TEST(Area, ReflectionSignature)
{
  // -2 + k + 1/2 + (1/2)(2/3 + 1/2) with k = 1
  EXPECT_EQ(normalized_area(sig("(0;+;[2];{(3,2)})")), make_rational(1, 12));
  EXPECT_EQ(normalized_area(sig("(0;+;[2];{(3,4)})")), make_rational(5, 24));
}

TEST(Area, DegenerateSignature)
{
  EXPECT_EQ(normalized_area(sig("(0;+;[2,3])")), make_rational(-5, 6));
  EXPECT_THROW(genus_of_surface_kernel(sig("(0;+;[2,3])"), 12), DegenerateSignature);
  EXPECT_THROW(genus_of_surface_kernel(sig("(1;+;[])"), 12), DegenerateSignature);
}

TEST(Area, InvalidSignatureThrows)
{
  EXPECT_THROW(normalized_area(NecSignature{0, false, {3}, {}}), InvalidSignature);
}

TEST(Genus, RiemannHurwitz)
{
  EXPECT_EQ(genus_of_surface_kernel(sig("(1;-;[3,3,2])"), 12), 6);
  EXPECT_EQ(genus_of_surface_kernel(sig("(1;-;[3,3,6])"), 12), 8);
  EXPECT_EQ(genus_of_surface_kernel(sig("(5;+;[];{})"), 1), 5);
}

TEST(Genus, NotIntegral)
{
  // 1 + 5 * (5/6) / 2 is not an integer.
  EXPECT_FALSE(genus_of_surface_kernel(sig("(1;-;[3,3,2])"), 5).has_value());
}

TEST(CanonicalFuchsian, DoublesPeriods)
{
  EXPECT_EQ(canonical_fuchsian(sig("(1;-;[3,3,2])")), sig("(0;+;[3,3,3,3,2,2])"));
  EXPECT_EQ(canonical_fuchsian(sig("(1;-;[])")), sig("(0;+;[])"));
  EXPECT_EQ(canonical_fuchsian(sig("(2;-;[5])")), sig("(1;+;[5,5])"));
}

TEST(CanonicalFuchsian, RejectsOtherShapes)
{
  EXPECT_THROW(canonical_fuchsian(sig("(1;+;[3])")), InvalidSignature);
  EXPECT_THROW(canonical_fuchsian(sig("(0;+;[2];{(3,2)})")), InvalidSignature);
}

TEST(FamilySignature, Examples)
{
  auto const a = family_signature(3, 4, 6, Family::i);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->signature, sig("(1;-;[3,3,2])"));
  EXPECT_EQ(a->l, 2);
  EXPECT_FALSE(a->l_equals_one());

  auto const b = family_signature(3, 4, 8, Family::ii);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->signature, sig("(1;-;[3,3,6])"));

  auto const c = family_signature(3, 8, 6, Family::i);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->signature, sig("(1;-;[3,4])"));
  EXPECT_TRUE(c->l_equals_one());

  EXPECT_FALSE(family_signature(3, 4, 7, Family::i));
  EXPECT_FALSE(family_signature(3, 4, 7, Family::ii));
}

TEST(FamilySignature, RejectsBadParameters)
{
  EXPECT_THROW(family_signature(4, 4, 6, Family::i), InvalidParameters);
  EXPECT_THROW(family_signature(2, 4, 6, Family::i), InvalidParameters);
  EXPECT_THROW(family_signature(3, 5, 6, Family::i), InvalidParameters);
}

TEST(FamilySignature, RoundTripsGenus)
{
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (std::int64_t n = 2; n <= 40; n += 2) {
      for (std::int64_t g = 2; g <= 200; ++g) {
        for (Family f : {Family::i, Family::ii}) {
          auto const s = family_signature(p, n, g, f);
          if (!s)
            continue;
          EXPECT_EQ(genus_of_surface_kernel(s->signature, n * p), g)
              << to_string(s->signature);
          EXPECT_EQ(family_l(p, n, g, f), make_rational(s->l));
        }
      }
    }
  }
}

TEST(Text, RoundTrip)
{
  for (char const *text : {"(1;-;[3,3,2])", "(0;+;[2];{(3,2)})", "(2;+;[];{})",
                           "(0;+;[2];{(3,2),()})", "(3;-;[7])"}) {
    NecSignature const s = parse_signature(text);
    EXPECT_EQ(parse_signature(to_string(s)), s) << text;
  }
  EXPECT_EQ(to_string(sig("(1;-;[3,3,2])")), "(1;-;[3,3,2])");
  EXPECT_EQ(to_string(sig("(0;+;[2];{(3,2),()})")), "(0;+;[2];{(3,2),()})");
}

TEST(Text, AcceptsUnicodeMinusAndSpaces)
{
  EXPECT_EQ(parse_signature("( 1 ; − ; [3, 3, 2] )"), sig("(1;-;[3,3,2])"));
}

TEST(Text, ParseErrors)
{
  for (char const *text : {"", "(1;-;[3,3,2]", "(1;*;[3])", "(x;-;[3])", "(1;-;[3,]);",
                           "(1;-;[3]) trailing"}) {
    EXPECT_THROW(parse_signature(text), ParseError) << text;
  }
}

TEST(Equality, OrderInsensitiveOnPeriods)
{
  EXPECT_EQ(sig("(1;-;[2,3,3])"), sig("(1;-;[3,3,2])"));
  EXPECT_NE(sig("(1;-;[2,3])"), sig("(1;-;[3,3])"));
  EXPECT_EQ(sig("(1;-;[3,2])").proper_periods, (std::vector<std::int64_t>{3, 2}));
}

TEST(Property, AreaDoublesUnderCanonicalFuchsian)
{
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    NecSignature const s = random_signature(rng, false);
    EXPECT_EQ(normalized_area(canonical_fuchsian(s)), 2 * normalized_area(s)) << to_string(s);
  }
}

TEST(Property, AddingAPeriodIncreasesArea)
{
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> period(2, 30);
  for (int trial = 0; trial < 500; ++trial) {
    NecSignature s = random_signature(rng, trial % 2 == 0);
    Rational const before = normalized_area(s);
    s.proper_periods.push_back(period(rng));
    EXPECT_GT(normalized_area(s), before) << to_string(s);
  }
}

TEST(Property, TextRoundTripOnRandomSignatures)
{
  std::mt19937 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    NecSignature const s = random_signature(rng, trial % 2 == 0);
    NecSignature const back = parse_signature(to_string(s));
    EXPECT_EQ(back, s);
    EXPECT_EQ(back.proper_periods, s.proper_periods);
    EXPECT_EQ(to_string(back), to_string(s));
  }
}
