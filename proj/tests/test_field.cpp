#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fps/field.hpp"
#include "oracles.hpp"

using namespace fps;

TEST_CASE("value literals round-trip") {
  CHECK(value_text(parse_value("Q:3/4")) == "Q:3/4");
  CHECK(value_text(parse_value("Q:-3/4")) == "Q:-3/4");
  CHECK(value_text(parse_value("Q:6/8")) == "Q:3/4");
  CHECK(value_text(parse_value("Q:5")) == "Q:5");
  CHECK(value_text(parse_value("F7:3")) == "F7:3");
  CHECK(value_text(parse_value("F7:10")) == "F7:3");
  CHECK(value_text(parse_value("F7:-1")) == "F7:6");
  CHECK(value_text(parse_value("R:0.5")) == "R:0.5");
  CHECK(value_text(parse_value("R64:0.5")) == "R:0.5");
  CHECK(value_text(parse_value("R:1e-9")) == "R:1e-09");
  CHECK(parse_value("R:1e-09").dbl() == 1e-9);
}

TEST_CASE("malformed literals are input errors") {
  CHECK_THROWS_AS(parse_value("Q"), InputError);
  CHECK_THROWS_AS(parse_value("Q:1/0"), InputError);
  CHECK_THROWS_AS(parse_value("Q:abc"), InputError);
  CHECK_THROWS_AS(parse_value("Q:1.5"), InputError);
  CHECK_THROWS_AS(parse_value("F7:1/2"), InputError);
  CHECK_THROWS_AS(parse_value("R:nan"), InputError);
  CHECK_THROWS_AS(parse_value("R:1e999"), InputError);
  CHECK_THROWS_AS(parse_value("Z:1"), InputError);
  CHECK_THROWS_AS(parse_field_name("F6"), InputError);  // 6 is not prime
  CHECK_THROWS_AS(parse_scalar("", field_q()), InputError);
}

TEST_CASE("rational arithmetic is exact") {
  FieldValue a = parse_value("Q:3/4");
  FieldValue b = parse_value("Q:1/6");
  CHECK(scalar_text(a + b) == "11/12");
  CHECK(scalar_text(a * b) == "1/8");
  CHECK(scalar_text(a - b) == "7/12");
  CHECK(scalar_text(inv(a)) == "4/3");
  CHECK((a + (-a)).is_zero());
  CHECK_THROWS_AS(inv(FieldValue::zero(field_q())), EvalError);
}

TEST_CASE("prime field arithmetic") {
  FieldKind f7 = field_fp(7);
  CHECK((FieldValue::residue(5, 7) * FieldValue::residue(4, 7)).res() == 6);
  CHECK(inv(FieldValue::residue(3, 7)).res() == 5);
  CHECK((FieldValue::residue(1, 2) + FieldValue::residue(1, 2)).is_zero());
  CHECK_THROWS_AS(field_fp(6), EvalError);
  CHECK_THROWS_AS(field_fp(1), EvalError);
  // a large prime exercises the 128-bit product path
  std::uint64_t p = 2305843009213693951ull;  // 2^61 - 1
  FieldValue x = FieldValue::residue(123456789123456789ull, p);
  CHECK((x * inv(x)) == FieldValue::one(field_fp(p)));
  CHECK(f7 != field_fp(5));
}

TEST_CASE("mixed-field arithmetic is rejected") {
  CHECK_THROWS_AS(parse_value("Q:1") + parse_value("F7:1"), EvalError);
  CHECK_THROWS_AS(parse_value("R:1") * parse_value("Q:1"), EvalError);
}

TEST_CASE("p-adic valuation") {
  CHECK(padic_valuation(mpq_class(125), 5) == 3);
  CHECK(padic_valuation(mpq_class(-125), 5) == 3);
  CHECK(padic_valuation(mpq_class(3, 25), 5) == -2);
  CHECK(padic_valuation(mpq_class(7), 5) == 0);
  CHECK(padic_valuation(mpq_class(0), 5) == kValInfinity);
}

TEST_CASE("nearness per descriptor") {
  FieldDescriptor disc = FieldDescriptor::discrete(field_q());
  CHECK(near(parse_value("Q:1/3"), parse_value("Q:2/6"), disc));
  CHECK_FALSE(near(parse_value("Q:1/3"), parse_value("Q:1/4"), disc));

  FieldDescriptor p53 = FieldDescriptor::padic(5, 3);
  CHECK(near(parse_value("Q:1"), parse_value("Q:126"), p53));       // v5(125) = 3
  CHECK_FALSE(near(parse_value("Q:1"), parse_value("Q:26"), p53));  // v5(25) = 2
  CHECK(near(parse_value("Q:0"), parse_value("Q:0"), p53));

  FieldDescriptor arch = FieldDescriptor::archimedean(1e-9);
  CHECK(near(FieldValue::real(0.1 + 0.2), FieldValue::real(0.3), arch));
  CHECK_FALSE(near(FieldValue::real(1.0), FieldValue::real(1.000001), arch));

  FieldDescriptor ind = FieldDescriptor::indiscrete(field_q());
  CHECK(near(parse_value("Q:1"), parse_value("Q:1000000"), ind));

  CHECK_THROWS_AS(near(parse_value("F7:1"), parse_value("F7:1"), disc), EvalError);
}

TEST_CASE("descriptor literals") {
  CHECK(descriptor_text(parse_descriptor("Q/discrete")) == "Q/discrete");
  CHECK(descriptor_text(parse_descriptor("Q/padic:5:3")) == "Q/padic:5:3");
  CHECK(descriptor_text(parse_descriptor("R64/arch:1e-9")) == "R64/arch:1e-09");
  CHECK(descriptor_text(parse_descriptor("R64/arch")) == "R64/arch:1e-09");
  CHECK(descriptor_text(parse_descriptor("F7/indiscrete")) == "F7/indiscrete");
  CHECK_FALSE(parse_descriptor("Q/indiscrete").hausdorff());

  CHECK_THROWS_AS(parse_descriptor("R64/discrete"), InputError);
  CHECK_THROWS_AS(parse_descriptor("Q/arch:1e-9"), InputError);
  CHECK_THROWS_AS(parse_descriptor("F7/padic:5:3"), InputError);
  CHECK_THROWS_AS(parse_descriptor("Q/padic:4:2"), InputError);
  CHECK_THROWS_AS(parse_descriptor("Q/padic:5:0"), InputError);
  CHECK_THROWS_AS(parse_descriptor("Q/padic:5"), InputError);
  CHECK_THROWS_AS(parse_descriptor("R64/arch:-1"), InputError);
  CHECK_THROWS_AS(parse_descriptor("Q/fuzzy"), InputError);
  CHECK_THROWS_AS(parse_descriptor("Q"), InputError);
}

TEST_CASE("field axioms hold on random values") {
  oracle::Rng rng(0x5eed01);
  for (FieldKind k : {field_q(), field_fp(7), field_fp(2)}) {
    for (int i = 0; i < 200; ++i) {
      FieldValue a = oracle::rand_value(rng, k);
      FieldValue b = oracle::rand_value(rng, k);
      FieldValue c = oracle::rand_value(rng, k);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + (-a)).is_zero());
      if (!a.is_zero()) CHECK(a * inv(a) == FieldValue::one(k));
    }
  }
}

TEST_CASE("ultrametric inequality for the p-adic descriptor") {
  oracle::Rng rng(0x5eed02);
  FieldDescriptor d = FieldDescriptor::padic(5, 2);
  FieldValue z = FieldValue::zero(field_q());
  for (int i = 0; i < 200; ++i) {
    FieldValue a = oracle::rand_value(rng, field_q());
    FieldValue b = oracle::rand_value(rng, field_q());
    if (near(a, z, d) && near(b, z, d)) CHECK(near(a + b, z, d));
  }
}

TEST_CASE("scalar text round-trips bit for bit") {
  oracle::Rng rng(0x5eed03);
  for (FieldKind k : {field_q(), field_fp(101), field_r64()}) {
    for (int i = 0; i < 200; ++i) {
      FieldValue v = oracle::rand_value(rng, k);
      CHECK(parse_scalar(scalar_text(v), k) == v);
    }
  }
  // doubles that are not short decimals still survive
  FieldValue third = FieldValue::real(1.0 / 3.0);
  CHECK(parse_scalar(scalar_text(third), field_r64()) == third);
}
