#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fps/json_io.hpp"
#include "oracles.hpp"

using namespace fps;

namespace {

const IndexSpace kAb = IndexSpace::free_monoid({"a", "b"});
const FieldKind kQ = field_q();

FieldValue q(long num, unsigned long den = 1) { return FieldValue::rational(num, den); }

}  // namespace

TEST_CASE("index encoding") {
  IndexSpace nat = IndexSpace::naturals();
  CHECK(index_json(nat, Index{std::uint64_t{7}}) == json(7));
  CHECK(read_index(nat, json(7)) == Index{std::uint64_t{7}});
  CHECK_THROWS_AS(read_index(nat, json("7")), InputError);
  CHECK_THROWS_AS(read_index(nat, json(-3)), InputError);

  Index ab = kAb.parse_index("ab");
  CHECK(index_json(kAb, ab) == json("ab"));
  CHECK(read_index(kAb, json("ab")) == ab);
  CHECK(read_index(kAb, json::array({"a", "b"})) == ab);
  CHECK_THROWS_AS(read_index(kAb, json::array({"a", "c"})), InputError);
  CHECK_THROWS_AS(read_index(kAb, json(4)), InputError);
}

TEST_CASE("ambiguous words fall back to symbol arrays") {
  // greedy reading of "aba" yields ab.a, so a.ba must be spelled out
  IndexSpace s = IndexSpace::free_monoid({"a", "ab", "ba"});
  Index tricky{Word{{0, 2}}};  // a . ba, text "aba"
  json j = index_json(s, tricky);
  REQUIRE(j.is_array());
  CHECK(j == json::array({"a", "ba"}));
  CHECK(read_index(s, j) == tricky);

  Index plain{Word{{1, 0}}};  // ab . a reads back fine
  CHECK(index_json(s, plain) == json("aba"));

  // every word of this alphabet survives the round trip
  oracle::Rng rng(0x5eed70);
  for (int i = 0; i < 200; ++i) {
    Index w{oracle::rand_word(rng, 3, 6)};
    CHECK(read_index(s, index_json(s, w)) == w);
  }
}

TEST_CASE("space encoding") {
  CHECK(space_json(IndexSpace::naturals()) == json("naturals"));
  CHECK(read_space(json("naturals")) == IndexSpace::naturals());
  CHECK(space_json(kAb) == json{{"alphabet", {"a", "b"}}});
  CHECK(read_space(space_json(kAb)) == kAb);
  CHECK(read_space(json{{"alphabet", "ab"}}) == kAb);  // string shorthand

  CHECK_THROWS_AS(read_space(json("integers")), InputError);
  CHECK_THROWS_AS(read_space(json{{"alphabet", {"a", "a"}}}), InputError);
  CHECK_THROWS_AS(read_space(json(12)), InputError);
}

TEST_CASE("polynomial records") {
  Polynomial p = Polynomial::from_terms(kAb, kQ, {{kAb.parse_index("ab"), q(3, 4)}});
  json j = polynomial_json(p);
  CHECK(j.dump() == R"({"field":"Q","terms":[{"index":"ab","coeff":"3/4"}]})");
  CHECK(read_polynomial(j, kAb) == p);

  // terms arrive canonically ordered whatever the build order
  Polynomial r = Polynomial::from_terms(
      kAb, kQ, {{kAb.parse_index("b"), q(2)}, {kAb.parse_index(""), q(1)}});
  json rj = polynomial_json(r);
  CHECK(rj["terms"][0]["index"] == json(""));

  // readers merge duplicates and drop zeros like the constructor does
  json dup = parse_json_text(
      R"({"field":"Q","terms":[{"index":"a","coeff":"2"},{"index":"a","coeff":"-2"}]})");
  CHECK(read_polynomial(dup, kAb).is_zero());

  CHECK_THROWS_AS(read_polynomial(parse_json_text(R"({"terms":[]})"), kAb), InputError);
  CHECK_THROWS_AS(read_polynomial(parse_json_text(R"({"field":"Q","terms":3})"), kAb),
                  InputError);
  CHECK_THROWS_AS(read_polynomial(
                      parse_json_text(R"({"field":"Q","terms":[{"index":"a"}]})"), kAb),
                  InputError);
  CHECK_THROWS_AS(read_polynomial(
                      parse_json_text(R"({"field":"F6","terms":[]})"), kAb),
                  InputError);
}

TEST_CASE("polynomial records round-trip bit for bit") {
  oracle::Rng rng(0x5eed71);
  for (FieldKind k : {kQ, field_fp(7), field_r64()}) {
    for (int i = 0; i < 40; ++i) {
      Polynomial p = oracle::rand_poly(rng, kAb, k, 6, 25);
      json j = polynomial_json(p);
      CHECK(read_polynomial(j, kAb) == p);
      CHECK(polynomial_json(read_polynomial(j, kAb)).dump() == j.dump());
    }
  }
}

TEST_CASE("matrix records") {
  IndexSpace nat = IndexSpace::naturals();
  std::map<Index, RowEntries, IndexLess> rows;
  rows[Index{std::uint64_t{0}}] = {{Index{std::uint64_t{1}}, q(2)}};
  rows[Index{std::uint64_t{2}}] = {{Index{std::uint64_t{0}}, q(1)},
                                   {Index{std::uint64_t{3}}, q(-1, 3)}};
  RowFiniteMatrix m = RowFiniteMatrix::from_rows(nat, nat, kQ, rows);

  std::vector<Index> probe;
  for (std::uint64_t i = 0; i < 6; ++i) probe.push_back(Index{i});
  json j = matrix_json(m, probe);
  CHECK(j["source"] == json("naturals"));
  CHECK(j["rows"].size() == 2);  // silent rows are omitted
  CHECK(j["rows"][1]["entries"][1]["coeff"] == json("-1/3"));

  RowFiniteMatrix back = read_matrix(j);
  for (std::uint64_t y = 0; y < 6; ++y)
    CHECK(back.row(Index{y}) == m.row(Index{y}));

  json dup = j;
  dup["rows"].push_back(dup["rows"][0]);
  CHECK_THROWS_AS(read_matrix(dup), InputError);

  json unsorted = j;
  unsorted["rows"][1]["entries"] = json::array(
      {json{{"x", 3}, {"coeff", "-1/3"}}, json{{"x", 0}, {"coeff", "1"}}});
  CHECK_THROWS_AS(read_matrix(unsorted), InputError);

  // zero entries are tolerated on input and dropped
  json padded = j;
  padded["rows"][0]["entries"].push_back(json{{"x", 4}, {"coeff", "0"}});
  CHECK(read_matrix(padded).row(Index{std::uint64_t{0}}).size() == 1);
}

TEST_CASE("json text and file plumbing") {
  CHECK(parse_json_text("{\"k\": [1, 2]}")["k"][1] == json(2));
  CHECK_THROWS_AS(parse_json_text("{oops"), InputError);
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), InputError);
}
