#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ellwp/term.hpp"
#include "test_util.hpp"

using namespace ellwp;

TEST_CASE("alphabet validation and ordering") {
  auto a = Alphabet::make({"y", "x", "g_1"});
  CHECK(a->size() == 3);
  CHECK(a->name(0) == "y");
  CHECK(a->index("x") == 1);
  CHECK(a->index("missing") == -1);
  // Canonical ranks follow names, not insertion order.
  CHECK(a->name_rank(2) == 0);  // g_1
  CHECK(a->name_rank(1) == 1);  // x
  CHECK(a->name_rank(0) == 2);  // y

  CHECK_THROWS_AS(Alphabet::make({"x", "x"}), Error);
  CHECK_THROWS_AS(Alphabet::make({"e"}), Error);
  CHECK_THROWS_AS(Alphabet::make({"abs"}), Error);
  CHECK_THROWS_AS(Alphabet::make({"1x"}), Error);
  CHECK_THROWS_AS(Alphabet::make({""}), Error);
}

TEST_CASE("group words reduce freely") {
  auto a = Alphabet::make({"x", "y"});
  GroupWord w = GroupWord::single(0, 1).mul(GroupWord::single(0, -1));
  CHECK(w.empty());
  CHECK(w.print(*a) == "e");

  GroupWord v = GroupWord::single(0, 2).mul(GroupWord::single(1, 1)).mul(GroupWord::single(1, 2));
  CHECK(v.print(*a) == "x^2 y^3");
  CHECK(v.length() == 5);
  CHECK(v.weight(0) == 2);
  CHECK(v.weight(1) == 3);
  CHECK(v.mul(v.inverse()).empty());
  CHECK(v.inverse().print(*a) == "y^-3 x^-2");
  CHECK(v.pow(0).empty());
  CHECK(GroupWord::single(0, 1).pow(3).print(*a) == "x^3");
  CHECK(GroupWord::single(0, 1).pow(-2).print(*a) == "x^-2");

  // Order: empty first, then letter-by-letter by name rank and exponent.
  CHECK(GroupWord::less(GroupWord{}, v, *a));
  CHECK(GroupWord::less(GroupWord::single(0, 1), GroupWord::single(1, 1), *a));
  CHECK(GroupWord::less(GroupWord::single(0, -1), GroupWord::single(0, 1), *a));
}

TEST_CASE("term constructors flatten and collapse") {
  auto a = Alphabet::make({"x", "y"});
  Term x = Term::generator(a, 0), y = Term::generator(a, 1);

  Term p = Term::product({Term::product({x, y}), x});
  CHECK(p.children().size() == 3);
  CHECK(p.kind() == TermKind::Product);

  Term j = Term::join({Term::join({x, y}), Term::meet({x, y})});
  CHECK(j.children().size() == 3);

  CHECK(Term::power(x, 0).kind() == TermKind::Identity);
  CHECK(Term::power(x, 1).same(x));
  CHECK(print(Term::power(x, -2)) == "x^-1 x^-1");

  CHECK_THROWS_AS(Term::generator(a, 7), Error);
  auto b = Alphabet::make({"x"});
  CHECK_THROWS_AS(Term::product({x, Term::generator(b, 0)}), Error);
}

TEST_CASE("derived operators print as expected") {
  auto a = Alphabet::make({"x", "y"});
  Term x = Term::generator(a, 0), y = Term::generator(a, 1);
  CHECK(print(abs_term(x)) == "x \\/ x^-1");
  CHECK(print(conj_term(x, y)) == "y^-1 x y");
  CHECK(print(comm_term(x, y)) == "x^-1 y^-1 x y");
  CHECK(print(combine_relations({x, y})) == "x \\/ x^-1 \\/ y \\/ y^-1");
  CHECK_THROWS_AS(combine_relations({}), Error);
}

TEST_CASE("parser accepts the documented grammar") {
  auto a = Alphabet::make({"x", "y", "z"});
  CHECK(parse_term("e", a).kind() == TermKind::Identity);
  CHECK(parse_term("x", a).same(Term::generator(a, 0)));
  CHECK(print(parse_term("x y^-1", a)) == "x y^-1");
  CHECK(print(parse_term("x \\/ y /\\ z", a)) == "x \\/ y /\\ z");
  CHECK(print(parse_term("(x \\/ y) /\\ z", a)) == "(x \\/ y) /\\ z");
  CHECK(print(parse_term("abs(x)", a)) == "x \\/ x^-1");
  CHECK(print(parse_term("conj(x, y)", a)) == "y^-1 x y");
  CHECK(print(parse_term("comm(x,y)", a)) == "x^-1 y^-1 x y");
  CHECK(print(parse_term("x^3", a)) == "x x x");
  CHECK(print(parse_term("(x y)^2", a)) == "x y x y");
  CHECK(parse_term("(x)^0", a).kind() == TermKind::Identity);

  CHECK_THROWS_AS(parse_term("w", a), ParseError);
  CHECK_THROWS_AS(parse_term("x +", a), ParseError);
  CHECK_THROWS_AS(parse_term("(x", a), ParseError);
  CHECK_THROWS_AS(parse_term("", a), ParseError);
  try {
    parse_term("x \\/ w", a);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position == 5);
  }
}

TEST_CASE("print round-trips through the parser") {
  auto a = Alphabet::make({"x", "y"});
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Term t = testutil::random_term(rng, a, 1 + static_cast<int>(rng() % 9));
    Term back = parse_term(print(t), a);
    CHECK(back.same(t));
  }
}

TEST_CASE("normal form distributes and absorbs") {
  auto a = Alphabet::make({"x", "y", "z", "t"});
  Term x = Term::generator(a, 0), y = Term::generator(a, 1), z = Term::generator(a, 2),
       tt = Term::generator(a, 3);

  JoinOfMeets jm = normalize(Term::product({x, Term::join({y, z}), tt}));
  REQUIRE(jm.rows.size() == 2);
  CHECK(print(jm, *a) == "x y t \\/ x z t");

  JoinOfMeets meetside = normalize(Term::product({x, Term::meet({y, z}), tt}));
  REQUIRE(meetside.rows.size() == 1);
  CHECK(print(meetside, *a) == "x y t /\\ x z t");

  // join(meet(x, y), x) absorbs the larger row.
  JoinOfMeets ab = normalize(Term::join({Term::meet({x, y}), x}));
  CHECK(print(ab, *a) == "x");

  // Inverse of a join is the meet of inverses, redistributed.
  JoinOfMeets inv = normalize(Term::inverse(Term::join({x, y})));
  CHECK(print(inv, *a) == "x^-1 /\\ y^-1");

  CHECK(normalize(Term::identity(a)).rows == std::vector<std::vector<GroupWord>>{{GroupWord{}}});
}

TEST_CASE("normalize is idempotent through embed") {
  auto a = Alphabet::make({"x", "y"});
  std::mt19937 rng(11);
  for (int i = 0; i < 120; ++i) {
    Term t = testutil::random_term(rng, a, 1 + static_cast<int>(rng() % 7));
    JoinOfMeets jm = normalize(t);
    CHECK(normalize(embed(jm, a)) == jm);
  }
}

TEST_CASE("word_term embeds reduced words") {
  auto a = Alphabet::make({"x", "y"});
  GroupWord w = GroupWord::single(0, 2).mul(GroupWord::single(1, -1));
  CHECK(print(word_term(w, a)) == "x x y^-1");
  CHECK(word_term(GroupWord{}, a).kind() == TermKind::Identity);
}

TEST_CASE("one-generator evaluation lands in Z (+) Z") {
  auto a = Alphabet::make({"x"});
  Term x = Term::generator(a, 0);
  CHECK(eval_z2(x) == Z2Element{1, -1});
  CHECK(eval_z2(Term::identity(a)) == Z2Element{0, 0});
  CHECK(eval_z2(abs_term(x)) == Z2Element{1, 1});
  CHECK(eval_z2(Term::join({x, Term::identity(a)})) == Z2Element{1, 0});
  CHECK(eval_z2(Term::meet({x, Term::identity(a)})) == Z2Element{0, -1});
  CHECK(eval_z2(Term::product({x, Term::inverse(x)})) == Z2Element{0, 0});
  CHECK(eval_z2(Term::power(x, 3)) == Z2Element{3, -3});
}
