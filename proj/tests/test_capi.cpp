#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <memory>
#include <string>

#include "ellwp/ellwp.h"

using nlohmann::json;

namespace {

struct StrFree {
  void operator()(char* s) const { ellwp_string_free(s); }
};
using CStr = std::unique_ptr<char, StrFree>;

struct AlphaFree {
  void operator()(ellwp_alphabet* a) const { ellwp_alphabet_free(a); }
};
using Alpha = std::unique_ptr<ellwp_alphabet, AlphaFree>;

struct TermFree {
  void operator()(ellwp_term* t) const { ellwp_term_free(t); }
};
using CTerm = std::unique_ptr<ellwp_term, TermFree>;

Alpha make_alpha(std::initializer_list<const char*> names) {
  std::vector<const char*> v(names);
  ellwp_alphabet* a = nullptr;
  REQUIRE(ellwp_alphabet_new(v.data(), static_cast<int>(v.size()), &a) == ELLWP_OK);
  return Alpha(a);
}

CTerm parse(const Alpha& a, const char* text) {
  ellwp_term* t = nullptr;
  REQUIRE(ellwp_term_parse(a.get(), text, &t) == ELLWP_OK);
  return CTerm(t);
}

}  // namespace

TEST_CASE("version and error strings") {
  CHECK(std::string(ellwp_version()) == "1.0.0");
  CHECK(ellwp_last_error() != nullptr);
}

TEST_CASE("alphabet lifecycle") {
  Alpha a = make_alpha({"y", "x"});
  CHECK(ellwp_alphabet_size(a.get()) == 2);
  CHECK(std::string(ellwp_alphabet_name(a.get(), 0)) == "y");
  CHECK(std::string(ellwp_alphabet_name(a.get(), 1)) == "x");
  CHECK(ellwp_alphabet_name(a.get(), 2) == nullptr);

  const char* bad[] = {"1x"};
  ellwp_alphabet* out = nullptr;
  CHECK(ellwp_alphabet_new(bad, 1, &out) == ELLWP_ERR_ARG);
  CHECK(std::strlen(ellwp_last_error()) > 0);
}

TEST_CASE("terms parse, print and normalize") {
  Alpha a = make_alpha({"x", "y"});
  CTerm t = parse(a, "x \\/ e");
  CStr printed, nf;
  {
    char* p = nullptr;
    REQUIRE(ellwp_term_print(t.get(), &p) == ELLWP_OK);
    printed.reset(p);
    char* n = nullptr;
    REQUIRE(ellwp_term_normal_form(t.get(), &n) == ELLWP_OK);
    nf.reset(n);
  }
  CHECK(std::string(printed.get()) == "x \\/ e");
  CHECK(std::string(nf.get()) == "e \\/ x");

  ellwp_term* bad = nullptr;
  CHECK(ellwp_term_parse(a.get(), "x \\/ w", &bad) == ELLWP_ERR_PARSE);
  CHECK(std::strlen(ellwp_last_error()) > 0);
  CHECK(ellwp_term_parse(a.get(), nullptr, &bad) == ELLWP_ERR_ARG);
}

TEST_CASE("decision with witness and diagram counts") {
  Alpha a = make_alpha({"x", "y"});
  CTerm trivial = parse(a, "x x^-1");
  int verdict = -1;
  char* witness = reinterpret_cast<char*>(1);
  uint64_t diagrams = 0;
  REQUIRE(ellwp_decide(trivial.get(), nullptr, &verdict, &witness, &diagrams) == ELLWP_OK);
  CHECK(verdict == 1);
  CHECK(witness == nullptr);

  CTerm comm = parse(a, "comm(x, y)");
  REQUIRE(ellwp_decide(comm.get(), nullptr, &verdict, &witness, &diagrams) == ELLWP_OK);
  CHECK(verdict == 0);
  REQUIRE(witness != nullptr);
  json w = json::parse(witness);
  ellwp_string_free(witness);
  CHECK(w.contains("chain"));
  CHECK(w.contains("maps"));
  CHECK(w.contains("trace"));
  CHECK(diagrams > 0);

  ellwp_decide_options opts{1, 1, 0};
  CHECK(ellwp_decide(comm.get(), &opts, &verdict, nullptr, nullptr) == ELLWP_ERR_BUDGET);
  CHECK(ellwp_decide(nullptr, nullptr, &verdict, nullptr, nullptr) == ELLWP_ERR_ARG);
}

TEST_CASE("sign classification") {
  Alpha a = make_alpha({"x"});
  int s = 9;
  REQUIRE(ellwp_sign(parse(a, "e").get(), nullptr, &s) == ELLWP_OK);
  CHECK(s == 0);
  REQUIRE(ellwp_sign(parse(a, "abs(x)").get(), nullptr, &s) == ELLWP_OK);
  CHECK(s == 1);
  REQUIRE(ellwp_sign(parse(a, "x /\\ x^-1").get(), nullptr, &s) == ELLWP_OK);
  CHECK(s == -1);
  REQUIRE(ellwp_sign(parse(a, "x").get(), nullptr, &s) == ELLWP_OK);
  CHECK(s == 2);
}

TEST_CASE("random witness search") {
  Alpha a = make_alpha({"x", "y"});
  CTerm comm = parse(a, "comm(x, y)");
  int found = 0;
  char* witness = nullptr;
  REQUIRE(ellwp_find_witness(comm.get(), 1000, 7, &found, &witness) == ELLWP_OK);
  REQUIRE(found == 1);
  json w = json::parse(witness);
  ellwp_string_free(witness);
  CHECK(w.contains("assignment"));
  CHECK(w.contains("point"));
  CHECK(w.contains("image"));

  CTerm e = parse(a, "e");
  REQUIRE(ellwp_find_witness(e.get(), 200, 7, &found, &witness) == ELLWP_OK);
  CHECK(found == 0);
  CHECK(witness == nullptr);
}

TEST_CASE("wreath decisions through the C layer") {
  Alpha a = make_alpha({"g", "c"});
  int verdict = -1;
  REQUIRE(ellwp_wreath_decide(parse(a, "c /\\ e").get(), "c", "free", 0, &verdict) == ELLWP_OK);
  CHECK(verdict == 1);
  REQUIRE(ellwp_wreath_decide(parse(a, "c g").get(), "c", "free", 0, &verdict) == ELLWP_OK);
  CHECK(verdict == 0);
  CHECK(ellwp_wreath_decide(parse(a, "g").get(), "c", "what", 0, &verdict) == ELLWP_ERR_ARG);

  Alpha b = make_alpha({"x", "c"});
  REQUIRE(ellwp_wreath_decide(parse(b, "conj(x, c) x^-1").get(), "c", "z2", 0, &verdict) ==
          ELLWP_OK);
  CHECK(verdict == 0);

  Alpha t = make_alpha({"g", "a", "c"});
  REQUIRE(ellwp_lex_wreath_decide(parse(t, "abs(conj(a, c)) /\\ abs(a)").get(), "a", "c", "free",
                                  0, &verdict) == ELLWP_OK);
  CHECK(verdict == 1);
  REQUIRE(ellwp_lex_wreath_decide(parse(t, "c^2").get(), "a", "c", "free", 0, &verdict) ==
          ELLWP_OK);
  CHECK(verdict == 0);
}

TEST_CASE("cardinal sum factorization") {
  Alpha a = make_alpha({"gx1", "gw2", "gx3"});
  CTerm t = parse(a, "gx1 gw2^-1 /\\ gx3");
  char* factors = nullptr;
  REQUIRE(ellwp_sum_factor(t.get(), "gx1=x,gw2=w,gx3=x", &factors) == ELLWP_OK);
  json f = json::parse(factors);
  ellwp_string_free(factors);
  CHECK(f.at("x").get<std::string>() == "gx1 /\\ gx3");
  CHECK(f.at("w").get<std::string>() == "e /\\ gw2^-1");

  CHECK(ellwp_sum_factor(t.get(), "gx1=x,nonsense", &factors) == ELLWP_ERR_PARSE);
  CHECK(ellwp_sum_factor(t.get(), "gx1=x,gw2=w", &factors) == ELLWP_ERR_ARG);
}

TEST_CASE("presented quotients through JSON") {
  const char* p1 = R"json({"generators":["x"],"relators":["abs(x)"]})json";
  char* cert = nullptr;
  REQUIRE(ellwp_ideal_semidecide(p1, "x", 100, 0, 1, &cert) == ELLWP_OK);
  json c = json::parse(cert);
  ellwp_string_free(cert);
  CHECK(c.at("kind") == "proved");
  CHECK(c.at("budget_spent") == 2);
  CHECK(c.at("relator_count") == 1);
  CHECK(c.at("conjugators") == json::array({"e"}));
  CHECK(c.contains("dominator"));

  const char* p2 = R"json({"generators":["x","y"],"relators":["abs(x)"]})json";
  REQUIRE(ellwp_solve(p2, "y", 0, 0, 1, &cert) == ELLWP_OK);
  json r = json::parse(cert);
  ellwp_string_free(cert);
  CHECK(r.at("kind") == "refuted");
  CHECK(r.at("target") == "plmap");
  CHECK(r.at("budget_spent") == 8);
  CHECK(r.at("assignment").contains("x"));
  CHECK(r.at("assignment").contains("y"));

  REQUIRE(ellwp_solve(p2, "y", 4, 0, 1, &cert) == ELLWP_OK);
  json u = json::parse(cert);
  ellwp_string_free(cert);
  CHECK(u.at("kind") == "unknown");
  CHECK(u.at("budget_spent") == 4);

  CHECK(ellwp_solve("{\"generators\":[]}", "e", 10, 0, 1, &cert) == ELLWP_ERR_PARSE);
  CHECK(ellwp_solve("not json", "e", 10, 0, 1, &cert) == ELLWP_ERR_PARSE);
}

TEST_CASE("conjugator relation schema emission") {
  const char* gens[] = {"g0"};
  const char* pairs = R"json([["abs(g0)","abs(g0) abs(g0)"],["abs(g0)","abs(g0) abs(g0)"]])json";
  char* out = nullptr;
  REQUIRE(ellwp_gdagger(gens, 1, pairs, 2, 2, &out) == ELLWP_OK);
  json p = json::parse(out);
  ellwp_string_free(out);
  CHECK(p.at("generators").size() == 5);
  CHECK(p.at("relators").size() == 30);

  CHECK(ellwp_gdagger(gens, 1, pairs, 0, 2, &out) == ELLWP_ERR_ARG);
  CHECK(ellwp_gdagger(gens, 1, "[", 2, 2, &out) == ELLWP_ERR_PARSE);
}

TEST_CASE("numbering encodes and decodes") {
  Alpha a = make_alpha({"x", "y"});
  char* index = nullptr;
  REQUIRE(ellwp_godel_encode(a.get(), "x y^-1 /\\ y", "0", &index) == ELLWP_OK);
  std::string i0(index);
  ellwp_string_free(index);

  char* text = nullptr;
  REQUIRE(ellwp_godel_decode(a.get(), i0.c_str(), &text) == ELLWP_OK);
  std::string round(text);
  ellwp_string_free(text);

  REQUIRE(ellwp_godel_encode(a.get(), round.c_str(), "0", &index) == ELLWP_OK);
  CHECK(std::string(index) == i0);
  ellwp_string_free(index);

  REQUIRE(ellwp_godel_encode(a.get(), "x y^-1 /\\ y", "5", &index) == ELLWP_OK);
  std::string i5(index);
  ellwp_string_free(index);
  CHECK(i5 != i0);
  REQUIRE(ellwp_godel_decode(a.get(), i5.c_str(), &text) == ELLWP_OK);
  CHECK(std::string(text) == round);
  ellwp_string_free(text);

  REQUIRE(ellwp_godel_decode(a.get(), "0", &text) == ELLWP_OK);
  CHECK(std::string(text) == "e");
  ellwp_string_free(text);

  CHECK(ellwp_godel_decode(a.get(), "12a", &text) == ELLWP_ERR_PARSE);
  CHECK(ellwp_godel_decode(a.get(), "-3", &text) == ELLWP_ERR_PARSE);
  CHECK(ellwp_godel_encode(a.get(), "x \\/ y", "0", &index) == ELLWP_ERR_ARG);
}

TEST_CASE("PL maps travel as breakpoint JSON") {
  const char* bump = R"json([["0","0"],["1","2"],["4","4"]])json";
  ellwp_plmap* m = nullptr;
  REQUIRE(ellwp_plmap_parse(bump, &m) == ELLWP_OK);
  char* y = nullptr;
  REQUIRE(ellwp_plmap_apply(m, "1", &y) == ELLWP_OK);
  CHECK(std::string(y) == "2");
  ellwp_string_free(y);
  REQUIRE(ellwp_plmap_apply(m, "1/2", &y) == ELLWP_OK);
  CHECK(std::string(y) == "1");
  ellwp_string_free(y);

  char* printed = nullptr;
  REQUIRE(ellwp_plmap_print(m, &printed) == ELLWP_OK);
  CHECK(json::parse(printed) == json::parse(bump));
  ellwp_string_free(printed);
  ellwp_plmap_free(m);

  CHECK(ellwp_plmap_parse("[[", &m) == ELLWP_ERR_PARSE);
  CHECK(ellwp_plmap_parse(R"json([["0","0"],["1","-1"],["4","4"]])json", &m) == ELLWP_ERR_ARG);

  Alpha a = make_alpha({"x", "y"});
  CTerm comm = parse(a, "comm(x, y)");
  const char* assign =
      R"json({"x":[["0","0"],["1","2"],["4","4"]],"y":[["6","6"],["7","9"],["10","10"]]})json";
  char* img = nullptr;
  REQUIRE(ellwp_term_eval_plmap(comm.get(), assign, &img) == ELLWP_OK);
  CHECK(std::string(img) == "[]");
  ellwp_string_free(img);
}

TEST_CASE("conjugators through the C layer") {
  const char* f = R"json([["0","0"],["1","2"],["4","4"]])json";
  const char* g = R"json([["10","10"],["11","12"],["14","14"]])json";
  ellwp_conjugator* c = nullptr;
  REQUIRE(ellwp_conjugator_new(f, g, &c) == ELLWP_OK);
  char* y = nullptr;
  REQUIRE(ellwp_conjugator_apply(c, "1", 1, 0, &y) == ELLWP_OK);
  CHECK(std::string(y) == "11");
  ellwp_string_free(y);
  REQUIRE(ellwp_conjugator_apply(c, "8/3", 1, 0, &y) == ELLWP_OK);
  CHECK(std::string(y) == "38/3");
  ellwp_string_free(y);
  REQUIRE(ellwp_conjugator_apply(c, "11", -1, 0, &y) == ELLWP_OK);
  CHECK(std::string(y) == "1");
  ellwp_string_free(y);
  CHECK(ellwp_conjugator_apply(c, "3999999996/1000000000", 1, 5, &y) == ELLWP_ERR_ITER);
  ellwp_conjugator_free(c);

  ellwp_conjugator* anchored = nullptr;
  REQUIRE(ellwp_conjugator_new_anchored(f, g, "1", "11", nullptr, &anchored) == ELLWP_OK);
  REQUIRE(ellwp_conjugator_apply(anchored, "2", 1, 0, &y) == ELLWP_OK);
  CHECK(std::string(y) == "12");
  ellwp_string_free(y);
  ellwp_conjugator_free(anchored);

  CHECK(ellwp_conjugator_new(f, R"json([["0","0"]])json", &c) == ELLWP_ERR_ARG);
}
