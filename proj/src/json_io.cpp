#include "ellwp/json_io.hpp"

#include <cctype>

namespace ellwp {

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == from) throw ParseError("expected digits in rational '" + text + "'", from);
    return j;
  };
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  i = digits(i);
  if (i < text.size()) {
    if (text[i] != '/') throw ParseError("bad rational '" + text + "'", i);
    std::size_t j = digits(i + 1);
    if (j != text.size()) throw ParseError("bad rational '" + text + "'", j);
    Integer den(text.substr(i + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'", i + 1);
    return Rational(Integer(text.substr(0, i)), den);
  }
  return Rational(Integer(text));
}

std::string rational_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Json plmap_json(const PLMap& m) {
  Json arr = Json::array();
  for (const auto& [x, y] : m.breakpoints())
    arr.push_back(Json::array({rational_string(x), rational_string(y)}));
  return arr;
}

PLMap plmap_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("PL map must be an array of breakpoints");
  std::vector<std::pair<Rational, Rational>> bps;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("breakpoint must be a pair of rational strings");
    bps.emplace_back(parse_rational(e[0].get<std::string>()),
                     parse_rational(e[1].get<std::string>()));
  }
  return PLMap::from_breakpoints(std::move(bps));
}

Json assignment_json(const PLAssignment& a) {
  Json obj = Json::object();
  for (const auto& [name, m] : a) obj[name] = plmap_json(m);
  return obj;
}

PLAssignment assignment_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("assignment must be an object");
  PLAssignment a;
  for (const auto& [name, m] : j.items()) a.emplace(name, plmap_from_json(m));
  return a;
}

Json presentation_json(const Presentation& p) {
  Json obj = Json::object();
  obj["generators"] = p.alphabet->names();
  Json rel = Json::array();
  for (const auto& r : p.relators) rel.push_back(print(r));
  obj["relators"] = rel;
  return obj;
}

Presentation presentation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
    throw ParseError("presentation needs 'generators' and 'relators'");
  std::vector<std::string> gens;
  for (const auto& g : j.at("generators")) {
    if (!g.is_string()) throw ParseError("generator names must be strings");
    gens.push_back(g.get<std::string>());
  }
  std::vector<std::string> rels;
  for (const auto& r : j.at("relators")) {
    if (!r.is_string()) throw ParseError("relators must be term strings");
    rels.push_back(r.get<std::string>());
  }
  return presentation_make(std::move(gens), rels);
}

std::vector<std::pair<Term, Term>> pairs_from_json(const Json& j, const AlphabetPtr& alpha) {
  if (!j.is_array()) throw ParseError("pairs must be an array of [u, v] term pairs");
  std::vector<std::pair<Term, Term>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("each pair must be two term strings");
    out.emplace_back(parse_term(e[0].get<std::string>(), alpha),
                     parse_term(e[1].get<std::string>(), alpha));
  }
  return out;
}

Json certificate_json(const Certificate& c) {
  Json obj = Json::object();
  obj["budget_spent"] = c.budget_spent;
  switch (c.kind) {
    case Certificate::Kind::Proved: {
      obj["kind"] = "proved";
      Json conj = Json::array();
      AlphabetPtr alpha = c.proved->dominator ? c.proved->dominator->alphabet() : nullptr;
      for (const auto& h : c.proved->conjugators)
        conj.push_back(alpha ? h.print(*alpha) : std::string("e"));
      obj["conjugators"] = conj;
      obj["relator_count"] = c.proved->relator_count;
      if (c.proved->dominator) obj["dominator"] = print(*c.proved->dominator);
      break;
    }
    case Certificate::Kind::Refuted: {
      obj["kind"] = "refuted";
      obj["target"] = c.refuted->target;
      obj["witness"] = c.refuted->witness;
      if (!c.refuted->plmap_assignment.empty())
        obj["assignment"] = assignment_json(c.refuted->plmap_assignment);
      if (!c.refuted->zk_assignment.empty()) {
        Json a = Json::object();
        for (const auto& [name, v] : c.refuted->zk_assignment) a[name] = v;
        obj["assignment"] = a;
      }
      break;
    }
    case Certificate::Kind::Unknown:
      obj["kind"] = "unknown";
      break;
  }
  return obj;
}

Json diagram_json(const Diagram& d, const Alphabet& alpha) {
  Json obj = Json::object();
  obj["chain"] = d.chain;
  Json maps = Json::object();
  for (int g = 0; g < alpha.size(); ++g) {
    Json pairs = Json::array();
    for (const auto& [p, q] : d.maps[static_cast<std::size_t>(g)])
      pairs.push_back(Json::array({p, q}));
    maps[alpha.name(g)] = pairs;
  }
  obj["maps"] = maps;
  obj["trace"] = d.trace;
  return obj;
}

}  // namespace ellwp
