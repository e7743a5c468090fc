#include "lambdalab/io.hpp"

#include <cctype>

#include "lambdalab/error.hpp"
#include "lambdalab/primes.hpp"

namespace lambdalab::io {

namespace {

Integer parse_integer(std::string_view s) {
  Integer v;
  if (s.empty() || v.set_str(std::string(s), 10) != 0) throw ParseError("not an integer: '" + std::string(s) + "'");
  return v;
}

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::string exponent_key(const Exponent& e) {
  std::string k = "[";
  for (std::size_t i = 0; i < e.size(); ++i) k += (i ? "," : "") + std::to_string(e[i]);
  return k + "]";
}

Exponent parse_exponent_key(const std::string& key) {
  json j;
  try {
    j = json::parse(key);
  } catch (const json::exception&) {
    throw ParseError("bad monomial key " + key);
  }
  if (!j.is_array()) throw ParseError("monomial key must be a list: " + key);
  Exponent e;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError("bad exponent in " + key);
    e.push_back(x.get<int>());
  }
  return e;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

int int_field(const json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer, got " + j.dump());
  return j.get<int>();
}

}  // namespace

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return parse_integer(strip(j.get<std::string>()));
  throw ParseError("expected an integer or decimal string, got " + j.dump());
}

TruncPoly parse_poly(std::string_view text, const RingShape& shape) {
  if (!shape.is_univariate()) throw ArityMismatch("text literals are single-variable; use the JSON form");
  const std::string s = strip(text);
  if (s.empty()) throw ParseError("empty polynomial");
  TruncPoly::Terms terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw ParseError("expected + or - at position " + std::to_string(i));
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string term = s.substr(i, j - i);
    if (term.empty()) throw ParseError("empty term in '" + s + "'");
    Integer c = 1;
    int e = 0;
    const auto xpos = term.find('x');
    if (xpos == std::string::npos) {
      c = parse_integer(term);
    } else {
      std::string coef = term.substr(0, xpos);
      if (!coef.empty()) {
        if (coef.back() != '*') throw ParseError("expected '*' before x in '" + term + "'");
        coef.pop_back();
        c = parse_integer(coef);
      }
      const std::string rest = term.substr(xpos + 1);
      if (rest.empty()) {
        e = 1;
      } else if (rest[0] == '^') {
        Integer ev = parse_integer(rest.substr(1));
        if (ev < 0 || !ev.fits_sint_p()) throw ParseError("bad exponent in '" + term + "'");
        e = static_cast<int>(ev.get_si());
      } else {
        throw ParseError("unexpected text after x in '" + term + "'");
      }
    }
    terms[Exponent{e}] += sign * c;
    i = j;
  }
  return TruncPoly(shape, std::move(terms));
}

std::string format_poly(const TruncPoly& f) { return f.to_string(); }

json poly_to_json(const TruncPoly& f) {
  json j = json::object();
  for (const auto& [e, c] : f.terms()) j[exponent_key(e)] = c.get_str();
  return j;
}

TruncPoly poly_from_json(const json& j, const RingShape& shape) {
  if (!j.is_object()) throw ParseError("polynomial must be a JSON object");
  TruncPoly::Terms terms;
  for (const auto& [k, v] : j.items()) {
    Exponent e = parse_exponent_key(k);
    if (static_cast<int>(e.size()) != shape.num_vars()) throw ArityMismatch("monomial " + k);
    terms[e] += integer_from_json(v);
  }
  return TruncPoly(shape, std::move(terms));
}

json shape_to_json(const RingShape& shape) {
  json trunc = json::array();
  for (int i = 0; i < shape.num_vars(); ++i) {
    if (shape.unbounded(i))
      trunc.push_back({{"cap", shape.bound(i)}});
    else
      trunc.push_back(shape.bound(i));
  }
  return {{"vars", shape.num_vars()}, {"trunc", trunc}, {"filtration", shape.filtration()}};
}

RingShape shape_from_json(const json& j) {
  const int vars = int_field(field(j, "vars"));
  const json& trunc = field(j, "trunc");
  if (!trunc.is_array() || static_cast<int>(trunc.size()) != vars)
    throw ParseError("'trunc' must list one entry per variable");
  std::vector<Truncation> ts;
  for (const auto& t : trunc) {
    if (t.is_object())
      ts.push_back(Truncation::capped(int_field(field(t, "cap"))));
    else
      ts.push_back(Truncation::finite(int_field(t)));
  }
  const int filt = j.contains("filtration") ? int_field(j.at("filtration")) : 1;
  return RingShape(std::move(ts), filt);
}

json family_to_json(const AdamsFamily& family) {
  const bool uni = family.shape().is_univariate();
  json coeffs = json::array();
  for (const auto& s : family.specs()) {
    json c = json::object();
    if (!uni) c["var"] = s.var;
    if (uni)
      c["degree"] = s.monomial.at(0);
    else
      c["monomial"] = s.monomial;
    if (s.rule) c["rule"] = {{"num", s.rule->numerator_string()}, {"den", s.rule->denominator().get_str()}};
    if (!s.overrides.empty()) {
      json o = json::object();
      for (const auto& [p, v] : s.overrides) o[std::to_string(p)] = v.get_str();
      c["overrides"] = o;
    }
    coeffs.push_back(c);
  }
  return {{"ring", shape_to_json(family.shape())}, {"primes", family.primes()}, {"coeffs", coeffs}};
}

AdamsFamily family_from_json(const json& j, long default_primes_upto) {
  try {
    const RingShape shape = shape_from_json(field(j, "ring"));
    std::vector<long> primes;
    if (j.contains("primes")) {
      if (!j.at("primes").is_array()) throw ParseError("'primes' must be a list");
      for (const auto& p : j.at("primes")) {
        if (!p.is_number_integer()) throw ParseError("bad prime " + p.dump());
        primes.push_back(p.get<long>());
      }
    } else {
      const long upto = j.contains("primes_upto") ? integer_from_json(j.at("primes_upto")).get_si() : default_primes_upto;
      primes = primes_upto(upto);
    }

    std::vector<CoeffSpec> specs;
    const json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) throw ParseError("'coeffs' must be a list");
    for (const auto& c : coeffs) {
      CoeffSpec s;
      s.var = c.contains("var") ? int_field(c.at("var")) : 0;
      if (c.contains("monomial")) {
        for (const auto& e : c.at("monomial")) s.monomial.push_back(int_field(e));
      } else {
        if (!shape.is_univariate()) throw ParseError("multivariable coefficients need 'monomial'");
        s.monomial = {int_field(field(c, "degree"))};
      }
      if (static_cast<int>(s.monomial.size()) != shape.num_vars())
        throw ArityMismatch("monomial length differs from the number of variables");
      if (c.contains("rule")) {
        const json& r = c.at("rule");
        const Integer den = r.contains("den") ? integer_from_json(r.at("den")) : Integer(1);
        if (!field(r, "num").is_string()) throw ParseError("rule 'num' must be a string");
        s.rule = CoeffRule::parse(r.at("num").get<std::string>(), den);
      }
      if (c.contains("overrides")) {
        if (!c.at("overrides").is_object()) throw ParseError("'overrides' must be an object");
        for (const auto& [k, v] : c.at("overrides").items()) s.overrides[parse_integer(k).get_si()] = integer_from_json(v);
      }
      specs.push_back(std::move(s));
    }
    return AdamsFamily(shape, std::move(primes), std::move(specs));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

json automorphism_to_json(const Automorphism& sigma) {
  json coeffs = json::array();
  for (const auto& a : sigma.higher()) coeffs.push_back(a.get_str());
  return {{"u", sigma.u()}, {"coeffs", coeffs}};
}

Automorphism automorphism_from_json(const json& j, const RingShape& shape) {
  const int u = int_field(field(j, "u"));
  std::vector<Integer> higher;
  if (j.contains("coeffs"))
    for (const auto& c : j.at("coeffs")) higher.push_back(integer_from_json(c));
  if (static_cast<int>(higher.size()) > std::max(0, shape.bound(0) - 2))
    throw ExponentOutOfRange("more coefficients than the ring holds");
  return Automorphism(shape, u, std::move(higher));
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Isomorphic:
      return "isomorphic";
    case Verdict::NotIsomorphic:
      return "not_isomorphic";
    default:
      return "unknown";
  }
}

json iso_result_to_json(const IsoResult& r) {
  json j = {{"verdict", verdict_name(r.verdict)},
            {"primes_checked", r.primes_checked},
            {"search_bound", r.search_bound},
            {"method", r.method}};
  if (r.sigma) j["sigma"] = automorphism_to_json(*r.sigma);
  if (!r.witnesses.empty()) {
    json w = json::array();
    for (const auto& o : r.witnesses)
      w.push_back({{"degree", o.degree}, {"prime", o.prime}, {"u", o.u}, {"congruence", o.congruence}});
    j["witnesses"] = w;
  }
  return j;
}

json report_to_json(const ValidationReport& r) {
  json commute = json::array();
  for (const auto& f : r.commute_failures)
    commute.push_back({{"p", f.p}, {"q", f.q}, {"var", f.var}, {"monomial", f.monomial}});
  json frob = json::array();
  for (const auto& f : r.frobenius_failures) frob.push_back({{"p", f.p}, {"var", f.var}, {"monomial", f.monomial}});
  return {{"ok", r.ok()},
          {"primes", r.primes},
          {"commute_failures", commute},
          {"frobenius_failures", frob},
          {"closed_form_checked", r.closed_form_checked}};
}

json sympoly_to_json(const SymPoly& f) {
  json terms = json::array();
  // Highest lex monomial first, matching SymPoly::to_string.
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    json mono = json::object();
    for (std::size_t i = 0; i < it->first.size(); ++i)
      if (it->first[i] != 0) mono[f.vars()[i]] = it->first[i];
    terms.push_back({{"coeff", it->second.get_str()}, {"monomial", mono}});
  }
  return {{"poly", terms}};
}

}  // namespace lambdalab::io
