#include "frobenius/codec.hpp"

#include "frobenius/errors.hpp"

namespace frob {

json fraction_to_json(const Fraction& f) { return f.str(); }

Fraction fraction_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Fraction::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Fraction(j.get<long>());
  throw ParseError(path + ": expected a fraction string \"p/q\"");
}

json coeff_to_json(const CoeffElem& c) {
  if (c.kind() == CoeffKind::Rational) return c.constant_term().str();
  json a = json::array();
  for (const auto& v : c.coeffs()) a.push_back(v.str());
  return a;
}

CoeffElem coeff_from_json(const json& j, const Ring& ring, const std::string& path) {
  if (j.is_array()) {
    if (ring.kind != CoeffKind::Series) throw ParseError(path + ": series coefficient in a rational ring");
    if (static_cast<int>(j.size()) != ring.trunc)
      throw ParseError(path + ": series length " + std::to_string(j.size()) + " does not equal truncation " +
                       std::to_string(ring.trunc));
    std::vector<Fraction> c;
    for (size_t k = 0; k < j.size(); ++k) c.push_back(fraction_from_json(j[k], path + "[" + std::to_string(k) + "]"));
    return CoeffElem::series(std::move(c));
  }
  return ring.lift(fraction_from_json(j, path));
}

json poly_to_json(const GradedPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) {
    json t = json::object();
    t["coeff"] = coeff_to_json(c);
    t["exp"] = e;
    out.push_back(t);
  }
  return out;
}

GradedPoly poly_from_json(const json& j, const Ring& ring, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": polynomial must be a list of terms");
  GradedPoly p(ring);
  for (size_t i = 0; i < j.size(); ++i) {
    std::string tp = path + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_object()) throw ParseError(tp + ": term must be an object");
    for (const auto& [k, v] : t.items())
      if (k != "coeff" && k != "exp") throw ParseError(tp + ": unknown field \"" + k + "\"");
    if (!t.contains("coeff")) throw ParseError(tp + ": missing field \"coeff\"");
    if (!t.contains("exp")) throw ParseError(tp + ": missing field \"exp\"");
    const json& ej = t["exp"];
    if (!ej.is_array()) throw ParseError(tp + ".exp: must be a list of integers");
    Exp e;
    for (size_t k = 0; k < ej.size(); ++k) {
      if (!ej[k].is_number_integer() || ej[k].get<long>() < 0)
        throw ParseError(tp + ".exp[" + std::to_string(k) + "]: must be a non-negative integer");
      e.push_back(ej[k].get<int>());
    }
    if (ring.dvar >= 0 && static_cast<int>(e.size()) == ring.nvars - 1) e.insert(e.begin() + ring.dvar, 0);
    if (static_cast<int>(e.size()) != ring.nvars)
      throw ParseError(tp + ".exp: length " + std::to_string(ej.size()) + " does not match " +
                       std::to_string(ring.nvars) + " variables");
    if (p.terms().count(e)) throw ParseError(tp + ": duplicate exponent vector");
    p.add_term(e, coeff_from_json(t["coeff"], ring, tp + ".coeff"));
  }
  return p;
}

}  // namespace frob
