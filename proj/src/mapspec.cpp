#include "henon/mapspec.hpp"

#include <json.hpp>

#include "henon/io.hpp"

namespace henon {

using json = nlohmann::ordered_json;

const HenonMap& ParsedMap::henon() const {
  if (const auto* h = std::get_if<HenonMap>(&map_)) return *h;
  throw MapSpecError("map is not a pure Hénon word");
}

AutoWord ParsedMap::word() const {
  if (const auto* h = std::get_if<HenonMap>(&map_)) return AutoWord::from_henon(*h);
  return std::get<AutoWord>(map_);
}

bool ParsedMap::exact() const {
  if (const auto* h = std::get_if<HenonMap>(&map_)) return h->backend() == Backend::exact;
  return std::get<AutoWord>(map_).exact();
}

namespace {

struct Reader {
  bool saw_float = false;

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw MapSpecError(where + ": " + what);
  }

  QComplex real(const json& v, const std::string& where) {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned()) return QComplex(mpq_class(std::to_string(v.get<std::uint64_t>())));
      return QComplex(mpq_class(std::to_string(v.get<std::int64_t>())));
    }
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (!std::isfinite(d)) fail(where, "non-finite numeral");
      saw_float = true;
      return QComplex::from_double({d, 0});
    }
    if (v.is_string()) {
      try {
        return QComplex::parse_rational(v.get<std::string>());
      } catch (const std::exception& e) {
        fail(where, std::string("bad rational literal: ") + e.what());
      }
    }
    fail(where, "expected a numeral");
  }

  QComplex scalar(const json& v, const std::string& where) {
    if (v.is_object()) {
      for (const auto& [k, _] : v.items())
        if (k != "re" && k != "im") fail(where, "unexpected key \"" + k + "\" in complex literal");
      QComplex re = v.contains("re") ? real(v["re"], where + ".re") : QComplex(0);
      QComplex im = v.contains("im") ? real(v["im"], where + ".im") : QComplex(0);
      return QComplex(re.re(), im.re());
    }
    return real(v, where);
  }

  Poly1<QComplex> poly(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where, "expected a nonempty coefficient array");
    std::vector<QComplex> c;
    for (std::size_t k = 0; k < v.size(); ++k) c.push_back(scalar(v[k], where + "[" + std::to_string(k) + "]"));
    return Poly1<QComplex>(std::move(c));
  }

  const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing field \"") + key + "\"");
    return obj[key];
  }
};

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw MapSpecError(where + ": unexpected field \"" + k + "\"");
  }
}

}  // namespace

ParsedMap parse_map_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MapSpecError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("factors")) throw MapSpecError("spec: expected an object with \"factors\"");
  check_keys(doc, {"factors"}, "spec");
  const json& fs = doc["factors"];
  if (!fs.is_array() || fs.empty()) throw MapSpecError("factors: expected a nonempty array");

  // First pass reads every numeral so the backend is known before any map
  // object is built.
  struct Raw {
    std::string kind;
    std::vector<QComplex> s;
    Poly1<QComplex> p;
  };
  Reader rd;
  std::vector<Raw> raw;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const std::string where = "factors[" + std::to_string(k) + "]";
    const json& f = fs[k];
    if (!f.is_object()) throw MapSpecError(where + ": expected an object");
    const json& kind = rd.field(f, "kind", where);
    if (!kind.is_string()) throw MapSpecError(where + ".kind: expected a string");
    Raw r{kind.get<std::string>(), {}, {}};
    if (r.kind == "henon") {
      check_keys(f, {"kind", "p", "delta"}, where);
      r.p = rd.poly(rd.field(f, "p", where), where + ".p");
      r.s.push_back(rd.scalar(rd.field(f, "delta", where), where + ".delta"));
    } else if (r.kind == "affine") {
      check_keys(f, {"kind", "a", "b", "f", "c", "d", "g"}, where);
      for (const char* key : {"a", "b", "f", "c", "d", "g"})
        r.s.push_back(rd.scalar(rd.field(f, key, where), where + "." + key));
    } else if (r.kind == "elementary") {
      check_keys(f, {"kind", "alpha", "beta", "gamma", "p"}, where);
      for (const char* key : {"alpha", "beta", "gamma"})
        r.s.push_back(rd.scalar(rd.field(f, key, where), where + "." + key));
      r.p = rd.poly(rd.field(f, "p", where), where + ".p");
    } else {
      throw MapSpecError(where + ".kind: unknown kind \"" + r.kind + "\"");
    }
    raw.push_back(std::move(r));
  }

  const bool exact = !rd.saw_float;
  std::vector<Letter> letters;
  bool all_henon = true;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const Raw& r = raw[k];
    try {
      if (r.kind == "henon") {
        letters.emplace_back(HenonFactor(r.p, r.s[0], exact));
      } else if (r.kind == "affine") {
        all_henon = false;
        letters.emplace_back(AffineMap(r.s[0], r.s[1], r.s[2], r.s[3], r.s[4], r.s[5], exact));
      } else {
        all_henon = false;
        letters.emplace_back(ElementaryMap(r.s[0], r.s[1], r.s[2], r.p, exact));
      }
    } catch (const std::invalid_argument& e) {
      throw MapSpecError(std::string(e.what()) + " (factor " + std::to_string(k) + ")");
    }
  }
  if (all_henon) {
    std::vector<HenonFactor> hs;
    for (auto& l : letters) hs.push_back(std::get<HenonFactor>(l));
    return ParsedMap(HenonMap(std::move(hs)));
  }
  return ParsedMap(AutoWord(std::move(letters)));
}

ParsedMap load_map_spec(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw MapSpecError(e.what());
  }
  try {
    return parse_map_spec(text);
  } catch (const MapSpecError& e) {
    throw MapSpecError(path + ": " + e.what());
  }
}

namespace {

json real_json(const mpq_class& q, bool exact) {
  if (!exact) return q.get_d();
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

json scalar_json(const QComplex& v, bool exact) {
  if (v.is_real()) return real_json(v.re(), exact);
  json o;
  o["re"] = real_json(v.re(), exact);
  o["im"] = real_json(v.im(), exact);
  return o;
}

json poly_json(const Poly1<QComplex>& p, bool exact) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(scalar_json(c, exact));
  return a;
}

json letter_json(const Letter& l) {
  json o;
  if (const auto* h = std::get_if<HenonFactor>(&l)) {
    o["kind"] = "henon";
    o["p"] = poly_json(h->p(), h->exact());
    o["delta"] = scalar_json(h->delta(), h->exact());
  } else if (const auto* a = std::get_if<AffineMap>(&l)) {
    o["kind"] = "affine";
    o["a"] = scalar_json(a->a(), a->exact());
    o["b"] = scalar_json(a->b(), a->exact());
    o["f"] = scalar_json(a->f(), a->exact());
    o["c"] = scalar_json(a->c(), a->exact());
    o["d"] = scalar_json(a->d(), a->exact());
    o["g"] = scalar_json(a->g(), a->exact());
  } else {
    const auto& e = std::get<ElementaryMap>(l);
    o["kind"] = "elementary";
    o["alpha"] = scalar_json(e.alpha(), e.exact());
    o["beta"] = scalar_json(e.beta(), e.exact());
    o["gamma"] = scalar_json(e.gamma(), e.exact());
    o["p"] = poly_json(e.p(), e.exact());
  }
  return o;
}

}  // namespace

std::string serialize_map(const AutoWord& w) {
  json doc;
  doc["factors"] = json::array();
  for (const auto& l : w.letters()) doc["factors"].push_back(letter_json(l));
  return doc.dump();
}

std::string serialize_map(const HenonMap& h) { return serialize_map(AutoWord::from_henon(h)); }

std::string serialize_map(const ParsedMap& m) { return serialize_map(m.word()); }

}  // namespace henon
