#include <variant>

#include "henon/maps.hpp"

namespace henon {

const char* case_name(WordCase c) {
  switch (c) {
    case WordCase::case_i: return "Case-i";
    case WordCase::case_ii: return "Case-ii";
    case WordCase::case_iii: return "Case-iii";
    case WordCase::case_iv: return "Case-iv";
    case WordCase::affine: return "affine";
    case WordCase::henon_word: return "henon-word";
  }
  return "?";
}

std::string Indeterminacy::to_text() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::x_infinity: return "[1:0:0]";
    case Kind::w_point: return "[" + henon::to_text(w) + ":1:0]";
    case Kind::unresolved: return "unresolved";
  }
  return "?";
}

Indeterminacy indeterminacy_of(const PolyMap2<QComplex>& m) {
  const unsigned D = m.total_degree();
  if (D <= 1) return {};
  Poly2<QComplex> top1 = m.first.homogeneous_part(D);
  Poly2<QComplex> top2 = m.second.homogeneous_part(D);
  // For an automorphism both top forms are multiples of l^D for one linear
  // form l; its zero on the line at infinity is the indeterminacy point.
  const Poly2<QComplex>& form = top1.is_zero() ? top2 : top1;
  QComplex lead_x = form.coeff(D, 0);
  if (lead_x.is_zero()) {
    if (top1.coeff(D, 0).is_zero() && top2.coeff(D, 0).is_zero()) return {Indeterminacy::Kind::x_infinity, 0};
    return {Indeterminacy::Kind::unresolved, 0};
  }
  QComplex w = -form.coeff(D - 1, 1) / (QComplex(static_cast<long>(D)) * lead_x);
  if (!top1.eval(w, 1).is_zero() || !top2.eval(w, 1).is_zero()) return {Indeterminacy::Kind::unresolved, 0};
  return {Indeterminacy::Kind::w_point, w};
}

namespace {

using Reduced = std::variant<AffineMap, ElementaryMap>;

bool is_affine_letter(const Reduced& r) { return std::holds_alternative<AffineMap>(r); }

bool is_linear_elementary(const Reduced& r) {
  const auto* e = std::get_if<ElementaryMap>(&r);
  return e && e->is_affine();
}

Reduced retag(AffineMap a) {
  if (a.is_elementary()) return ElementaryMap::from_affine(a);
  return a;
}

AffineMap as_affine(const Reduced& r) {
  if (const auto* a = std::get_if<AffineMap>(&r)) return *a;
  return std::get<ElementaryMap>(r).to_affine();
}

// One merge pass over the first-applied-first list; returns true on change.
bool merge_once(std::vector<Reduced>& seq) {
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    const Reduced& inner = seq[k];
    const Reduced& outer = seq[k + 1];
    std::optional<Reduced> merged;
    if (!is_affine_letter(inner) && !is_affine_letter(outer)) {
      merged = compose(std::get<ElementaryMap>(outer), std::get<ElementaryMap>(inner));
    } else if (is_affine_letter(inner) && is_affine_letter(outer)) {
      merged = retag(compose(std::get<AffineMap>(outer), std::get<AffineMap>(inner)));
    } else if (is_linear_elementary(inner) || is_linear_elementary(outer)) {
      merged = retag(compose(as_affine(outer), as_affine(inner)));
    }
    if (merged) {
      seq[k] = std::move(*merged);
      seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      return true;
    }
  }
  return false;
}

Indeterminacy guarded(const AutoWord& w, std::size_t budget) {
  try {
    return indeterminacy_of(word_expand<QComplex>(w, budget));
  } catch (const BudgetExceeded&) {
    return {Indeterminacy::Kind::unresolved, 0};
  }
}

}  // namespace

WordClass classify_word(const AutoWord& w, std::size_t budget) {
  if (w.is_henon_word())
    return {WordCase::henon_word, {Indeterminacy::Kind::x_infinity, 0}, {Indeterminacy::Kind::w_point, 0}, "H"};

  std::vector<Reduced> seq;
  for (const auto& l : w.letters()) {
    if (const auto* a = std::get_if<AffineMap>(&l)) {
      seq.push_back(retag(*a));
    } else if (const auto* e = std::get_if<ElementaryMap>(&l)) {
      seq.emplace_back(*e);
    } else {
      // (y, p(y) - delta x) = tau o (p(y) - delta x, y)
      const auto& h = std::get<HenonFactor>(l);
      seq.emplace_back(ElementaryMap(-h.delta(), 1, 0, h.p(), h.exact()));
      seq.emplace_back(AffineMap::swap());
    }
  }
  while (merge_once(seq)) {
  }

  // Written order is the reverse of application order.
  std::string pattern;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) pattern.push_back(is_affine_letter(*it) ? 'A' : 'E');

  WordClass out{WordCase::affine, {}, {}, pattern};
  if (seq.size() == 1 && (is_affine_letter(seq[0]) || is_linear_elementary(seq[0]))) {
    out.pattern = "A";
    return out;
  }
  const bool starts_affine = pattern.front() == 'A';
  const bool ends_affine = pattern.back() == 'A';
  if (starts_affine && !ends_affine) out.kind = WordCase::case_i;
  else if (starts_affine && ends_affine) out.kind = WordCase::case_ii;
  else if (!starts_affine && ends_affine) out.kind = WordCase::case_iii;
  else out.kind = WordCase::case_iv;

  out.indeterminacy_fwd = guarded(w, budget);
  out.indeterminacy_bwd = guarded(w.inverse(), budget);
  return out;
}

}  // namespace henon
