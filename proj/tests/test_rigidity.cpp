#include <doctest.h>

#include <cmath>

#include "henon/rigidity.hpp"
#include "support.hpp"

using namespace henon;
using fixture::Rng;

namespace {

AutoWord sigma() { return AutoWord({AffineMap(-1, 0, 0, 0, -1, 0)}); }

// (y, -y^2 + x) and (y, y^2 - x): H2 o H1 = C o H1 o H2 with C = (-x, -y)
HenonMap neg_quad() { return HenonMap({fixture::factor({0, 0, -1}, -1)}); }

}  // namespace

TEST_CASE("functorial identity on the quadratic map") {
  const FunctorialReport r = verify_functorial(fixture::quad(), 300);
  CHECK(r.pass);
  CHECK(r.samples == 300);
  CHECK(r.escaped_plus > 0);
  CHECK(r.escaped_minus > 0);
  CHECK(r.max_residual_plus <= 1e-6);
  CHECK(r.max_residual_minus <= 1e-6);
  CHECK(r.to_text().rfind("verdict: PASS\n", 0) == 0);
}

TEST_CASE("functorial identity holds for every test map") {
  for (const auto& h : fixture::all_maps()) CHECK(verify_functorial(h, 100, 1e-6, 7, 2.0).pass);
}

TEST_CASE("negative control: a perturbed Green function fails") {
  const FunctorialReport r = verify_functorial(fixture::quad(), 200, 1e-6, 1, 3.0,
                                               [](std::size_t i, double) { return i % 2 ? 1e-3 : 0.0; });
  CHECK_FALSE(r.pass);
  CHECK(r.max_residual_plus >= 2e-3 - 1e-9);
}

TEST_CASE("samples inside K+ pass trivially") {
  const FunctorialReport r = verify_functorial(fixture::quad(), 50, 1e-6, 3, 0.05);
  CHECK(r.pass);
  CHECK(r.max_residual_plus == 0);
}

TEST_CASE("level invariance") {
  const HenonMap c3 = fixture::cubic();
  for (double c : {0.0, 0.5, 1.0}) {
    const InvarianceReport r = verify_invariance(c3, sigma(), c, 30);
    CHECK(r.pass);
    CHECK(r.samples > 0);
    CHECK(r.max_deviation <= 1e-6);
  }
  const InvarianceReport bad = verify_invariance(fixture::quad(), AutoWord::from_henon(fixture::quad()), 1, 20);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_deviation == doctest::Approx(1).epsilon(1e-6));
  CHECK(bad.to_text().rfind("verdict: FAIL\n", 0) == 0);
  CHECK_THROWS_AS(verify_invariance(c3, sigma(), -1, 5), std::invalid_argument);

  const InvarianceReport id = verify_invariance(fixture::quad(), AutoWord({AffineMap::identity()}), 0.5, 20);
  CHECK(id.pass);
  CHECK(id.max_deviation == 0);
}

TEST_CASE("property: Hénon words of degree >= 2 never fix a positive level") {
  for (const auto& h : {fixture::quad(), fixture::cubic(), fixture::scaled4()}) {
    CHECK_FALSE(verify_invariance(h, AutoWord::from_henon(h), 0.5, 10).pass);
    CHECK_FALSE(verify_invariance(h, AutoWord::from_henon(h.power(2)), 0.3, 10).pass);
  }
}

TEST_CASE("scaled commutation") {
  const HenonMap h = fixture::quad();
  const CommutationReport same = check_commutation_scaled(h, h.power(2), {});
  CHECK(same.holds);
  CHECK(same.exact);
  CHECK(same.max_residual == 0);

  const DiagonalScaling C{QComplex(-1), QComplex(-1), true};
  const CommutationReport r = check_commutation_scaled(neg_quad(), h, C);
  CHECK(r.holds);
  CHECK(r.rel1);
  CHECK(r.rel2);
  CHECK(r.tol == 0);
  CHECK(r.predicted_delta_plus == doctest::Approx(1));
  CHECK(r.predicted_delta_minus == doctest::Approx(1));

  const CommutationReport wrong = check_commutation_scaled(neg_quad(), h, {});
  CHECK_FALSE(wrong.holds);
  CHECK(wrong.to_text().rfind("verdict: FAILS\n", 0) == 0);

  const CommutationReport other = check_commutation_scaled(h, fixture::cubic(), {});
  CHECK_FALSE(other.holds);

  const CommutationReport scaled = check_commutation_scaled(h, h, DiagonalScaling{QComplex(2), QComplex(1), true});
  CHECK_FALSE(scaled.holds);
}

TEST_CASE("scaled commutation on the float backend") {
  const HenonMap a({HenonFactor::from_float({0, 0, -1}, -1)});
  const HenonMap b({HenonFactor::from_float({0, 0, 1}, 1)});
  const DiagonalScaling C{QComplex(-1), QComplex(-1), true};
  const CommutationReport r = check_commutation_scaled(a, b, C);
  CHECK_FALSE(r.exact);
  CHECK(r.holds);
  CHECK(r.max_residual <= 1e-9);
}

TEST_CASE("two-level constant relation") {
  const TwoLevelResult t = two_level_delta(fixture::scaled4(), fixture::quad(), 0, 0, 0, 0);
  CHECK(t.delta_plus_exact == QComplex(4));
  CHECK(t.relation_residual.is_zero());
  CHECK(t.relc_c == doctest::Approx(std::log(4.0)));
  CHECK(t.modulus_residual <= 1e-12);

  const TwoLevelResult same = two_level_delta(fixture::quad(), fixture::quad(), 0.3, 0.3, 0.7, 0.7);
  CHECK(same.delta_plus == 1.0);
  CHECK(same.delta_minus == 1.0);

  const TwoLevelResult log2 = two_level_delta(fixture::quad(), fixture::quad(), std::log(2.0), 0, 0, 0);
  CHECK(log2.delta_plus == doctest::Approx(2));
  CHECK(log2.delta_minus == 1.0);

  const TwoLevelResult shifted = two_level_delta(fixture::quad(), fixture::cubic(), 0.5, 0.25, 0.1, 0.0);
  CHECK(shifted.delta_plus == doctest::Approx(std::exp(0.25 * 1 * 2)));
  CHECK(shifted.delta_minus == doctest::Approx(std::exp(0.1 * 1 * 2)));
}

TEST_CASE("property: every Hénon word commutes with itself exactly") {
  Rng rng(62);
  for (int k = 0; k < 10; ++k) {
    std::vector<HenonFactor> fs;
    for (long j = rng.integer(1, 2); j > 0; --j)
      fs.push_back(fixture::factor({rng.qcomplex(), rng.qcomplex(), rng.nonzero_qcomplex()}, rng.nonzero_qcomplex()));
    const HenonMap h(fs);
    CHECK(check_commutation_scaled(h, h, {}).holds);
  }
}

TEST_CASE("property: constant relation residual vanishes for random exact constants") {
  Rng rng(61);
  for (int k = 0; k < 50; ++k) {
    const HenonMap h1({fixture::factor({0, 0, rng.nonzero_qcomplex()}, 1)});
    const HenonMap h2({fixture::factor({0, 0, 0, rng.nonzero_qcomplex()}, rng.nonzero_qcomplex())});
    CHECK(two_level_delta(h1, h2, 0, 0, 0, 0).relation_residual.is_zero());
  }
}

TEST_CASE("iterate coincidence") {
  const HenonMap h = fixture::quad();
  const auto self = iterate_coincidence(h, h, 3, 3);
  REQUIRE(self);
  CHECK(*self == std::pair<unsigned, unsigned>{1, 1});
  for (unsigned k = 1; k <= 4; ++k) {
    const auto hk = iterate_coincidence(h.power(k), h, 2, 4);
    REQUIRE(hk);
    CHECK(*hk == std::pair<unsigned, unsigned>{1, k});
  }
  const auto a = iterate_coincidence(h.power(2), h, 4, 4);
  REQUIRE(a);
  CHECK(*a == std::pair<unsigned, unsigned>{1, 2});
  const auto b = iterate_coincidence(h.power(3), h.power(2), 4, 4);
  REQUIRE(b);
  CHECK(*b == std::pair<unsigned, unsigned>{2, 3});
  CHECK_FALSE(iterate_coincidence(fixture::cubic(), h, 4, 4));
  CHECK_FALSE(iterate_coincidence(neg_quad(), h, 3, 3));
  const auto w = iterate_coincidence(AutoWord::from_henon(h), h.power(2), 2, 2);
  REQUIRE(w);
  CHECK(*w == std::pair<unsigned, unsigned>{2, 1});
  const auto wv = iterate_coincidence(AutoWord::from_henon(h.power(2)), h, 2, 2);
  REQUIRE(wv);
  CHECK(*wv == std::pair<unsigned, unsigned>{1, 2});
}

TEST_CASE("affine normal forms") {
  CHECK(check_affine_form(AffineMap(QComplex(0, 1), 0, 3, 0, -1, 2), AffineForm::k_plus));
  CHECK_FALSE(check_affine_form(AffineMap(2, 0, 0, 0, 1, 0), AffineForm::k_plus));
  CHECK_FALSE(check_affine_form(AffineMap(1, 1, 0, 0, 1, 0), AffineForm::k_plus));
  CHECK(check_affine_form(AffineMap(2, 5, 1, 0, 3, 0), AffineForm::level));
  CHECK(check_affine_form(AffineMap(1, 1, 1, 0, 3, 0), AffineForm::level));
  CHECK_FALSE(check_affine_form(AffineMap(1, 1, 1, 0, 3, 0), AffineForm::k_plus));
  CHECK_FALSE(check_affine_form(AffineMap(1, 0, 0, 1, 1, 0), AffineForm::level));
  // 3/5 + 4/5 i has modulus one
  CHECK(check_affine_form(AffineMap(QComplex(mpq_class(3, 5), mpq_class(4, 5)), 0, 0, 0, 1, 0), AffineForm::k_plus));
}

TEST_CASE("diagonal scaling as an affine map") {
  const DiagonalScaling C{QComplex(2), QComplex(3), true};
  const Point p = C.as_affine().apply({1, 1});
  CHECK(p.x == cplx(2));
  CHECK(p.y == cplx(3));
}
