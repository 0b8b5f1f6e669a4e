#include "doctest.h"

#include <cmath>
#include <set>

#include "tingley/bundle.hpp"

using namespace tingley;

namespace {

EquivariantFunction eq(const BundlePtr& b, std::vector<Complex> base) {
  return EquivariantFunction(b, std::move(base));
}

}  // namespace

TEST_CASE("bundle total space layout") {
  auto b = make_bundle(4, {"a", "b"});
  CHECK(b->order() == 4);
  CHECK(b->orbit_count() == 2);
  CHECK(b->orbit_index("b") == 1);
  CHECK(b->has_orbit("a"));
  CHECK(!b->has_orbit("z"));

  auto pts = b->total_space()->points();
  REQUIRE(pts.size() == 8);
  CHECK(pts[0] == "a@0");
  CHECK(pts[3] == "a@3");
  CHECK(pts[4] == "b@0");
  CHECK(pts[7] == "b@3");

  CHECK(b->point_id("a", 5) == "a@1");  // phases wrap mod n
  CHECK(b->point_id("b", -1) == "b@3");
  auto [orbit, k] = b->locate("b@3");
  CHECK(orbit == "b");
  CHECK(k == 3);
  CHECK(b->rotate("a@1", 2) == "a@3");
  CHECK(b->rotate("a@3", 2) == "a@1");

  CHECK_THROWS_AS(b->locate("c@0"), PreconditionError);
  CHECK_THROWS_AS(b->locate("anope"), PreconditionError);
  CHECK_THROWS_AS(make_bundle(0, {"a"}), PreconditionError);
  CHECK_THROWS_AS(make_bundle(4, {"a", "a"}), PreconditionError);
  CHECK_THROWS_AS(make_bundle(4, {}), PreconditionError);
  CHECK_NOTHROW(make_bundle(1, {"a"}));
  CHECK_NOTHROW(make_bundle(3, {"a"}));
}

TEST_CASE("equivariant functions rotate with the action") {
  auto b = make_bundle(4, {"a", "b"});
  auto a = eq(b, {Complex(0.0, 1.0), Complex(0.5, 0.0)});
  CHECK(a.base_value("a") == Complex(0.0, 1.0));
  CHECK(a.value_at("a@0") == Complex(0.0, 1.0));
  CHECK(a.value_at("a@1") == Complex(-1.0, 0.0));  // i * i
  CHECK(a.value_at("a@2") == Complex(0.0, -1.0));
  CHECK(a.value_at("b@3") == Complex(0.0, -0.5));

  auto f = a.to_function();
  CHECK(f.space() == b->total_space());
  CHECK(f.value("a@1") == Complex(-1.0, 0.0));
  CHECK(f.value("b@0") == Complex(0.5, 0.0));

  auto ind = EquivariantFunction::orbit_indicator(b, "b");
  CHECK(ind.base_value("a") == Complex(0.0, 0.0));
  CHECK(ind.base_value("b") == Complex(1.0, 0.0));

  auto sum = a + ind;
  CHECK(sum.base_value("b") == Complex(1.5, 0.0));
  auto scaled = Complex(0.0, 1.0) * a;
  CHECK(scaled.base_value("a") == Complex(-1.0, 0.0));

  CHECK(sup_norm(a) == 1.0);
  CHECK(sphere_check(a, 0.0));
  CHECK(!sphere_check(eq(b, {Complex(0.5, 0.0), Complex(0.0, 0.0)}), 1e-9));

  CHECK_THROWS_AS(eq(b, {Complex(1.0, 0.0)}), PreconditionError);
  auto other = make_bundle(4, {"a"});
  CHECK_THROWS_AS(a + eq(other, {Complex(1.0, 0.0)}), PreconditionError);
}

TEST_CASE("haar projection frozen values") {
  auto b = make_bundle(4, {"o"});
  auto total = b->total_space();

  auto constant = ComplexFunction::constant(total, Complex(1.0, 0.0));
  auto pc = haar_projection(constant, b);
  CHECK(pc.base_value("o") == Complex(0.0, 0.0));  // quadrant sum cancels exactly

  auto spike = ComplexFunction::indicator(total, "o@0");
  auto ps = haar_projection(spike, b);
  CHECK(ps.base_value("o") == Complex(0.25, 0.0));
}

TEST_CASE("haar projection is idempotent and fixes equivariant functions") {
  auto b = make_bundle(8, {"o", "u"});
  auto e = eq(b, {Complex(0.3, -0.4), Complex(0.0, 0.9)});
  auto back = haar_projection(e.to_function(), b);
  CHECK(std::abs(back.base_value("o") - e.base_value("o")) <= 1e-14);
  CHECK(std::abs(back.base_value("u") - e.base_value("u")) <= 1e-14);

  auto total = b->total_space();
  std::vector<Complex> vals;
  for (std::size_t i = 0; i < total->size(); ++i)
    vals.push_back(Complex(0.1 * double(i) - 0.5, 0.03 * double(i)));
  auto raw = ComplexFunction(total, vals);
  auto p1 = haar_projection(raw, b);
  auto p2 = haar_projection(p1.to_function(), b);
  CHECK(std::abs(p1.base_value("o") - p2.base_value("o")) <= 1e-14);
  CHECK(std::abs(p1.base_value("u") - p2.base_value("u")) <= 1e-14);
  CHECK(sup_norm(p1) <= sup_norm(raw) + 1e-12);
}

TEST_CASE("triple product frozen values") {
  auto b = make_bundle(4, {"o"});
  auto ai = eq(b, {Complex(0.0, 1.0)});
  auto cube = triple_product(ai, ai, ai);
  CHECK(cube.base_value("o") == Complex(0.0, 1.0));

  auto ah = eq(b, {Complex(0.5, 0.0)});
  CHECK(triple_product(ah, ah, ah).base_value("o") == Complex(0.125, 0.0));

  auto x = eq(b, {Complex(0.5, 0.5)});
  auto y = eq(b, {Complex(0.5, 0.0)});
  auto z = eq(b, {Complex(2.0, 0.0)});
  CHECK(triple_product(x, y, z).base_value("o") == Complex(0.5, 0.5));

  // conjugate linear in the middle slot
  auto lhs = triple_product(x, Complex(0.0, 1.0) * y, z);
  auto rhs = Complex(0.0, -1.0) * triple_product(x, y, z);
  CHECK(lhs.base_value("o") == rhs.base_value("o"));

  // norm axiom on a mixed function
  auto b2 = make_bundle(4, {"o", "u"});
  auto m = eq(b2, {Complex(0.3, 0.4), Complex(-0.9, 0.1)});
  double n3 = sup_norm(triple_product(m, m, m));
  double n1 = sup_norm(m);
  CHECK(n3 == doctest::Approx(n1 * n1 * n1).epsilon(1e-12));

  CHECK_THROWS_AS(triple_product(ai, eq(b2, {Complex(), Complex()}), ai),
                  PreconditionError);
}

TEST_CASE("odd powers follow the triple recursion") {
  auto b = make_bundle(4, {"o", "u"});
  auto a = eq(b, {Complex(0.0, 0.5), Complex(0.8, 0.0)});
  auto p0 = odd_power(a, 0);
  CHECK(p0.base_value("o") == a.base_value("o"));

  auto p1 = odd_power(a, 1);
  CHECK(p1.base_value("o") == Complex(0.0, 0.125));
  auto t = triple_product(a, a, a);
  CHECK(p1.base_value("u") == t.base_value("u"));

  auto p2 = odd_power(a, 2);
  auto r2 = triple_product(a, a, p1);
  CHECK(std::abs(p2.base_value("u") - r2.base_value("u")) <= 1e-15);
  CHECK_THROWS_AS(odd_power(a, -1), PreconditionError);
}

TEST_CASE("radial profiles interpolate their knots") {
  auto id = RadialProfile::identity();
  CHECK(id(0.0) == 0.0);
  CHECK(id(0.3) == 0.3);
  CHECK(id(1.0) == 1.0);

  auto th = RadialProfile::threshold(0.25);
  CHECK(th(0.1) == 0.0);
  CHECK(th(0.25) == 0.0);
  CHECK(th(0.625) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(th(1.0) == 1.0);

  CHECK_THROWS_AS(RadialProfile({{0.1, 0.0}, {1.0, 1.0}}), PreconditionError);
  CHECK_THROWS_AS(RadialProfile({{0.0, 0.5}, {1.0, 1.0}}), PreconditionError);
  CHECK_THROWS_AS(RadialProfile({{0.0, 0.0}, {0.5, 0.2}}), PreconditionError);
  CHECK_THROWS_AS(RadialProfile({{0.0, 0.0}, {0.5, 0.1}, {0.5, 0.2}, {1.0, 1.0}}),
                  PreconditionError);
}

TEST_CASE("functional calculus rescales moduli and keeps phases") {
  auto b = make_bundle(4, {"o", "u"});
  auto a = eq(b, {Complex(0.25, 0.0), Complex(0.0, 0.8)});
  auto out = functional_calculus(RadialProfile::threshold(0.5), a);
  CHECK(out.base_value("o") == Complex(0.0, 0.0));
  CHECK(out.base_value("u").real() == 0.0);
  CHECK(out.base_value("u").imag() == doctest::Approx(0.6).epsilon(1e-12));

  auto zero = eq(b, {Complex(0.0, 0.0), Complex(0.0, 0.0)});
  auto zout = functional_calculus(RadialProfile::identity(), zero);
  CHECK(zout.base_value("o") == Complex(0.0, 0.0));

  auto big = eq(b, {Complex(1.5, 0.0), Complex(0.0, 0.0)});
  CHECK_THROWS_AS(functional_calculus(RadialProfile::identity(), big),
                  PreconditionError);
  auto barely = eq(b, {Complex(1.0 + 1e-12, 0.0), Complex(0.0, 0.0)});
  CHECK_NOTHROW(functional_calculus(RadialProfile::identity(), barely));
}

TEST_CASE("convex profile split reconstructs the identity") {
  auto [f1, g1] = convex_profile_split(RadialProfile::identity(), 0.2);
  CHECK(f1(0.05) == 0.0);
  CHECK(f1(1.0) == 1.0);
  CHECK(f1(0.95) == 1.0);
  for (int i = 0; i <= 100; ++i) {
    double sv = double(i) / 100.0;
    CHECK(std::abs((1.0 - 0.1) * g1(sv) + 0.1 * f1(sv) - sv) <= 1e-12);
  }

  auto [f2, g2] = convex_profile_split(RadialProfile::threshold(0.25), 0.1);
  for (int i = 0; i <= 100; ++i) {
    double sv = double(i) / 100.0;
    CHECK(std::abs((1.0 - 0.05) * g2(sv) + 0.05 * f2(sv) - sv) <= 1e-12);
  }
  CHECK(f2(0.04) == 0.0);
  // f follows the profile strictly inside [eps, 1 - eps]
  CHECK(f2(0.5) == doctest::Approx(RadialProfile::threshold(0.25)(0.5)).epsilon(1e-13));

  CHECK_THROWS_AS(convex_profile_split(RadialProfile::identity(), 0.0),
                  PreconditionError);
  CHECK_THROWS_AS(convex_profile_split(RadialProfile::identity(), 0.5),
                  PreconditionError);
  CHECK_THROWS_AS(
      convex_profile_split(RadialProfile({{0.0, 0.0}, {1.0, 0.5}}), 0.1),
      PreconditionError);  // needs g(1) = 1
}

TEST_CASE("equivariant urysohn witness frozen values") {
  auto b = make_bundle(4, {"o", "o2"});
  auto h = urysohn_equivariant(b, "o@0", {"o"}, Complex(0.0, 1.0));
  CHECK(h.base_value("o") == Complex(0.0, 1.0));
  CHECK(h.base_value("o2") == Complex(0.0, 0.0));
  CHECK(h.value_at("o@0") == Complex(0.0, 1.0));
  CHECK(h.value_at("o@1") == Complex(-1.0, 0.0));
  CHECK(sup_norm(h) == 1.0);

  // peak point off the transversal rotates the base value back
  auto h2 = urysohn_equivariant(b, "o@1", {"o", "o2"}, Complex(1.0, 0.0));
  CHECK(h2.base_value("o") == Complex(0.0, -1.0));
  CHECK(h2.value_at("o@1") == Complex(1.0, 0.0));

  CHECK_THROWS_AS(urysohn_equivariant(b, "o@0", {"o2"}, Complex(1.0, 0.0)),
                  PreconditionError);  // W must contain the peak orbit
  CHECK_THROWS_AS(urysohn_equivariant(b, "o@0", {"o", "zz"}, Complex(1.0, 0.0)),
                  PreconditionError);
  CHECK_THROWS_AS(urysohn_equivariant(b, "o@0", {"o"}, Complex(0.5, 0.0)),
                  PreconditionError);  // peak value must be unimodular
}

TEST_CASE("m summand enumeration") {
  auto b = make_bundle(4, {"o1", "o2"});
  auto all = enumerate_m_summands(b);
  REQUIRE(all.size() == 4);
  CHECK(all[0] == std::set<std::string>{});
  CHECK(all[1] == std::set<std::string>{"o1"});
  CHECK(all[2] == std::set<std::string>{"o2"});
  CHECK(all[3] == std::set<std::string>{"o1", "o2"});
}

TEST_CASE("m projection check frozen verdicts") {
  auto b = make_bundle(4, {"o1", "o2"});
  using Row = std::vector<Complex>;

  auto id = m_projection_check(b, {Row{Complex(1.0, 0.0), Complex(0.0, 0.0)},
                                   Row{Complex(0.0, 0.0), Complex(1.0, 0.0)}},
                               16, 1e-9, 3);
  CHECK(id.is_m_projection);
  REQUIRE(id.summand.has_value());
  CHECK(*id.summand == std::set<std::string>{"o1", "o2"});
  CHECK(id.worst_residual <= 1e-12);

  auto zero = m_projection_check(b, {Row{Complex(), Complex()},
                                     Row{Complex(), Complex()}},
                                 16, 1e-9, 3);
  CHECK(zero.is_m_projection);
  CHECK(*zero.summand == std::set<std::string>{});

  auto first = m_projection_check(b, {Row{Complex(1.0, 0.0), Complex(0.0, 0.0)},
                                      Row{Complex(0.0, 0.0), Complex(0.0, 0.0)}},
                                  16, 1e-9, 3);
  CHECK(first.is_m_projection);
  CHECK(*first.summand == std::set<std::string>{"o1"});

  // averaging two orbits is idempotent but not an M projection
  auto avg = m_projection_check(b, {Row{Complex(0.5, 0.0), Complex(0.5, 0.0)},
                                    Row{Complex(0.5, 0.0), Complex(0.5, 0.0)}},
                                16, 1e-9, 3);
  CHECK(!avg.is_m_projection);
  CHECK(!avg.summand.has_value());
  CHECK(avg.worst_residual >= 0.4);

  // sheared indicator: idempotent, caught by the signed pair probes
  auto shear = m_projection_check(b, {Row{Complex(1.0, 0.0), Complex(-0.5, 0.0)},
                                      Row{Complex(0.0, 0.0), Complex(0.0, 0.0)}},
                                  16, 1e-9, 3);
  CHECK(!shear.is_m_projection);

  CHECK_THROWS_AS(m_projection_check(b, {Row{Complex(1.0, 0.0), Complex(1.0, 0.0)},
                                         Row{Complex(0.0, 0.0), Complex(1.0, 0.0)}},
                                     16, 1e-9, 3),
                  PreconditionError);  // not idempotent
  CHECK_THROWS_AS(m_projection_check(b, {Row{Complex(1.0, 0.0)}}, 16, 1e-9, 3),
                  PreconditionError);  // shape mismatch
}

TEST_CASE("transversal and canonical face labels") {
  auto b = make_bundle(4, {"a", "b"});
  CHECK(transversal(b) == std::vector<std::string>{"a@0", "b@0"});

  auto c0 = canonical_face_label(b, "a@0", Complex(0.0, 1.0));
  CHECK(c0.t0 == "a@0");
  CHECK(c0.mu == Complex(0.0, 1.0));

  auto c1 = canonical_face_label(b, "a@1", Complex(1.0, 0.0));
  CHECK(c1.t0 == "a@0");
  CHECK(c1.mu == Complex(0.0, -1.0));

  auto c3 = canonical_face_label(b, "a@3", Complex(0.0, 1.0));
  CHECK(c3.t0 == "a@0");
  CHECK(c3.mu == Complex(-1.0, 0.0));
}

TEST_CASE("face blend pair frozen flattening") {
  auto b = make_bundle(4, {"A", "B"});
  auto a = eq(b, {Complex(0.5, 0.0), Complex(0.0, 0.25)});
  auto bp = face_blend_pair(a, "A@0", 0.25);

  CHECK(bp.lambda == Complex(1.0, 0.0));
  CHECK(bp.a_t0_mod == 0.5);
  REQUIRE(bp.profile.has_value());
  const auto& h = *bp.profile;
  CHECK(h(0.5) == 0.5);
  CHECK(h(0.625) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(h(0.75) == doctest::Approx(0.75).epsilon(1e-15));

  CHECK(bp.a_eps.base_value("A") == Complex(0.5, 0.0));
  CHECK(std::abs(bp.a_eps.base_value("B") - Complex(0.0, 0.25)) <= 1e-15);
  CHECK(bp.w_orbits == std::set<std::string>{"A", "B"});
  CHECK(bp.b_eps.base_value("A") == Complex(1.0, 0.0));
  CHECK(bp.b_eps.base_value("B") == Complex(0.0, 0.0));
  CHECK(sup_norm(a - bp.a_eps) <= 0.25 + 1e-12);

  auto blended = bp.blend(0.5);
  CHECK(blended.base_value("A") == Complex(1.0, 0.0));
  CHECK(blended.base_value("B") == Complex(0.0, 0.125));
  CHECK(face_membership(blended, BundleFace{"A@0", bp.lambda}, kTightTol));
  for (double rr : {0.1, 0.5, 0.9, 0.99}) {
    auto w = bp.blend(rr);
    CHECK(face_membership(w, BundleFace{"A@0", bp.lambda}, kTightTol));
    CHECK(sup_norm(w - bp.a_eps) <= 2.0 - rr - rr * 0.5 + 1e-12);
  }
}

TEST_CASE("face blend pair with vanishing start value") {
  auto b = make_bundle(4, {"A", "B"});
  auto a = eq(b, {Complex(0.0, 0.0), Complex(0.8, 0.0)});
  auto bp = face_blend_pair(a, "A@0", 0.25);
  CHECK(bp.lambda == Complex(1.0, 0.0));
  CHECK(bp.a_t0_mod == 0.0);
  CHECK(!bp.profile.has_value());
  CHECK(bp.a_eps.base_value("A") == Complex(0.0, 0.0));
  CHECK(std::abs(bp.a_eps.base_value("B") - Complex(0.8, 0.0)) <= 1e-15);
  CHECK(bp.w_orbits == std::set<std::string>{"A"});

  auto w = bp.blend(0.9);
  CHECK(sup_norm(w) == 1.0);  // orthogonal supports keep the norm exact
  CHECK(face_membership(w, BundleFace{"A@0", Complex(1.0, 0.0)}, kTightTol));
}

TEST_CASE("face blend pair away from the transversal") {
  auto b = make_bundle(4, {"A", "B"});
  auto a = eq(b, {Complex(0.5, 0.0), Complex(0.0, 0.25)});
  auto bp = face_blend_pair(a, "A@1", 0.25);
  CHECK(bp.lambda == Complex(0.0, 1.0));  // phase of a at A@1
  auto w = bp.blend(0.9);
  CHECK(face_membership(w, BundleFace{"A@1", bp.lambda}, kTightTol));
}

TEST_CASE("face blend pair preconditions") {
  auto b = make_bundle(4, {"A", "B"});
  CHECK_THROWS_AS(
      face_blend_pair(eq(b, {Complex(1.0, 0.0), Complex(0.5, 0.0)}), "A@0", 0.1),
      PreconditionError);  // |a(t0)| = 1
  CHECK_THROWS_AS(
      face_blend_pair(eq(b, {Complex(0.9, 0.0), Complex(0.0, 0.0)}), "A@0", 0.2),
      PreconditionError);  // |a(t0)| + eps reaches 1
  CHECK_THROWS_AS(
      face_blend_pair(eq(b, {Complex(0.5, 0.0), Complex(1.2, 0.0)}), "A@0", 0.1),
      PreconditionError);  // outside the unit ball
  CHECK_THROWS_AS(
      face_blend_pair(eq(b, {Complex(0.5, 0.0), Complex(0.5, 0.0)}), "A@0", 0.0),
      PreconditionError);
}

TEST_CASE("bundle face membership") {
  auto b = make_bundle(4, {"A", "B"});
  auto a = eq(b, {Complex(0.0, 1.0), Complex(0.5, 0.0)});
  CHECK(face_membership(a, BundleFace{"A@0", Complex(0.0, 1.0)}, 1e-12));
  CHECK(face_membership(a, BundleFace{"A@1", Complex(-1.0, 0.0)}, 1e-12));
  CHECK(!face_membership(a, BundleFace{"A@0", Complex(1.0, 0.0)}, 1e-12));
  CHECK(!face_membership(a, BundleFace{"B@0", Complex(0.5, 0.0)}, 1e-12));
}

TEST_CASE("bundle json round trips") {
  auto b = make_bundle(4, {"a", "b"});
  auto back = bundle_from_json(to_json(*b));
  CHECK(*back == *b);

  auto a = eq(b, {Complex(0.5, -0.25), Complex(1.0 / 3.0, 0.0)});
  auto j = to_json(a);
  auto ar = equivariant_from_json(j);
  CHECK(*ar.bundle() == *b);
  CHECK(ar.base_value("a") == a.base_value("a"));
  CHECK(ar.base_value("b") == a.base_value("b"));

  Json bad = to_json(a);
  bad["base_values"][0][0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(equivariant_from_json(bad), ParseError);
  Json bad2 = to_json(*b);
  bad2["n"] = 0;
  CHECK_THROWS_AS(bundle_from_json(bad2), ParseError);
}
