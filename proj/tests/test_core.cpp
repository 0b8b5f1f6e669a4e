#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tingley/core.hpp"
#include "tingley/rng.hpp"

using namespace tingley;

namespace {

ComplexFunction fn(const PointSpacePtr& s, std::vector<Complex> vals) {
  return ComplexFunction(s, std::move(vals));
}

std::string fixture_path(const char* name) {
  return std::string(TINGLEY_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("point space keeps declared order and rejects bad ids") {
  auto s = make_space({"p", "q", "r"});
  CHECK(s->size() == 3);
  CHECK(s->point(0) == "p");
  CHECK(s->point(2) == "r");
  CHECK(s->contains("q"));
  CHECK(!s->contains("z"));
  CHECK(s->index_of("r") == 2);
  CHECK_THROWS_AS(s->index_of("z"), PreconditionError);
  CHECK_THROWS_AS(make_space({}), PreconditionError);
  CHECK_THROWS_AS(make_space({"p", "p"}), PreconditionError);
  CHECK_THROWS_AS(make_space({"p", ""}), PreconditionError);
  CHECK(*s == *make_space({"p", "q", "r"}));
  CHECK(!(*s == *make_space({"q", "p", "r"})));
}

TEST_CASE("function constructors and accessors") {
  auto s = make_space({"p", "q"});
  auto z = ComplexFunction::zero(s);
  CHECK(z[0] == Complex(0.0, 0.0));
  CHECK(z[1] == Complex(0.0, 0.0));

  auto c = ComplexFunction::constant(s, Complex(0.0, 1.0));
  CHECK(c.value("p") == Complex(0.0, 1.0));
  CHECK(c.value("q") == Complex(0.0, 1.0));

  auto ind = ComplexFunction::indicator(s, "q");
  CHECK(ind.value("p") == Complex(0.0, 0.0));
  CHECK(ind.value("q") == Complex(1.0, 0.0));
  CHECK_THROWS_AS(ComplexFunction::indicator(s, "z"), PreconditionError);
  CHECK_THROWS_AS(fn(s, {Complex(1.0, 0.0)}), PreconditionError);

  auto w = ind.with_value("p", Complex(0.5, 0.0));
  CHECK(w.value("p") == Complex(0.5, 0.0));
  CHECK(ind.value("p") == Complex(0.0, 0.0));  // original untouched
}

TEST_CASE("pointwise arithmetic") {
  auto s = make_space({"p", "q"});
  auto f = fn(s, {Complex(1.0, 0.0), Complex(0.0, 1.0)});
  auto g = fn(s, {Complex(0.5, 0.0), Complex(0.0, -1.0)});

  auto sum = f + g;
  CHECK(sum.value("p") == Complex(1.5, 0.0));
  CHECK(sum.value("q") == Complex(0.0, 0.0));

  auto diff = f - g;
  CHECK(diff.value("p") == Complex(0.5, 0.0));
  CHECK(diff.value("q") == Complex(0.0, 2.0));

  auto scaled = Complex(0.0, 1.0) * f;
  CHECK(scaled.value("p") == Complex(0.0, 1.0));
  CHECK(scaled.value("q") == Complex(-1.0, 0.0));

  auto prod = f.pointwise_mul(g);
  CHECK(prod.value("p") == Complex(0.5, 0.0));
  CHECK(prod.value("q") == Complex(1.0, 0.0));

  auto conj = f.conjugate();
  CHECK(conj.value("q") == Complex(0.0, -1.0));

  auto other = make_space({"a", "b"});
  CHECK_THROWS_AS(f + fn(other, {Complex(), Complex()}), PreconditionError);
}

TEST_CASE("point evaluation functional") {
  auto s = make_space({"p", "q"});
  auto f = fn(s, {Complex(0.5, 0.5), Complex(0.0, 1.0)});
  PointEvaluation ev{"q", false};
  CHECK(ev(f) == Complex(0.0, 1.0));
  PointEvaluation evc{"q", true};
  CHECK(evc(f) == Complex(0.0, -1.0));
}

TEST_CASE("sup norm frozen values") {
  auto s = make_space({"p", "q"});
  CHECK(sup_norm(fn(s, {Complex(1.0, 0.0), Complex(0.3, 0.0)})) == 1.0);
  CHECK(sup_norm(fn(s, {Complex(0.6, 0.8), Complex(0.0, 0.0)})) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sup_norm(ComplexFunction::zero(s)) == 0.0);
}

TEST_CASE("unit level set frozen values") {
  auto s = make_space({"p", "q"});
  auto f = fn(s, {Complex(0.0, 1.0), Complex(-1.0, 0.0)});
  CHECK(unit_level_set(f, 0.0) == std::vector<std::string>{"p", "q"});

  auto g = fn(s, {Complex(0.999999, 0.0), Complex(0.5, 0.0)});
  CHECK(unit_level_set(g, 1e-5) == std::vector<std::string>{"p"});
  CHECK(unit_level_set(g, 1e-7).empty());
}

TEST_CASE("sphere membership") {
  auto s = make_space({"p", "q"});
  auto f = fn(s, {Complex(0.5, 0.5), Complex(0.7, 0.0)});
  CHECK(!sphere_check(f, 1e-9));
  CHECK(sup_norm(f) == doctest::Approx(0.7071067811865476).epsilon(1e-12));
  CHECK(sphere_check(fn(s, {Complex(0.0, -1.0), Complex(0.2, 0.0)}), 0.0));
}

TEST_CASE("json round trip is bit exact") {
  auto s = make_space({"p", "q", "r"});
  auto f = fn(s, {Complex(0.1, -0.7), Complex(1.0 / 3.0, 0.0), Complex(0.0, 1e-17)});
  auto back = deserialize(serialize(f));
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == f[i]);
  CHECK(back.space()->points() == s->points());
}

TEST_CASE("json fixture loads") {
  std::ifstream in(fixture_path("function_3pt.json"));
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  auto f = deserialize(buf.str());
  CHECK(f.space()->points() == std::vector<std::string>{"p", "q", "r"});
  CHECK(f.value("p") == Complex(0.5, 0.5));
  CHECK(f.value("q") == Complex(0.0, 1.0));
  CHECK(f.value("r") == Complex(-1.0, 0.0));
}

TEST_CASE("json rejects malformed input") {
  CHECK_THROWS_AS(deserialize("not json"), ParseError);
  CHECK_THROWS_AS(deserialize("{\"domain\": [\"p\"]}"), ParseError);
  CHECK_THROWS_AS(
      deserialize("{\"domain\": [\"p\"], \"values\": [[1.0, 0.0], [0.0, 0.0]]}"),
      ParseError);
  CHECK_THROWS_AS(deserialize("{\"domain\": [\"p\"], \"values\": [[1.0]]}"),
                  ParseError);

  Json j;
  j["domain"] = Json::array({"p"});
  j["values"] = Json::array({Json::array(
      {std::numeric_limits<double>::quiet_NaN(), 0.0})});
  CHECK_THROWS_AS(function_from_json(j), ParseError);
}

TEST_CASE("roots of unity are exact on the quadrants") {
  CHECK(root_of_unity(0, 4) == Complex(1.0, 0.0));
  CHECK(root_of_unity(1, 4) == Complex(0.0, 1.0));
  CHECK(root_of_unity(2, 4) == Complex(-1.0, 0.0));
  CHECK(root_of_unity(3, 4) == Complex(0.0, -1.0));
  CHECK(root_of_unity(4, 16) == Complex(0.0, 1.0));
  CHECK(root_of_unity(8, 16) == Complex(-1.0, 0.0));
  CHECK(root_of_unity(-1, 4) == Complex(0.0, -1.0));
  CHECK(root_of_unity(5, 4) == Complex(0.0, 1.0));

  auto w = root_of_unity(1, 8);
  CHECK(w.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(w.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(root_of_unity(0, 0), PreconditionError);
}

TEST_CASE("phase snapping") {
  auto snap = snap_phase(Complex(0.0, 1.0), 4);
  CHECK(snap.index == 1);
  CHECK(snap.residual <= 1e-15);

  snap = snap_phase(Complex(0.05, 1.0), 4);
  CHECK(snap.index == 1);
  CHECK(snap.residual == doctest::Approx(std::abs(Complex(0.05, 1.0) - Complex(0.0, 1.0))));

  snap = snap_phase(Complex(-1.0, 0.0), 16);
  CHECK(snap.index == 8);
  CHECK_THROWS_AS(snap_phase(Complex(0.0, 0.0), 4), PreconditionError);
}

TEST_CASE("rng is deterministic and forkable") {
  Rng a(42), b(42);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng base(9);
  base.next_u64();
  base.next_u64();
  Rng f1 = base.fork(5);
  Rng f2 = Rng(9).fork(5);
  CHECK(f1.next_u64() == f2.next_u64());  // fork ignores draw position
  CHECK(mix_seed(9, 5) == mix_seed(9, 5));
  CHECK(mix_seed(9, 5) != mix_seed(9, 6));
}

TEST_CASE("rng samplers stay in range") {
  Rng r(7);
  for (int i = 0; i < 200; ++i) {
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    auto z = r.unit_disk();
    CHECK(std::abs(z) < 1.0);
    auto m = r.unimodular();
    CHECK(std::abs(m) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.index(5) < 5);
  }
  for (int i = 0; i < 64; ++i) {
    auto q = r.quantized_phase(4);
    bool exact = q == Complex(1.0, 0.0) || q == Complex(0.0, 1.0) ||
                 q == Complex(-1.0, 0.0) || q == Complex(0.0, -1.0);
    CHECK(exact);
  }
  auto perm = r.permutation(6);
  std::vector<bool> seen(6, false);
  for (auto i : perm) {
    CHECK(i < 6);
    seen[i] = true;
  }
  for (bool s : seen) CHECK(s);
}
