#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "funkvol/errors.hpp"
#include "funkvol/funk.hpp"
#include "funkvol/hanner.hpp"
#include "funkvol/polytope.hpp"
#include "funkvol/types.hpp"
#include "oracles.hpp"

using namespace funkvol;

namespace {

Errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  REQUIRE(false);
  return Errc::EmptyInput;
}

bool same_vertex_set(const std::vector<Vec>& got, const std::vector<Vec>& want) {
  if (got.size() != want.size()) return false;
  for (const Vec& w : want) {
    bool hit = false;
    for (const Vec& g : got) hit = hit || (g - w).norm() < 1e-12;
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("spec strings parse into the expected trees") {
  HannerSpec s = parse_hanner_spec("segment");
  CHECK(s.kind == HannerSpec::Kind::segment);
  CHECK(s.dimension() == 1);

  s = parse_hanner_spec("product(segment,segment)");
  CHECK(s.kind == HannerSpec::Kind::product);
  CHECK(s.children.size() == 2);
  CHECK(s.dimension() == 2);

  s = parse_hanner_spec("  polar( product( segment , segment , segment ) ) ");
  CHECK(s.kind == HannerSpec::Kind::polar);
  CHECK(s.dimension() == 3);

  s = parse_hanner_spec("product(polar(product(segment,segment)),segment)");
  CHECK(s.dimension() == 3);
  CHECK(s.children[0].kind == HannerSpec::Kind::polar);
}

TEST_CASE("malformed spec strings are rejected") {
  for (const char* bad : {"", "seg", "polar(segment", "polar(segment,segment)",
                          "product(segment)", "segment extra", "product()", "polar()",
                          "product(segment,segment))"}) {
    CHECK(thrown_code([&] { parse_hanner_spec(bad); }) == Errc::ParseError);
  }
}

TEST_CASE("base cases build the expected vertex sets") {
  Polytope seg = hanner_build(parse_hanner_spec("segment"));
  CHECK(seg.dim() == 1);
  CHECK(same_vertex_set(seg.vertices(), {Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)}));

  Polytope sq = hanner_build(parse_hanner_spec("product(segment,segment)"));
  CHECK(sq.dim() == 2);
  CHECK(same_vertex_set(sq.vertices(), oracle::cube_vertices(2)));

  Polytope oct = hanner_build(parse_hanner_spec("polar(product(segment,segment,segment))"));
  CHECK(oct.dim() == 3);
  CHECK(same_vertex_set(oct.vertices(), oracle::cross_polytope_vertices(3)));
}

TEST_CASE("every built body has 2^n n! flags, matching the chain-count oracle") {
  const char* specs[] = {
      "segment",
      "product(segment,segment)",
      "polar(product(segment,segment,segment))",
      "product(segment,polar(product(segment,segment)))",
      "product(product(segment,segment),product(segment,segment))",
      "product(polar(product(segment,segment,segment)),product(segment,segment))",
  };
  for (const char* text : specs) {
    CAPTURE(text);
    Polytope P = hanner_build(parse_hanner_spec(text));
    int n = P.dim();
    double expected = 1.0;
    for (int k = 1; k <= n; ++k) expected *= 2.0 * k;
    CHECK(P.flags_below(P.top_face_id()) == expected);
    if (n <= 3) CHECK(oracle::chain_count(P.vertices(), n) == static_cast<long long>(expected));
  }
}

TEST_CASE("dimension above five is rejected") {
  CHECK(thrown_code([] {
          hanner_build(parse_hanner_spec(
              "product(segment,segment,segment,segment,segment,segment)"));
        }) == Errc::DimensionTooLarge);
}

TEST_CASE("closed-form ball volume hits the pinned values") {
  double r = std::log(2.0);
  CHECK(hanner_ball_volume(1, r) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  double l3 = std::log(3.0);
  CHECK(hanner_ball_volume(2, r) == doctest::Approx(2.0 / M_PI * l3 * l3).epsilon(1e-14));

  for (int n = 1; n <= 5; ++n) {
    CHECK(hanner_ball_volume(n, 0.5) > 0.0);
    CHECK(hanner_ball_volume(n, 2.0) > hanner_ball_volume(n, 1.0));
  }
  CHECK(thrown_code([] { hanner_ball_volume(0, 1.0); }) == Errc::DegenerateInput);
  CHECK(thrown_code([] { hanner_ball_volume(2, 0.0); }) == Errc::NonpositiveRadius);
}

TEST_CASE("closed form agrees with quadrature on bodies of each shape") {
  const char* specs[] = {
      "segment",
      "product(segment,segment)",
      "polar(product(segment,segment))",
      "product(segment,segment,segment)",
      "polar(product(segment,segment,segment))",
      "product(segment,polar(product(segment,segment)))",
  };
  for (const char* text : specs) {
    CAPTURE(text);
    Polytope P = hanner_build(parse_hanner_spec(text));
    double R = 1.0;
    VolumeEstimate est = ball_volume(P, Vec::Zero(P.dim()), R, 1e-7);
    CHECK(est.converged);
    double want = hanner_ball_volume(P.dim(), R);
    CHECK(std::abs(est.value - want) <= 1e-6 * want);
  }
}
