#include "doctest.h"
#include "test_support.hpp"

#include <set>

using namespace valgeo;
using testing::qvec;
using testing::vec;

namespace {

std::set<std::vector<int>> lattice_sets(const Polytope& p) {
  std::set<std::vector<int>> out;
  for (const auto& f : p.lattice().faces) out.insert(f.vertex_indices);
  return out;
}

std::set<std::vector<Vector>> face_points(const Polytope& p, const std::vector<int>& ids) {
  std::set<std::vector<Vector>> out;
  for (int id : ids) {
    std::vector<Vector> pts;
    for (int v : p.lattice().faces[static_cast<std::size_t>(id)].vertex_indices) {
      pts.push_back(p.vertices()[static_cast<std::size_t>(v)]);
    }
    out.insert(pts);
  }
  return out;
}

// Volume as a sum of pyramids from the centroid over the facets. The facets
// and the pyramids are independent hulls, so this disagrees with the pulling
// triangulation of P whenever either is wrong.
Scalar pyramid_volume(const Polytope& p) {
  Vector c = zero_vector(p.ambient_dim());
  for (const auto& v : p.vertices()) c = c + v;
  c = ratio(1, static_cast<long>(p.vertices().size())) * c;
  Scalar total = 0;
  for (const auto& f : p.facets()) {
    std::vector<Vector> pts{c};
    for (int i : f.vertices) pts.push_back(p.vertices()[static_cast<std::size_t>(i)]);
    total += volume(convex_hull(pts));
  }
  return total;
}

}  // namespace

TEST_CASE("scalar text round trip") {
  CHECK(to_string(parse_scalar("6/4")) == "3/2");
  CHECK(to_string(parse_scalar("-0.25")) == "-1/4");
  CHECK(to_string(parse_scalar("7")) == "7");
  CHECK(parse_scalar(to_string(ratio(-22, 7))) == ratio(-22, 7));
  CHECK_THROWS_AS(parse_scalar("abc"), Error);
  CHECK(primitive_direction(qvec({"1/2", "-3/4"})) == vec({2, -3}));
}

TEST_CASE("interior and duplicate points are discarded") {
  Polytope p = convex_hull({vec({0, 0}), vec({2, 0}), vec({0, 2}), vec({1, 1}), vec({0, 0}),
                            qvec({"1/2", "1/2"})});
  CHECK(p.dim() == 2);
  CHECK(p.vertices() == std::vector<Vector>{vec({0, 0}), vec({0, 2}), vec({2, 0})});
  CHECK(p.lattice().f_vector() == std::vector<long>{3, 3, 1});
}

TEST_CASE("f-vectors of standard simplices are binomial") {
  for (int d = 1; d <= kMaxDimension; ++d) {
    Polytope t = standard_simplex(d, d);
    auto f = t.lattice().f_vector();
    REQUIRE(static_cast<int>(f.size()) == d + 1);
    for (int j = 0; j <= d; ++j) {
      CHECK(Scalar(f[static_cast<std::size_t>(j)]) ==
            binomial(static_cast<unsigned>(d + 1), static_cast<unsigned>(j + 1)));
    }
  }
}

TEST_CASE("square and cube") {
  Polytope sq = box(vec({0, 0}), vec({1, 1}));
  CHECK(sq.lattice().f_vector() == std::vector<long>{4, 4, 1});
  Polytope cube = box(vec({-1, -1, -1}), vec({1, 1, 1}));
  CHECK(cube.lattice().f_vector() == std::vector<long>{8, 12, 6, 1});
  CHECK(volume(cube) == 8);
}

TEST_CASE("lower-dimensional hulls") {
  Polytope seg = convex_hull({vec({1, 1, 1}), vec({3, 3, 3}), vec({2, 2, 2})});
  CHECK(seg.dim() == 1);
  CHECK(seg.vertices().size() == 2);
  CHECK(seg.equations().size() == 2);
  CHECK(volume(seg) == 0);

  Polytope tri = convex_hull({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  CHECK(tri.dim() == 2);
  CHECK(tri.lattice().f_vector() == std::vector<long>{3, 3, 1});
  RelativeVolume rv = relative_volume(tri);
  // Area sqrt(3)/2.
  CHECK(rv.value() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(rv.coefficient * rv.coefficient * rv.gram == ratio(3, 4));

  Polytope pt = convex_hull({vec({5, -1})});
  CHECK(pt.dim() == 0);
  CHECK(pt.lattice().f_vector() == std::vector<long>{1});
  CHECK(Polytope::empty(3).is_empty());
  CHECK(euler_characteristic(Polytope::empty(3)) == 0);
  CHECK(euler_characteristic(pt) == 1);
}

TEST_CASE("random hulls contain their input and match brute-force faces") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    auto pts = testing::random_points(rng, n, 6 + trial % 5, 4);
    Polytope p = convex_hull(pts);
    for (const auto& x : pts) CHECK(point_membership(x, p) != Membership::Outside);
    if (!p.is_full_dimensional()) continue;
    CAPTURE(trial);
    CHECK(convex_hull(p.vertices()) == p);

    auto expected = testing::brute_force_faces(p);
    CHECK(lattice_sets(p) == expected);

    // Dimensions agree with the affine rank, and Euler's relation holds.
    long euler = 0;
    for (const auto& f : p.lattice().faces) {
      CHECK(f.dim == testing::affine_rank(p, f.vertex_indices));
      euler += (f.dim % 2 == 0) ? 1 : -1;
    }
    CHECK(euler == 1);
  }
}

TEST_CASE("Euler relation in higher dimensions") {
  std::mt19937_64 rng(11);
  for (int n = 4; n <= 6; ++n) {
    Polytope p = testing::random_polytope(rng, n, n + 4, 3);
    auto f = p.lattice().f_vector();
    long alt = 0;
    for (std::size_t j = 0; j < f.size(); ++j) alt += (j % 2 == 0 ? 1 : -1) * f[j];
    CHECK(alt == 1);
  }
}

TEST_CASE("normal cone rays support their face") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Polytope p = testing::random_polytope(rng, 3, 9, 5);
    for (const auto& f : p.lattice().faces) {
      for (const auto& u : f.normal_cone_rays) {
        const Scalar h = support(p, u);
        for (int v : f.vertex_indices) {
          CHECK(dot(u, p.vertices()[static_cast<std::size_t>(v)]) == h);
        }
      }
      CHECK(f.normal_cone_rays.size() >= static_cast<std::size_t>(3 - f.dim));
    }
  }
}

TEST_CASE("face classes of the standard triangle") {
  Polytope t = standard_simplex(2, 2);
  FaceClasses fc = classify_faces(t);
  auto minus = face_points(t, fc.minus);
  std::set<std::vector<Vector>> expected{
      {vec({0, 0})},
      {vec({0, 0}), vec({0, 1})},
      {vec({0, 0}), vec({1, 0})},
      {vec({0, 0}), vec({0, 1}), vec({1, 0})},
  };
  CHECK(minus == expected);
  // The origin lies in P, so every face has nonnegative support.
  CHECK(fc.plus.size() == t.lattice().faces.size());
}

TEST_CASE("face classes of segments on the line") {
  Polytope a = convex_hull({vec({1}), vec({2})});
  auto fa = classify_faces(a);
  CHECK(face_points(a, fa.minus) ==
        std::set<std::vector<Vector>>{{vec({1})}, {vec({1}), vec({2})}});
  CHECK(face_points(a, fa.plus) ==
        std::set<std::vector<Vector>>{{vec({2})}, {vec({1}), vec({2})}});

  Polytope b = convex_hull({vec({-1}), vec({1})});
  auto fb = classify_faces(b);
  CHECK(face_points(b, fb.minus) == std::set<std::vector<Vector>>{{vec({-1}), vec({1})}});
  CHECK(fb.plus.size() == 3);
}

TEST_CASE("lower-dimensional face classes use the lineality") {
  // A segment in the plane not through the origin's line: P itself has mixed
  // support values and is in neither class.
  Polytope s = convex_hull({vec({1, 1}), vec({2, 1})});
  const Face& top = s.lattice().faces[static_cast<std::size_t>(s.lattice().top())];
  CHECK(top.height_sign == HeightSign::Mixed);
  // Segment through the origin's line: the top face has zero support.
  Polytope z = convex_hull({vec({1, 1}), vec({2, 2})});
  const Face& ztop = z.lattice().faces[static_cast<std::size_t>(z.lattice().top())];
  CHECK(ztop.in_minus_class());
  CHECK(ztop.in_plus_class());
}

TEST_CASE("support and gauge") {
  Polytope t = standard_simplex(2, 2);
  CHECK(support(t, vec({1, 1})) == 1);
  CHECK(support(t, vec({-1, -1})) == 0);
  CHECK(support(t, vec({3, -2})) == 3);

  Polytope cube = box(vec({-1, -1, -1}), vec({1, 1, 1}));
  CHECK(gauge(cube, vec({2, 0, 0})) == Scalar(2));
  CHECK(gauge(cube, qvec({"1/2", "-1/3", "0"})) == ratio(1, 2));
  CHECK(gauge(cube, vec({0, 0, 0})) == Scalar(0));
  CHECK_FALSE(gauge(t, vec({-1, 0})).has_value());
  CHECK(gauge(t, vec({1, 1})) == Scalar(2));
  CHECK_THROWS_AS(gauge(box(vec({1, 1}), vec({2, 2})), vec({1, 0})), Error);
}

TEST_CASE("cutting the triangle along the diagonal") {
  Polytope t = standard_simplex(2, 2);
  CutPieces pieces = cut(t, Hyperplane(vec({1, -1}), 0));
  CHECK(pieces.below.vertices() ==
        std::vector<Vector>{vec({0, 0}), vec({0, 1}), qvec({"1/2", "1/2"})});
  CHECK(pieces.above.vertices() ==
        std::vector<Vector>{vec({0, 0}), qvec({"1/2", "1/2"}), vec({1, 0})});
  CHECK(pieces.on.dim() == 1);
  CHECK(volume(pieces.below) == ratio(1, 4));
  CHECK(volume(pieces.above) == ratio(1, 4));

  CutPieces miss = cut(t, Hyperplane(vec({1, 0}), 5));
  CHECK(miss.below == t);
  CHECK(miss.above.is_empty());
  CHECK(miss.on.is_empty());
  CHECK_THROWS_AS(Hyperplane(vec({0, 0}), 1), Error);
}

TEST_CASE("cuts are volume additive") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    Polytope p = testing::random_polytope(rng, n, n + 3, 4);
    Vector normal;
    do {
      normal = testing::random_points(rng, n, 1, 3).front();
    } while (is_zero(normal));
    Scalar offset = testing::random_rational(rng, 5);
    CutPieces c = cut(p, Hyperplane(normal, offset));
    CHECK(volume(c.below) + volume(c.above) == volume(p));
  }
}

TEST_CASE("volumes") {
  for (int n = 1; n <= kMaxDimension; ++n) {
    CHECK(volume(standard_simplex(n, n)) == 1 / factorial(static_cast<unsigned>(n)));
  }
  CHECK(volume(box(vec({0, 0, 0}), vec({1, 1, 1}))) == 1);
  CHECK(volume(standard_simplex(3, 2)) == 0);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + trial % 3;
    Polytope p = testing::random_polytope(rng, n, n + 5, 6);
    const Scalar v = volume(p);
    CHECK(v > 0);
    CHECK(v == pyramid_volume(p));
    for (const auto& s : triangulate(p)) {
      CHECK(s.dim() == n);
      CHECK(simplex_volume(s) > 0);
      for (const auto& x : s.vertices) CHECK(point_membership(x, p) != Membership::Outside);
    }
  }
}

TEST_CASE("linear maps, reflection and scaling") {
  std::mt19937_64 rng(23);
  LinearMap m({vec({1, 2, 0}), vec({0, 1, 0}), vec({3, 0, 2})});
  CHECK(m.det() == 2);
  for (int trial = 0; trial < 5; ++trial) {
    Polytope p = testing::random_polytope(rng, 3, 7, 4);
    Polytope q = apply_linear(p, m);
    CHECK(volume(q) == abs(m.det()) * volume(p));
    Vector x = testing::random_points(rng, 3, 1, 5).front();
    CHECK(support(q, x) == support(p, m.transpose_apply(x)));
    CHECK(support(reflect(p), x) == support(p, -x));
    CHECK(volume(scale(p, ratio(3, 2))) == ratio(27, 8) * volume(p));
    CHECK(support(translate(p, vec({1, 0, 0})), x) == support(p, x) + x[0]);
  }
  CHECK_THROWS_AS(LinearMap({vec({1, 2}), vec({2, 4})}), Error);
}

TEST_CASE("Minkowski sum and cone hull") {
  Polytope a = convex_hull({vec({0, 0}), vec({1, 0})});
  Polytope b = convex_hull({vec({0, 0}), vec({0, 1})});
  CHECK(minkowski_sum(a, b) == box(vec({0, 0}), vec({1, 1})));

  Polytope far = convex_hull({vec({1, 1}), vec({2, 1}), vec({1, 2})});
  Polytope ch = cone_hull(far);
  // (1,1) is the centroid of o, (2,1), (1,2) and stops being a vertex.
  CHECK(ch.vertices() == std::vector<Vector>{vec({0, 0}), vec({1, 2}), vec({2, 1})});
  CHECK(point_membership(vec({0, 0}), ch) == Membership::Boundary);
  CHECK(cone_hull(Polytope::empty(2)).is_empty());
}
