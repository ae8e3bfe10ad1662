#include <doctest.h>

#include "tycat/linalg.hpp"

using namespace tycat;

namespace {

IntMat m22(Int a, Int b, Int c, Int d) {
  IntMat m(2, 2);
  m << a, b, c, d;
  return m;
}

bool is_identity(const IntMat& m) {
  return m.rows() == m.cols() && m == IntMat::Identity(m.rows(), m.cols());
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("extended gcd") {
    auto r = ext_gcd(12, 18);
    CHECK(r.g == 6);
    CHECK(r.u * 12 + r.v * 18 == 6);
    auto z = ext_gcd(0, 5);
    CHECK(z.g == 5);
    CHECK(z.u * 0 + z.v * 5 == 5);
  }

  TEST_CASE("modular helpers") {
    CHECK(mod_pos(-3, 4) == 1);
    CHECK(mod_pos(9, 4) == 1);
    CHECK(mod_inverse(3, 8) == 3);
    CHECK(mod_inverse(5, 7) == 3);
    Int w = unit_to_gcd(6, 8);
    CHECK(std::gcd(w, Int(8)) == 1);
    CHECK(mod_pos(w * 6, 8) == 2);
  }

  TEST_CASE("smith normal form of a 2x2 matrix") {
    IntMat a = m22(2, 4, 6, 8);
    auto s = smith_normal_form(a);
    CHECK(s.D(0, 0) == 2);
    CHECK(s.D(1, 1) == 4);
    CHECK(s.D(0, 1) == 0);
    CHECK(s.D(1, 0) == 0);
    CHECK(s.P * a * s.Q == s.D);
    CHECK(is_identity(s.P * s.Pinv));
    CHECK(is_identity(s.Q * s.Qinv));
  }

  TEST_CASE("smith divisibility chain") {
    IntMat a(2, 3);
    a << 6, 10, 15, 0, 30, 5;
    auto s = smith_normal_form(a);
    CHECK(s.P * a * s.Q == s.D);
    Int prev = 0;
    for (int i = 0; i < 2; ++i) {
      Int d = s.D(i, i);
      if (d == 0) continue;
      if (prev > 0) CHECK(d % prev == 0);
      prev = d;
    }
  }

  TEST_CASE("integer kernel") {
    IntMat a = m22(1, 2, 2, 4);
    IntMat k = integer_kernel(a);
    REQUIRE(k.cols() == 1);
    CHECK((a * k).isZero());
    CHECK(std::abs(k(0, 0) * 1 + k(1, 0) * 2) == 0);
  }

  TEST_CASE("cokernel invariant factors") {
    IntMat d23(2, 2);
    d23 << 2, 0, 0, 3;
    auto c = cokernel(d23);
    CHECK(c.factors == std::vector<Int>{6});
    IntMat d22 = m22(2, 0, 0, 2);
    auto c2 = cokernel(d22);
    CHECK(c2.factors == std::vector<Int>{2, 2});
  }

  TEST_CASE("howell kernel and membership") {
    IntMat a(1, 1);
    a << 2;
    IntMat k = howell_kernel(a, 4);
    REQUIRE(k.cols() >= 1);
    for (int j = 0; j < k.cols(); ++j) CHECK(mod_pos(2 * k(0, j), 4) == 0);
    auto h = howell_echelon(k, 4);
    IntVec two(1);
    two << 2;
    CHECK(howell_reduce(h, two).isZero());
    IntVec one(1);
    one << 1;
    CHECK_FALSE(howell_reduce(h, one).isZero());
  }

  TEST_CASE("solve_mod") {
    IntMat a(1, 1);
    a << 2;
    IntVec b(1);
    b << 2;
    auto x = solve_mod(a, b, 4);
    REQUIRE(x.has_value());
    CHECK(mod_pos(2 * (*x)(0) - 2, 4) == 0);
    b << 1;
    CHECK_FALSE(solve_mod(a, b, 4).has_value());
  }

  TEST_CASE("quotient types over Z/N") {
    IntMat U = IntMat::Identity(2, 2);
    IntMat V = IntMat::Zero(2, 0);
    CHECK(quotient_type_mod(U, V, 4).factors == std::vector<Int>{4, 4});
    IntMat U2(1, 1);
    U2 << 2;
    IntMat V2 = IntMat::Zero(1, 0);
    CHECK(quotient_type_mod(U2, V2, 4).factors == std::vector<Int>{2});
    IntMat V3 = 2 * IntMat::Identity(2, 2);
    CHECK(quotient_type_mod(U, V3, 4).factors == std::vector<Int>{2, 2});
    // generator combinations map onto the factors
    auto qt = quotient_type_mod(U, V3, 4);
    CHECK(qt.gen_combos.cols() == 2);
  }
}
