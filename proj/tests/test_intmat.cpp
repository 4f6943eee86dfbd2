#include <random>

#include "doctest.h"
#include "mtdehn/intmat.hpp"

using namespace mtdehn;

namespace {

IntMatrix M2(long long a, long long b, long long c, long long d) {
  return IntMatrix::from_rows({{a, b}, {c, d}});
}

Poly P(std::initializer_list<long long> cs) {
  Poly p;
  for (long long c : cs) p.push_back(c);
  return p;
}

IntMatrix random_gl2(std::mt19937& rng, int n_factors) {
  std::uniform_int_distribution<int> pick(0, 5);
  IntMatrix m = IntMatrix::identity(2);
  for (int i = 0; i < n_factors; ++i)
    m = m * gl2_gen_matrix(static_cast<Gl2Gen>(pick(rng)));
  return m;
}

}  // namespace

TEST_CASE("matrix basics") {
  IntMatrix z(2);
  CHECK(z.at(0, 0) == 0);
  IntMatrix i2 = IntMatrix::identity(2);
  CHECK(i2.is_identity());
  CHECK(!z.is_identity());

  IntMatrix f = M2(2, 1, 1, 1);
  CHECK(f * i2 == f);
  CHECK(f.pow(0).is_identity());
  CHECK(f.pow(1) == f);
  // [[2,1],[1,1]]^10 has Fibonacci entries F21, F20, F20, F19.
  CHECK(f.pow(10) == M2(10946, 6765, 6765, 4181));
}

TEST_CASE("characteristic polynomial and determinant") {
  CHECK(M2(2, 1, 1, 1).char_poly() == P({1, -3, 1}));
  CHECK(M2(2, 1, 1, 1).det() == 1);
  CHECK(M2(0, -1, 1, 0).char_poly() == P({1, 0, 1}));
  CHECK(M2(0, -1, 1, 0).det() == 1);
  CHECK(M2(1, 2, 3, 4).det() == -2);
  // Companion matrix of x^3 - x - 1.
  IntMatrix comp = IntMatrix::from_rows({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
  CHECK(comp.char_poly() == P({-1, -1, 0, 1}));
  CHECK(IntMatrix::identity(3).char_poly() == P({-1, 3, -3, 1}));
}

TEST_CASE("unimodular inverse") {
  for (IntMatrix m : {M2(2, 1, 1, 1), M2(0, -1, 1, 0), M2(1, 5, 0, -1)}) {
    CHECK((m * m.unimodular_inverse()).is_identity());
    CHECK((m.unimodular_inverse() * m).is_identity());
  }
  IntMatrix u3 = IntMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  CHECK((u3 * u3.unimodular_inverse()).is_identity());
}

TEST_CASE("polynomial helpers") {
  Poly p = poly_mul(P({-1, 1}), P({1, 1}));  // (x-1)(x+1) = x^2 - 1
  CHECK(p == P({-1, 0, 1}));
  CHECK(poly_div_exact(p, P({-1, 1})) == P({1, 1}));
  CHECK(poly_divides(P({1, 1}), p));
  CHECK(!poly_divides(P({1, 1}), P({1, 0, 1})));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == P({-1, 1}));
  CHECK(cyclotomic(2) == P({1, 1}));
  CHECK(cyclotomic(3) == P({1, 1, 1}));
  CHECK(cyclotomic(4) == P({1, 0, 1}));
  CHECK(cyclotomic(6) == P({1, -1, 1}));
  CHECK(cyclotomic(12) == P({1, 0, -1, 0, 1}));
  // x^n - 1 = prod_{d | n} Phi_d.
  Poly x6m1 = P({-1, 0, 0, 0, 0, 0, 1});
  Poly prod = P({1});
  for (int d : {1, 2, 3, 6}) prod = poly_mul(prod, cyclotomic(d));
  CHECK(prod == x6m1);

  auto idx = cyclotomic_indices(2);
  // phi(n) <= 2: n = 1, 2, 3, 4, 6.
  CHECK(idx == std::vector<int>{1, 2, 3, 4, 6});
}

TEST_CASE("matrix classification: finite order") {
  auto c = classify_matrix(IntMatrix::identity(2));
  CHECK(c.kind == MatrixClassKind::FiniteOrder);
  CHECK(c.order == 1);

  c = classify_matrix(M2(-1, 0, 0, -1));
  CHECK(c.kind == MatrixClassKind::FiniteOrder);
  CHECK(c.order == 2);

  c = classify_matrix(M2(0, -1, 1, 0));
  CHECK(c.kind == MatrixClassKind::FiniteOrder);
  CHECK(c.order == 4);

  c = classify_matrix(M2(0, -1, 1, 1));
  CHECK(c.kind == MatrixClassKind::FiniteOrder);
  CHECK(c.order == 6);

  c = classify_matrix(M2(-1, -1, 1, 0));
  CHECK(c.kind == MatrixClassKind::FiniteOrder);
  CHECK(c.order == 3);

  // Block diagonal: order lcm(4, 1) = 4.
  IntMatrix blk = IntMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
  c = classify_matrix(blk);
  CHECK(c.kind == MatrixClassKind::FiniteOrder);
  CHECK(c.order == 4);
}

TEST_CASE("matrix classification: unit parabolic") {
  auto c = classify_matrix(M2(1, 1, 0, 1));
  CHECK(c.kind == MatrixClassKind::UnitParabolic);
  CHECK(c.nilpotency == 2);
  CHECK(c.unipotent_power == 1);

  c = classify_matrix(M2(-1, 1, 0, -1));
  CHECK(c.kind == MatrixClassKind::UnitParabolic);
  CHECK(c.nilpotency == 2);
  CHECK(c.unipotent_power == 2);

  IntMatrix j3 = IntMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  c = classify_matrix(j3);
  CHECK(c.kind == MatrixClassKind::UnitParabolic);
  CHECK(c.nilpotency == 3);
  CHECK(c.unipotent_power == 1);
}

TEST_CASE("matrix classification: non-unit eigenvalue") {
  auto c = classify_matrix(M2(2, 1, 1, 1));
  CHECK(c.kind == MatrixClassKind::NonUnitEigenvalue);
  CHECK(c.non_cyclotomic_factor == P({1, -3, 1}));
  CHECK(has_root_off_unit_circle(c.non_cyclotomic_factor, 1e-9));

  // Mixed spectrum: cyclotomic part is stripped before reporting.
  IntMatrix mix = IntMatrix::from_rows({{2, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  c = classify_matrix(mix);
  CHECK(c.kind == MatrixClassKind::NonUnitEigenvalue);
  CHECK(c.non_cyclotomic_factor == P({1, -3, 1}));

  // x^3 - x - 1 (Salem-ish pisot cubic): no cyclotomic factor at all.
  IntMatrix comp = IntMatrix::from_rows({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
  c = classify_matrix(comp);
  CHECK(c.kind == MatrixClassKind::NonUnitEigenvalue);
  CHECK(c.non_cyclotomic_factor == P({-1, -1, 0, 1}));
}

TEST_CASE("parabolic normal form") {
  auto check_form = [](const IntMatrix& A) {
    ParabolicForm f = parabolic_normalize(A);
    CHECK(f.alpha != 0);
    CHECK(f.B.det() == 1);
    IntMatrix target = f.B.unimodular_inverse() * A.pow(f.k) * f.B;
    CHECK(target == IntMatrix::from_rows({{1, f.alpha.convert_to<long long>()}, {0, 1}}));
    return f;
  };

  ParabolicForm f = check_form(M2(1, 1, 0, 1));
  CHECK(f.k == 1);
  CHECK(f.alpha == 1);

  f = check_form(M2(-1, 1, 0, -1));
  CHECK(f.k == 2);
  CHECK(f.alpha == -2);

  f = check_form(M2(1, 0, 1, 1));
  CHECK(f.k == 1);
  CHECK(f.alpha == -1);

  check_form(M2(1, 0, -3, 1));
  check_form(M2(0, -1, 1, -2));  // char x^2 + 2x + 1 = (x+1)^2
  // Conjugated parabolic: C [[1,2],[0,1]] C^-1 for C = [[2,1],[1,1]].
  IntMatrix C = M2(2, 1, 1, 1);
  check_form(C * M2(1, 2, 0, 1) * C.unimodular_inverse());
}

TEST_CASE("GL(2,Z) generator matrices") {
  CHECK(gl2_gen_matrix(Gl2Gen::L) == M2(1, 0, 1, 1));
  CHECK(gl2_gen_matrix(Gl2Gen::U) == M2(1, 1, 0, 1));
  CHECK(gl2_gen_matrix(Gl2Gen::Swap) == M2(0, 1, 1, 0));
  CHECK(gl2_gen_matrix(Gl2Gen::NegA) == M2(-1, 0, 0, 1));
  CHECK((gl2_gen_matrix(Gl2Gen::L) * gl2_gen_matrix(Gl2Gen::Linv)).is_identity());
  CHECK((gl2_gen_matrix(Gl2Gen::U) * gl2_gen_matrix(Gl2Gen::Uinv)).is_identity());
}

TEST_CASE("GL(2,Z) decomposition") {
  auto check_decomp = [](const IntMatrix& B) {
    auto gens = gl2_decompose(B);
    IntMatrix prod = IntMatrix::identity(2);
    for (Gl2Gen g : gens) prod = prod * gl2_gen_matrix(g);
    CHECK(prod == B);
  };
  check_decomp(IntMatrix::identity(2));
  check_decomp(M2(1, 0, 1, 1));
  check_decomp(M2(0, 1, 1, 0));
  check_decomp(M2(-1, 0, 0, 1));
  check_decomp(M2(1, 0, 0, -1));
  check_decomp(M2(0, -1, 1, 0));
  check_decomp(M2(2, 1, 1, 1));
  check_decomp(M2(-3, 7, 2, -5));

  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) check_decomp(random_gl2(rng, trial % 12));
}

TEST_CASE("float roots cross-check") {
  auto roots = poly_roots(P({1, -3, 1}));
  REQUIRE(roots.size() == 2);
  double big = std::max(std::abs(roots[0]), std::abs(roots[1]));
  double small = std::min(std::abs(roots[0]), std::abs(roots[1]));
  CHECK(big == doctest::Approx(2.6180339887).epsilon(1e-6));
  CHECK(small == doctest::Approx(0.3819660113).epsilon(1e-6));
  CHECK(has_root_off_unit_circle(P({1, -3, 1}), 1e-9));
  CHECK(!has_root_off_unit_circle(cyclotomic(6), 1e-9));
  CHECK(!has_root_off_unit_circle(cyclotomic(12), 1e-9));
  CHECK(has_root_off_unit_circle(P({-2, 1}), 1e-9));
}
