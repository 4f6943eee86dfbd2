#pragma once
// Integer matrices with exact arithmetic: characteristic polynomials,
// unit-circle spectrum tests via cyclotomic factorization, parabolic normal
// forms for 2x2 unipotent-up-to-power matrices, GL(2,Z) decomposition into
// elementary generators.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>
#include <vector>

namespace mtdehn {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(std::size_t(n) * n, 0) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  int dim() const { return n_; }
  BigInt& at(int i, int j) { return a_[std::size_t(i) * n_ + j]; }
  const BigInt& at(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix pow(long long e) const;  // e >= 0
  bool operator==(const IntMatrix& rhs) const { return n_ == rhs.n_ && a_ == rhs.a_; }
  bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }
  bool is_identity() const;

  BigInt det() const;                      // from the characteristic polynomial
  std::vector<BigInt> char_poly() const;   // coeff[i] of x^i, monic, exact
  // Inverse for det = ±1 matrices (adjugate); aborts otherwise.
  IntMatrix unimodular_inverse() const;

  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<BigInt> a_;  // row-major
};

// Polynomials over Z, coeff[i] of x^i; no trailing zero coefficients.
using Poly = std::vector<BigInt>;
Poly poly_mul(const Poly& p, const Poly& q);
// Division p = q*quot + rem; exact = true requires rem == 0 (asserts).
Poly poly_div_exact(const Poly& p, const Poly& q);
bool poly_divides(const Poly& q, const Poly& p);
std::string poly_to_string(const Poly& p);

// n-th cyclotomic polynomial (cached).
Poly cyclotomic(int n);
// All n with phi(n) <= max_degree, ascending.
std::vector<int> cyclotomic_indices(int max_degree);

enum class MatrixClassKind { FiniteOrder, UnitParabolic, NonUnitEigenvalue };

struct MatrixClass {
  MatrixClassKind kind;
  // FiniteOrder: minimal n with A^n = I.
  long long order = 0;
  // UnitParabolic: (A^N - I)^c == 0 and (A^N - I)^{c-1} != 0 for the certified
  // power N (N = lcm of root orders of the cyclotomic factors).
  int nilpotency = 0;
  long long unipotent_power = 0;
  // NonUnitEigenvalue: monic integer factor of the characteristic polynomial
  // with no cyclotomic divisor (hence a root off the unit circle).
  Poly non_cyclotomic_factor;
};

MatrixClass classify_matrix(const IntMatrix& A);

struct ParabolicForm {
  long long k = 1;   // power with A^k unipotent and != I
  BigInt alpha;      // B^-1 A^k B == [[1,alpha],[0,1]], alpha != 0
  IntMatrix B;       // det B == 1
};

// Requires classify_matrix(A).kind == UnitParabolic and dim == 2.
ParabolicForm parabolic_normalize(const IntMatrix& A);

// Elementary generators of GL(2,Z) in column convention (columns are images):
//   L = [[1,0],[1,1]]   (a -> ab)        U  = [[1,1],[0,1]]  (b -> ba)
//   Swap = [[0,1],[1,0]] (a <-> b)       NegA = [[-1,0],[0,1]] (a -> a^-1)
enum class Gl2Gen { L, Linv, U, Uinv, Swap, NegA };
IntMatrix gl2_gen_matrix(Gl2Gen g);
// B == product of the returned generators, left to right.
std::vector<Gl2Gen> gl2_decompose(const IntMatrix& B);

// Float root finder (Durand-Kerner) for cross-checks.  Returns the distinct
// roots: the iteration runs on the square-free part p / gcd(p, p'), so
// repeated roots do not degrade accuracy.
std::vector<std::complex<double>> poly_roots(const Poly& p);
bool has_root_off_unit_circle(const Poly& p, double tol);

}  // namespace mtdehn
