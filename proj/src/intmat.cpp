#include "mtdehn/intmat.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

namespace mtdehn {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  int n = int(rows.size());
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    assert(int(rows[i].size()) == n);
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  assert(n_ == rhs.n_);
  IntMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const BigInt& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n_; ++j) out.at(i, j) += aik * rhs.at(k, j);
    }
  return out;
}

IntMatrix IntMatrix::pow(long long e) const {
  assert(e >= 0);
  IntMatrix acc = identity(n_);
  IntMatrix base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool IntMatrix::is_identity() const { return *this == identity(n_); }

std::vector<BigInt> IntMatrix::char_poly() const {
  // Faddeev-LeVerrier: exact over Z, every division is exact.
  int n = n_;
  std::vector<BigInt> c(std::size_t(n) + 1, 0);
  c[n] = 1;
  if (n == 0) return c;
  auto trace = [&](const IntMatrix& m) {
    BigInt t = 0;
    for (int i = 0; i < n; ++i) t += m.at(i, i);
    return t;
  };
  IntMatrix M = *this;
  c[n - 1] = -trace(M);
  for (int k = 2; k <= n; ++k) {
    IntMatrix shifted = M;
    for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
    M = (*this) * shifted;
    BigInt t = -trace(M);
    assert(t % k == 0);
    c[n - k] = t / k;
  }
  return c;
}

BigInt IntMatrix::det() const {
  std::vector<BigInt> c = char_poly();
  // p(x) = det(xI - A), so det(A) = (-1)^n p(0).
  return (n_ % 2 == 0) ? c[0] : -c[0];
}

IntMatrix IntMatrix::unimodular_inverse() const {
  std::vector<BigInt> c = char_poly();
  BigInt c0 = c[0];
  assert(c0 == 1 || c0 == -1);
  // Cayley-Hamilton: A * (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I) = -c_0 I.
  IntMatrix B = identity(n_);
  for (int k = n_ - 1; k >= 1; --k) {
    B = (*this) * B;
    for (int i = 0; i < n_; ++i) B.at(i, i) += c[k];
  }
  BigInt scale = -c0;  // 1/(-c0) == -c0 for c0 = +-1
  IntMatrix inv(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) inv.at(i, j) = B.at(i, j) * scale;
  assert((*this) * inv == identity(n_));
  return inv;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < n_; ++j) os << (j ? " " : "") << at(i, j);
  }
  os << "]";
  return os.str();
}

namespace {
void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
}  // namespace

Poly poly_mul(const Poly& p, const Poly& q) {
  if (p.empty() || q.empty()) return {};
  Poly out(p.size() + q.size() - 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  poly_trim(out);
  return out;
}

namespace {
// Long division of p by q; returns {quotient, remainder}. Requires that every
// elimination step divides exactly in Z (true for monic q).
bool poly_divmod(const Poly& p, const Poly& q, Poly* quot, Poly* rem) {
  assert(!q.empty());
  Poly r = p;
  poly_trim(r);
  Poly qq = q;
  poly_trim(qq);
  Poly out(r.size() > qq.size() - 1 ? r.size() - qq.size() + 1 : 0, 0);
  while (r.size() >= qq.size()) {
    if (r.back() % qq.back() != 0) return false;
    BigInt f = r.back() / qq.back();
    std::size_t shift = r.size() - qq.size();
    out[shift] = f;
    for (std::size_t i = 0; i < qq.size(); ++i) r[shift + i] -= f * qq[i];
    poly_trim(r);
    if (r.empty()) break;
  }
  poly_trim(out);
  if (quot) *quot = out;
  if (rem) *rem = r;
  return true;
}
}  // namespace

Poly poly_div_exact(const Poly& p, const Poly& q) {
  Poly quot, rem;
  bool ok = poly_divmod(p, q, &quot, &rem);
  assert(ok && rem.empty());
  (void)ok;
  return quot;
}

bool poly_divides(const Poly& q, const Poly& p) {
  Poly quot, rem;
  if (!poly_divmod(p, q, &quot, &rem)) return false;
  return rem.empty();
}

std::string poly_to_string(const Poly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = int(p.size()) - 1; i >= 0; --i) {
    if (p[i] == 0) continue;
    if (!first) os << (p[i] > 0 ? " + " : " - ");
    else if (p[i] < 0) os << "-";
    BigInt mag = abs(p[i]);
    if (mag != 1 || i == 0) os << mag;
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

Poly cyclotomic(int n) {
  static std::map<int, Poly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by all proper cyclotomic factors.
  Poly p(std::size_t(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, cyclotomic(d));
  cache[n] = p;
  return p;
}

namespace {
int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}
}  // namespace

std::vector<int> cyclotomic_indices(int max_degree) {
  // phi(n) >= sqrt(n/2), so phi(n) <= K forces n <= 2K^2 (+ small slack).
  std::vector<int> out;
  int cap = std::max(6, 2 * max_degree * max_degree + 2);
  for (int n = 1; n <= cap; ++n)
    if (euler_phi(n) <= max_degree) out.push_back(n);
  return out;
}

MatrixClass classify_matrix(const IntMatrix& A) {
  int n = A.dim();
  assert(n >= 1);
  Poly residual = A.char_poly();
  std::vector<long long> orders;
  bool changed = true;
  std::vector<int> candidates = cyclotomic_indices(n);
  while (changed && residual.size() > 1) {
    changed = false;
    for (int d : candidates) {
      Poly cd = cyclotomic(d);
      if (cd.size() > residual.size()) continue;
      while (poly_divides(cd, residual)) {
        residual = poly_div_exact(residual, cd);
        orders.push_back(d);
        changed = true;
      }
    }
  }
  MatrixClass out;
  if (residual.size() > 1) {
    // A monic integer polynomial all of whose roots lie on the unit circle is
    // a product of cyclotomics (Kronecker), so the residual certifies an
    // eigenvalue off the circle.
    out.kind = MatrixClassKind::NonUnitEigenvalue;
    out.non_cyclotomic_factor = residual;
    return out;
  }
  long long N = 1;
  for (long long d : orders) N = std::lcm(N, d);
  if (A.pow(N).is_identity()) {
    out.kind = MatrixClassKind::FiniteOrder;
    // Minimal order divides N; scan divisors ascending.
    long long best = N;
    for (long long d = 1; d * d <= N; ++d) {
      if (N % d != 0) continue;
      if (A.pow(d).is_identity()) {
        best = d;
        break;
      }
      long long e = N / d;
      if (e != d && A.pow(e).is_identity() && e < best) best = e;
    }
    out.order = best;
    return out;
  }
  out.kind = MatrixClassKind::UnitParabolic;
  out.unipotent_power = N;
  IntMatrix nil = A.pow(N);
  for (int i = 0; i < n; ++i) nil.at(i, i) -= 1;
  IntMatrix pw = nil;
  int c = 1;
  while (!(pw == IntMatrix(n))) {
    pw = pw * nil;
    ++c;
    assert(c <= n);
  }
  out.nilpotency = c;
  return out;
}

namespace {
// Extended gcd: returns g and (u, v) with a*u + b*v == g, g >= 0.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt* u, BigInt* v) {
  if (b == 0) {
    *u = (a >= 0) ? 1 : -1;
    *v = 0;
    return abs(a);
  }
  BigInt u1, v1;
  BigInt g = ext_gcd(b, a % b, &u1, &v1);
  *u = v1;
  *v = u1 - (a / b) * v1;
  return g;
}
}  // namespace

ParabolicForm parabolic_normalize(const IntMatrix& A) {
  assert(A.dim() == 2);
  MatrixClass cls = classify_matrix(A);
  assert(cls.kind == MatrixClassKind::UnitParabolic);
  ParabolicForm out;
  out.k = cls.unipotent_power;
  IntMatrix M = A.pow(out.k);
  BigInt a = M.at(0, 0) - 1, b = M.at(0, 1);
  BigInt c = M.at(1, 0), d = M.at(1, 1) - 1;
  assert(a + d == 0);  // nonzero nilpotent 2x2 has trace 0
  (void)d;
  // Primitive kernel vector (p, q) of N = [[a, b], [c, -a]].
  BigInt p, q;
  if (a == 0 && b == 0) {
    p = 0;
    q = 1;
  } else {
    p = -b;
    q = a;
    BigInt g = gcd(abs(p), abs(q));
    assert(g != 0);
    p /= g;
    q /= g;
  }
  BigInt u, v;
  BigInt g = ext_gcd(p, q, &u, &v);
  assert(g == 1);
  BigInt s = u, r = -v;  // p*s - q*r == 1
  IntMatrix B(2);
  B.at(0, 0) = p;
  B.at(0, 1) = r;
  B.at(1, 0) = q;
  B.at(1, 1) = s;
  assert(B.det() == 1);
  out.B = B;
  out.alpha = 2 * a * r * s + b * s * s - c * r * r;
  IntMatrix check = B.unimodular_inverse() * M * B;
  IntMatrix want = IntMatrix::identity(2);
  want.at(0, 1) = out.alpha;
  assert(check == want);
  assert(out.alpha != 0);
  return out;
}

IntMatrix gl2_gen_matrix(Gl2Gen g) {
  switch (g) {
    case Gl2Gen::L:
      return IntMatrix::from_rows({{1, 0}, {1, 1}});
    case Gl2Gen::Linv:
      return IntMatrix::from_rows({{1, 0}, {-1, 1}});
    case Gl2Gen::U:
      return IntMatrix::from_rows({{1, 1}, {0, 1}});
    case Gl2Gen::Uinv:
      return IntMatrix::from_rows({{1, -1}, {0, 1}});
    case Gl2Gen::Swap:
      return IntMatrix::from_rows({{0, 1}, {1, 0}});
    case Gl2Gen::NegA:
      return IntMatrix::from_rows({{-1, 0}, {0, 1}});
  }
  std::abort();
}

namespace {
Gl2Gen gl2_inverse_tag(Gl2Gen g) {
  switch (g) {
    case Gl2Gen::L:
      return Gl2Gen::Linv;
    case Gl2Gen::Linv:
      return Gl2Gen::L;
    case Gl2Gen::U:
      return Gl2Gen::Uinv;
    case Gl2Gen::Uinv:
      return Gl2Gen::U;
    case Gl2Gen::Swap:
      return Gl2Gen::Swap;
    case Gl2Gen::NegA:
      return Gl2Gen::NegA;
  }
  std::abort();
}

long long to_small(const BigInt& x) {
  assert(x <= 1000000 && x >= -1000000);
  return x.convert_to<long long>();
}
}  // namespace

std::vector<Gl2Gen> gl2_decompose(const IntMatrix& Bin) {
  assert(Bin.dim() == 2);
  BigInt dt = Bin.det();
  assert(dt == 1 || dt == -1);
  IntMatrix C = Bin;
  std::vector<Gl2Gen> applied;  // left multipliers, in application order
  auto row_op = [&](Gl2Gen g) {
    switch (g) {
      case Gl2Gen::L:  // row1 += row0
        C.at(1, 0) += C.at(0, 0);
        C.at(1, 1) += C.at(0, 1);
        break;
      case Gl2Gen::Linv:  // row1 -= row0
        C.at(1, 0) -= C.at(0, 0);
        C.at(1, 1) -= C.at(0, 1);
        break;
      case Gl2Gen::U:  // row0 += row1
        C.at(0, 0) += C.at(1, 0);
        C.at(0, 1) += C.at(1, 1);
        break;
      case Gl2Gen::Uinv:  // row0 -= row1
        C.at(0, 0) -= C.at(1, 0);
        C.at(0, 1) -= C.at(1, 1);
        break;
      case Gl2Gen::Swap:
        std::swap(C.at(0, 0), C.at(1, 0));
        std::swap(C.at(0, 1), C.at(1, 1));
        break;
      case Gl2Gen::NegA:
        C.at(0, 0) = -C.at(0, 0);
        C.at(0, 1) = -C.at(0, 1);
        break;
    }
    applied.push_back(g);
  };
  while (C.at(1, 0) != 0) {
    if (C.at(0, 0) == 0) {
      row_op(Gl2Gen::Swap);
      continue;
    }
    BigInt q = C.at(1, 0) / C.at(0, 0);
    if (q == 0) {
      row_op(Gl2Gen::Swap);
      continue;
    }
    long long reps = to_small(abs(q));
    Gl2Gen step = (q > 0) ? Gl2Gen::Linv : Gl2Gen::L;
    for (long long i = 0; i < reps; ++i) row_op(step);
  }
  BigInt d0 = C.at(0, 0), d1 = C.at(1, 1);
  assert((d0 == 1 || d0 == -1) && (d1 == 1 || d1 == -1));
  if (C.at(0, 1) != 0) {
    BigInt q = C.at(0, 1) * d1;  // q * d1 == C(0,1) since d1 = +-1
    long long reps = to_small(abs(q));
    Gl2Gen step = (q > 0) ? Gl2Gen::Uinv : Gl2Gen::U;
    for (long long i = 0; i < reps; ++i) row_op(step);
  }
  if (C.at(0, 0) == -1) row_op(Gl2Gen::NegA);
  if (C.at(1, 1) == -1) {
    // [[1,0],[0,-1]] == Swap * NegA * Swap
    row_op(Gl2Gen::Swap);
    row_op(Gl2Gen::NegA);
    row_op(Gl2Gen::Swap);
  }
  assert(C.is_identity());
  // (M_r ... M_1) B == I, so B == M_1^-1 ... M_r^-1: invert each applied
  // left multiplier, keeping the application order.
  std::vector<Gl2Gen> out;
  for (Gl2Gen g : applied) out.push_back(gl2_inverse_tag(g));
  IntMatrix check = IntMatrix::identity(2);
  for (Gl2Gen g : out) check = check * gl2_gen_matrix(g);
  assert(check == Bin);
  return out;
}

namespace {
Poly poly_primitive(Poly p) {
  poly_trim(p);
  if (p.empty()) return p;
  BigInt g = 0;
  for (const BigInt& c : p) g = gcd(g, c);
  if (p.back() < 0) g = -g;
  for (BigInt& c : p) c /= g;
  return p;
}

// Primitive polynomial remainder sequence; inputs and output primitive with
// positive leading coefficient.
Poly poly_gcd_primitive(Poly a, Poly b) {
  a = poly_primitive(std::move(a));
  b = poly_primitive(std::move(b));
  while (!b.empty()) {
    Poly r = std::move(a);
    while (!r.empty() && r.size() >= b.size()) {
      const BigInt la = r.back(), lb = b.back();
      const std::size_t shift = r.size() - b.size();
      for (BigInt& c : r) c *= lb;
      for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= la * b[i];
      poly_trim(r);
    }
    a = std::move(b);
    b = poly_primitive(std::move(r));
  }
  return a;
}

// p / gcd(p, p'): the same roots, all simple.  Content is dropped, which
// leaves the root set untouched.
Poly poly_square_free(Poly p) {
  poly_trim(p);
  if (p.size() <= 2) return p;
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = BigInt(i) * p[i];
  const Poly g = poly_gcd_primitive(p, d);
  if (g.size() <= 1) return p;
  return poly_div_exact(poly_primitive(std::move(p)), g);
}
}  // namespace

std::vector<std::complex<double>> poly_roots(const Poly& p) {
  Poly q = poly_square_free(p);
  if (q.size() <= 1) return {};
  int d = int(q.size()) - 1;
  double lead = q.back().convert_to<double>();
  std::vector<std::complex<double>> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = q[i].convert_to<double>() / lead;
  std::vector<std::complex<double>> roots(d);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (int i = 0; i < d; ++i) {
    acc *= seed;
    roots[i] = acc;
  }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> val = c[d];
    for (int i = d - 1; i >= 0; --i) val = val * x + c[i];
    return val;
  };
  for (int iter = 0; iter < 400; ++iter) {
    double move = 0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-14) break;
  }
  return roots;
}

bool has_root_off_unit_circle(const Poly& p, double tol) {
  for (auto r : poly_roots(p))
    if (std::abs(std::abs(r) - 1.0) > tol) return true;
  return false;
}

}  // namespace mtdehn
