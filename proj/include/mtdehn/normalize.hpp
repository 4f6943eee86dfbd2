#pragma once

// Normal forms for the monodromy automorphisms, with exact witnesses.
//
// Every normalization below is a finite sequence of three moves applied to a
// working automorphism Xi (initially the input Psi):
//
//   twist(u):       Xi := iota_u . Xi            (iota_u(x) = u^-1 x u)
//   take_power(p):  Xi := Xi^p                   (p >= 1)
//   frame(C):       Xi := C^-1 . Xi . C          (basis change by C)
//
// The moves compose into the single invariant
//
//   Xi == iota_w . eta^-1 . Psi^K . eta
//
// for a conjugator w, an exponent K >= 1 and a frame automorphism eta, which
// is what OuterWitness records and witness_verifies checks generator by
// generator.  Mapping tori are unchanged by all three moves up to
// commensurability and basis choice, so the Dehn-function class of the
// normalized map is the class of the input.

#include <optional>
#include <string>

#include "mtdehn/autos.hpp"
#include "mtdehn/intmat.hpp"
#include "mtdehn/words.hpp"

namespace mtdehn {

// Exact certificate: normal == iota_h . frame^-1 . input^k . frame.
struct OuterWitness {
  Elem h;
  long long k = 1;
  Automorphism frame;
};

bool witness_verifies(const Automorphism& normal, const Automorphism& input,
                      const OuterWitness& w);

// Accumulates twist / take_power / frame moves against a fixed input,
// maintaining current() together with the witness for it.  Every move
// re-checks the invariant exactly (cheap: the generator images are small).
class WitnessTracker {
 public:
  explicit WitnessTracker(const Automorphism& input);

  void twist(const Elem& u);
  void take_power(long long p);
  void frame(const Automorphism& C);

  const Automorphism& current() const { return cur_; }
  OuterWitness witness() const { return {w_, K_, eta_}; }

 private:
  void check() const;

  Automorphism input_;
  Automorphism eta_;
  Automorphism cur_;
  Elem w_;
  long long K_ = 1;
};

// ---------------------------------------------------------------------------
// F2 x Z = <a, b> x <c>.
//
// The normal form fixes c, its base automorphism phi fixes [a,b] letter for
// letter, and the central exponents (k_a, k_b) record the images
// a -> phi(a) c^{k_a}, b -> phi(b) c^{k_b}.  The base is classified by its
// abelianization:
//   NonUnitEigenvalue : phi kept as reached (exponentially growing base);
//   UnitParabolic     : phi == zeta_beta : a -> b^beta a, b -> b, beta >= 1;
//   FiniteOrder       : phi == identity.
struct NormalFormF2xZ {
  MatrixClassKind case_tag = MatrixClassKind::FiniteOrder;
  long long beta = 0;  // UnitParabolic only
  long long k_a = 0;
  long long k_b = 0;
  FreeAut base;         // fixes [a,b] letter for letter
  Automorphism normal;  // f2xz_aut(base, {k_a, k_b}, +1)
  OuterWitness witness;
};

// Fails only when the input is not an automorphism of F2 x Z (e.g. the image
// of c is not c^{+-1}).  All internal steps are verified with live asserts.
std::optional<NormalFormF2xZ> normalize_f2xz(const Automorphism& psi,
                                             std::string* err = nullptr);

// ---------------------------------------------------------------------------
// Z^2 * Z = <a, b | [a,b]> * <c>.
//
// The normal form preserves the abelian factor, acts on it by the matrix xi
// (columns are images), and sends c -> c a^l b^m.  xi is classified like the
// base above:
//   FiniteOrder       : xi == identity;
//   UnitParabolic     : xi == [[1,0],[k,1]], i.e. a -> a b^k, b -> b, k >= 1;
//   NonUnitEigenvalue : xi kept as reached.
// For the first two cases the normal form matches the presentation
// pres_mklm(k, l, m) (with k = 0 in the periodic case).
struct NormalFormZ2astZ {
  MatrixClassKind case_tag = MatrixClassKind::FiniteOrder;
  IntMatrix xi = IntMatrix::identity(2);
  long long k = 0;  // UnitParabolic only
  long long l = 0;  // c -> c a^l b^m
  long long m = 0;
  Automorphism normal;
  OuterWitness witness;
};

// Fails when some image does not conjugate into the expected factor (odd
// alternation length, mixed images, or the image of c missing a single
// c^{+-1} syllable) -- none of which a genuine automorphism can produce.
std::optional<NormalFormZ2astZ> normalize_z2astz(const Automorphism& psi,
                                                 std::string* err = nullptr);

// ---------------------------------------------------------------------------
// F_k x F_l.
//
// The square of any automorphism preserves both factors, so the witness
// always has k = 2 and a trivial conjugator: psi^2 == phi1 x phi2.
struct FactorDecomposition {
  FreeAut phi1;
  FreeAut phi2;
  OuterWitness witness;
};

std::optional<FactorDecomposition> decompose_fkxfl(const Automorphism& psi,
                                                   std::string* err = nullptr);

}  // namespace mtdehn
