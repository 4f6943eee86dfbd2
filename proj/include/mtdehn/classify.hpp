#pragma once

// Dehn-function classification of the mapping torus G x|_psi Z.
//
// Verdicts are filling-function classes up to the usual equivalence of Dehn
// functions: Quadratic (n^2), Cubic (n^3), Polynomial (n^d, d >= 4),
// Exponential, or a Bracket [lo, hi] when the available certificates pin the
// function between two classes but not to one.  Each verdict carries a plain
// description of the case that fired, a snapshot of the normal form or
// growth data it was read from, and a flag marking decisions that consumed
// an empirical growth fit rather than an exact certificate.

#include <optional>
#include <string>

#include "mtdehn/autos.hpp"
#include "mtdehn/intmat.hpp"
#include "mtdehn/normalize.hpp"

namespace mtdehn {

enum class DehnKind { Linear, Quadratic, Cubic, Polynomial, Exponential, Bracket };

std::string dehn_kind_name(DehnKind k);

struct DehnClass {
  DehnKind kind = DehnKind::Bracket;
  // Polynomial-type verdicts (Quadratic / Cubic / Polynomial) carry the
  // degree (2, 3, d >= 4); other kinds leave it 0.
  int degree = 0;
  // Bracket verdicts carry the enclosing classes.
  DehnKind bracket_lo = DehnKind::Quadratic;
  DehnKind bracket_hi = DehnKind::Cubic;
  std::string provenance;
  std::string normal_form;
  bool heuristic = false;
};

// "n^2", "n^5", "exponential", "between n^2 and n^3", ...
std::string dehn_class_brief(const DehnClass& c);

// Z^k by the base matrix (columns are generator images, |det| = 1):
// exponential off the unit circle, otherwise n^{c+1} for the largest
// unipotent block c.
DehnClass classify_zk(const IntMatrix& A);

// F_2: quadratic for every monodromy (the commutator class is preserved up
// to conjugacy and inversion, so no monodromy is atoroidal).
DehnClass classify_f2(const FreeAut& f);

std::optional<DehnClass> classify_f2xz(const Automorphism& psi,
                                       std::string* err = nullptr);

std::optional<DehnClass> classify_z2astz(const Automorphism& psi,
                                         std::string* err = nullptr);

// Factor growth is exact for rank-2 factors and for certified periodic
// factors; otherwise an empirical fit is consumed and the verdict is marked
// heuristic.  Fails when a factor fit is inconclusive.
std::optional<DehnClass> classify_fkxfl(const Automorphism& psi,
                                        std::string* err = nullptr);

// F_k x Z, k >= 3: the unconditional verdict is the bracket [n^2, n^3].  A
// twist witness w (a word in the free factor) is checked exactly against
// the squared map, which always fixes c: psi^2(w) == w c^m with m != 0
// tightens the verdict to Cubic.  A failing witness is reported through
// witness_note and the bracket stands.
DehnClass classify_fkxz(const Automorphism& psi,
                        const std::optional<FreeWord>& twist_witness = {},
                        std::string* witness_note = nullptr);

// Dispatch on psi.ctx.kind; the Z^k and F_2 cases extract the raw data the
// dedicated entry points take.
std::optional<DehnClass> classify_any(const Automorphism& psi,
                                      const std::optional<FreeWord>& fkxz_witness = {},
                                      std::string* err = nullptr,
                                      std::string* witness_note = nullptr);

}  // namespace mtdehn
