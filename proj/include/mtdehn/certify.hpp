#pragma once
// Independent evidence for Dehn-function classifications:
//   - witness-word lower bounds (corridor sums over an explicit word family),
//   - centralizer-growth lower bounds (n^2 times an orbit length),
//   - t-shuffle upper-bound ledgers (push every stable letter rightward),
//   - an exact brute-force area oracle for tiny instances.
//
// The oracle implements the van Kampen area of a word by shortest-path
// search: states are freely reduced words of bounded length, and one move
// inserts any cyclic rotation of any defining relator (or its inverse) at
// any position, then freely reduces.  All verdicts are relative to the
// stated length cap: "exact" means no shorter filling exists through
// words within the cap.  The monotonicity of verdicts under enlarged caps
// is part of the test suite rather than assumed.

#include <optional>
#include <string>
#include <vector>

#include "mtdehn/autos.hpp"
#include "mtdehn/growth.hpp"
#include "mtdehn/words.hpp"

namespace mtdehn {

// ---------------------------------------------------------------------------
// Finite presentations.

struct Presentation {
  std::vector<std::string> names;
  std::vector<Letters> relators;  // freely and cyclically reduced
};

// <a, t | [a, t]>.
Presentation pres_z2();
// <a, c, t | a^t = a, c^t = c a^l>.
Presentation pres_ql(long long l);
// pres_ql(1) with the stable letter written tau.
Presentation pres_q1_tau();
// <a, b, c, t | [a, b] = 1, a^t = a b^k, b^t = b, c^t = c a^l b^m>.
Presentation pres_mklm(long long k, long long l, long long m);
// Base-group commutation relators plus t^-1 x t (phi(x))^-1 per generator.
// The stable letter t is the last generator.
Presentation mapping_torus(const Automorphism& phi);

// ---------------------------------------------------------------------------
// Witness-word lower bounds for product groups (F_k x F_l) ; Z.
//
//   w_n = t^{-4n} y^n t^{4n} x^n t^{-4n} y^{-n} t^{4n} x^{-n}
//
// assembled literally over x-letters 0..k-1, y-letters k..k+l-1, and
// t = k+l.  Any filling is forced to contain, for each i in [n, 2n-1], a
// corridor of boundary cost at least n*min(||phi1^{-i}(x)||, ||phi2^i(y)||);
// the total is an area lower bound.

struct WitnessFamily {
  int n = 0;
  FreeWord x, y;                      // probes, local factor indices
  Letters word;                       // w_n; freely reduced as written
  std::vector<BigInt> corridor_terms; // one per i in [n, 2n-1]
  BigInt total = 0;
};

std::optional<WitnessFamily> witness_lower_bound(
    const FreeAut& phi1, const FreeAut& phi2, int n, const FreeWord& x,
    const FreeWord& y, long long word_budget = kDefaultWordBudget,
    std::string* err = nullptr);

// ---------------------------------------------------------------------------
// Centralizer-orbit lower bound: n^2 * max_i max(|phi^n(k_i)|, |phi^-n(k_i)|)
// for an abelian phi-invariant subgroup K given by generator indices.

std::optional<BigInt> bg_lower_bound(const Automorphism& phi,
                                     const std::vector<int>& k_gens, int n,
                                     long long word_budget = kDefaultWordBudget,
                                     std::string* err = nullptr);

// ---------------------------------------------------------------------------
// t-shuffle: scan w right to left, maintaining the invariant that the
// suffix processed so far equals u * t^s with u in the base group.  A base
// letter multiplies onto u; crossing t^{+1} applies phi^-1 to u, crossing
// t^{-1} applies phi.  Each crossing of a nonempty u is one ledger stage
// (one block of conjugation-relator applications).  If s = 0 and u is
// trivial in the base group, w = 1 is certified.

struct ShuffleStage {
  int position = 0;           // index of the crossed t^{+-1} in w
  std::string relator;        // "phi" or "phi^-1"
  long long before_length = 0;
  long long after_length = 0;
};

std::string shuffle_stage_line(const ShuffleStage& st);  // "(pos, rel, b, a)"

struct ShuffleCertificate {
  Letters input;
  Elem final_base;            // u
  long long final_t_exponent = 0;  // s; always the t-exponent sum of w
  long long count = 0;        // ledger stages
  std::vector<ShuffleStage> ledger;
  long long growth_constant = 1;  // C = max generator image length, both ways
  bool certified = false;     // s == 0 and u trivial
  bool budget_exceeded = false;
  std::string error;          // set when budget_exceeded
};

// w is over the base generators of phi.ctx plus the stable letter, encoded
// as generator index phi.ctx.n_gens().
ShuffleCertificate t_shuffle(const Automorphism& phi, const Letters& w,
                             long long length_budget = kDefaultWordBudget);

// ---------------------------------------------------------------------------
// Area oracle.

enum class OracleStatus {
  Exact,                 // minimal filling area within the length cap
  Bracket,               // budget ran out: area (within cap) >= lower
  NotFillableWithinCap,  // no filling exists through words within the cap
};

struct OracleResult {
  OracleStatus status = OracleStatus::Bracket;
  long long area = -1;     // when Exact
  long long lower = 0;     // when Bracket
  long long explored = 0;  // states expanded
  int l_max = 0;
  long long budget = 0;
};

constexpr long long kDefaultOracleBudget = 5'000'000;

// w must be over pres' generators with |reduced w| <= l_max.
// l_max <= 0 selects the default |w| + 6.
OracleResult area_oracle(const Letters& w, const Presentation& pres,
                         int l_max = 0,
                         long long budget = kDefaultOracleBudget);

}  // namespace mtdehn
