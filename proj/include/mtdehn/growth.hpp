#pragma once
// Growth and cyclically-reduced growth of free-group automorphisms: exact
// length series for iterated images (with a cancellation-free certificate that
// extends the series beyond what can be materialized), exact classification in
// rank 2 via GL(2,Z), empirical degree estimation in higher rank.

#include <optional>
#include <string>
#include <vector>

#include "mtdehn/autos.hpp"
#include "mtdehn/intmat.hpp"
#include "mtdehn/words.hpp"

namespace mtdehn {

inline constexpr long long kDefaultWordBudget = 200000;
inline constexpr int kDefaultGrowthNMax = 64;

// Exact |f^n(seed)| and ||f^n(seed)|| for n = 0..n_max.  Entries up to
// materialized_upto come from literal iteration.  When the next word would
// exceed word_budget, the tail is produced by an exact letter-count recursion,
// valid because a closure certificate shows no free cancellation can occur at
// any image junction (including the cyclic wrap) from that point on; in that
// regime every word is cyclically reduced, so cyc == len.  If the certificate
// is unattainable, the call fails naming the first n that overflows.
struct LengthSeries {
  std::vector<BigInt> len;
  std::vector<BigInt> cyc;
  int materialized_upto = 0;
  bool certified_tail = false;
};

std::optional<LengthSeries> iterate_lengths(const FreeAut& f, const FreeWord& seed,
                                            int n_max, long long word_budget,
                                            std::string* err);

// Generators then commutators [x_i, x_j], i < j.
std::vector<FreeWord> default_probes(int rank);

// Printable generator names for a bare free group: a, b for rank 2, else x1...
std::vector<std::string> free_gen_names(int rank);

// Per-probe length series in both directions (f^n and f^-n).
struct GrowthTable {
  int n_max = 0;
  int rank = 0;
  std::vector<FreeWord> sample;  // first `rank` entries are the generators
  std::vector<LengthSeries> fwd;
  std::vector<LengthSeries> bwd;

  // g_{f,X}(n): max forward image length over the generator probes.
  BigInt g(int n) const;
  // Max cyclic length over all probes and both directions.
  BigInt max_cyclic(int n) const;
};

std::optional<GrowthTable> growth_table(const FreeAut& f, int n_max,
                                        const std::vector<FreeWord>& extra_probes,
                                        long long word_budget, std::string* err);

// Columns: n, then per probe the four series len/cyc forward/backward.
std::string growth_table_csv(const GrowthTable& t);

enum class GrowthKind { Periodic, Polynomial, Exponential };
enum class Exactness { Exact, Heuristic };

std::string growth_kind_name(GrowthKind k);

struct GrowthClass {
  GrowthKind kind = GrowthKind::Periodic;
  // Cyclic growth degree decides the kind (degree 0 <=> Periodic); the basis
  // degree is recorded separately (an inner twist of a periodic map has
  // cyclic degree 0 but basis degree 1).
  int cyclic_degree = 0;
  int basis_degree = 0;
  Exactness exactness = Exactness::Heuristic;
  long long period = 0;  // Periodic with Exact: minimal p with [f^p] = [id]
};

// Exact rank-2 classification through the abelianization in GL(2,Z):
// finite order -> Periodic, parabolic -> Polynomial(1), else Exponential.
GrowthClass classify_growth_f2(const FreeAut& f);

// Searches p = 1..max_period for f^p inner; the witness g satisfies
// f^p = (x -> g^-1 x g), verified exactly.
struct PeriodicityCertificate {
  long long period = 0;
  FreeWord witness;
};
std::optional<PeriodicityCertificate> periodicity_certificate(const FreeAut& f,
                                                              int max_period = 12);

// Empirical classification from the upper half-window of a growth table;
// always Heuristic.  result is empty when the fit is inconclusive (the note
// and the table are still returned for inspection).
struct GrowthEstimate {
  std::optional<GrowthClass> result;
  GrowthTable table;
  std::string note;
};

GrowthEstimate estimate_growth(const FreeAut& f, int n_max = kDefaultGrowthNMax,
                               const std::vector<FreeWord>& extra_probes = {},
                               long long word_budget = kDefaultWordBudget);

// log2 of a positive big integer, exact to double precision.
double log2_big(const BigInt& x);

}  // namespace mtdehn
