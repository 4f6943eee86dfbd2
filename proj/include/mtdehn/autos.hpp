#pragma once
// Group contexts, canonical element representations, and automorphisms for
// the six supported group kinds, plus pure free-group automorphisms used by
// growth estimation and certification.
//
// Conventions used throughout the library:
//   a^t      := t^-1 a t
//   [a,b]    := a^-1 b^-1 a b
//   iota_h   := the inner automorphism x -> h^-1 x h
// so iota_v . iota_w = iota_{wv} and phi . iota_w = iota_{phi(w)} . phi.
// Matrices use the column convention: column i is the image of generator i
// in the abelianization, so abelianization(f . g) = A_f * A_g.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtdehn/intmat.hpp"
#include "mtdehn/words.hpp"

namespace mtdehn {

enum class GroupKind { Zk, F2, F2xZ, Z2astZ, FkxFl, FkxZ };

std::string group_kind_name(GroupKind k);

// Generator layout per kind:
//   Zk:     x1..xk            (0..k-1)
//   F2:     a, b              (0, 1)
//   F2xZ:   a, b, c           (0, 1, 2; c central)
//   Z2astZ: a, b, c           (0, 1, 2; only [a,b] = 1)
//   FkxFl:  x1..xk, y1..yl    (0..k-1, k..k+l-1; cross-factor commuting)
//   FkxZ:   x1..xk, c         (0..k-1, k; c central)
struct GroupContext {
  GroupKind kind = GroupKind::F2;
  int rank1 = 2;
  int rank2 = 0;

  static GroupContext zk(int k);
  static GroupContext f2();
  static GroupContext f2xz();
  static GroupContext z2astz();
  static GroupContext fkxfl(int k, int l);
  static GroupContext fkxz(int k);

  int n_gens() const;
  std::string gen_name(int g) const;
  int gen_index(const std::string& name) const;  // -1 if unknown
  std::vector<std::string> gen_names() const;
  // Index of the central/second-factor boundary: first generator NOT in the
  // first free factor (Zk/F2: n_gens()).
  int split_index() const;
  bool operator==(const GroupContext& o) const {
    return kind == o.kind && rank1 == o.rank1 && rank2 == o.rank2;
  }
  bool operator!=(const GroupContext& o) const { return !(*this == o); }
};

// Commuting generator pairs imposed by the defining relations of the kind.
// Zk imposes every pair but is validated through its matrix, so Zk (like F2)
// reports none here.
std::vector<std::pair<int, int>> commuting_pairs(const GroupContext& ctx);

// Canonical element of the group named by a GroupContext. Exactly the fields
// relevant to the kind are used; the representation is a normal form, so
// operator== is group-element equality.
struct Elem {
  FreeWord first;               // F2 whole word; F2xZ/FkxZ free part; FkxFl X part
  FreeWord second;              // FkxFl Y part (letters keep global indices)
  long long central = 0;        // F2xZ/FkxZ exponent of c
  AlternatingWord alt;          // Z2astZ normal form
  std::vector<long long> vec;   // Zk exponent vector

  bool operator==(const Elem& o) const {
    return first == o.first && second == o.second && central == o.central &&
           alt == o.alt && vec == o.vec;
  }
  bool operator!=(const Elem& o) const { return !(*this == o); }
};

Elem elem_identity(const GroupContext& ctx);
Elem elem_gen(const GroupContext& ctx, int g, long long e = 1);
Elem elem_from_letters(const GroupContext& ctx, const std::vector<Letter>& ls);
std::vector<Letter> elem_letters(const GroupContext& ctx, const Elem& x);
Elem elem_mul(const GroupContext& ctx, const Elem& x, const Elem& y);
Elem elem_inverse(const GroupContext& ctx, const Elem& x);
Elem elem_conjugate(const GroupContext& ctx, const Elem& x, const Elem& h);  // h^-1 x h
Elem elem_pow(const GroupContext& ctx, const Elem& x, long long e);
bool elem_trivial(const GroupContext& ctx, const Elem& x);
long long elem_length(const GroupContext& ctx, const Elem& x);
bool elem_commute(const GroupContext& ctx, const Elem& x, const Elem& y);
std::string elem_to_string(const GroupContext& ctx, const Elem& x);
std::optional<Elem> parse_elem(const GroupContext& ctx, const std::string& text,
                               std::string* err);

// Automorphism given by generator images plus REQUIRED inverse images; the
// validator makes wrong inverses impossible, so inverses are never computed
// from scratch for user input (internal constructions derive them exactly).
struct Automorphism {
  GroupContext ctx;
  std::vector<Elem> img;
  std::vector<Elem> inv_img;
};

Automorphism identity_aut(const GroupContext& ctx);
Automorphism inner_aut(const GroupContext& ctx, const Elem& h);
Automorphism make_aut(const GroupContext& ctx, std::vector<Elem> img,
                      std::vector<Elem> inv_img);
// Checks: images of commuting generators commute (exact reduction), and the
// two-sided inverse property on every generator. Reports the first failing
// generator by name.
bool validate_aut(const Automorphism& a, std::string* err);
Elem aut_apply(const Automorphism& a, const Elem& x);
Elem aut_apply_inverse(const Automorphism& a, const Elem& x);
Automorphism aut_compose(const Automorphism& f, const Automorphism& g);  // x -> f(g(x))
Automorphism aut_inverse(const Automorphism& a);
Automorphism aut_power(const Automorphism& a, long long e);  // any sign
bool aut_equal(const Automorphism& a, const Automorphism& b);
// phi == iota_h . psi^k, verified exactly on every generator.
bool outer_equal(const Automorphism& phi, const Automorphism& psi, const Elem& h,
                 long long k);

// ---------------------------------------------------------------------------
// Pure free-group automorphisms (local generator indices 0..rank-1).

struct FreeAut {
  int rank = 0;
  std::vector<FreeWord> img;
  std::vector<FreeWord> inv_img;
};

FreeAut free_identity(int rank);
FreeAut free_inner(int rank, const FreeWord& h);  // x -> h^-1 x h
bool free_validate(const FreeAut& f, std::string* err);
FreeWord free_apply(const FreeAut& f, const FreeWord& w);
FreeWord free_apply_inverse(const FreeAut& f, const FreeWord& w);
FreeAut free_compose(const FreeAut& f, const FreeAut& g);  // x -> f(g(x))
FreeAut free_inverse(const FreeAut& f);
FreeAut free_power(const FreeAut& f, long long e);
bool free_equal(const FreeAut& f, const FreeAut& g);
// Columns are images: abelianization(f . g) = A_f * A_g.
IntMatrix abelianization(const FreeAut& f);
// If f == iota_g for some g, returns one such g (verified); else nullopt.
std::optional<FreeWord> free_inner_extract(const FreeAut& f);
// Nielsen lift: returned f has abelianization(f) == B (|det B| = 1, 2x2).
FreeAut matrix_to_aut_f2(const IntMatrix& B);
// Relabel generators by a fixed offset (for embedding factor words).
FreeWord relabel(const FreeWord& w, int delta);

// ---------------------------------------------------------------------------
// Bridges between Automorphism and the per-kind raw data.

// For F2xZ / FkxZ: Psi(x_i) = base(x_i) * c^{k_i}, Psi(c) = c^{c_sign}.
// Fails (with message) if Psi(c) is not c^{+-1}.
struct InducedMaps {
  FreeAut base;
  std::vector<long long> c_exps;
  int c_sign = 1;
};
std::optional<InducedMaps> induced_maps(const Automorphism& a, std::string* err);

// Restriction of `a` to the free-abelian subgroup generated by `gens`
// (indices into ctx generators, pairwise commuting). Columns follow the order
// of `gens`. Fails if some image leaves the subgroup (non-invariant K).
std::optional<IntMatrix> abelian_restriction(const Automorphism& a,
                                             const std::vector<int>& gens,
                                             std::string* err);

// FkxFl: restriction to factor 1 (X) or 2 (Y), local indices; fails if some
// image mixes factors.
std::optional<FreeAut> factor_restriction(const Automorphism& a, int which,
                                          std::string* err);

// Constructors for structured automorphisms (inverses derived exactly).
Automorphism zk_aut(const IntMatrix& A);
IntMatrix zk_matrix(const Automorphism& a);
Automorphism f2xz_frame(const FreeAut& f);              // a,b by f; c -> c
Automorphism z2astz_frame(const IntMatrix& B);          // Z^2 by B; c -> c
Automorphism product_aut(const GroupContext& ctx, const FreeAut& f1,
                         const FreeAut& f2);            // FkxFl, factor-wise
Automorphism f2xz_aut(const FreeAut& base, const std::vector<long long>& c_exps,
                      int c_sign);                      // x_i -> base(x_i) c^{k_i}

}  // namespace mtdehn
