#include "mtdehn/classify.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "mtdehn/growth.hpp"
#include "mtdehn/words.hpp"

namespace mtdehn {

namespace {

DehnClass poly_class(int degree) {
  assert(degree >= 2);
  DehnClass out;
  out.degree = degree;
  out.kind = degree == 2   ? DehnKind::Quadratic
             : degree == 3 ? DehnKind::Cubic
                           : DehnKind::Polynomial;
  return out;
}

DehnClass exp_class() {
  DehnClass out;
  out.kind = DehnKind::Exponential;
  return out;
}

std::string matrix_case_name(MatrixClassKind k) {
  switch (k) {
    case MatrixClassKind::FiniteOrder: return "periodic";
    case MatrixClassKind::UnitParabolic: return "parabolic";
    case MatrixClassKind::NonUnitEigenvalue: return "off-unit";
  }
  return "?";
}

std::string growth_brief(const GrowthClass& g) {
  std::string s;
  switch (g.kind) {
    case GrowthKind::Periodic:
      s = "periodic";
      if (g.period > 0) s += " (period " + std::to_string(g.period) + ")";
      break;
    case GrowthKind::Polynomial:
      s = "polynomial, cyclic degree " + std::to_string(g.cyclic_degree);
      break;
    case GrowthKind::Exponential:
      s = "exponential";
      break;
  }
  if (g.exactness == Exactness::Heuristic) s += " (heuristic)";
  return s;
}

// Exact for rank 2 and for certified periodic maps; otherwise the empirical
// fit, which may be inconclusive.
std::optional<GrowthClass> factor_growth(const FreeAut& f, std::string* err) {
  if (f.rank == 2) return classify_growth_f2(f);
  if (auto pc = periodicity_certificate(f)) {
    GrowthClass g;
    g.kind = GrowthKind::Periodic;
    g.exactness = Exactness::Exact;
    g.period = pc->period;
    return g;
  }
  GrowthEstimate est = estimate_growth(f);
  if (!est.result) {
    if (err) *err = "factor growth fit is inconclusive: " + est.note;
    return std::nullopt;
  }
  return *est.result;
}

FreeWord comm_ab() {
  return FreeWord({make_letter(0, -1), make_letter(1, -1), make_letter(0, +1),
                   make_letter(1, +1)});
}

}  // namespace

std::string dehn_kind_name(DehnKind k) {
  switch (k) {
    case DehnKind::Linear: return "linear";
    case DehnKind::Quadratic: return "quadratic";
    case DehnKind::Cubic: return "cubic";
    case DehnKind::Polynomial: return "polynomial";
    case DehnKind::Exponential: return "exponential";
    case DehnKind::Bracket: return "bracket";
  }
  return "?";
}

std::string dehn_class_brief(const DehnClass& c) {
  switch (c.kind) {
    case DehnKind::Linear: return "n";
    case DehnKind::Quadratic:
    case DehnKind::Cubic:
    case DehnKind::Polynomial:
      return "n^" + std::to_string(c.degree);
    case DehnKind::Exponential: return "exponential";
    case DehnKind::Bracket: {
      DehnClass lo, hi;
      lo.kind = c.bracket_lo;
      lo.degree = c.bracket_lo == DehnKind::Quadratic ? 2 : 3;
      hi.kind = c.bracket_hi;
      hi.degree = c.bracket_hi == DehnKind::Cubic ? 3 : 2;
      return "between " + dehn_class_brief(lo) + " and " + dehn_class_brief(hi);
    }
  }
  return "?";
}

DehnClass classify_zk(const IntMatrix& A) {
  assert(A.det() == 1 || A.det() == -1);
  const MatrixClass mc = classify_matrix(A);
  if (mc.kind == MatrixClassKind::NonUnitEigenvalue) {
    DehnClass out = exp_class();
    out.provenance = "abelian base: the base matrix has an eigenvalue off the unit circle";
    out.normal_form = "matrix class off-unit";
    return out;
  }
  const int block = mc.kind == MatrixClassKind::FiniteOrder ? 1 : mc.nilpotency;
  DehnClass out = poly_class(block + 1);
  if (mc.kind == MatrixClassKind::FiniteOrder) {
    out.provenance = "abelian base: periodic base matrix";
    out.normal_form = "matrix class periodic, order " + std::to_string(mc.order);
  } else {
    out.provenance = "abelian base: unit spectrum with largest unipotent block of size " +
                     std::to_string(block);
    out.normal_form = "matrix class parabolic, block " + std::to_string(block);
  }
  return out;
}

DehnClass classify_f2(const FreeAut& f) {
  assert(f.rank == 2);
  // Sanity: the squared map preserves the commutator up to conjugacy.
  const FreeWord comm = comm_ab();
  const FreeWord u = free_apply(free_compose(f, f), comm);
  assert(conjugacy_match(comm, u).has_value());
  (void)u;
  DehnClass out = poly_class(2);
  out.provenance =
      "rank-two free base: the commutator class is preserved, so no monodromy "
      "is atoroidal and the filling is quadratic";
  out.normal_form = "theta^2([a,b]) ~ [a,b]";
  return out;
}

std::optional<DehnClass> classify_f2xz(const Automorphism& psi,
                                       std::string* err) {
  auto nf = normalize_f2xz(psi, err);
  if (!nf) return std::nullopt;
  DehnClass out;
  switch (nf->case_tag) {
    case MatrixClassKind::NonUnitEigenvalue:
      out = poly_class(2);
      out.provenance =
          "F2 x Z base: the base automorphism grows exponentially; the "
          "filling stays quadratic";
      break;
    case MatrixClassKind::UnitParabolic:
      out = poly_class(nf->k_b != 0 ? 3 : 2);
      out.provenance =
          nf->k_b != 0
              ? "F2 x Z base: parabolic base with a central twist along the "
                "invariant direction"
              : "F2 x Z base: parabolic base with no central twist along the "
                "invariant direction";
      break;
    case MatrixClassKind::FiniteOrder:
      out = poly_class(nf->k_a != 0 || nf->k_b != 0 ? 3 : 2);
      out.provenance = nf->k_a != 0 || nf->k_b != 0
                           ? "F2 x Z base: periodic base with a surviving "
                             "central twist"
                           : "F2 x Z base: periodic base with a vanishing "
                             "central twist";
      break;
  }
  out.normal_form = "case=" + matrix_case_name(nf->case_tag) +
                    " beta=" + std::to_string(nf->beta) +
                    " k_a=" + std::to_string(nf->k_a) +
                    " k_b=" + std::to_string(nf->k_b);
  return out;
}

std::optional<DehnClass> classify_z2astz(const Automorphism& psi,
                                         std::string* err) {
  auto nf = normalize_z2astz(psi, err);
  if (!nf) return std::nullopt;
  DehnClass out;
  switch (nf->case_tag) {
    case MatrixClassKind::FiniteOrder:
      out = poly_class(2);
      out.provenance = "Z^2 * Z base: periodic abelian-factor matrix";
      break;
    case MatrixClassKind::UnitParabolic:
      out = poly_class(3);
      out.provenance = "Z^2 * Z base: parabolic abelian-factor matrix";
      break;
    case MatrixClassKind::NonUnitEigenvalue:
      out = exp_class();
      out.provenance =
          "Z^2 * Z base: abelian-factor matrix with an eigenvalue off the "
          "unit circle";
      break;
  }
  out.normal_form = "case=" + matrix_case_name(nf->case_tag) +
                    " k=" + std::to_string(nf->k) + " z=a^" +
                    std::to_string(nf->l) + " b^" + std::to_string(nf->m);
  return out;
}

std::optional<DehnClass> classify_fkxfl(const Automorphism& psi,
                                        std::string* err) {
  auto dec = decompose_fkxfl(psi, err);
  if (!dec) return std::nullopt;
  auto g1 = factor_growth(dec->phi1, err);
  if (!g1) return std::nullopt;
  auto g2 = factor_growth(dec->phi2, err);
  if (!g2) return std::nullopt;

  DehnClass out;
  if (g1->kind == GrowthKind::Periodic || g2->kind == GrowthKind::Periodic) {
    out = poly_class(2);
    out.provenance = "product base: a factor acts periodically";
  } else if (g1->kind == GrowthKind::Exponential &&
             g2->kind == GrowthKind::Exponential) {
    out = exp_class();
    out.provenance = "product base: both factors grow exponentially";
  } else {
    int d = 0;
    if (g1->kind == GrowthKind::Polynomial) d = g1->cyclic_degree;
    if (g2->kind == GrowthKind::Polynomial)
      d = d == 0 ? g2->cyclic_degree : std::min(d, g2->cyclic_degree);
    assert(d >= 1);
    out = poly_class(d + 2);
    out.provenance = "product base: slowest factor has cyclic growth degree " +
                     std::to_string(d);
  }
  out.heuristic = g1->exactness == Exactness::Heuristic ||
                  g2->exactness == Exactness::Heuristic;
  out.normal_form =
      "phi1: " + growth_brief(*g1) + "; phi2: " + growth_brief(*g2);
  return out;
}

DehnClass classify_fkxz(const Automorphism& psi,
                        const std::optional<FreeWord>& twist_witness,
                        std::string* witness_note) {
  assert(psi.ctx.kind == GroupKind::FkxZ);
  DehnClass out;
  out.kind = DehnKind::Bracket;
  out.bracket_lo = DehnKind::Quadratic;
  out.bracket_hi = DehnKind::Cubic;
  out.provenance = "free-times-center base: no certified twist witness";
  out.normal_form = "bracket [n^2, n^3]";
  if (!twist_witness) return out;

  const FreeWord& w = *twist_witness;
  auto reject = [&](const std::string& why) {
    if (witness_note) *witness_note = "witness rejected: " + why;
    out.provenance =
        "free-times-center base: supplied twist witness rejected (" + why +
        ")";
    return out;
  };
  if (w.empty()) return reject("the witness word is empty");
  if (w.max_gen() >= psi.ctx.rank1)
    return reject("the witness must be a word in the free factor");

  Elem we = elem_identity(psi.ctx);
  we.first = w;
  const Elem image = aut_apply(aut_power(psi, 2), we);
  const Elem d =
      elem_mul(psi.ctx, elem_inverse(psi.ctx, we), image);
  if (!d.first.empty())
    return reject("the squared map moves the witness off its own coset");
  if (d.central == 0)
    return reject("the squared map fixes the witness (central exponent 0)");

  out = poly_class(3);
  out.provenance =
      "free-times-center base: verified central twist of the squared map";
  out.normal_form =
      "psi^2(w) = w c^" + std::to_string(d.central) + " for the supplied w";
  return out;
}

std::optional<DehnClass> classify_any(const Automorphism& psi,
                                      const std::optional<FreeWord>& fkxz_witness,
                                      std::string* err,
                                      std::string* witness_note) {
  switch (psi.ctx.kind) {
    case GroupKind::Zk:
      return classify_zk(zk_matrix(psi));
    case GroupKind::F2: {
      FreeAut f;
      f.rank = 2;
      f.img = {psi.img[0].first, psi.img[1].first};
      f.inv_img = {psi.inv_img[0].first, psi.inv_img[1].first};
      return classify_f2(f);
    }
    case GroupKind::F2xZ:
      return classify_f2xz(psi, err);
    case GroupKind::Z2astZ:
      return classify_z2astz(psi, err);
    case GroupKind::FkxFl:
      return classify_fkxfl(psi, err);
    case GroupKind::FkxZ:
      return classify_fkxz(psi, fkxz_witness, witness_note);
  }
  if (err) *err = "unknown group kind";
  return std::nullopt;
}

}  // namespace mtdehn
