#include "mtdehn/certify.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mtdehn {

namespace {

Letters inverse_letters(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (Letter& l : out) l = inv_letter(l);
  return out;
}

Letters power_letters(int gen, long long e) {
  Letters out;
  Letter l = make_letter(gen, e >= 0 ? +1 : -1);
  for (long long i = 0; i < (e >= 0 ? e : -e); ++i) out.push_back(l);
  return out;
}

// [g_i, g_j] = g_i^-1 g_j^-1 g_i g_j.
Letters commutator_rel(int i, int j) {
  return {make_letter(i, -1), make_letter(j, -1), make_letter(i, +1),
          make_letter(j, +1)};
}

// t^-1 g t (image)^-1; freely and cyclically reduced because the image is a
// nonempty reduced base word (no letter of it can cancel against t^+-1).
Letters conj_rel(int t, int g, const Letters& image) {
  assert(!image.empty());
  Letters out = {make_letter(t, -1), make_letter(g, +1), make_letter(t, +1)};
  Letters inv = inverse_letters(image);
  out.insert(out.end(), inv.begin(), inv.end());
  return out;
}

// Relators must come out freely and cyclically reduced with in-range letters.
Presentation check_presentation(Presentation p) {
  for (const Letters& r : p.relators) {
    assert(!r.empty());
    assert(free_reduce(r) == r);
    assert(r.front() != inv_letter(r.back()));
    for (Letter l : r) assert(gen_of(l) < (int)p.names.size());
  }
  return p;
}

}  // namespace

Presentation pres_z2() {
  Presentation p;
  p.names = {"a", "t"};
  p.relators = {commutator_rel(0, 1)};
  return check_presentation(std::move(p));
}

Presentation pres_ql(long long l) {
  Presentation p;
  p.names = {"a", "c", "t"};
  p.relators.push_back(conj_rel(2, 0, {make_letter(0, +1)}));
  Letters image = {make_letter(1, +1)};
  Letters al = power_letters(0, l);
  image.insert(image.end(), al.begin(), al.end());
  p.relators.push_back(conj_rel(2, 1, image));
  return check_presentation(std::move(p));
}

Presentation pres_q1_tau() {
  Presentation p = pres_ql(1);
  p.names[2] = "tau";
  return p;
}

Presentation pres_mklm(long long k, long long l, long long m) {
  Presentation p;
  p.names = {"a", "b", "c", "t"};
  p.relators.push_back(commutator_rel(0, 1));
  Letters ia = {make_letter(0, +1)};
  Letters bk = power_letters(1, k);
  ia.insert(ia.end(), bk.begin(), bk.end());
  p.relators.push_back(conj_rel(3, 0, ia));
  p.relators.push_back(conj_rel(3, 1, {make_letter(1, +1)}));
  Letters ic = {make_letter(2, +1)};
  Letters al = power_letters(0, l);
  Letters bm = power_letters(1, m);
  ic.insert(ic.end(), al.begin(), al.end());
  ic.insert(ic.end(), bm.begin(), bm.end());
  p.relators.push_back(conj_rel(3, 2, ic));
  return check_presentation(std::move(p));
}

Presentation mapping_torus(const Automorphism& phi) {
  const GroupContext& ctx = phi.ctx;
  int n = ctx.n_gens();
  Presentation p;
  p.names = ctx.gen_names();
  p.names.push_back("t");
  if (ctx.kind == GroupKind::Zk) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) p.relators.push_back(commutator_rel(i, j));
  } else {
    for (auto [i, j] : commuting_pairs(ctx))
      p.relators.push_back(commutator_rel(i, j));
  }
  for (int g = 0; g < n; ++g)
    p.relators.push_back(conj_rel(n, g, elem_letters(ctx, phi.img[g])));
  return check_presentation(std::move(p));
}

// ---------------------------------------------------------------------------

std::optional<WitnessFamily> witness_lower_bound(
    const FreeAut& phi1, const FreeAut& phi2, int n, const FreeWord& x,
    const FreeWord& y, long long word_budget, std::string* err) {
  auto fail = [&](const std::string& m) -> std::optional<WitnessFamily> {
    if (err) *err = m;
    return std::nullopt;
  };
  const int k = phi1.rank, l = phi2.rank;
  auto check_probe = [&](const FreeWord& w, int rank,
                         const char* side) -> std::string {
    std::vector<std::string> names = free_gen_names(rank);
    if (w.empty()) return std::string(side) + " probe is trivial";
    if (w.max_gen() >= rank)
      return std::string(side) + " probe uses generators outside its factor";
    if (cyclic_length(w) != w.size())
      return std::string(side) + " probe '" + print_letters(w.letters(), names) +
             "' is not cyclically reduced";
    return "";
  };
  if (std::string m = check_probe(x, k, "x"); !m.empty()) return fail(m);
  if (std::string m = check_probe(y, l, "y"); !m.empty()) return fail(m);

  WitnessFamily fam;
  fam.n = n;
  fam.x = x;
  fam.y = y;
  if (n == 0) return fam;

  std::string serr;
  auto sx = iterate_lengths(free_inverse(phi1), x, 2 * n - 1, word_budget, &serr);
  if (!sx) return fail("x-side iteration: " + serr);
  auto sy = iterate_lengths(phi2, y, 2 * n - 1, word_budget, &serr);
  if (!sy) return fail("y-side iteration: " + serr);
  for (int i = n; i <= 2 * n - 1; ++i) {
    fam.corridor_terms.push_back(BigInt(n) * std::min(sx->cyc[i], sy->cyc[i]));
    fam.total += fam.corridor_terms.back();
  }

  const int t = k + l;
  auto append_t = [&](long long e) {
    Letters tt = power_letters(t, e);
    fam.word.insert(fam.word.end(), tt.begin(), tt.end());
  };
  auto append_pow = [&](const FreeWord& base, int delta, bool invert) {
    FreeWord v = relabel(base, delta);
    if (invert) v = v.inverse();
    for (int r = 0; r < n; ++r)
      fam.word.insert(fam.word.end(), v.letters().begin(), v.letters().end());
  };
  append_t(-4LL * n);
  append_pow(y, k, false);
  append_t(+4LL * n);
  append_pow(x, 0, false);
  append_t(-4LL * n);
  append_pow(y, k, true);
  append_t(+4LL * n);
  append_pow(x, 0, true);
  assert(fam.word.size() == 16u * n + 2u * n * (x.size() + y.size()));
  assert(free_reduce(fam.word) == fam.word);
  return fam;
}

// ---------------------------------------------------------------------------

std::optional<BigInt> bg_lower_bound(const Automorphism& phi,
                                     const std::vector<int>& k_gens, int n,
                                     long long word_budget, std::string* err) {
  auto fail = [&](const std::string& m) -> std::optional<BigInt> {
    if (err) *err = m;
    return std::nullopt;
  };
  const GroupContext& ctx = phi.ctx;
  if (k_gens.empty()) return fail("no subgroup generators given");
  for (int g : k_gens)
    if (g < 0 || g >= ctx.n_gens())
      return fail("subgroup generator index " + std::to_string(g) +
                  " is out of range");
  for (std::size_t i = 0; i < k_gens.size(); ++i)
    for (std::size_t j = i + 1; j < k_gens.size(); ++j)
      if (!elem_commute(ctx, elem_gen(ctx, k_gens[i]), elem_gen(ctx, k_gens[j])))
        return fail("subgroup generators " + ctx.gen_name(k_gens[i]) + " and " +
                    ctx.gen_name(k_gens[j]) + " do not commute");
  std::string aerr;
  if (!abelian_restriction(phi, k_gens, &aerr)) return fail(aerr);

  BigInt best = 1;
  for (int g : k_gens) {
    Elem u = elem_gen(ctx, g);
    Elem v = u;
    for (int s = 1; s <= n; ++s) {
      u = aut_apply(phi, u);
      v = aut_apply_inverse(phi, v);
      if (elem_length(ctx, u) > word_budget || elem_length(ctx, v) > word_budget)
        return fail("orbit of " + ctx.gen_name(g) +
                    " exceeded the word budget at power " + std::to_string(s));
    }
    best = std::max(best, BigInt(std::max(elem_length(ctx, u), elem_length(ctx, v))));
  }
  return BigInt(n) * n * best;
}

// ---------------------------------------------------------------------------

std::string shuffle_stage_line(const ShuffleStage& st) {
  return "(" + std::to_string(st.position) + ", " + st.relator + ", " +
         std::to_string(st.before_length) + ", " +
         std::to_string(st.after_length) + ")";
}

ShuffleCertificate t_shuffle(const Automorphism& phi, const Letters& w,
                             long long length_budget) {
  const GroupContext& ctx = phi.ctx;
  const int t_gen = ctx.n_gens();
  ShuffleCertificate cert;
  cert.input = w;
  for (int g = 0; g < t_gen; ++g)
    cert.growth_constant =
        std::max({cert.growth_constant, elem_length(ctx, phi.img[g]),
                  elem_length(ctx, phi.inv_img[g])});

  Elem u = elem_identity(ctx);
  long long s = 0;
  for (int i = (int)w.size() - 1; i >= 0; --i) {
    const Letter l = w[i];
    assert(gen_of(l) <= t_gen);
    if (gen_of(l) < t_gen) {
      u = elem_mul(ctx, elem_gen(ctx, gen_of(l), sign_of(l)), u);
      continue;
    }
    long long before = elem_length(ctx, u);
    u = sign_of(l) > 0 ? aut_apply_inverse(phi, u) : aut_apply(phi, u);
    s += sign_of(l);
    long long after = elem_length(ctx, u);
    if (before > 0) {
      cert.ledger.push_back(
          {i, sign_of(l) > 0 ? "phi^-1" : "phi", before, after});
      ++cert.count;
    }
    if (after > length_budget) {
      cert.budget_exceeded = true;
      cert.error = "base word grew to length " + std::to_string(after) +
                   ", past the budget " + std::to_string(length_budget) +
                   ", while crossing the stable letter at position " +
                   std::to_string(i);
      break;
    }
  }
  cert.final_base = u;
  cert.final_t_exponent = s;
  cert.certified =
      !cert.budget_exceeded && s == 0 && elem_trivial(ctx, u);
  return cert;
}

// ---------------------------------------------------------------------------

namespace {

// One BFS move set: every rotation of every relator and inverse relator.
std::vector<Letters> oracle_moves(const Presentation& pres) {
  std::vector<Letters> moves;
  for (const Letters& r : pres.relators) {
    for (const Letters& base : {r, inverse_letters(r)}) {
      for (std::size_t p = 0; p < base.size(); ++p) {
        Letters rot(base.begin() + p, base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + p);
        moves.push_back(std::move(rot));
      }
    }
  }
  std::sort(moves.begin(), moves.end());
  moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
  return moves;
}

std::string state_key(const Letters& ls) {
  std::string s;
  s.reserve(ls.size());
  for (Letter l : ls) s.push_back((char)(letter_key(l) + 1));
  return s;
}

}  // namespace

OracleResult area_oracle(const Letters& w, const Presentation& pres, int l_max,
                         long long budget) {
  OracleResult res;
  for (Letter l : w) assert(gen_of(l) < (int)pres.names.size());
  Letters start = free_reduce(w);
  if (l_max <= 0) l_max = (int)start.size() + 6;
  res.l_max = l_max;
  res.budget = budget;
  assert((int)start.size() <= l_max);
  if (start.empty()) {
    res.status = OracleStatus::Exact;
    res.area = 0;
    return res;
  }

  const std::vector<Letters> moves = oracle_moves(pres);
  std::unordered_set<std::string> visited;
  visited.insert(state_key(start));
  std::vector<Letters> cur = {std::move(start)};
  long long level = 0;  // levels fully expanded so far

  enum class Step { Next, Empty, Budget };
  std::vector<Letters> next;
  auto expand = [&]() -> Step {
    next.clear();
    for (const Letters& state : cur) {
      ++res.explored;
      for (const Letters& mv : moves) {
        for (std::size_t p = 0; p <= state.size(); ++p) {
          Letters cand;
          cand.reserve(state.size() + mv.size());
          cand.insert(cand.end(), state.begin(), state.begin() + p);
          cand.insert(cand.end(), mv.begin(), mv.end());
          cand.insert(cand.end(), state.begin() + p, state.end());
          cand = free_reduce(cand);
          if (cand.empty()) return Step::Empty;
          if ((int)cand.size() > l_max) continue;
          std::string key = state_key(cand);
          if (visited.count(key)) continue;
          if ((long long)visited.size() >= budget) return Step::Budget;
          visited.insert(std::move(key));
          next.push_back(std::move(cand));
        }
      }
    }
    return Step::Next;
  };

  while (!cur.empty()) {
    switch (expand()) {
      case Step::Empty:
        res.status = OracleStatus::Exact;
        res.area = level + 1;
        return res;
      case Step::Budget:
        res.status = OracleStatus::Bracket;
        res.lower = level + 1;
        return res;
      case Step::Next:
        ++level;
        cur.swap(next);
        break;
    }
  }
  res.status = OracleStatus::NotFillableWithinCap;
  return res;
}

}  // namespace mtdehn
