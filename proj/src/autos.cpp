#include "mtdehn/autos.hpp"

#include <cassert>
#include <cstdlib>
#include <sstream>

namespace mtdehn {

std::string group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::Zk:
      return "Zk";
    case GroupKind::F2:
      return "F2";
    case GroupKind::F2xZ:
      return "F2xZ";
    case GroupKind::Z2astZ:
      return "Z2astZ";
    case GroupKind::FkxFl:
      return "FkxFl";
    case GroupKind::FkxZ:
      return "FkxZ";
  }
  std::abort();
}

GroupContext GroupContext::zk(int k) {
  assert(k >= 1);
  return GroupContext{GroupKind::Zk, k, 0};
}
GroupContext GroupContext::f2() { return GroupContext{GroupKind::F2, 2, 0}; }
GroupContext GroupContext::f2xz() { return GroupContext{GroupKind::F2xZ, 2, 1}; }
GroupContext GroupContext::z2astz() { return GroupContext{GroupKind::Z2astZ, 2, 1}; }
GroupContext GroupContext::fkxfl(int k, int l) {
  assert(k >= 2 && l >= 2);
  return GroupContext{GroupKind::FkxFl, k, l};
}
GroupContext GroupContext::fkxz(int k) {
  assert(k >= 3);
  return GroupContext{GroupKind::FkxZ, k, 1};
}

int GroupContext::n_gens() const {
  switch (kind) {
    case GroupKind::Zk:
      return rank1;
    case GroupKind::F2:
      return 2;
    case GroupKind::F2xZ:
    case GroupKind::Z2astZ:
      return 3;
    case GroupKind::FkxFl:
      return rank1 + rank2;
    case GroupKind::FkxZ:
      return rank1 + 1;
  }
  std::abort();
}

int GroupContext::split_index() const {
  switch (kind) {
    case GroupKind::Zk:
      return rank1;
    case GroupKind::F2:
      return 2;
    case GroupKind::F2xZ:
    case GroupKind::Z2astZ:
      return 2;
    case GroupKind::FkxFl:
    case GroupKind::FkxZ:
      return rank1;
  }
  std::abort();
}

std::string GroupContext::gen_name(int g) const {
  assert(g >= 0 && g < n_gens());
  switch (kind) {
    case GroupKind::Zk:
      return "x" + std::to_string(g + 1);
    case GroupKind::F2:
    case GroupKind::F2xZ:
    case GroupKind::Z2astZ:
      return std::string(1, "abc"[g]);
    case GroupKind::FkxFl:
      return g < rank1 ? "x" + std::to_string(g + 1)
                       : "y" + std::to_string(g - rank1 + 1);
    case GroupKind::FkxZ:
      return g < rank1 ? "x" + std::to_string(g + 1) : "c";
  }
  std::abort();
}

int GroupContext::gen_index(const std::string& name) const {
  for (int g = 0; g < n_gens(); ++g)
    if (gen_name(g) == name) return g;
  return -1;
}

std::vector<std::string> GroupContext::gen_names() const {
  std::vector<std::string> out;
  for (int g = 0; g < n_gens(); ++g) out.push_back(gen_name(g));
  return out;
}

// ---------------------------------------------------------------------------
// Elements

Elem elem_identity(const GroupContext& ctx) {
  Elem e;
  if (ctx.kind == GroupKind::Zk) e.vec.assign(ctx.rank1, 0);
  return e;
}

Elem elem_from_letters(const GroupContext& ctx, const std::vector<Letter>& ls) {
  Elem e = elem_identity(ctx);
  for (Letter l : ls) assert(gen_of(l) >= 0 && gen_of(l) < ctx.n_gens());
  switch (ctx.kind) {
    case GroupKind::Zk: {
      for (Letter l : ls) e.vec[gen_of(l)] += sign_of(l);
      break;
    }
    case GroupKind::F2: {
      e.first = FreeWord(ls);
      break;
    }
    case GroupKind::F2xZ:
    case GroupKind::FkxZ: {
      int c = ctx.split_index();
      std::vector<Letter> fr;
      for (Letter l : ls) {
        if (gen_of(l) == c)
          e.central += sign_of(l);
        else
          fr.push_back(l);
      }
      e.first = FreeWord(fr);
      break;
    }
    case GroupKind::Z2astZ: {
      e.alt = alternating_normal_form(ls);
      break;
    }
    case GroupKind::FkxFl: {
      std::vector<Letter> xs, ys;
      for (Letter l : ls)
        (gen_of(l) < ctx.rank1 ? xs : ys).push_back(l);
      e.first = FreeWord(xs);
      e.second = FreeWord(ys);
      break;
    }
  }
  return e;
}

Elem elem_gen(const GroupContext& ctx, int g, long long e) {
  std::vector<Letter> ls;
  Letter l = make_letter(g, e >= 0 ? +1 : -1);
  for (long long i = 0; i < (e >= 0 ? e : -e); ++i) ls.push_back(l);
  return elem_from_letters(ctx, ls);
}

std::vector<Letter> elem_letters(const GroupContext& ctx, const Elem& x) {
  std::vector<Letter> out;
  auto push_power = [&](int gen, long long e) {
    Letter l = make_letter(gen, e >= 0 ? +1 : -1);
    for (long long i = 0; i < (e >= 0 ? e : -e); ++i) out.push_back(l);
  };
  switch (ctx.kind) {
    case GroupKind::Zk: {
      for (int i = 0; i < ctx.rank1; ++i) push_power(i, x.vec[i]);
      break;
    }
    case GroupKind::F2: {
      out = x.first.letters();
      break;
    }
    case GroupKind::F2xZ:
    case GroupKind::FkxZ: {
      out = x.first.letters();
      push_power(ctx.split_index(), x.central);
      break;
    }
    case GroupKind::Z2astZ: {
      out = alt_letters(x.alt);
      break;
    }
    case GroupKind::FkxFl: {
      out = x.first.letters();
      for (Letter l : x.second.letters()) out.push_back(l);
      break;
    }
  }
  return out;
}

Elem elem_mul(const GroupContext& ctx, const Elem& x, const Elem& y) {
  Elem e = elem_identity(ctx);
  switch (ctx.kind) {
    case GroupKind::Zk:
      for (int i = 0; i < ctx.rank1; ++i) e.vec[i] = x.vec[i] + y.vec[i];
      break;
    case GroupKind::F2:
      e.first = x.first * y.first;
      break;
    case GroupKind::F2xZ:
    case GroupKind::FkxZ:
      e.first = x.first * y.first;
      e.central = x.central + y.central;
      break;
    case GroupKind::Z2astZ:
      e.alt = alt_mul(x.alt, y.alt);
      break;
    case GroupKind::FkxFl:
      e.first = x.first * y.first;
      e.second = x.second * y.second;
      break;
  }
  return e;
}

Elem elem_inverse(const GroupContext& ctx, const Elem& x) {
  Elem e = elem_identity(ctx);
  switch (ctx.kind) {
    case GroupKind::Zk:
      for (int i = 0; i < ctx.rank1; ++i) e.vec[i] = -x.vec[i];
      break;
    case GroupKind::F2:
      e.first = x.first.inverse();
      break;
    case GroupKind::F2xZ:
    case GroupKind::FkxZ:
      e.first = x.first.inverse();
      e.central = -x.central;
      break;
    case GroupKind::Z2astZ:
      e.alt = alt_inverse(x.alt);
      break;
    case GroupKind::FkxFl:
      e.first = x.first.inverse();
      e.second = x.second.inverse();
      break;
  }
  return e;
}

Elem elem_conjugate(const GroupContext& ctx, const Elem& x, const Elem& h) {
  return elem_mul(ctx, elem_mul(ctx, elem_inverse(ctx, h), x), h);
}

Elem elem_pow(const GroupContext& ctx, const Elem& x, long long e) {
  if (e < 0) return elem_pow(ctx, elem_inverse(ctx, x), -e);
  Elem acc = elem_identity(ctx);
  Elem base = x;
  while (e > 0) {
    if (e & 1) acc = elem_mul(ctx, acc, base);
    base = elem_mul(ctx, base, base);
    e >>= 1;
  }
  return acc;
}

bool elem_trivial(const GroupContext& ctx, const Elem& x) {
  return x == elem_identity(ctx);
}

long long elem_length(const GroupContext& ctx, const Elem& x) {
  switch (ctx.kind) {
    case GroupKind::Zk: {
      long long s = 0;
      for (long long v : x.vec) s += (v >= 0 ? v : -v);
      return s;
    }
    case GroupKind::F2:
      return (long long)x.first.size();
    case GroupKind::F2xZ:
    case GroupKind::FkxZ:
      return (long long)x.first.size() + (x.central >= 0 ? x.central : -x.central);
    case GroupKind::Z2astZ:
      return x.alt.length();
    case GroupKind::FkxFl:
      return (long long)(x.first.size() + x.second.size());
  }
  std::abort();
}

bool elem_commute(const GroupContext& ctx, const Elem& x, const Elem& y) {
  return elem_mul(ctx, x, y) == elem_mul(ctx, y, x);
}

std::string elem_to_string(const GroupContext& ctx, const Elem& x) {
  return print_letters(elem_letters(ctx, x), ctx.gen_names());
}

std::optional<Elem> parse_elem(const GroupContext& ctx, const std::string& text,
                               std::string* err) {
  auto ls = parse_letters(text, ctx.gen_names(), err);
  if (!ls) return std::nullopt;
  return elem_from_letters(ctx, *ls);
}

// ---------------------------------------------------------------------------
// Automorphisms

Automorphism identity_aut(const GroupContext& ctx) {
  Automorphism a;
  a.ctx = ctx;
  for (int g = 0; g < ctx.n_gens(); ++g) {
    a.img.push_back(elem_gen(ctx, g));
    a.inv_img.push_back(elem_gen(ctx, g));
  }
  return a;
}

Automorphism inner_aut(const GroupContext& ctx, const Elem& h) {
  Automorphism a;
  a.ctx = ctx;
  Elem hinv = elem_inverse(ctx, h);
  for (int g = 0; g < ctx.n_gens(); ++g) {
    a.img.push_back(elem_conjugate(ctx, elem_gen(ctx, g), h));
    a.inv_img.push_back(elem_conjugate(ctx, elem_gen(ctx, g), hinv));
  }
  return a;
}

Automorphism make_aut(const GroupContext& ctx, std::vector<Elem> img,
                      std::vector<Elem> inv_img) {
  Automorphism a;
  a.ctx = ctx;
  a.img = std::move(img);
  a.inv_img = std::move(inv_img);
  return a;
}

namespace {
Elem apply_images(const GroupContext& ctx, const std::vector<Elem>& images,
                  const Elem& x) {
  std::vector<Letter> out;
  for (Letter l : elem_letters(ctx, x)) {
    const Elem& im = images[gen_of(l)];
    std::vector<Letter> ls =
        elem_letters(ctx, sign_of(l) > 0 ? im : elem_inverse(ctx, im));
    out.insert(out.end(), ls.begin(), ls.end());
  }
  return elem_from_letters(ctx, out);
}
}  // namespace

std::vector<std::pair<int, int>> commuting_pairs(const GroupContext& ctx) {
  std::vector<std::pair<int, int>> out;
  switch (ctx.kind) {
    case GroupKind::Zk:
    case GroupKind::F2:
      break;
    case GroupKind::F2xZ:
      out = {{0, 2}, {1, 2}};
      break;
    case GroupKind::Z2astZ:
      out = {{0, 1}};
      break;
    case GroupKind::FkxFl:
      for (int i = 0; i < ctx.rank1; ++i)
        for (int j = 0; j < ctx.rank2; ++j) out.push_back({i, ctx.rank1 + j});
      break;
    case GroupKind::FkxZ:
      for (int i = 0; i < ctx.rank1; ++i) out.push_back({i, ctx.rank1});
      break;
  }
  return out;
}

Elem aut_apply(const Automorphism& a, const Elem& x) {
  return apply_images(a.ctx, a.img, x);
}

Elem aut_apply_inverse(const Automorphism& a, const Elem& x) {
  return apply_images(a.ctx, a.inv_img, x);
}

bool validate_aut(const Automorphism& a, std::string* err) {
  const GroupContext& ctx = a.ctx;
  int n = ctx.n_gens();
  if ((int)a.img.size() != n || (int)a.inv_img.size() != n) {
    if (err) *err = "automorphism must supply images and inverse images for all generators";
    return false;
  }
  if (ctx.kind == GroupKind::Zk) {
    for (int g = 0; g < n; ++g) {
      if ((int)a.img[g].vec.size() != ctx.rank1 ||
          (int)a.inv_img[g].vec.size() != ctx.rank1) {
        if (err) *err = "exponent vector has the wrong length at generator " + ctx.gen_name(g);
        return false;
      }
    }
    BigInt d = zk_matrix(a).det();
    if (d != 1 && d != -1) {
      if (err) *err = "matrix is not invertible over Z (det = " + d.str() + ")";
      return false;
    }
  }
  for (auto [i, j] : commuting_pairs(ctx)) {
    if (!elem_commute(ctx, a.img[i], a.img[j])) {
      if (err)
        *err = "images of commuting generators " + ctx.gen_name(i) + " and " +
               ctx.gen_name(j) + " do not commute";
      return false;
    }
    if (!elem_commute(ctx, a.inv_img[i], a.inv_img[j])) {
      if (err)
        *err = "inverse images of commuting generators " + ctx.gen_name(i) +
               " and " + ctx.gen_name(j) + " do not commute";
      return false;
    }
  }
  for (int g = 0; g < n; ++g) {
    if (apply_images(ctx, a.img, a.inv_img[g]) != elem_gen(ctx, g) ||
        apply_images(ctx, a.inv_img, a.img[g]) != elem_gen(ctx, g)) {
      if (err) *err = "inverse check failed at generator " + ctx.gen_name(g);
      return false;
    }
  }
  return true;
}

Automorphism aut_compose(const Automorphism& f, const Automorphism& g) {
  assert(f.ctx == g.ctx);
  Automorphism out;
  out.ctx = f.ctx;
  for (int i = 0; i < f.ctx.n_gens(); ++i) {
    out.img.push_back(aut_apply(f, g.img[i]));
    out.inv_img.push_back(aut_apply_inverse(g, f.inv_img[i]));
  }
  return out;
}

Automorphism aut_inverse(const Automorphism& a) {
  Automorphism out;
  out.ctx = a.ctx;
  out.img = a.inv_img;
  out.inv_img = a.img;
  return out;
}

Automorphism aut_power(const Automorphism& a, long long e) {
  if (e < 0) return aut_power(aut_inverse(a), -e);
  Automorphism acc = identity_aut(a.ctx);
  Automorphism base = a;
  while (e > 0) {
    if (e & 1) acc = aut_compose(acc, base);
    base = aut_compose(base, base);
    e >>= 1;
  }
  return acc;
}

bool aut_equal(const Automorphism& a, const Automorphism& b) {
  return a.ctx == b.ctx && a.img == b.img;
}

bool outer_equal(const Automorphism& phi, const Automorphism& psi, const Elem& h,
                 long long k) {
  Automorphism rhs = aut_compose(inner_aut(psi.ctx, h), aut_power(psi, k));
  return aut_equal(phi, rhs);
}

// ---------------------------------------------------------------------------
// FreeAut

FreeAut free_identity(int rank) {
  FreeAut f;
  f.rank = rank;
  for (int i = 0; i < rank; ++i) {
    f.img.push_back(FreeWord::from_gen(i));
    f.inv_img.push_back(FreeWord::from_gen(i));
  }
  return f;
}

FreeAut free_inner(int rank, const FreeWord& h) {
  FreeAut f;
  f.rank = rank;
  FreeWord hinv = h.inverse();
  for (int i = 0; i < rank; ++i) {
    f.img.push_back(hinv * FreeWord::from_gen(i) * h);
    f.inv_img.push_back(h * FreeWord::from_gen(i) * hinv);
  }
  return f;
}

namespace {
FreeWord apply_words(const std::vector<FreeWord>& images, const FreeWord& w) {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const FreeWord& im = images[gen_of(l)];
    if (sign_of(l) > 0) {
      out.insert(out.end(), im.letters().begin(), im.letters().end());
    } else {
      FreeWord inv = im.inverse();
      out.insert(out.end(), inv.letters().begin(), inv.letters().end());
    }
  }
  return FreeWord(out);
}
}  // namespace

bool free_validate(const FreeAut& f, std::string* err) {
  if ((int)f.img.size() != f.rank || (int)f.inv_img.size() != f.rank) {
    if (err) *err = "free automorphism must supply images and inverse images for all generators";
    return false;
  }
  for (int i = 0; i < f.rank; ++i) {
    if (f.img[i].max_gen() >= f.rank || f.inv_img[i].max_gen() >= f.rank) {
      if (err) *err = "image uses a generator outside the declared rank";
      return false;
    }
  }
  for (int i = 0; i < f.rank; ++i) {
    if (apply_words(f.img, f.inv_img[i]) != FreeWord::from_gen(i) ||
        apply_words(f.inv_img, f.img[i]) != FreeWord::from_gen(i)) {
      if (err) *err = "inverse check failed at generator index " + std::to_string(i);
      return false;
    }
  }
  return true;
}

FreeWord free_apply(const FreeAut& f, const FreeWord& w) {
  return apply_words(f.img, w);
}

FreeWord free_apply_inverse(const FreeAut& f, const FreeWord& w) {
  return apply_words(f.inv_img, w);
}

FreeAut free_compose(const FreeAut& f, const FreeAut& g) {
  assert(f.rank == g.rank);
  FreeAut out;
  out.rank = f.rank;
  for (int i = 0; i < f.rank; ++i) {
    out.img.push_back(free_apply(f, g.img[i]));
    out.inv_img.push_back(free_apply_inverse(g, f.inv_img[i]));
  }
  return out;
}

FreeAut free_inverse(const FreeAut& f) {
  FreeAut out;
  out.rank = f.rank;
  out.img = f.inv_img;
  out.inv_img = f.img;
  return out;
}

FreeAut free_power(const FreeAut& f, long long e) {
  if (e < 0) return free_power(free_inverse(f), -e);
  FreeAut acc = free_identity(f.rank);
  FreeAut base = f;
  while (e > 0) {
    if (e & 1) acc = free_compose(acc, base);
    base = free_compose(base, base);
    e >>= 1;
  }
  return acc;
}

bool free_equal(const FreeAut& f, const FreeAut& g) {
  return f.rank == g.rank && f.img == g.img;
}

IntMatrix abelianization(const FreeAut& f) {
  IntMatrix m(f.rank);
  for (int i = 0; i < f.rank; ++i)
    for (int r = 0; r < f.rank; ++r) m.at(r, i) = f.img[i].exp_sum(r);
  return m;
}

std::optional<FreeWord> free_inner_extract(const FreeAut& f) {
  auto verify = [&](const FreeWord& g) {
    FreeWord ginv = g.inverse();
    for (int i = 0; i < f.rank; ++i)
      if (f.img[i] != ginv * FreeWord::from_gen(i) * g) return false;
    return true;
  };
  if (f.rank == 1) {
    // Inner automorphisms of Z are trivial.
    if (f.img[0] == FreeWord::from_gen(0)) return FreeWord();
    return std::nullopt;
  }
  CyclicWord c0 = cyclic_reduce(f.img[0]);
  if (c0.core != FreeWord::from_gen(0)) return std::nullopt;
  const FreeWord& q = c0.conjugator;  // f(x0) == q^-1 x0 q
  // The full conjugator is g = x0^m q; read m off the image of x1:
  // q f(x1) q^-1 must equal x0^{-m} x1 x0^{m}.
  FreeWord r = q * f.img[1] * q.inverse();
  long long s = 0;
  std::size_t pos = 0;
  while (pos < r.size() && gen_of(r[pos]) == 0) {
    s += sign_of(r[pos]);
    ++pos;
  }
  if (pos >= r.size() || r[pos] != make_letter(1, +1)) return std::nullopt;
  long long m = -s;
  FreeWord g = FreeWord::from_gen(0).pow(m) * q;
  if (verify(g)) return g;
  return std::nullopt;
}

FreeWord relabel(const FreeWord& w, int delta) {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    int g = gen_of(l) + delta;
    assert(g >= 0);
    out.push_back(make_letter(g, sign_of(l)));
  }
  return FreeWord(out);
}

namespace {
FreeAut nielsen_aut(Gl2Gen g) {
  auto mk = [](std::vector<Letter> ia, std::vector<Letter> ib,
               std::vector<Letter> ja, std::vector<Letter> jb) {
    FreeAut f;
    f.rank = 2;
    f.img = {FreeWord(std::move(ia)), FreeWord(std::move(ib))};
    f.inv_img = {FreeWord(std::move(ja)), FreeWord(std::move(jb))};
    return f;
  };
  Letter A = make_letter(0, +1), a = make_letter(0, -1);
  Letter B = make_letter(1, +1), b = make_letter(1, -1);
  switch (g) {
    case Gl2Gen::L:  // a -> ab
      return mk({A, B}, {B}, {A, b}, {B});
    case Gl2Gen::Linv:  // a -> ab^-1
      return mk({A, b}, {B}, {A, B}, {B});
    case Gl2Gen::U:  // b -> ba
      return mk({A}, {B, A}, {A}, {B, a});
    case Gl2Gen::Uinv:  // b -> ba^-1
      return mk({A}, {B, a}, {A}, {B, A});
    case Gl2Gen::Swap:  // a <-> b
      return mk({B}, {A}, {B}, {A});
    case Gl2Gen::NegA:  // a -> a^-1
      return mk({a}, {B}, {a}, {B});
  }
  std::abort();
}
}  // namespace

FreeAut matrix_to_aut_f2(const IntMatrix& B) {
  assert(B.dim() == 2);
  FreeAut f = free_identity(2);
  for (Gl2Gen g : gl2_decompose(B)) f = free_compose(f, nielsen_aut(g));
  assert(abelianization(f) == B);
  return f;
}

// ---------------------------------------------------------------------------
// Bridges

std::optional<InducedMaps> induced_maps(const Automorphism& a, std::string* err) {
  const GroupContext& ctx = a.ctx;
  if (ctx.kind != GroupKind::F2xZ && ctx.kind != GroupKind::FkxZ) {
    if (err) *err = "induced maps require a central-factor group kind";
    return std::nullopt;
  }
  int c = ctx.split_index();
  if (!a.img[c].first.empty()) {
    if (err) *err = "image of c has a non-central free part";
    return std::nullopt;
  }
  if (a.img[c].central != 1 && a.img[c].central != -1) {
    if (err)
      *err = "image of c is c^" + std::to_string(a.img[c].central) +
             ", expected exponent +-1";
    return std::nullopt;
  }
  InducedMaps out;
  out.c_sign = (int)a.img[c].central;
  out.base.rank = c;
  for (int i = 0; i < c; ++i) {
    out.base.img.push_back(a.img[i].first);
    out.base.inv_img.push_back(a.inv_img[i].first);
    out.c_exps.push_back(a.img[i].central);
  }
  std::string why;
  if (!free_validate(out.base, &why)) {
    if (err) *err = "induced base map is not an automorphism: " + why;
    return std::nullopt;
  }
  return out;
}

std::optional<IntMatrix> abelian_restriction(const Automorphism& a,
                                             const std::vector<int>& gens,
                                             std::string* err) {
  const GroupContext& ctx = a.ctx;
  int n = (int)gens.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      assert(elem_commute(ctx, elem_gen(ctx, gens[i]), elem_gen(ctx, gens[j])));
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    std::vector<long long> counts(ctx.n_gens(), 0);
    for (Letter l : elem_letters(ctx, a.img[gens[i]]))
      counts[gen_of(l)] += sign_of(l);
    for (int g = 0; g < ctx.n_gens(); ++g) {
      if (counts[g] == 0) continue;
      bool in_k = false;
      for (int r = 0; r < n; ++r)
        if (gens[r] == g) in_k = true;
      if (!in_k) {
        if (err)
          *err = "subgroup is not invariant: image of " + ctx.gen_name(gens[i]) +
                 " uses generator " + ctx.gen_name(g);
        return std::nullopt;
      }
    }
    // Letters inside an abelian subgroup determine the element exactly.
    std::vector<Letter> check;
    for (int r = 0; r < n; ++r) {
      long long e = counts[gens[r]];
      Letter l = make_letter(gens[r], e >= 0 ? +1 : -1);
      for (long long t = 0; t < (e >= 0 ? e : -e); ++t) check.push_back(l);
    }
    if (elem_from_letters(ctx, check) != a.img[gens[i]]) {
      if (err)
        *err = "image of " + ctx.gen_name(gens[i]) +
               " does not lie in the abelian subgroup";
      return std::nullopt;
    }
    for (int r = 0; r < n; ++r) m.at(r, i) = counts[gens[r]];
  }
  return m;
}

std::optional<FreeAut> factor_restriction(const Automorphism& a, int which,
                                          std::string* err) {
  const GroupContext& ctx = a.ctx;
  assert(ctx.kind == GroupKind::FkxFl);
  assert(which == 1 || which == 2);
  int k = ctx.rank1, l = ctx.rank2;
  FreeAut f;
  f.rank = (which == 1) ? k : l;
  for (int i = 0; i < f.rank; ++i) {
    int g = (which == 1) ? i : k + i;
    const Elem& im = a.img[g];
    const Elem& inv = a.inv_img[g];
    const FreeWord& bad_im = (which == 1) ? im.second : im.first;
    const FreeWord& bad_inv = (which == 1) ? inv.second : inv.first;
    if (!bad_im.empty() || !bad_inv.empty()) {
      if (err)
        *err = "image of " + ctx.gen_name(g) + " mixes factors; restriction undefined";
      return std::nullopt;
    }
    if (which == 1) {
      f.img.push_back(im.first);
      f.inv_img.push_back(inv.first);
    } else {
      f.img.push_back(relabel(im.second, -k));
      f.inv_img.push_back(relabel(inv.second, -k));
    }
  }
  std::string why;
  if (!free_validate(f, &why)) {
    if (err) *err = "factor restriction is not an automorphism: " + why;
    return std::nullopt;
  }
  return f;
}

Automorphism zk_aut(const IntMatrix& A) {
  int n = A.dim();
  GroupContext ctx = GroupContext::zk(n);
  IntMatrix inv = A.unimodular_inverse();
  Automorphism a;
  a.ctx = ctx;
  for (int i = 0; i < n; ++i) {
    Elem e = elem_identity(ctx), einv = elem_identity(ctx);
    for (int r = 0; r < n; ++r) {
      e.vec[r] = A.at(r, i).convert_to<long long>();
      einv.vec[r] = inv.at(r, i).convert_to<long long>();
    }
    a.img.push_back(e);
    a.inv_img.push_back(einv);
  }
  return a;
}

IntMatrix zk_matrix(const Automorphism& a) {
  assert(a.ctx.kind == GroupKind::Zk);
  int n = a.ctx.rank1;
  IntMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r) m.at(r, i) = a.img[i].vec[r];
  return m;
}

Automorphism f2xz_frame(const FreeAut& f) {
  assert(f.rank == 2);
  GroupContext ctx = GroupContext::f2xz();
  Automorphism a;
  a.ctx = ctx;
  for (int i = 0; i < 2; ++i) {
    Elem e, einv;
    e.first = f.img[i];
    einv.first = f.inv_img[i];
    a.img.push_back(e);
    a.inv_img.push_back(einv);
  }
  a.img.push_back(elem_gen(ctx, 2));
  a.inv_img.push_back(elem_gen(ctx, 2));
  return a;
}

Automorphism z2astz_frame(const IntMatrix& B) {
  assert(B.dim() == 2);
  GroupContext ctx = GroupContext::z2astz();
  IntMatrix inv = B.unimodular_inverse();
  auto col_elem = [&](const IntMatrix& m, int i) {
    Elem e;
    e.alt.syllables = {{m.at(0, i).convert_to<long long>(),
                        m.at(1, i).convert_to<long long>()}};
    return e;
  };
  Automorphism a;
  a.ctx = ctx;
  a.img = {col_elem(B, 0), col_elem(B, 1), elem_gen(ctx, 2)};
  a.inv_img = {col_elem(inv, 0), col_elem(inv, 1), elem_gen(ctx, 2)};
  return a;
}

Automorphism product_aut(const GroupContext& ctx, const FreeAut& f1,
                         const FreeAut& f2) {
  assert(ctx.kind == GroupKind::FkxFl);
  assert(f1.rank == ctx.rank1 && f2.rank == ctx.rank2);
  Automorphism a;
  a.ctx = ctx;
  for (int i = 0; i < ctx.rank1; ++i) {
    Elem e, einv;
    e.first = f1.img[i];
    einv.first = f1.inv_img[i];
    a.img.push_back(e);
    a.inv_img.push_back(einv);
  }
  for (int j = 0; j < ctx.rank2; ++j) {
    Elem e, einv;
    e.second = relabel(f2.img[j], ctx.rank1);
    einv.second = relabel(f2.inv_img[j], ctx.rank1);
    a.img.push_back(e);
    a.inv_img.push_back(einv);
  }
  return a;
}

Automorphism f2xz_aut(const FreeAut& base, const std::vector<long long>& c_exps,
                      int c_sign) {
  assert(base.rank == 2 && c_exps.size() == 2);
  assert(c_sign == 1 || c_sign == -1);
  GroupContext ctx = GroupContext::f2xz();
  Automorphism a;
  a.ctx = ctx;
  for (int i = 0; i < 2; ++i) {
    Elem e;
    e.first = base.img[i];
    e.central = c_exps[i];
    a.img.push_back(e);
  }
  Elem c;
  c.central = c_sign;
  a.img.push_back(c);
  // Psi(base^-1(x_i) * c^m) = x_i * c^{s_i + c_sign*m} with s_i the c-exponent
  // accumulated along the inverse word, so m = -c_sign * s_i.
  for (int i = 0; i < 2; ++i) {
    Elem e;
    e.first = base.inv_img[i];
    long long s = 0;
    for (Letter l : base.inv_img[i].letters()) s += sign_of(l) * c_exps[gen_of(l)];
    e.central = -c_sign * s;
    a.inv_img.push_back(e);
  }
  a.inv_img.push_back(c);
  std::string why;
  bool ok = validate_aut(a, &why);
  assert(ok);
  (void)ok;
  return a;
}

}  // namespace mtdehn
