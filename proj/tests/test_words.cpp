#include <random>

#include "doctest.h"
#include "mtdehn/words.hpp"

using namespace mtdehn;

namespace {

FreeWord W(std::initializer_list<Letter> ls) { return FreeWord(std::vector<Letter>(ls)); }

const Letter A = make_letter(0, +1), a = make_letter(0, -1);
const Letter B = make_letter(1, +1), b = make_letter(1, -1);
const Letter C = make_letter(2, +1), c = make_letter(2, -1);

FreeWord random_word(std::mt19937& rng, int n_gens, int len) {
  std::uniform_int_distribution<int> g(0, n_gens - 1), s(0, 1);
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i) ls.push_back(make_letter(g(rng), s(rng) ? +1 : -1));
  return FreeWord(std::move(ls));
}

}  // namespace

TEST_CASE("letter encoding") {
  CHECK(gen_of(A) == 0);
  CHECK(gen_of(a) == 0);
  CHECK(sign_of(A) == +1);
  CHECK(sign_of(a) == -1);
  CHECK(inv_letter(A) == a);
  CHECK(inv_letter(b) == B);
  // shortlex key order: a < a^-1 < b < b^-1
  CHECK(letter_key(A) < letter_key(a));
  CHECK(letter_key(a) < letter_key(B));
  CHECK(letter_key(B) < letter_key(b));
}

TEST_CASE("free reduction") {
  CHECK(W({A, B, b, A, a, B}) == W({A, B}));
  CHECK(W({A, a}).empty());
  CHECK(W({}).empty());
  // Reduction cascades through newly adjacent pairs.
  CHECK(W({A, B, b, a, C}) == W({C}));
  auto raw = free_reduce({A, B, b, a});
  CHECK(raw.empty());
}

TEST_CASE("inverse, product, power") {
  FreeWord ab = W({A, B});
  CHECK(ab.inverse() == W({b, a}));
  CHECK(ab * ab.inverse() == FreeWord());
  CHECK(ab * W({b, A}) == W({A, A}));
  CHECK(ab.pow(0) == FreeWord());
  CHECK(ab.pow(2) == W({A, B, A, B}));
  CHECK(ab.pow(-1) == W({b, a}));
  FreeWord conj = W({A, B, a});  // (a b a^-1)^3 = a b^3 a^-1
  CHECK(conj.pow(3) == W({A, B, B, B, a}));
  CHECK(conj.pow(-2) == W({A, b, b, a}));
}

TEST_CASE("shortlex order") {
  CHECK(FreeWord().shortlex_less(W({A})));
  CHECK(W({A}).shortlex_less(W({a})));
  CHECK(W({a}).shortlex_less(W({B})));
  CHECK(W({B}).shortlex_less(W({A, B})));  // shorter first
  CHECK(!W({A}).shortlex_less(W({A})));
  CHECK(W({A, A}).shortlex_less(W({A, B})));
}

TEST_CASE("exponent sums and max generator") {
  FreeWord w = W({A, B, a, B, C});
  CHECK(w.exp_sum(0) == 0);
  CHECK(w.exp_sum(1) == 2);
  CHECK(w.exp_sum(2) == 1);
  CHECK(w.max_gen() == 2);
  CHECK(FreeWord().max_gen() == -1);
}

TEST_CASE("cyclic reduction") {
  FreeWord w = W({b, a, A, B, A, B});  // b^-1 a^-1 (ab) a b  -> core ab, conj ab
  CyclicWord cw = cyclic_reduce(w);
  CHECK(cw.conjugator.inverse() * cw.core * cw.conjugator == w);
  CHECK(cw.core.size() == cyclic_length(w));
  // Core is cyclically reduced.
  if (cw.core.size() >= 2)
    CHECK(cw.core[0] != inv_letter(cw.core[cw.core.size() - 1]));

  CHECK(cyclic_length(W({b, A, B})) == 1);
  CHECK(cyclic_length(W({A, B})) == 2);
  CHECK(cyclic_length(FreeWord()) == 0);
  // Commutator is already cyclically reduced.
  FreeWord comm = W({a, b, A, B});
  CHECK(cyclic_reduce(comm).core == comm);
  CHECK(cyclic_reduce(comm).conjugator.empty());
}

TEST_CASE("rotations") {
  auto rots = rotations(W({A, B}));
  REQUIRE(rots.size() == 2);
  CHECK(rots[0] == W({A, B}));
  CHECK(rots[1] == W({B, A}));
  auto r0 = rotations(FreeWord());
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].empty());
}

TEST_CASE("conjugacy match: pinned cases") {
  // b^-1 a b is a conjugated by h = b.
  auto h = conjugacy_match(W({b, A, B}), W({A}));
  REQUIRE(h.has_value());
  CHECK(*h == W({B}));
  // Reverse direction uses h = b^-1.
  h = conjugacy_match(W({A}), W({b, A, B}));
  REQUIRE(h.has_value());
  CHECK(*h == W({b}));
  // Rotation: ab = b^-1 (ba) b.
  h = conjugacy_match(W({A, B}), W({B, A}));
  REQUIRE(h.has_value());
  CHECK(*h == W({B}));
  // Identity conjugacy returns the empty word (shortlex-least).
  h = conjugacy_match(W({A, B}), W({A, B}));
  REQUIRE(h.has_value());
  CHECK(h->empty());
  CHECK(conjugacy_match(FreeWord(), FreeWord()).has_value());
}

TEST_CASE("conjugacy match: non-conjugate pairs") {
  CHECK(!conjugacy_match(W({A}), W({B})).has_value());
  CHECK(!conjugacy_match(W({A}), W({a})).has_value());
  CHECK(!conjugacy_match(W({A, B}), W({A})).has_value());
  CHECK(!conjugacy_match(W({A, A}), W({A})).has_value());
  // Same abelianization, not conjugate: a b vs b a a b a^-1? (conjugate!)
  // Use a^2 b vs a b a instead: both reduce cyclically to rotations of a^2 b,
  // so they ARE conjugate; check a positive rotation case instead.
  auto h = conjugacy_match(W({A, A, B}), W({A, B, A}));
  CHECK(h.has_value());
  // Genuinely distinct classes with equal abelianization:
  CHECK(!conjugacy_match(W({A, A, B, B}), W({A, B, A, B})).has_value());
}

TEST_CASE("conjugacy match: random property") {
  std::mt19937 rng(20260816);
  for (int trial = 0; trial < 200; ++trial) {
    FreeWord v = random_word(rng, 2, trial % 9);
    FreeWord u = random_word(rng, 2, 5);
    FreeWord w = u.inverse() * v * u;
    auto h = conjugacy_match(w, v);
    REQUIRE(h.has_value());
    CHECK(h->inverse() * v * *h == w);
  }
}

TEST_CASE("alternating normal form: basic") {
  // a b a c c b a  ->  (2,1) c^2 (1,1)
  AlternatingWord w = alternating_normal_form({A, B, A, C, C, B, A});
  REQUIRE(w.syllables.size() == 2);
  REQUIRE(w.eps.size() == 1);
  CHECK(w.syllables[0] == std::pair<long long, long long>{2, 1});
  CHECK(w.eps[0] == 2);
  CHECK(w.syllables[1] == std::pair<long long, long long>{1, 1});
  CHECK(w.c_runs() == 1);
  CHECK(w.length() == 7);
  CHECK(!w.trivial());
}

TEST_CASE("alternating normal form: merging and cancellation") {
  // c a a^-1 c merges to c^2.
  AlternatingWord w = alternating_normal_form({C, A, a, C});
  CHECK(w.eps == std::vector<long long>{2});
  CHECK(w.syllables.size() == 2);
  // Full collapse: c a c^-1 c a^-1 c^-1 = 1.
  CHECK(alternating_normal_form({C, A, c, C, a, c}).trivial());
  // b and a commute: a b a^-1 = b.
  w = alternating_normal_form({A, B, a});
  CHECK(w.syllables[0] == std::pair<long long, long long>{0, 1});
  CHECK(w.c_runs() == 0);
  CHECK(alternating_normal_form({}).trivial());
}

TEST_CASE("alternating multiplication, inverse, letters") {
  AlternatingWord x = alternating_normal_form({A, C});
  AlternatingWord y = alternating_normal_form({c, B});
  AlternatingWord xy = alt_mul(x, y);  // a c c^-1 b = a b
  CHECK(xy.c_runs() == 0);
  CHECK(xy.syllables[0] == std::pair<long long, long long>{1, 1});
  CHECK(alt_mul(x, alt_inverse(x)).trivial());
  CHECK(alternating_normal_form(alt_letters(x)) == x);

  std::mt19937 rng(77);
  std::uniform_int_distribution<int> g(0, 2), s(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Letter> lu, lv;
    for (int i = 0; i < trial % 8; ++i) lu.push_back(make_letter(g(rng), s(rng) ? 1 : -1));
    for (int i = 0; i < (trial / 2) % 8; ++i) lv.push_back(make_letter(g(rng), s(rng) ? 1 : -1));
    AlternatingWord u = alternating_normal_form(lu);
    AlternatingWord v = alternating_normal_form(lv);
    std::vector<Letter> cat = lu;
    cat.insert(cat.end(), lv.begin(), lv.end());
    CHECK(alt_mul(u, v) == alternating_normal_form(cat));
    CHECK(alt_mul(u, alt_inverse(u)).trivial());
    CHECK(alternating_normal_form(alt_letters(u)) == u);
    // Length is invariant under inversion.
    CHECK(alt_inverse(u).length() == u.length());
  }
}

TEST_CASE("token parsing and printing") {
  std::vector<std::string> names = {"a", "b"};
  std::string err;

  auto ls = parse_letters("a b^-1 a^3", names, &err);
  REQUIRE(ls.has_value());
  CHECK(FreeWord(*ls) == W({A, b, A, A, A}));

  ls = parse_letters("1", names, &err);
  REQUIRE(ls.has_value());
  CHECK(ls->empty());

  ls = parse_letters("  a^2   1 b ", names, &err);
  REQUIRE(ls.has_value());
  CHECK(FreeWord(*ls) == W({A, A, B}));

  CHECK(!parse_letters("d", names, &err).has_value());
  CHECK(err.find("unknown generator") != std::string::npos);
  CHECK(!parse_letters("a^x", names, &err).has_value());
  CHECK(err.find("bad exponent") != std::string::npos);
  CHECK(!parse_letters("a^", names, &err).has_value());

  CHECK(print_letters({}, names) == "1");
  CHECK(print_letters({A, b, A, A, A}, names) == "a b^-1 a^3");
  CHECK(print_letters({a, a}, names) == "a^-2");

  // Round trip on random words.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    FreeWord w = random_word(rng, 2, trial % 12);
    auto back = parse_letters(print_letters(w.letters(), names), names, &err);
    REQUIRE(back.has_value());
    CHECK(FreeWord(*back) == w);
  }
}
