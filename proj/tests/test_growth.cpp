#include "doctest.h"
#include "mtdehn/growth.hpp"

using namespace mtdehn;

namespace {

FreeAut make_free(std::vector<std::string> img, std::vector<std::string> inv) {
  int rank = int(img.size());
  std::vector<std::string> names = free_gen_names(rank);
  FreeAut f;
  f.rank = rank;
  std::string err;
  for (const auto& s : img) {
    auto ls = parse_letters(s, names, &err);
    REQUIRE_MESSAGE(ls.has_value(), err);
    f.img.push_back(FreeWord(*ls));
  }
  for (const auto& s : inv) {
    auto ls = parse_letters(s, names, &err);
    REQUIRE_MESSAGE(ls.has_value(), err);
    f.inv_img.push_back(FreeWord(*ls));
  }
  REQUIRE_MESSAGE(free_validate(f, &err), err);
  return f;
}

FreeAut fib() { return make_free({"a b", "a"}, {"b", "b^-1 a"}); }
FreeAut parab() { return make_free({"a b", "b"}, {"a b^-1", "b"}); }

FreeWord seed_a() { return FreeWord::from_gen(0); }

}  // namespace

TEST_CASE("iterate_lengths: materialized paths") {
  std::string err;
  auto s = iterate_lengths(free_identity(2), seed_a(), 8, 1000, &err);
  REQUIRE(s.has_value());
  CHECK(s->materialized_upto == 8);
  CHECK(!s->certified_tail);
  for (int n = 0; n <= 8; ++n) {
    CHECK(s->len[n] == 1);
    CHECK(s->cyc[n] == 1);
  }

  s = iterate_lengths(parab(), seed_a(), 10, 1000, &err);
  REQUIRE(s.has_value());
  for (int n = 0; n <= 10; ++n) CHECK(s->len[n] == n + 1);

  // Empty seed stays empty.
  s = iterate_lengths(fib(), FreeWord(), 6, 1000, &err);
  REQUIRE(s.has_value());
  CHECK(s->len[6] == 0);
}

TEST_CASE("iterate_lengths: certified tail matches materialization") {
  std::string err;
  auto big = iterate_lengths(fib(), seed_a(), 24, 1000000, &err);
  REQUIRE(big.has_value());
  CHECK(big->materialized_upto == 24);
  auto small = iterate_lengths(fib(), seed_a(), 24, 60, &err);
  REQUIRE(small.has_value());
  CHECK(small->certified_tail);
  CHECK(small->materialized_upto < 24);
  for (int n = 0; n <= 24; ++n) {
    CHECK(small->len[n] == big->len[n]);
    CHECK(small->cyc[n] == big->cyc[n]);
  }
  // Fibonacci lengths: |f^n(a)| = F(n+2).
  CHECK(small->len[10] == 144);

  // The inverse direction also certifies (its images cancel nowhere).
  auto bwd_big = iterate_lengths(free_inverse(fib()), seed_a(), 24, 1000000, &err);
  auto bwd_small = iterate_lengths(free_inverse(fib()), seed_a(), 24, 60, &err);
  REQUIRE(bwd_big.has_value());
  REQUIRE(bwd_small.has_value());
  for (int n = 0; n <= 24; ++n) CHECK(bwd_small->len[n] == bwd_big->len[n]);

  // Far beyond materialization: exact big integers, cyc == len in the tail.
  auto far = iterate_lengths(fib(), seed_a(), 128, 1000, &err);
  REQUIRE(far.has_value());
  CHECK(far->len[128] == far->cyc[128]);
  CHECK(far->len[128] > BigInt("1000000000000000000000000"));
}

TEST_CASE("iterate_lengths: honest failure when the tail cannot be certified") {
  // Inner twist: f^n(a) = b^n a b^-n grows but is never cyclically reduced,
  // so the wrap junction cancels and no certificate exists.
  FreeAut inner = make_free({"b a b^-1", "b"}, {"b^-1 a b", "b"});
  std::string err;
  auto s = iterate_lengths(inner, seed_a(), 50, 5, &err);
  CHECK(!s.has_value());
  CHECK(err.find("n = 3") != std::string::npos);
  CHECK(err.find("budget") != std::string::npos);
}

TEST_CASE("default probes and names") {
  auto probes = default_probes(3);
  REQUIRE(probes.size() == 6);  // 3 generators + 3 commutators
  CHECK(probes[0] == FreeWord::from_gen(0));
  CHECK(probes[3].size() == 4);  // [x1, x2]
  CHECK(free_gen_names(2) == std::vector<std::string>{"a", "b"});
  CHECK(free_gen_names(3) == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("growth table") {
  std::string err;
  auto t = growth_table(parab(), 10, {}, kDefaultWordBudget, &err);
  REQUIRE_MESSAGE(t.has_value(), err);
  CHECK(t->g(3) == 4);  // |a b^3|
  CHECK(t->sample.size() == 3);

  auto tid = growth_table(free_identity(2), 6, {}, kDefaultWordBudget, &err);
  REQUIRE(tid.has_value());
  for (int n = 0; n <= 6; ++n) CHECK(tid->g(n) == 1);

  auto tf = growth_table(fib(), 12, {}, kDefaultWordBudget, &err);
  REQUIRE(tf.has_value());
  CHECK(tf->g(5) == 13);

  // Cyclic lengths never exceed basis lengths, in both directions.
  for (const auto* tab : {&*t, &*tid, &*tf})
    for (std::size_t p = 0; p < tab->sample.size(); ++p)
      for (int n = 0; n <= tab->n_max; ++n) {
        CHECK(tab->fwd[p].cyc[n] <= tab->fwd[p].len[n]);
        CHECK(tab->bwd[p].cyc[n] <= tab->bwd[p].len[n]);
      }

  // Extra probes are appended, duplicates dropped.
  auto te = growth_table(parab(), 4, {FreeWord::from_gen(0), parab().img[0]}, 1000, &err);
  REQUIRE(te.has_value());
  CHECK(te->sample.size() == 4);

  // CSV shape: header plus one row per n.
  std::string csv = growth_table_csv(*tid);
  CHECK(csv.find("\"len(a)\"") != std::string::npos);
  CHECK(csv.find("\"cyc-(a^-1 b^-1 a b)\"") != std::string::npos);
  int rows = 0;
  for (char ch : csv) rows += (ch == '\n');
  CHECK(rows == 8);

  // Budget failures surface the probe and the overflowing n.
  FreeAut inner = make_free({"b a b^-1", "b"}, {"b^-1 a b", "b"});
  CHECK(!growth_table(inner, 50, {}, 5, &err).has_value());
  CHECK(err.find("probe 'a'") != std::string::npos);
  CHECK(err.find("n = 3") != std::string::npos);
}

TEST_CASE("exact rank-2 growth classification") {
  GrowthClass g = classify_growth_f2(parab());
  CHECK(g.kind == GrowthKind::Polynomial);
  CHECK(g.cyclic_degree == 1);
  CHECK(g.basis_degree == 1);
  CHECK(g.exactness == Exactness::Exact);

  g = classify_growth_f2(make_free({"b", "a"}, {"b", "a"}));
  CHECK(g.kind == GrowthKind::Periodic);
  CHECK(g.period == 2);
  CHECK(g.basis_degree == 0);

  g = classify_growth_f2(fib());
  CHECK(g.kind == GrowthKind::Exponential);
  CHECK(g.exactness == Exactness::Exact);

  // Inner automorphism: outer-periodic of period 1, basis growth linear.
  g = classify_growth_f2(make_free({"a", "a^-1 b a"}, {"a", "a b a^-1"}));
  CHECK(g.kind == GrowthKind::Periodic);
  CHECK(g.period == 1);
  CHECK(g.basis_degree == 1);

  // Order-6 matrix lift.
  g = classify_growth_f2(matrix_to_aut_f2(IntMatrix::from_rows({{0, -1}, {1, 1}})));
  CHECK(g.kind == GrowthKind::Periodic);
  CHECK(g.period == 6);
}

TEST_CASE("periodicity certificates") {
  auto c = periodicity_certificate(make_free({"b", "a"}, {"b", "a"}));
  REQUIRE(c.has_value());
  CHECK(c->period == 2);
  CHECK(c->witness.empty());

  c = periodicity_certificate(make_free({"a", "a^-1 b a"}, {"a", "a b a^-1"}));
  REQUIRE(c.has_value());
  CHECK(c->period == 1);
  CHECK(c->witness == FreeWord::from_gen(0));

  CHECK(!periodicity_certificate(parab()).has_value());
  CHECK(!periodicity_certificate(fib()).has_value());

  // Rank-3 cycle has period 3.
  FreeAut cyc3 = make_free({"x2", "x3", "x1"}, {"x3", "x1", "x2"});
  c = periodicity_certificate(cyc3);
  REQUIRE(c.has_value());
  CHECK(c->period == 3);
}

TEST_CASE("growth estimation") {
  GrowthEstimate e = estimate_growth(free_identity(3));
  REQUIRE(e.result.has_value());
  CHECK(e.result->kind == GrowthKind::Periodic);
  CHECK(e.result->exactness == Exactness::Heuristic);

  e = estimate_growth(make_free({"x1 x2", "x2", "x3"}, {"x1 x2^-1", "x2", "x3"}), 64);
  REQUIRE(e.result.has_value());
  CHECK(e.result->kind == GrowthKind::Polynomial);
  CHECK(e.result->cyclic_degree == 1);
  CHECK(e.result->basis_degree == 1);

  // Stacked transvections: quadratic.
  e = estimate_growth(make_free({"x1", "x2 x1", "x3 x2"},
                                {"x1", "x2 x1^-1", "x3 x1 x2^-1"}));
  REQUIRE(e.result.has_value());
  CHECK(e.result->kind == GrowthKind::Polynomial);
  CHECK(e.result->cyclic_degree == 2);

  // Exponential.
  e = estimate_growth(fib());
  REQUIRE(e.result.has_value());
  CHECK(e.result->kind == GrowthKind::Exponential);

  // The heuristic agrees with the exact rank-2 classifier.
  for (FreeAut f : {parab(), fib(), make_free({"b", "a"}, {"b", "a"}),
                    make_free({"a", "a^-1 b a"}, {"a", "a b a^-1"})}) {
    GrowthClass exact = classify_growth_f2(f);
    GrowthEstimate est = estimate_growth(f);
    REQUIRE_MESSAGE(est.result.has_value(), est.note);
    CHECK(est.result->kind == exact.kind);
  }

  // Budget failure propagates as an inconclusive estimate with the reason.
  FreeAut inner = make_free({"b a b^-1", "b"}, {"b^-1 a b", "b"});
  e = estimate_growth(inner, 64, {}, 5);
  CHECK(!e.result.has_value());
  CHECK(e.note.find("budget") != std::string::npos);
}
