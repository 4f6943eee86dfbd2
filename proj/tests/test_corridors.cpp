#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "mtdehn/corridors.hpp"

using namespace mtdehn;

namespace {

Letters L(const std::string& text, const BoundaryAlphabet& alph) {
  std::string err;
  auto ls = parse_letters(text, alph.names, &err);
  REQUIRE_MESSAGE(ls.has_value(), err);
  return *ls;
}

long long total_length(const CorridorAnalysis& an) {
  long long s = 0;
  for (const auto& rec : an.corridors) s += rec.length;
  return s;
}

// Rotates the marked circle (w, P) so that old position r becomes 0.
std::pair<Letters, CPairing> rotate(const Letters& w, const CPairing& p,
                                    int r) {
  const int m = int(w.size());
  Letters v;
  for (int x = 0; x < m; ++x) v.push_back(w[(x + r) % m]);
  CPairing q;
  for (auto [i, j] : p.pairs)
    q.pairs.emplace_back((i - r + m) % m, (j - r + m) % m);
  return {v, q};
}

}  // namespace

TEST_CASE("pairing validation") {
  auto alph = boundary_act();
  std::string err;

  Letters w = L("c^-1 t^-1 c t a^-1", alph);
  CHECK(validate_pairing(w, CPairing{{{0, 2}}}, alph, &err));

  // Crossing chords.
  Letters w4 = L("c c c^-1 c^-1", alph);
  CHECK(!validate_pairing(w4, CPairing{{{0, 2}, {1, 3}}}, alph, &err));
  CHECK(err.find("cross") != std::string::npos);
  // Same-sign endpoints.
  CHECK(!validate_pairing(w4, CPairing{{{0, 1}, {2, 3}}}, alph, &err));
  CHECK(err.find("same sign") != std::string::npos);
  // Nested pairing is fine.
  CHECK(validate_pairing(w4, CPairing{{{0, 3}, {1, 2}}}, alph, &err));

  // Unpaired corridor letter.
  Letters w5 = L("c t c^-1 c t^-1", alph);
  CHECK(!validate_pairing(w5, CPairing{{{0, 2}}}, alph, &err));
  CHECK(err.find("unpaired") != std::string::npos);
  // Endpoint is not a corridor letter.
  CHECK(!validate_pairing(w, CPairing{{{0, 1}}}, alph, &err));
  CHECK(err.find("not an occurrence") != std::string::npos);
  // Position used twice.
  Letters w6 = L("c c c^-1 c^-1 c c^-1", alph);
  CHECK(!validate_pairing(w6, CPairing{{{0, 2}, {2, 3}, {1, 5}, {4, 5}}},
                          alph, &err));
  CHECK(err.find("more than one pair") != std::string::npos);
  // Out of range.
  CHECK(!validate_pairing(w, CPairing{{{0, 9}}}, alph, &err));
  CHECK(err.find("out of range") != std::string::npos);
}

TEST_CASE("corridor lengths and regions") {
  auto alph = boundary_act();
  std::string err;

  SUBCASE("single corridor") {
    Letters w = L("c^-1 t^-1 c t a^-1", alph);
    auto an = corridor_lengths(w, CPairing{{{0, 2}}}, alph, &err);
    REQUIRE_MESSAGE(an.has_value(), err);
    REQUIRE(an->corridors.size() == 1);
    CHECK(an->corridors[0].length == 1);
    CHECK(print_letters(an->corridors[0].side1, alph.names) == "t^-1");
    CHECK(print_letters(an->corridors[0].side2, alph.names) == "t a^-1");
    REQUIRE(an->regions.size() == 2);
    CHECK(an->regions[0].chord == -1);
    CHECK(print_letters(an->regions[0].boundary, alph.names) == "t^-1 t a^-1");
    CHECK(print_letters(an->regions[1].boundary, alph.names) == "t^-1 t");
  }

  SUBCASE("zero-length corridor") {
    Letters w = L("a c c^-1 a^-1", alph);
    auto an = corridor_lengths(w, CPairing{{{1, 2}}}, alph, &err);
    REQUIRE(an.has_value());
    CHECK(an->corridors[0].length == 0);
    CHECK(an->corridors[0].side1.empty());
  }

  SUBCASE("two disjoint corridors") {
    Letters w = L("c t t c^-1 t^-1 c t^-1 c^-1", alph);
    auto an = corridor_lengths(w, CPairing{{{0, 3}, {5, 7}}}, alph, &err);
    REQUIRE_MESSAGE(an.has_value(), err);
    CHECK(an->corridors[0].length == 2);
    CHECK(an->corridors[1].length == 1);
    REQUIRE(an->regions.size() == 3);
  }

  SUBCASE("nested corridors") {
    Letters w = L("c t c t^-1 c^-1 t t c^-1 t^-1 t^-1", alph);
    auto an = corridor_lengths(w, CPairing{{{0, 7}, {2, 4}}}, alph, &err);
    REQUIRE_MESSAGE(an.has_value(), err);
    CHECK(an->corridors[0].length == 2);
    CHECK(an->corridors[1].length == 1);
    REQUIRE(an->regions.size() == 3);
    CHECK(print_letters(an->regions[0].boundary, alph.names) == "t^2 t^-2");
    CHECK(an->regions[1].chord == 0);
    CHECK(print_letters(an->regions[1].boundary, alph.names) ==
          "t t^-1 t^2 t^-2");
    CHECK(an->regions[2].chord == 1);
    CHECK(print_letters(an->regions[2].boundary, alph.names) == "t^-1 t");
  }

  SUBCASE("nonzero t-sum is rejected") {
    Letters w = L("c t c^-1", alph);
    CHECK(!corridor_lengths(w, CPairing{{{0, 2}}}, alph, &err).has_value());
    CHECK(err.find("t-exponent sum") != std::string::npos);
  }

  SUBCASE("region words are c-free, balanced, and short") {
    Letters w = L("c t c t^-1 c^-1 t t c^-1 t^-1 t^-1", alph);
    auto an = corridor_lengths(w, CPairing{{{0, 7}, {2, 4}}}, alph, &err);
    REQUIRE(an.has_value());
    for (const auto& reg : an->regions) {
      CHECK(reg.boundary.size() <= w.size());
      int ts = 0;
      for (Letter l : reg.boundary) {
        CHECK(gen_of(l) != alph.c);
        if (gen_of(l) == alph.t) ts += sign_of(l);
      }
      CHECK(ts == 0);
    }
  }

  SUBCASE("corridor-length sum is rotation invariant") {
    Letters w = L("c t c t^-1 c^-1 t t c^-1 t^-1 t^-1", alph);
    CPairing p{{{0, 7}, {2, 4}}};
    auto base = corridor_lengths(w, p, alph, &err);
    REQUIRE(base.has_value());
    for (int r = 1; r < int(w.size()); ++r) {
      auto [wr, pr] = rotate(w, p, r);
      auto an = corridor_lengths(wr, pr, alph, &err);
      REQUIRE_MESSAGE(an.has_value(), err);
      CHECK(total_length(*an) == total_length(*base));
      for (const auto& reg : an->regions)
        CHECK(reg.boundary.size() <= wr.size());
    }
  }
}

TEST_CASE("stable-letter rescaling") {
  auto alph = boundary_act();
  std::string err;

  Letters u = L("t a t^-1", alph);
  auto tr = ql_to_q1(u, alph, 3);
  CHECK(print_letters(tr.word, alph.names) == "t^3 a t^-3");
  CHECK(tr.index_map == std::vector<int>{0, 3, 4});

  // l = 1 is the identity.
  auto tr1 = ql_to_q1(u, alph, 1);
  CHECK(tr1.word == u);
  CHECK(tr1.index_map == std::vector<int>{0, 1, 2});

  // Transferred pairings scale every corridor length by exactly l.
  Letters w = L("c t c t^-1 c^-1 t t c^-1 t^-1 t^-1", alph);
  CPairing p{{{0, 7}, {2, 4}}};
  auto base = corridor_lengths(w, p, alph, &err);
  REQUIRE(base.has_value());
  for (int l : {1, 2, 4, 5}) {
    auto t = ql_to_q1(w, alph, l);
    CPairing q = transfer_pairing(p, t.index_map);
    auto an = corridor_lengths(t.word, q, alph, &err);
    REQUIRE_MESSAGE(an.has_value(), err);
    REQUIRE(an->corridors.size() == base->corridors.size());
    for (std::size_t k = 0; k < an->corridors.size(); ++k)
      CHECK(an->corridors[k].length == l * base->corridors[k].length);
    auto mc = multiple_of_l_check(an->corridors, l);
    CHECK(mc.ok);
    for (int r : mc.residues) CHECK(r == 0);
  }

  // Residues of lengths that are not multiples are reported.
  auto mc = multiple_of_l_check(base->corridors, 4);
  CHECK(!mc.ok);
  CHECK(mc.residues == std::vector<int>{2, 1});
  CHECK(multiple_of_l_check(base->corridors, 1).ok);
}

TEST_CASE("one-factors of regular bipartite multigraphs") {
  std::string err;

  SUBCASE("1-regular graph is its own matching") {
    BipartiteMultigraph g{2, 2, {{0, 1}, {1, 0}}};
    auto m = one_factor(g, &err);
    REQUIRE_MESSAGE(m.has_value(), err);
    CHECK(*m == std::vector<int>{0, 1});
  }

  SUBCASE("K22") {
    BipartiteMultigraph g{2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    auto m = one_factor(g, &err);
    REQUIRE(m.has_value());
    CHECK(m->size() == 2);
  }

  SUBCASE("3-regular multigraph with a doubled edge") {
    BipartiteMultigraph g{
        2, 2, {{0, 0}, {0, 0}, {0, 1}, {1, 1}, {1, 1}, {1, 0}}};
    auto m = one_factor(g, &err);
    REQUIRE_MESSAGE(m.has_value(), err);
    CHECK(m->size() == 2);
  }

  SUBCASE("non-regular input is rejected") {
    BipartiteMultigraph g{2, 2, {{0, 0}, {0, 1}, {1, 0}}};
    CHECK(!one_factor(g, &err).has_value());
    CHECK(err.find("degree") != std::string::npos);
    CHECK(!one_factor(BipartiteMultigraph{0, 0, {}}, &err).has_value());
  }

  SUBCASE("random regular multigraphs always admit a perfect matching") {
    std::mt19937 rng(20260816);
    for (int trial = 0; trial < 60; ++trial) {
      int n = 1 + int(rng() % 6);
      int d = 1 + int(rng() % 3);
      BipartiteMultigraph g{n, n, {}};
      std::vector<int> perm(n);
      for (int round = 0; round < d; ++round) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < n; ++i) g.edges.emplace_back(i, perm[i]);
      }
      auto m = one_factor(g, &err);
      REQUIRE_MESSAGE(m.has_value(), err);
      std::set<int> ls, rs;
      for (int e : *m) {
        ls.insert(g.edges[e].first);
        rs.insert(g.edges[e].second);
      }
      CHECK(int(ls.size()) == n);
      CHECK(int(rs.size()) == n);
    }
  }
}

TEST_CASE("capping-face regularization") {
  std::string err;

  SUBCASE("beta = 1 is the identity") {
    BipartiteMultigraph g{2, 2, {{0, 0}, {1, 1}}};
    auto r = regularize(g, 1, &err);
    REQUIRE(r.has_value());
    CHECK(r->left == 2);
    CHECK(r->edges == g.edges);
  }

  SUBCASE("one black vertex with two white leaves") {
    BipartiteMultigraph g{1, 2, {{0, 0}, {0, 1}}};
    auto r = regularize(g, 2, &err);
    REQUIRE_MESSAGE(r.has_value(), err);
    CHECK(r->left == 2);
    CHECK(r->right == 2);
    REQUIRE(r->edges.size() == 4);
    // Copy 0 comes first, edge for edge.
    CHECK(r->edges[0] == std::pair<int, int>{0, 0});
    CHECK(r->edges[1] == std::pair<int, int>{0, 1});
    auto m = one_factor(*r, &err);
    REQUIRE_MESSAGE(m.has_value(), err);
    // Restricting the 1-factor to copy 0 pairs every original black
    // vertex with one of its own neighbors.
    std::set<int> blacks;
    for (int e : *m)
      if (e < int(g.edges.size())) blacks.insert(r->edges[e].first);
    CHECK(blacks == std::set<int>{0});
  }

  SUBCASE("degree audits") {
    // Black vertex with the wrong degree.
    BipartiteMultigraph g{1, 3, {{0, 0}, {0, 1}, {0, 2}}};
    CHECK(!regularize(g, 2, &err).has_value());
    CHECK(err.find("black vertex 0") != std::string::npos);
    // White vertex of degree 2.
    BipartiteMultigraph h{2, 2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}};
    CHECK(!regularize(h, 2, &err).has_value());
    CHECK(err.find("white vertex 0") != std::string::npos);
    CHECK(!regularize(g, 0, &err).has_value());
  }
}

TEST_CASE("electrostatic bound") {
  CHECK(electro_bound(0, 0, 0, 1).bound == 0);
  CHECK(electro_bound(100, 10, 10, 1).bound == 1200);
  ElectroBound e = electro_bound(25, 5, 5, 3);
  CHECK(e.bound == 3 * 25 * 6 + 25);

  // Quadratic area and linear diameter give a cubic table; fit the
  // log-log slope over the upper half-window.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (long long n = 32; n <= 64; ++n) {
    long long b = electro_bound(n * n, n, n, 1).bound;
    double x = std::log2(double(n)), y = std::log2(double(b));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  CHECK(std::abs(slope - 3.0) < 0.1);
}

TEST_CASE("graph fixture format") {
  std::string err;
  auto fx = load_graph(
      "# capping graph\n"
      "\n"
      "2 2 2\n"
      "0 0\n"
      "0 1  # parallel data\n"
      "1 0\n"
      "1 1\n",
      &err);
  REQUIRE_MESSAGE(fx.has_value(), err);
  CHECK(fx->g.left == 2);
  CHECK(fx->g.right == 2);
  CHECK(fx->degree == 2);
  CHECK(fx->g.edges.size() == 4);
  CHECK(one_factor(fx->g, &err).has_value());

  CHECK(!load_graph("2 2\n0 0\n", &err).has_value());
  CHECK(err.find("header") != std::string::npos);
  CHECK(!load_graph("2 2 1\n0 x\n", &err).has_value());
  CHECK(err.find("bad integer 'x'") != std::string::npos);
  CHECK(!load_graph("2 2 1\n0 5\n", &err).has_value());
  CHECK(err.find("out of range") != std::string::npos);
  CHECK(!load_graph("# nothing\n", &err).has_value());
  CHECK(err.find("missing header") != std::string::npos);
  CHECK(!load_graph("2 2 1\n0 0 0\n", &err).has_value());
  CHECK(err.find("expected edge") != std::string::npos);
}
