#include "mtdehn/corridors.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

namespace mtdehn {

namespace {

bool fail(std::string* err, const std::string& msg) {
  if (err) *err = msg;
  return false;
}

}  // namespace

BoundaryAlphabet boundary_act() { return {{"a", "c", "t"}, 1, 2}; }
BoundaryAlphabet boundary_abct() { return {{"a", "b", "c", "t"}, 2, 3}; }

bool validate_pairing(const Letters& w, const CPairing& pairing,
                      const BoundaryAlphabet& alph, std::string* err) {
  const int m = int(w.size());
  std::vector<int> owner(w.size(), -1);
  for (std::size_t p = 0; p < pairing.pairs.size(); ++p) {
    auto [i, j] = pairing.pairs[p];
    for (int idx : {i, j}) {
      if (idx < 0 || idx >= m)
        return fail(err, "pair " + std::to_string(p) + " index " +
                             std::to_string(idx) + " is out of range");
      if (gen_of(w[idx]) != alph.c)
        return fail(err, "pair " + std::to_string(p) + " endpoint " +
                             std::to_string(idx) +
                             " is not an occurrence of the corridor letter");
      if (owner[idx] != -1)
        return fail(err, "position " + std::to_string(idx) +
                             " appears in more than one pair");
      owner[idx] = int(p);
    }
    if (sign_of(w[i]) == sign_of(w[j]))
      return fail(err, "pair " + std::to_string(p) +
                           " joins two corridor letters of the same sign");
  }
  for (int idx = 0; idx < m; ++idx)
    if (gen_of(w[idx]) == alph.c && owner[idx] == -1)
      return fail(err, "corridor letter at position " + std::to_string(idx) +
                           " is unpaired");

  // Chords (i, j) and (k, l) cross iff exactly one of k, l lies strictly
  // between i and j on the circle.
  auto strictly_inside = [](int lo, int hi, int x) { return lo < x && x < hi; };
  for (std::size_t p = 0; p < pairing.pairs.size(); ++p) {
    int pi = std::min(pairing.pairs[p].first, pairing.pairs[p].second);
    int pj = std::max(pairing.pairs[p].first, pairing.pairs[p].second);
    for (std::size_t q = p + 1; q < pairing.pairs.size(); ++q) {
      int qi = std::min(pairing.pairs[q].first, pairing.pairs[q].second);
      int qj = std::max(pairing.pairs[q].first, pairing.pairs[q].second);
      if (strictly_inside(pi, pj, qi) != strictly_inside(pi, pj, qj))
        return fail(err, "pairs " + std::to_string(p) + " and " +
                             std::to_string(q) + " cross");
    }
    // Inner-arc c-balance (implied by non-crossing; audited regardless).
    int balance = 0;
    for (int x = pi + 1; x < pj; ++x)
      if (gen_of(w[x]) == alph.c) balance += sign_of(w[x]);
    if (balance != 0)
      return fail(err, "arc of pair " + std::to_string(p) +
                           " has unbalanced corridor letters (sum " +
                           std::to_string(balance) + ")");
  }
  return true;
}

std::optional<CorridorAnalysis> corridor_lengths(const Letters& w,
                                                 const CPairing& pairing,
                                                 const BoundaryAlphabet& alph,
                                                 std::string* err) {
  if (!validate_pairing(w, pairing, alph, err)) return std::nullopt;
  const int m = int(w.size());
  int total_t = 0;
  for (Letter l : w)
    if (gen_of(l) == alph.t) total_t += sign_of(l);
  if (total_t != 0) {
    fail(err, "t-exponent sum of the boundary word is " +
                  std::to_string(total_t) + ", expected 0");
    return std::nullopt;
  }

  // Signed t-sum of positions [from, to), and prefix sums for arc reads.
  auto t_sum = [&](int from, int to) {
    int s = 0;
    for (int x = from; x < to; ++x)
      if (gen_of(w[x]) == alph.t) s += sign_of(w[x]);
    return s;
  };

  CorridorAnalysis out;
  // Normalized chords, sorted by left endpoint; nesting forest on top.
  struct Chord {
    int lo, hi, pair_index, sum;  // sum = signed t-sum of (lo, hi)
  };
  std::vector<Chord> chords;
  for (std::size_t p = 0; p < pairing.pairs.size(); ++p) {
    int lo = std::min(pairing.pairs[p].first, pairing.pairs[p].second);
    int hi = std::max(pairing.pairs[p].first, pairing.pairs[p].second);
    chords.push_back({lo, hi, int(p), t_sum(lo + 1, hi)});
  }
  std::sort(chords.begin(), chords.end(),
            [](const Chord& x, const Chord& y) { return x.lo < y.lo; });

  out.corridors.resize(pairing.pairs.size());
  for (const Chord& ch : chords) {
    CorridorRecord rec;
    rec.pair_index = ch.pair_index;
    rec.length = std::abs(ch.sum);
    rec.side1.assign(w.begin() + ch.lo + 1, w.begin() + ch.hi);
    rec.side2.assign(w.begin() + ch.hi + 1, w.end());
    rec.side2.insert(rec.side2.end(), w.begin(), w.begin() + ch.lo);
    out.corridors[ch.pair_index] = std::move(rec);
  }

  // Region boundary walks.  Crossing a corridor reads its side, a pure
  // power of t carrying the chord's signed arc sum; closing along the
  // enclosing chord contributes the opposite power, so every region word
  // has t-exponent sum zero.
  auto emit_t_power = [&](Letters& v, int power) {
    for (int x = 0; x < std::abs(power); ++x)
      v.push_back(make_letter(alph.t, power > 0 ? +1 : -1));
  };
  // Walk [from, to), skipping chord spans that start inside; chords are
  // scanned in left-endpoint order, so a linear cursor suffices.
  auto walk = [&](int from, int to, std::size_t first_chord) {
    Letters v;
    std::size_t ci = first_chord;
    int x = from;
    while (x < to) {
      while (ci < chords.size() && chords[ci].lo < x) ++ci;
      if (ci < chords.size() && chords[ci].lo == x) {
        emit_t_power(v, chords[ci].sum);
        x = chords[ci].hi + 1;
        ++ci;
      } else {
        v.push_back(w[x]);
        ++x;
      }
    }
    return v;
  };

  // Outer region: the full circle, skipping top-level chords.
  RegionRecord outer;
  outer.chord = -1;
  outer.boundary = walk(0, m, 0);
  out.regions.push_back(std::move(outer));

  // One region per chord: its inside, skipping child chords, closed by
  // the chord's own corridor side read against the walk direction.
  for (std::size_t ci = 0; ci < chords.size(); ++ci) {
    RegionRecord reg;
    reg.chord = chords[ci].pair_index;
    reg.boundary = walk(chords[ci].lo + 1, chords[ci].hi, ci + 1);
    emit_t_power(reg.boundary, -chords[ci].sum);
    out.regions.push_back(std::move(reg));
  }

  for (const RegionRecord& reg : out.regions) {
    assert(int(reg.boundary.size()) <= m);
    int s = 0;
    for (Letter l : reg.boundary) {
      assert(gen_of(l) != alph.c);
      if (gen_of(l) == alph.t) s += sign_of(l);
    }
    assert(s == 0);
    (void)reg;
  }
  return out;
}

TransferResult ql_to_q1(const Letters& u, const BoundaryAlphabet& alph,
                        int l) {
  assert(l >= 1);
  TransferResult out;
  out.index_map.reserve(u.size());
  for (Letter x : u) {
    out.index_map.push_back(int(out.word.size()));
    if (gen_of(x) == alph.t) {
      for (int r = 0; r < l; ++r) out.word.push_back(x);
    } else {
      out.word.push_back(x);
    }
  }
  return out;
}

CPairing transfer_pairing(const CPairing& pairing,
                          const std::vector<int>& index_map) {
  CPairing out;
  for (auto [i, j] : pairing.pairs)
    out.pairs.emplace_back(index_map.at(i), index_map.at(j));
  return out;
}

MultipleCheck multiple_of_l_check(const std::vector<CorridorRecord>& records,
                                  int l) {
  assert(l >= 1);
  MultipleCheck out;
  for (const CorridorRecord& rec : records) {
    int r = rec.length % l;
    out.residues.push_back(r);
    if (r != 0) out.ok = false;
  }
  return out;
}

std::optional<std::vector<int>> one_factor(const BipartiteMultigraph& g,
                                           std::string* err) {
  std::vector<int> ldeg(g.left, 0), rdeg(g.right, 0);
  std::vector<std::vector<int>> adj(g.left);  // edge indices per left vertex
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (u < 0 || u >= g.left || v < 0 || v >= g.right) {
      fail(err, "edge " + std::to_string(e) + " out of range");
      return std::nullopt;
    }
    ++ldeg[u];
    ++rdeg[v];
    adj[u].push_back(int(e));
  }
  int d = g.left > 0 ? ldeg[0] : 0;
  if (d < 1) {
    fail(err, "graph is not regular of positive degree");
    return std::nullopt;
  }
  for (int u = 0; u < g.left; ++u)
    if (ldeg[u] != d) {
      fail(err, "left vertex " + std::to_string(u) + " has degree " +
                    std::to_string(ldeg[u]) + ", expected " +
                    std::to_string(d));
      return std::nullopt;
    }
  for (int v = 0; v < g.right; ++v)
    if (rdeg[v] != d) {
      fail(err, "right vertex " + std::to_string(v) + " has degree " +
                    std::to_string(rdeg[v]) + ", expected " +
                    std::to_string(d));
      return std::nullopt;
    }
  // d-regularity forces left == right.
  assert(g.left == g.right);

  // Kuhn's augmenting paths.  Regular bipartite graphs always admit a
  // perfect matching, so every augmentation succeeds.
  std::vector<int> match_right(g.right, -1);  // edge index matched at v
  std::vector<char> visited(g.right, 0);
  auto augment = [&](auto&& self, int u) -> bool {
    for (int e : adj[u]) {
      int v = g.edges[e].second;
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] == -1 ||
          self(self, g.edges[match_right[v]].first)) {
        match_right[v] = e;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < g.left; ++u) {
    std::fill(visited.begin(), visited.end(), 0);
    bool ok = augment(augment, u);
    assert(ok);
    (void)ok;
  }

  std::vector<int> out;
  for (int v = 0; v < g.right; ++v) out.push_back(match_right[v]);
  std::sort(out.begin(), out.end());

  // Structural audit: never trust the solver.
  std::vector<char> seen_l(g.left, 0), seen_r(g.right, 0);
  for (int e : out) {
    auto [u, v] = g.edges[e];
    assert(!seen_l[u] && !seen_r[v]);
    seen_l[u] = seen_r[v] = 1;
  }
  assert(int(out.size()) == g.left);
  return out;
}

std::optional<BipartiteMultigraph> regularize(const BipartiteMultigraph& g,
                                              int beta_abs, std::string* err) {
  if (beta_abs < 1) {
    fail(err, "capping degree must be positive");
    return std::nullopt;
  }
  std::vector<int> ldeg(g.left, 0), rdeg(g.right, 0);
  for (auto [u, v] : g.edges) {
    if (u < 0 || u >= g.left || v < 0 || v >= g.right) {
      fail(err, "edge out of range");
      return std::nullopt;
    }
    ++ldeg[u];
    ++rdeg[v];
  }
  for (int u = 0; u < g.left; ++u)
    if (ldeg[u] != beta_abs) {
      fail(err, "degree audit failed: black vertex " + std::to_string(u) +
                    " has degree " + std::to_string(ldeg[u]) + ", expected " +
                    std::to_string(beta_abs));
      return std::nullopt;
    }
  for (int v = 0; v < g.right; ++v)
    if (rdeg[v] != 1) {
      fail(err, "degree audit failed: white vertex " + std::to_string(v) +
                    " has degree " + std::to_string(rdeg[v]) + ", expected 1");
      return std::nullopt;
    }

  // beta_abs disjoint black copies, whites shared: copy i of black u is
  // vertex i*g.left + u.  Copy 0 comes first, edge-for-edge.
  BipartiteMultigraph out;
  out.left = g.left * beta_abs;
  out.right = g.right;
  for (int i = 0; i < beta_abs; ++i)
    for (auto [u, v] : g.edges) out.edges.emplace_back(i * g.left + u, v);
  return out;
}

ElectroBound electro_bound(long long f, long long g, long long n,
                           long long charge) {
  assert(f >= 0 && g >= 0 && n >= 0 && charge >= 0);
  ElectroBound out;
  out.f = f;
  out.g = g;
  out.n = n;
  out.charge = charge;
  out.bound = charge * f * (g + 1) + n * n;
  return out;
}

std::optional<GraphFixture> load_graph(const std::string& text,
                                       std::string* err) {
  GraphFixture fx;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  auto parse_int = [](const std::string& tok, int* out) {
    std::size_t used = 0;
    try {
      *out = std::stoi(tok, &used);
    } catch (...) {
      return false;
    }
    return used == tok.size();
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    std::vector<int> vals(toks.size());
    for (std::size_t k = 0; k < toks.size(); ++k)
      if (!parse_int(toks[k], &vals[k])) {
        fail(err, "line " + std::to_string(lineno) + ": bad integer '" +
                      toks[k] + "'");
        return std::nullopt;
      }
    if (!have_header) {
      if (vals.size() != 3 || vals[0] < 0 || vals[1] < 0 || vals[2] < 1) {
        fail(err, "line " + std::to_string(lineno) +
                      ": expected header 'L R d'");
        return std::nullopt;
      }
      fx.g.left = vals[0];
      fx.g.right = vals[1];
      fx.degree = vals[2];
      have_header = true;
      continue;
    }
    if (vals.size() != 2) {
      fail(err, "line " + std::to_string(lineno) + ": expected edge 'u v'");
      return std::nullopt;
    }
    int u = vals[0], v = vals[1];
    if (u < 0 || u >= fx.g.left || v < 0 || v >= fx.g.right) {
      fail(err, "line " + std::to_string(lineno) + ": edge (" +
                    std::to_string(u) + ", " + std::to_string(v) +
                    ") is out of range");
      return std::nullopt;
    }
    fx.g.edges.emplace_back(u, v);
  }
  if (!have_header) {
    fail(err, "missing header line 'L R d'");
    return std::nullopt;
  }
  return fx;
}

}  // namespace mtdehn
