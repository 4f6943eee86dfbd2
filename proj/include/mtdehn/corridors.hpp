#pragma once
// Corridor combinatorics on annular boundary words.
//
// A boundary word w is a cyclic word over an alphabet containing a
// distinguished corridor letter c and a distinguished stable letter t.
// A c-pairing matches every occurrence of c^{+1} with an occurrence of
// c^{-1} such that the chords drawn inside the boundary circle do not
// cross.  Each pair spans a corridor; its length is the absolute value
// of the t-exponent sum of either boundary arc between the paired
// letters (both arcs agree when w has total t-exponent sum zero).
//
// Removing the corridors cuts the disc into complementary regions.  We
// never build the planar diagrams themselves; the region boundary words
// are reconstructed combinatorially: walking the arcs of w and crossing
// each corridor along its side, which reads as a pure power of t.  Every
// region word has t-exponent sum zero and length at most |w|.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtdehn/words.hpp"

namespace mtdehn {

// Names the alphabet of a boundary word and singles out the corridor
// letter and the stable letter.
struct BoundaryAlphabet {
  std::vector<std::string> names;
  int c = -1;  // index of the corridor letter
  int t = -1;  // index of the stable letter
};

// {a, c, t} with c = 1, t = 2.
BoundaryAlphabet boundary_act();
// {a, b, c, t} with c = 2, t = 3.
BoundaryAlphabet boundary_abct();

// A pairing of c with c^-1 occurrences, as unordered position pairs.
struct CPairing {
  std::vector<std::pair<int, int>> pairs;
};

struct CorridorRecord {
  int pair_index = -1;  // index into CPairing::pairs
  int length = 0;       // |t-exponent sum| of either arc
  Letters side1;        // arc strictly between the paired positions
  Letters side2;        // complementary arc (wrapping around)
};

struct RegionRecord {
  int chord = -1;    // pair index of the enclosing chord; -1 = outer region
  Letters boundary;  // region boundary word (c-free, t-sum zero)
};

struct CorridorAnalysis {
  std::vector<CorridorRecord> corridors;
  std::vector<RegionRecord> regions;
};

// Checks that P is a valid c-pairing for w: indices in range and
// pairwise distinct, both endpoints are occurrences of the corridor
// letter with opposite signs, every occurrence of c^{+-1} is paired,
// chords are pairwise non-crossing, and each chord's inner arc has
// c-balance zero.
bool validate_pairing(const Letters& w, const CPairing& pairing,
                      const BoundaryAlphabet& alph, std::string* err = nullptr);

// Corridor lengths, side arcs, and complementary-region boundary words.
// Requires a valid pairing and total t-exponent sum zero.
std::optional<CorridorAnalysis> corridor_lengths(const Letters& w,
                                                 const CPairing& pairing,
                                                 const BoundaryAlphabet& alph,
                                                 std::string* err = nullptr);

// Substitutes t^{+-1} |-> t^{+-l}, carrying letter positions along.
// index_map[i] is the position in .word of the letter that was at
// position i of u (for a stable letter, of the first of its l copies).
struct TransferResult {
  Letters word;
  std::vector<int> index_map;
};
TransferResult ql_to_q1(const Letters& u, const BoundaryAlphabet& alph, int l);

// Transfers a pairing through ql_to_q1's index map.
CPairing transfer_pairing(const CPairing& pairing,
                          const std::vector<int>& index_map);

// Divisibility audit for corridor lengths after a ql_to_q1 transfer.
struct MultipleCheck {
  bool ok = true;
  std::vector<int> residues;  // length mod l, one per corridor
};
MultipleCheck multiple_of_l_check(const std::vector<CorridorRecord>& records,
                                  int l);

// Bipartite multigraph; parallel edges allowed, kept as a list.
struct BipartiteMultigraph {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> edges;
};

// Perfect matching of a d-regular bipartite multigraph, as indices into
// g.edges.  Fails (with a message) when the graph is not regular of
// positive degree; the returned matching is re-verified structurally
// before being handed back.
std::optional<std::vector<int>> one_factor(const BipartiteMultigraph& g,
                                           std::string* err = nullptr);

// Capping-face regularization: input has every left (black) vertex of
// degree exactly beta_abs and every right (white) vertex of degree
// exactly 1.  The output glues beta_abs copies of the graph along the
// white vertices, giving a beta_abs-regular bipartite multigraph whose
// first g.edges.size() edges are the copy-1 image of the input.
std::optional<BipartiteMultigraph> regularize(const BipartiteMultigraph& g,
                                              int beta_abs,
                                              std::string* err = nullptr);

// Electrostatic-model area accounting: bound = C*f*(g+1) + n^2.
struct ElectroBound {
  long long f = 0;
  long long g = 0;
  long long n = 0;
  long long charge = 0;
  long long bound = 0;
};
ElectroBound electro_bound(long long f, long long g, long long n,
                           long long charge);

// Graph fixture format: first line "L R d", then one "u v" edge per
// line; '#' starts a comment.  d is the declared left-degree, audited
// against the edge list.
struct GraphFixture {
  BipartiteMultigraph g;
  int degree = 0;
};
std::optional<GraphFixture> load_graph(const std::string& text,
                                       std::string* err = nullptr);

}  // namespace mtdehn
