#pragma once
// Words over finitely generated groups: freely reduced words, cyclic words,
// split product words, and alternating normal forms for Z^2 * Z.
//
// A letter is a signed generator index: +(i+1) encodes generator i,
// -(i+1) encodes its inverse.  Words are kept freely reduced at all times.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mtdehn {

using Letter = int32_t;
using Letters = std::vector<Letter>;

inline int gen_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline int sign_of(Letter l) { return l > 0 ? +1 : -1; }
inline Letter inv_letter(Letter l) { return -l; }
inline Letter make_letter(int gen, int sign) {
  return sign > 0 ? Letter(gen + 1) : Letter(-(gen + 1));
}

// Shortlex letter key: a < a^-1 < b < b^-1 < ...
inline int letter_key(Letter l) { return 2 * gen_of(l) + (l < 0 ? 1 : 0); }

class FreeWord {
 public:
  FreeWord() = default;
  // Reduces on construction; any letter sequence is accepted.
  explicit FreeWord(std::vector<Letter> letters);

  static FreeWord from_gen(int gen, int sign = +1) {
    return FreeWord({make_letter(gen, sign)});
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& rhs) const;
  FreeWord pow(long long n) const;
  bool operator==(const FreeWord& rhs) const { return letters_ == rhs.letters_; }
  bool operator!=(const FreeWord& rhs) const { return letters_ != rhs.letters_; }

  // Shortlex order: length first, then letter_key lexicographically.
  bool shortlex_less(const FreeWord& rhs) const;

  // Exponent sum of generator `gen`.
  long long exp_sum(int gen) const;
  // Largest generator index used, or -1 for the empty word.
  int max_gen() const;

 private:
  std::vector<Letter> letters_;  // invariant: freely reduced
};

// One free reduction pass (single stack sweep); exposed for oracle tests.
std::vector<Letter> free_reduce(const std::vector<Letter>& in);

// Cyclic word: original == conjugator^-1 * core * conjugator, core cyclically reduced.
struct CyclicWord {
  FreeWord core;
  FreeWord conjugator;
};

CyclicWord cyclic_reduce(const FreeWord& w);

// Cyclically reduced length ||w||.
std::size_t cyclic_length(const FreeWord& w);

// All rotations of a cyclically reduced word (identity rotation first).
std::vector<FreeWord> rotations(const FreeWord& core);

// Finds h with w == h^-1 * v * h, or nullopt if w and v are not conjugate.
// Among the rotation offsets of v's core the shortlex-least valid h is chosen.
std::optional<FreeWord> conjugacy_match(const FreeWord& w, const FreeWord& v);

// Element of a direct product: component in the first factor, component in the
// second factor (for F_k x Z the second factor is the single central letter).
struct ProductWord {
  FreeWord first;
  FreeWord second;

  bool operator==(const ProductWord& rhs) const {
    return first == rhs.first && second == rhs.second;
  }
  std::size_t size() const { return first.size() + second.size(); }
  bool trivial() const { return first.empty() && second.empty(); }
};

// Alternating normal form over Z^2 * Z = <a,b | [a,b]> * <c>:
//   u_1 c^{e_1} u_2 c^{e_2} ... u_n c^{e_n} u_{n+1}
// with Z^2 syllables u_i = a^{p_i} b^{q_i}, e_i != 0, and interior u_i != 0.
struct AlternatingWord {
  // syllables.size() == eps.size() + 1
  std::vector<std::pair<long long, long long>> syllables{{0, 0}};
  std::vector<long long> eps;

  std::size_t c_runs() const { return eps.size(); }
  bool trivial() const;
  // |u| summed as |p|+|q| per syllable plus |e_i| per c-run.
  long long length() const;
  bool operator==(const AlternatingWord& rhs) const {
    return syllables == rhs.syllables && eps == rhs.eps;
  }
};

// Normalizes a letter sequence over {a=0, b=1, c=2}.
AlternatingWord alternating_normal_form(const std::vector<Letter>& letters);

AlternatingWord alt_mul(const AlternatingWord& x, const AlternatingWord& y);
AlternatingWord alt_inverse(const AlternatingWord& x);
// Flattens back to letters (a^p b^q c^e ...).
std::vector<Letter> alt_letters(const AlternatingWord& x);

// Token I/O.  Words are whitespace-separated tokens: `a`, `a^-1`, `a^3`; `1`
// denotes the empty word.  Names supplies the printable generator names.
std::optional<std::vector<Letter>> parse_letters(const std::string& text,
                                                 const std::vector<std::string>& names,
                                                 std::string* error);
std::string print_letters(const std::vector<Letter>& letters,
                          const std::vector<std::string>& names);

}  // namespace mtdehn
