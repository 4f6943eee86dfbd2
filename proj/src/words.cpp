#include "mtdehn/words.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

namespace mtdehn {

std::vector<Letter> free_reduce(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (Letter l : in) {
    if (l == 0) continue;
    if (!out.empty() && out.back() == inv_letter(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

FreeWord::FreeWord(std::vector<Letter> letters) : letters_(free_reduce(letters)) {}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = inv_letter(l);
  FreeWord w;
  w.letters_ = std::move(out);  // inverse of reduced word is reduced
  return w;
}

FreeWord FreeWord::operator*(const FreeWord& rhs) const {
  std::vector<Letter> cat = letters_;
  cat.insert(cat.end(), rhs.letters_.begin(), rhs.letters_.end());
  return FreeWord(std::move(cat));
}

FreeWord FreeWord::pow(long long n) const {
  FreeWord base = n >= 0 ? *this : inverse();
  long long m = n >= 0 ? n : -n;
  FreeWord acc;
  for (long long i = 0; i < m; ++i) acc = acc * base;
  return acc;
}

bool FreeWord::shortlex_less(const FreeWord& rhs) const {
  if (letters_.size() != rhs.letters_.size())
    return letters_.size() < rhs.letters_.size();
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    int a = letter_key(letters_[i]), b = letter_key(rhs.letters_[i]);
    if (a != b) return a < b;
  }
  return false;
}

long long FreeWord::exp_sum(int gen) const {
  long long s = 0;
  for (Letter l : letters_)
    if (gen_of(l) == gen) s += sign_of(l);
  return s;
}

int FreeWord::max_gen() const {
  int m = -1;
  for (Letter l : letters_) m = std::max(m, gen_of(l));
  return m;
}

CyclicWord cyclic_reduce(const FreeWord& w) {
  std::vector<Letter> core = w.letters();
  std::vector<Letter> peeled;  // letters peeled from the front, in order
  while (core.size() >= 2 && core.front() == inv_letter(core.back())) {
    peeled.push_back(core.front());
    core.erase(core.begin());
    core.pop_back();
  }
  // w == peeled * core * peeled^-1 == conj^-1 * core * conj with conj = peeled^-1
  CyclicWord out;
  FreeWord p(std::move(peeled));
  out.conjugator = p.inverse();
  FreeWord c;
  c = FreeWord(std::move(core));
  out.core = c;
  return out;
}

std::size_t cyclic_length(const FreeWord& w) { return cyclic_reduce(w).core.size(); }

std::vector<FreeWord> rotations(const FreeWord& core) {
  std::vector<FreeWord> out;
  const auto& ls = core.letters();
  std::size_t n = ls.size();
  out.reserve(n == 0 ? 1 : n);
  if (n == 0) {
    out.push_back(core);
    return out;
  }
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Letter> rot(ls.begin() + r, ls.end());
    rot.insert(rot.end(), ls.begin(), ls.begin() + r);
    out.push_back(FreeWord(std::move(rot)));
  }
  return out;
}

std::optional<FreeWord> conjugacy_match(const FreeWord& w, const FreeWord& v) {
  CyclicWord cw = cyclic_reduce(w);
  CyclicWord cv = cyclic_reduce(v);
  if (cw.core.size() != cv.core.size()) return std::nullopt;
  if (cw.core.empty()) {
    // Both trivial; the empty conjugator is least.
    return FreeWord();
  }
  // w = p^-1 u_w p, v = q^-1 u_v q.  If rotating u_v by r letters gives u_w,
  // then u_w = s^-1 u_v s for the length-r prefix s, and h = q^-1 s p works.
  const auto& uv = cv.core.letters();
  std::optional<FreeWord> best;
  for (std::size_t r = 0; r < uv.size(); ++r) {
    std::vector<Letter> rot(uv.begin() + r, uv.end());
    rot.insert(rot.end(), uv.begin(), uv.begin() + r);
    if (FreeWord(std::move(rot)) != cw.core) continue;
    FreeWord s(std::vector<Letter>(uv.begin(), uv.begin() + r));
    FreeWord h = cv.conjugator.inverse() * s * cw.conjugator;
    if (!best || h.shortlex_less(*best)) best = h;
  }
  if (best) {
    // Contract check: w == h^-1 v h exactly.
    assert(best->inverse() * v * *best == w);
  }
  return best;
}

bool AlternatingWord::trivial() const {
  return eps.empty() && syllables.size() == 1 && syllables[0] == std::pair<long long, long long>{0, 0};
}

long long AlternatingWord::length() const {
  long long n = 0;
  for (const auto& [p, q] : syllables) n += std::llabs(p) + std::llabs(q);
  for (long long e : eps) n += std::llabs(e);
  return n;
}

namespace {

// Appends one syllable/c-run onto a normal form in progress, merging as needed.
struct AltBuilder {
  AlternatingWord w;

  void push_ab(long long p, long long q) {
    auto& [cp, cq] = w.syllables.back();
    cp += p;
    cq += q;
  }

  void push_c(long long e) {
    if (e == 0) return;
    if (!w.eps.empty() && w.syllables.back() == std::pair<long long, long long>{0, 0}) {
      // ... c^d [0] c^e ...  merges to c^{d+e}
      w.eps.back() += e;
      if (w.eps.back() == 0) {
        // Full cancellation: drop the run and merge flanking syllables.
        w.eps.pop_back();
        auto dropped = w.syllables.back();
        (void)dropped;  // dropped syllable is (0,0)
        w.syllables.pop_back();
      }
    } else {
      w.eps.push_back(e);
      w.syllables.push_back({0, 0});
    }
  }
};

}  // namespace

AlternatingWord alternating_normal_form(const std::vector<Letter>& letters) {
  AltBuilder b;
  for (Letter l : letters) {
    int g = gen_of(l);
    int s = sign_of(l);
    if (g == 0)
      b.push_ab(s, 0);
    else if (g == 1)
      b.push_ab(0, s);
    else
      b.push_c(s);
  }
  return b.w;
}

AlternatingWord alt_mul(const AlternatingWord& x, const AlternatingWord& y) {
  AltBuilder b;
  b.w = x;
  b.push_ab(y.syllables[0].first, y.syllables[0].second);
  for (std::size_t i = 0; i < y.eps.size(); ++i) {
    b.push_c(y.eps[i]);
    b.push_ab(y.syllables[i + 1].first, y.syllables[i + 1].second);
  }
  return b.w;
}

AlternatingWord alt_inverse(const AlternatingWord& x) {
  AlternatingWord out;
  out.syllables.clear();
  for (auto it = x.syllables.rbegin(); it != x.syllables.rend(); ++it)
    out.syllables.push_back({-it->first, -it->second});
  for (auto it = x.eps.rbegin(); it != x.eps.rend(); ++it) out.eps.push_back(-*it);
  return out;
}

std::vector<Letter> alt_letters(const AlternatingWord& x) {
  std::vector<Letter> out;
  auto emit_pow = [&out](int gen, long long e) {
    for (long long i = 0; i < std::llabs(e); ++i)
      out.push_back(make_letter(gen, e > 0 ? +1 : -1));
  };
  emit_pow(0, x.syllables[0].first);
  emit_pow(1, x.syllables[0].second);
  for (std::size_t i = 0; i < x.eps.size(); ++i) {
    emit_pow(2, x.eps[i]);
    emit_pow(0, x.syllables[i + 1].first);
    emit_pow(1, x.syllables[i + 1].second);
  }
  return out;
}

std::optional<std::vector<Letter>> parse_letters(const std::string& text,
                                                 const std::vector<std::string>& names,
                                                 std::string* error) {
  std::vector<Letter> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    std::string base = tok;
    long long exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      base = tok.substr(0, caret);
      std::string e = tok.substr(caret + 1);
      char* end = nullptr;
      exp = std::strtoll(e.c_str(), &end, 10);
      if (e.empty() || (end && *end != '\0')) {
        if (error) *error = "bad exponent in token '" + tok + "'";
        return std::nullopt;
      }
    }
    int gen = -1;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == base) gen = int(i);
    if (gen < 0) {
      if (error) *error = "unknown generator '" + base + "'";
      return std::nullopt;
    }
    for (long long i = 0; i < std::llabs(exp); ++i)
      out.push_back(make_letter(gen, exp > 0 ? +1 : -1));
  }
  return out;
}

std::string print_letters(const std::vector<Letter>& letters,
                          const std::vector<std::string>& names) {
  if (letters.empty()) return "1";
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    long long run = (long long)(j - i) * sign_of(letters[i]);
    if (!first) out << ' ';
    first = false;
    out << names[gen_of(letters[i])];
    if (run != 1) out << '^' << run;
    i = j;
  }
  return out.str();
}

}  // namespace mtdehn
