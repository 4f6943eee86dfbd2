#include "mtdehn/growth.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>

namespace mtdehn {

double log2_big(const BigInt& x) {
  assert(x > 0);
  unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 52) return std::log2(x.convert_to<double>());
  BigInt top = x >> (bits - 52);
  return std::log2(top.convert_to<double>()) + double(bits - 52);
}

std::optional<LengthSeries> iterate_lengths(const FreeAut& f, const FreeWord& seed,
                                            int n_max, long long word_budget,
                                            std::string* err) {
  LengthSeries out;
  out.len.reserve(n_max + 1);
  out.cyc.reserve(n_max + 1);
  FreeWord w = seed;
  out.len.push_back(BigInt(w.size()));
  out.cyc.push_back(BigInt(cyclic_length(w)));
  int n = 0;
  while (n < n_max) {
    FreeWord next = free_apply(f, w);
    if ((long long)next.size() > word_budget) break;
    w = std::move(next);
    ++n;
    out.len.push_back(BigInt(w.size()));
    out.cyc.push_back(BigInt(cyclic_length(w)));
  }
  out.materialized_upto = n;
  if (n == n_max) return out;

  // Closure certificate: collect every signed letter and adjacent pair that can
  // occur from w onward (pairs of the cyclic word, so the wrap is included).
  // If no image junction cancels, each application of f concatenates reduced
  // image words with no cancellation, so letter counts follow an exact linear
  // recursion and every iterate is cyclically reduced.
  const int k2 = 2 * f.rank;
  auto image_of = [&](int key) {
    int gen = key / 2;
    return (key % 2 == 0) ? f.img[gen] : f.img[gen].inverse();
  };
  std::vector<FreeWord> img(k2);
  for (int key = 0; key < k2; ++key) img[key] = image_of(key);
  for (int key = 0; key < k2; ++key) assert(!img[key].empty());

  std::vector<bool> in_l(k2, false);
  std::vector<bool> in_p(std::size_t(k2) * k2, false);
  std::vector<int> letters_todo;
  std::vector<std::pair<int, int>> pairs_todo;
  auto add_letter = [&](int key) {
    if (!in_l[key]) {
      in_l[key] = true;
      letters_todo.push_back(key);
    }
  };
  auto add_pair = [&](int x, int y) {
    if (!in_p[std::size_t(x) * k2 + y]) {
      in_p[std::size_t(x) * k2 + y] = true;
      pairs_todo.push_back({x, y});
    }
  };
  const auto& ls = w.letters();
  for (Letter l : ls) add_letter(letter_key(l));
  for (std::size_t i = 0; i < ls.size(); ++i)
    add_pair(letter_key(ls[i]), letter_key(ls[(i + 1) % ls.size()]));

  bool cancels = false;
  while (!letters_todo.empty() || !pairs_todo.empty()) {
    if (!letters_todo.empty()) {
      int x = letters_todo.back();
      letters_todo.pop_back();
      const auto& im = img[x].letters();
      for (Letter l : im) add_letter(letter_key(l));
      for (std::size_t i = 0; i + 1 < im.size(); ++i)
        add_pair(letter_key(im[i]), letter_key(im[i + 1]));
    } else {
      auto [x, y] = pairs_todo.back();
      pairs_todo.pop_back();
      Letter last = img[x][img[x].size() - 1];
      Letter first = img[y][0];
      if (last == inv_letter(first)) {
        cancels = true;
        break;
      }
      add_pair(letter_key(last), letter_key(first));
    }
  }
  if (cancels) {
    if (err)
      *err = "word-length budget exceeded at n = " + std::to_string(n + 1) +
             " and no cancellation-free certificate covers the tail";
    return std::nullopt;
  }

  // v[key] counts occurrences of the signed letter; counts of f(u) are M v(u).
  IntMatrix M(k2);
  for (int x = 0; x < k2; ++x)
    for (Letter l : img[x].letters()) M.at(letter_key(l), x) += 1;
  std::vector<BigInt> v(k2, 0);
  for (Letter l : ls) v[letter_key(l)] += 1;
  for (int step = n; step < n_max; ++step) {
    std::vector<BigInt> nv(k2, 0);
    for (int i = 0; i < k2; ++i)
      for (int j = 0; j < k2; ++j)
        if (M.at(i, j) != 0) nv[i] += M.at(i, j) * v[j];
    v = std::move(nv);
    BigInt total = 0;
    for (const BigInt& c : v) total += c;
    out.len.push_back(total);
    out.cyc.push_back(total);
  }
  out.certified_tail = true;
  return out;
}

std::vector<FreeWord> default_probes(int rank) {
  std::vector<FreeWord> out;
  for (int i = 0; i < rank; ++i) out.push_back(FreeWord::from_gen(i));
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      FreeWord xi = FreeWord::from_gen(i), xj = FreeWord::from_gen(j);
      out.push_back(xi.inverse() * xj.inverse() * xi * xj);
    }
  return out;
}

std::vector<std::string> free_gen_names(int rank) {
  if (rank == 2) return {"a", "b"};
  std::vector<std::string> out;
  for (int i = 0; i < rank; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

BigInt GrowthTable::g(int n) const {
  BigInt best = 0;
  for (int p = 0; p < rank; ++p) best = std::max(best, fwd[p].len[n]);
  return best;
}

BigInt GrowthTable::max_cyclic(int n) const {
  BigInt best = 0;
  for (std::size_t p = 0; p < sample.size(); ++p) {
    best = std::max(best, fwd[p].cyc[n]);
    best = std::max(best, bwd[p].cyc[n]);
  }
  return best;
}

std::optional<GrowthTable> growth_table(const FreeAut& f, int n_max,
                                        const std::vector<FreeWord>& extra_probes,
                                        long long word_budget, std::string* err) {
  GrowthTable t;
  t.n_max = n_max;
  t.rank = f.rank;
  t.sample = default_probes(f.rank);
  for (const FreeWord& w : extra_probes) {
    bool dup = false;
    for (const FreeWord& have : t.sample) dup = dup || have == w;
    if (!dup) t.sample.push_back(w);
  }
  FreeAut finv = free_inverse(f);
  std::vector<std::string> names = free_gen_names(f.rank);
  for (const FreeWord& probe : t.sample) {
    std::string why;
    auto fw = iterate_lengths(f, probe, n_max, word_budget, &why);
    if (!fw) {
      if (err) *err = "probe '" + print_letters(probe.letters(), names) + "': " + why;
      return std::nullopt;
    }
    auto bw = iterate_lengths(finv, probe, n_max, word_budget, &why);
    if (!bw) {
      if (err) *err = "probe '" + print_letters(probe.letters(), names) + "': " + why;
      return std::nullopt;
    }
    t.fwd.push_back(std::move(*fw));
    t.bwd.push_back(std::move(*bw));
  }
  return t;
}

std::string growth_table_csv(const GrowthTable& t) {
  std::vector<std::string> names = free_gen_names(t.rank);
  std::ostringstream out;
  out << "n";
  for (const FreeWord& probe : t.sample) {
    std::string p = print_letters(probe.letters(), names);
    out << ",\"len(" << p << ")\",\"cyc(" << p << ")\",\"len-(" << p
        << ")\",\"cyc-(" << p << ")\"";
  }
  out << "\n";
  for (int n = 0; n <= t.n_max; ++n) {
    out << n;
    for (std::size_t p = 0; p < t.sample.size(); ++p)
      out << ',' << t.fwd[p].len[n].str() << ',' << t.fwd[p].cyc[n].str() << ','
          << t.bwd[p].len[n].str() << ',' << t.bwd[p].cyc[n].str();
    out << "\n";
  }
  return out.str();
}

std::string growth_kind_name(GrowthKind k) {
  switch (k) {
    case GrowthKind::Periodic:
      return "Periodic";
    case GrowthKind::Polynomial:
      return "Polynomial";
    case GrowthKind::Exponential:
      return "Exponential";
  }
  std::abort();
}

GrowthClass classify_growth_f2(const FreeAut& f) {
  assert(f.rank == 2);
  MatrixClass mc = classify_matrix(abelianization(f));
  GrowthClass out;
  out.exactness = Exactness::Exact;
  switch (mc.kind) {
    case MatrixClassKind::FiniteOrder: {
      out.kind = GrowthKind::Periodic;
      out.period = mc.order;
      // Out(F_2) ~ GL(2,Z): the matrix order is the outer order, so f^order
      // is inner; the extraction doubles as a verification.
      auto g = free_inner_extract(free_power(f, mc.order));
      assert(g.has_value());
      out.basis_degree = g->empty() ? 0 : 1;
      break;
    }
    case MatrixClassKind::UnitParabolic:
      out.kind = GrowthKind::Polynomial;
      out.cyclic_degree = 1;
      out.basis_degree = 1;
      break;
    case MatrixClassKind::NonUnitEigenvalue:
      out.kind = GrowthKind::Exponential;
      break;
  }
  return out;
}

std::optional<PeriodicityCertificate> periodicity_certificate(const FreeAut& f,
                                                              int max_period) {
  FreeAut fp = free_identity(f.rank);
  for (int p = 1; p <= max_period; ++p) {
    fp = free_compose(fp, f);
    if (auto g = free_inner_extract(fp))
      return PeriodicityCertificate{p, *g};
  }
  return std::nullopt;
}

namespace {

// Least-squares slope of log2(series) against log2(n) over [lo, hi].
double fit_slope(const std::vector<BigInt>& series, int lo, int hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int n = lo; n <= hi; ++n) {
    double x = std::log2(double(n));
    double y = series[n] > 0 ? log2_big(series[n]) : 0.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  double denom = m * sxx - sx * sx;
  return denom == 0 ? 0.0 : (m * sxy - sx * sy) / denom;
}

}  // namespace

GrowthEstimate estimate_growth(const FreeAut& f, int n_max,
                               const std::vector<FreeWord>& extra_probes,
                               long long word_budget) {
  GrowthEstimate out;
  std::string err;
  auto t = growth_table(f, n_max, extra_probes, word_budget, &err);
  if (!t) {
    out.note = err;
    return out;
  }
  out.table = std::move(*t);
  const GrowthTable& tab = out.table;

  std::vector<BigInt> cyc(n_max + 1), len(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    cyc[n] = tab.max_cyclic(n);
    BigInt b = 0;
    for (std::size_t p = 0; p < tab.sample.size(); ++p) {
      b = std::max(b, tab.fwd[p].len[n]);
      b = std::max(b, tab.bwd[p].len[n]);
    }
    len[n] = b;
  }

  int lo = n_max / 2;
  // Ratio test for exponential growth: every window ratio at least 1.05 and no
  // decreasing trend (Fibonacci-type ratios oscillate, so a strict increase
  // test would be wrong; a trend guard separates genuine exponentials from
  // high-degree polynomials whose ratios sink toward 1).
  bool all_big = true;
  double first_ratio = 0, last_ratio = 0;
  for (int n = lo; n < n_max; ++n) {
    if (cyc[n] == 0 || cyc[n + 1] == 0) {
      all_big = false;
      break;
    }
    double r = std::exp2(log2_big(cyc[n + 1]) - log2_big(cyc[n]));
    if (n == lo) first_ratio = r;
    last_ratio = r;
    if (r < 1.05) all_big = false;
  }
  if (all_big && last_ratio >= 0.98 * first_ratio) {
    GrowthClass g;
    g.kind = GrowthKind::Exponential;
    g.exactness = Exactness::Heuristic;
    std::ostringstream note;
    note << "cyclic length ratios stay above 1.05 over n in [" << lo << ","
         << n_max << "] (first " << first_ratio << ", last " << last_ratio << ")";
    out.note = note.str();
    out.result = g;
    return out;
  }

  double slope_cyc = fit_slope(cyc, lo, n_max);
  double slope_len = fit_slope(len, lo, n_max);
  long long d_cyc = std::llround(slope_cyc);
  long long d_len = std::llround(slope_len);
  std::ostringstream note;
  note << "log-log slopes over n in [" << lo << "," << n_max << "]: cyclic "
       << slope_cyc << ", basis " << slope_len;
  out.note = note.str();
  if (std::abs(slope_cyc - double(d_cyc)) > 0.25 ||
      std::abs(slope_len - double(d_len)) > 0.25 || d_cyc < 0 || d_len < 0) {
    out.note += "; no integer degree within tolerance 0.25";
    return out;
  }
  GrowthClass g;
  g.kind = d_cyc == 0 ? GrowthKind::Periodic : GrowthKind::Polynomial;
  g.cyclic_degree = int(d_cyc);
  g.basis_degree = int(d_len);
  g.exactness = Exactness::Heuristic;
  out.result = g;
  return out;
}

}  // namespace mtdehn
