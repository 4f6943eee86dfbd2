#include "mtdehn/cli.hpp"

#include <cassert>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mtdehn/growth.hpp"
#include "mtdehn/normalize.hpp"

namespace mtdehn {

namespace {

std::string kind_token(GroupKind k) {
  switch (k) {
    case GroupKind::Zk: return "zk";
    case GroupKind::F2: return "f2";
    case GroupKind::F2xZ: return "f2xz";
    case GroupKind::Z2astZ: return "z2astz";
    case GroupKind::FkxFl: return "fkxfl";
    case GroupKind::FkxZ: return "fkxz";
  }
  return "?";
}

struct Tok {
  std::string text;
  int col = 0;  // 1-based
};

std::vector<Tok> tokenize(const std::string& line) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != '#' &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

bool parse_int(const std::string& s, long long* out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) return false;
    *out = v;
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace

std::string spec_error_string(const SpecError& e) {
  return "line " + std::to_string(e.line) + ", col " + std::to_string(e.column) +
         ": " + e.message;
}

std::optional<SpecFile> parse_spec(const std::string& text, SpecError* err) {
  auto fail = [&](int line, int col,
                  const std::string& msg) -> std::optional<SpecFile> {
    if (err) *err = {line, col, msg};
    return std::nullopt;
  };

  SpecFile spec;
  bool have_group = false;
  std::vector<std::vector<bool>> img_seen, inv_seen;
  std::vector<bool> inv_opened;
  enum class Block { None, Img, Inv };
  Block block = Block::None;
  int block_aut = -1;

  auto aut_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < spec.auts.size(); ++i)
      if (spec.auts[i].name == name) return static_cast<int>(i);
    return -1;
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::vector<Tok> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;

    if (head == "group") {
      block = Block::None;
      if (have_group) return fail(lineno, toks[0].col, "duplicate group line");
      if (toks.size() < 4 || toks[2].text != "ranks")
        return fail(lineno, toks[0].col, "expected: group <kind> ranks <k> [<l>]");
      const std::string& kind = toks[1].text;
      const bool two_ranks = kind == "fkxfl";
      long long r1 = 0, r2 = 0;
      if (!parse_int(toks[3].text, &r1) || r1 <= 0)
        return fail(lineno, toks[3].col, "rank must be a positive integer");
      if (two_ranks) {
        if (toks.size() != 5)
          return fail(lineno, toks[0].col, "fkxfl takes two ranks");
        if (!parse_int(toks[4].text, &r2) || r2 <= 0)
          return fail(lineno, toks[4].col, "rank must be a positive integer");
      } else if (toks.size() != 4) {
        return fail(lineno, toks[4].col, "unexpected token after the rank");
      }
      if (kind == "zk") {
        spec.ctx = GroupContext::zk(static_cast<int>(r1));
      } else if (kind == "f2") {
        if (r1 != 2) return fail(lineno, toks[3].col, "f2 has rank 2");
        spec.ctx = GroupContext::f2();
      } else if (kind == "f2xz") {
        if (r1 != 2) return fail(lineno, toks[3].col, "f2xz has free rank 2");
        spec.ctx = GroupContext::f2xz();
      } else if (kind == "z2astz") {
        if (r1 != 2) return fail(lineno, toks[3].col, "z2astz has abelian rank 2");
        spec.ctx = GroupContext::z2astz();
      } else if (kind == "fkxfl") {
        if (r1 < 2 || r2 < 2)
          return fail(lineno, toks[3].col, "free factors need rank >= 2");
        spec.ctx = GroupContext::fkxfl(static_cast<int>(r1), static_cast<int>(r2));
      } else if (kind == "fkxz") {
        if (r1 < 3) return fail(lineno, toks[3].col, "fkxz needs free rank >= 3");
        spec.ctx = GroupContext::fkxz(static_cast<int>(r1));
      } else {
        return fail(lineno, toks[1].col,
                    "unknown group kind '" + kind +
                        "' (zk, f2, f2xz, z2astz, fkxfl, fkxz)");
      }
      have_group = true;
    } else if (head == "aut" || head == "inv") {
      if (!have_group)
        return fail(lineno, toks[0].col, "the group line must come first");
      if (toks.size() != 2)
        return fail(lineno, toks[0].col, "expected: " + head + " <name>");
      const std::string& name = toks[1].text;
      const int idx = aut_index(name);
      if (head == "aut") {
        if (idx >= 0)
          return fail(lineno, toks[1].col, "duplicate automorphism '" + name + "'");
        SpecAut a;
        a.name = name;
        a.line = lineno;
        a.img.assign(spec.ctx.n_gens(), {});
        a.inv.assign(spec.ctx.n_gens(), {});
        spec.auts.push_back(std::move(a));
        img_seen.emplace_back(spec.ctx.n_gens(), false);
        inv_seen.emplace_back(spec.ctx.n_gens(), false);
        inv_opened.push_back(false);
        block = Block::Img;
        block_aut = static_cast<int>(spec.auts.size()) - 1;
      } else {
        if (idx < 0)
          return fail(lineno, toks[1].col,
                      "inv block for unknown automorphism '" + name + "'");
        if (inv_opened[idx])
          return fail(lineno, toks[1].col, "duplicate inv block for '" + name + "'");
        inv_opened[idx] = true;
        block = Block::Inv;
        block_aut = idx;
      }
    } else if (head == "witness") {
      block = Block::None;
      if (!have_group)
        return fail(lineno, toks[0].col, "the group line must come first");
      if (toks.size() < 3)
        return fail(lineno, toks[0].col, "expected: witness <name> <word>");
      const int idx = aut_index(toks[1].text);
      if (idx < 0)
        return fail(lineno, toks[1].col,
                    "witness for unknown automorphism '" + toks[1].text + "'");
      if (spec.auts[idx].witness)
        return fail(lineno, toks[1].col,
                    "duplicate witness for '" + toks[1].text + "'");
      Letters word;
      for (std::size_t k = 2; k < toks.size(); ++k) {
        std::string perr;
        auto ls = parse_letters(toks[k].text, spec.ctx.gen_names(), &perr);
        if (!ls) return fail(lineno, toks[k].col, perr);
        word.insert(word.end(), ls->begin(), ls->end());
      }
      spec.auts[idx].witness = FreeWord(word);
    } else if (head == "run") {
      block = Block::None;
      if (spec.run) return fail(lineno, toks[0].col, "duplicate run line");
      if (toks.size() != 5 || toks[1].text != "n" || toks[3].text != "budget")
        return fail(lineno, toks[0].col, "expected: run n <lo>..<hi> budget <N>");
      const std::string& range = toks[2].text;
      const std::size_t dots = range.find("..");
      long long lo = 0, hi = 0, budget = 0;
      if (dots == std::string::npos || !parse_int(range.substr(0, dots), &lo) ||
          !parse_int(range.substr(dots + 2), &hi) || lo < 1 || hi < lo)
        return fail(lineno, toks[2].col, "range must be <lo>..<hi> with 1 <= lo <= hi");
      if (!parse_int(toks[4].text, &budget) || budget <= 0)
        return fail(lineno, toks[4].col, "budget must be a positive integer");
      spec.run = SpecRun{static_cast<int>(lo), static_cast<int>(hi), budget};
    } else {
      // Image line: <gen> -> <word>.
      const bool looks_image = toks.size() >= 2 && toks[1].text == "->";
      if (!looks_image)
        return fail(lineno, toks[0].col, "unknown directive '" + head + "'");
      if (!have_group)
        return fail(lineno, toks[0].col, "the group line must come first");
      if (block == Block::None)
        return fail(lineno, toks[0].col, "image line outside an aut/inv block");
      const int g = spec.ctx.gen_index(head);
      if (g < 0)
        return fail(lineno, toks[0].col, "undeclared generator '" + head + "'");
      if (toks.size() < 3)
        return fail(lineno, toks[1].col, "missing image word after '->'");
      Letters word;
      for (std::size_t k = 2; k < toks.size(); ++k) {
        std::string perr;
        auto ls = parse_letters(toks[k].text, spec.ctx.gen_names(), &perr);
        if (!ls) return fail(lineno, toks[k].col, perr);
        word.insert(word.end(), ls->begin(), ls->end());
      }
      auto& seen = (block == Block::Img ? img_seen : inv_seen)[block_aut];
      if (seen[g])
        return fail(lineno, toks[0].col, "duplicate image of '" + head + "'");
      seen[g] = true;
      auto& store =
          block == Block::Img ? spec.auts[block_aut].img : spec.auts[block_aut].inv;
      store[g] = word;
    }
  }

  if (!have_group) return fail(1, 1, "empty spec: missing group line");
  if (spec.auts.empty())
    return fail(lineno > 0 ? lineno : 1, 1, "spec declares no automorphisms");
  for (std::size_t i = 0; i < spec.auts.size(); ++i) {
    const SpecAut& a = spec.auts[i];
    for (int g = 0; g < spec.ctx.n_gens(); ++g)
      if (!img_seen[i][g])
        return fail(a.line, 1,
                    "automorphism '" + a.name + "' is missing the image of '" +
                        spec.ctx.gen_name(g) + "'");
    if (!inv_opened[i])
      return fail(a.line, 1,
                  "automorphism '" + a.name + "' has no inverse block (expected: inv " +
                      a.name + ")");
    for (int g = 0; g < spec.ctx.n_gens(); ++g)
      if (!inv_seen[i][g])
        return fail(a.line, 1,
                    "automorphism '" + a.name + "' is missing the inverse image of '" +
                        spec.ctx.gen_name(g) + "'");
  }
  return spec;
}

std::string print_spec(const SpecFile& spec) {
  const GroupContext& ctx = spec.ctx;
  const std::vector<std::string> names = ctx.gen_names();
  std::ostringstream out;
  out << "group " << kind_token(ctx.kind) << " ranks " << ctx.rank1;
  if (ctx.kind == GroupKind::FkxFl) out << " " << ctx.rank2;
  out << "\n";
  for (const SpecAut& a : spec.auts) {
    out << "\naut " << a.name << "\n";
    for (int g = 0; g < ctx.n_gens(); ++g)
      out << "  " << ctx.gen_name(g) << " -> " << print_letters(a.img[g], names)
          << "\n";
    out << "inv " << a.name << "\n";
    for (int g = 0; g < ctx.n_gens(); ++g)
      out << "  " << ctx.gen_name(g) << " -> " << print_letters(a.inv[g], names)
          << "\n";
    if (a.witness)
      out << "witness " << a.name << " "
          << print_letters(a.witness->letters(), names) << "\n";
  }
  if (spec.run)
    out << "\nrun n " << spec.run->n_lo << ".." << spec.run->n_hi << " budget "
        << spec.run->budget << "\n";
  return out.str();
}

std::optional<Automorphism> build_aut(const GroupContext& ctx, const SpecAut& a,
                                      std::string* err) {
  std::vector<Elem> img, inv;
  for (int g = 0; g < ctx.n_gens(); ++g) {
    img.push_back(elem_from_letters(ctx, a.img[g]));
    inv.push_back(elem_from_letters(ctx, a.inv[g]));
  }
  Automorphism psi = make_aut(ctx, std::move(img), std::move(inv));
  std::string verr;
  if (!validate_aut(psi, &verr)) {
    if (err) *err = "automorphism '" + a.name + "': " + verr;
    return std::nullopt;
  }
  return psi;
}

// ---------------------------------------------------------------------------
// Report generation.

namespace {

std::vector<int> doubling_range(int lo, int hi) {
  std::vector<int> out;
  for (long long n = lo; n <= hi; n *= 2) out.push_back(static_cast<int>(n));
  return out;
}

long long cells_of(const ShuffleCertificate& sc) {
  long long cells = 0;
  for (const ShuffleStage& st : sc.ledger) cells += st.before_length;
  return cells;
}

std::string oracle_status_name(OracleStatus s) {
  switch (s) {
    case OracleStatus::Exact: return "exact";
    case OracleStatus::Bracket: return "bracket";
    case OracleStatus::NotFillableWithinCap: return "not-fillable-within-cap";
  }
  return "?";
}

// t^-p g t^p (psi^p(g))^-1: an identity word of the mapping torus, with the
// stable letter encoded as generator index ctx.n_gens().  The tail inverts
// the image letter by letter, so for p = 1 the word is one of the
// presentation's conjugation relators verbatim.
Letters conj_word(const Automorphism& psi, int g, int p) {
  const GroupContext& ctx = psi.ctx;
  const int t = ctx.n_gens();
  Letters w;
  for (int i = 0; i < p; ++i) w.push_back(make_letter(t, -1));
  w.push_back(make_letter(g, +1));
  for (int i = 0; i < p; ++i) w.push_back(make_letter(t, +1));
  const Elem image = aut_apply(aut_power(psi, p), elem_gen(ctx, g));
  const Letters img = elem_letters(ctx, image);
  for (auto it = img.rbegin(); it != img.rend(); ++it)
    w.push_back(inv_letter(*it));
  return w;
}

void lower_bound_table(AutReport& rep, const Automorphism& psi,
                       const std::optional<FreeWord>& witness,
                       const std::vector<int>& ns, long long budget) {
  const GroupContext& ctx = psi.ctx;
  auto fill_bg = [&](const Automorphism& phi, const std::vector<int>& gens) {
    std::vector<LowerBoundRow> rows;
    for (int n : ns) {
      auto b = bg_lower_bound(phi, gens, n, budget);
      if (!b) break;
      rows.push_back({n, *b});
    }
    if (rows.empty()) return false;
    rep.lower_kind = "centralizer-orbit";
    rep.lower_bounds = std::move(rows);
    return true;
  };

  switch (ctx.kind) {
    case GroupKind::Zk: {
      std::vector<int> all(ctx.n_gens());
      for (int g = 0; g < ctx.n_gens(); ++g) all[g] = g;
      fill_bg(psi, all);
      break;
    }
    case GroupKind::F2:
      break;  // no generator subgroup is guaranteed invariant
    case GroupKind::F2xZ: {
      auto nf = normalize_f2xz(psi);
      if (!nf) break;
      // <b, c> is invariant for the periodic and parabolic normal forms; an
      // exponentially growing base keeps only the center.
      if (!fill_bg(nf->normal, {1, 2})) fill_bg(nf->normal, {2});
      break;
    }
    case GroupKind::Z2astZ: {
      auto nf = normalize_z2astz(psi);
      if (nf) fill_bg(nf->normal, {0, 1});
      break;
    }
    case GroupKind::FkxFl: {
      auto dec = decompose_fkxfl(psi);
      if (!dec) break;
      // The corridor terms take a min across the factors, so probe each
      // factor with its fastest-growing generator.
      auto best_probe = [](const FreeAut& f, int dir) {
        const FreeAut p = free_power(f, 6 * dir);
        int best = 0;
        std::size_t best_len = 0;
        for (int g = 0; g < f.rank; ++g) {
          const std::size_t len =
              free_apply(p, FreeWord(Letters{make_letter(g, 1)})).letters().size();
          if (len > best_len) {
            best_len = len;
            best = g;
          }
        }
        return FreeWord(Letters{make_letter(best, 1)});
      };
      const FreeWord x = best_probe(dec->phi1, -1);
      const FreeWord y = best_probe(dec->phi2, +1);
      std::vector<LowerBoundRow> rows;
      for (int n : ns) {
        auto wf = witness_lower_bound(dec->phi1, dec->phi2, n, x, y, budget);
        if (!wf) break;
        rows.push_back({n, wf->total});
      }
      if (!rows.empty()) {
        rep.lower_kind = "corridor-sum";
        rep.lower_bounds = std::move(rows);
      }
      break;
    }
    case GroupKind::FkxZ: {
      // A certified single-letter witness g gives the invariant plane <g, c>
      // of the squared map; otherwise only the center contributes.
      bool done = false;
      if (witness && witness->letters().size() == 1) {
        const int g = gen_of(witness->letters()[0]);
        done = fill_bg(aut_power(psi, 2), {g, ctx.rank1});
      }
      if (!done) fill_bg(psi, {ctx.rank1});
      break;
    }
  }
}

void shuffle_table(AutReport& rep, const Automorphism& psi, long long budget) {
  const GroupContext& ctx = psi.ctx;
  std::vector<int> gens = {0};
  if (ctx.n_gens() > 1) gens.push_back(ctx.n_gens() - 1);
  for (int g : gens)
    for (int p : {1, 2})
      rep.shuffles.push_back(t_shuffle(psi, conj_word(psi, g, p), budget));
}

void oracle_table(AutReport& rep, const Automorphism& psi, OracleMode mode) {
  if (mode == OracleMode::Off) return;
  const GroupContext& ctx = psi.ctx;
  const Presentation pres = mapping_torus(psi);
  const int cap = mode == OracleMode::Tiny ? 12 : 16;
  std::vector<Letters> words;
  words.push_back({make_letter(0, 1), make_letter(0, -1)});
  if (mode == OracleMode::Tiny) {
    words.push_back(conj_word(psi, 0, 1));
  } else {
    for (int g = 0; g < ctx.n_gens(); ++g) words.push_back(conj_word(psi, g, 1));
    words.push_back(conj_word(psi, 0, 2));
    const auto pairs = commuting_pairs(ctx);
    if (!pairs.empty()) {
      const auto [i, j] = pairs.front();
      words.push_back({make_letter(i, -1), make_letter(j, -1), make_letter(i, 1),
                       make_letter(j, 1)});
    }
  }
  for (const Letters& w : words) {
    if (static_cast<int>(w.size()) > cap) continue;
    OracleRow row;
    row.word = print_letters(w, pres.names);
    row.result = area_oracle(w, pres);
    rep.oracle_rows.push_back(std::move(row));
  }
}

void export_csv(const ReportBundle& bundle, const RunFlags& flags, int n_hi,
                long long budget) {
  namespace fs = std::filesystem;
  fs::create_directories(flags.csv_dir);
  const GroupContext& ctx = bundle.spec.ctx;
  for (std::size_t i = 0; i < bundle.reports.size(); ++i) {
    const AutReport& rep = bundle.reports[i];
    if (!rep.error.empty()) continue;
    if (!rep.lower_bounds.empty()) {
      std::ofstream out(fs::path(flags.csv_dir) / (rep.name + "_bounds.csv"));
      out << "n,bound\n";
      for (const LowerBoundRow& row : rep.lower_bounds)
        out << row.n << "," << row.bound.str() << "\n";
    }
    if (!rep.shuffles.empty()) {
      std::ofstream out(fs::path(flags.csv_dir) / (rep.name + "_shuffles.csv"));
      out << "word_length,stages,cells,certified,growth_constant\n";
      for (const ShuffleCertificate& sc : rep.shuffles)
        out << sc.input.size() << "," << sc.count << "," << cells_of(sc) << ","
            << (sc.certified ? 1 : 0) << "," << sc.growth_constant << "\n";
    }
    if (ctx.kind == GroupKind::FkxFl) {
      auto psi = build_aut(ctx, bundle.spec.auts[i]);
      if (!psi) continue;
      auto dec = decompose_fkxfl(*psi);
      if (!dec) continue;
      const FreeAut* factors[2] = {&dec->phi1, &dec->phi2};
      for (int f = 0; f < 2; ++f) {
        std::string gerr;
        auto table = growth_table(*factors[f], n_hi, {}, budget, &gerr);
        if (!table) continue;
        std::ofstream out(fs::path(flags.csv_dir) /
                          (rep.name + "_phi" + std::to_string(f + 1) + "_growth.csv"));
        out << growth_table_csv(*table);
      }
    }
  }
}

}  // namespace

ReportBundle run_report(const SpecFile& spec, const RunFlags& flags) {
  ReportBundle bundle;
  bundle.spec = spec;

  const int n_lo = spec.run ? spec.run->n_lo : 8;
  int n_hi = flags.n_max > 0 ? flags.n_max : (spec.run ? spec.run->n_hi : 64);
  if (n_hi < n_lo) n_hi = n_lo;
  const long long budget =
      flags.budget > 0 ? flags.budget
                       : (spec.run ? spec.run->budget : kDefaultWordBudget);
  const std::vector<int> ns = doubling_range(n_lo, n_hi);

  for (const SpecAut& a : spec.auts) {
    AutReport rep;
    rep.name = a.name;
    std::string err;
    auto psi = build_aut(spec.ctx, a, &err);
    if (!psi) {
      rep.error = err;
      bundle.any_error = true;
      bundle.reports.push_back(std::move(rep));
      continue;
    }
    std::string note;
    auto verdict = classify_any(*psi, a.witness, &err, &note);
    if (!verdict) {
      rep.error = "automorphism '" + a.name + "': " + err;
      bundle.any_error = true;
      bundle.reports.push_back(std::move(rep));
      continue;
    }
    rep.verdict = *verdict;
    rep.witness_note = note;
    if (verdict->heuristic) bundle.any_heuristic = true;

    lower_bound_table(rep, *psi, a.witness, ns, budget);
    shuffle_table(rep, *psi, budget);
    oracle_table(rep, *psi, flags.oracle);
    bundle.reports.push_back(std::move(rep));
  }

  if (!flags.csv_dir.empty()) export_csv(bundle, flags, n_hi, budget);
  return bundle;
}

std::string report_text(const ReportBundle& b) {
  const GroupContext& ctx = b.spec.ctx;
  std::ostringstream out;
  out << "group " << group_kind_name(ctx.kind) << " ranks " << ctx.rank1;
  if (ctx.kind == GroupKind::FkxFl) out << " " << ctx.rank2;
  out << "\n";
  for (const AutReport& rep : b.reports) {
    out << "\naut " << rep.name << "\n";
    if (!rep.error.empty()) {
      out << "  error: " << rep.error << "\n";
      continue;
    }
    out << "  class: " << dehn_kind_name(rep.verdict.kind) << " ("
        << dehn_class_brief(rep.verdict) << ")\n";
    out << "  provenance: " << rep.verdict.provenance << "\n";
    if (!rep.verdict.normal_form.empty())
      out << "  normal form: " << rep.verdict.normal_form << "\n";
    if (rep.verdict.heuristic)
      out << "  heuristic: verdict consumed an empirical growth fit\n";
    if (!rep.witness_note.empty()) out << "  note: " << rep.witness_note << "\n";
    if (!rep.lower_bounds.empty()) {
      out << "  lower bounds (" << rep.lower_kind << "):";
      for (const LowerBoundRow& row : rep.lower_bounds)
        out << " n=" << row.n << " area>=" << row.bound.str();
      out << "\n";
    }
    for (const ShuffleCertificate& sc : rep.shuffles) {
      out << "  shuffle |w|=" << sc.input.size() << ": stages=" << sc.count
          << " cells=" << cells_of(sc) << " C=" << sc.growth_constant
          << (sc.certified ? " certified" : "")
          << (sc.budget_exceeded ? " budget-exceeded" : "") << "\n";
    }
    for (const OracleRow& row : rep.oracle_rows) {
      out << "  oracle " << row.word << ": "
          << oracle_status_name(row.result.status);
      if (row.result.status == OracleStatus::Exact)
        out << " area=" << row.result.area;
      else if (row.result.status == OracleStatus::Bracket)
        out << " area>=" << row.result.lower;
      out << "\n";
    }
  }
  return out.str();
}

nlohmann::json report_json(const ReportBundle& b) {
  using nlohmann::json;
  const GroupContext& ctx = b.spec.ctx;
  const std::vector<std::string> names = ctx.gen_names();

  json group;
  group["kind"] = group_kind_name(ctx.kind);
  group["ranks"] = ctx.kind == GroupKind::FkxFl
                       ? json::array({ctx.rank1, ctx.rank2})
                       : json::array({ctx.rank1});

  json results = json::array();
  for (std::size_t i = 0; i < b.reports.size(); ++i) {
    const AutReport& rep = b.reports[i];
    const SpecAut& a = b.spec.auts[i];
    json r;

    json input;
    input["name"] = rep.name;
    json images, inverse_images;
    for (int g = 0; g < ctx.n_gens(); ++g) {
      images[ctx.gen_name(g)] = print_letters(a.img[g], names);
      inverse_images[ctx.gen_name(g)] = print_letters(a.inv[g], names);
    }
    input["images"] = images;
    input["inverse_images"] = inverse_images;
    if (a.witness)
      input["twist_witness"] = print_letters(a.witness->letters(), names);
    r["input"] = input;

    if (!rep.error.empty()) {
      r["error"] = rep.error;
    } else {
      json cls;
      cls["kind"] = dehn_kind_name(rep.verdict.kind);
      cls["brief"] = dehn_class_brief(rep.verdict);
      cls["degree"] = rep.verdict.degree;
      if (rep.verdict.kind == DehnKind::Bracket) {
        cls["bracket_lo"] = dehn_kind_name(rep.verdict.bracket_lo);
        cls["bracket_hi"] = dehn_kind_name(rep.verdict.bracket_hi);
      }
      r["class"] = cls;
      r["provenance"] = rep.verdict.provenance;
      r["normal_form"] = rep.verdict.normal_form;
      r["heuristic"] = rep.verdict.heuristic;
      if (!rep.witness_note.empty()) r["witness_note"] = rep.witness_note;
    }

    json witnesses;
    json lower;
    lower["kind"] = rep.lower_kind.empty() ? "none" : rep.lower_kind;
    json rows = json::array();
    for (const LowerBoundRow& row : rep.lower_bounds)
      rows.push_back({{"n", row.n}, {"bound", row.bound.str()}});
    lower["rows"] = rows;
    witnesses["lower_bounds"] = lower;

    json shuffles = json::array();
    std::vector<std::string> tnames = names;
    tnames.push_back("t");
    for (const ShuffleCertificate& sc : rep.shuffles) {
      json s;
      s["word"] = print_letters(sc.input, tnames);
      s["length"] = sc.input.size();
      s["stages"] = sc.count;
      s["cells"] = cells_of(sc);
      s["certified"] = sc.certified;
      s["growth_constant"] = sc.growth_constant;
      json ledger = json::array();
      for (const ShuffleStage& st : sc.ledger) ledger.push_back(shuffle_stage_line(st));
      s["ledger"] = ledger;
      shuffles.push_back(s);
    }
    witnesses["shuffles"] = shuffles;

    json oracle = json::array();
    for (const OracleRow& row : rep.oracle_rows) {
      json o;
      o["word"] = row.word;
      o["status"] = oracle_status_name(row.result.status);
      if (row.result.status == OracleStatus::Exact) o["area"] = row.result.area;
      if (row.result.status == OracleStatus::Bracket) o["lower"] = row.result.lower;
      o["explored"] = row.result.explored;
      o["l_max"] = row.result.l_max;
      oracle.push_back(o);
    }
    witnesses["oracle"] = oracle;
    r["witnesses"] = witnesses;

    results.push_back(r);
  }

  json doc;
  doc["group"] = group;
  if (b.spec.run) {
    json run;
    run["n_lo"] = b.spec.run->n_lo;
    run["n_hi"] = b.spec.run->n_hi;
    run["budget"] = b.spec.run->budget;
    doc["run"] = run;
  }
  doc["results"] = results;
  return doc;
}

// ---------------------------------------------------------------------------
// Schema.

namespace {

const char kReportSchema[] = R"json({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "mapping-torus Dehn-function classification report",
  "type": "object",
  "required": ["group", "results"],
  "additionalProperties": false,
  "properties": {
    "group": {
      "type": "object",
      "required": ["kind", "ranks"],
      "additionalProperties": false,
      "properties": {
        "kind": {"type": "string", "enum": ["Zk", "F2", "F2xZ", "Z2astZ", "FkxFl", "FkxZ"]},
        "ranks": {"type": "array", "items": {"type": "integer"}}
      }
    },
    "run": {
      "type": "object",
      "required": ["n_lo", "n_hi", "budget"],
      "additionalProperties": false,
      "properties": {
        "n_lo": {"type": "integer"},
        "n_hi": {"type": "integer"},
        "budget": {"type": "integer"}
      }
    },
    "results": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["input", "witnesses"],
        "additionalProperties": false,
        "properties": {
          "input": {
            "type": "object",
            "required": ["name", "images", "inverse_images"],
            "additionalProperties": false,
            "properties": {
              "name": {"type": "string"},
              "images": {"type": "object"},
              "inverse_images": {"type": "object"},
              "twist_witness": {"type": "string"}
            }
          },
          "error": {"type": "string"},
          "class": {
            "type": "object",
            "required": ["kind", "brief", "degree"],
            "additionalProperties": false,
            "properties": {
              "kind": {"type": "string", "enum": ["linear", "quadratic", "cubic", "polynomial", "exponential", "bracket"]},
              "brief": {"type": "string"},
              "degree": {"type": "integer"},
              "bracket_lo": {"type": "string"},
              "bracket_hi": {"type": "string"}
            }
          },
          "provenance": {"type": "string"},
          "normal_form": {"type": "string"},
          "heuristic": {"type": "boolean"},
          "witness_note": {"type": "string"},
          "witnesses": {
            "type": "object",
            "required": ["lower_bounds", "shuffles", "oracle"],
            "additionalProperties": false,
            "properties": {
              "lower_bounds": {
                "type": "object",
                "required": ["kind", "rows"],
                "additionalProperties": false,
                "properties": {
                  "kind": {"type": "string", "enum": ["corridor-sum", "centralizer-orbit", "none"]},
                  "rows": {
                    "type": "array",
                    "items": {
                      "type": "object",
                      "required": ["n", "bound"],
                      "additionalProperties": false,
                      "properties": {
                        "n": {"type": "integer"},
                        "bound": {"type": "string"}
                      }
                    }
                  }
                }
              },
              "shuffles": {
                "type": "array",
                "items": {
                  "type": "object",
                  "required": ["word", "length", "stages", "cells", "certified", "growth_constant"],
                  "additionalProperties": false,
                  "properties": {
                    "word": {"type": "string"},
                    "length": {"type": "integer"},
                    "stages": {"type": "integer"},
                    "cells": {"type": "integer"},
                    "certified": {"type": "boolean"},
                    "growth_constant": {"type": "integer"},
                    "ledger": {"type": "array", "items": {"type": "string"}}
                  }
                }
              },
              "oracle": {
                "type": "array",
                "items": {
                  "type": "object",
                  "required": ["word", "status"],
                  "additionalProperties": false,
                  "properties": {
                    "word": {"type": "string"},
                    "status": {"type": "string", "enum": ["exact", "bracket", "not-fillable-within-cap"]},
                    "area": {"type": "integer"},
                    "lower": {"type": "integer"},
                    "explored": {"type": "integer"},
                    "l_max": {"type": "integer"}
                  }
                }
              }
            }
          }
        }
      }
    }
  }
}
)json";

bool schema_check(const nlohmann::json& doc, const nlohmann::json& schema,
                  const std::string& path, std::string* err) {
  auto fail = [&](const std::string& m) {
    if (err) *err = path + ": " + m;
    return false;
  };
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    const bool ok = t == "object"    ? doc.is_object()
                    : t == "array"   ? doc.is_array()
                    : t == "string"  ? doc.is_string()
                    : t == "integer" ? doc.is_number_integer()
                    : t == "number"  ? doc.is_number()
                    : t == "boolean" ? doc.is_boolean()
                                     : false;
    if (!ok) return fail("expected type " + t);
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"])
      if (v == doc) found = true;
    if (!found) return fail("value not in enum");
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!doc.contains(key.get<std::string>()))
          return fail("missing required property '" + key.get<std::string>() + "'");
    const bool closed = schema.contains("additionalProperties") &&
                        schema["additionalProperties"].is_boolean() &&
                        !schema["additionalProperties"].get<bool>();
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (schema.contains("properties") && schema["properties"].contains(it.key())) {
        if (!schema_check(it.value(), schema["properties"][it.key()],
                          path + "." + it.key(), err))
          return false;
      } else if (closed) {
        return fail("unexpected property '" + it.key() + "'");
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    int idx = 0;
    for (const auto& item : doc) {
      if (!schema_check(item, schema["items"], path + "[" + std::to_string(idx) + "]",
                        err))
        return false;
      ++idx;
    }
  }
  return true;
}

}  // namespace

const std::string& report_schema_text() {
  static const std::string text = kReportSchema;
  return text;
}

bool validate_json_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                          std::string* err) {
  return schema_check(doc, schema, "$", err);
}

}  // namespace mtdehn
