#pragma once
// Spec-file parsing, classification orchestration, and reporting.
//
// Spec grammar (line oriented; '#' starts a comment anywhere):
//
//   group <kind> ranks <k> [<l>]    kind: zk f2 f2xz z2astz fkxfl fkxz
//   aut <name>                      opens the image block of a new automorphism
//   <gen> -> <word>                 one image line per generator, any order
//   inv <name>                      opens the inverse-image block of <name>
//   witness <name> <word>           twist witness (consumed by F_k x Z only)
//   run n <lo>..<hi> budget <N>     bound-table range and word budget
//
// Words are space-separated letters with optional exponents (a b^-2 c).
// Every automorphism must carry a complete inverse block; build_aut checks
// the two-sided inverse property exactly, so wrong inverses cannot slip
// through to classification.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtdehn/autos.hpp"
#include "mtdehn/certify.hpp"
#include "mtdehn/classify.hpp"

namespace mtdehn {

struct SpecAut {
  std::string name;
  int line = 0;                     // line of the `aut` header
  std::vector<Letters> img;         // per generator, context order
  std::vector<Letters> inv;
  std::optional<FreeWord> witness;
};

struct SpecRun {
  int n_lo = 8;
  int n_hi = 64;
  long long budget = kDefaultWordBudget;
};

struct SpecFile {
  GroupContext ctx;
  std::vector<SpecAut> auts;
  std::optional<SpecRun> run;
};

struct SpecError {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
};

std::string spec_error_string(const SpecError& e);  // "line L, col C: msg"

std::optional<SpecFile> parse_spec(const std::string& text,
                                   SpecError* err = nullptr);

// Canonical rendering; parse_spec(print_spec(s)) reproduces s, and printing
// again yields the identical string (parse-print fixed point).
std::string print_spec(const SpecFile& spec);

// Assembles the automorphism and validates it exactly (commuting images,
// two-sided inverses); the error names the failing generator.
std::optional<Automorphism> build_aut(const GroupContext& ctx, const SpecAut& a,
                                      std::string* err = nullptr);

// ---------------------------------------------------------------------------
// Reports.

enum class OracleMode { Off, Tiny, Full };

struct RunFlags {
  int n_max = 0;         // 0: spec run line, else 64
  long long budget = 0;  // 0: spec run line, else the default word budget
  OracleMode oracle = OracleMode::Tiny;
  std::string csv_dir;   // empty: no CSV export
};

struct LowerBoundRow {
  int n = 0;
  BigInt bound = 0;
};

struct OracleRow {
  std::string word;  // printed over the mapping-torus generators
  OracleResult result;
};

struct AutReport {
  std::string name;
  std::string error;  // classification failed; all other fields empty
  DehnClass verdict;
  std::string witness_note;
  std::string lower_kind;  // "corridor-sum" | "centralizer-orbit" | ""
  std::vector<LowerBoundRow> lower_bounds;
  std::vector<ShuffleCertificate> shuffles;
  std::vector<OracleRow> oracle_rows;
};

struct ReportBundle {
  SpecFile spec;
  std::vector<AutReport> reports;
  bool any_error = false;
  bool any_heuristic = false;
  // 0 = certified verdicts, 2 = a verdict consumed a heuristic growth fit,
  // 1 = some automorphism failed outright.
  int exit_code() const { return any_error ? 1 : any_heuristic ? 2 : 0; }
};

ReportBundle run_report(const SpecFile& spec, const RunFlags& flags);

std::string report_text(const ReportBundle& b);

// Serialization matching docs/report.schema.json; big integers become
// decimal strings, every number traces to a certificate or a normal-form
// field.
nlohmann::json report_json(const ReportBundle& b);

// The schema shipped at docs/report.schema.json, embedded verbatim.
const std::string& report_schema_text();

// Minimal JSON-schema checker for the subset the shipped schema uses:
// type, required, properties, items, enum, additionalProperties: false.
bool validate_json_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                          std::string* err = nullptr);

}  // namespace mtdehn
