#ifndef GMMP_REPORT_HPP
#define GMMP_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmmp/hull.hpp"

namespace gmmp {

inline constexpr const char* kReportSchema = "gmmp-report/1";

struct ReportChoice {
  std::size_t degree = 0;
  std::vector<std::string> selected;
  std::vector<std::string> eliminated;
  friend bool operator==(const ReportChoice&, const ReportChoice&) = default;
};

/// Relations of the truncation at one degree N, canonical and sorted.
struct ReportRelations {
  std::size_t degree = 0;
  std::vector<std::string> relations;
  friend bool operator==(const ReportRelations&, const ReportRelations&) = default;
};

struct RunReport {
  std::string schema = kReportSchema;
  std::string command;
  std::string input_digest;
  std::string ordering;
  std::string field;
  std::vector<std::string> generators;
  std::vector<std::size_t> dimension_sequence;
  std::vector<ReportRelations> relations;
  std::optional<std::size_t> stabilized_at;
  std::vector<ReportChoice> choice_log;
  /// Extra facts from the command (classification, Ext dims, ...).
  std::vector<std::pair<std::string, std::string>> properties;
  double timing_ms = 0;

  /// Equality up to timing.
  friend bool operator==(const RunReport& a, const RunReport& b);
};

enum class ReportFormat { text, json, latex };

/// 64-bit FNV-1a of the input bytes, as 16 hex digits.
std::string input_digest(std::string_view bytes);

/// Relations of a truncation in canonical form, ordered by lowest degree and
/// then by their smallest term.
std::vector<NCPoly> canonical_relations(const FormalTruncation& t);

RunReport make_report(const HullResult& hull, std::string command, std::string_view input);

/// compute_hull plus classification and the defect check, as the `hull`
/// command reports them.
RunReport hull_report(const GmmpAlgebra& L, std::size_t bound, const HullOptions& options,
                      std::string_view input);

std::string render(const RunReport& r, ReportFormat format, bool log_choices = false);

/// Inverse of render(.., json); throws ParseError on malformed input.
RunReport parse_report(std::string_view json);

/// LaTeX form of a rendered polynomial: x^{3}, x_{1,2,1}, \cdot-free.
std::string latex_polynomial(std::string_view text);

}  // namespace gmmp

#endif
