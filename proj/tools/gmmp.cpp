// gmmp: hull, complete, relmorph and present commands.
//
// Exit codes: 0 success, 2 parse or usage error, 3 mathematical failure,
// 1 anything else.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gmmp/completion.hpp"
#include "gmmp/error.hpp"
#include "gmmp/hochschild.hpp"
#include "gmmp/hull.hpp"
#include "gmmp/parse.hpp"
#include "gmmp/relation.hpp"
#include "gmmp/report.hpp"

using namespace gmmp;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Field field_from(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    unsigned long long p = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return p == 0 ? Field::rationals() : Field::prime(p);
  } catch (const Error& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": not a characteristic: " + s);
  }
}

struct Common {
  std::size_t degree = 4;
  std::string field;
  std::string format = "text";
  std::string ordering = "deglex";
  bool log_choices = false;

  ParseOptions parse_options() const {
    ParseOptions o;
    if (const char* env = std::getenv("GMMP_FIELD"); env && *env) o.field = field_from(env, "GMMP_FIELD");
    if (!field.empty()) {
      o.field = field_from(field, "--field");
      o.force_field = true;
    }
    o.degree = degree;
    return o;
  }

  HullOptions hull_options(const Alphabet& a) const {
    HullOptions h;
    h.ordering = parse_ordering(ordering, a);
    return h;
  }

  ReportFormat report_format() const {
    if (format == "text") return ReportFormat::text;
    if (format == "json-like" || format == "json") return ReportFormat::json;
    if (format == "latex") return ReportFormat::latex;
    throw UsageError("unknown format " + format);
  }
};

void add_common(CLI::App* cmd, Common& c, bool degree) {
  if (degree) cmd->add_option("--degree,-d", c.degree, "Degree bound")->check(CLI::Range(1, 64));
  cmd->add_option("--field", c.field, "Characteristic: 0 or a prime (overrides the file)");
  cmd->add_option("--format", c.format, "text, json-like or latex");
  cmd->add_option("--ordering", c.ordering, "deglex[:letter,...][:reversed]");
  cmd->add_flag("--log-choices", c.log_choices, "Print the basis choice log");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string ext_dims(const CochainComplex& C, std::size_t level) {
  std::string s;
  const auto r = static_cast<std::uint32_t>(C.modules().size());
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < r; ++j)
      s += (s.empty() ? "" : " ") + std::to_string(C.cohomology_dim(level, i, j));
  return s;
}

int run_hull(const Common& c, const std::string& path) {
  std::string text = read_file(path);
  auto t0 = std::chrono::steady_clock::now();
  ParseOptions po = c.parse_options();
  GmmpAlgebra L = parse_gmmp(text, po);
  RunReport r = hull_report(L, c.degree, c.hull_options(*hull_alphabet(L)), text);
  r.timing_ms = elapsed_ms(t0);
  std::cout << render(r, c.report_format(), c.log_choices);
  return 0;
}

int run_present(const Common& c, const std::string& path) {
  std::string text = read_file(path);
  auto t0 = std::chrono::steady_clock::now();
  Presentation p = parse_presentation(text, c.parse_options());
  HullResult h = presentation_of_formal_algebra(p, c.degree, c.hull_options(*p.alphabet));
  RunReport r = make_report(h, "present", text);
  FormalTruncation direct = quotient_basis(p, c.degree);
  std::string dims;
  for (auto d : direct.dimension_sequence()) dims += (dims.empty() ? "" : " ") + std::to_string(d);
  r.properties.emplace_back("quotient dimensions", dims);
  r.timing_ms = elapsed_ms(t0);
  std::cout << render(r, c.report_format(), c.log_choices);
  return 0;
}

int run_complete(const Common& c, const std::string& alg_path, const std::string& mod_path) {
  std::string alg_text = read_file(alg_path);
  std::string mod_text = read_file(mod_path);
  auto t0 = std::chrono::steady_clock::now();
  AlgebraInput in = parse_algebra(alg_text, c.parse_options());
  std::vector<ModuleRep> modules = parse_modules(mod_text, in);
  CochainComplex C = hochschild_complex(in.algebra, modules, 3);
  auto classes = ext_basis(C);
  auto letters = default_letters(classes, static_cast<std::uint32_t>(modules.size()));
  CochainGmmp cg = cochain_gmmp(C, classes, letters);
  CompletionResult res = complete(in.algebra, modules, c.degree, c.hull_options(*hull_alphabet(cg.algebra)));
  RunReport r = make_report(res.hull, "complete", alg_text + '\0' + mod_text);
  r.properties.emplace_back("algebra dimension", std::to_string(in.algebra.dim()));
  r.properties.emplace_back("modules", std::to_string(modules.size()));
  r.properties.emplace_back("ext1", ext_dims(C, 1));
  r.properties.emplace_back("ext2", ext_dims(C, 2));
  r.properties.emplace_back("endomorphism dimension", std::to_string(res.endomorphisms.dim()));
  r.properties.emplace_back("tangent check", tangent_check(res, C) ? "pass" : "fail");
  r.timing_ms = elapsed_ms(t0);
  std::cout << render(r, c.report_format(), c.log_choices);
  return 0;
}

int run_relmorph(const Common& c, const std::string& path) {
  std::string text = read_file(path);
  auto t0 = std::chrono::steady_clock::now();
  RelmorphInput in = parse_relmorph(text, c.parse_options());
  RelationData d = relation_morphism(in.n, in.relations, in.rhs);
  RunReport r;
  r.command = "relmorph";
  r.input_digest = input_digest(text);
  r.field = std::to_string(in.field.characteristic);
  r.properties.emplace_back("n", std::to_string(d.n));
  r.properties.emplace_back("rank", std::to_string(d.r));
  r.properties.emplace_back("quotient dimension", std::to_string(d.n - d.r));
  std::string perm;
  for (auto p : d.permutation) perm += (perm.empty() ? "" : " ") + std::to_string(p + 1);
  r.properties.emplace_back("pivot order", perm);
  for (std::size_t i = 0; i < d.fgens.size(); ++i) {
    std::string f;
    for (const auto& [k, v] : d.fgens[i]) {
      std::string mag = (v.is_negative() ? -v : v).str();
      f += f.empty() ? (v.is_negative() ? "-" : "") : (v.is_negative() ? " - " : " + ");
      f += (mag == "1" ? "" : mag + "*") + "w" + std::to_string(k + 1);
    }
    r.properties.emplace_back("f" + std::to_string(i + 1), f);
  }
  if (in.kappa) r.properties.emplace_back("exact", check_exactness(d, *in.kappa) ? "yes" : "no");
  r.timing_ms = elapsed_ms(t0);
  std::cout << render(r, c.report_format(), c.log_choices);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Presentations of completions of associative algebras"};
  app.require_subcommand(1);
  Common c;
  std::string file, modules;

  auto* hull = app.add_subcommand("hull", "Hull of a GMMP table");
  hull->add_option("file", file, "GMMP file")->required();
  add_common(hull, c, true);

  auto* complete_cmd = app.add_subcommand("complete", "Completion of an algebra in simple modules");
  complete_cmd->add_option("algebra", file, "Algebra file")->required();
  complete_cmd->add_option("modules", modules, "Modules file")->required();
  add_common(complete_cmd, c, true);

  auto* relmorph = app.add_subcommand("relmorph", "Relation morphism of a linear quotient");
  relmorph->add_option("file", file, "Relation file")->required();
  add_common(relmorph, c, false);

  auto* present = app.add_subcommand("present", "Formal presentation through the hull");
  present->add_option("file", file, "Presentation file")->required();
  add_common(present, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hull) return run_hull(c, file);
    if (*complete_cmd) return run_complete(c, file, modules);
    if (*relmorph) return run_relmorph(c, file);
    if (*present) return run_present(c, file);
  } catch (const UsageError& e) {
    std::cerr << "gmmp: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "gmmp: parse error at " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "gmmp: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gmmp: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
