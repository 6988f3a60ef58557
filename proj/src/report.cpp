#include "gmmp/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "gmmp/error.hpp"

namespace gmmp {

using Json = nlohmann::ordered_json;

bool operator==(const RunReport& a, const RunReport& b) {
  return a.schema == b.schema && a.command == b.command && a.input_digest == b.input_digest &&
         a.ordering == b.ordering && a.field == b.field && a.generators == b.generators &&
         a.dimension_sequence == b.dimension_sequence && a.relations == b.relations &&
         a.stabilized_at == b.stabilized_at && a.choice_log == b.choice_log &&
         a.properties == b.properties;
}

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<NCPoly> canonical_relations(const FormalTruncation& t) {
  const Ordering& order = t.ordering();
  std::vector<NCPoly> out;
  for (const auto& r : t.relations())
    if (!r.is_zero()) out.push_back(canonical_relation(r, order));
  auto lowest = [&](const NCPoly& p) {
    const Word* best = nullptr;
    for (const auto& [w, c] : p.terms())
      if (!best || order.less(w, *best)) best = &w;
    return *best;
  };
  std::stable_sort(out.begin(), out.end(), [&](const NCPoly& a, const NCPoly& b) {
    Word la = lowest(a), lb = lowest(b);
    if (la.degree() != lb.degree()) return la.degree() < lb.degree();
    return order.less(la, lb);
  });
  return out;
}

RunReport make_report(const HullResult& hull, std::string command, std::string_view input) {
  RunReport r;
  r.command = std::move(command);
  r.input_digest = input_digest(input);
  r.ordering = hull.ordering.describe(*hull.alphabet);
  r.field = std::to_string(hull.field.characteristic);
  r.generators = hull.generators;
  r.dimension_sequence = hull.dimension_sequence;
  for (const auto& t : hull.truncations) {
    ReportRelations rel{t.degree(), {}};
    for (const auto& p : canonical_relations(t)) rel.relations.push_back(p.render(hull.ordering));
    r.relations.push_back(std::move(rel));
  }
  r.stabilized_at = hull.stabilized_at;
  if (!hull.truncations.empty()) {
    for (const auto& c : hull.last().choice_log()) {
      ReportChoice rc{c.degree, {}, {}};
      for (const auto& w : c.selected) rc.selected.push_back(hull.alphabet->render(w));
      for (const auto& w : c.eliminated) rc.eliminated.push_back(hull.alphabet->render(w));
      r.choice_log.push_back(std::move(rc));
    }
  }
  return r;
}

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + items[i];
  return s;
}

const std::vector<std::string>& final_relations(const RunReport& r) {
  static const std::vector<std::string> none;
  return r.relations.empty() ? none : r.relations.back().relations;
}

std::string render_text(const RunReport& r, bool log_choices) {
  std::ostringstream os;
  os << r.schema << "\n";
  os << "command: " << r.command << "\n";
  os << "input: " << r.input_digest << "\n";
  os << "field: " << r.field << "\n";
  if (!r.ordering.empty()) os << "ordering: " << r.ordering << "\n";
  for (const auto& [k, v] : r.properties)
    if (r.dimension_sequence.empty()) os << k << ": " << v << "\n";
  if (r.dimension_sequence.empty()) return os.str();
  os << "generators: " << (r.generators.empty() ? "none" : join(r.generators, ", ")) << "\n";
  os << "dimensions:";
  for (auto d : r.dimension_sequence) os << " " << d;
  os << "\n";
  const auto& fin = final_relations(r);
  os << "relations: " << (fin.empty() ? "none" : join(fin, ", ")) << "\n";
  for (const auto& rel : r.relations)
    os << "  degree " << rel.degree << ": "
       << (rel.relations.empty() ? "none" : join(rel.relations, ", ")) << "\n";
  if (r.stabilized_at)
    os << "stabilized at degree " << *r.stabilized_at << "\n";
  else
    os << "not stabilized\n";
  for (const auto& [k, v] : r.properties) os << k << ": " << v << "\n";
  if (log_choices) {
    for (const auto& c : r.choice_log) {
      os << "choice at degree " << c.degree << ": basis "
         << (c.selected.empty() ? "none" : join(c.selected, " "));
      if (!c.eliminated.empty()) os << "; rewritten " << join(c.eliminated, " ");
      os << "\n";
    }
  }
  return os.str();
}

Json to_json(const RunReport& r) {
  Json j;
  j["schema"] = r.schema;
  j["command"] = r.command;
  j["inputDigest"] = r.input_digest;
  j["field"] = r.field;
  j["ordering"] = r.ordering;
  j["generators"] = r.generators;
  j["dimensionSequence"] = r.dimension_sequence;
  j["relations"] = Json::array();
  for (const auto& rel : r.relations)
    j["relations"].push_back({{"degree", rel.degree}, {"relations", rel.relations}});
  j["stabilizedAtDegree"] = r.stabilized_at ? Json(*r.stabilized_at) : Json(nullptr);
  j["basisChoiceLog"] = Json::array();
  for (const auto& c : r.choice_log)
    j["basisChoiceLog"].push_back(
        {{"degree", c.degree}, {"selected", c.selected}, {"eliminated", c.eliminated}});
  j["properties"] = Json::array();
  for (const auto& [k, v] : r.properties) j["properties"].push_back({{"key", k}, {"value", v}});
  j["timingMs"] = r.timing_ms;
  return j;
}

// Factor of a rendered monomial in LaTeX.
std::string latex_factor(const std::string& f) {
  auto open = f.find('(');
  if (open == std::string::npos || f.back() != ')') return f;
  return f.substr(0, open) + "_{" + f.substr(open + 1, f.size() - open - 2) + "}";
}

std::string latex_monomial(const std::string& m) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : m) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '*' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  std::string out;
  std::size_t i = 0;
  if (!parts.empty() && std::isdigit(static_cast<unsigned char>(parts[0][0]))) {
    const std::string& c = parts[0];
    auto slash = c.find('/');
    out += slash == std::string::npos ? c : "\\frac{" + c.substr(0, slash) + "}{" + c.substr(slash + 1) + "}";
    i = 1;
  }
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    std::string base = latex_factor(parts[i]);
    if (!out.empty() && std::isalpha(static_cast<unsigned char>(base[0])) &&
        (std::isalnum(static_cast<unsigned char>(out.back())) || out.back() == '}'))
      out += " ";
    if (j - i > 1) {
      bool wrap = base.find('_') != std::string::npos;
      out += (wrap ? "{" + base + "}" : base) + "^{" + std::to_string(j - i) + "}";
    } else {
      out += base;
    }
    i = j;
  }
  return out;
}

std::string render_latex(const RunReport& r) {
  std::ostringstream os;
  os << "% " << r.schema << " " << r.command << " " << r.input_digest << "\n";
  os << "\\noindent Generators: $";
  for (std::size_t i = 0; i < r.generators.size(); ++i)
    os << (i ? ", " : "") << latex_factor(r.generators[i]);
  os << "$ over $" << (r.field == "0" ? std::string("\\mathbb{Q}") : "\\mathbb{F}_{" + r.field + "}")
     << "$, ordering \\texttt{" << r.ordering << "}.\n\n";
  os << "\\noindent Dimensions: $(";
  for (std::size_t i = 0; i < r.dimension_sequence.size(); ++i)
    os << (i ? ", " : "") << r.dimension_sequence[i];
  os << ")$.\n\n";
  const auto& fin = final_relations(r);
  if (fin.empty()) {
    os << "\\noindent Relations: none.\n";
  } else {
    os << "\\noindent Relations:\n";
    for (const auto& rel : fin) os << "\\[ " << latex_polynomial(rel) << " = 0 \\]\n";
  }
  if (r.stabilized_at) os << "\n\\noindent Stabilized at degree " << *r.stabilized_at << ".\n";
  return os.str();
}

std::pair<std::size_t, std::size_t> position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string latex_polynomial(std::string_view text) {
  std::string s(text), out, cur;
  auto flush = [&]() {
    if (!cur.empty()) out += latex_monomial(cur);
    cur.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 3, " + ") == 0 || s.compare(i, 3, " - ") == 0) {
      flush();
      out += s.substr(i, 3);
      i += 2;
    } else if (i == 0 && s[0] == '-') {
      out += "-";
    } else {
      cur += s[i];
    }
  }
  flush();
  return out;
}

std::string render(const RunReport& r, ReportFormat format, bool log_choices) {
  switch (format) {
    case ReportFormat::text:
      return render_text(r, log_choices);
    case ReportFormat::json:
      return to_json(r).dump(2) + "\n";
    case ReportFormat::latex:
      return render_latex(r);
  }
  return {};
}

RunReport parse_report(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = position_of(text, e.byte ? e.byte - 1 : 0);
    throw ParseError(line, col, "malformed report");
  }
  try {
    RunReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) throw ParseError(1, 1, "unsupported schema " + r.schema);
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("inputDigest").get<std::string>();
    r.field = j.at("field").get<std::string>();
    r.ordering = j.at("ordering").get<std::string>();
    r.generators = j.at("generators").get<std::vector<std::string>>();
    r.dimension_sequence = j.at("dimensionSequence").get<std::vector<std::size_t>>();
    for (const auto& rel : j.at("relations"))
      r.relations.push_back({rel.at("degree").get<std::size_t>(),
                             rel.at("relations").get<std::vector<std::string>>()});
    if (!j.at("stabilizedAtDegree").is_null())
      r.stabilized_at = j.at("stabilizedAtDegree").get<std::size_t>();
    for (const auto& c : j.at("basisChoiceLog"))
      r.choice_log.push_back({c.at("degree").get<std::size_t>(),
                              c.at("selected").get<std::vector<std::string>>(),
                              c.at("eliminated").get<std::vector<std::string>>()});
    for (const auto& p : j.at("properties"))
      r.properties.emplace_back(p.at("key").get<std::string>(), p.at("value").get<std::string>());
    r.timing_ms = j.at("timingMs").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, 1, std::string("report field: ") + e.what());
  }
}

RunReport hull_report(const GmmpAlgebra& L, std::size_t bound, const HullOptions& options,
                      std::string_view input) {
  HullResult h = compute_hull(L, bound, options);
  RunReport r = make_report(h, "hull", input);
  Classification cl = classify(L, bound);
  r.properties.emplace_back("classification", to_string(cl.kind));
  if (cl.kind != ClassKind::neither)
    r.properties.emplace_back("witness degree", std::to_string(cl.witness_degree));
  else
    r.properties.emplace_back("classification reason", cl.reason);
  r.properties.emplace_back("defects verified", verify_defects(L, h.last(), h.defects) ? "yes" : "no");
  return r;
}

}  // namespace gmmp
