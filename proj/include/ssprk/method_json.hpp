#pragma once

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssprk/catalog.hpp"
#include "ssprk/tableau.hpp"

namespace ssprk {

/// Shortest-round-trip-safe formatting with 17 significant digits.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) { return nlohmann::json(s).dump(); }

namespace detail {

inline void write_row(std::ostream& os, std::span<const double> row) {
  os << '[';
  for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << format_number(row[j]);
  os << ']';
}

inline void write_matrix(std::ostream& os, const Matrix& m, const std::string& indent) {
  os << "[\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << indent << "  ";
    write_row(os, m.row(i));
    os << (i + 1 < m.rows() ? ",\n" : "\n");
  }
  os << indent << ']';
}

}  // namespace detail

struct MethodDocument {
  std::string name;
  int order = 0;
  ButcherTableau tableau;
  std::optional<ShuOsherForm> shu_osher;
};

inline void write_method_json(std::ostream& os, const std::string& name, int order, const ButcherTableau& t,
                              const std::optional<ShuOsherForm>& so, const std::string& indent = "") {
  os << "{\n";
  os << indent << "  \"name\": " << json_escape(name) << ",\n";
  os << indent << "  \"s\": " << t.stages() << ",\n";
  os << indent << "  \"A\": ";
  detail::write_matrix(os, t.a(), indent + "  ");
  os << ",\n" << indent << "  \"b\": ";
  detail::write_row(os, t.b());
  os << ",\n";
  if (so) {
    os << indent << "  \"shu_osher\": {\n" << indent << "    \"Lambda\": ";
    detail::write_matrix(os, so->lambda(), indent + "    ");
    os << ",\n" << indent << "    \"Gamma\": ";
    detail::write_matrix(os, so->gamma(), indent + "    ");
    os << "\n" << indent << "  },\n";
  }
  os << indent << "  \"order\": " << order << "\n" << indent << '}';
}

inline std::string export_json(const MethodRecord& rec) {
  std::ostringstream os;
  write_method_json(os, rec.name, rec.order, rec.tableau, rec.shu_osher);
  os << '\n';
  return os.str();
}

inline std::string export_json(std::string_view id) { return export_json(catalog_lookup(id)); }

namespace detail {

inline Matrix matrix_from_json(const nlohmann::json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) throw Error(ErrorCode::ParseError, std::string(what) + " has the wrong shape");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n)
      throw Error(ErrorCode::ParseError, std::string(what) + " has the wrong shape");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

}  // namespace detail

inline MethodDocument parse_method_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto s = j.at("s").get<std::size_t>();
    const auto b = j.at("b").get<std::vector<double>>();
    if (b.size() != s) throw Error(ErrorCode::ParseError, "b must have s entries");
    MethodDocument doc{j.value("name", std::string("unnamed")), j.value("order", 0),
                       ButcherTableau(detail::matrix_from_json(j.at("A"), s, "A"), b), std::nullopt};
    if (j.contains("shu_osher") && !j["shu_osher"].is_null()) {
      const auto& so = j["shu_osher"];
      doc.shu_osher = ShuOsherForm(detail::matrix_from_json(so.at("Lambda"), s + 1, "Lambda"),
                                   detail::matrix_from_json(so.at("Gamma"), s + 1, "Gamma"));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline MethodDocument read_method_json(std::istream& is) {
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_method_json(ss.str());
}

}  // namespace ssprk
