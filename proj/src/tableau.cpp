#include "imexstab/tableau.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace imexstab {
namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw TableauError("non-numeric entry in " + where);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw TableauError("non-finite entry in " + where);
  return v;
}

Eigen::MatrixXd parse_matrix(const json& j, int s, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != s)
    throw TableauError("dimension mismatch: " + name + " must be " + std::to_string(s) +
                       " rows");
  Eigen::MatrixXd m(s, s);
  for (int i = 0; i < s; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != s)
      throw TableauError("dimension mismatch: " + name + " row " + std::to_string(i) +
                         " must have " + std::to_string(s) + " entries");
    for (int k = 0; k < s; ++k)
      m(i, k) = require_number(row[static_cast<size_t>(k)], name);
  }
  return m;
}

Eigen::VectorXd parse_vector(const json& j, int s, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != s)
    throw TableauError("dimension mismatch: " + name + " must have " + std::to_string(s) +
                       " entries");
  Eigen::VectorXd v(s);
  for (int i = 0; i < s; ++i) v(i) = require_number(j[static_cast<size_t>(i)], name);
  return v;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ImexTableau parse_tableau(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw TableauError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw TableauError("document root must be an object");
  for (const char* field : {"s", "A", "w", "B", "omega"})
    if (!doc.contains(field)) throw TableauError(std::string("missing field: ") + field);

  ImexTableau t;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw TableauError("name must be a string");
    t.name = doc["name"].get<std::string>();
  }
  if (!doc["s"].is_number_integer() || doc["s"].get<int>() < 1)
    throw TableauError("s must be a positive integer");
  t.s = doc["s"].get<int>();
  t.A = parse_matrix(doc["A"], t.s, "A");
  t.B = parse_matrix(doc["B"], t.s, "B");
  t.w = parse_vector(doc["w"], t.s, "w");
  t.omega = parse_vector(doc["omega"], t.s, "omega");

  for (int i = 0; i < t.s; ++i)
    for (int j = i; j < t.s; ++j)
      if (t.B(i, j) != 0.0)
        throw TableauError("B not strictly lower triangular: b_" + std::to_string(i + 1) +
                           std::to_string(j + 1) + " = " + fmt17(t.B(i, j)) + " != 0");
  return t;
}

ImexTableau load_tableau_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableauError("cannot open tableau file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tableau(ss.str());
}

std::string serialize(const ImexTableau& t) {
  std::ostringstream out;
  out << "{";
  if (!t.name.empty()) out << "\"name\":" << json(t.name).dump() << ",";
  out << "\"s\":" << t.s;
  auto emit_matrix = [&](const char* name, const Eigen::MatrixXd& m) {
    out << ",\"" << name << "\":[";
    for (int i = 0; i < t.s; ++i) {
      out << (i ? ",[" : "[");
      for (int j = 0; j < t.s; ++j) out << (j ? "," : "") << fmt17(m(i, j));
      out << "]";
    }
    out << "]";
  };
  auto emit_vector = [&](const char* name, const Eigen::VectorXd& v) {
    out << ",\"" << name << "\":[";
    for (int i = 0; i < t.s; ++i) out << (i ? "," : "") << fmt17(v(i));
    out << "]";
  };
  emit_matrix("A", t.A);
  emit_vector("w", t.w);
  emit_matrix("B", t.B);
  emit_vector("omega", t.omega);
  out << "}";
  return out.str();
}

std::vector<Diagnostic> validate(const ImexTableau& t) {
  std::vector<Diagnostic> out;
  for (int i = 0; i < t.s; ++i)
    for (int j = i; j < t.s; ++j)
      if (t.B(i, j) != 0.0) {
        out.push_back({Severity::Error, "B not strictly lower triangular: b_" +
                                            std::to_string(i + 1) + std::to_string(j + 1) +
                                            " = " + fmt17(t.B(i, j))});
      }
  const double sw = t.w.sum();
  if (std::abs(sw - 1.0) > 1e-12)
    out.push_back({Severity::Warning, "sum(w) = " + fmt17(sw) + " != 1"});
  const double so = t.omega.sum();
  if (std::abs(so - 1.0) > 1e-12)
    out.push_back({Severity::Warning, "sum(omega) = " + fmt17(so) + " != 1"});
  for (int i = 0; i < t.s; ++i)
    if (t.A(i, i) <= 0.0)
      out.push_back({Severity::Warning, "a_" + std::to_string(i + 1) + std::to_string(i + 1) +
                                            " = " + fmt17(t.A(i, i)) + " <= 0"});
  bool lower = true;
  for (int i = 0; i < t.s && lower; ++i)
    for (int j = i + 1; j < t.s; ++j)
      if (t.A(i, j) != 0.0) {
        lower = false;
        break;
      }
  if (!lower)
    out.push_back({Severity::Warning,
                   "A not lower triangular: p/q denominator identity unverified"});
  return out;
}

}  // namespace imexstab
