#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "germlab/exactalg.hpp"
#include "germlab/liftable/vector_field.hpp"
#include "germlab/status.hpp"

namespace germlab {

using Json = nlohmann::ordered_json;

// Exact values serialize as text: rationals "a/b", polynomials in the parser syntax.
inline Json to_json(const Rational& r) { return to_string(r); }
inline Json to_json(const Polynomial& p) { return to_string(p); }
inline Json to_json(const PolyVector& v) {
  Json a = Json::array();
  for (const auto& p : v) a.push_back(to_string(p));
  return a;
}
inline Json to_json(const VectorField& v) {
  return Json{{"vars", v.vars->names()}, {"components", to_json(v.comps)}};
}
inline Json to_json(const RationalMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}
inline Json to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

/// Answer of a decision procedure. YES carries a witness that can be
/// re-checked; NO carries a certificate valid at the recorded degree.
struct Verdict {
  std::string decision;
  Status status = Status::UnknownAtDegree;
  Json witness;      // null when absent
  Json certificate;  // null when absent
  int degree = 0;
  std::vector<Json> evidence;
  std::string note;

  bool yes() const { return status == Status::Yes; }

  Verdict& step(std::string what, Json detail = nullptr) {
    Json rec{{"step", std::move(what)}};
    if (!detail.is_null()) rec["detail"] = std::move(detail);
    evidence.push_back(std::move(rec));
    return *this;
  }

  Json to_json() const {
    Json j{{"decision", decision}, {"status", to_string(status)}, {"degree", degree}};
    j["witness"] = witness;
    j["certificate"] = certificate;
    j["evidence"] = evidence;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

}  // namespace germlab
