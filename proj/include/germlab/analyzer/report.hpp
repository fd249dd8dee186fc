#pragma once

#include <algorithm>
#include <filesystem>
#include <future>
#include <string>
#include <vector>

#include "germlab/analyzer/germ_file.hpp"
#include "germlab/homogeneity.hpp"
#include "germlab/substantial.hpp"

namespace germlab {

inline constexpr const char* kReportSchema = "germlab-report/1";

enum ExitCode { kExitOk = 0, kExitInputError = 1, kExitUnsupported = 2, kExitUnknown = 3 };

struct RunOptions {
  int degree = 12;
  bool construct_coords = false;
  /// Standard unfoldings with more parameters are not analyzed by `analyze`.
  std::size_t max_params = 6;
};

struct RunResult {
  Json report;
  int exit_code = kExitOk;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"analyze", "lift", "substantial", "weak", "qh", "mu-tau"};
  return c;
}

namespace detail {

inline Json germ_json(const GermInput& in) {
  if (in.function) return Json{{"vars", in.function->vars()->names()}, {"function", to_string(*in.function)}};
  const MapGerm& f = *in.germ;
  Json j{{"source", f.source()->names()}, {"target", f.target()->names()}, {"components", to_json(f.components())}};
  if (in.is_unfolding) j["params"] = in.params;
  if (!in.notes.empty()) j["notes"] = in.notes;
  return j;
}

inline Json basis_json(const MapGerm& f, const std::vector<QuotientBasisElement>& b) {
  Json out = Json::array();
  for (const auto& e : b)
    out.push_back(Json{{"component", e.component + 1},
                       {"monomial", to_string(Polynomial::term(f.source(), e.monomial, Rational(1)))}});
  return out;
}

inline Json unsupported(const std::exception& e) { return Json{{"status", "UNSUPPORTED"}, {"reason", e.what()}}; }

inline const MapGerm& require_germ(const GermInput& in) {
  if (!in.germ) throw UnsupportedShape("this command needs a germ file");
  return *in.germ;
}

inline int exit_for(const Verdict& v) { return v.status == Status::UnknownAtDegree ? kExitUnknown : kExitOk; }

/// The unfolding given in the file, else the standard one built from f.
inline Unfolding unfolding_of(const GermInput& in, int D) {
  if (in.is_unfolding) return in.unfolding();
  const MapGerm& f = require_germ(in);
  auto data = minimal_unfolding_data(f, D);
  if (auto* nf = std::get_if<NotFiniteUpTo>(&data))
    throw UnsupportedShape("no finite standard unfolding through degree " + std::to_string(nf->D));
  return build_standard_unfolding(f, std::get<std::vector<QuotientBasisElement>>(data));
}

inline Verdict qh_verdict(const MapGerm& f, const RunOptions& o) {
  if (f.n() != f.p()) throw UnsupportedShape("quasi-homogeneity decisions need n = p");
  if (corank(f) == 1) {
    try {
      mult3_extract(f);
      return decide_qh_mult3(f, o.degree);
    } catch (const UnsupportedShape&) {
    }
  }
  return decide_qh_minimal(f, o.degree, o.construct_coords);
}

inline Json lift_json(const LiftModule& L, const MapGerm& F, int D) {
  Json gens = Json::array();
  for (const auto& g : L.generators()) {
    Json e{{"field", to_json(VectorField(F.target(), g))}};
    auto low = lower_partner(F, VectorField(F.target(), g), D);
    if (auto* pr = std::get_if<LiftPair>(&low)) {
      e["lower_partner"] = to_json(pr->xi);
      e["exact"] = pr->exact;
    } else {
      e["lower_partner"] = nullptr;
      e["failing_level"] = std::get<NotLiftableAt>(low).failing_level;
    }
    gens.push_back(std::move(e));
  }
  return Json{{"discriminant", to_string(L.disc.H)},
              {"discriminant_method", L.disc.shape},
              {"degree_reached", L.degree},
              {"free_basis", L.free_basis},
              {"generators", gens}};
}

inline Json analyze(const GermInput& in, const RunOptions& o) {
  const MapGerm& f = require_germ(in);
  int D = o.degree;
  Json r;
  r["corank"] = corank(f);
  if (f.n() == f.p()) r["multiplicity"] = to_json(multiplicity(f, D));
  r["ke_codim"] = to_json(ke_codim(f, D));
  auto ae = ae_codim(f, D);
  r["ae_codim"] = to_json(ae);
  std::optional<std::vector<QuotientBasisElement>> basis;
  if (!in.is_unfolding) {
    auto data = minimal_unfolding_data(f, D);
    if (auto* b = std::get_if<std::vector<QuotientBasisElement>>(&data)) {
      basis = *b;
      r["unfolding_parameters"] = b->size();
      r["unfolding_basis"] = basis_json(f, *b);
    } else {
      r["unfolding_parameters"] = nullptr;
    }
  }
  auto W = wh_detect(f);
  r["weights"] = W ? W->to_json() : Json(nullptr);
  if (W && basis) {
    try {
      r["good_weights"] = good_weights_check(f, *W, *basis).to_json();
    } catch (const std::exception& e) {
      r["good_weights"] = unsupported(e);
    }
  } else {
    r["good_weights"] = nullptr;
  }
  bool finite = in.is_unfolding || detail::certified(ae);
  if (!finite) {
    r["unfolding"] = Json{{"status", "SKIPPED"}, {"reason", "A-finiteness not certified"}};
  } else if (basis && basis->size() > o.max_params) {
    r["unfolding"] = Json{{"status", "SKIPPED"},
                          {"reason", "standard unfolding has " + std::to_string(basis->size()) + " parameters, limit " +
                                         std::to_string(o.max_params)}};
  } else {
    try {
      Unfolding U = unfolding_of(in, D);
      auto a = analyze_unfolding(U, D, {}, LiftGoal::Substantial);
      auto sub = unfolding_verdict(U, a, false);
      auto weak = unfolding_verdict(U, a, true);
      r["unfolding"] = Json{{"germ", to_string(U.total())},
                            {"parameters", U.m()},
                            {"stratum_dimension", analytic_stratum_dim(U.total(), a.lift.span)},
                            {"lambda_jets", a.L.to_json()},
                            {"substantial", sub.to_json()},
                            {"weakly_substantial", weak.to_json()}};
    } catch (const StructuralError& e) {
      r["unfolding"] = unsupported(e);
    } catch (const HypothesisError& e) {
      r["unfolding"] = unsupported(e);
    }
  }
  if (f.n() == f.p() && !in.is_unfolding) {
    try {
      r["quasi_homogeneous"] = qh_verdict(f, o).to_json();
    } catch (const StructuralError& e) {
      r["quasi_homogeneous"] = unsupported(e);
    }
  }
  return r;
}

}  // namespace detail

/// One command on one parsed input. Unsupported shapes and failed hypotheses
/// are reported with exit code 2.
inline RunResult run(const std::string& command, const GermInput& in, const RunOptions& o = {}) {
  RunResult out;
  Json& r = out.report;
  r["schema"] = kReportSchema;
  r["command"] = command;
  r["input"] = in.path;
  r["degree"] = o.degree;
  r["germ"] = detail::germ_json(in);
  try {
    if (command == "analyze") {
      r["analysis"] = detail::analyze(in, o);
    } else if (command == "lift") {
      const MapGerm& F = detail::require_germ(in);
      r["lift"] = detail::lift_json(lift_module(F, o.degree), F, o.degree);
    } else if (command == "substantial" || command == "weak") {
      bool weak = command == "weak";
      Unfolding U = detail::unfolding_of(in, o.degree);
      if (!in.is_unfolding) r["unfolding"] = to_string(U.total());
      auto a = analyze_unfolding(U, o.degree, {}, weak ? LiftGoal::WeaklySubstantial : LiftGoal::Substantial);
      auto v = unfolding_verdict(U, a, weak);
      r["verdict"] = v.to_json();
      out.exit_code = detail::exit_for(v);
    } else if (command == "qh") {
      auto v = detail::qh_verdict(detail::require_germ(in), o);
      r["verdict"] = v.to_json();
      out.exit_code = detail::exit_for(v);
    } else if (command == "mu-tau") {
      if (!in.function) throw UnsupportedShape("mu-tau needs a function file");
      const Polynomial& g = *in.function;
      require_vanishing(g);
      auto s = saito_check(g, o.degree);
      r["milnor"] = to_json(milnor_number(g, o.degree));
      r["tjurina"] = to_json(tjurina_number(g, o.degree));
      r["saito"] = s.to_json();
      out.exit_code = detail::exit_for(s);
    } else {
      throw StructuralError("unknown command '" + command + "'");
    }
  } catch (const UnsupportedShape& e) {
    r["error"] = Json{{"kind", "unsupported"}, {"message", e.what()}};
    out.exit_code = kExitUnsupported;
  } catch (const HypothesisError& e) {
    r["error"] = Json{{"kind", "hypothesis"}, {"message", e.what()}};
    out.exit_code = kExitUnsupported;
  }
  return out;
}

/// Every *.germ and *.fn file under dir, sorted by path, processed
/// concurrently; the combined report does not depend on scheduling.
inline RunResult run_corpus(const std::string& command, const std::string& dir, const RunOptions& o = {}) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && (e.path().extension() == ".germ" || e.path().extension() == ".fn"))
      files.push_back(fs::relative(e.path(), dir).generic_string());
  std::sort(files.begin(), files.end());
  std::vector<std::future<RunResult>> jobs;
  for (const auto& rel : files)
    jobs.push_back(std::async(std::launch::async, [&, rel] {
      try {
        GermInput in = parse_germ_file((fs::path(dir) / rel).string());
        in.path = rel;
        return run(command, in, o);
      } catch (const StructuralError& e) {
        RunResult bad;
        bad.report = Json{{"input", rel}, {"error", Json{{"kind", "input"}, {"message", e.what()}}}};
        bad.exit_code = kExitInputError;
        return bad;
      }
    }));
  RunResult out;
  out.report = Json{{"schema", kReportSchema}, {"command", command}, {"degree", o.degree}, {"reports", Json::object()}};
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto r = jobs[i].get();
    out.exit_code = std::max(out.exit_code, r.exit_code);
    out.report["reports"][files[i]] = std::move(r.report);
  }
  return out;
}

/// Indented plain-text rendering of a report.
inline void render_text(std::ostream& os, const Json& j, int indent = 0) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object() && v.contains("status") && v.contains("decision")) {
      os << pad << it.key() << ": " << v["status"].get<std::string>();
      if (v.contains("note")) os << " (" << v["note"].get<std::string>() << ")";
      os << "\n";
      if (!v["witness"].is_null()) os << pad << "  witness: " << v["witness"].dump() << "\n";
      if (!v["certificate"].is_null()) os << pad << "  certificate: " << v["certificate"].dump() << "\n";
    } else if (v.is_object()) {
      os << pad << it.key() << ":\n";
      render_text(os, v, indent + 2);
    } else {
      os << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace germlab
