// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/report.hpp"

#include <json.hpp>

#include <sstream>
#include <vector>

namespace daac {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_to_json(const DenseMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from_json(const ordered_json& j) {
  const index rows = static_cast<index>(j.size());
  if (rows == 0) return DenseMatrix();
  const index cols = static_cast<index>(j.at(0).size());
  DenseMatrix m(rows, cols);
  for (index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<index>(row.size()) != cols) {
      throw ParseError("report: ragged matrix rows in JSON");
    }
    for (index c = 0; c < cols; ++c) {
      m(r, c) = row.at(static_cast<std::size_t>(c)).get<real>();
    }
  }
  return m;
}

Relation relation_from_name(const std::string& name) {
  if (name == "antagonism") return Relation::Antagonism;
  if (name == "alliance") return Relation::Alliance;
  if (name == "none") return Relation::None;
  throw ParseError("report: unknown relation name '" + name + "'");
}

const char* exec_name(Exec exec) {
  return exec == Exec::Par ? "par" : "seq";
}

Exec exec_from_name(const std::string& name) {
  if (name == "par") return Exec::Par;
  if (name == "seq") return Exec::Seq;
  throw ParseError("report: unknown exec mode '" + name + "'");
}

}  // namespace

std::string to_json_string(const RunReport& report) {
  ordered_json j;
  j["schema_version"] = report.schema_version;
  j["method"] = report.method;
  ordered_json cfg;
  cfg["k"] = report.config.k;
  cfg["lambda"] = report.config.lambda;
  cfg["alpha"] = report.config.alpha;
  cfg["max_iters"] = report.config.max_iters;
  cfg["tol"] = report.config.tol;
  cfg["eps_div"] = report.config.eps_div;
  cfg["seed"] = report.config.seed;
  cfg["backtracking"] = report.config.backtracking;
  cfg["max_backtracks"] = report.config.max_backtracks;
  cfg["restarts"] = report.config.restarts;
  cfg["exec"] = exec_name(report.config.exec);
  cfg["tau"] = report.tau;
  j["config"] = std::move(cfg);
  j["n"] = report.n;
  j["k"] = report.k;
  j["converged"] = report.converged;
  j["iterations"] = report.iterations;
  j["objective"] = report.objective;
  j["users"] = report.users;
  j["assignment"] = report.assignment;
  if (report.community_labels) {
    j["community_labels"] = *report.community_labels;
  } else {
    j["community_labels"] = nullptr;
  }
  j["u"] = matrix_to_json(report.u);
  j["h"] = matrix_to_json(report.h);
  j["h_normalized"] = matrix_to_json(report.h_normalized);
  j["relation_strengths"] = matrix_to_json(report.relation_strengths);
  ordered_json rels = ordered_json::array();
  for (index a = 0; a < report.k; ++a) {
    ordered_json row = ordered_json::array();
    for (index b = 0; b < report.k; ++b) {
      row.push_back(to_string(
          report.relations[static_cast<std::size_t>(a * report.k + b)]));
    }
    rels.push_back(std::move(row));
  }
  j["relations"] = std::move(rels);
  j["intra"] = report.intra;
  if (report.metrics) {
    j["metrics"] = {{"nmi", report.metrics->nmi},
                    {"ari", report.metrics->ari},
                    {"purity", report.metrics->purity}};
  } else {
    j["metrics"] = nullptr;
  }
  if (report.relation_accuracy) {
    j["relation_accuracy"] = {{"correct", report.relation_accuracy->correct},
                              {"total", report.relation_accuracy->total},
                              {"accuracy", report.relation_accuracy->accuracy}};
  } else {
    j["relation_accuracy"] = nullptr;
  }
  if (report.timing_seconds) {
    j["timing_seconds"] = *report.timing_seconds;
  } else {
    j["timing_seconds"] = nullptr;
  }
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: invalid JSON: ") + e.what());
  }
  RunReport r;
  try {
    r.schema_version = j.at("schema_version").get<int>();
    r.method = j.at("method").get<std::string>();
    const auto& cfg = j.at("config");
    r.config.k = cfg.at("k").get<index>();
    r.config.lambda = cfg.at("lambda").get<real>();
    r.config.alpha = cfg.at("alpha").get<real>();
    r.config.max_iters = cfg.at("max_iters").get<index>();
    r.config.tol = cfg.at("tol").get<real>();
    r.config.eps_div = cfg.at("eps_div").get<real>();
    r.config.seed = cfg.at("seed").get<std::uint64_t>();
    r.config.backtracking = cfg.at("backtracking").get<bool>();
    r.config.max_backtracks = cfg.at("max_backtracks").get<index>();
    r.config.restarts = cfg.at("restarts").get<index>();
    r.config.exec = exec_from_name(cfg.at("exec").get<std::string>());
    r.tau = cfg.at("tau").get<real>();
    r.n = j.at("n").get<index>();
    r.k = j.at("k").get<index>();
    r.converged = j.at("converged").get<bool>();
    r.iterations = j.at("iterations").get<index>();
    r.objective = j.at("objective").get<real>();
    r.users = j.at("users").get<std::vector<std::string>>();
    r.assignment = j.at("assignment").get<std::vector<index>>();
    if (!j.at("community_labels").is_null()) {
      r.community_labels =
          j.at("community_labels").get<std::vector<std::string>>();
    }
    r.u = matrix_from_json(j.at("u"));
    r.h = matrix_from_json(j.at("h"));
    r.h_normalized = matrix_from_json(j.at("h_normalized"));
    r.relation_strengths = matrix_from_json(j.at("relation_strengths"));
    const auto& rels = j.at("relations");
    r.relations.clear();
    for (const auto& row : rels) {
      for (const auto& cell : row) {
        r.relations.push_back(relation_from_name(cell.get<std::string>()));
      }
    }
    r.intra = j.at("intra").get<std::vector<real>>();
    if (!j.at("metrics").is_null()) {
      MetricsBlock m;
      m.nmi = j.at("metrics").at("nmi").get<real>();
      m.ari = j.at("metrics").at("ari").get<real>();
      m.purity = j.at("metrics").at("purity").get<real>();
      r.metrics = m;
    }
    if (!j.at("relation_accuracy").is_null()) {
      AccuracyBlock a;
      a.correct = j.at("relation_accuracy").at("correct").get<index>();
      a.total = j.at("relation_accuracy").at("total").get<index>();
      a.accuracy = j.at("relation_accuracy").at("accuracy").get<real>();
      r.relation_accuracy = a;
    }
    if (!j.at("timing_seconds").is_null()) {
      r.timing_seconds = j.at("timing_seconds").get<real>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: missing or mistyped field: ") +
                     e.what());
  }
  return r;
}

std::string render_table(const RunReport& report, bool color) {
  const char* kRed = color ? "\033[31m" : "";
  const char* kGreen = color ? "\033[32m" : "";
  const char* kReset = color ? "\033[0m" : "";
  std::ostringstream out;
  out << "method      " << report.method << "\n";
  out << "users       " << report.n << "\n";
  out << "communities " << report.k << "\n";
  out << "converged   " << (report.converged ? "yes" : "no") << " ("
      << report.iterations << " iterations)\n";
  out << "objective   " << format_real(report.objective) << "\n";
  out << "\n";

  std::vector<index> sizes(static_cast<std::size_t>(report.k), 0);
  for (index c : report.assignment) {
    if (c >= 0 && c < report.k) ++sizes[static_cast<std::size_t>(c)];
  }
  out << "community  size  intra-strength";
  if (report.community_labels) out << "  label";
  out << "\n";
  for (index c = 0; c < report.k; ++c) {
    out << "c" << c << "         " << sizes[static_cast<std::size_t>(c)]
        << "     " << format_real(report.intra[static_cast<std::size_t>(c)]);
    if (report.community_labels) {
      out << "  " << (*report.community_labels)[static_cast<std::size_t>(c)];
    }
    out << "\n";
  }
  out << "\n";

  out << "relations (tau = " << format_real(report.tau) << ")\n";
  for (index a = 0; a < report.k; ++a) {
    for (index b = a + 1; b < report.k; ++b) {
      const Relation rel =
          report.relations[static_cast<std::size_t>(a * report.k + b)];
      const char* tint = rel == Relation::Antagonism ? kRed
                         : rel == Relation::Alliance ? kGreen
                                                     : "";
      const char* untint = rel == Relation::None ? "" : kReset;
      out << "  c" << a << " ~ c" << b << "  " << tint << to_string(rel)
          << untint << "  strength "
          << format_real(report.relation_strengths(a, b)) << "\n";
    }
  }

  if (report.metrics) {
    out << "\nmetrics  nmi " << format_real(report.metrics->nmi) << "  ari "
        << format_real(report.metrics->ari) << "  purity "
        << format_real(report.metrics->purity) << "\n";
  }
  if (report.relation_accuracy) {
    out << "relation accuracy  " << report.relation_accuracy->correct << "/"
        << report.relation_accuracy->total << " = "
        << format_real(report.relation_accuracy->accuracy) << "\n";
  }
  if (report.timing_seconds) {
    out << "elapsed  " << format_real(*report.timing_seconds) << " s\n";
  }
  return out.str();
}

}  // namespace daac
