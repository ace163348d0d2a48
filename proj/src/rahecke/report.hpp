#pragma once

// Report assembly shared by the C API and the command line. Every report
// carries the schema version, the library version, the graph hash and the
// configuration that produced it.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rahecke/schur.hpp"

namespace rahecke::report {

using Json = nlohmann::ordered_json;

struct Report {
  Json json;
  std::string csv;      // empty when the command has no table
  std::string summary;  // human-readable lines for stdout
  bool passed = true;   // false when a verification flag failed
};

/// Rounds to 12 significant digits before it enters a report.
Json num(double v);
Json num(Complex c);

Report graph_check(const coxeter::GraphPtr& g);
Report ball(const coxeter::GraphPtr& g, std::size_t radius, bool four_point,
            const std::optional<std::string>& cache);
/// command is "mul" or "trace"; x is the element reported.
Report element(const std::string& command, const hecke::HeckeElement& x,
               const std::vector<std::string>& inputs);
Report decompose(const coxeter::NormalWord& w, const hecke::MultiParameter& q, std::size_t radius,
                 bool verify, double tolerance);
Report haagerup_scan(const hecke::MultiParameter& q, std::size_t n_max, std::size_t radius,
                     std::size_t samples, std::uint64_t seed);
Report counterexample(const hecke::MultiParameter& q, std::size_t n);
Report tuples(const coxeter::GraphPtr& g, std::size_t max_x, std::size_t max_y, std::size_t max_i,
              std::uint64_t seed);
Report schur_gram(const coxeter::GraphPtr& g, const std::vector<double>& kappas, std::size_t radius);
Report schur_check(const hecke::HeckeElement& x, const hecke::MultiParameter& q2, double kappa,
                   std::size_t radius, std::optional<double> k_emp, std::uint64_t seed);
Report converge(const coxeter::GraphPtr& g, const schur::ConvergenceConfig& config);

}  // namespace rahecke::report
