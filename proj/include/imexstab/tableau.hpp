#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace imexstab {

/// IMEX Runge-Kutta tableau pair: implicit (A, w) and explicit (B, omega).
/// B must be strictly lower triangular.
struct ImexTableau {
  std::string name;
  int s = 0;
  Eigen::MatrixXd A;
  Eigen::VectorXd w;
  Eigen::MatrixXd B;
  Eigen::VectorXd omega;
};

struct TableauError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity;
  std::string message;
};

/// Parses the JSON tableau document. Throws TableauError on malformed
/// input, missing fields, non-numeric entries, or dimension mismatch.
ImexTableau parse_tableau(const std::string& text);

ImexTableau load_tableau_file(const std::string& path);

/// JSON serialization; numbers printed with 17 significant digits so
/// parse_tableau(serialize(t)) is bit-identical.
std::string serialize(const ImexTableau& t);

/// Structural and consistency checks. ERROR: B not strictly lower
/// triangular. WARNING: weight sums != 1, a_ii <= 0, A not lower triangular.
std::vector<Diagnostic> validate(const ImexTableau& t);

}  // namespace imexstab
