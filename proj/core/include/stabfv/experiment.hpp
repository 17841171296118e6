#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "problems.hpp"
#include "simulate.hpp"

namespace stabfv {

struct TableRow {
  int example = 0;
  double dx = 0.0;
  double sigma = 0.0;
  double E = 0.0;
  double nu_emp = std::numeric_limits<double>::quiet_NaN();
  double nu_theory = std::numeric_limits<double>::quiet_NaN();
  /// Set when a value could not be computed (for example zero initial data).
  bool flagged = false;
  std::string note;
};

TableRow run_experiment(const ProblemConfig& config, const SimulationOptions& options = {});

/// Rows ordered with dx outermost and sigma innermost.
std::vector<TableRow> table(int example, const std::vector<double>& dx_list, const std::vector<double>& sigma_list,
                            const ExampleOverrides& overrides = {}, const SimulationOptions& options = {});

/// Overrides used when regenerating a published table. Example 8 runs the
/// central-upwind scheme there; every other example uses its defaults.
ExampleOverrides reproduction_overrides(int example);

const std::vector<double>& default_dx_list();
const std::vector<double>& default_sigma_list();

/// Six significant digits, '.' separator; NaN prints as an empty field.
std::string format_number(double v);

/// Header `dx,sigma,E,nu_emp,nu_theory` followed by one line per row.
std::string format_csv(const std::vector<TableRow>& rows);
void emit_csv(const std::vector<TableRow>& rows, std::ostream& out);
/// Throws IoError if the file cannot be written.
void emit_csv(const std::vector<TableRow>& rows, const std::string& path);

struct ReferenceValue {
  int example = 0;
  double dx = 0.0;
  double sigma = 0.0;
  double E = 0.0;
  double nu_emp = 0.0;
  double nu_theory = std::numeric_limits<double>::quiet_NaN();
  const char* source = "";
};

/// Published values for every row of the eight tables.
const std::vector<ReferenceValue>& reference_set();

/// Looks up a reference; returns nullptr when absent.
const ReferenceValue* find_reference(int example, double dx, double sigma);

struct Tolerance {
  double nu_abs = 0.0;
  double nu_emp_abs = 0.0;
  /// Allowed ratio between computed and published E; 0 disables the check.
  double E_factor = 0.0;
};

Tolerance tolerance_for(int example);

struct CheckLine {
  TableRow row;
  const ReferenceValue* ref = nullptr;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckLine> lines;
  bool missing_reference = false;
  bool all_passed() const;
  /// 0 all pass, 1 missing reference, 2 tolerance failure.
  int exit_code() const;
  std::string render() const;
};

CheckReport check(const std::vector<TableRow>& rows);

}  // namespace stabfv
