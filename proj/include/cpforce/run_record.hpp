#pragma once

/**
 * CSV run records: one row per force evaluation, carrying all inputs and the
 * principal outputs.  Formatting is deterministic -- fixed version string,
 * no timestamps, every floating-point field printed with nine significant
 * digits -- so identical invocations produce byte-identical files.
 */

#include <string>
#include <vector>

namespace cpforce {

inline constexpr const char* CPFORCE_VERSION = "cpforce 1.0.0";

struct RunRecord {
  // inputs
  double a_um = 5.6;
  double temp_k = 300.0;
  double delta_ev = 0.0;
  double mu_ev = 0.0;
  std::string substrate = "sio2";
  double alpha0_cm3 = 1.0;
  std::string mode = "full";
  double rel_tol = 1e-8;
  bool bare = false;  // true = no graphene sheet on the substrate

  // outputs
  double force_total_n = 0.0;
  double force_l0_n = 0.0;
  double force_tail_n = 0.0;
  double s_total = 0.0;           // dimensionless sum
  double s_l0 = 0.0;              // dimensionless halved l = 0 term
  double delta_vs_ideal = 0.0;    // s_l0 / 6 - 1
  double ratio_vs_bare = 0.0;     // s_l0 / s_l0(bare substrate); nan if undefined
  int l_max_used = 0;
  double quad_error_n = 0.0;
};

/** Nine-significant-digit scientific form used for every floating field. */
std::string format_double(double v);
double parse_double(const std::string& field);

std::string run_record_header();
std::string format_run_record(const RunRecord& r);

/** Inverse of format_run_record; throws std::invalid_argument on bad input. */
RunRecord parse_run_record(const std::string& line);

/** '#'-prefixed metadata block: version line plus the reassembled command. */
std::string csv_metadata(const std::string& invocation);

/** Full CSV document: metadata, header, one line per record. */
std::string render_csv(const std::string& invocation, const std::vector<RunRecord>& rows);

}  // namespace cpforce
