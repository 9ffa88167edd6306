#include "cpforce/run_record.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cpforce {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // print -0.0 and 0.0 identically
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

double parse_double(const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str()) {
    throw std::invalid_argument("run record: cannot parse number from '" + field + "'");
  }
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != '\0') {
    throw std::invalid_argument("run record: trailing characters after number in '" +
                                field + "'");
  }
  return v;
}

std::string run_record_header() {
  return "a_um,temp_k,delta_ev,mu_ev,substrate,alpha0_cm3,mode,rel_tol,bare,"
         "force_total_n,force_l0_n,force_tail_n,s_total,s_l0,delta_vs_ideal,"
         "ratio_vs_bare,l_max_used,quad_error_n";
}

std::string format_run_record(const RunRecord& r) {
  std::string line;
  line += format_double(r.a_um) + ",";
  line += format_double(r.temp_k) + ",";
  line += format_double(r.delta_ev) + ",";
  line += format_double(r.mu_ev) + ",";
  line += r.substrate + ",";
  line += format_double(r.alpha0_cm3) + ",";
  line += r.mode + ",";
  line += format_double(r.rel_tol) + ",";
  line += (r.bare ? "1," : "0,");
  line += format_double(r.force_total_n) + ",";
  line += format_double(r.force_l0_n) + ",";
  line += format_double(r.force_tail_n) + ",";
  line += format_double(r.s_total) + ",";
  line += format_double(r.s_l0) + ",";
  line += format_double(r.delta_vs_ideal) + ",";
  line += format_double(r.ratio_vs_bare) + ",";
  line += std::to_string(r.l_max_used) + ",";
  line += format_double(r.quad_error_n);
  return line;
}

RunRecord parse_run_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (fields.size() != 18) {
    throw std::invalid_argument("run record: expected 18 fields, got " +
                                std::to_string(fields.size()));
  }
  RunRecord r;
  r.a_um = parse_double(fields[0]);
  r.temp_k = parse_double(fields[1]);
  r.delta_ev = parse_double(fields[2]);
  r.mu_ev = parse_double(fields[3]);
  r.substrate = fields[4];
  r.alpha0_cm3 = parse_double(fields[5]);
  r.mode = fields[6];
  r.rel_tol = parse_double(fields[7]);
  r.bare = fields[8] == "1";
  r.force_total_n = parse_double(fields[9]);
  r.force_l0_n = parse_double(fields[10]);
  r.force_tail_n = parse_double(fields[11]);
  r.s_total = parse_double(fields[12]);
  r.s_l0 = parse_double(fields[13]);
  r.delta_vs_ideal = parse_double(fields[14]);
  r.ratio_vs_bare = parse_double(fields[15]);
  r.l_max_used = static_cast<int>(parse_double(fields[16]));
  r.quad_error_n = parse_double(fields[17]);
  return r;
}

std::string csv_metadata(const std::string& invocation) {
  std::string out;
  out += std::string("# ") + CPFORCE_VERSION + "\n";
  out += "# command: " + invocation + "\n";
  return out;
}

std::string render_csv(const std::string& invocation, const std::vector<RunRecord>& rows) {
  std::string out = csv_metadata(invocation);
  out += run_record_header();
  out += "\n";
  for (const RunRecord& r : rows) {
    out += format_run_record(r);
    out += "\n";
  }
  return out;
}

}  // namespace cpforce
