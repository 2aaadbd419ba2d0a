#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qmod/rep.hpp"

namespace qmod {

enum class Format { table, json, csv };

Format parse_format(const std::string& s);  // throws ConfigError

/// One computed quantity against its closed-form reference.
struct PairingReport {
  std::string quantity;
  Params params;
  std::string window;
  cd value = 0.0;
  double tail = 0.0;
  cd reference = 0.0;
  bool pass = false;
  /// Extra key/value pairs; numbers are kept as text with 15 digits.
  std::vector<std::pair<std::string, std::string>> details;
};

/// One line of the verification suite.
struct CheckRecord {
  std::string check;
  double residual = 0.0;
  double tail = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// 15 significant digits.
std::string format_number(double x);

std::string to_json(const PairingReport& r);
std::string to_json(const std::vector<PairingReport>& rs);
std::string to_json(const std::vector<CheckRecord>& rs);

inline constexpr const char* csv_header = "q,s,quantity,value_re,value_im,tail,reference,pass";
std::string to_csv_row(const PairingReport& r);

void write_reports(std::ostream& os, const std::vector<PairingReport>& rs, Format f);
void write_checks(std::ostream& os, const std::vector<CheckRecord>& rs, Format f);

}  // namespace qmod
