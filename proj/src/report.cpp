#include "qmod/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "qmod/errors.hpp"

namespace qmod {

using nlohmann::ordered_json;

namespace {

// Round-trips through the 15-digit text form so JSON output is stable.
double rounded(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_number(x));
}

ordered_json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return rounded(x);
}

ordered_json report_json(const PairingReport& r) {
  ordered_json j;
  j["quantity"] = r.quantity;
  j["params"] = {{"q", number(r.params.q)}, {"s", number(r.params.s)}};
  j["window"] = r.window;
  j["value"] = {{"re", number(r.value.real())}, {"im", number(r.value.imag())}};
  j["tail"] = number(r.tail);
  j["reference"] = number(r.reference.real());
  j["pass"] = r.pass;
  if (!r.details.empty()) {
    ordered_json d = ordered_json::object();
    for (const auto& [k, v] : r.details) d[k] = v;
    j["details"] = d;
  }
  return j;
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "table") return Format::table;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw ConfigError("unknown output format '" + s + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string to_json(const PairingReport& r) { return report_json(r).dump(2); }

std::string to_json(const std::vector<PairingReport>& rs) {
  ordered_json a = ordered_json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a.dump(2);
}

std::string to_json(const std::vector<CheckRecord>& rs) {
  ordered_json a = ordered_json::array();
  for (const auto& r : rs) {
    a.push_back({{"check", r.check},
                 {"residual", number(r.residual)},
                 {"tail", number(r.tail)},
                 {"threshold", number(r.threshold)},
                 {"pass", r.pass}});
  }
  return a.dump(2);
}

std::string to_csv_row(const PairingReport& r) {
  std::ostringstream os;
  os << format_number(r.params.q) << ',' << format_number(r.params.s) << ',' << r.quantity << ','
     << format_number(r.value.real()) << ',' << format_number(r.value.imag()) << ','
     << format_number(r.tail) << ',' << format_number(r.reference.real()) << ','
     << (r.pass ? "true" : "false");
  return os.str();
}

void write_reports(std::ostream& os, const std::vector<PairingReport>& rs, Format f) {
  switch (f) {
    case Format::json:
      os << (rs.size() == 1 ? to_json(rs.front()) : to_json(rs)) << '\n';
      return;
    case Format::csv:
      os << csv_header << '\n';
      for (const auto& r : rs) os << to_csv_row(r) << '\n';
      return;
    case Format::table:
      break;
  }
  os << std::left << std::setw(16) << "quantity" << std::setw(8) << "q" << std::setw(8) << "s"
     << std::setw(24) << "value" << std::setw(24) << "reference" << std::setw(24) << "tail"
     << "pass\n";
  for (const auto& r : rs) {
    std::string v = format_number(r.value.real());
    if (std::abs(r.value.imag()) > 0) v += (r.value.imag() < 0 ? " - " : " + ") +
                                           format_number(std::abs(r.value.imag())) + "i";
    os << std::setw(16) << r.quantity << std::setw(8) << format_number(r.params.q) << std::setw(8)
       << format_number(r.params.s) << std::setw(24) << v << std::setw(24)
       << format_number(r.reference.real()) << std::setw(24) << format_number(r.tail)
       << (r.pass ? "PASS" : "FAIL") << '\n';
    for (const auto& [k, val] : r.details) os << "    " << k << " = " << val << '\n';
  }
}

void write_checks(std::ostream& os, const std::vector<CheckRecord>& rs, Format f) {
  switch (f) {
    case Format::json:
      os << to_json(rs) << '\n';
      return;
    case Format::csv:
      os << "check,residual,tail,threshold,pass\n";
      for (const auto& r : rs)
        os << '"' << r.check << "\"," << format_number(r.residual) << ',' << format_number(r.tail)
           << ',' << format_number(r.threshold) << ',' << (r.pass ? "true" : "false") << '\n';
      return;
    case Format::table:
      break;
  }
  size_t width = 5;
  for (const auto& r : rs) width = std::max(width, r.check.size());
  os << std::left << std::setw(width + 2) << "check" << std::setw(24) << "residual"
     << std::setw(24) << "tail" << std::setw(12) << "threshold" << "pass\n";
  for (const auto& r : rs) {
    os << std::setw(width + 2) << r.check << std::setw(24) << format_number(r.residual)
       << std::setw(24) << format_number(r.tail) << std::setw(12) << format_number(r.threshold)
       << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

}  // namespace qmod
