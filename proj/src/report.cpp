#include "jmat/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace jmat {

using nlohmann::json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Curve {
  Route route;
  cplx S;
  double abs_one_minus;
  double delta;
};

std::vector<Route> routes(OutputMode mode) {
  switch (mode) {
  case OutputMode::full: return {Route::full};
  case OutputMode::truncated: return {Route::truncated};
  case OutputMode::both: return {Route::full, Route::truncated};
  }
  return {};
}

Curve curve(const ScanRow& row, Route route) {
  double const nan = std::nan("");
  bool const usable = row.ok() || row.status == "nonunitary";
  if (!usable) return {route, {nan, nan}, nan, nan};
  if (route == Route::full) return {route, row.S_full, row.abs_one_minus_full, row.delta_full};
  return {route, row.S_truncated, row.abs_one_minus_truncated, row.delta_truncated};
}

double row_tau(const ScanRow& row) {
  return row.ok() || row.status == "nonunitary" ? row.tau : std::nan("");
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

void write_scan_csv(std::ostream& out, const ScanTable& table, OutputMode mode) {
  bool const with_status = std::any_of(table.rows.begin(), table.rows.end(), [](const ScanRow& r) { return !r.ok(); });
  out << "energy,re_s,im_s,abs_one_minus_s,tau,delta,mode" << (with_status ? ",status" : "") << '\n';
  for (const auto& row : table.rows) {
    for (auto route : routes(mode)) {
      auto const c = curve(row, route);
      out << format_real(row.E) << ',' << format_real(c.S.real()) << ',' << format_real(c.S.imag()) << ','
          << format_real(c.abs_one_minus) << ',' << format_real(row_tau(row)) << ',' << format_real(c.delta) << ','
          << to_string(route);
      if (with_status) out << ',' << row.status;
      out << '\n';
    }
  }
}

json scan_json(const ScanTable& table, OutputMode mode, const json& config_echo) {
  json cols = {{"energy", json::array()}, {"re_s", json::array()}, {"im_s", json::array()},
               {"abs_one_minus_s", json::array()}, {"tau", json::array()}, {"delta", json::array()},
               {"mode", json::array()}, {"status", json::array()}};
  for (const auto& row : table.rows) {
    for (auto route : routes(mode)) {
      auto const c = curve(row, route);
      cols["energy"].push_back(row.E);
      cols["re_s"].push_back(number(c.S.real()));
      cols["im_s"].push_back(number(c.S.imag()));
      cols["abs_one_minus_s"].push_back(number(c.abs_one_minus));
      cols["tau"].push_back(number(row_tau(row)));
      cols["delta"].push_back(number(c.delta));
      cols["mode"].push_back(to_string(route));
      cols["status"].push_back(row.status);
    }
  }
  return {{"config", config_echo}, {"columns", cols}};
}

void write_phase_csv(std::ostream& out, const std::vector<PhaseRow>& rows) {
  bool const with_status = std::any_of(rows.begin(), rows.end(), [](const PhaseRow& r) { return !r.ok(); });
  out << "energy,tau_analytic,tau_numeric,defect" << (with_status ? ",status" : "") << '\n';
  for (const auto& r : rows) {
    out << format_real(r.E) << ',' << (r.tau_analytic ? format_real(*r.tau_analytic) : std::string{}) << ','
        << format_real(r.tau_numeric) << ',' << (r.ok() ? format_real(r.defect) : std::string("nan"));
    if (with_status) out << ',' << r.status;
    out << '\n';
  }
}

json phase_json(const std::vector<PhaseRow>& rows, const json& config_echo) {
  json cols = {{"energy", json::array()}, {"tau_analytic", json::array()}, {"tau_numeric", json::array()},
               {"defect", json::array()}, {"status", json::array()}};
  for (const auto& r : rows) {
    cols["energy"].push_back(r.E);
    cols["tau_analytic"].push_back(r.tau_analytic ? json(*r.tau_analytic) : json(nullptr));
    cols["tau_numeric"].push_back(number(r.tau_numeric));
    cols["defect"].push_back(r.ok() ? number(r.defect) : json(nullptr));
    cols["status"].push_back(r.status);
  }
  return {{"config", config_echo}, {"columns", cols}};
}

} // namespace jmat
