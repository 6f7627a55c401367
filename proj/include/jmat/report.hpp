#pragma once

#include "jmat/analysis.hpp"
#include "jmat/config.hpp"
#include "jmat/scattering.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace jmat {

/// %.17g, or "nan"/"inf" spelled the same on every platform.
std::string format_real(double v);

/// energy,re_s,im_s,abs_one_minus_s,tau,delta,mode[,status]. With mode both,
/// each energy gets a `full` row followed by a `truncated` row. The status
/// column appears only when some row carries a non-ok status.
void write_scan_csv(std::ostream& out, const ScanTable& table, OutputMode mode);

/// Columns as arrays plus a `config` echo.
nlohmann::json scan_json(const ScanTable& table, OutputMode mode, const nlohmann::json& config_echo);

/// energy,tau_analytic,tau_numeric,defect[,status]; tau_analytic is empty when
/// the deformation has no closed form.
void write_phase_csv(std::ostream& out, const std::vector<PhaseRow>& rows);

nlohmann::json phase_json(const std::vector<PhaseRow>& rows, const nlohmann::json& config_echo);

} // namespace jmat
