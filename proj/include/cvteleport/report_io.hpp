#pragma once

#include "cvteleport/protocol.hpp"
#include "cvteleport/verification.hpp"

#include <json.hpp>

#include <string>

namespace cvteleport {

/// Machine report for one run: config, derived parameters, every covariance
/// matrix (row-major, full precision), metrics and residuals. Key order is
/// fixed (ordered_json) so output is byte-deterministic.
nlohmann::ordered_json teleport_report_to_json(const TeleportReport& report,
                                               const ProtocolConfig& config);

/// Human-readable rendering; every numeric value it prints appears verbatim
/// (same %.17g token) in the machine report.
std::string teleport_report_to_text(const TeleportReport& report, const ProtocolConfig& config);

nlohmann::ordered_json verify_report_to_json(const VerifyReport& report);

std::string verify_report_to_text(const VerifyReport& report);

}  // namespace cvteleport
