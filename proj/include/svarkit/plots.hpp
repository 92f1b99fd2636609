#pragma once

// CSV / SVG export of impulse-response sets and variance decompositions.

#include <string>
#include <vector>

#include "svarkit/dynamics.hpp"

namespace svarkit::plots {

// one file per response variable: horizon rows, one column block per shock
// (point, lower, upper when bands are present)
void write_irf_csv(const std::string& path, const dynamics::ImpulseSet& irf,
                   int response, const std::vector<std::string>& shocks);

void write_fevd_csv(const std::string& path, const dynamics::FevdTable& table);

// 2x2 panel grid (one panel per shock) of the response variable's IRF with
// shaded bands
void write_irf_svg(const std::string& path, const dynamics::ImpulseSet& irf,
                   int response, const std::string& response_name,
                   const std::vector<std::string>& shocks);

}  // namespace svarkit::plots
