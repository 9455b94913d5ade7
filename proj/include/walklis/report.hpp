#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "walklis/experiment.hpp"

namespace walklis {

// Canonical JSON report: spec echo (execution knobs excluded), one row per
// size, and the supplied fits. The text is byte-stable for a given master
// seed regardless of thread count.
std::string scaling_report_json(const ScalingTable& table, std::span<const ExponentFit> fits);

// CSV schema: statistic,law,n,trials,mean,var,q50,q90,q99,stderr
void write_scaling_csv(const ScalingTable& table, std::ostream& out);
std::string scaling_report_csv(const ScalingTable& table);

void persist_report(const std::string& text, const std::string& path);
std::string load_report(const std::string& path);

// Log-log SVG chart: one point series plus fitted line per table; axes
// labeled "log2 n" and "log2 mean"; each fit line carries a data-slope
// attribute with the full-precision slope.
std::string render_scaling_svg(std::span<const ScalingTable> tables,
                               std::span<const ExponentFit> fits);
void save_scaling_svg(std::span<const ScalingTable> tables, std::span<const ExponentFit> fits,
                      const std::string& path);

}  // namespace walklis
