#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "vfl/approximation.hpp"
#include "vfl/field.hpp"
#include "vfl/regularity.hpp"
#include "vfl/resolvent.hpp"
#include "vfl/verification.hpp"

namespace vfl {

/// CSV with a metadata header row (kernel, quantity, convention, tol,
/// residual_max) then columns t, <q>_mu=<value> per entry of mu_list.
void write_resolvent_csv(const ResolventGrid& grid, std::ostream& os);

/// CSV columns n, gamma_n, sup_distance.
void write_yosida_csv(const YosidaSweep& sweep, std::ostream& os);

/// JSON summary: kernel, gamma, fitted slope, hypothesis flag, final distance.
std::string yosida_summary_json(const YosidaSweep& sweep);

/// Long-format CSV: t, mode index (0 = constant mode), X1, X2.
void write_field_csv(const FieldPath& path, std::ostream& os);

/// Binary block: magic "VFLD1", little-endian header (d, N, t_max, h, mode
/// and node counts), mode lattice points, then X0/X1/X2 as 64-bit floats.
void write_field_binary(const FieldPath& path, std::ostream& os);

/// JSON per criterion: criterion, inputs hash, verdict, witness, trace,
/// fitted exponent.
std::string regularity_json(const RegularityReport& report, const std::string& inputs_desc);

std::string limit_measure_json(const LimitMeasureReport& report, const std::string& inputs_desc);

std::string admissible_json(const AdmissibleTable& table, const std::string& inputs_desc);

/// Verification suite report consumed by the CLI.
std::string mc_report_json(const std::vector<MCResult>& results, const CLTSummary& summary);

/// Minimal standalone SVG line plot: one polyline per series over shared x.
void write_svg_lines(std::ostream& os, const std::string& title,
                     const std::vector<double>& x,
                     const std::vector<std::vector<double>>& series,
                     const std::vector<std::string>& labels);

/// Stable hex digest of a configuration description string.
std::string inputs_hash(const std::string& desc);

}  // namespace vfl
