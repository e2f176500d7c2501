#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wsnsim/engine.hpp"

namespace wsnsim {

enum class OutputFormat { Csv, Json };

std::string to_string(OutputFormat f);
OutputFormat format_from_string(const std::string& s); // throws ConfigError

// One sweep axis: a SimParams field name and the values it takes. Recognized
// fields: snr_db, M, L, pc, rho, trials.
struct SweepAxis {
    std::string field;
    std::vector<double> values;
};

// A full experiment: Cartesian product of the axes over a base point.
// Every point inherits the base fields and gets its own substream seed
// derived from (base.seed, point index).
struct SweepSpec {
    SimParams base;
    std::vector<SweepAxis> axes;
    std::string output_path; // empty -> stdout, no resume
    OutputFormat format = OutputFormat::Csv;
    int workers = 1;
};

struct ResultRow {
    SimParams params;
    BerPoint stats;
};

/// Apply one axis value to a params copy. Throws ConfigError for unknown
/// field names.
void apply_axis_value(SimParams& params, const std::string& field, double value);

/// Number of points in the Cartesian product; throws ConfigError when axes
/// are empty or any axis has no values.
std::uint64_t sweep_point_count(const SweepSpec& spec);

/// Parameter point `index` (row-major over the axes in declared order),
/// with its derived per-point seed filled in.
SimParams sweep_point(const SweepSpec& spec, std::uint64_t index);

/// Evaluate all points in index order. With an output path the rows are
/// appended and flushed one at a time, and a rerun over an existing file
/// skips the points already written, so long runs survive interruption.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// CSV schema, fixed column order:
//   snr_db,M,L,pc,rho,combiner,fidelity,trials,symbol_errors,bit_errors,
//   ser,ber,ci_low,ci_high,seed
// Floats print with 17 significant digits so rows round-trip exactly.
std::string csv_header();
std::string csv_row(const ResultRow& row);
std::string json_row(const ResultRow& row);

/// Write the whole table in the given format (JSON output is one object per
/// line, mirroring the CSV fields).
void emit_results(const std::vector<ResultRow>& rows, OutputFormat format,
                  std::ostream& os);
void emit_results(const std::vector<ResultRow>& rows, OutputFormat format,
                  const std::string& path);

/// Load a SweepSpec from a JSON config document.
SweepSpec load_config(const std::string& path);
SweepSpec parse_config(const std::string& json_text);

} // namespace wsnsim
