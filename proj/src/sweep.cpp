#include "wsnsim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace wsnsim {
namespace {

std::string fmt_g17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int require_int(double value, const std::string& field)
{
    if (!(std::isfinite(value)) || value != std::floor(value)
        || value < std::numeric_limits<int>::min()
        || value > std::numeric_limits<int>::max())
        throw ConfigError("axis '" + field + "' needs integer values");
    return static_cast<int>(value);
}

std::uint64_t require_u64(double value, const std::string& field)
{
    if (!(std::isfinite(value)) || value != std::floor(value) || value < 0.0
        || value >= 1.8446744073709552e19)
        throw ConfigError("axis '" + field
                          + "' needs non-negative integer values");
    return static_cast<std::uint64_t>(value);
}

WaveformParams::Pulse pulse_from_string(const std::string& s)
{
    if (s == "rectangular")
        return WaveformParams::Pulse::Rectangular;
    if (s == "gaussian")
        return WaveformParams::Pulse::Gaussian;
    throw ConfigError("unknown pulse '" + s
                      + "' (expected rectangular or gaussian)");
}

// a row as read back from an existing output file during resume
struct ParsedRow {
    double snr_db = 0.0;
    int order = 0;
    int sensor_count = 0;
    double pc = 0.0;
    double rho = 0.0;
    std::string combiner;
    std::string fidelity;
    std::uint64_t trials = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
    double ser = 0.0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
};

ParsedRow parse_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
        fields.push_back(item);
    if (fields.size() != 15)
        throw IoError("malformed CSV row: '" + line + "'");
    ParsedRow r;
    try {
        r.snr_db = std::stod(fields[0]);
        r.order = std::stoi(fields[1]);
        r.sensor_count = std::stoi(fields[2]);
        r.pc = std::stod(fields[3]);
        r.rho = std::stod(fields[4]);
        r.combiner = fields[5];
        r.fidelity = fields[6];
        r.trials = std::stoull(fields[7]);
        r.symbol_errors = std::stoull(fields[8]);
        r.bit_errors = std::stoull(fields[9]);
        r.ser = std::stod(fields[10]);
        r.ber = std::stod(fields[11]);
        r.ci_low = std::stod(fields[12]);
        r.ci_high = std::stod(fields[13]);
        r.seed = std::stoull(fields[14]);
    } catch (const std::exception&) {
        throw IoError("malformed CSV row: '" + line + "'");
    }
    return r;
}

ParsedRow parse_json_line(const std::string& line)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
        throw IoError("malformed JSON row: '" + line + "'");
    }
    ParsedRow r;
    try {
        r.snr_db = j.at("snr_db").get<double>();
        r.order = j.at("M").get<int>();
        r.sensor_count = j.at("L").get<int>();
        r.pc = j.at("pc").get<double>();
        r.rho = j.at("rho").get<double>();
        r.combiner = j.at("combiner").get<std::string>();
        r.fidelity = j.at("fidelity").get<std::string>();
        r.trials = j.at("trials").get<std::uint64_t>();
        r.symbol_errors = j.at("symbol_errors").get<std::uint64_t>();
        r.bit_errors = j.at("bit_errors").get<std::uint64_t>();
        r.ser = j.at("ser").get<double>();
        r.ber = j.at("ber").get<double>();
        r.ci_low = j.at("ci_low").get<double>();
        r.ci_high = j.at("ci_high").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception&) {
        throw IoError("JSON row missing fields: '" + line + "'");
    }
    return r;
}

bool row_matches_point(const ParsedRow& r, const SimParams& p)
{
    // %.17g output round-trips, so exact comparison is the right check
    return r.snr_db == p.snr_db && r.order == p.order
        && r.sensor_count == p.sensor_count && r.pc == p.p_correct
        && r.rho == p.rho && r.combiner == to_string(p.combiner)
        && r.fidelity == to_string(p.fidelity) && r.trials == p.trials
        && r.seed == p.seed;
}

ResultRow parsed_to_result(const ParsedRow& r, const SimParams& p)
{
    ResultRow row;
    row.params = p;
    row.stats.ser = r.ser;
    row.stats.ber = r.ber;
    row.stats.ci_low = r.ci_low;
    row.stats.ci_high = r.ci_high;
    row.stats.trials = r.trials;
    row.stats.symbol_errors = r.symbol_errors;
    row.stats.bit_errors = r.bit_errors;
    return row;
}

// Splits an existing output file into complete lines and drops a trailing
// partial line (interrupted write) from both the vector and the file itself.
std::vector<std::string> complete_lines(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read existing output file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    in.close();

    std::vector<std::string> lines;
    std::size_t pos = 0;
    std::size_t kept = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos)
            break;
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
        kept = pos;
    }
    if (kept != text.size())
        std::filesystem::resize_file(path, kept);
    return lines;
}

} // namespace

std::string to_string(OutputFormat f)
{
    return f == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat format_from_string(const std::string& s)
{
    if (s == "csv")
        return OutputFormat::Csv;
    if (s == "json")
        return OutputFormat::Json;
    throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

void apply_axis_value(SimParams& params, const std::string& field, double value)
{
    if (field == "snr_db")
        params.snr_db = value;
    else if (field == "M")
        params.order = require_int(value, field);
    else if (field == "L")
        params.sensor_count = require_int(value, field);
    else if (field == "pc")
        params.p_correct = value;
    else if (field == "rho")
        params.rho = value;
    else if (field == "trials")
        params.trials = require_u64(value, field);
    else
        throw ConfigError("unknown sweep field '" + field
                          + "' (expected snr_db, M, L, pc, rho, or trials)");
}

std::uint64_t sweep_point_count(const SweepSpec& spec)
{
    if (spec.axes.empty())
        throw ConfigError("sweep needs at least one axis");
    std::uint64_t count = 1;
    for (const auto& axis : spec.axes) {
        if (axis.values.empty())
            throw ConfigError("sweep axis '" + axis.field + "' has no values");
        if (count > std::numeric_limits<std::uint64_t>::max()
                        / axis.values.size())
            throw ConfigError("sweep point count overflows");
        count *= axis.values.size();
    }
    return count;
}

SimParams sweep_point(const SweepSpec& spec, std::uint64_t index)
{
    const std::uint64_t total = sweep_point_count(spec);
    if (index >= total)
        throw std::out_of_range("sweep point index out of range");

    std::vector<std::size_t> pick(spec.axes.size());
    std::uint64_t rem = index;
    for (std::size_t i = spec.axes.size(); i-- > 0;) {
        const std::size_t n = spec.axes[i].values.size();
        pick[i] = static_cast<std::size_t>(rem % n);
        rem /= n;
    }

    SimParams p = spec.base;
    for (std::size_t i = 0; i < spec.axes.size(); ++i)
        apply_axis_value(p, spec.axes[i].field, spec.axes[i].values[pick[i]]);
    p.seed = derive_seed(spec.base.seed, index);
    return p;
}

std::string csv_header()
{
    return "snr_db,M,L,pc,rho,combiner,fidelity,trials,symbol_errors,"
           "bit_errors,ser,ber,ci_low,ci_high,seed";
}

std::string csv_row(const ResultRow& row)
{
    const SimParams& p = row.params;
    const BerPoint& s = row.stats;
    std::string out;
    out += fmt_g17(p.snr_db);
    out += ',';
    out += std::to_string(p.order);
    out += ',';
    out += std::to_string(p.sensor_count);
    out += ',';
    out += fmt_g17(p.p_correct);
    out += ',';
    out += fmt_g17(p.rho);
    out += ',';
    out += to_string(p.combiner);
    out += ',';
    out += to_string(p.fidelity);
    out += ',';
    out += std::to_string(s.trials);
    out += ',';
    out += std::to_string(s.symbol_errors);
    out += ',';
    out += std::to_string(s.bit_errors);
    out += ',';
    out += fmt_g17(s.ser);
    out += ',';
    out += fmt_g17(s.ber);
    out += ',';
    out += fmt_g17(s.ci_low);
    out += ',';
    out += fmt_g17(s.ci_high);
    out += ',';
    out += std::to_string(p.seed);
    return out;
}

std::string json_row(const ResultRow& row)
{
    const SimParams& p = row.params;
    const BerPoint& s = row.stats;
    nlohmann::ordered_json j;
    j["snr_db"] = p.snr_db;
    j["M"] = p.order;
    j["L"] = p.sensor_count;
    j["pc"] = p.p_correct;
    j["rho"] = p.rho;
    j["combiner"] = to_string(p.combiner);
    j["fidelity"] = to_string(p.fidelity);
    j["trials"] = s.trials;
    j["symbol_errors"] = s.symbol_errors;
    j["bit_errors"] = s.bit_errors;
    j["ser"] = s.ser;
    j["ber"] = s.ber;
    j["ci_low"] = s.ci_low;
    j["ci_high"] = s.ci_high;
    j["seed"] = p.seed;
    return j.dump();
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec)
{
    const std::uint64_t total = sweep_point_count(spec);
    for (std::uint64_t i = 0; i < total; ++i)
        sweep_point(spec, i).validate();

    std::vector<ResultRow> rows;
    rows.reserve(static_cast<std::size_t>(total));

    std::uint64_t done = 0;
    std::ofstream out;
    if (!spec.output_path.empty()) {
        const bool existed = std::filesystem::exists(spec.output_path)
                          && std::filesystem::file_size(spec.output_path) > 0;
        if (existed) {
            auto lines = complete_lines(spec.output_path);
            std::size_t first_row = 0;
            if (spec.format == OutputFormat::Csv) {
                if (lines.empty() || lines[0] != csv_header())
                    throw IoError("existing output file lacks the expected "
                                  "CSV header: " + spec.output_path);
                first_row = 1;
            }
            const std::uint64_t prior =
                static_cast<std::uint64_t>(lines.size() - first_row);
            if (prior > total)
                throw IoError("existing output file has more rows than this "
                              "sweep produces: " + spec.output_path);
            for (std::uint64_t i = 0; i < prior; ++i) {
                const std::string& line =
                    lines[first_row + static_cast<std::size_t>(i)];
                const ParsedRow parsed = spec.format == OutputFormat::Csv
                                             ? parse_csv_line(line)
                                             : parse_json_line(line);
                const SimParams expect = sweep_point(spec, i);
                if (!row_matches_point(parsed, expect))
                    throw IoError("existing output row " + std::to_string(i)
                                  + " does not match this sweep; refusing to "
                                    "resume into " + spec.output_path);
                rows.push_back(parsed_to_result(parsed, expect));
            }
            done = prior;
            out.open(spec.output_path, std::ios::app);
        } else {
            out.open(spec.output_path, std::ios::trunc);
            if (out && spec.format == OutputFormat::Csv)
                out << csv_header() << '\n' << std::flush;
        }
        if (!out)
            throw IoError("cannot open output file: " + spec.output_path);
    }

    for (std::uint64_t i = done; i < total; ++i) {
        ResultRow row;
        row.params = sweep_point(spec, i);
        row.stats = run_point(row.params, spec.workers);
        if (out.is_open()) {
            out << (spec.format == OutputFormat::Csv ? csv_row(row)
                                                     : json_row(row))
                << '\n'
                << std::flush;
            if (!out)
                throw IoError("write failed: " + spec.output_path);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit_results(const std::vector<ResultRow>& rows, OutputFormat format,
                  std::ostream& os)
{
    if (rows.empty())
        throw std::invalid_argument("empty result table");
    if (format == OutputFormat::Csv) {
        os << csv_header() << '\n';
        for (const auto& row : rows)
            os << csv_row(row) << '\n';
    } else {
        for (const auto& row : rows)
            os << json_row(row) << '\n';
    }
}

void emit_results(const std::vector<ResultRow>& rows, OutputFormat format,
                  const std::string& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot open output file: " + path);
    emit_results(rows, format, out);
    out.flush();
    if (!out)
        throw IoError("write failed: " + path);
}

namespace {

template <typename T>
T get_field(const nlohmann::json& j, const std::string& key, T fallback)
{
    if (!j.contains(key))
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

void reject_unknown_keys(const nlohmann::json& j,
                         std::initializer_list<const char*> known,
                         const std::string& where)
{
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k)
                ok = true;
        if (!ok)
            throw ConfigError("unknown config key '" + item.key() + "' in "
                              + where);
    }
}

} // namespace

SweepSpec parse_config(const std::string& json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(j, {"base", "axes", "output", "format", "workers"},
                        "config root");

    SweepSpec spec;
    if (j.contains("base")) {
        const auto& b = j.at("base");
        if (!b.is_object())
            throw ConfigError("config 'base' must be an object");
        reject_unknown_keys(b,
                            {"M", "L", "snr_db", "pc", "rho", "combiner",
                             "fidelity", "fading", "trials", "seed",
                             "chunk_size", "symbol_time", "samples_per_slot",
                             "tone_spacing_hz", "pulse", "gaussian_bt"},
                            "config base");
        SimParams& p = spec.base;
        p.order = get_field<int>(b, "M", p.order);
        p.sensor_count = get_field<int>(b, "L", p.sensor_count);
        p.snr_db = get_field<double>(b, "snr_db", p.snr_db);
        p.p_correct = get_field<double>(b, "pc", p.p_correct);
        p.rho = get_field<double>(b, "rho", p.rho);
        p.combiner = combiner_from_string(
            get_field<std::string>(b, "combiner", to_string(p.combiner)));
        p.fidelity = fidelity_from_string(
            get_field<std::string>(b, "fidelity", to_string(p.fidelity)));
        p.fading = fading_from_string(
            get_field<std::string>(b, "fading", to_string(p.fading)));
        p.trials = get_field<std::uint64_t>(b, "trials", p.trials);
        p.seed = get_field<std::uint64_t>(b, "seed", p.seed);
        p.chunk_size = get_field<std::uint64_t>(b, "chunk_size", p.chunk_size);
        p.symbol_time = get_field<double>(b, "symbol_time", p.symbol_time);
        p.samples_per_slot =
            get_field<int>(b, "samples_per_slot", p.samples_per_slot);
        p.tone_spacing_hz =
            get_field<double>(b, "tone_spacing_hz", p.tone_spacing_hz);
        p.pulse = pulse_from_string(get_field<std::string>(
            b, "pulse",
            p.pulse == WaveformParams::Pulse::Rectangular ? "rectangular"
                                                          : "gaussian"));
        p.gaussian_bt = get_field<double>(b, "gaussian_bt", p.gaussian_bt);
    }

    if (j.contains("axes")) {
        const auto& axes = j.at("axes");
        if (!axes.is_array())
            throw ConfigError("config 'axes' must be an array");
        for (const auto& a : axes) {
            if (!a.is_object())
                throw ConfigError("each axis must be an object");
            reject_unknown_keys(a, {"field", "values"}, "axis");
            SweepAxis axis;
            axis.field = get_field<std::string>(a, "field", "");
            if (axis.field.empty())
                throw ConfigError("axis needs a 'field' name");
            if (!a.contains("values") || !a.at("values").is_array())
                throw ConfigError("axis '" + axis.field
                                  + "' needs a 'values' array");
            for (const auto& v : a.at("values")) {
                if (!v.is_number())
                    throw ConfigError("axis '" + axis.field
                                      + "' values must be numbers");
                axis.values.push_back(v.get<double>());
            }
            spec.axes.push_back(std::move(axis));
        }
    }

    spec.output_path = get_field<std::string>(j, "output", "");
    spec.format = format_from_string(
        get_field<std::string>(j, "format", to_string(spec.format)));
    spec.workers = get_field<int>(j, "workers", spec.workers);
    if (spec.workers < 1)
        throw ConfigError("workers must be at least 1");
    return spec;
}

SweepSpec load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config(text);
}

} // namespace wsnsim
