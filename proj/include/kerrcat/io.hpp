// Config-file parsing (UTF-8 key=value lines, '#' comments) and figure-ready
// CSV/JSON emission. Floats print as shortest round-trip decimals, so reruns
// with identical inputs produce byte-identical files (timestamp suppressible).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kerrcat/model.hpp"
#include "kerrcat/phase_space.hpp"
#include "kerrcat/sweep.hpp"

namespace kerrcat {

using ordered_json = nlohmann::ordered_json;

struct Config {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
};

// Throws IoError when the file cannot be read, ValidationError on bad lines.
Config parse_config_file(const std::string& path);
Config parse_config_text(const std::string& text);

// Shortest round-trip decimal representation.
std::string format_double(double v);

// RFC-4180: fields containing comma, quote, CR or LF are quoted, quotes doubled.
std::string csv_escape(const std::string& field);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& table);

Table sweep_to_table(const SweepTable& table);
Table grid_to_table(const PhaseSpaceGrid& grid);
Table trajectory_to_table(const std::vector<double>& times,
                          const std::vector<std::pair<double, double>>& states);

ordered_json params_to_json(const ModelParams& p);
ordered_json sweep_to_json(const SweepTable& table);

// Metadata block shared by every JSON record: params, version, seed and,
// unless suppressed, the timestamp.
ordered_json metadata_block(const ModelParams& params, std::uint64_t seed, bool with_timestamp,
                            const std::map<std::string, std::string>& effective_config = {});

void write_text_file(const std::string& path, const std::string& content);

} // namespace kerrcat
