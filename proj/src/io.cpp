#include "kerrcat/io.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "kerrcat/version.hpp"

namespace kerrcat {

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "' is not a number: " + it->second);
    }
}

int Config::get_int(const std::string& key, int fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "' is not an integer: " + it->second);
    }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "' is not an integer: " + it->second);
    }
}

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(lineno) + " has no '='");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ValidationError("config line " + std::to_string(lineno) + " has empty key");
        }
        cfg.values[key] = val;
    }
    return cfg;
}

Config parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(table.header[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

Table sweep_to_table(const SweepTable& table) {
    Table t;
    t.header.push_back(table.variable_name);
    for (RateMethod m : table.methods) t.header.push_back(std::string("gamma_") + method_tag(m));
    for (RateMethod m : table.methods) t.header.push_back(std::string("status_") + method_tag(m));
    for (const auto& row : table.rows) {
        std::vector<std::string> r;
        r.push_back(format_double(row.swept));
        for (const auto& cell : row.cells) {
            r.push_back(cell.rate ? format_double(cell.rate->value) : "");
        }
        for (const auto& cell : row.cells) r.push_back(cell.status);
        t.rows.push_back(std::move(r));
    }
    return t;
}

Table grid_to_table(const PhaseSpaceGrid& grid) {
    Table t;
    if (grid.is_vector_field()) {
        t.header = {"x", "p", "dx", "dp"};
        for (std::size_t ip = 0; ip < grid.np(); ++ip) {
            for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
                const auto& v = grid.vectors[ip * grid.nx() + ix];
                t.rows.push_back({format_double(grid.x_axis[ix]), format_double(grid.p_axis[ip]),
                                  format_double(v.first), format_double(v.second)});
            }
        }
    } else {
        t.header = {"x", "p", "W"};
        for (std::size_t ip = 0; ip < grid.np(); ++ip) {
            for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
                t.rows.push_back({format_double(grid.x_axis[ix]), format_double(grid.p_axis[ip]),
                                  format_double(grid.value_at(ix, ip))});
            }
        }
    }
    return t;
}

Table trajectory_to_table(const std::vector<double>& times,
                          const std::vector<std::pair<double, double>>& states) {
    Table t;
    t.header = {"t", "x", "p"};
    for (std::size_t i = 0; i < times.size() && i < states.size(); ++i) {
        t.rows.push_back({format_double(times[i]), format_double(states[i].first),
                          format_double(states[i].second)});
    }
    return t;
}

ordered_json params_to_json(const ModelParams& p) {
    ordered_json j;
    j["G"] = p.G;
    j["Delta"] = p.Delta;
    j["eta"] = p.eta;
    j["U"] = p.U;
    return j;
}

ordered_json sweep_to_json(const SweepTable& table) {
    ordered_json j;
    j["variable"] = table.variable_name;
    ordered_json methods = ordered_json::array();
    for (RateMethod m : table.methods) methods.push_back(method_tag(m));
    j["methods"] = methods;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json r;
        r["value"] = row.swept;
        ordered_json cells = ordered_json::array();
        for (const auto& cell : row.cells) {
            ordered_json c;
            c["status"] = cell.status;
            if (cell.rate) {
                c["gamma"] = cell.rate->value;
                c["log_gamma"] = cell.rate->log_value;
                c["valid"] = cell.rate->valid;
                if (!cell.rate->validity_note.empty()) c["note"] = cell.rate->validity_note;
            }
            cells.push_back(std::move(c));
        }
        r["cells"] = std::move(cells);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

ordered_json metadata_block(const ModelParams& params, std::uint64_t seed, bool with_timestamp,
                            const std::map<std::string, std::string>& effective_config) {
    ordered_json j;
    j["params"] = params_to_json(params);
    j["version"] = kVersion;
    j["seed"] = seed;
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        j["timestamp"] = buf;
    }
    if (!effective_config.empty()) {
        ordered_json cfg;
        for (const auto& [k, v] : effective_config) cfg[k] = v;
        j["config"] = std::move(cfg);
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace kerrcat
