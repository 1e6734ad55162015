#include "bhlab/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bhlab/error.hpp"

namespace bhlab {

linfit_result linfit(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), errc::invalid_argument, "linfit: length mismatch");
    require(x.size() >= 2, errc::invalid_argument, "linfit: need at least two points");
    const double n = double(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    require(std::abs(denom) > 1e-300, errc::invalid_argument, "linfit: degenerate abscissae");
    linfit_result r;
    r.slope = (n * sxy - sx * sy) / denom;
    r.intercept = (sy - r.slope * sx) / n;
    return r;
}

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const auto a = s.find_first_not_of(ws);
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
}

}  // namespace

kv_map parse_config_text(const std::string& text) {
    kv_map cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            require(line.back() == ']', errc::config,
                    "config line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        require(eq != std::string::npos, errc::config,
                "config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        require(!key.empty(), errc::config,
                "config line " + std::to_string(lineno) + ": empty key");
        if (!section.empty()) key = section + "." + key;
        cfg[key] = value;
    }
    return cfg;
}

kv_map parse_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

std::string cfg_str(const kv_map& cfg, const std::string& key) {
    const auto it = cfg.find(key);
    require(it != cfg.end(), errc::config, "missing config key: " + key);
    return it->second;
}

std::string cfg_str(const kv_map& cfg, const std::string& key, const std::string& def) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? def : it->second;
}

namespace {

double parse_num(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    require(!t.empty(), errc::config, "config key " + key + ": empty number");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    require(end == t.c_str() + t.size(), errc::config,
            "config key " + key + ": cannot parse '" + text + "' as a number");
    return v;
}

}  // namespace

double cfg_num(const kv_map& cfg, const std::string& key) {
    return parse_num(key, cfg_str(cfg, key));
}

double cfg_num(const kv_map& cfg, const std::string& key, double def) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? def : parse_num(key, it->second);
}

long cfg_int(const kv_map& cfg, const std::string& key, long def) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) return def;
    const double v = parse_num(key, it->second);
    const long n = std::lround(v);
    require(std::abs(v - double(n)) < 1e-9, errc::config,
            "config key " + key + ": expected an integer");
    return n;
}

bool cfg_flag(const kv_map& cfg, const std::string& key, bool def) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) return def;
    const std::string v = trim(it->second);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    fail(errc::config, "config key " + key + ": expected a boolean, got '" + v + "'");
}

std::vector<double> cfg_list(const kv_map& cfg, const std::string& key) {
    std::string text = cfg_str(cfg, key);
    for (char& c : text)
        if (c == ',') c = ' ';
    std::istringstream in(text);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_num(key, tok));
    require(!out.empty(), errc::config, "config key " + key + ": empty list");
    return out;
}

std::vector<double> cfg_list(const kv_map& cfg, const std::string& key,
                             const std::vector<double>& def) {
    return cfg.count(key) ? cfg_list(cfg, key) : def;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t c = 0; c < header.size(); ++c)
        os << header[c] << (c + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        require(row.size() == header.size(), errc::invalid_argument,
                "to_csv: row width does not match header");
        for (std::size_t c = 0; c < row.size(); ++c)
            os << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(bool(in), errc::io, "cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(bool(out), errc::io, "cannot open for writing: " + path);
    out << content;
    require(bool(out.flush()), errc::io, "write failed: " + path);
}

}  // namespace bhlab
