#pragma once

#include <map>
#include <string>
#include <vector>

namespace bhlab {

// Least-squares line through (x_i, y_i); needs at least two distinct x.
struct linfit_result {
    double slope = 0.0;
    double intercept = 0.0;
};
linfit_result linfit(const std::vector<double>& x, const std::vector<double>& y);

// Flat key = value configuration with optional [section] headers; a header
// prefixes following keys as "section.key".  '#' starts a comment, blank
// lines are skipped, whitespace around keys and values is trimmed.
using kv_map = std::map<std::string, std::string>;
kv_map parse_config_text(const std::string& text);
kv_map parse_config_file(const std::string& path);

// Typed lookups.  The no-default forms raise a config error when the key is
// missing; all numeric parses must consume the whole token.
std::string cfg_str(const kv_map& cfg, const std::string& key);
std::string cfg_str(const kv_map& cfg, const std::string& key, const std::string& def);
double cfg_num(const kv_map& cfg, const std::string& key);
double cfg_num(const kv_map& cfg, const std::string& key, double def);
long cfg_int(const kv_map& cfg, const std::string& key, long def);
bool cfg_flag(const kv_map& cfg, const std::string& key, bool def);
// comma- or space-separated list of numbers
std::vector<double> cfg_list(const kv_map& cfg, const std::string& key);
std::vector<double> cfg_list(const kv_map& cfg, const std::string& key,
                             const std::vector<double>& def);

// CSV with a header row; every data row must match the header width.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bhlab
