#include "smnorm/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "smnorm/errors.hpp"

namespace smnorm {

namespace {

std::string trim(std::string_view s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    return std::string(s.substr(begin, end - begin + 1));
}

} // namespace

Config Config::parse(std::string_view text) {
    Config cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParamError("config line " + std::to_string(lineno) +
                             ": expected 'key = value', got '" + stripped + "'");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ParamError("config line " + std::to_string(lineno) + ": empty key");
        if (!cfg.values_.emplace(key, value).second)
            throw ParamError("config line " + std::to_string(lineno) + ": duplicate key '" +
                             key + "'");
    }
    return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string Config::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ParamError("config: missing key '" + key + "'");
    return it->second;
}

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    std::string text = get_string(key);
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParamError("config: key '" + key + "' is not a number: '" + text + "'");
    }
}

int Config::get_int(const std::string& key) const {
    double v = get_double(key);
    int r = static_cast<int>(v);
    if (static_cast<double>(r) != v)
        throw ParamError("config: key '" + key + "' is not an integer");
    return r;
}

bool Config::get_bool(const std::string& key) const {
    std::string text = get_string(key);
    if (text == "1" || text == "true") return true;
    if (text == "0" || text == "false") return false;
    throw ParamError("config: key '" + key + "' must be a boolean (0/1/true/false)");
}

Exponent Config::get_exponent(const std::string& key) const {
    return Exponent::parse(get_string(key));
}

std::vector<std::string> Config::get_list(const std::string& key) const {
    std::istringstream in(get_string(key));
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    if (out.empty()) throw ParamError("config: key '" + key + "' has an empty list");
    return out;
}

void Config::require_known(const std::vector<std::string>& known) const {
    for (const auto& [key, value] : values_) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ParamError("config: unknown key '" + key + "'");
    }
}

} // namespace smnorm
