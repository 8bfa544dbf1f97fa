#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smnorm/params.hpp"

namespace smnorm {

/**
 * Flat `key = value` configuration, one pair per line, `#` starts a comment.
 * Values keep internal whitespace so list-valued keys can hold
 * space-separated entries.  Duplicate keys are rejected; consumers check the
 * key set they understand so typos fail fast.
 */
class Config {
public:
    static Config parse(std::string_view text);
    static Config parse_file(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    Exponent get_exponent(const std::string& key) const;

    /// Whitespace-split value list ("a b  c" -> {a,b,c}).
    std::vector<std::string> get_list(const std::string& key) const;

    /// Throws ParamError naming the first key outside `known`.
    void require_known(const std::vector<std::string>& known) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace smnorm
