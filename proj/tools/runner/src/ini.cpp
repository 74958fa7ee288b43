#include "frostlab/runner/ini.hpp"

#include <sstream>

#include "frostlab/runner/config.hpp"

namespace frostlab::runner {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Ini Ini::parse(const std::string& text, const std::string& source) {
    Ini ini;
    ini.source_ = source;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (const auto c = s.find_first_of("#;"); c != std::string::npos) s.erase(c);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(source, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError(source, line, "empty section name");
            if (ini.section_lines_.count(section)) throw ConfigError(source, line, "duplicate section [" + section + "]");
            ini.section_lines_[section] = line;
            ini.sections_[section];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(source, line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) throw ConfigError(source, line, "empty key");
        auto& sec = ini.sections_[section];
        if (sec.count(key)) throw ConfigError(source, line, "duplicate key '" + key + "'");
        sec[key] = {trim(s.substr(eq + 1)), line};
    }
    return ini;
}

const IniEntry* Ini::find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

int Ini::section_line(const std::string& section) const {
    const auto it = section_lines_.find(section);
    return it == section_lines_.end() ? 0 : it->second;
}

void Ini::set(const std::string& section, const std::string& key, std::string value) {
    sections_[section][key] = {std::move(value), 0};
}

}  // namespace frostlab::runner
