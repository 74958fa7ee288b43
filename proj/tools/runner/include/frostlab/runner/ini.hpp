#pragma once

#include <map>
#include <string>
#include <vector>

namespace frostlab::runner {

struct IniEntry {
    std::string value;
    int line = 0;
};

/// Flat INI text: [section] headers, key = value lines, '#' or ';' comments.
/// Keys outside any section land in section "".
class Ini {
public:
    static Ini parse(const std::string& text, const std::string& source);

    const std::string& source() const { return source_; }
    const std::map<std::string, std::map<std::string, IniEntry>>& sections() const { return sections_; }
    const IniEntry* find(const std::string& section, const std::string& key) const;
    int section_line(const std::string& section) const;

    void set(const std::string& section, const std::string& key, std::string value);

private:
    std::string source_;
    std::map<std::string, std::map<std::string, IniEntry>> sections_;
    std::map<std::string, int> section_lines_;
};

}  // namespace frostlab::runner
