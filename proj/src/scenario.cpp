#include "hybridlie/scenario.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hybridlie {

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Scenario Scenario::parse(const std::string& text) {
    Scenario sc;
    sc.sections_.push_back({"", {}});
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    size_t current = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        size_t hash = t.find('#');
        if (hash != std::string::npos) t = strip(t.substr(0, hash));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            std::string name = strip(t.substr(1, t.size() - 2));
            if (name.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
            sc.sections_.push_back({name, {}});
            current = sc.sections_.size() - 1;
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = strip(t.substr(0, eq));
        std::string value = strip(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        for (const auto& e : sc.sections_[current].entries)
            if (e.key == key)
                throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
        sc.sections_[current].entries.push_back({key, value});
    }
    return sc;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string Scenario::serialize() const {
    std::ostringstream out;
    for (const auto& sec : sections_) {
        if (!sec.name.empty()) out << "[" << sec.name << "]\n";
        for (const auto& e : sec.entries) out << e.key << " = " << e.value << "\n";
        if (!sec.entries.empty()) out << "\n";
    }
    return out.str();
}

bool Scenario::has_section(const std::string& name) const {
    for (const auto& sec : sections_)
        if (sec.name == name) return !sec.name.empty() || !sec.entries.empty();
    return false;
}

bool Scenario::has(const std::string& section, const std::string& key) const {
    for (const auto& sec : sections_)
        if (sec.name == section)
            for (const auto& e : sec.entries)
                if (e.key == key) return true;
    return false;
}

const std::string& Scenario::get(const std::string& section, const std::string& key) const {
    for (const auto& sec : sections_)
        if (sec.name == section)
            for (const auto& e : sec.entries)
                if (e.key == key) return e.value;
    throw ConfigError("missing config key '" + key + "' in section [" + section + "]");
}

std::string Scenario::get_or(const std::string& section, const std::string& key,
                             const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double Scenario::number(const std::string& section, const std::string& key) const {
    const std::string& v = get(section, key);
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    return d;
}

double Scenario::number_or(const std::string& section, const std::string& key,
                           double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
}

long Scenario::integer(const std::string& section, const std::string& key) const {
    double d = number(section, key);
    long l = static_cast<long>(d);
    if (static_cast<double>(l) != d)
        throw ConfigError("config key '" + key + "': expected an integer");
    return l;
}

long Scenario::integer_or(const std::string& section, const std::string& key,
                          long fallback) const {
    return has(section, key) ? integer(section, key) : fallback;
}

std::vector<double> Scenario::numbers(const std::string& section, const std::string& key) const {
    std::istringstream in(get(section, key));
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        double d = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ConfigError("config key '" + key + "': expected numbers");
        out.push_back(d);
    }
    return out;
}

std::vector<std::string> Scenario::words(const std::string& section,
                                         const std::string& key) const {
    std::istringstream in(get(section, key));
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

void Scenario::set(const std::string& section, const std::string& key, const std::string& value) {
    for (auto& sec : sections_)
        if (sec.name == section) {
            for (auto& e : sec.entries)
                if (e.key == key) {
                    e.value = value;
                    return;
                }
            sec.entries.push_back({key, value});
            return;
        }
    sections_.push_back({section, {{key, value}}});
}

bool Scenario::operator==(const Scenario& o) const {
    if (sections_.size() != o.sections_.size()) return false;
    for (size_t i = 0; i < sections_.size(); ++i) {
        if (sections_[i].name != o.sections_[i].name) return false;
        if (sections_[i].entries.size() != o.sections_[i].entries.size()) return false;
        for (size_t j = 0; j < sections_[i].entries.size(); ++j) {
            if (sections_[i].entries[j].key != o.sections_[i].entries[j].key) return false;
            if (sections_[i].entries[j].value != o.sections_[i].entries[j].value) return false;
        }
    }
    return true;
}

std::string fnv1a_hex(const std::string& text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace hybridlie
