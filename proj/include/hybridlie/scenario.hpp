#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridlie {

/// One scenario file: flat key/value pairs grouped in sections. Section ""
/// holds the top-level keys. Parsing is strict: unknown sections or keys are
/// rejected, and a serialize/parse round trip reproduces the scenario.
class Scenario {
  public:
    struct Entry {
        std::string key;
        std::string value;
    };
    struct Section {
        std::string name;
        std::vector<Entry> entries;
    };

    static Scenario parse(const std::string& text);
    static Scenario load(const std::string& path);

    std::string serialize() const;

    bool has(const std::string& section, const std::string& key) const;
    const std::string& get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double number(const std::string& section, const std::string& key) const;
    double number_or(const std::string& section, const std::string& key, double fallback) const;
    long integer(const std::string& section, const std::string& key) const;
    long integer_or(const std::string& section, const std::string& key, long fallback) const;
    std::vector<double> numbers(const std::string& section, const std::string& key) const;
    std::vector<std::string> words(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    const std::vector<Section>& sections() const { return sections_; }
    bool has_section(const std::string& name) const;

    bool operator==(const Scenario& o) const;

  private:
    std::vector<Section> sections_;
};

/// Configuration error: bad syntax, unknown key, missing required key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// FNV-1a 64-bit hash of the scenario bytes, hex-encoded; stamped into the
/// output manifest so artifacts are traceable to their exact configuration.
std::string fnv1a_hex(const std::string& text);

}  // namespace hybridlie
