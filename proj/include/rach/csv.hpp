#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rach {

// Locale-independent number formatting so CSV output is byte-stable.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}
inline std::string fmt(long v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(std::uint64_t v) { return std::to_string(v); }
inline std::string fmt(const std::string& v) { return v; }
inline std::string fmt(const char* v) { return v; }

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : os_(path, std::ios::binary) {
        if (!os_) throw std::runtime_error("cannot open output file: " + path);
    }

    template <class... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((os_ << (first ? (first = false, "") : ",") << fmt(cells)), ...);
        os_ << '\n';
    }

private:
    std::ofstream os_;
};

}  // namespace rach
