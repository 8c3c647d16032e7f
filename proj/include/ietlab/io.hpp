#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ietlab/errors.hpp"
#include "ietlab/rational.hpp"

namespace ietlab {

// floats at 17 significant digits (round-trippable), rationals as "p/q"
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// FNV-1a over the canonical JSON dump (nlohmann objects iterate in key
// order, so the dump is platform-stable).
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string config_hash(const nlohmann::json& config) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

// write-then-rename so partial files never appear under the final name
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open for writing: " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) body_ += ',';
            body_ += columns_[i];
        }
        body_ += '\n';
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_.size()) throw DimensionMismatch("csv row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += ',';
            body_ += cells[i];
        }
        body_ += '\n';
    }

    const std::string& str() const { return body_; }

  private:
    std::vector<std::string> columns_;
    std::string body_;
};

// Run directory: runs/<config-hash>/ with a manifest and the output files.
class RunDir {
  public:
    RunDir(const std::filesystem::path& base, const nlohmann::json& config) {
        hash_ = config_hash(config);
        dir_ = base / "runs" / hash_;
        std::filesystem::create_directories(dir_);
        nlohmann::json manifest;
        manifest["config"] = config;
        manifest["config_hash"] = hash_;
        manifest["files"] = nlohmann::json::array();
        manifest_ = manifest;
    }

    const std::string& hash() const { return hash_; }
    const std::filesystem::path& dir() const { return dir_; }

    void write(const std::string& name, const std::string& content) {
        atomic_write(dir_ / name, content);
        manifest_["files"].push_back(name);
    }
    void write_json(const std::string& name, const nlohmann::json& j) { write(name, j.dump(2) + "\n"); }

    // call last: stamps the manifest with every file written
    void finalize() { atomic_write(dir_ / "manifest.json", manifest_.dump(2) + "\n"); }

  private:
    std::string hash_;
    std::filesystem::path dir_;
    nlohmann::json manifest_;
};

}  // namespace ietlab
