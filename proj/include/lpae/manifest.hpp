#pragma once

#include <map>
#include <ostream>
#include <string>

#include "lpae/numio.hpp"

namespace lpae {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Flat key=value record of the resolved configuration of a run. Keys are
// sorted, values contain no timestamps, so reruns produce identical bytes.
class Manifest {
public:
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    void set(const std::string& key, double value) { kv_[key] = format_double(value); }
    void set(const std::string& key, std::uint64_t value) { kv_[key] = std::to_string(value); }
    void set(const std::string& key, std::size_t value) { kv_[key] = std::to_string(value); }
    void set(const std::string& key, int value) { kv_[key] = std::to_string(value); }

    const std::map<std::string, std::string>& entries() const { return kv_; }

    void write(std::ostream& os) const {
        os << "artifact_version=" << kArtifactVersion << '\n';
        for (const auto& [k, v] : kv_) os << k << '=' << v << '\n';
    }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace lpae
