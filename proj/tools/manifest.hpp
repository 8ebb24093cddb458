#pragma once

// Run manifest: a deterministic fingerprint of one CLI invocation (command,
// parameters, library version). Every output file carries the hash in its
// header comment so plots can be traced back to the exact run.

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "helmholtz/version.hpp"

namespace helmholtz::cli {

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;  // excludes output paths
  std::string version = helmholtz::kVersion;
  std::vector<std::string> outputs;

  std::string canonical() const {
    std::string s = "helmholtz v" + version + "\n" + command + "\n";
    for (const auto& [k, v] : parameters) s += k + "=" + v + "\n";
    return s;
  }

  std::string hash_hex() const {
    // FNV-1a, 64 bit
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  std::string header_comment() const {
    return "# helmholtz v" + version + " manifest=" + hash_hex() + " command=" + command + "\n";
  }
};

/// 10-significant-digit formatting: reproducible diffs across runs.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string fmt(int v) { return std::to_string(v); }

}  // namespace helmholtz::cli
