#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "relobs/models.hpp"
#include "relobs/version.hpp"

namespace relobs {

inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hashHex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
  return buf;
}

/// Envelope for every command's stdout payload. Timing never enters the
/// report, so identical inputs dump byte-identical JSON (keys sort).
inline Json runReport(const std::string& command, std::string_view inputBlob, Json payload) {
  Json j;
  j["tool"] = {{"name", "relobs"}, {"version", kVersion}};
  j["command"] = command;
  j["inputHash"] = hashHex(inputBlob);
  j["report"] = std::move(payload);
  return j;
}

inline std::string formatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Header row, comma separator, LF endings.
inline void writeCsv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ",";
    out << header[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << formatDouble(row[i]);
    }
    out << "\n";
  }
}

}  // namespace relobs
