#include "soscert/report.hpp"

#include <cstdio>

namespace soscert {

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(const std::string& data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return std::string(buf);
}

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void Report::add(std::string name, bool passed, double seconds, std::string detail) {
  checks.push_back({std::move(name), passed, seconds, std::move(detail)});
}

std::string Report::render() const {
  std::string out;
  for (const auto& c : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "[%s] %-46s %8.2fs", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.seconds);
    out += line;
    if (!c.detail.empty()) out += "  " + c.detail;
    out += "\n";
  }
  return out;
}

}  // namespace soscert
