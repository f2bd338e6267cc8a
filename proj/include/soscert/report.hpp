#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace soscert {

// FNV-1a over the canonical serialization; timings never enter digests.
uint64_t fnv1a64(const std::string& data);
std::string digest_hex(const std::string& data);

struct CheckLine {
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;  // sizes, digests, counters
};

struct Report {
  std::vector<CheckLine> checks;
  bool all_passed() const;
  void add(std::string name, bool passed, double seconds, std::string detail = "");
  std::string render() const;  // one pass/fail line per check
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace soscert
