#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace soscert {

using VarId = uint32_t;

// An immutable registry of named indeterminates. Variable identity is the
// dense id 0..size-1; labels exist for I/O only.
class IndeterminateSpace {
 public:
  static std::shared_ptr<const IndeterminateSpace> make(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(VarId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<VarId> find(const std::string& label) const;

 private:
  explicit IndeterminateSpace(std::vector<std::string> labels);
  std::vector<std::string> labels_;
  std::map<std::string, VarId> by_label_;
};

using SpaceRef = std::shared_ptr<const IndeterminateSpace>;

struct SpaceMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace soscert
