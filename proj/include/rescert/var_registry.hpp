#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rescert {

inline constexpr std::size_t kMaxVars = 16;

// Fixed, ordered variable list. Index 0 is the most significant variable in
// the lex monomial order.
class VarRegistry {
 public:
  static std::shared_ptr<const VarRegistry> make(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;  // UnknownVariable

 private:
  explicit VarRegistry(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

using RegistryPtr = std::shared_ptr<const VarRegistry>;

}  // namespace rescert
