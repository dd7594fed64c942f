#include "rescert/var_registry.hpp"

#include <set>

#include "rescert/error.hpp"

namespace rescert {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
  }
  return true;
}

}  // namespace

std::shared_ptr<const VarRegistry> VarRegistry::make(std::vector<std::string> names) {
  if (names.size() > kMaxVars) {
    throw Error(ErrorKind::DomainError, "at most " + std::to_string(kMaxVars) + " variables supported");
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_identifier(n)) throw Error(ErrorKind::ParseError, "bad variable name '" + n + "'");
    if (!seen.insert(n).second) throw Error(ErrorKind::DomainError, "duplicate variable '" + n + "'");
  }
  return std::shared_ptr<const VarRegistry>(new VarRegistry(std::move(names)));
}

std::optional<std::size_t> VarRegistry::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VarRegistry::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorKind::UnknownVariable, "'" + name + "'");
  return *i;
}

}  // namespace rescert
