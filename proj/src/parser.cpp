#include "rescert/parser.hpp"

namespace rescert {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top_level_commas(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') {
      if (--depth < 0) throw Error(ErrorKind::ParseError, "unbalanced ')' in '" + std::string(text) + "'");
    }
    if (c == ',' && depth == 0) {
      out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw Error(ErrorKind::ParseError, "unbalanced '(' in '" + std::string(text) + "'");
  out.push_back(trim(text.substr(start)));
  return out;
}

std::optional<PowerForm> split_power_form(std::string_view raw) {
  const std::string text = trim(raw);
  const auto caret = text.rfind('^');
  if (caret == std::string::npos) return std::nullopt;
  const std::string exp = trim(std::string_view(text).substr(caret + 1));
  if (exp.empty() || exp.size() > 6) return std::nullopt;
  for (char c : exp) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  const std::string base = trim(std::string_view(text).substr(0, caret));
  if (base.empty()) return std::nullopt;
  bool ok = false;
  if (base.front() == '(' && base.back() == ')') {
    // The opening parenthesis must close at the very end.
    int depth = 0;
    ok = true;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i] == '(') ++depth;
      if (base[i] == ')') --depth;
      if (depth == 0 && i + 1 < base.size()) {
        ok = false;
        break;
      }
    }
  } else {
    ok = base.front() >= 'a' && base.front() <= 'z';
    for (char c : base) {
      if (!((c >= 'a' && c <= 'z') || std::isdigit(static_cast<unsigned char>(c)))) ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return PowerForm{base, static_cast<unsigned>(std::stoul(exp))};
}

}  // namespace rescert
