#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

namespace fibcat {

// Canonical id for tuple-shaped objects and morphisms of derived categories: "(a,b,c)".
inline std::string tuple_id(std::initializer_list<std::string_view> parts) {
  std::string out = "(";
  bool first = true;
  for (auto p : parts) {
    if (!first) out += ',';
    out += p;
    first = false;
  }
  out += ')';
  return out;
}

}  // namespace fibcat
