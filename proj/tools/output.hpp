// Copyright 2026 The omlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

// Output helpers shared by the CLI commands: number formatting, a small
// insertion-ordered JSON value and the constants CSV layout.
namespace omlab::cli {

enum class Precision { machine, human };

inline std::string format_number(double v, Precision prec = Precision::machine) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, prec == Precision::machine ? "%.17g" : "%.6g", v);
  return buf;
}

class Json {
 public:
  using Object = std::vector<std::pair<std::string, Json>>;
  using Array = std::vector<Json>;

  Json() : v_(nullptr) {}
  Json(double d) : v_(d) {}
  Json(int i) : v_(static_cast<std::int64_t>(i)) {}
  Json(std::int64_t i) : v_(i) {}
  Json(std::uint64_t u) : v_(u) {}
  Json(bool b) : v_(b) {}
  Json(const char* s) : v_(std::string(s)) {}
  Json(std::string s) : v_(std::move(s)) {}
  Json(Object o) : v_(std::move(o)) {}
  Json(Array a) : v_(std::move(a)) {}

  static Json object() { return Json(Object{}); }
  static Json array() { return Json(Array{}); }

  Json& set(std::string key, Json value) {
    std::get<Object>(v_).emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Json& push(Json value) {
    std::get<Array>(v_).push_back(std::move(value));
    return *this;
  }

  // Non-finite numbers become null.
  void dump(std::ostream& os, Precision prec = Precision::machine, int indent = 2, int depth = 0) const {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    if (std::holds_alternative<std::nullptr_t>(v_)) {
      os << "null";
    } else if (auto* d = std::get_if<double>(&v_)) {
      os << (std::isfinite(*d) ? format_number(*d, prec) : "null");
    } else if (auto* i = std::get_if<std::int64_t>(&v_)) {
      os << *i;
    } else if (auto* u = std::get_if<std::uint64_t>(&v_)) {
      os << *u;
    } else if (auto* b = std::get_if<bool>(&v_)) {
      os << (*b ? "true" : "false");
    } else if (auto* s = std::get_if<std::string>(&v_)) {
      write_string(os, *s);
    } else if (auto* o = std::get_if<Object>(&v_)) {
      if (o->empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      for (std::size_t k = 0; k < o->size(); ++k) {
        os << pad;
        write_string(os, (*o)[k].first);
        os << (indent > 0 ? ": " : ":");
        (*o)[k].second.dump(os, prec, indent, depth + 1);
        os << (k + 1 < o->size() ? "," : "") << nl;
      }
      os << close_pad << '}';
    } else if (auto* a = std::get_if<Array>(&v_)) {
      if (a->empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      for (std::size_t k = 0; k < a->size(); ++k) {
        os << pad;
        (*a)[k].dump(os, prec, indent, depth + 1);
        os << (k + 1 < a->size() ? "," : "") << nl;
      }
      os << close_pad << ']';
    }
  }

  std::string str(Precision prec = Precision::machine) const {
    std::ostringstream os;
    dump(os, prec);
    return os.str();
  }

 private:
  static void write_string(std::ostream& os, std::string_view s) {
    os << '"';
    for (char c : s) {
      switch (c) {
        case '"': os << "\\\""; break;
        case '\\': os << "\\\\"; break;
        case '\n': os << "\\n"; break;
        case '\t': os << "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            os << buf;
          } else {
            os << c;
          }
      }
    }
    os << '"';
  }

  std::variant<std::nullptr_t, double, std::int64_t, std::uint64_t, bool, std::string, Object, Array> v_;
};

inline constexpr std::string_view kConstantsHeader =
    "p,p_prime,burkholder,thm1_left,thm1_right,z_p,z_p_prime,c_right,c_left_at_conjugate,"
    "conjecture_residual,ba_sqrt,ba_interp";

inline constexpr const char* kConstantsColumns[] = {
    "p",       "p_prime", "burkholder",          "thm1_left",           "thm1_right", "z_p",
    "z_p_prime", "c_right", "c_left_at_conjugate", "conjecture_residual", "ba_sqrt",    "ba_interp"};

inline std::string csv_line(const std::vector<double>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += format_number(fields[i]);
  }
  return line;
}

// Parses one CSV data line of numbers (as written by csv_line).
inline std::vector<double> parse_csv_line(std::string_view line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t comma = line.find(',', start);
    const std::string field(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    out.push_back(std::stod(field));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace omlab::cli
