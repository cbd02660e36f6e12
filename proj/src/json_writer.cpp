#include "pswg/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace pswg {

JsonValue& JsonValue::operator[](const std::string& key) {
  if (std::holds_alternative<std::nullptr_t>(v_)) v_ = Object{};
  if (!is_object())
    throw std::invalid_argument("JsonValue: key access on non-object");
  return std::get<Object>(v_)[key];
}

const JsonValue& JsonValue::at(const std::string& key) const {
  if (!is_object())
    throw std::invalid_argument("JsonValue: key access on non-object");
  return std::get<Object>(v_).at(key);
}

void JsonValue::push_back(JsonValue item) {
  if (std::holds_alternative<std::nullptr_t>(v_)) v_ = Array{};
  if (!is_array())
    throw std::invalid_argument("JsonValue: push_back on non-array");
  std::get<Array>(v_).push_back(std::move(item));
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void write_double(std::string& out, double d) {
  if (!std::isfinite(d))
    throw std::invalid_argument("JsonValue: non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  std::string_view sv(buf);
  out += sv;
  // Integer-valued doubles keep a decimal point so readers see a double.
  if (sv.find_first_of(".eE") == std::string_view::npos) out += ".0";
}

void indent_to(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
  std::visit(
      [&](const auto& val) {
        using T = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<T, std::nullptr_t>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          out += val ? "true" : "false";
        } else if constexpr (std::is_same_v<T, i64>) {
          out += std::to_string(val);
        } else if constexpr (std::is_same_v<T, u64>) {
          out += std::to_string(val);
        } else if constexpr (std::is_same_v<T, double>) {
          write_double(out, val);
        } else if constexpr (std::is_same_v<T, std::string>) {
          write_escaped(out, val);
        } else if constexpr (std::is_same_v<T, Array>) {
          if (val.empty()) {
            out += "[]";
            return;
          }
          out += '[';
          for (std::size_t i = 0; i < val.size(); ++i) {
            if (i) out += ',';
            indent_to(out, indent, depth + 1);
            val[i].write(out, indent, depth + 1);
          }
          indent_to(out, indent, depth);
          out += ']';
        } else if constexpr (std::is_same_v<T, Object>) {
          if (val.empty()) {
            out += "{}";
            return;
          }
          out += '{';
          bool first = true;
          for (const auto& [k, item] : val) {
            if (!first) out += ',';
            first = false;
            indent_to(out, indent, depth + 1);
            write_escaped(out, k);
            out += indent > 0 ? ": " : ":";
            item.write(out, indent, depth + 1);
          }
          indent_to(out, indent, depth);
          out += '}';
        }
      },
      v_);
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

namespace {

JsonValue wrap(JsonValue value, const char* provenance) {
  JsonValue obj;
  obj["provenance"] = provenance;
  obj["value"] = std::move(value);
  return obj;
}

}  // namespace

JsonValue tagged(double value, const char* provenance) {
  return wrap(JsonValue(value), provenance);
}

JsonValue tagged(u64 value, const char* provenance) {
  return wrap(JsonValue(value), provenance);
}

JsonValue tagged(i64 value, const char* provenance) {
  return wrap(JsonValue(value), provenance);
}

JsonValue tagged_array(const std::vector<double>& values, const char* provenance) {
  JsonValue arr = JsonValue::Array{};
  for (double v : values) arr.push_back(JsonValue(v));
  return wrap(std::move(arr), provenance);
}

JsonValue tagged_array(const std::vector<u64>& values, const char* provenance) {
  JsonValue arr = JsonValue::Array{};
  for (u64 v : values) arr.push_back(JsonValue(v));
  return wrap(std::move(arr), provenance);
}

}  // namespace pswg
