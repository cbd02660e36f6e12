#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "pswg/arith.hpp"

namespace pswg {

// Minimal JSON document tree for report emission.  Objects are std::map,
// so keys serialise in sorted order and output is byte-reproducible.
// Doubles print with 17 significant digits (round-trip exact).
class JsonValue {
 public:
  using Array = std::vector<JsonValue>;
  using Object = std::map<std::string, JsonValue>;

  JsonValue() : v_(nullptr) {}
  JsonValue(std::nullptr_t) : v_(nullptr) {}
  JsonValue(bool b) : v_(b) {}
  JsonValue(int i) : v_(static_cast<i64>(i)) {}
  JsonValue(i64 i) : v_(i) {}
  JsonValue(u64 u) : v_(u) {}
  JsonValue(double d) : v_(d) {}
  JsonValue(const char* s) : v_(std::string(s)) {}
  JsonValue(std::string s) : v_(std::move(s)) {}
  JsonValue(Array a) : v_(std::move(a)) {}
  JsonValue(Object o) : v_(std::move(o)) {}

  JsonValue& operator[](const std::string& key);
  const JsonValue& at(const std::string& key) const;
  void push_back(JsonValue item);

  bool is_object() const { return std::holds_alternative<Object>(v_); }
  bool is_array() const { return std::holds_alternative<Array>(v_); }

  std::string dump(int indent = 2) const;

 private:
  std::variant<std::nullptr_t, bool, i64, u64, double, std::string, Array, Object> v_;
  void write(std::string& out, int indent, int depth) const;
};

// Numeric report fields carry how the number was obtained: "formula"
// (closed form), "measured" (computed from data), or "config" (copied from
// run parameters).  Each wraps as {"provenance": ..., "value": ...}.
JsonValue tagged(double value, const char* provenance);
JsonValue tagged(u64 value, const char* provenance);
JsonValue tagged(i64 value, const char* provenance);
JsonValue tagged_array(const std::vector<double>& values, const char* provenance);
JsonValue tagged_array(const std::vector<u64>& values, const char* provenance);

}  // namespace pswg
