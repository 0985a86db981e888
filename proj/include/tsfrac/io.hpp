#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tsfrac/psi.hpp"
#include "tsfrac/timescale.hpp"

namespace tsfrac::io {

using nlohmann::json;

/// Throws ValidationError naming `where` and the first key outside `allowed`.
void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                  const std::string& where);

/// Field accessors that throw ValidationError naming the field.
double get_number(const json& obj, const std::string& key, const std::string& where);
double get_number_or(const json& obj, const std::string& key, double fallback,
                     const std::string& where);
std::string get_string(const json& obj, const std::string& key, const std::string& where);

/// {"components": [{"interval": [lo, hi]} | {"point": x}, ...]}
TimeScale timescale_from_json(const json& doc);
json timescale_to_json(const TimeScale& ts);

/// {"form": name, "params": {key: number, ...}}
FormSpec form_from_json(const json& doc, const std::string& where);
json form_to_json(const FormSpec& spec);

/// Reads a whole file; throws ValidationError when it cannot be opened.
std::string read_file(const std::string& path);
json read_json_file(const std::string& path);
/// Writes text to path, creating parent directories.
void write_file(const std::string& path, const std::string& text);

/// Deterministic pretty-printed JSON.
std::string dump(const json& doc);

}  // namespace tsfrac::io
