#include "tsfrac/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tsfrac/errors.hpp"

namespace tsfrac::io {

void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                  const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + "." + key + ": missing");
  if (!it->is_number()) throw ValidationError(where + "." + key + ": expected a number");
  return it->get<double>();
}

double get_number_or(const json& obj, const std::string& key, double fallback,
                     const std::string& where) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

std::string get_string(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + "." + key + ": missing");
  if (!it->is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return it->get<std::string>();
}

TimeScale timescale_from_json(const json& doc) {
  require_keys(doc, {"components"}, "timescale");
  auto it = doc.find("components");
  if (it == doc.end() || !it->is_array() || it->empty())
    throw ValidationError("timescale.components: expected a non-empty array");
  std::vector<Component> comps;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& c = (*it)[i];
    const std::string where = "timescale.components[" + std::to_string(i) + "]";
    require_keys(c, {"interval", "point"}, where);
    if (c.size() != 1) throw ValidationError(where + ": expected exactly one of interval/point");
    if (c.contains("interval")) {
      const json& iv = c["interval"];
      if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
        throw ValidationError(where + ".interval: expected [lo, hi]");
      comps.push_back(Interval{iv[0].get<double>(), iv[1].get<double>()});
    } else {
      if (!c["point"].is_number()) throw ValidationError(where + ".point: expected a number");
      comps.push_back(Point{c["point"].get<double>()});
    }
  }
  return TimeScale(std::move(comps));
}

json timescale_to_json(const TimeScale& ts) {
  json arr = json::array();
  for (const auto& c : ts.components()) {
    if (const auto* iv = std::get_if<Interval>(&c))
      arr.push_back({{"interval", {iv->lo, iv->hi}}});
    else
      arr.push_back({{"point", std::get<Point>(c).x}});
  }
  return {{"components", arr}};
}

FormSpec form_from_json(const json& doc, const std::string& where) {
  require_keys(doc, {"form", "params"}, where);
  FormSpec spec;
  spec.form = get_string(doc, "form", where);
  if (auto it = doc.find("params"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError(where + ".params: expected an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_number()) throw ValidationError(where + ".params." + k + ": expected a number");
      spec.params[k] = v.get<double>();
    }
  }
  return spec;
}

json form_to_json(const FormSpec& spec) {
  json params = json::object();
  for (const auto& [k, v] : spec.params) params[k] = v;
  return {{"form", spec.form}, {"params", params}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace tsfrac::io
