#include "zfstar/model.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace zfstar {

Structure::Structure(std::vector<std::string> elements,
                     std::vector<std::string> sets,
                     std::vector<Pair> membership, std::vector<Pair> parthood)
    : elements_(std::move(elements)),
      sets_list_(std::move(sets)),
      mem_list_(std::move(membership)),
      part_list_(std::move(parthood)) {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i) index_.try_emplace(elements_[i], i);
  tags_.assign(n, false);
  for (const auto& name : sets_list_) {
    auto it = index_.find(name);
    if (it != index_.end()) tags_[it->second] = true;
  }
  mem_.assign(n * n, false);
  part_.assign(n * n, false);
  for (const auto& [a, b] : mem_list_) {
    auto ia = index_.find(a), ib = index_.find(b);
    if (ia != index_.end() && ib != index_.end())
      mem_[ia->second * n + ib->second] = true;
  }
  for (const auto& [a, b] : part_list_) {
    auto ia = index_.find(a), ib = index_.find(b);
    if (ia != index_.end() && ib != index_.end())
      part_[ia->second * n + ib->second] = true;
  }
}

std::optional<std::size_t> Structure::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Violation> Structure::validate() const {
  std::vector<Violation> out;
  std::set<std::string_view> seen;
  for (const auto& name : elements_) {
    if (name.empty()) out.push_back({"empty element name"});
    if (!seen.insert(name).second)
      out.push_back({"duplicate element name '" + name + "'"});
  }
  std::set<std::string_view> set_seen;
  for (const auto& name : sets_list_) {
    if (!index_.count(name))
      out.push_back({"set tag names undeclared element '" + name + "'"});
    if (!set_seen.insert(name).second)
      out.push_back({"duplicate set tag '" + name + "'"});
  }
  auto declared = [&](const std::string& name, const char* where) {
    if (!index_.count(name)) {
      out.push_back({std::string(where) + " pair names undeclared element '" +
                     name + "'"});
      return false;
    }
    return true;
  };
  std::set<Pair> mem_seen, part_seen;
  for (const auto& p : mem_list_) {
    bool ok = declared(p.first, "membership") & declared(p.second, "membership");
    if (ok && !tags_[*index_of(p.second)])
      out.push_back({"membership container is not a set: (" + p.first + ", " +
                     p.second + ")"});
    if (!mem_seen.insert(p).second)
      out.push_back(
          {"duplicate membership pair (" + p.first + ", " + p.second + ")"});
  }
  for (const auto& p : part_list_) {
    bool ok = declared(p.first, "parthood") & declared(p.second, "parthood");
    if (ok && (tags_[*index_of(p.first)] || tags_[*index_of(p.second)]))
      out.push_back({"parthood endpoint is a set: (" + p.first + ", " +
                     p.second + ")"});
    if (!part_seen.insert(p).second)
      out.push_back(
          {"duplicate parthood pair (" + p.first + ", " + p.second + ")"});
  }
  return out;
}

std::vector<std::string> Structure::parts(std::string_view element) const {
  auto idx = index_of(element);
  if (!idx) throw error("undeclared element '" + std::string(element) + "'");
  if (is_set(*idx))
    throw error("'" + std::string(element) +
                "' is a set; parts are defined for PTs only");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (parthood_bit(i, *idx)) out.push_back(elements_[i]);
  return out;
}

std::vector<std::string> Structure::members(std::string_view element) const {
  auto idx = index_of(element);
  if (!idx) throw error("undeclared element '" + std::string(element) + "'");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (membership_bit(i, *idx)) out.push_back(elements_[i]);
  return out;
}

namespace {

using nlohmann::ordered_json;

std::vector<std::string> string_array(const ordered_json& j, const char* key) {
  if (!j.is_array())
    throw model_error(std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string())
      throw model_error(std::string("'") + key +
                        "' must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<Structure::Pair> pair_array(const ordered_json& j,
                                        const char* key) {
  if (!j.is_array())
    throw model_error(std::string("'") + key + "' must be an array");
  std::vector<Structure::Pair> out;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
        !item[1].is_string())
      throw model_error(std::string("'") + key +
                        "' must contain [string, string] pairs");
    out.emplace_back(item[0].get<std::string>(), item[1].get<std::string>());
  }
  return out;
}

}  // namespace

Structure Structure::load(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw model_error(std::string("malformed model file: ") + e.what());
  }
  if (!j.is_object()) throw model_error("model file must be a JSON object");
  static const std::set<std::string> known = {"elements", "sets", "membership",
                                              "parthood"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key))
      throw model_error("unknown key '" + key + "' in model file");
  for (const auto& key : known)
    if (!j.contains(key))
      throw model_error("missing key '" + key + "' in model file");

  Structure s(string_array(j["elements"], "elements"),
              string_array(j["sets"], "sets"),
              pair_array(j["membership"], "membership"),
              pair_array(j["parthood"], "parthood"));
  auto violations = s.validate();
  if (!violations.empty()) {
    std::vector<std::string> messages;
    for (auto& v : violations) messages.push_back(std::move(v.message));
    throw model_error("invalid structure", std::move(messages));
  }
  return s;
}

Structure Structure::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw model_error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

std::string Structure::save() const {
  ordered_json j;
  j["elements"] = elements_;
  j["sets"] = sets_list_;
  j["membership"] = ordered_json::array();
  for (const auto& [a, b] : mem_list_)
    j["membership"].push_back(ordered_json::array({a, b}));
  j["parthood"] = ordered_json::array();
  for (const auto& [a, b] : part_list_)
    j["parthood"].push_back(ordered_json::array({a, b}));
  return j.dump(2) + "\n";
}

std::vector<Violation> validate(const Structure& s) { return s.validate(); }

}  // namespace zfstar
