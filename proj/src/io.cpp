#include "permlike/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace permlike {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(std::string(what) + ": malformed JSON");
  return j;
}

std::int64_t get_int(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError(std::string(what) + ": missing integer field '" + key + "'");
  return j[key].get<std::int64_t>();
}

std::vector<std::uint32_t> get_u32_array(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string(what) + ": missing array field '" + key + "'");
  std::vector<std::uint32_t> out;
  out.reserve(j[key].size());
  for (const auto& v : j[key]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
        v.get<std::int64_t>() > 0xffffffffLL)
      throw ParseError(std::string(what) + ": field '" + key +
                       "' must hold nonnegative 32-bit integers");
    out.push_back(static_cast<std::uint32_t>(v.get<std::int64_t>()));
  }
  return out;
}

}  // namespace

GroupSpec parse_group_spec(const std::string& json_text) {
  json j = parse_json(json_text, "group spec");
  if (!j.is_object()) throw ParseError("group spec: top level must be an object");
  GroupSpec spec;
  std::int64_t n = get_int(j, "n", "group spec");
  if (n < 0 || n > 30) throw ParseError("group spec: 'n' out of range");
  spec.n = static_cast<int>(n);
  if (j.contains("level")) {
    std::int64_t level = get_int(j, "level", "group spec");
    if (level < 0 || level > 30) throw ParseError("group spec: 'level' out of range");
    spec.level = static_cast<int>(level);
  } else {
    spec.level = spec.n;
  }
  if (j.contains("generators")) {
    if (!j["generators"].is_array())
      throw ParseError("group spec: 'generators' must be an array");
    for (const auto& g : j["generators"]) {
      if (!g.is_object()) throw ParseError("group spec: generator entries must be objects");
      GeneratorSpec gen;
      if (!g.contains("name") || !g["name"].is_string())
        throw ParseError("group spec: generator needs a string 'name'");
      gen.name = g["name"].get<std::string>();
      std::int64_t r = get_int(g, "r", "group spec");
      if (r < 0 || r > 0xffffffffLL)
        throw ParseError("group spec: generator 'r' must be a nonnegative 32-bit integer");
      gen.r = static_cast<std::uint32_t>(r);
      gen.coeffs = get_u32_array(g, "coeffs", "group spec");
      spec.generators.push_back(std::move(gen));
    }
  }
  return spec;
}

GroupSpec load_group_spec(const std::string& path) {
  return parse_group_spec(read_text_file(path));
}

std::string certificate_to_json(const PermBasisCertificate& cert) {
  json j;
  j["n"] = cert.n;
  j["level"] = cert.level;
  j["rescale"] = cert.rescale;
  j["substitutions"] = cert.substitutions;
  json gens = json::object();
  for (const auto& [name, perm] : cert.generator_permutations) gens[name] = perm;
  j["generator_permutations"] = gens;
  j["trace"] = cert.trace;
  return j.dump(2) + "\n";
}

PermBasisCertificate parse_certificate(const std::string& json_text) {
  json j = parse_json(json_text, "certificate");
  if (!j.is_object()) throw ParseError("certificate: top level must be an object");
  PermBasisCertificate cert;
  std::int64_t n = get_int(j, "n", "certificate");
  std::int64_t level = get_int(j, "level", "certificate");
  if (n < 0 || n > 30 || level < 0 || level > 30)
    throw ParseError("certificate: shape out of range");
  cert.n = static_cast<int>(n);
  cert.level = static_cast<int>(level);
  cert.rescale = get_u32_array(j, "rescale", "certificate");
  if (j.contains("substitutions")) {
    if (!j["substitutions"].is_array())
      throw ParseError("certificate: 'substitutions' must be an array");
    for (const auto& s : j["substitutions"]) {
      if (!s.is_string()) throw ParseError("certificate: substitutions must be strings");
      cert.substitutions.push_back(s.get<std::string>());
    }
  }
  if (!j.contains("generator_permutations") || !j["generator_permutations"].is_object())
    throw ParseError("certificate: missing object field 'generator_permutations'");
  for (const auto& [name, perm] : j["generator_permutations"].items()) {
    json holder;
    holder["p"] = perm;
    cert.generator_permutations.emplace_back(name, get_u32_array(holder, "p", "certificate"));
  }
  if (j.contains("trace")) {
    if (!j["trace"].is_array()) throw ParseError("certificate: 'trace' must be an array");
    for (const auto& s : j["trace"]) {
      if (!s.is_string()) throw ParseError("certificate: trace lines must be strings");
      cert.trace.push_back(s.get<std::string>());
    }
  }
  return cert;
}

void save_certificate(const PermBasisCertificate& cert, const std::string& path) {
  write_text_file(path, certificate_to_json(cert));
}

PermBasisCertificate load_certificate(const std::string& path) {
  return parse_certificate(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out.flush()) throw Error("write failed: " + path);
}

}  // namespace permlike
