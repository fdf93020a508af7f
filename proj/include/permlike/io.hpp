#pragma once

#include <string>

#include "permlike/group.hpp"
#include "permlike/synth.hpp"

namespace permlike {

// Group spec JSON:
//   {"n": 3, "level": 3, "generators": [{"name": "A", "r": 7, "coeffs": [0, ...]}]}
// level defaults to n; throws ParseError with the offending field named.
GroupSpec parse_group_spec(const std::string& json_text);
GroupSpec load_group_spec(const std::string& path);

std::string certificate_to_json(const PermBasisCertificate& cert);
PermBasisCertificate parse_certificate(const std::string& json_text);
void save_certificate(const PermBasisCertificate& cert, const std::string& path);
PermBasisCertificate load_certificate(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace permlike
