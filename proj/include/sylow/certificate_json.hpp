#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "sylow/certificates.hpp"

namespace sylow {

using ordered_json = nlohmann::ordered_json;

/// Fixed key order; big integers and rationals are decimal strings.
ordered_json to_json(const SectionCertificate& cert);

/// Throws Error(ParseError) on malformed or incomplete documents.
SectionCertificate certificate_from_json(const ordered_json& doc);

std::string serialize_certificate(const SectionCertificate& cert);
SectionCertificate parse_certificate(std::string_view text);

}  // namespace sylow
