#include "sylow/certificate_json.hpp"

#include <stdexcept>

namespace sylow {

namespace {

ordered_json big_list(const std::vector<BigInt>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values)
    out.push_back(v.get_str());
  return out;
}

ordered_json rational_list(const RationalVector& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values)
    out.push_back(v.get_str());
  return out;
}

BigInt parse_big(const ordered_json& j) {
  if (!j.is_string())
    throw Error(Errc::ParseError, "expected a decimal string");
  BigInt v;
  if (v.set_str(j.get<std::string>(), 10) != 0)
    throw Error(Errc::ParseError, "bad integer '" + j.get<std::string>() + "'");
  return v;
}

Rational parse_rational(const ordered_json& j) {
  if (!j.is_string())
    throw Error(Errc::ParseError, "expected a rational string");
  Rational v;
  if (v.set_str(j.get<std::string>(), 10) != 0)
    throw Error(Errc::ParseError, "bad rational '" + j.get<std::string>() + "'");
  if (v.get_den() == 0)
    throw Error(Errc::ParseError, "zero denominator");
  v.canonicalize();
  return v;
}

std::vector<BigInt> parse_big_list(const ordered_json& j) {
  if (!j.is_array())
    throw Error(Errc::ParseError, "expected an array");
  std::vector<BigInt> out;
  for (const auto& e : j)
    out.push_back(parse_big(e));
  return out;
}

RationalVector parse_rational_list(const ordered_json& j) {
  if (!j.is_array())
    throw Error(Errc::ParseError, "expected an array");
  RationalVector out;
  for (const auto& e : j)
    out.push_back(parse_rational(e));
  return out;
}

std::uint64_t parse_uint(const ordered_json& j) {
  if (!j.is_number_unsigned())
    throw Error(Errc::ParseError, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::vector<std::uint64_t> parse_uint_list(const ordered_json& j) {
  if (!j.is_array())
    throw Error(Errc::ParseError, "expected an array");
  std::vector<std::uint64_t> out;
  for (const auto& e : j)
    out.push_back(parse_uint(e));
  return out;
}

}  // namespace

ordered_json to_json(const SectionCertificate& cert) {
  ordered_json doc;
  doc["q"] = cert.q;
  doc["k"] = cert.k;
  doc["kind"] = std::string(to_string(cert.kind));
  ordered_json primes = ordered_json::array();
  for (const auto& r : cert.primes) {
    ordered_json rec;
    rec["p"] = r.p;
    rec["alpha"] = r.alpha;
    rec["digits"] = r.digits;
    rec["block_sizes"] = r.block_sizes;
    rec["d"] = r.d.get_str();
    rec["in_gamma2"] = r.in_gamma2;
    rec["t_x"] = rational_list(r.t_x);
    if (r.t_y)
      rec["t_y"] = rational_list(*r.t_y);
    primes.push_back(std::move(rec));
  }
  doc["primes"] = std::move(primes);
  if (cert.c)
    doc["c"] = cert.c->get_str();
  doc["n"] = big_list(cert.n);
  if (cert.m)
    doc["m"] = big_list(*cert.m);
  ordered_json checks = ordered_json::object();
  for (const auto& [name, ok] : cert.checks)
    checks[name] = ok;
  doc["checks"] = std::move(checks);
  return doc;
}

SectionCertificate certificate_from_json(const ordered_json& doc) {
  try {
    if (!doc.is_object())
      throw Error(Errc::ParseError, "certificate must be a JSON object");
    SectionCertificate cert;
    cert.q = parse_uint(doc.at("q"));
    cert.k = parse_uint(doc.at("k"));
    cert.kind = certificate_kind_from_string(doc.at("kind").get<std::string>());
    for (const auto& rec : doc.at("primes")) {
      PrimeRecord r;
      r.p = parse_uint(rec.at("p"));
      r.alpha = parse_uint(rec.at("alpha"));
      r.digits = parse_uint_list(rec.at("digits"));
      r.block_sizes = parse_uint_list(rec.at("block_sizes"));
      r.d = parse_big(rec.at("d"));
      if (!rec.at("in_gamma2").is_boolean())
        throw Error(Errc::ParseError, "in_gamma2 must be a boolean");
      r.in_gamma2 = rec.at("in_gamma2").get<bool>();
      r.t_x = parse_rational_list(rec.at("t_x"));
      if (rec.contains("t_y"))
        r.t_y = parse_rational_list(rec.at("t_y"));
      cert.primes.push_back(std::move(r));
    }
    if (doc.contains("c"))
      cert.c = parse_big(doc.at("c"));
    cert.n = parse_big_list(doc.at("n"));
    if (doc.contains("m"))
      cert.m = parse_big_list(doc.at("m"));
    const auto& checks = doc.at("checks");
    if (!checks.is_object())
      throw Error(Errc::ParseError, "checks must be an object");
    for (const auto& [name, value] : checks.items()) {
      if (!value.is_boolean())
        throw Error(Errc::ParseError, "check '" + name + "' is not a boolean");
      cert.checks.emplace_back(name, value.get<bool>());
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string serialize_certificate(const SectionCertificate& cert) {
  return to_json(cert).dump(2);
}

SectionCertificate parse_certificate(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return certificate_from_json(doc);
}

}  // namespace sylow
