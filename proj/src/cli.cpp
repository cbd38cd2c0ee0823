#include "sylow/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "sylow/certificate_json.hpp"
#include "sylow/certificates.hpp"
#include "sylow/degree.hpp"
#include "sylow/spheremap.hpp"

namespace sylow {

namespace {

struct Options {
  std::uint64_t q = 0;
  std::uint64_t k = 1;
  std::string format = "json";
  std::string file;
  std::uint64_t qmax = 0;
  std::string spec;
  int sphere = 0;
  int max_level = 8;
  int start_level = -1;
  std::uint64_t seed = kDefaultSeed;
  std::string family = "c6";
  long r_min = 0;
  long r_max = 3;
  std::string sign = "both";
  std::uint64_t prime = 3;
  std::string injected;
};

bool is_blocker(Errc code) {
  return code == Errc::PrimePowerBlocked || code == Errc::TwiceOddPrimePowerBlocked ||
         code == Errc::HypothesesFail;
}

ordered_json estimate_json(const DegreeEstimate& e) {
  ordered_json j;
  j["raw"] = e.raw;
  j["rounded"] = e.rounded;
  j["residual"] = e.residual;
  j["level"] = e.level;
  j["stable"] = e.stable;
  return j;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

int cmd_cert(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.q < 3 || o.k < 1) {
    err << "cert needs q >= 3 and k >= 1\n";
    return kExitUsage;
  }
  SectionCertificate cert;
  try {
    cert = build_certificate(o.q, o.k);
  } catch (const Error& e) {
    if (!is_blocker(e.code()))
      throw;
    ordered_json report;
    report["q"] = o.q;
    report["k"] = o.k;
    report["blocked"] = std::string(errc_name(e.code()));
    report["reason"] = e.what();
    out << report.dump(2) << "\n";
    err << e.what() << "\n";
    return kExitBlocked;
  }
  if (o.format == "json") {
    out << serialize_certificate(cert) << "\n";
    return kExitOk;
  }
  out << "p,alpha,block_sizes,d,in_gamma2,n" << (cert.m ? ",m" : "") << "\n";
  for (std::size_t i = 0; i < cert.primes.size(); ++i) {
    const auto& r = cert.primes[i];
    std::string sizes;
    for (auto s : r.block_sizes)
      sizes += (sizes.empty() ? "" : " ") + std::to_string(s);
    out << r.p << "," << r.alpha << "," << sizes << "," << r.d.get_str() << ","
        << csv_bool(r.in_gamma2) << "," << cert.n[i].get_str();
    if (cert.m)
      out << "," << (*cert.m)[i].get_str();
    out << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.file);
  if (!in) {
    err << "cannot read '" << o.file << "'\n";
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  SectionCertificate cert;
  try {
    cert = parse_certificate(buffer.str());
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  const auto result = verify_certificate(cert);
  ordered_json report;
  report["q"] = cert.q;
  report["k"] = cert.k;
  report["ok"] = result.ok;
  report["failed"] = result.failed;
  out << report.dump(2) << "\n";
  if (!result.ok) {
    for (const auto& name : result.failed)
      err << "failed check: " << name << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_hypotheses(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.q < 2 || o.k < 1) {
    err << "hypotheses needs q >= 2 and k >= 1\n";
    return kExitUsage;
  }
  const auto report = check_hypotheses(o.q, o.k);
  ordered_json j;
  j["q"] = report.q;
  j["k"] = report.k;
  j["verdict"] = std::string(to_string(report.verdict));
  ordered_json items = ordered_json::array();
  for (const auto& item : report.results)
    items.push_back({{"id", item.id}, {"applies", item.applies}, {"reason", item.reason}});
  j["results"] = std::move(items);
  j["blockers"] = report.blockers;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_table(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.qmax < 3 || o.qmax > 200) {
    err << "table needs 3 <= qmax <= 200\n";
    return kExitUsage;
  }
  ordered_json rows = ordered_json::array();
  for (std::uint64_t q = 3; q <= o.qmax; ++q) {
    const auto cls = classify_q(q);
    const auto gamma = gamma_sets(q);
    std::string certificate;
    bool verified = false;
    try {
      const auto cert = build_certificate(q, o.k);
      certificate = std::string(to_string(cert.kind));
      verified = verify_certificate(cert).ok;
    } catch (const Error& e) {
      if (!is_blocker(e.code()))
        throw;
      certificate = std::string(errc_name(e.code()));
    }
    rows.push_back({{"q", q},
                    {"classification", std::string(to_string(cls.kind))},
                    {"gamma2_size", gamma.gamma2.size()},
                    {"certificate", certificate},
                    {"verified", verified}});
  }
  if (o.format == "json") {
    out << rows.dump(2) << "\n";
    return kExitOk;
  }
  out << "q,classification,gamma2_size,certificate,verified\n";
  for (const auto& row : rows) {
    out << row["q"].get<std::uint64_t>() << "," << row["classification"].get<std::string>() << ","
        << row["gamma2_size"].get<std::size_t>() << "," << row["certificate"].get<std::string>()
        << "," << csv_bool(row["verified"].get<bool>()) << "\n";
  }
  return kExitOk;
}

int cmd_degree(const Options& o, std::ostream& out, std::ostream& err) {
  std::optional<SphereMap> f;
  try {
    f = parse_map_spec(o.spec, std::filesystem::current_path());
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  if (f->sphere_dim() != o.sphere) {
    err << "map '" << f->label() << "' lives on S^" << f->sphere_dim() << ", not S^" << o.sphere
        << "\n";
    return kExitUsage;
  }
  DegreeOptions opts{o.start_level, o.max_level};
  try {
    out << estimate_json(compute_degree(*f, opts)).dump(2) << "\n";
    return kExitOk;
  } catch (const NoConvergenceError& e) {
    out << estimate_json(e.last()).dump(2) << "\n";
    err << e.what() << "\n";
    return kExitFailed;
  }
}

int cmd_congruence(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.family != "c6") {
    err << "unknown family '" << o.family << "'\n";
    return kExitUsage;
  }
  std::vector<int> signs;
  if (o.sign == "both")
    signs = {1, -1};
  else if (o.sign == "+1" || o.sign == "1" || o.sign == "+")
    signs = {1};
  else if (o.sign == "-1" || o.sign == "-")
    signs = {-1};
  else {
    err << "sign must be +1, -1 or both\n";
    return kExitUsage;
  }
  if (o.r_min > o.r_max) {
    err << "empty family: r-min > r-max\n";
    return kExitUsage;
  }
  if (!is_prime(o.prime)) {
    err << o.prime << " is not prime\n";
    return kExitUsage;
  }

  std::optional<SphereMap> injected;
  if (!o.injected.empty()) {
    try {
      injected = parse_map_spec(o.injected, std::filesystem::current_path());
      injected = injected->with_action(c6_action());
    } catch (const Error& e) {
      err << e.what() << "\n";
      return kExitUsage;
    }
  }

  DegreeOptions opts{o.start_level, o.max_level};
  ordered_json results = ordered_json::array();
  bool all_pass = true;
  auto run = [&](const SphereMap& f, std::optional<long> expected) {
    const auto report = degree_congruence_check(f, o.prime, opts, o.seed);
    ordered_json j;
    j["map"] = f.label();
    j["degree"] = report.degree;
    if (expected)
      j["expected_degree"] = *expected;
    j["fixed_dim"] = report.fixed_dim;
    if (report.restricted_degree)
      j["restricted_degree"] = *report.restricted_degree;
    else
      j["restricted_degree"] = nullptr;
    j["residue"] = report.expected_residue;
    j["congruent"] = report.congruent;
    j["equivariance_deviation"] = report.equivariance_deviation;
    const bool pass = report.congruent && (!expected || *expected == report.degree);
    j["pass"] = pass;
    all_pass = all_pass && pass;
    results.push_back(std::move(j));
  };

  try {
    if (injected) {
      run(*injected, std::nullopt);
    } else {
      for (long r = o.r_min; r <= o.r_max; ++r) {
        for (int s : signs)
          run(equivariant_join_family(r, s), s * (3 * r + 1));
      }
    }
  } catch (const NoConvergenceError& e) {
    err << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    if (e.code() != Errc::NotEquivariant)
      throw;
    err << e.what() << "\n";
    return kExitFailed;
  }

  ordered_json doc;
  doc["family"] = injected ? "injected" : o.family;
  doc["prime"] = o.prime;
  doc["results"] = std::move(results);
  doc["all_pass"] = all_pass;
  out << doc.dump(2) << "\n";
  return all_pass ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sylow-orbit section certificates and sphere-map degrees"};
  app.require_subcommand(1);
  Options o;

  auto* cert = app.add_subcommand("cert", "build a section certificate");
  cert->add_option("--q", o.q, "size of the permuted set")->required();
  cert->add_option("--k", o.k, "number of copies of the reduced representation");
  cert->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "re-check a certificate file");
  verify->add_option("file", o.file)->required();

  auto* hyp = app.add_subcommand("hypotheses", "report which existence criteria apply");
  hyp->add_option("--q", o.q)->required();
  hyp->add_option("--k", o.k);

  auto* table = app.add_subcommand("table", "classify and certify q = 3..qmax");
  table->add_option("--qmax", o.qmax)->required();
  table->add_option("--k", o.k);
  table->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  auto* degree = app.add_subcommand("degree", "numerical degree of a constructed map");
  degree->add_option("spec", o.spec, "map construction")->required();
  degree->add_option("--sphere", o.sphere)->required()->check(CLI::Range(0, 3));
  degree->add_option("--max-level", o.max_level)->check(CLI::Range(1, 12));
  degree->add_option("--start-level", o.start_level)->check(CLI::Range(0, 12));
  degree->add_option("--seed", o.seed);

  auto* cong = app.add_subcommand("congruence", "mod-p degree congruences for equivariant maps");
  cong->add_option("--family", o.family);
  cong->add_option("--r-min", o.r_min);
  cong->add_option("--r-max", o.r_max);
  cong->add_option("--sign", o.sign);
  cong->add_option("--prime", o.prime);
  cong->add_option("--map", o.injected, "check this map against the C6 action instead");
  cong->add_option("--max-level", o.max_level)->check(CLI::Range(1, 12));
  cong->add_option("--seed", o.seed);

  const bool table_format_given = [&] {
    return std::find(args.begin(), args.end(), "--format") != args.end() ||
           std::any_of(args.begin(), args.end(),
                       [](const std::string& a) { return a.starts_with("--format="); });
  }();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cert)
      return cmd_cert(o, out, err);
    if (*verify)
      return cmd_verify(o, out, err);
    if (*hyp)
      return cmd_hypotheses(o, out, err);
    if (*table) {
      if (!table_format_given)
        o.format = "csv";
      return cmd_table(o, out, err);
    }
    if (*degree)
      return cmd_degree(o, out, err);
    if (*cong)
      return cmd_congruence(o, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
    case Errc::OutOfRange:
    case Errc::InvalidArgument:
    case Errc::InvalidPrime:
    case Errc::ParseError:
    case Errc::InvalidSpec:
    case Errc::DimMismatch:
      return kExitUsage;
    default:
      return kExitFailed;
    }
  }
  return kExitUsage;
}

}  // namespace sylow
