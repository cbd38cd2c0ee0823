#include "sylow/certificates.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sylow {

GammaSets gamma_sets(std::uint64_t q) {
  if (q < 2)
    throw Error(Errc::OutOfRange, "gamma sets need q >= 2");
  GammaSets sets;
  sets.primes = primes_upto(q);
  for (std::uint64_t p : sets.primes) {
    if (digit_sum(q, p) == 2)
      sets.gamma2.push_back(p);
  }
  return sets;
}

std::string_view to_string(CertificateKind kind) noexcept {
  switch (kind) {
  case CertificateKind::A: return "A";
  case CertificateKind::B: return "B";
  case CertificateKind::C: return "C";
  }
  return "?";
}

CertificateKind certificate_kind_from_string(std::string_view s) {
  if (s == "A")
    return CertificateKind::A;
  if (s == "B")
    return CertificateKind::B;
  if (s == "C")
    return CertificateKind::C;
  throw Error(Errc::ParseError, "unknown certificate kind '" + std::string(s) + "'");
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
  case Verdict::SectionExists: return "section_exists";
  case Verdict::Counterexample: return "counterexample";
  case Verdict::Undecided: return "undecided";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Integer combinations

BezoutResult bezout(std::span<const BigInt> ds) {
  if (ds.empty())
    throw Error(Errc::InvalidArgument, "bezout combination of an empty list");
  for (const auto& d : ds) {
    if (d <= 0)
      throw Error(Errc::InvalidArgument, "bezout inputs must be positive");
  }

  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ds[a] < ds[b]; });

  std::vector<BigInt> n(ds.size(), 0);
  BigInt g = ds[order[0]];
  n[order[0]] = 1;
  BigInt next_g, s, t;
  for (std::size_t idx = 1; idx < order.size(); ++idx) {
    const std::size_t j = order[idx];
    mpz_gcdext(next_g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
               ds[j].get_mpz_t());
    for (std::size_t prev = 0; prev < idx; ++prev)
      n[order[prev]] *= s;
    n[j] = t;
    g = next_g;
  }

  // Size reduction: move multiples of lcm(d_i, d_last) into the last coefficient.
  const std::size_t last = order.back();
  for (std::size_t idx = 0; idx + 1 < order.size(); ++idx) {
    const std::size_t i = order[idx];
    BigInt pair_gcd;
    mpz_gcd(pair_gcd.get_mpz_t(), ds[i].get_mpz_t(), ds[last].get_mpz_t());
    const BigInt step = ds[last] / pair_gcd;
    const BigInt back = ds[i] / pair_gcd;
    BigInt shift;
    mpz_fdiv_q(shift.get_mpz_t(), n[i].get_mpz_t(), step.get_mpz_t());
    n[i] -= shift * step;
    if (2 * n[i] > step) {
      n[i] -= step;
      shift += 1;
    }
    n[last] += shift * back;
  }

  BigInt check = 0;
  for (std::size_t i = 0; i < ds.size(); ++i)
    check += n[i] * ds[i];
  if (check != g)
    throw std::logic_error("bezout combination does not evaluate to the gcd");
  return {g, std::move(n)};
}

std::vector<BigInt> bezout_combination(std::span<const BigInt> ds) {
  auto result = bezout(ds);
  if (result.gcd != 1)
    throw NoUnitCombinationError(result.gcd);
  return std::move(result.coefficients);
}

CongruenceAdjustment adjust_congruences(std::span<const BigInt> ds, std::span<const BigInt> n,
                                        const std::vector<bool>& flags,
                                        std::span<const std::uint64_t> ps) {
  if (n.size() != ds.size() || flags.size() != ds.size() || ps.size() != ds.size())
    throw Error(Errc::InvalidArgument, "adjust_congruences inputs differ in length");
  BigInt total = 0;
  BigInt combination = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    total += ds[i];
    combination += n[i] * ds[i];
  }
  if (combination != 1)
    throw Error(Errc::InvalidArgument, "coefficients do not combine the inputs to 1");

  CongruenceAdjustment out;
  out.c = 1 - total;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (flags[i] && !mpz_divisible_ui_p(out.c.get_mpz_t(), ps[i]))
      throw Error(Errc::TheoremViolation, "correction " + out.c.get_str() +
                                              " is not divisible by " + std::to_string(ps[i]));
  }
  out.m.reserve(ds.size());
  BigInt adjusted = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out.m.push_back(1 + out.c * n[i]);
    adjusted += out.m.back() * ds[i];
    if (flags[i] && mpz_fdiv_ui(out.m.back().get_mpz_t(), ps[i]) != 1 % ps[i])
      throw Error(Errc::TheoremViolation, "adjusted coefficient not 1 mod " + std::to_string(ps[i]));
  }
  if (adjusted != 1)
    throw std::logic_error("adjusted coefficients do not combine to 1");
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

std::optional<CertificateKind> expected_kind(std::uint64_t q, std::uint64_t k) {
  if (q < 3 || k < 1)
    return std::nullopt;
  const auto cls = classify_q(q);
  if (cls.kind == QKind::PrimePower)
    return std::nullopt;
  if (cls.kind == QKind::TwiceOddPrimePower && k == 1)
    return std::nullopt;
  if (k >= 2)
    return CertificateKind::C;
  return q % 2 == 0 ? CertificateKind::B : CertificateKind::A;
}

// Sizes of the canonical Sylow-adapted blocks, largest first.
std::vector<std::uint64_t> sizes_from_digits(const std::vector<std::uint64_t>& digits,
                                             std::uint64_t p) {
  std::vector<std::uint64_t> sizes;
  for (std::size_t r = digits.size(); r-- > 0;) {
    std::uint64_t power = 1;
    for (std::size_t e = 0; e < r; ++e)
      power *= p;
    for (std::uint64_t copy = 0; copy < digits[r]; ++copy)
      sizes.push_back(power);
  }
  return sizes;
}

BlockPartition partition_from_sizes(std::uint64_t q, const std::vector<std::uint64_t>& sizes) {
  std::vector<std::vector<std::uint64_t>> blocks;
  std::uint64_t next = 1;
  for (std::uint64_t size : sizes) {
    std::vector<std::uint64_t> block(size);
    std::iota(block.begin(), block.end(), next);
    next += size;
    blocks.push_back(std::move(block));
  }
  return BlockPartition(q, std::move(blocks));
}

bool fixed_space_ok(std::uint64_t q, std::uint64_t k, std::uint64_t alpha) {
  if (alpha < 2)
    return false;
  const std::uint64_t fixed = k * (alpha - 1);
  const bool odd_dim = (k * (q - 1)) % 2 == 1;
  return odd_dim ? fixed > 1 : fixed >= 1;
}

template <typename Fn>
bool guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

SectionCertificate build_certificate(std::uint64_t q, std::uint64_t k) {
  if (q < 3)
    throw Error(Errc::OutOfRange, "certificates need q >= 3");
  if (k < 1)
    throw Error(Errc::OutOfRange, "tensor multiplicity k must be >= 1");

  const auto cls = classify_q(q);
  if (cls.kind == QKind::PrimePower)
    throw Error(Errc::PrimePowerBlocked, "q = " + std::to_string(cls.p) + "^" +
                                             std::to_string(cls.s) + " is a prime power");
  if (cls.kind == QKind::TwiceOddPrimePower && k == 1)
    throw Error(Errc::TwiceOddPrimePowerBlocked, "q = 2*" + std::to_string(cls.p) + "^" +
                                                     std::to_string(cls.s) + " with k = 1");

  SectionCertificate cert;
  cert.q = q;
  cert.k = k;
  cert.kind = *expected_kind(q, k);

  std::string failures;
  for (std::uint64_t p : primes_upto(q)) {
    const auto profile = padic_profile(q, p);
    if (cert.kind == CertificateKind::C && !fixed_space_ok(q, k, profile.alpha))
      failures += " p=" + std::to_string(p) + " (alpha = " + std::to_string(profile.alpha) + ");";
    const auto partition = canonical_partition(q, p);
    const auto x = orbit_point(partition, canonical_t(partition.num_blocks()));

    PrimeRecord record;
    record.p = p;
    record.alpha = profile.alpha;
    record.digits = profile.digits;
    record.block_sizes = partition.sizes();
    record.d = orbit_size(x);
    record.in_gamma2 = profile.alpha == 2;
    record.t_x = x.t;
    if (profile.alpha > 2)
      record.t_y = pair_points(partition).second.t;
    cert.primes.push_back(std::move(record));
  }
  if (!failures.empty())
    throw Error(Errc::HypothesesFail, "fixed subspace too small:" + failures);

  std::vector<BigInt> ds;
  std::vector<bool> flags;
  std::vector<std::uint64_t> ps;
  for (const auto& record : cert.primes) {
    ds.push_back(record.d);
    flags.push_back(record.in_gamma2);
    ps.push_back(record.p);
  }
  cert.n = bezout_combination(ds);
  if (cert.kind == CertificateKind::B) {
    auto adjusted = adjust_congruences(ds, cert.n, flags, ps);
    cert.c = std::move(adjusted.c);
    cert.m = std::move(adjusted.m);
  }

  cert.checks = evaluate_checks(cert);
  for (const auto& [name, ok] : cert.checks) {
    if (!ok)
      throw Error(Errc::TheoremViolation, "freshly built certificate fails check " + name);
  }
  return cert;
}

CheckList evaluate_checks(const SectionCertificate& cert) {
  CheckList checks;
  const auto& records = cert.primes;
  const std::uint64_t q = cert.q;
  const bool sizes_ok = cert.n.size() == records.size();

  checks.emplace_back("kind_selection", guarded([&] {
                        const auto expected = expected_kind(q, cert.k);
                        return expected && *expected == cert.kind;
                      }));

  checks.emplace_back("shape", cert.kind == CertificateKind::B
                                   ? (cert.c.has_value() && cert.m.has_value())
                                   : (!cert.c.has_value() && !cert.m.has_value()));

  checks.emplace_back("prime_set", guarded([&] {
                        std::vector<std::uint64_t> listed;
                        for (const auto& r : records)
                          listed.push_back(r.p);
                        return listed == primes_upto(q);
                      }));

  checks.emplace_back("digits", guarded([&] {
                        for (const auto& r : records) {
                          if (r.digits != base_digits(q, r.p))
                            return false;
                          std::uint64_t sum = 0;
                          for (auto a : r.digits)
                            sum += a;
                          if (sum != r.alpha)
                            return false;
                        }
                        return true;
                      }));

  checks.emplace_back("block_sizes", guarded([&] {
                        for (const auto& r : records) {
                          if (r.block_sizes != sizes_from_digits(base_digits(q, r.p), r.p))
                            return false;
                        }
                        return true;
                      }));

  checks.emplace_back("d_recomputation", guarded([&] {
                        for (const auto& r : records) {
                          if (r.d != multinomial(r.block_sizes))
                            return false;
                        }
                        return true;
                      }));

  checks.emplace_back("gamma2_flags", guarded([&] {
                        for (const auto& r : records) {
                          if (r.in_gamma2 != (r.alpha == 2))
                            return false;
                        }
                        return true;
                      }));

  checks.emplace_back("orbit_points", guarded([&] {
                        for (const auto& r : records) {
                          if (r.block_sizes.size() < 2 || r.t_x != canonical_t(r.block_sizes.size()))
                            return false;
                          const auto partition = partition_from_sizes(q, r.block_sizes);
                          const auto x = orbit_point(partition, r.t_x);
                          if (r.t_y.has_value() != (r.alpha > 2))
                            return false;
                          if (r.t_y) {
                            const auto y = orbit_point(partition, *r.t_y);
                            if (proportional(x.coords, y.coords))
                              return false;
                            if (*r.t_y != pair_points(partition).second.t)
                              return false;
                          }
                        }
                        return true;
                      }));

  checks.emplace_back("coprime_orbits", guarded([&] {
                        for (const auto& r : records) {
                          if (r.p < 2 || mpz_divisible_ui_p(r.d.get_mpz_t(), r.p))
                            return false;
                        }
                        return !records.empty();
                      }));

  checks.emplace_back("bezout", sizes_ok && guarded([&] {
                                  BigInt sum = 0;
                                  for (std::size_t i = 0; i < records.size(); ++i)
                                    sum += cert.n[i] * records[i].d;
                                  return sum == 1;
                                }));

  if (cert.kind == CertificateKind::C) {
    checks.emplace_back("fixed_space", guarded([&] {
                          for (const auto& r : records) {
                            if (!fixed_space_ok(q, cert.k, r.alpha))
                              return false;
                          }
                          return true;
                        }));
  }

  if (cert.kind == CertificateKind::B) {
    const bool has_cm = cert.c.has_value() && cert.m.has_value() && cert.m->size() == records.size();

    checks.emplace_back("gamma2_residue", guarded([&] {
                          for (const auto& r : records) {
                            if (r.in_gamma2 && mpz_fdiv_ui(r.d.get_mpz_t(), r.p) != 1)
                              return false;
                          }
                          return true;
                        }));

    checks.emplace_back("cross_divisibility", guarded([&] {
                          for (const auto& r : records) {
                            if (!r.in_gamma2)
                              continue;
                            for (const auto& other : records) {
                              if (other.p != r.p && !mpz_divisible_ui_p(other.d.get_mpz_t(), r.p))
                                return false;
                            }
                          }
                          return true;
                        }));

    checks.emplace_back("correction", has_cm && guarded([&] {
                                        BigInt total = 0;
                                        for (const auto& r : records)
                                          total += r.d;
                                        if (*cert.c != 1 - total)
                                          return false;
                                        for (const auto& r : records) {
                                          if (r.in_gamma2 &&
                                              !mpz_divisible_ui_p(cert.c->get_mpz_t(), r.p))
                                            return false;
                                        }
                                        return true;
                                      }));

    checks.emplace_back("adjusted_coefficients", has_cm && sizes_ok && guarded([&] {
                                                   for (std::size_t i = 0; i < records.size(); ++i) {
                                                     if ((*cert.m)[i] != 1 + *cert.c * cert.n[i])
                                                       return false;
                                                   }
                                                   return true;
                                                 }));

    checks.emplace_back("unit_combination", has_cm && guarded([&] {
                                              BigInt sum = 0;
                                              for (std::size_t i = 0; i < records.size(); ++i)
                                                sum += (*cert.m)[i] * records[i].d;
                                              return sum == 1;
                                            }));

    checks.emplace_back("congruence", has_cm && guarded([&] {
                                        for (std::size_t i = 0; i < records.size(); ++i) {
                                          const auto& r = records[i];
                                          if (r.in_gamma2 &&
                                              mpz_fdiv_ui((*cert.m)[i].get_mpz_t(), r.p) != 1)
                                            return false;
                                        }
                                        return true;
                                      }));
  }
  return checks;
}

VerificationResult verify_certificate(const SectionCertificate& cert) {
  VerificationResult result;
  const auto recomputed = evaluate_checks(cert);
  for (const auto& [name, ok] : recomputed) {
    if (!ok)
      result.failed.push_back(name);
  }
  if (cert.checks != recomputed)
    result.failed.emplace_back("recorded_checks");
  result.ok = result.failed.empty();
  return result;
}

// ---------------------------------------------------------------------------
// Hypotheses

HypothesisReport check_hypotheses(std::uint64_t q, std::uint64_t k) {
  if (q < 2 || k < 1)
    throw Error(Errc::OutOfRange, "hypothesis report needs q >= 2 and k >= 1");
  const auto cls = classify_q(q);
  HypothesisReport report;
  report.q = q;
  report.k = k;

  const bool prime_power = cls.kind == QKind::PrimePower;
  const bool twice_odd = cls.kind == QKind::TwiceOddPrimePower;

  {
    HypothesisItem item{"sylow_fixed_points", false, ""};
    if (prime_power) {
      item.reason = "q is a prime power";
    } else if (k == 1 && q % 2 == 0) {
      std::string small;
      for (std::uint64_t p : primes_upto(q)) {
        const auto alpha = digit_sum(q, p);
        if (alpha <= 2)
          small += (small.empty() ? "" : ", ") + ("alpha_" + std::to_string(p) + " = " +
                                                  std::to_string(alpha));
      }
      item.applies = small.empty();
      item.reason = item.applies ? "k = 1, q even, every alpha_p(q) > 2"
                                 : "k = 1 and q even, but " + small;
    } else {
      item.applies = true;
      item.reason = k > 1 ? "q not a prime power, k > 1" : "q odd and not a prime power";
    }
    report.results.push_back(std::move(item));
  }

  {
    HypothesisItem item{"even_q_extension", false, ""};
    if (k != 1)
      item.reason = "only stated for k = 1";
    else if (q % 2 != 0)
      item.reason = "q is odd";
    else if (prime_power)
      item.reason = "q is a power of 2";
    else if (twice_odd)
      item.reason = "q is twice a power of an odd prime";
    else {
      item.applies = true;
      item.reason = "q even, not a power of 2, not twice an odd prime power";
    }
    report.results.push_back(std::move(item));
  }

  {
    HypothesisItem item{"prime_power_counterexample", prime_power, ""};
    item.reason = prime_power ? "q = " + std::to_string(cls.p) + "^" + std::to_string(cls.s)
                              : "q is not a prime power";
    if (prime_power)
      report.blockers.push_back(item.id);
    report.results.push_back(std::move(item));
  }

  {
    const bool applies = twice_odd && k == 1;
    HypothesisItem item{"twice_odd_prime_power_counterexample", applies, ""};
    if (applies)
      item.reason = "q = 2*" + std::to_string(cls.p) + "^" + std::to_string(cls.s) + ", k = 1";
    else if (twice_odd)
      item.reason = "q = 2p^s but k > 1";
    else
      item.reason = "q is not twice an odd prime power";
    if (applies)
      report.blockers.push_back(item.id);
    report.results.push_back(std::move(item));
  }

  if (!report.blockers.empty())
    report.verdict = Verdict::Counterexample;
  else if (report.results[0].applies || report.results[1].applies)
    report.verdict = Verdict::SectionExists;
  else
    report.verdict = Verdict::Undecided;
  return report;
}

// ---------------------------------------------------------------------------
// Degree ideals

DegreeIdeal noakes_generator(std::span<const BigInt> achievable_degrees) {
  if (std::find(achievable_degrees.begin(), achievable_degrees.end(), BigInt(1)) ==
      achievable_degrees.end())
    throw Error(Errc::InvalidArgument, "achievable degrees must include 1 (the identity)");
  BigInt g = 0;
  for (const auto& d : achievable_degrees) {
    const BigInt x = 1 - d;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  return DegreeIdeal{g};
}

namespace {

// Membership bitset over the window [-bound, bound].
class Window {
public:
  explicit Window(std::int64_t bound)
      : bound_(bound), width_(static_cast<std::size_t>(2 * bound + 1)), words_((width_ + 63) / 64 + 1, 0) {}

  std::size_t width() const { return width_; }
  std::size_t count() const { return count_; }
  std::size_t words() const { return (width_ + 63) / 64; }
  std::uint64_t word(std::size_t w) const { return words_[w]; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  bool insert(std::int64_t x) {
    const auto i = static_cast<std::size_t>(x + bound_);
    if (test(i))
      return false;
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
    ++count_;
    return true;
  }

  // 64 membership bits starting at position pos (zero past the end).
  std::uint64_t bits_from(std::size_t pos) const {
    const std::size_t w = pos / 64, s = pos % 64;
    if (w >= words())
      return 0;
    if (s == 0)
      return words_[w];
    return (words_[w] >> s) | (words_[w + 1] << (64 - s));
  }

  // Positions j < width - delta, as a mask for word w.
  std::uint64_t below(std::size_t w, std::size_t limit) const {
    const std::size_t lo = w * 64;
    if (lo >= limit)
      return 0;
    if (limit - lo >= 64)
      return ~std::uint64_t{0};
    return (std::uint64_t{1} << (limit - lo)) - 1;
  }

  std::set<std::int64_t> to_set() const {
    std::set<std::int64_t> out;
    for (std::size_t i = 0; i < width_; ++i) {
      if (test(i))
        out.insert(static_cast<std::int64_t>(i) - bound_);
    }
    return out;
  }

private:
  std::int64_t bound_;
  std::size_t width_;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

}  // namespace

std::set<std::int64_t> closure_oracle(const std::set<std::int64_t>& seed, std::int64_t bound) {
  if (bound < 1 || bound > 10000)
    throw Error(Errc::OutOfRange, "closure bound must lie in [1, 10^4]");
  Window set(bound);
  set.insert(0);
  for (std::int64_t s : seed) {
    if (s < -bound || s > bound)
      throw Error(Errc::OutOfRange, "seed element " + std::to_string(s) + " outside the bound");
    set.insert(s);
  }

  // The pair (x, x + delta) contributes the progression x + Z delta. A step
  // is skipped when the set is already delta-periodic inside the window,
  // since then every such progression (and every multiple step) is present.
  const std::size_t width = set.width();
  std::vector<char> class_done(width + 1, 0);
  std::vector<std::size_t> touched;
  bool changed = true;
  while (changed && set.count() < width) {
    changed = false;
    std::vector<std::size_t> periods;
    for (std::size_t delta = 1; delta < width && set.count() < width; ++delta) {
      if (std::any_of(periods.begin(), periods.end(), [&](std::size_t p) { return delta % p == 0; }))
        continue;
      const std::size_t limit = width - delta;
      bool periodic = true;
      for (std::size_t w = 0; w < set.words() && periodic; ++w)
        periodic = ((set.word(w) ^ set.bits_from(w * 64 + delta)) & set.below(w, limit)) == 0;
      if (periodic) {
        periods.push_back(delta);
        continue;
      }
      bool grew = false;
      for (std::size_t w = 0; w < set.words(); ++w) {
        std::uint64_t pairs = set.word(w) & set.bits_from(w * 64 + delta) & set.below(w, limit);
        while (pairs) {
          const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(pairs));
          pairs &= pairs - 1;
          const std::size_t r = j % delta;
          if (class_done[r])
            continue;
          class_done[r] = 1;
          touched.push_back(r);
          for (std::size_t i = r; i < width; i += delta)
            grew = set.insert(static_cast<std::int64_t>(i) - bound) || grew;
        }
      }
      for (std::size_t r : touched)
        class_done[r] = 0;
      touched.clear();
      if (grew) {
        changed = true;
        periods.clear();
      }
    }
  }
  return set.to_set();
}

}  // namespace sylow
