#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace arctest {

inline constexpr const char* kToolVersion = "0.3.0";

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

struct Claim {
  std::string id;
  std::string anchor;
  Status status = Status::Fail;
  std::string reason;
  nlohmann::json witness = nlohmann::json::object();
  double elapsed_ms = 0;
};

/// What a check returns before timing is attached.
struct Outcome {
  Outcome(bool p, nlohmann::json w = nlohmann::json::object(), std::string r = {})
      : pass(p), witness(std::move(w)), reason(std::move(r)) {}

  bool pass;
  nlohmann::json witness;
  std::string reason;
};

/// Runs `f` (returning Outcome) and records its wall time.
template <class F>
Claim check(std::string id, std::string anchor, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = f();
  const auto stop = std::chrono::steady_clock::now();
  Claim c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.status = o.pass ? Status::Pass : Status::Fail;
  c.reason = std::move(o.reason);
  c.witness = std::move(o.witness);
  c.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return c;
}

inline Claim skipped(std::string id, std::string anchor, std::string reason) {
  Claim c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.status = Status::Skipped;
  c.reason = std::move(reason);
  return c;
}

/// FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class Report {
 public:
  Report() = default;
  explicit Report(const nlohmann::json& inputs) : digest_(fnv1a_hex(inputs.dump())) {}

  void add(Claim c) {
    for (const Claim& x : claims_) {
      if (x.id == c.id) throw std::logic_error("duplicate claim id " + c.id);
    }
    if (c.status == Status::Skipped && c.reason.empty()) throw std::logic_error("skip without reason: " + c.id);
    claims_.push_back(std::move(c));
  }

  void add_all(std::vector<Claim> cs) {
    for (Claim& c : cs) add(std::move(c));
  }

  const std::vector<Claim>& claims() const noexcept { return claims_; }
  const std::string& input_digest() const noexcept { return digest_; }

  /// No claim failed; skipped claims do not count against the report.
  bool passed() const {
    for (const Claim& c : claims_) {
      if (c.status == Status::Fail) return false;
    }
    return true;
  }

  nlohmann::json to_json(bool with_timing = true) const {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["input_digest"] = digest_;
    j["claims"] = nlohmann::json::array();
    for (const Claim& c : claims_) {
      nlohmann::json e{{"claim", c.id}, {"anchor", c.anchor}, {"status", to_string(c.status)}, {"witness", c.witness}};
      if (!c.reason.empty()) e["reason"] = c.reason;
      if (with_timing) e["elapsed_ms"] = c.elapsed_ms;
      j["claims"].push_back(std::move(e));
    }
    j["passed"] = passed();
    return j;
  }

  /// One line per claim.
  void summary(std::ostream& os) const {
    for (const Claim& c : claims_) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%10.1f ms", c.elapsed_ms);
      os << (c.status == Status::Pass ? "PASS " : c.status == Status::Fail ? "FAIL " : "SKIP ") << ms << "  "
         << c.id;
      if (!c.reason.empty()) os << "  (" << c.reason << ")";
      os << '\n';
    }
  }

 private:
  std::string digest_ = fnv1a_hex("");
  std::vector<Claim> claims_;
};

}  // namespace arctest
