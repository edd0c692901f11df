#pragma once

// Named numerical claims, grouped into suites for the `verify` command.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace twlab::verify {

struct Claim {
  std::string id;
  std::string statement;  // what is asserted
  double value = 0;       // the computed quantity the statement is about
  bool pass = false;
  std::string detail;
};

enum class Suite { constants, monotonicity, stochastic, all };

Suite suite_from_name(const std::string& name);

struct VerifyOptions {
  std::size_t d_trunc = 50;
  std::size_t segments = 10;
  std::size_t trials = 10000;  // stochastic sample count
  std::uint64_t seed = 0;
};

std::vector<Claim> constants_claims(const VerifyOptions& opt);
std::vector<Claim> monotonicity_claims(const VerifyOptions& opt);
std::vector<Claim> stochastic_claims(const VerifyOptions& opt);
std::vector<Claim> run_suite(Suite suite, const VerifyOptions& opt);

/// Text: `[id] statement : PASS|FAIL  value=...`. CSV: id,statement,value,pass,detail.
void write_claims(std::ostream& out, const std::vector<Claim>& claims, bool csv);

bool all_pass(const std::vector<Claim>& claims);

}  // namespace twlab::verify
