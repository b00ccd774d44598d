#pragma once

#include <optional>
#include <string>

namespace lf {

// Outcome of one verification. first_failure is the lowest total degree at
// which the checked identity breaks (empty when everything matched), and
// precision_achieved is only set by residue-mode checks.
struct CheckReport {
  std::string check;
  bool pass = false;
  std::optional<long> first_failure;
  std::optional<int> precision_achieved;
  int truncation = 0;
  std::string details;

  static CheckReport ok(std::string name, int trunc, std::string det = "") {
    CheckReport r;
    r.check = std::move(name);
    r.pass = true;
    r.truncation = trunc;
    r.details = std::move(det);
    return r;
  }
  static CheckReport bad(std::string name, int trunc, long failure_degree, std::string det = "") {
    CheckReport r;
    r.check = std::move(name);
    r.pass = false;
    r.truncation = trunc;
    r.first_failure = failure_degree;
    r.details = std::move(det);
    return r;
  }
};

}  // namespace lf
