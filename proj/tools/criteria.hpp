#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lf/report.hpp"

namespace lf {

// One registered suite check.  `tag` groups checks for --only filtering
// (fgl, lt, groups, hkr, io); `run` computes everything and never prints.
struct Criterion {
  int number;
  std::string name;
  std::string tag;
  std::function<CheckReport(const std::string& corpus_dir)> run;
};

// fixed registration order; the suite and the acceptance runner both walk
// this list
const std::vector<Criterion>& acceptance_criteria();

// wraps run() so mathematical Errors become failing reports instead of
// aborting the whole suite; operational errors (missing corpus, caps) are
// rethrown
CheckReport run_criterion(const Criterion& c, const std::string& corpus_dir);

}  // namespace lf
