#pragma once

#include <cstdint>

namespace revkit {

// Precision/recall/F with the fake side as the positive class. Undefined
// ratios (empty denominator) are reported as 0.
struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t tn = 0;
  int64_t fn = 0;
  int64_t skipped_short = 0;  // reviews excluded by the minimum-length policy
};

inline double f_score(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

inline EvalReport make_report(int64_t tp, int64_t fp, int64_t tn, int64_t fn,
                              int64_t skipped_short = 0) {
  EvalReport r;
  r.tp = tp;
  r.fp = fp;
  r.tn = tn;
  r.fn = fn;
  r.skipped_short = skipped_short;
  r.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f_score = f_score(r.precision, r.recall);
  return r;
}

}  // namespace revkit
