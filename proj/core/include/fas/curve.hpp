// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fas {

struct CurvePoint {
  double s_th = 0.0;
  double value = 0.0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
};

// A threshold grid with cdf (or rate) values. `metadata_json` is a JSON
// object describing how the curve was produced.
struct CdfCurve {
  std::string label;
  std::vector<CurvePoint> points;
  std::string metadata_json = "{}";

  bool has_ci() const;
  // Sorted thresholds, ci bounds bracketing values; throws DomainError.
  // `probability` additionally requires values in [0, 1].
  void validate(bool probability = true) const;
};

// CSV layout: one "# <json>" metadata line, a header row, then rows printed
// with %.17g so a read-back is bit-exact.
void write_csv(const CdfCurve& curve, std::ostream& os);
CdfCurve read_csv(std::istream& is);

}  // namespace fas
