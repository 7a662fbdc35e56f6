// SPDX-License-Identifier: Apache-2.0
#include "fas/curve.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fas/error.hpp"

namespace fas {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool CdfCurve::has_ci() const {
  for (const auto& p : points) {
    if (p.ci_low || p.ci_high) return true;
  }
  return false;
}

void CdfCurve::validate(bool probability) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (i > 0 && !(p.s_th > points[i - 1].s_th)) {
      throw DomainError("CdfCurve '" + label + "': thresholds not strictly increasing");
    }
    if (probability && !(p.value >= 0.0 && p.value <= 1.0)) {
      throw DomainError("CdfCurve '" + label + "': value outside [0, 1]");
    }
    if ((p.ci_low && *p.ci_low > p.value) || (p.ci_high && *p.ci_high < p.value)) {
      throw DomainError("CdfCurve '" + label + "': ci does not bracket value");
    }
  }
}

void write_csv(const CdfCurve& curve, std::ostream& os) {
  nlohmann::json meta = nlohmann::json::parse(curve.metadata_json);
  meta["label"] = curve.label;
  os << "# " << meta.dump() << '\n';
  const bool ci = curve.has_ci();
  os << (ci ? "s_th,value,ci_low,ci_high\n" : "s_th,value\n");
  for (const auto& p : curve.points) {
    os << fmt17(p.s_th) << ',' << fmt17(p.value);
    if (ci) {
      os << ',' << (p.ci_low ? fmt17(*p.ci_low) : "") << ',' << (p.ci_high ? fmt17(*p.ci_high) : "");
    }
    os << '\n';
  }
}

CdfCurve read_csv(std::istream& is) {
  CdfCurve c;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto meta = nlohmann::json::parse(line.substr(1));
      if (meta.contains("label")) {
        c.label = meta["label"].get<std::string>();
        meta.erase("label");
      }
      c.metadata_json = meta.dump();
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() < 2) throw ConfigError("read_csv: malformed row '" + line + "'");
    CurvePoint p;
    p.s_th = std::stod(cells[0]);
    p.value = std::stod(cells[1]);
    if (cells.size() >= 4) {
      if (!cells[2].empty()) p.ci_low = std::stod(cells[2]);
      if (!cells[3].empty()) p.ci_high = std::stod(cells[3]);
    }
    c.points.push_back(p);
  }
  return c;
}

}  // namespace fas
