#include "fibkit/report.hpp"

#include <cstdio>

namespace fibkit::report {

std::string point_text(const verify::Assignment& a) {
  std::string s;
  for (const auto& [k, v] : a)
    s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s;
}

std::string seed_text(const seq::Seed& s) { return to_decimal(s.g0) + "," + to_decimal(s.g1); }

namespace {

Json seed_json(const seq::Seed& s) { return Json::array({to_decimal(s.g0), to_decimal(s.g1)}); }

Json failure_json(const verify::Failure& f, verify::Mode mode) {
  Json point = Json::object();
  for (const auto& [k, v] : f.point)
    point[k] = v;
  Json j;
  j["point"] = std::move(point);
  j["seed"] = f.seed ? seed_json(*f.seed) : Json(nullptr);
  if (mode == verify::Mode::Symbolic) {
    j["residual"] = f.residual;
  } else {
    j["lhs"] = to_decimal(f.lhs);
    j["rhs"] = to_decimal(f.rhs);
    j["difference"] = to_decimal(BigInt(f.lhs - f.rhs));
  }
  return j;
}

std::string status(const verify::VerifyReport& r) { return r.passed() ? "PASS" : "FAIL"; }

} // namespace

Json to_json(const verify::VerifyReport& r, bool include_timing) {
  Json j;
  j["version"] = kSchemaVersion;
  j["identity"] = r.identity;
  j["paper_tag"] = r.paper_tag;
  j["mode"] = std::string(verify::mode_name(r.mode));
  if (!r.detail.empty())
    j["detail"] = r.detail;

  Json grid = Json::object();
  if (r.mode == verify::Mode::Symbolic) {
    Json fixed = Json::object();
    for (const auto& [k, v] : r.fixed)
      fixed[k] = v;
    grid["fixed"] = std::move(fixed);
  } else {
    Json ranges = Json::object();
    for (const auto& [k, range] : r.ranges)
      ranges[k] = Json::array({range.lo, range.hi});
    grid["ranges"] = std::move(ranges);
    Json seeds = Json::array();
    for (const auto& s : r.seeds)
      seeds.push_back(seed_json(s));
    grid["seeds"] = std::move(seeds);
  }
  j["grid"] = std::move(grid);
  j["total"] = r.total;
  j["status"] = status(r);
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(failure_json(f, r.mode));
  j["failures"] = std::move(failures);
  j["elapsed_ms"] = include_timing ? Json(r.elapsed_ms) : Json(nullptr);
  return j;
}

Json to_json(const std::vector<verify::VerifyReport>& reports, bool include_timing) {
  Json j;
  j["version"] = kSchemaVersion;
  bool ok = true;
  Json list = Json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    list.push_back(to_json(r, include_timing));
  }
  j["status"] = ok ? "PASS" : "FAIL";
  j["reports"] = std::move(list);
  return j;
}

std::string csv_header() { return "identity,point,seed,lhs,rhs,status\n"; }

std::string to_csv_rows(const verify::VerifyReport& r) {
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  if (r.passed())
    return r.identity + ",,,,,PASS\n";
  std::string out;
  for (const auto& f : r.failures) {
    const std::string seed = f.seed ? quote(seed_text(*f.seed)) : "";
    if (r.mode == verify::Mode::Symbolic)
      out += r.identity + "," + quote(point_text(f.point)) + "," + seed + "," + quote(f.residual) + ",0,FAIL\n";
    else
      out += r.identity + "," + quote(point_text(f.point)) + "," + seed + "," + to_decimal(f.lhs) + "," +
             to_decimal(f.rhs) + ",FAIL\n";
  }
  return out;
}

std::string to_human(const verify::VerifyReport& r, std::size_t max_failures) {
  std::string out = "[" + status(r) + "] " + r.identity;
  if (!r.paper_tag.empty())
    out += " (" + r.paper_tag + ")";
  out += " " + std::string(verify::mode_name(r.mode));
  if (!r.detail.empty())
    out += " [" + r.detail + "]";
  if (!r.fixed.empty())
    out += " at " + point_text(r.fixed);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f ms", r.elapsed_ms);
  const char* unit = r.mode == verify::Mode::Symbolic ? " parity cases" : " points";
  out += ": " + std::to_string(r.total) + unit + ", " + std::to_string(r.failures.size()) + " failures, " + buf + "\n";
  for (std::size_t i = 0; i < r.failures.size() && i < max_failures; ++i) {
    const auto& f = r.failures[i];
    out += "  " + point_text(f.point);
    if (f.seed)
      out += " seed=(" + seed_text(*f.seed) + ")";
    if (r.mode == verify::Mode::Symbolic)
      out += " residual: " + f.residual + "\n";
    else
      out += " lhs=" + to_decimal(f.lhs) + " rhs=" + to_decimal(f.rhs) + " diff=" + to_decimal(BigInt(f.lhs - f.rhs)) +
             "\n";
  }
  if (r.failures.size() > max_failures)
    out += "  ... " + std::to_string(r.failures.size() - max_failures) + " more\n";
  return out;
}

} // namespace fibkit::report
