#pragma once

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "bloch/statistics.hpp"
#include "bloch/variety_tests.hpp"

namespace bloch {

inline constexpr const char* kToolVersion = "0.1.0";

inline uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "fnv1a64:unavailable";
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return std::string("fnv1a64:") + buf;
}

// Writes via a temp file in the same directory followed by a rename.
inline void atomic_write(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write to " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

inline nlohmann::json to_json(const TestRecord& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["verdict"] = to_string(r.verdict);
  j["method"] = to_string(r.method);
  j["witness"] = r.witness;
  if (r.probabilistic_bound) j["probabilistic_bound"] = *r.probabilistic_bound;
  if (r.conditional) j["conditional"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline nlohmann::json to_json(const TestReport& report) {
  nlohmann::json j;
  j["operator"] = report.operator_id;
  j["tool_version"] = report.tool_version;
  j["input_hash"] = report.input_hash;
  j["seed"] = report.seed;
  j["tests"] = nlohmann::json::array();
  for (const auto& t : report.tests) j["tests"].push_back(to_json(t));
  j["all_hold"] = report.all_hold();
  return j;
}

namespace detail {

inline std::vector<int> decode_m(int d, int N, size_t mi) {
  std::vector<int> r(static_cast<size_t>(d));
  for (int j = d - 1; j >= 0; --j) {
    r[static_cast<size_t>(j)] = static_cast<int>(mi % static_cast<size_t>(N));
    mi /= static_cast<size_t>(N);
  }
  return r;
}

}  // namespace detail

// Per-m count tables are embedded only for small grids; the summary fields
// are always present.
inline nlohmann::json to_json(const OverlapReport& rep, size_t full_counts_limit = 4096) {
  nlohmann::json j;
  j["dimension"] = rep.d;
  j["N"] = rep.N;
  j["bands"] = rep.Q;
  j["tau"] = rep.tau;
  j["rho"] = rep.rho;
  j["rho_tau_low"] = rep.rho_tau_low;
  j["rho_tau_high"] = rep.rho_tau_high;
  j["sup"] = {{"count", rep.sup_count},
              {"s", rep.sup_s},
              {"w", rep.sup_w},
              {"m", detail::decode_m(rep.d, rep.N, rep.sup_m)}};
  j["degeneracy"] = {{"count", rep.degeneracy_count}, {"fraction", rep.degeneracy_fraction}};
  nlohmann::json pairs = nlohmann::json::array();
  bool full = !rep.pairs.empty() && rep.pairs.front().counts.size() <= full_counts_limit;
  for (const auto& p : rep.pairs) {
    nlohmann::json pj;
    pj["s"] = p.s;
    pj["w"] = p.w;
    pj["sup_count"] = p.sup;
    pj["argmax_m"] = detail::decode_m(rep.d, rep.N, p.argmax_m);
    if (full) pj["counts"] = p.counts;
    pairs.push_back(std::move(pj));
  }
  if (!full) j["counts_omitted"] = true;
  j["pairs"] = std::move(pairs);
  nlohmann::json offs = nlohmann::json::array();
  for (const auto& o : rep.offsets) {
    offs.push_back({{"a", o.a},
                    {"tau", o.tau},
                    {"sup_count", o.sup_count},
                    {"s", o.s},
                    {"w", o.w},
                    {"argmax_m", detail::decode_m(rep.d, rep.N, o.argmax_m)},
                    {"total", o.total}});
  }
  j["offsets"] = std::move(offs);
  return j;
}

inline nlohmann::json to_json(const DecaySeries& series) {
  nlohmann::json j;
  j["tau"] = series.tau;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : series.rows) {
    j["rows"].push_back({{"N", row.N},
                         {"sup_count", row.sup_count},
                         {"rho", row.rho},
                         {"rho_tau_low", row.rho_tau_low},
                         {"rho_tau_high", row.rho_tau_high},
                         {"degeneracy_fraction", row.degeneracy_fraction}});
  }
  j["non_increasing"] = series.non_increasing;
  j["non_decaying_suspected"] = series.non_decaying_suspected;
  j["trend"] = series.non_decaying_suspected ? "non-decaying: period suspected"
               : series.non_increasing       ? "decreasing"
                                             : "mixed";
  return j;
}

inline std::string decay_csv(const DecaySeries& series) {
  std::ostringstream os;
  os << "N,sup_count,rho,rho_tau_low,rho_tau_high,degeneracy_fraction\n";
  char buf[40];
  for (const auto& row : series.rows) {
    os << row.N << "," << row.sup_count << ",";
    std::snprintf(buf, sizeof buf, "%.12g", row.rho);
    os << buf << ",";
    std::snprintf(buf, sizeof buf, "%.12g", row.rho_tau_low);
    os << buf << ",";
    std::snprintf(buf, sizeof buf, "%.12g", row.rho_tau_high);
    os << buf << ",";
    std::snprintf(buf, sizeof buf, "%.12g", row.degeneracy_fraction);
    os << buf << "\n";
  }
  return os.str();
}

}  // namespace bloch
