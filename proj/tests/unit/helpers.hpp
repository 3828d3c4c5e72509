#pragma once

#include <random>
#include <string>
#include <vector>

#include "rws/documents.hpp"
#include "rws/fixtures.hpp"

namespace testing {

inline rws::ProblemInstance fixture(const char* name) { return rws::benchmark_case(name).instance(); }

// Rows of one-character shift names; '-' or '_' is the day off.
inline rws::Schedule grid(const rws::ProblemInstance& inst, const std::vector<std::string>& rows) {
  rws::Schedule s(inst.shape(), inst.shifts().day_off());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const char c = rows[i][j];
      if (c != '-' && c != '_') s.set(static_cast<int>(i) + 1, static_cast<int>(j) + 1, inst.shifts().id_of(std::string(1, c)));
    }
  return s;
}

inline rws::Json small_doc(int n, int w, std::vector<std::vector<int>> req, rws::Json forbidden,
                           std::vector<std::pair<int, int>> runs, std::pair<int, int> work) {
  static const char* names[] = {"D", "A", "N", "E"};
  rws::Json doc;
  const std::size_t m = req.size() + 1;
  rws::Json shifts = rws::Json::array(), rl = rws::Json::object();
  for (std::size_t k = 0; k + 1 < m; ++k) {
    shifts.push_back({{"name", names[k]}});
    rl[names[k]] = {{"min", runs[k].first}, {"max", runs[k].second}};
  }
  shifts.push_back({{"name", "-"}, {"dayOff", true}});
  rl["-"] = {{"min", runs.back().first}, {"max", runs.back().second}};
  doc["shifts"] = shifts;
  doc["employees"] = n;
  doc["weekLength"] = w;
  doc["requirements"] = req;
  doc["forbiddenSequences"] = forbidden;
  doc["runLength"] = rl;
  doc["workBlock"] = {{"min", work.first}, {"max", work.second}};
  return doc;
}

// P2's shifts and forbidden changes with the tighter run bounds of the
// three-shift term example (D 2-6, A 2-5, N 2-4).
inline rws::ProblemInstance term_example() {
  auto doc = rws::benchmark_case("p2").document.at("instance");
  doc["runLength"]["D"]["max"] = 6;
  doc["runLength"]["A"]["max"] = 5;
  doc["runLength"]["N"]["max"] = 4;
  return rws::instance_from_json(doc);
}

inline std::vector<std::string> term_strings(const std::vector<rws::Term>& terms, const rws::ShiftAlphabet& shifts) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(rws::term_string(t, shifts));
  return out;
}

// A random small instance that passes the instance invariants. `work_shifts`
// is m - 1.
inline rws::ProblemInstance random_instance(std::mt19937& rng, int work_shifts, int n, int w) {
  static const char* names[] = {"D", "A", "N"};
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    std::vector<std::vector<int>> req(work_shifts, std::vector<int>(w, 0));
    for (int j = 0; j < w; ++j) {
      int left = pick(0, n);
      for (int k = 0; k < work_shifts; ++k) {
        const int r = k + 1 == work_shifts ? left : pick(0, left);
        req[k][j] = r;
        left -= r;
      }
    }
    std::vector<std::pair<int, int>> runs;
    for (int k = 0; k < work_shifts; ++k) {
      const int lo = pick(1, 2);
      runs.push_back({lo, lo + pick(0, 4)});
    }
    const int off_lo = pick(1, 2);
    runs.push_back({off_lo, off_lo + pick(0, 3)});
    const int wlo = pick(1, 3);
    rws::Json forbidden = rws::Json::array();
    for (int e = 0; e < work_shifts; ++e)
      for (int f = 0; f < work_shifts; ++f)
        if (e != f && pick(0, 3) == 0) forbidden.push_back({names[e], names[f]});
    try {
      return rws::instance_from_json(small_doc(n, w, req, forbidden, runs, {wlo, wlo + pick(0, 5)}));
    } catch (const rws::InstanceError&) {
    }
  }
}

}  // namespace testing
