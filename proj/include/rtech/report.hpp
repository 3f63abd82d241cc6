#pragma once

// Uniform pass/fail reporting for the verification entry points.  Math
// failures are not exceptions: a failed identity lands in the report with a
// witness entry, and the caller decides what to do with it.

#include "rtech/qmatrix.hpp"

#include <string>
#include <vector>

namespace rtech {

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;  // witness or human-readable context
};

struct CheckReport {
  std::string subject;
  std::vector<CheckItem> items;

  bool all_pass() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }

  void add(std::string name, bool pass, std::string detail = "") {
    items.push_back({std::move(name), pass, std::move(detail)});
  }

  // Exact matrix comparison with a located witness on failure.
  void add_equal(std::string name, const QMatrix& lhs, const QMatrix& rhs) {
    auto diff = QMatrix::first_difference(lhs, rhs);
    if (!diff) {
      add(std::move(name), true);
      return;
    }
    std::string detail;
    if (diff->first < 0)
      detail = "shape mismatch";
    else
      detail = "first difference at (" + std::to_string(diff->first + 1) + ", " +
               std::to_string(diff->second + 1) + "): " + lhs.at(diff->first, diff->second).str() +
               " vs " + rhs.at(diff->first, diff->second).str();
    add(std::move(name), false, std::move(detail));
  }

  void add_zero(std::string name, const QMatrix& m) {
    add_equal(std::move(name), m, QMatrix(m.row_legs(), m.col_legs()));
  }

  void add_scalar_equal(std::string name, const QScalar& lhs, const QScalar& rhs) {
    if (lhs == rhs)
      add(std::move(name), true);
    else
      add(std::move(name), false, lhs.str() + " vs " + rhs.str());
  }

  void merge(const CheckReport& other) {
    for (const auto& i : other.items) {
      CheckItem copy = i;
      if (!other.subject.empty()) copy.name = other.subject + ": " + copy.name;
      items.push_back(std::move(copy));
    }
  }
};

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["subject"] = r.subject;
  j["pass"] = r.all_pass();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& i : r.items) {
    nlohmann::ordered_json e;
    e["name"] = i.name;
    e["pass"] = i.pass;
    if (!i.detail.empty()) e["detail"] = i.detail;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j;
}

}  // namespace rtech
