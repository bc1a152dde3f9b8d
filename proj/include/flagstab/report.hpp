#ifndef FLAGSTAB_REPORT_HPP
#define FLAGSTAB_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

namespace flagstab {

// Accumulates named violations.  Verification routines return a Report
// instead of throwing so that negative fixtures can be inspected.
struct Report {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
  void fail(std::string what) { problems.push_back(std::move(what)); }
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& p : other.problems) problems.push_back(prefix + p);
  }
};

inline std::ostream& operator<<(std::ostream& os, const Report& r) {
  if (r.ok()) return os << "ok\n";
  for (const auto& p : r.problems) os << "violation: " << p << "\n";
  return os;
}

}  // namespace flagstab

#endif
