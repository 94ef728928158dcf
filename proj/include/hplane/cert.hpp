#pragma once

#include <string>
#include <vector>

namespace hplane {

/// A named check with its measured residual and the tolerance it was held to.
struct Certification {
  std::string name;
  bool ok = false;
  double residual = 0.0;
  double tol = 0.0;
  std::string detail;
};

inline Certification make_cert(std::string name, double residual, double tol, std::string detail = {}) {
  return {std::move(name), residual <= tol, residual, tol, std::move(detail)};
}

inline bool all_ok(const std::vector<Certification>& certs) {
  for (const auto& c : certs) {
    if (!c.ok) return false;
  }
  return true;
}

}  // namespace hplane
