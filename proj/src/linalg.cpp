#include "symqm/linalg.hpp"

namespace symqm {

std::vector<Eigenspace> group_eigenspaces(const HermitianEigensystem<double>& es, double tol) {
  std::vector<Eigenspace> out;
  const Eigen::Index n = es.values.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && es.values(end) - es.values(end - 1) <= tol) ++end;
    Eigenspace space;
    space.value = es.values.segment(start, end - start).mean();
    space.basis = es.vectors.middleCols(start, end - start);
    out.push_back(std::move(space));
    start = end;
  }
  return out;
}

}  // namespace symqm
