#include "test_support.hpp"

#include <boost/math/distributions/chi_squared.hpp>

namespace symqm::oracle {

double chi_square_quantile(double p, int dof) {
  const boost::math::chi_squared dist(dof);
  return boost::math::quantile(dist, p);
}

}  // namespace symqm::oracle
