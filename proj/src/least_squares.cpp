#include "utm/least_squares.hpp"

#include <sstream>

#include "utm/errors.hpp"

namespace utm {

LeastSquaresResult solve_least_squares(Eigen::MatrixXd A, Eigen::VectorXd b) {
  if (A.rows() != b.size() || A.cols() == 0)
    throw InvalidArgument("least-squares system has inconsistent shape");
  if (A.rows() < A.cols())
    throw InvalidArgument("least-squares system is underdetermined");
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double s = A.row(i).lpNorm<Eigen::Infinity>();
    if (s > 0.0) {
      A.row(i) /= s;
      b(i) /= s;
    }
  }
  if (!A.allFinite() || !b.allFinite())
    throw RankDeficient("collocation matrix contains non-finite entries");
  LeastSquaresResult r;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  r.sigma_max = sv(0);
  r.sigma_min = sv(sv.size() - 1);
  if (!(r.sigma_min >= 1e-12 * r.sigma_max)) {
    std::ostringstream os;
    os.precision(3);
    os << "smallest singular value " << r.sigma_min << " is below 1e-12 x largest "
       << r.sigma_max;
    throw RankDeficient(os.str());
  }
  r.x = A.colPivHouseholderQr().solve(b);
  r.residual = (A * r.x - b).norm();
  return r;
}

}  // namespace utm
