/*
 Copyright 2026 The mpftc authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "mpftc/lqr.hpp"

#include <Eigen/Eigenvalues>

#include <complex>
#include <stdexcept>

namespace mpftc {

MatrixXd care(const MatrixXd& A, const MatrixXd& B, const MatrixXd& Q,
              const MatrixXd& R) {
  const int n = static_cast<int>(A.rows());
  const MatrixXd Rinv = R.inverse();

  MatrixXd H(2 * n, 2 * n);
  H << A, -B * Rinv * B.transpose(), -Q, -A.transpose();

  // Stable invariant subspace via the eigenvector basis.
  Eigen::EigenSolver<MatrixXd> es(H);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("care: eigen decomposition failed");
  }
  Eigen::MatrixXcd basis(2 * n, n);
  int found = 0;
  for (int i = 0; i < 2 * n && found < n; ++i) {
    if (es.eigenvalues()(i).real() < 0.0) {
      basis.col(found++) = es.eigenvectors().col(i);
    }
  }
  if (found != n) {
    throw std::runtime_error("care: stable subspace has wrong dimension");
  }
  const Eigen::MatrixXcd X1 = basis.topRows(n);
  const Eigen::MatrixXcd X2 = basis.bottomRows(n);
  const Eigen::MatrixXcd Pc = X2 * X1.fullPivLu().solve(
                                       Eigen::MatrixXcd::Identity(n, n));
  MatrixXd P = Pc.real();
  P = 0.5 * (P + P.transpose()).eval();

  const double res =
      (A.transpose() * P + P * A - P * B * Rinv * B.transpose() * P + Q)
          .norm();
  if (!(res <= 1e-6 * (1.0 + P.norm()))) {
    throw std::runtime_error("care: residual check failed");
  }
  return P;
}

MatrixXd lqr_gain(const MatrixXd& A, const MatrixXd& B, const MatrixXd& Q,
                  const MatrixXd& R) {
  const MatrixXd P = care(A, B, Q, R);
  return R.inverse() * B.transpose() * P;
}

MatrixXd dare(const MatrixXd& A, const MatrixXd& B, const MatrixXd& Q,
              const MatrixXd& R) {
  // Structure-preserving doubling: Ak -> Ak (I + Gk Hk)^-1 Ak and the
  // companion updates; converges quadratically for stabilizable pairs.
  const int n = static_cast<int>(A.rows());
  MatrixXd Ak = A;
  MatrixXd Gk = B * R.inverse() * B.transpose();
  MatrixXd Hk = Q;
  const MatrixXd I = MatrixXd::Identity(n, n);
  for (int it = 0; it < 100; ++it) {
    const MatrixXd W = I + Gk * Hk;
    const Eigen::PartialPivLU<MatrixXd> lu(W);
    const MatrixXd W1 = lu.solve(Ak);                 // (I + G H)^-1 A
    const MatrixXd W2 = lu.solve(Gk);                 // (I + G H)^-1 G
    const MatrixXd Hn = Hk + Ak.transpose() * Hk * W1;
    const MatrixXd Gn = Gk + Ak * W2 * Ak.transpose();
    const MatrixXd An = Ak * W1;
    const double delta = (Hn - Hk).norm();
    Ak = An;
    Gk = Gn;
    Hk = 0.5 * (Hn + Hn.transpose()).eval();
    if (delta <= 1e-14 * (1.0 + Hk.norm())) {
      const double res = (Hk - A.transpose() * Hk * A + A.transpose() * Hk * B *
                                  (R + B.transpose() * Hk * B)
                                      .ldlt()
                                      .solve(B.transpose() * Hk * A) -
                          Q)
                             .norm();
      if (!(res <= 1e-6 * (1.0 + Hk.norm()))) {
        throw std::runtime_error("dare: residual check failed");
      }
      return Hk;
    }
  }
  throw std::runtime_error("dare: doubling iteration did not converge");
}

MatrixXd lqr_gain_discrete(const MatrixXd& A, const MatrixXd& B,
                           const MatrixXd& Q, const MatrixXd& R) {
  const MatrixXd P = dare(A, B, Q, R);
  return (R + B.transpose() * P * B).ldlt().solve(B.transpose() * P * A);
}

MatrixXd solve_discrete_lyapunov(const MatrixXd& Acl, const MatrixXd& Q) {
  const int n = static_cast<int>(Acl.rows());
  const Eigen::VectorXcd ev = Acl.eigenvalues();
  for (int i = 0; i < n; ++i) {
    if (std::abs(ev(i)) >= 1.0) {
      throw std::runtime_error("solve_discrete_lyapunov: Acl not Schur stable");
    }
  }
  // Column-major vec: vec(A' P A) = kron(A', A') vec(P), block (i, j) of
  // kron(A', A') is A(j, i) * A'.
  MatrixXd Kron(n * n, n * n);
  const MatrixXd At = Acl.transpose();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Kron.block(i * n, j * n, n, n) = Acl(j, i) * At;
    }
  }
  const MatrixXd lhs = MatrixXd::Identity(n * n, n * n) - Kron;
  const Eigen::Map<const VectorXd> qvec(Q.data(), n * n);
  const VectorXd pvec = lhs.partialPivLu().solve(qvec);
  MatrixXd P = Eigen::Map<const MatrixXd>(pvec.data(), n, n);
  return 0.5 * (P + P.transpose()).eval();
}

MatrixXd terminal_cost_lyapunov(const MatrixXd& Acl, const MatrixXd& Q,
                                const MatrixXd& R, const MatrixXd& K) {
  const MatrixXd Qtot = Q + K.transpose() * R * K;
  const MatrixXd P = solve_discrete_lyapunov(Acl, Qtot);
  const double res = (P - Acl.transpose() * P * Acl - Qtot).norm();
  if (!(res <= 1e-8 * (1.0 + P.norm()))) {
    throw std::runtime_error("terminal_cost_lyapunov: residual too large");
  }
  return P;
}

MatrixXd expm(const MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  MatrixXd As = A;
  if (norm > 0.5) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / 0.5))));
    As /= std::pow(2.0, squarings);
  }
  // Pade(6) approximant.
  const double c[] = {1.0,         0.5,           5.0 / 44.0,  1.0 / 66.0,
                      1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd A2 = As * As;
  const MatrixXd A4 = A2 * A2;
  const MatrixXd A6 = A4 * A2;
  const MatrixXd U = As * (c[1] * I + c[3] * A2 + c[5] * A4);
  const MatrixXd V = c[0] * I + c[2] * A2 + c[4] * A4 + c[6] * A6;
  MatrixXd F = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < squarings; ++i) F = F * F;
  return F;
}

void zoh_discretize(const MatrixXd& A, const MatrixXd& B, double ts,
                    MatrixXd& Ad, MatrixXd& Bd) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(B.cols());
  MatrixXd M = MatrixXd::Zero(n + m, n + m);
  M.topLeftCorner(n, n) = A * ts;
  M.topRightCorner(n, m) = B * ts;
  const MatrixXd E = expm(M);
  Ad = E.topLeftCorner(n, n);
  Bd = E.topRightCorner(n, m);
}

}  // namespace mpftc
