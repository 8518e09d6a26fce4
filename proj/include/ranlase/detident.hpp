#pragma once

// Test support for the block-determinant identity
//   || delta_{pp'} 1 + A_p B_{p'} || = || 1 + sum_q B_q A_q ||,
// which underpins the short-time determinant reduction.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ranlase/errors.hpp"

namespace ranlase {

inline std::complex<double> det_block_lhs(const std::vector<Eigen::MatrixXcd>& A,
                                          const std::vector<Eigen::MatrixXcd>& B) {
    if (A.size() != B.size() || A.empty())
        throw DomainError("det_block_lhs: need equal, nonempty matrix sets");
    const int blocks = static_cast<int>(A.size());
    const int dim = static_cast<int>(A[0].rows());
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(blocks * dim, blocks * dim);
    for (int p = 0; p < blocks; ++p)
        for (int q = 0; q < blocks; ++q) {
            Eigen::MatrixXcd blk = A[static_cast<std::size_t>(p)] * B[static_cast<std::size_t>(q)];
            if (p == q) blk += Eigen::MatrixXcd::Identity(dim, dim);
            big.block(p * dim, q * dim, dim, dim) = blk;
        }
    return big.determinant();
}

inline std::complex<double> det_sum_rhs(const std::vector<Eigen::MatrixXcd>& A,
                                        const std::vector<Eigen::MatrixXcd>& B) {
    if (A.size() != B.size() || A.empty())
        throw DomainError("det_sum_rhs: need equal, nonempty matrix sets");
    const int dim = static_cast<int>(A[0].cols());
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
    for (std::size_t q = 0; q < A.size(); ++q) acc += B[q] * A[q];
    return acc.determinant();
}

}  // namespace ranlase
