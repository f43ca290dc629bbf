#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <vector>

namespace stokes {

/// Sparse symmetric matrix; only the lower triangle is stored.
class SparseSym {
public:
    SparseSym() = default;

    /// Builds from coordinate entries of either triangle; an entry (r, c) and its
    /// mirror (c, r) address the same slot and duplicates are summed.
    static SparseSym from_triplets(int dimension, const std::vector<Eigen::Triplet<double>>& entries);

    /// Builds from a full (both triangles) matrix; throws unless it is exactly symmetric.
    static SparseSym from_full(const Eigen::SparseMatrix<double>& full);

    int dimension() const { return static_cast<int>(lower_.rows()); }
    const Eigen::SparseMatrix<double>& lower() const { return lower_; }
    Eigen::SparseMatrix<double> full() const;

    double coeff(int row, int col) const;
    Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;

    /// P A P^T for the permutation sending index k to perm[k].
    SparseSym permuted(const std::vector<int>& perm) const;

private:
    explicit SparseSym(Eigen::SparseMatrix<double> lower) : lower_(std::move(lower)) {}
    Eigen::SparseMatrix<double> lower_;
};

struct EigenPair {
    double value = 0.0;
    Eigen::VectorXd vector;
    /// Normwise relative residual ||A x - value B x|| / ((||A||_1 + |value| ||B||_1) ||x||),
    /// the backward error of the pair; Euclidean vector norms.
    double residual = 0.0;
};

struct EigOptions {
    double tol = 1e-8;
    std::uint64_t seed = 20250101;
    /// Cap on operator applications; 0 selects 10 m sqrt(dimension).
    long max_iterations = 0;
};

/// The m smallest eigenpairs of A x = lambda x, A symmetric positive definite.
std::vector<EigenPair> smallest_eigenpairs(const SparseSym& A, int m, const EigOptions& options = {});

/// The m smallest eigenpairs of A x = lambda B x with A and B symmetric positive
/// definite. Vectors are B-orthonormal and values nondecreasing.
std::vector<EigenPair> smallest_eigenpairs(const SparseSym& A, const SparseSym& B, int m,
                                           const EigOptions& options = {});

/// Gram-Schmidt in the B inner product (identity when B is null).
/// Throws RankDeficiency when the set is linearly dependent.
std::vector<Eigen::VectorXd> b_orthonormalize(std::vector<Eigen::VectorXd> vectors,
                                              const SparseSym* B = nullptr);

}  // namespace stokes
