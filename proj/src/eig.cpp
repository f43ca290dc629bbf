#include "stokes/eig.hpp"

#include "stokes/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace stokes {

using SpMat = Eigen::SparseMatrix<double>;

SparseSym SparseSym::from_triplets(int dimension, const std::vector<Eigen::Triplet<double>>& entries) {
    if (dimension < 1) throw std::invalid_argument("matrix dimension must be positive");
    std::vector<Eigen::Triplet<double>> lower;
    lower.reserve(entries.size());
    for (const auto& t : entries) {
        if (t.row() < 0 || t.col() < 0 || t.row() >= dimension || t.col() >= dimension)
            throw std::out_of_range("triplet outside the matrix");
        if (t.row() >= t.col())
            lower.push_back(t);
        else
            lower.emplace_back(t.col(), t.row(), t.value());
    }
    SpMat m(dimension, dimension);
    m.setFromTriplets(lower.begin(), lower.end());
    m.makeCompressed();
    return SparseSym(std::move(m));
}

SparseSym SparseSym::from_full(const SpMat& full) {
    if (full.rows() != full.cols()) throw std::invalid_argument("matrix is not square");
    const SpMat transposed = full.transpose();
    const SpMat diff = full - transposed;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SpMat::InnerIterator it(diff, k); it; ++it)
            if (it.value() != 0.0) throw std::invalid_argument("matrix is not exactly symmetric");
    SpMat lower = full.triangularView<Eigen::Lower>();
    lower.makeCompressed();
    return SparseSym(std::move(lower));
}

SpMat SparseSym::full() const {
    SpMat f = lower_.selfadjointView<Eigen::Lower>();
    return f;
}

double SparseSym::coeff(int row, int col) const {
    return row >= col ? lower_.coeff(row, col) : lower_.coeff(col, row);
}

Eigen::VectorXd SparseSym::operator*(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = lower_.selfadjointView<Eigen::Lower>() * x;
    return y;
}

SparseSym SparseSym::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != dimension()) throw std::invalid_argument("permutation size");
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(lower_.nonZeros()));
    for (int k = 0; k < lower_.outerSize(); ++k)
        for (SpMat::InnerIterator it(lower_, k); it; ++it)
            entries.emplace_back(perm[static_cast<std::size_t>(it.row())],
                                 perm[static_cast<std::size_t>(it.col())], it.value());
    return from_triplets(dimension(), entries);
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kDenseLimit = 400;

Eigen::VectorXd apply(const SparseSym* B, const VectorXd& x) { return B ? (*B) * x : x; }

// Max absolute column sum; the symmetric matrix is reassembled from its lower triangle.
double norm1(const SparseSym& M) {
    const SpMat full = M.full();
    double best = 0.0;
    for (int c = 0; c < full.outerSize(); ++c) {
        double sum = 0.0;
        for (SpMat::InnerIterator it(full, c); it; ++it) sum += std::abs(it.value());
        best = std::max(best, sum);
    }
    return best;
}

// ||A x - lambda B x|| / ((||A||_1 + |lambda| ||B||_1) ||x||), B = I when null.
double relative_residual(const SparseSym& A, const SparseSym* B, double lambda, const VectorXd& x) {
    const VectorXd r = A * x - lambda * apply(B, x);
    const double scale = (norm1(A) + std::abs(lambda) * (B ? norm1(*B) : 1.0)) * x.norm();
    return scale > 0.0 ? r.norm() / scale : r.norm();
}

void check_definite(const SpMat& lower, const char* name) {
    Eigen::SimplicialLDLT<SpMat, Eigen::Lower> f(lower);
    if (f.info() != Eigen::Success || (f.vectorD().array() <= 0.0).any())
        throw IndefiniteMatrix(std::string(name) + " is not positive definite");
}

std::vector<EigenPair> dense_pairs(const SparseSym& A, const SparseSym* B, int m) {
    const MatrixXd a = MatrixXd(A.full());
    const MatrixXd b = B ? MatrixXd(B->full()) : MatrixXd::Identity(A.dimension(), A.dimension());
    if (Eigen::LLT<MatrixXd>(b).info() != Eigen::Success)
        throw IndefiniteMatrix("B is not positive definite");
    if (Eigen::LLT<MatrixXd>(a).info() != Eigen::Success)
        throw IndefiniteMatrix("A is not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> solver(a, b);
    if (solver.info() != Eigen::Success) throw SolverError("dense generalized eigensolver failed");
    std::vector<EigenPair> pairs;
    for (int k = 0; k < m; ++k) {
        EigenPair p;
        p.value = solver.eigenvalues()[k];
        p.vector = solver.eigenvectors().col(k);
        p.residual = relative_residual(A, B, p.value, p.vector);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

/// Block thick-restart Lanczos on Op = A^{-1} B, self-adjoint in the B inner product.
///
/// The basis V is kept B-orthonormal by two passes of classical Gram-Schmidt, and
/// the projected matrix T = V^T B Op V is read off the orthogonalization
/// coefficients (lower triangle only). The largest Ritz values theta of T are the
/// reciprocals of the wanted smallest eigenvalues.
class BlockLanczos {
public:
    BlockLanczos(const SparseSym& A, const SparseSym* B, int m, const EigOptions& options)
        : A_(A), B_(B), m_(m), options_(options), n_(A.dimension()), rng_(options.seed) {
        block_ = std::min(m, 4);
        ncv_ = std::min(n_ - 1, std::max(3 * m, m + 8 * block_ + 8));
        cap_ = options.max_iterations > 0
                   ? options.max_iterations
                   : static_cast<long>(std::ceil(10.0 * m * std::sqrt(static_cast<double>(n_))));
        solver_.compute(A.lower());
        if (solver_.info() != Eigen::Success || (solver_.vectorD().array() <= 0.0).any())
            throw IndefiniteMatrix("A is not positive definite");
        if (B) check_definite(B->lower(), "B");
    }

    std::vector<EigenPair> run();

private:
    VectorXd random_vector() {
        std::normal_distribution<double> gauss;
        VectorXd v(n_);
        for (int i = 0; i < n_; ++i) v[i] = gauss(rng_);
        return v;
    }

    MatrixXd apply_block(const MatrixXd& X) const {
        if (!B_) return X;
        MatrixXd Y(X.rows(), X.cols());
        for (int c = 0; c < X.cols(); ++c) Y.col(c) = (*B_) * VectorXd(X.col(c));
        return Y;
    }

    // Removes the components of w along columns [0, cols) and returns the coefficients.
    VectorXd orthogonalize(VectorXd& w, int cols) {
        VectorXd c = VectorXd::Zero(cols);
        for (int pass = 0; pass < 2; ++pass) {
            const VectorXd d = BV_.leftCols(cols).transpose() * w;
            w.noalias() -= V_.leftCols(cols) * d;
            c += d;
        }
        return c;
    }

    // Places a B-normalized w (orthogonal to [0, col)) into column col; refills on breakdown.
    void place(VectorXd w, int col, double reference_norm, double* beta) {
        VectorXd bw = apply(B_, w);
        double norm = std::sqrt(std::max(w.dot(bw), 0.0));
        *beta = norm;
        if (!(norm > 1e-10 * reference_norm)) {
            *beta = 0.0;
            for (int attempt = 0; attempt < 5; ++attempt) {
                w = random_vector();
                const double ref = std::sqrt(std::max(w.dot(apply(B_, w)), 0.0));
                orthogonalize(w, col);
                bw = apply(B_, w);
                norm = std::sqrt(std::max(w.dot(bw), 0.0));
                if (norm > 1e-8 * ref) break;
            }
        }
        V_.col(col) = w / norm;
        BV_.col(col) = bw / norm;
    }

    const SparseSym& A_;
    const SparseSym* B_;
    int m_;
    EigOptions options_;
    int n_;
    std::mt19937_64 rng_;
    int block_ = 1;
    int ncv_ = 0;
    long cap_ = 0;
    Eigen::SimplicialLDLT<SpMat, Eigen::Lower> solver_;
    MatrixXd V_;
    MatrixXd BV_;
};

std::vector<EigenPair> BlockLanczos::run() {
    const int b = block_;
    V_.setZero(n_, ncv_);
    BV_.setZero(n_, ncv_);
    MatrixXd T = MatrixXd::Zero(ncv_, ncv_);
    MatrixXd R(n_, b);  // unprocessed remainder of Op applied to the last block

    for (int col = 0; col < b; ++col) {
        VectorXd w = random_vector();
        const double ref = std::sqrt(w.dot(apply(B_, w)));
        orthogonalize(w, col);
        double beta = 0.0;
        place(std::move(w), col, ref, &beta);
    }

    long applications = 0;
    double ritz_tol = options_.tol;
    int start = 0;
    std::vector<double> best_residuals(static_cast<std::size_t>(m_), INFINITY);

    while (true) {
        for (int c = start; c < ncv_; ++c) {
            VectorXd w = solver_.solve(BV_.col(c));
            ++applications;
            const double ref = std::sqrt(std::max(w.dot(apply(B_, w)), 0.0));
            const int target = c + b;
            const int cols = std::min(target, ncv_);
            const VectorXd coeffs = orthogonalize(w, cols);
            for (int i = c; i < cols; ++i) T(i, c) = coeffs[i];
            if (target < ncv_) {
                double beta = 0.0;
                place(std::move(w), target, ref, &beta);
                T(target, c) = beta;
            } else {
                R.col(target - ncv_) = w;
            }
        }

        Eigen::SelfAdjointEigenSolver<MatrixXd> projected(T);  // reads the lower triangle
        const VectorXd& theta = projected.eigenvalues();
        const MatrixXd& Y = projected.eigenvectors();
        const MatrixXd RtBR = R.transpose() * apply_block(R);

        bool estimates_ok = true;
        for (int k = 0; k < m_; ++k) {
            const int idx = ncv_ - 1 - k;
            const VectorXd tail = Y.col(idx).tail(b);
            const double est = std::sqrt(std::max(tail.dot(RtBR * tail), 0.0)) / std::abs(theta[idx]);
            if (!(est <= ritz_tol)) estimates_ok = false;
        }

        const bool out_of_budget = applications >= cap_;
        if (estimates_ok || out_of_budget) {
            std::vector<EigenPair> pairs;
            for (int k = 0; k < m_; ++k) {
                const int idx = ncv_ - 1 - k;
                EigenPair p;
                if (!(theta[idx] > 0.0)) throw IndefiniteMatrix("pencil produced a nonpositive Ritz value");
                p.value = 1.0 / theta[idx];
                p.vector = V_ * Y.col(idx);
                pairs.push_back(std::move(p));
            }
            std::vector<VectorXd> vectors;
            for (auto& p : pairs) vectors.push_back(p.vector);
            vectors = b_orthonormalize(std::move(vectors), B_);
            bool all_ok = true;
            for (int k = 0; k < m_; ++k) {
                auto& p = pairs[static_cast<std::size_t>(k)];
                p.vector = std::move(vectors[static_cast<std::size_t>(k)]);
                p.residual = relative_residual(A_, B_, p.value, p.vector);
                best_residuals[static_cast<std::size_t>(k)] = p.residual;
                if (!(p.residual <= options_.tol)) all_ok = false;
            }
            if (all_ok) return pairs;
            if (out_of_budget) {
                std::ostringstream msg;
                msg << "eigensolver did not converge within " << cap_ << " operator applications";
                throw NonConvergence(msg.str(), best_residuals);
            }
            ritz_tol *= 0.1;
        }

        // Thick restart: keep the best Ritz vectors, continue from the remainder block.
        const int keep = std::min(ncv_ - 2 * b, m_ + std::max(1, (ncv_ - m_ - b) / 2));
        const MatrixXd Ykeep = Y.rightCols(keep);
        const MatrixXd tails = Ykeep.bottomRows(b);
        MatrixXd newV = V_ * Ykeep;
        MatrixXd newBV = BV_ * Ykeep;
        V_.leftCols(keep) = newV;
        BV_.leftCols(keep) = newBV;
        T.setZero();
        for (int i = 0; i < keep; ++i) T(i, i) = theta[ncv_ - keep + i];

        for (int r = 0; r < b; ++r) {
            VectorXd w = R.col(r);
            const double ref = std::sqrt(std::max(w.dot(apply(B_, w)), 0.0));
            orthogonalize(w, keep + r);
            double beta = 0.0;
            place(std::move(w), keep + r, std::max(ref, 1e-300), &beta);
        }
        // Coupling of the new block to the kept Ritz vectors: (q_r, R y_i)_B.
        const MatrixXd S = BV_.middleCols(keep, b).transpose() * R;
        const MatrixXd coupling = S * tails;  // b x keep
        for (int r = 0; r < b; ++r)
            for (int i = 0; i < keep; ++i) T(keep + r, i) = coupling(r, i);
        start = keep;
    }
}

std::vector<EigenPair> solve_pencil(const SparseSym& A, const SparseSym* B, int m,
                                    const EigOptions& options) {
    const int n = A.dimension();
    if (B && B->dimension() != n) throw std::invalid_argument("A and B differ in dimension");
    if (m < 1 || m > n) throw std::invalid_argument("requested eigenpair count out of range");
    if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    std::vector<EigenPair> pairs;
    if (n <= kDenseLimit || 4 * m > n)
        pairs = dense_pairs(A, B, m);
    else
        pairs = BlockLanczos(A, B, m, options).run();
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
    return pairs;
}

}  // namespace

std::vector<EigenPair> smallest_eigenpairs(const SparseSym& A, int m, const EigOptions& options) {
    return solve_pencil(A, nullptr, m, options);
}

std::vector<EigenPair> smallest_eigenpairs(const SparseSym& A, const SparseSym& B, int m,
                                           const EigOptions& options) {
    return solve_pencil(A, &B, m, options);
}

std::vector<Eigen::VectorXd> b_orthonormalize(std::vector<Eigen::VectorXd> vectors, const SparseSym* B) {
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        VectorXd& v = vectors[k];
        if (B && v.size() != B->dimension()) throw std::invalid_argument("vector length differs from B");
        const double original = std::sqrt(std::max(v.dot(apply(B, v)), 0.0));
        if (!(original > 0.0)) throw RankDeficiency("zero vector in the set");
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                const VectorXd bj = apply(B, vectors[j]);
                v -= bj.dot(v) * vectors[j];
            }
        }
        const double remaining = std::sqrt(std::max(v.dot(apply(B, v)), 0.0));
        if (!(remaining > 1e-10 * original)) {
            std::ostringstream msg;
            msg << "vector " << k << " is linearly dependent on its predecessors";
            throw RankDeficiency(msg.str());
        }
        v /= remaining;
    }
    return vectors;
}

}  // namespace stokes
