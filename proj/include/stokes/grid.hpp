#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace stokes {

/// Grid coordinates of a node in the bounding box, 0 <= i <= nx, 0 <= j <= ny.
struct Node {
    int i = 0;
    int j = 0;
};

/// A planar open set approximated by the interior nodes of a uniform grid.
///
/// The bounding box holds (nx+1) x (ny+1) nodes with spacing h and lower-left
/// corner (x0, y0). Nodes on the bounding-box border are never interior, so
/// every interior node has its four neighbours inside the box. Interior nodes
/// are numbered row by row (i fastest); fields store one value per interior
/// node and are implicitly zero everywhere else.
class GriddedDomain {
public:
    GriddedDomain(int nx, int ny, double h, double x0, double y0,
                  std::vector<bool> mask, double measure, std::string shape);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double h() const { return h_; }
    double x0() const { return x0_; }
    double y0() const { return y0_; }
    /// |Omega|: exact for rectangles, interior count times h^2 otherwise.
    double measure() const { return measure_; }
    /// Quadrature measure of the indicator of Omega, interior count times h^2.
    double discrete_measure() const { return static_cast<double>(interior_count()) * h_ * h_; }
    const std::string& shape() const { return shape_; }

    int interior_count() const { return static_cast<int>(nodes_.size()); }
    bool interior(int i, int j) const { return index(i, j) >= 0; }
    /// Interior index of node (i, j), or -1 when the node is outside Omega or the box.
    int index(int i, int j) const {
        if (i < 0 || j < 0 || i > nx_ || j > ny_) return -1;
        return index_[static_cast<std::size_t>(j) * (nx_ + 1) + i];
    }
    Node node(int k) const { return nodes_[static_cast<std::size_t>(k)]; }
    const std::vector<Node>& nodes() const { return nodes_; }

    double x(int i) const { return x0_ + i * h_; }
    double y(int j) const { return y0_ + j * h_; }

    /// True when all four nearest neighbours of (i, j) are interior.
    bool full_stencil(int i, int j) const {
        return interior(i + 1, j) && interior(i - 1, j) && interior(i, j + 1) && interior(i, j - 1);
    }

    /// Longest run of consecutive interior nodes along any grid line in x and in y.
    int max_run_x() const;
    int max_run_y() const;

    /// Same node layout, spacing, placement and mask.
    bool same_grid(const GriddedDomain& other) const;

private:
    int nx_;
    int ny_;
    double h_;
    double x0_;
    double y0_;
    double measure_;
    std::string shape_;
    std::vector<int> index_;
    std::vector<Node> nodes_;
};

using DomainPtr = std::shared_ptr<const GriddedDomain>;

/// [0, width] x [0, height] with h = width / nx; height must be a multiple of h.
DomainPtr make_rectangle(double width, double height, int nx);

/// Disk of the given radius centred at the origin, bounding box [-r, r]^2, h = 2r / nx.
DomainPtr make_disk(double radius, int nx);

/// Arbitrary mask over an (nx+1) x (ny+1) node box. Measure defaults to the cell count.
DomainPtr make_masked(int nx, int ny, double h, std::vector<bool> mask, double measure = 0.0,
                      double x0 = 0.0, double y0 = 0.0, std::string shape = "mask");

class ScalarField {
public:
    explicit ScalarField(DomainPtr domain);
    ScalarField(DomainPtr domain, Eigen::VectorXd values);

    const GriddedDomain& domain() const { return *domain_; }
    const DomainPtr& domain_ptr() const { return domain_; }

    Eigen::VectorXd& values() { return values_; }
    const Eigen::VectorXd& values() const { return values_; }

    /// Value at node (i, j); zero outside Omega.
    double at(int i, int j) const {
        const int k = domain_->index(i, j);
        return k < 0 ? 0.0 : values_[k];
    }

    ScalarField& operator*=(double c) {
        values_ *= c;
        return *this;
    }

private:
    DomainPtr domain_;
    Eigen::VectorXd values_;
};

class VectorField2 {
public:
    explicit VectorField2(DomainPtr domain);
    VectorField2(DomainPtr domain, Eigen::VectorXd u1, Eigen::VectorXd u2);

    const GriddedDomain& domain() const { return *domain_; }
    const DomainPtr& domain_ptr() const { return domain_; }

    Eigen::VectorXd& u1() { return u1_; }
    Eigen::VectorXd& u2() { return u2_; }
    const Eigen::VectorXd& u1() const { return u1_; }
    const Eigen::VectorXd& u2() const { return u2_; }

    ScalarField component(int axis) const;

    VectorField2& operator*=(double c) {
        u1_ *= c;
        u2_ *= c;
        return *this;
    }

private:
    DomainPtr domain_;
    Eigen::VectorXd u1_;
    Eigen::VectorXd u2_;
};

/// Throws DomainMismatch unless both grids coincide.
void require_same_grid(const GriddedDomain& a, const GriddedDomain& b);

/// Samples f(x, y) at the interior nodes.
ScalarField sample(const DomainPtr& domain, const std::function<double(double, double)>& f);

/// Discrete L2 product h^2 sum a_k b_k.
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField2& a, const VectorField2& b);
double norm(const ScalarField& a);
double norm(const VectorField2& a);

/// Dirichlet energy of the zero extension, forward differences over every grid edge.
///
/// Equals f^T K f for the 5-point stiffness matrix K (diagonal 4, neighbours -1),
/// so the Rayleigh quotient grad_norm_sq(f) / inner(f, f) is the discrete
/// Laplacian quotient.
double grad_norm_sq(const ScalarField& f);
double grad_norm_sq(const VectorField2& u);

/// Centered-difference divergence of the zero extension, evaluated at interior nodes.
ScalarField divergence(const VectorField2& u);

/// max |div u| over interior nodes with a full 5-point stencil.
double max_interior_divergence(const VectorField2& u);

}  // namespace stokes
