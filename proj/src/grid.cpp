#include "stokes/grid.hpp"

#include "stokes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stokes {

GriddedDomain::GriddedDomain(int nx, int ny, double h, double x0, double y0,
                             std::vector<bool> mask, double measure, std::string shape)
    : nx_(nx), ny_(ny), h_(h), x0_(x0), y0_(y0), measure_(measure), shape_(std::move(shape)) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 cells per axis");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid spacing must be positive");
    if (!(measure > 0.0)) throw std::invalid_argument("domain measure must be positive");
    const auto total = static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1);
    if (mask.size() != total) throw std::invalid_argument("mask size does not match the node box");

    index_.assign(total, -1);
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const std::size_t at = static_cast<std::size_t>(j) * (nx + 1) + i;
            if (!mask[at]) continue;
            if (i == 0 || j == 0 || i == nx || j == ny)
                throw std::invalid_argument("interior node on the bounding-box border");
            index_[at] = static_cast<int>(nodes_.size());
            nodes_.push_back({i, j});
        }
    }
    if (nodes_.empty()) throw std::invalid_argument("domain has no interior nodes");
}

int GriddedDomain::max_run_x() const {
    int best = 0;
    for (int j = 0; j <= ny_; ++j) {
        int run = 0;
        for (int i = 0; i <= nx_; ++i) {
            run = interior(i, j) ? run + 1 : 0;
            best = std::max(best, run);
        }
    }
    return best;
}

int GriddedDomain::max_run_y() const {
    int best = 0;
    for (int i = 0; i <= nx_; ++i) {
        int run = 0;
        for (int j = 0; j <= ny_; ++j) {
            run = interior(i, j) ? run + 1 : 0;
            best = std::max(best, run);
        }
    }
    return best;
}

bool GriddedDomain::same_grid(const GriddedDomain& other) const {
    if (this == &other) return true;
    return nx_ == other.nx_ && ny_ == other.ny_ && h_ == other.h_ && x0_ == other.x0_ &&
           y0_ == other.y0_ && index_ == other.index_;
}

DomainPtr make_rectangle(double width, double height, int nx) {
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("rectangle dimensions must be positive");
    if (nx < 8) throw std::invalid_argument("rectangle needs nx >= 8");
    const double h = width / nx;
    const long ny_long = std::lround(height / h);
    if (ny_long < 2 || std::abs(ny_long * h - height) > 1e-9 * height)
        throw std::invalid_argument("rectangle height must be a multiple of width/nx");
    const int ny = static_cast<int>(ny_long);

    std::vector<bool> mask(static_cast<std::size_t>(nx + 1) * (ny + 1), false);
    for (int j = 1; j < ny; ++j)
        for (int i = 1; i < nx; ++i) mask[static_cast<std::size_t>(j) * (nx + 1) + i] = true;
    return std::make_shared<const GriddedDomain>(nx, ny, h, 0.0, 0.0, std::move(mask),
                                                 width * height, "rectangle");
}

DomainPtr make_disk(double radius, int nx) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
    if (nx < 4) throw std::invalid_argument("disk needs nx >= 4");
    const double h = 2.0 * radius / nx;
    std::vector<bool> mask(static_cast<std::size_t>(nx + 1) * (nx + 1), false);
    std::size_t count = 0;
    for (int j = 0; j <= nx; ++j) {
        for (int i = 0; i <= nx; ++i) {
            // integer test avoids rounding on the circle: (2i - nx)^2 + (2j - nx)^2 < nx^2
            const long dx = 2L * i - nx;
            const long dy = 2L * j - nx;
            if (dx * dx + dy * dy < static_cast<long>(nx) * nx) {
                mask[static_cast<std::size_t>(j) * (nx + 1) + i] = true;
                ++count;
            }
        }
    }
    return std::make_shared<const GriddedDomain>(nx, nx, h, -radius, -radius, std::move(mask),
                                                 static_cast<double>(count) * h * h, "disk");
}

DomainPtr make_masked(int nx, int ny, double h, std::vector<bool> mask, double measure, double x0,
                      double y0, std::string shape) {
    if (measure <= 0.0) {
        const auto count = std::count(mask.begin(), mask.end(), true);
        measure = static_cast<double>(count) * h * h;
    }
    return std::make_shared<const GriddedDomain>(nx, ny, h, x0, y0, std::move(mask), measure,
                                                 std::move(shape));
}

ScalarField::ScalarField(DomainPtr domain)
    : domain_(std::move(domain)), values_(Eigen::VectorXd::Zero(domain_->interior_count())) {}

ScalarField::ScalarField(DomainPtr domain, Eigen::VectorXd values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_->interior_count())
        throw std::invalid_argument("field length differs from the interior node count");
}

VectorField2::VectorField2(DomainPtr domain)
    : domain_(std::move(domain)),
      u1_(Eigen::VectorXd::Zero(domain_->interior_count())),
      u2_(Eigen::VectorXd::Zero(domain_->interior_count())) {}

VectorField2::VectorField2(DomainPtr domain, Eigen::VectorXd u1, Eigen::VectorXd u2)
    : domain_(std::move(domain)), u1_(std::move(u1)), u2_(std::move(u2)) {
    if (u1_.size() != domain_->interior_count() || u2_.size() != domain_->interior_count())
        throw std::invalid_argument("field length differs from the interior node count");
}

ScalarField VectorField2::component(int axis) const {
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
    return ScalarField(domain_, axis == 1 ? u1_ : u2_);
}

void require_same_grid(const GriddedDomain& a, const GriddedDomain& b) {
    if (!a.same_grid(b)) throw DomainMismatch("fields live on different grids");
}

ScalarField sample(const DomainPtr& domain, const std::function<double(double, double)>& f) {
    Eigen::VectorXd values(domain->interior_count());
    for (int k = 0; k < domain->interior_count(); ++k) {
        const Node p = domain->node(k);
        values[k] = f(domain->x(p.i), domain->y(p.j));
    }
    return ScalarField(domain, std::move(values));
}

double inner(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.domain(), b.domain());
    const double h = a.domain().h();
    return h * h * a.values().dot(b.values());
}

double inner(const VectorField2& a, const VectorField2& b) {
    require_same_grid(a.domain(), b.domain());
    const double h = a.domain().h();
    return h * h * (a.u1().dot(b.u1()) + a.u2().dot(b.u2()));
}

double norm(const ScalarField& a) { return std::sqrt(inner(a, a)); }
double norm(const VectorField2& a) { return std::sqrt(inner(a, a)); }

double grad_norm_sq(const ScalarField& f) {
    // Each edge touching an interior node is visited once from its lower-left end;
    // the h^2 quadrature weight cancels the 1/h^2 of the squared difference.
    const GriddedDomain& d = f.domain();
    double sum = 0.0;
    for (int j = 0; j < d.ny(); ++j) {
        for (int i = 0; i < d.nx(); ++i) {
            const double here = f.at(i, j);
            const double dx = f.at(i + 1, j) - here;
            const double dy = f.at(i, j + 1) - here;
            sum += dx * dx + dy * dy;
        }
    }
    return sum;
}

double grad_norm_sq(const VectorField2& u) {
    return grad_norm_sq(u.component(1)) + grad_norm_sq(u.component(2));
}

ScalarField divergence(const VectorField2& u) {
    const GriddedDomain& d = u.domain();
    const double inv2h = 0.5 / d.h();
    auto value = [&](const Eigen::VectorXd& comp, int i, int j) {
        const int k = d.index(i, j);
        return k < 0 ? 0.0 : comp[k];
    };
    Eigen::VectorXd div(d.interior_count());
    for (int k = 0; k < d.interior_count(); ++k) {
        const Node p = d.node(k);
        div[k] = ((value(u.u1(), p.i + 1, p.j) - value(u.u1(), p.i - 1, p.j)) +
                  (value(u.u2(), p.i, p.j + 1) - value(u.u2(), p.i, p.j - 1))) *
                 inv2h;
    }
    return ScalarField(u.domain_ptr(), std::move(div));
}

double max_interior_divergence(const VectorField2& u) {
    const ScalarField div = divergence(u);
    const GriddedDomain& d = u.domain();
    double worst = 0.0;
    for (int k = 0; k < d.interior_count(); ++k) {
        const Node p = d.node(k);
        if (d.full_stencil(p.i, p.j)) worst = std::max(worst, std::abs(div.values()[k]));
    }
    return worst;
}

}  // namespace stokes
