#include "matterwave/core.hpp"

#include <cmath>

namespace matterwave {

void PhysConsts::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw DomainError("PhysConsts: hbar must be positive and finite");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("PhysConsts: mass must be positive and finite");
}

PhysConsts natural_units() { return PhysConsts{1.0, 1.0}; }

void PacketParams::validate() const {
    consts.validate();
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("PacketParams: beta must be positive and finite");
    if (!(d >= 0.0) || !std::isfinite(d))
        throw DomainError("PacketParams: d must be nonnegative and finite");
    if (!(phi >= 0.0) || !(phi < 2.0 * M_PI))
        throw DomainError("PacketParams: phi must lie in [0, 2pi)");
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void SpatialGrid::validate() const {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw DomainError("SpatialGrid: requires finite x_min < x_max");
    if (n_points < 16 || !is_power_of_two(n_points))
        throw DomainError("SpatialGrid: n_points must be a power of two >= 16");
}

void WaveField::validate() const {
    grid.validate();
    if (amplitudes.size() != static_cast<size_t>(grid.n_points))
        throw InvalidFieldError("WaveField: amplitude count does not match grid");
    for (const Complex& a : amplitudes)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw InvalidFieldError("WaveField: non-finite amplitude");
}

void WaveField2D::validate() const {
    grid_x.validate();
    grid_y.validate();
    const size_t expected = static_cast<size_t>(grid_x.n_points) * grid_y.n_points;
    if (amplitudes.size() != expected)
        throw InvalidFieldError("WaveField2D: amplitude count does not match grids");
    for (const Complex& a : amplitudes)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw InvalidFieldError("WaveField2D: non-finite amplitude");
}

namespace {

// Trapezoid weight: 1/2 at the first and last grid point.
inline double trap_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

} // namespace

double norm(const WaveField& field) {
    field.validate();
    const int n = field.grid.n_points;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += trap_weight(i, n) * std::norm(field.amplitudes[i]);
    return sum * field.grid.dx();
}

double norm(const WaveField2D& field) {
    field.validate();
    const int nx = field.grid_x.n_points;
    const int ny = field.grid_y.n_points;
    double sum = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        const double wx = trap_weight(ix, nx);
        double row = 0.0;
        for (int iy = 0; iy < ny; ++iy)
            row += trap_weight(iy, ny) * std::norm(field.at(ix, iy));
        sum += wx * row;
    }
    return sum * field.grid_x.dx() * field.grid_y.dx();
}

namespace {

void require_same_layout(const SpatialGrid& a, const SpatialGrid& b, const char* what) {
    if (!(a == b)) throw DomainError(std::string(what) + ": grids differ");
}

void require_same_time(double ta, double tb, const char* what) {
    // Propagated times accumulate n_steps * dt rounding; allow a small slack.
    const double slack = 1e-9 * std::max(1.0, std::max(std::abs(ta), std::abs(tb)));
    if (std::abs(ta - tb) > slack) throw DomainError(std::string(what) + ": times differ");
}

} // namespace

Complex overlap(const WaveField& a, const WaveField& b) {
    a.validate();
    b.validate();
    require_same_layout(a.grid, b.grid, "overlap");
    require_same_time(a.time, b.time, "overlap");
    const int n = a.grid.n_points;
    Complex sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += trap_weight(i, n) * std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return sum * a.grid.dx();
}

Complex overlap(const WaveField2D& a, const WaveField2D& b) {
    a.validate();
    b.validate();
    require_same_layout(a.grid_x, b.grid_x, "overlap");
    require_same_layout(a.grid_y, b.grid_y, "overlap");
    require_same_time(a.time, b.time, "overlap");
    const int nx = a.grid_x.n_points;
    const int ny = a.grid_y.n_points;
    Complex sum = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        const double wx = trap_weight(ix, nx);
        Complex row = 0.0;
        for (int iy = 0; iy < ny; ++iy)
            row += trap_weight(iy, ny) * std::conj(a.at(ix, iy)) * b.at(ix, iy);
        sum += wx * row;
    }
    return sum * a.grid_x.dx() * a.grid_y.dx();
}

WaveField sample_field(const SpatialGrid& grid, double time,
                       const std::function<Complex(double)>& psi) {
    grid.validate();
    WaveField field{grid, time, std::vector<Complex>(grid.n_points)};
    for (int i = 0; i < grid.n_points; ++i)
        field.amplitudes[i] = psi(grid.x(i));
    return field;
}

WaveField2D sample_field(const SpatialGrid& grid_x, const SpatialGrid& grid_y, double time,
                         const std::function<Complex(double, double)>& psi) {
    grid_x.validate();
    grid_y.validate();
    WaveField2D field{grid_x, grid_y, time,
                      std::vector<Complex>(static_cast<size_t>(grid_x.n_points) * grid_y.n_points)};
    for (int ix = 0; ix < grid_x.n_points; ++ix) {
        const double x = grid_x.x(ix);
        for (int iy = 0; iy < grid_y.n_points; ++iy)
            field.at(ix, iy) = psi(x, grid_y.x(iy));
    }
    return field;
}

} // namespace matterwave
