#include "matterwave/spectral.hpp"

#include <cmath>

namespace matterwave {

namespace {

constexpr double kPi = M_PI;
constexpr double kCapturedProbabilityFloor = 0.999;

} // namespace

double EigenExpansion::captured_probability() const {
    double sum = 0.0;
    for (const Complex& c : coeffs) sum += std::norm(c);
    return sum;
}

double eigen_energy(int n, double d, const PhysConsts& consts) {
    consts.validate();
    if (n < 1)
        throw DomainError("eigen_energy: index must be >= 1");
    if (!(d > 0.0))
        throw DomainError("eigen_energy: well width must be positive");
    const double k = n * kPi / d;
    return consts.hbar * consts.hbar * k * k / (2.0 * consts.mass);
}

EigenExpansion project_packet(const WaveField& field, const Well& well, int n_max,
                              const PhysConsts& consts) {
    field.validate();
    consts.validate();
    if (!(well.width > 0.0))
        throw DomainError("project_packet: well width must be positive");
    if (n_max < 1)
        throw DomainError("project_packet: n_max must be >= 1");
    const double d = well.width;
    const SpatialGrid& grid = field.grid;
    const double slack = 1e-9 * d;
    if (std::abs(grid.x_min + d) > slack || std::abs(grid.x_max) > slack)
        throw DomainError("project_packet: field grid must span exactly [-d, 0]");
    if (std::abs(field.time) > 1e-12)
        throw DomainError("project_packet: field must be given at t = 0");
    const int n = grid.n_points;
    if (std::abs(field.amplitudes.front()) > 1e-10 || std::abs(field.amplitudes.back()) > 1e-10)
        throw DomainError("project_packet: field must vanish at the well walls");

    const double dx = grid.dx();
    const double amp = std::sqrt(2.0 / d);
    EigenExpansion expansion{d, n_max, std::vector<Complex>(n_max), consts};
    for (int mode = 1; mode <= n_max; ++mode) {
        Complex c = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            const double phi = amp * std::sin(mode * kPi * (grid.x(i) + d) / d);
            c += w * phi * field.amplitudes[i];
        }
        expansion.coeffs[mode - 1] = c * dx;
    }
    if (expansion.captured_probability() < kCapturedProbabilityFloor)
        throw InsufficientBasisError("project_packet: basis captures less than 99.9% of the packet");
    return expansion;
}

WaveField evolve_eigenbasis(const EigenExpansion& expansion, double t, const SpatialGrid& grid) {
    grid.validate();
    expansion.consts.validate();
    if (!(t >= 0.0))
        throw TimeDomainError("evolve_eigenbasis: time must be nonnegative");
    const double d = expansion.well_width;
    const double slack = 1e-9 * d;
    if (grid.x_min < -d - slack || grid.x_max > slack)
        throw DomainError("evolve_eigenbasis: grid must lie inside the well [-d, 0]");

    const int n = grid.n_points;
    const double amp = std::sqrt(2.0 / d);
    WaveField field{grid, t, std::vector<Complex>(n)};
    for (int mode = 1; mode <= expansion.n_max; ++mode) {
        const Complex c = expansion.coeffs[mode - 1];
        if (c == Complex{0.0, 0.0}) continue;
        const double phase = -eigen_energy(mode, d, expansion.consts) * t / expansion.consts.hbar;
        const Complex evolved = c * Complex{std::cos(phase), std::sin(phase)};
        for (int i = 0; i < n; ++i)
            field.amplitudes[i] += evolved * amp * std::sin(mode * kPi * (grid.x(i) + d) / d);
    }
    return field;
}

Complex autocorrelation(const EigenExpansion& expansion, double t) {
    expansion.consts.validate();
    if (!(t >= 0.0))
        throw TimeDomainError("autocorrelation: time must be nonnegative");
    Complex a = 0.0;
    for (int mode = 1; mode <= expansion.n_max; ++mode) {
        const double w = std::norm(expansion.coeffs[mode - 1]);
        if (w == 0.0) continue;
        const double phase = -eigen_energy(mode, expansion.well_width, expansion.consts) * t /
                             expansion.consts.hbar;
        a += w * Complex{std::cos(phase), std::sin(phase)};
    }
    return a;
}

TimeScales timescales(const PacketParams& params) {
    params.validate();
    if (!(params.d > 0.0))
        throw DomainError("timescales: requires d > 0");
    const double hbar = params.consts.hbar;
    const double m = params.consts.mass;
    TimeScales ts;
    ts.t0 = m * params.beta * params.beta / hbar;
    ts.T_overlap = std::sqrt(2.0) * params.d * m * params.beta / hbar;
    ts.T_rev = 4.0 * m * params.d * params.d / (hbar * kPi);
    const double delta_x0 = params.beta / std::sqrt(2.0);
    ts.ratio_rev_overlap = 2.0 * params.d / (kPi * delta_x0);
    ts.ratio_overlap_t0_sq = 2.0 * (params.d / params.beta) * (params.d / params.beta);
    return ts;
}

} // namespace matterwave
