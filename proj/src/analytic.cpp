#include "matterwave/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace matterwave {

namespace {

constexpr double kPi = M_PI;
const double kQuarticRootPi = std::pow(kPi, 0.25);

void require_time(double t) {
    if (!(t >= 0.0))
        throw TimeDomainError("evolution time must be nonnegative");
}

} // namespace

WidthSchedule WidthSchedule::from(const PacketParams& params) {
    params.validate();
    return WidthSchedule{params.beta, params.t0()};
}

double WidthSchedule::beta_t(double t) const {
    const double r = t / t0;
    return beta0 * std::sqrt(1.0 + r * r);
}

double WidthSchedule::delta_x(double t) const { return beta_t(t) / std::sqrt(2.0); }

double WidthSchedule::delta_p(const PhysConsts& consts) const {
    return consts.hbar / (beta0 * std::sqrt(2.0));
}

Complex gaussian_packet(const GaussianTerm& term, double x, double t) {
    term.params.validate();
    require_time(t);
    const double beta = term.params.beta;
    const Complex stretch{1.0, t / term.params.t0()};
    const double dx = x - term.center;
    const Complex pref = 1.0 / (kQuarticRootPi * std::sqrt(beta * stretch));
    return pref * std::exp(-dx * dx / (2.0 * beta * beta * stretch));
}

double two_bec_norm(const PacketParams& params) {
    params.validate();
    const double overlap = std::exp(-params.d * params.d / (4.0 * params.beta * params.beta));
    const double s = 1.0 + std::cos(params.phi) * overlap;
    if (!(s > kNormEpsilon))
        throw DegenerateSuperpositionError(
            "two-packet superposition vanishes identically (phi = pi with overlapping packets)");
    return 1.0 / std::sqrt(2.0 * s);
}

Complex two_bec_wavefunction(const PacketParams& params, double x, double t) {
    const double n = two_bec_norm(params);
    require_time(t);
    const GaussianTerm right{+params.d / 2.0, params};
    const GaussianTerm left{-params.d / 2.0, params};
    const Complex phase{std::cos(params.phi), std::sin(params.phi)};
    return n * (gaussian_packet(right, x, t) + phase * gaussian_packet(left, x, t));
}

double two_bec_density(const PacketParams& params, double x, double t) {
    const double n = two_bec_norm(params);
    require_time(t);
    const double t0 = params.t0();
    const double r = t / t0;
    const double bt2 = params.beta * params.beta * (1.0 + r * r);
    const double bt = std::sqrt(bt2);
    const double xp = x - params.d / 2.0;
    const double xm = x + params.d / 2.0;
    const double direct = std::exp(-xp * xp / bt2) + std::exp(-xm * xm / bt2);
    const double cross = 2.0 * std::exp(-(params.d * params.d + 4.0 * x * x) / (4.0 * bt2)) *
                         std::cos(params.phi + t * params.d * x / (t0 * bt2));
    return n * n / (std::sqrt(kPi) * bt) * (direct + cross);
}

double two_bec_momentum_density(const PacketParams& params, double p) {
    const double n = two_bec_norm(params);
    const double alpha = params.beta / params.consts.hbar;
    const double c = std::cos(p * params.d / (2.0 * params.consts.hbar));
    return 4.0 * n * n * alpha / std::sqrt(kPi) * c * c * std::exp(-alpha * alpha * p * p);
}

double fringe_wavelength_farfield(const PacketParams& params, double t) {
    params.validate();
    if (params.d <= 0.0)
        throw DomainError("fringe_wavelength_farfield: requires d > 0");
    if (!(t > 0.0))
        throw DomainError("fringe_wavelength_farfield: requires t > 0");
    return 2.0 * kPi * params.consts.hbar * t / (params.consts.mass * params.d);
}

double local_fringe_wavenumber(const PacketParams& params, double t) {
    params.validate();
    require_time(t);
    const double t0 = params.t0();
    const double r = t / t0;
    const double bt2 = params.beta * params.beta * (1.0 + r * r);
    return t * params.d / (t0 * bt2);
}

double multi_packet_norm(std::span<const PhasedCenter> terms, const PacketParams& params) {
    params.validate();
    if (terms.empty())
        throw DomainError("multi_packet: at least one term required");
    const double four_beta_sq = 4.0 * params.beta * params.beta;
    double s = 0.0;
    for (size_t j = 0; j < terms.size(); ++j)
        for (size_t k = 0; k < terms.size(); ++k) {
            const double sep = terms[j].center - terms[k].center;
            s += std::cos(terms[k].phase - terms[j].phase) * std::exp(-sep * sep / four_beta_sq);
        }
    if (!(s > kNormEpsilon))
        throw DegenerateSuperpositionError("multi-packet superposition vanishes identically");
    return 1.0 / std::sqrt(s);
}

Complex multi_packet_wavefunction(std::span<const PhasedCenter> terms,
                                  const PacketParams& params, double x, double t) {
    const double n = multi_packet_norm(terms, params);
    require_time(t);
    Complex sum = 0.0;
    for (const PhasedCenter& term : terms) {
        const Complex phase{std::cos(term.phase), std::sin(term.phase)};
        sum += phase * gaussian_packet(GaussianTerm{term.center, params}, x, t);
    }
    return n * sum;
}

Complex mirror_wavefunction(const GaussianTerm& base, double x, double t) {
    base.params.validate();
    require_time(t);
    if (base.center == 0.0)
        throw DegenerateSuperpositionError("mirror: packet centered on the wall");
    if (base.center > 0.0)
        throw DomainError("mirror: packet must be released at negative x");
    if (x > 0.0)
        return 0.0;
    const double d = -2.0 * base.center;
    PacketParams p = base.params;
    p.d = d;
    p.phi = kPi;
    const double n_tilde = std::sqrt(2.0) * two_bec_norm(p);
    return n_tilde * (gaussian_packet(base, x, t) - gaussian_packet(base, -x, t));
}

namespace {

// Peak amplitude of a spread packet, |G|_max = pi^{-1/4} beta_t^{-1/2}.
double packet_amplitude_bound(const PacketParams& params, double t) {
    const double bt = WidthSchedule::from(params).beta_t(t);
    return 1.0 / (kQuarticRootPi * std::sqrt(bt));
}

// Distance from an image center to the well interval [-d, 0].
double distance_to_well(double center, double d) {
    if (center > 0.0) return center;
    if (center < -d) return -d - center;
    return 0.0;
}

} // namespace

std::vector<SignedCenter> well_image_centers(const GaussianTerm& base, const Well& well,
                                             double t, double tol) {
    base.params.validate();
    require_time(t);
    if (!(tol > 0.0))
        throw DomainError("well images: tolerance must be positive");
    const double d = well.width;
    if (!(d > 0.0))
        throw DomainError("well images: well width must be positive");
    if (base.center == 0.0 || base.center == -d)
        throw DegenerateSuperpositionError("well images: packet centered on a wall");
    if (base.center > 0.0 || base.center < -d)
        throw DomainError("well images: packet center must lie inside the well");

    const double xc = base.center;
    const double bt = WidthSchedule::from(base.params).beta_t(t);
    const double amp = packet_amplitude_bound(base.params, t);

    // Worst-case contribution of the four images in ring |n| to any well point.
    auto ring_bound = [&](int n) {
        double bound = 0.0;
        for (const double c : {xc + 2.0 * n * d, xc - 2.0 * n * d,
                               -xc - 2.0 * n * d, -xc + 2.0 * n * d}) {
            const double dist = distance_to_well(c, d);
            bound += amp * std::exp(-dist * dist / (2.0 * bt * bt));
        }
        return bound;
    };

    int n_img = static_cast<int>(std::ceil((d + 6.0 * bt) / (2.0 * d))) + 2;
    for (;;) {
        double tail = 0.0;
        for (int k = n_img + 1; k <= n_img + 4096; ++k) {
            const double rb = ring_bound(k);
            tail += rb;
            if (rb < tol * 1e-6) break;
        }
        if (tail < 0.5 * tol) break;
        n_img += std::max(1, n_img / 8);
    }

    std::vector<SignedCenter> centers;
    centers.reserve(2 * (2 * n_img + 1));
    for (int n = -n_img; n <= n_img; ++n) {
        centers.push_back({xc + 2.0 * n * d, +1.0});
        centers.push_back({-xc - 2.0 * n * d, -1.0});
    }
    return centers;
}

namespace {

Complex well_image_sum(const GaussianTerm& base, const Well& well, double x, double t,
                       const std::vector<SignedCenter>& centers) {
    const double slack = 1e-12 * well.width;
    if (x > slack || x < -well.width - slack)
        return 0.0;
    Complex sum = 0.0;
    for (const SignedCenter& image : centers)
        sum += image.sign * gaussian_packet(GaussianTerm{image.center, base.params}, x, t);
    return sum;
}

} // namespace

Complex well_image_wavefunction(const GaussianTerm& base, const Well& well,
                                double x, double t, double tol) {
    return well_image_sum(base, well, x, t, well_image_centers(base, well, t, tol));
}

Complex well_image_wavefunction_n(const GaussianTerm& base, const Well& well,
                                  double x, double t, int n_images) {
    base.params.validate();
    require_time(t);
    if (n_images < 0)
        throw DomainError("well images: image count must be nonnegative");
    std::vector<SignedCenter> centers;
    centers.reserve(2 * (2 * n_images + 1));
    for (int n = -n_images; n <= n_images; ++n) {
        centers.push_back({base.center + 2.0 * n * well.width, +1.0});
        centers.push_back({-base.center - 2.0 * n * well.width, -1.0});
    }
    return well_image_sum(base, well, x, t, centers);
}

Complex gaussian_packet_2d(const Gaussian2D& base, double x, double y, double t) {
    return gaussian_packet(GaussianTerm{base.center_x, base.params}, x, t) *
           gaussian_packet(GaussianTerm{base.center_y, base.params}, y, t);
}

double corner_norm(const Gaussian2D& base) {
    base.params.validate();
    if (base.center_x == 0.0 || base.center_y == 0.0)
        throw DegenerateSuperpositionError("corner: packet centered on a wall");
    if (base.center_x < 0.0 || base.center_y < 0.0)
        throw DomainError("corner: packet center must lie in the open first quadrant");
    const double b2 = base.params.beta * base.params.beta;
    const double s = (1.0 - std::exp(-base.center_x * base.center_x / b2)) *
                     (1.0 - std::exp(-base.center_y * base.center_y / b2));
    if (!(s > kNormEpsilon))
        throw DegenerateSuperpositionError("corner: superposition vanishes identically");
    return 1.0 / std::sqrt(s);
}

Complex corner_wavefunction(const Gaussian2D& base, double x, double y, double t) {
    const double n = corner_norm(base);
    require_time(t);
    if (x < 0.0 || y < 0.0)
        return 0.0;
    // The four-image combination factorizes into a product of 1D differences,
    // which keeps the wall zeros exact in floating point.
    const GaussianTerm cx{base.center_x, base.params};
    const GaussianTerm cx_img{-base.center_x, base.params};
    const GaussianTerm cy{base.center_y, base.params};
    const GaussianTerm cy_img{-base.center_y, base.params};
    const Complex gx = gaussian_packet(cx, x, t) - gaussian_packet(cx_img, x, t);
    const Complex gy = gaussian_packet(cy, y, t) - gaussian_packet(cy_img, y, t);
    return n * gx * gy;
}

WedgeGeometry WedgeGeometry::from_degrees(double degrees) {
    if (degrees == 90.0) return WedgeGeometry{WedgeAngle::deg90};
    if (degrees == 60.0) return WedgeGeometry{WedgeAngle::deg60};
    if (degrees == 45.0) return WedgeGeometry{WedgeAngle::deg45};
    throw DomainError("wedge: supported angles are 90, 60 and 45 degrees");
}

double WedgeGeometry::degrees() const {
    switch (angle) {
        case WedgeAngle::deg90: return 90.0;
        case WedgeAngle::deg60: return 60.0;
        case WedgeAngle::deg45: return 45.0;
    }
    throw DomainError("wedge: invalid angle");
}

double WedgeGeometry::radians() const { return degrees() * kPi / 180.0; }

int WedgeGeometry::image_count() const { return 2 * static_cast<int>(180.0 / degrees()); }

std::vector<SignedCenter2D> WedgeGeometry::images(double cx, double cy) const {
    std::vector<SignedCenter2D> out;
    const double s3 = std::sqrt(3.0) / 2.0;
    switch (angle) {
        case WedgeAngle::deg90:
            // Rotations by 0, 180; reflections across 0 and 90 degrees.
            out = {{cx, cy, +1.0},  {-cx, -cy, +1.0},
                   {cx, -cy, -1.0}, {-cx, cy, -1.0}};
            break;
        case WedgeAngle::deg60:
            // Rotations by 0, 120, 240; reflections across 0, 60, 120 degrees.
            out = {{cx, cy, +1.0},
                   {-cx / 2.0 - cy * s3, cx * s3 - cy / 2.0, +1.0},
                   {-cx / 2.0 + cy * s3, -cx * s3 - cy / 2.0, +1.0},
                   {cx, -cy, -1.0},
                   {-cx / 2.0 + cy * s3, cx * s3 + cy / 2.0, -1.0},
                   {-cx / 2.0 - cy * s3, -cx * s3 + cy / 2.0, -1.0}};
            break;
        case WedgeAngle::deg45:
            // Rotations by 0, 90, 180, 270; reflections across 0, 45, 90, 135.
            out = {{cx, cy, +1.0},  {-cy, cx, +1.0},  {-cx, -cy, +1.0}, {cy, -cx, +1.0},
                   {cx, -cy, -1.0}, {cy, cx, -1.0},   {-cx, cy, -1.0},  {-cy, -cx, -1.0}};
            break;
    }
    return out;
}

namespace {

void require_wedge_center(const WedgeGeometry& geom, const Gaussian2D& base) {
    const double theta = std::atan2(base.center_y, base.center_x);
    const double r = std::hypot(base.center_x, base.center_y);
    if (r == 0.0 || theta == 0.0 || theta == geom.radians())
        throw DegenerateSuperpositionError("wedge: packet centered on a wall");
    if (theta < 0.0 || theta > geom.radians())
        throw DomainError("wedge: packet center must lie strictly inside the wedge");
}

bool inside_closed_wedge(const WedgeGeometry& geom, double x, double y) {
    if (y < 0.0) return false;
    switch (geom.angle) {
        case WedgeAngle::deg90: return x >= 0.0;
        case WedgeAngle::deg60: return std::sqrt(3.0) * x - y >= 0.0;
        case WedgeAngle::deg45: return x - y >= 0.0;
    }
    return false;
}

} // namespace

double wedge_norm(const WedgeGeometry& geom, const Gaussian2D& base) {
    base.params.validate();
    require_wedge_center(geom, base);
    const double four_beta_sq = 4.0 * base.params.beta * base.params.beta;
    double s = 0.0;
    for (const SignedCenter2D& image : geom.images(base.center_x, base.center_y)) {
        const double dx = base.center_x - image.x;
        const double dy = base.center_y - image.y;
        s += image.sign * std::exp(-(dx * dx + dy * dy) / four_beta_sq);
    }
    if (!(s > kNormEpsilon))
        throw DegenerateSuperpositionError("wedge: superposition vanishes identically");
    return 1.0 / std::sqrt(s);
}

Complex wedge_wavefunction(const WedgeGeometry& geom, const Gaussian2D& base,
                           double x, double y, double t) {
    const double n = wedge_norm(geom, base);
    require_time(t);
    if (!inside_closed_wedge(geom, x, y))
        return 0.0;
    Complex sum = 0.0;
    for (const SignedCenter2D& image : geom.images(base.center_x, base.center_y))
        sum += image.sign *
               gaussian_packet_2d(Gaussian2D{image.x, image.y, base.params}, x, y, t);
    return n * sum;
}

} // namespace matterwave
