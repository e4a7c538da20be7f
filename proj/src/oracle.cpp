#include "matterwave/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace matterwave {

namespace {

constexpr double kPi = M_PI;
constexpr double kBoundaryAmplitudeTol = 1e-10;

// FFTW plan creation/destruction is not thread safe; execution is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

void check_norm_drift(double current, double initial, double tol, const char* what) {
    if (std::abs(current - initial) > tol * std::max(1.0, initial))
        throw UnstableRunError(std::string(what) + ": norm drift exceeds tolerance");
}

} // namespace

void PropagatorConfig::validate() const {
    consts.validate();
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw DomainError("PropagatorConfig: dt must be positive and finite");
    if (n_steps < 0)
        throw DomainError("PropagatorConfig: n_steps must be nonnegative");
    if (!(norm_drift_tol > 0.0))
        throw DomainError("PropagatorConfig: norm_drift_tol must be positive");
}

// ---------------------------------------------------------------------------
// Free split-operator propagation (periodic spectral grid).
// ---------------------------------------------------------------------------

WaveField propagate_free(const WaveField& initial, const PropagatorConfig& cfg) {
    initial.validate();
    cfg.validate();
    const int n = initial.grid.n_points;

    for (int i : {0, 1, n - 2, n - 1})
        if (std::abs(initial.amplitudes[i]) > kBoundaryAmplitudeTol)
            throw DomainError("propagate_free: field not negligible at the grid edges");

    WaveField field = initial;
    if (cfg.n_steps == 0) return field;

    // Kinetic phases on the periodic wavenumber grid, period n * dx.
    const double period = n * initial.grid.dx();
    std::vector<Complex> kinetic(n);
    for (int j = 0; j < n; ++j) {
        const int jj = (j < n / 2) ? j : j - n;
        const double k = 2.0 * kPi * jj / period;
        const double phase = -cfg.consts.hbar * k * k / (2.0 * cfg.consts.mass) * cfg.dt;
        kinetic[j] = Complex{std::cos(phase), std::sin(phase)};
    }

    fftw_complex* data = reinterpret_cast<fftw_complex*>(field.amplitudes.data());
    fftw_plan fwd;
    fftw_plan bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fwd = fftw_plan_dft_1d(n, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    const double norm0 = norm(initial);
    const double inv_n = 1.0 / n;
    for (int step = 0; step < cfg.n_steps; ++step) {
        fftw_execute(fwd);
        for (int j = 0; j < n; ++j) field.amplitudes[j] *= kinetic[j];
        fftw_execute(bwd);
        for (int j = 0; j < n; ++j) field.amplitudes[j] *= inv_n;
        if ((step & 15) == 15)
            check_norm_drift(norm(field), norm0, cfg.norm_drift_tol, "propagate_free");
    }
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    field.time = initial.time + cfg.n_steps * cfg.dt;
    check_norm_drift(norm(field), norm0, cfg.norm_drift_tol, "propagate_free");
    return field;
}

// ---------------------------------------------------------------------------
// 1D Crank-Nicolson with fourth-order compact spatial operator.
//
// With M = I + delta^2/12 the step reads
//   (M - i mu delta^2) psi' = (M + i mu delta^2) psi,  mu = hbar dt/(4 m dx^2).
// M and delta^2 commute and are symmetric, so the step is exactly unitary
// in the discrete norm. psi'' = 0 holds exactly at the walls of the free
// Schroedinger problem, so the compact closure loses no accuracy there.
// ---------------------------------------------------------------------------

namespace {

struct ThomasFactors {
    Complex off;
    std::vector<Complex> w;       // elimination multipliers
    std::vector<Complex> inv_d;   // reciprocal pivots

    ThomasFactors(Complex diag, Complex off_, int m) : off(off_), w(m), inv_d(m) {
        Complex denom = diag;
        inv_d[0] = 1.0 / denom;
        for (int i = 1; i < m; ++i) {
            w[i] = off * inv_d[i - 1];
            denom = diag - off * w[i];
            inv_d[i] = 1.0 / denom;
        }
    }

    // Solves A x = rhs in place.
    void solve(Complex* rhs, int m) const {
        for (int i = 1; i < m; ++i) rhs[i] -= w[i] * rhs[i - 1];
        rhs[m - 1] *= inv_d[m - 1];
        for (int i = m - 2; i >= 0; --i) rhs[i] = (rhs[i] - off * rhs[i + 1]) * inv_d[i];
    }
};

} // namespace

WaveField propagate_dirichlet(const WaveField& initial, const PropagatorConfig& cfg) {
    initial.validate();
    cfg.validate();
    const int n = initial.grid.n_points;
    const int m = n - 2;

    if (std::abs(initial.amplitudes.front()) > kBoundaryAmplitudeTol ||
        std::abs(initial.amplitudes.back()) > kBoundaryAmplitudeTol)
        throw DomainError("propagate_dirichlet: field must vanish at the walls");

    WaveField field = initial;
    field.amplitudes.front() = 0.0;
    field.amplitudes.back() = 0.0;
    if (cfg.n_steps == 0) return field;

    const double dx = initial.grid.dx();
    const double mu = cfg.consts.hbar * cfg.dt / (4.0 * cfg.consts.mass * dx * dx);
    const Complex a_diag{10.0 / 12.0, 2.0 * mu};
    const Complex a_off{1.0 / 12.0, -mu};
    const Complex b_diag{10.0 / 12.0, -2.0 * mu};
    const Complex b_off{1.0 / 12.0, mu};
    const ThomasFactors factors(a_diag, a_off, m);

    const double norm0 = norm(field);
    std::vector<Complex> rhs(m);
    Complex* psi = field.amplitudes.data() + 1; // interior view
    for (int step = 0; step < cfg.n_steps; ++step) {
        rhs[0] = b_diag * psi[0] + b_off * psi[1];
        for (int i = 1; i < m - 1; ++i)
            rhs[i] = b_off * psi[i - 1] + b_diag * psi[i] + b_off * psi[i + 1];
        rhs[m - 1] = b_off * psi[m - 2] + b_diag * psi[m - 1];
        factors.solve(rhs.data(), m);
        std::copy(rhs.begin(), rhs.end(), psi);
        if ((step & 255) == 255)
            check_norm_drift(norm(field), norm0, cfg.norm_drift_tol, "propagate_dirichlet");
    }

    field.time = initial.time + cfg.n_steps * cfg.dt;
    check_norm_drift(norm(field), norm0, cfg.norm_drift_tol, "propagate_dirichlet");
    return field;
}

// ---------------------------------------------------------------------------
// Masked 2D Dirichlet propagation.
// ---------------------------------------------------------------------------

Mask2D Mask2D::box(const SpatialGrid& grid_x, const SpatialGrid& grid_y) {
    grid_x.validate();
    grid_y.validate();
    Mask2D mask{grid_x.n_points, grid_y.n_points,
                std::vector<std::uint8_t>(static_cast<size_t>(grid_x.n_points) * grid_y.n_points, 0)};
    for (int ix = 1; ix < mask.nx - 1; ++ix)
        for (int iy = 1; iy < mask.ny - 1; ++iy)
            mask.allowed[static_cast<size_t>(ix) * mask.ny + iy] = 1;
    return mask;
}

Mask2D Mask2D::wedge(const SpatialGrid& grid_x, const SpatialGrid& grid_y, WedgeAngle angle,
                     double wall_offset_cells) {
    grid_x.validate();
    grid_y.validate();
    const double h = grid_x.dx();
    if (std::abs(grid_y.dx() - h) > 1e-12 * h)
        throw DomainError("Mask2D::wedge: requires square cells");

    // Inside-distance to each wall and the wall's unit normal. The sweeps
    // impose zero at the first masked point of each line, which places the
    // effective wall half a cell outside the masking line on average; the
    // normal-weighted cutoff compensates.
    struct Wall {
        double nx, ny; // unit inside normal
    };
    std::vector<Wall> walls;
    walls.push_back({0.0, 1.0}); // theta = 0 wall: inside is y > 0
    const double s3 = std::sqrt(3.0);
    switch (angle) {
        case WedgeAngle::deg90: walls.push_back({1.0, 0.0}); break;
        case WedgeAngle::deg60: walls.push_back({s3 / 2.0, -0.5}); break;
        case WedgeAngle::deg45: walls.push_back({1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}); break;
    }

    Mask2D mask{grid_x.n_points, grid_y.n_points,
                std::vector<std::uint8_t>(static_cast<size_t>(grid_x.n_points) * grid_y.n_points, 0)};
    for (int ix = 1; ix < mask.nx - 1; ++ix) {
        const double x = grid_x.x(ix);
        for (int iy = 1; iy < mask.ny - 1; ++iy) {
            const double y = grid_y.x(iy);
            bool ok = true;
            for (const Wall& wall : walls) {
                const double s = wall.nx * x + wall.ny * y; // signed inside distance
                const double cutoff =
                    h * wall_offset_cells * (std::abs(wall.nx) + std::abs(wall.ny)) / 2.0 +
                    1e-9 * h;
                if (s <= cutoff) { ok = false; break; }
            }
            if (ok) mask.allowed[static_cast<size_t>(ix) * mask.ny + iy] = 1;
        }
    }
    return mask;
}

namespace {

struct Segment {
    int line;  // slow-axis index
    int begin; // fast-axis start
    int len;
};

std::vector<Segment> collect_segments(const Mask2D& mask, bool fast_is_y) {
    std::vector<Segment> segments;
    const int n_slow = fast_is_y ? mask.nx : mask.ny;
    const int n_fast = fast_is_y ? mask.ny : mask.nx;
    for (int s = 0; s < n_slow; ++s) {
        int run = 0;
        for (int f = 0; f <= n_fast; ++f) {
            const bool on = f < n_fast && (fast_is_y ? mask.at(s, f) : mask.at(f, s));
            if (on) {
                ++run;
            } else if (run > 0) {
                segments.push_back({s, f - run, run});
                run = 0;
            }
        }
    }
    return segments;
}

// Exact 1D Dirichlet evolution on contiguous segments via DST-I. A segment
// of len interior points has walls one cell outside each end, so its modes
// are sin(k pi (j+1)/(len+1)) with exact energies E_k. Real and imaginary
// parts are transformed in place as a stride-2 pair.
class SineStepper {
public:
    SineStepper(double h, double dt, const PhysConsts& consts)
        : h_(h), dt_(dt), consts_(consts) {}

    ~SineStepper() {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        for (auto& [len, plan] : plans_) fftw_destroy_plan(plan);
    }

    void prepare(int len) {
        if (plans_.count(len)) return;
        std::vector<Complex> scratch(len);
        {
            std::lock_guard<std::mutex> lock(fftw_plan_mutex());
            double* base = reinterpret_cast<double*>(scratch.data());
            const fftw_r2r_kind kind = FFTW_RODFT00;
            plans_[len] = fftw_plan_many_r2r(1, &len, 2, base, nullptr, 2, 1, base, nullptr, 2, 1,
                                             &kind, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        auto& table = phases_[len];
        table.resize(2 * len);
        const double width = (len + 1) * h_;
        const double scale = 1.0 / (2.0 * (len + 1));
        for (int k = 1; k <= len; ++k) {
            const double kappa = k * kPi / width;
            const double phase = -consts_.hbar * kappa * kappa / (2.0 * consts_.mass) * dt_;
            // Fold the inverse-transform normalization into the phase table.
            table[2 * (k - 1)] = std::cos(phase) * scale;
            table[2 * (k - 1) + 1] = std::sin(phase) * scale;
        }
    }

    // Advances one contiguous segment by dt.
    void step(Complex* data, int len) {
        const fftw_plan plan = plans_.find(len)->second;
        const auto& table = phases_.find(len)->second;
        double* base = reinterpret_cast<double*>(data);
        fftw_execute_r2r(plan, base, base);
        for (int k = 0; k < len; ++k) {
            const double c = table[2 * k];
            const double s = table[2 * k + 1];
            const double a = base[2 * k];
            const double b = base[2 * k + 1];
            base[2 * k] = a * c - b * s;
            base[2 * k + 1] = a * s + b * c;
        }
        fftw_execute_r2r(plan, base, base);
    }

private:
    double h_;
    double dt_;
    PhysConsts consts_;
    std::map<int, fftw_plan> plans_;
    std::map<int, std::vector<double>> phases_;
};

void transpose_blocked(const std::vector<Complex>& src, std::vector<Complex>& dst,
                       int rows, int cols) {
    constexpr int kBlock = 32;
    for (int r0 = 0; r0 < rows; r0 += kBlock)
        for (int c0 = 0; c0 < cols; c0 += kBlock) {
            const int r1 = std::min(r0 + kBlock, rows);
            const int c1 = std::min(c0 + kBlock, cols);
            for (int r = r0; r < r1; ++r)
                for (int c = c0; c < c1; ++c)
                    dst[static_cast<size_t>(c) * rows + r] = src[static_cast<size_t>(r) * cols + c];
        }
}

double plain_norm_sq(const std::vector<Complex>& amp, double cell) {
    double sum = 0.0;
    for (const Complex& a : amp) sum += std::norm(a);
    return sum * cell;
}

} // namespace

WaveField2D propagate_dirichlet_2d(const WaveField2D& initial, const Mask2D& mask,
                                   const PropagatorConfig& cfg) {
    initial.validate();
    cfg.validate();
    const int nx = initial.grid_x.n_points;
    const int ny = initial.grid_y.n_points;
    if (mask.nx != nx || mask.ny != ny)
        throw DomainError("propagate_dirichlet_2d: mask does not match the grids");
    const double h = initial.grid_x.dx();
    if (std::abs(initial.grid_y.dx() - h) > 1e-12 * h)
        throw DomainError("propagate_dirichlet_2d: requires square cells");

    // Reject gross misuse (a field with real weight in the forbidden region);
    // residue from the staircase band near a masked wall is zero-forced and
    // belongs to the wall-discretization error budget.
    double outside = 0.0;
    double total = 0.0;
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy) {
            const double w = std::norm(initial.at(ix, iy));
            total += w;
            if (!mask.at(ix, iy)) outside += w;
        }
    if (total > 0.0 && outside > 1e-4 * total)
        throw DomainError("propagate_dirichlet_2d: field must vanish outside the mask");

    WaveField2D field = initial;
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            if (!mask.at(ix, iy)) field.at(ix, iy) = 0.0;
    if (cfg.n_steps == 0) return field;

    // Segments for both sweep orientations. Layout is y-fastest, so the
    // y-sweep works on contiguous rows; the x-sweep runs on the transpose.
    const std::vector<Segment> segs_y = collect_segments(mask, true);
    const std::vector<Segment> segs_x = collect_segments(mask, false);

    SineStepper stepper(h, cfg.dt, cfg.consts);
    for (const Segment& s : segs_y) stepper.prepare(s.len);
    for (const Segment& s : segs_x) stepper.prepare(s.len);

    const double cell = h * h;
    const double norm0 = plain_norm_sq(field.amplitudes, cell);

    std::vector<Complex>& data = field.amplitudes;
    std::vector<Complex> scratch(data.size());
    bool transposed = false; // false: [ix][iy] layout, fast axis y

    auto sweep = [&](bool fast_is_y) {
        const auto& segs = fast_is_y ? segs_y : segs_x;
        const int n_fast = fast_is_y ? ny : nx;
        for (const Segment& s : segs)
            stepper.step(data.data() + static_cast<size_t>(s.line) * n_fast + s.begin, s.len);
    };
    auto flip = [&]() {
        if (!transposed)
            transpose_blocked(data, scratch, nx, ny);
        else
            transpose_blocked(data, scratch, ny, nx);
        data.swap(scratch);
        transposed = !transposed;
    };

    for (int step = 0; step < cfg.n_steps; ++step) {
        // Alternating order: (y then x), (x then y), ... so that pairs of
        // steps form a symmetric product of the split sub-evolutions. Each
        // sweep acts on the fast axis of the current layout.
        sweep(!transposed);
        flip();
        sweep(!transposed);
        if ((step & 63) == 63)
            check_norm_drift(plain_norm_sq(data, cell), norm0, cfg.norm_drift_tol,
                             "propagate_dirichlet_2d");
    }
    if (transposed) flip();

    field.time = initial.time + cfg.n_steps * cfg.dt;
    check_norm_drift(plain_norm_sq(field.amplitudes, cell), norm0, cfg.norm_drift_tol,
                     "propagate_dirichlet_2d");
    return field;
}

// ---------------------------------------------------------------------------
// Phase-aligned L2 distance.
// ---------------------------------------------------------------------------

namespace {

// ||a - phase * b|| is minimal for phase = conj(<a|b>) / |<a|b>|; subtracting
// pointwise afterwards stays well conditioned even for nearly identical fields.
Complex alignment_phase(const Complex& inner) {
    const double mag = std::abs(inner);
    if (mag == 0.0) return Complex{1.0, 0.0};
    return std::conj(inner) / mag;
}

} // namespace

double l2_error(const WaveField& a, const WaveField& b) {
    const Complex phase = alignment_phase(overlap(a, b));
    const int n = a.grid.n_points;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        sum += w * std::norm(a.amplitudes[i] - phase * b.amplitudes[i]);
    }
    return std::sqrt(sum * a.grid.dx());
}

double l2_error(const WaveField2D& a, const WaveField2D& b) {
    const Complex phase = alignment_phase(overlap(a, b));
    const int nx = a.grid_x.n_points;
    const int ny = a.grid_y.n_points;
    double sum = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        const double wx = (ix == 0 || ix == nx - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int iy = 0; iy < ny; ++iy) {
            const double wy = (iy == 0 || iy == ny - 1) ? 0.5 : 1.0;
            row += wy * std::norm(a.at(ix, iy) - phase * b.at(ix, iy));
        }
        sum += wx * row;
    }
    return std::sqrt(sum * a.grid_x.dx() * a.grid_y.dx());
}

} // namespace matterwave
