#include "smnorm/lp_reference.hpp"

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <new>

#include "smnorm/errors.hpp"
#include "smnorm/geometry.hpp"
#include "smnorm/morrey.hpp"

namespace smnorm {

namespace {

/// fftw_execute is the only thread-safe FFTW entry point; planner calls are
/// serialized so norm evaluations may run on concurrent threads.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftBuffer {
    explicit FftBuffer(std::size_t count)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count))) {
        if (!data) throw std::bad_alloc();
    }
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;
    ~FftBuffer() { fftw_free(data); }
    fftw_complex* data;
};

struct FftPlan {
    FftPlan(const Grid& grid, fftw_complex* in, fftw_complex* out, int sign) {
        const std::lock_guard<std::mutex> lock(planner_mutex());
        const int n = grid.nodes_per_axis();
        plan = grid.dim() == 1 ? fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE)
                               : fftw_plan_dft_2d(n, n, in, out, sign, FFTW_ESTIMATE);
        if (!plan) throw IoError("could not plan the Fourier transform");
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    ~FftPlan() {
        const std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    void run() const { fftw_execute(plan); }
    fftw_plan plan;
};

void load_samples(const SampledFunction& f, fftw_complex* dst) {
    const std::size_t count = f.grid().node_count();
    for (std::size_t i = 0; i < count; ++i) {
        dst[i][0] = f.re()[i];
        dst[i][1] = f.is_complex() ? f.im()[i] : 0.0;
    }
}

SampledFunction store_samples(const Grid& grid, const fftw_complex* src) {
    const std::size_t count = grid.node_count();
    std::vector<double> re(count), im(count);
    for (std::size_t i = 0; i < count; ++i) {
        re[i] = src[i][0];
        im[i] = src[i][1];
    }
    return SampledFunction(grid, std::move(re), std::move(im));
}

int log2_int(int n) {
    int j = 0;
    while ((1 << (j + 1)) <= n) ++j;
    return j;
}

} // namespace

double cutoff_value(CutoffProfile profile, double r) {
    r = std::fabs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 1.5) return 0.0;
    const auto bump = [profile](double x) {
        return profile == CutoffProfile::standard ? std::exp(-1.0 / x)
                                                  : std::exp(-1.0 / (x * x));
    };
    const double up = bump(1.5 - r);
    return up / (up + bump(r - 1.0));
}

DyadicPartition DyadicPartition::build(const Grid& grid, CutoffProfile profile) {
    if (!grid.periodic())
        throw GeometryError("the dyadic decomposition needs a periodic grid");
    const int n = grid.nodes_per_axis();
    const int top = log2_int(n) - 2;  // largest J with 2^(J+1) <= n/2
    if (top < 2) throw ParamError("grid too coarse for a dyadic decomposition");

    DyadicPartition part(grid, top);
    const std::size_t count = grid.node_count();
    part.freq_.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto idx = grid.index_of(i);
        double s = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            int k = idx[static_cast<std::size_t>(a)];
            if (k > n / 2) k -= n;
            const double xi = k / grid.extent();
            s += xi * xi;
        }
        part.freq_[i] = std::sqrt(s);
    }

    part.symbols_.assign(static_cast<std::size_t>(top) + 1, std::vector<double>(count));
    for (int j = 0; j <= top; ++j) {
        const double scale = std::pow(0.5, j);
        auto& sym = part.symbols_[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < count; ++i) {
            const double r = part.freq_[i];
            sym[i] = j == 0 ? cutoff_value(profile, r)
                            : cutoff_value(profile, scale * r) -
                                  cutoff_value(profile, 2.0 * scale * r);
        }
    }
    return part;
}

std::vector<SampledFunction> lp_bands(const SampledFunction& f,
                                      const DyadicPartition& partition) {
    const Grid& grid = f.grid();
    if (grid != partition.grid())
        throw ParamError("partition was built for a different grid");
    const std::size_t count = grid.node_count();

    FftBuffer in(count), spectrum(count), work(count), band(count);
    const FftPlan forward(grid, in.data, spectrum.data, FFTW_FORWARD);
    const FftPlan backward(grid, work.data, band.data, FFTW_BACKWARD);

    load_samples(f, in.data);
    forward.run();

    const double norm = 1.0 / static_cast<double>(count);
    std::vector<SampledFunction> out;
    out.reserve(static_cast<std::size_t>(partition.bands()));
    for (int j = 0; j < partition.bands(); ++j) {
        const auto& sym = partition.symbol(j);
        for (std::size_t i = 0; i < count; ++i) {
            work.data[i][0] = spectrum.data[i][0] * sym[i] * norm;
            work.data[i][1] = spectrum.data[i][1] * sym[i] * norm;
        }
        backward.run();
        out.push_back(store_samples(grid, band.data));
    }
    return out;
}

SampledFunction lp_band(const SampledFunction& f, const DyadicPartition& partition, int j) {
    if (j < 0 || j > partition.top_level())
        throw ParamError("band index outside the partition");
    const Grid& grid = f.grid();
    if (grid != partition.grid())
        throw ParamError("partition was built for a different grid");
    const std::size_t count = grid.node_count();

    FftBuffer in(count), spectrum(count), band(count);
    const FftPlan forward(grid, in.data, spectrum.data, FFTW_FORWARD);
    const FftPlan backward(grid, spectrum.data, band.data, FFTW_BACKWARD);

    load_samples(f, in.data);
    forward.run();
    const auto& sym = partition.symbol(j);
    const double norm = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        spectrum.data[i][0] *= sym[i] * norm;
        spectrum.data[i][1] *= sym[i] * norm;
    }
    backward.run();
    return store_samples(grid, band.data);
}

std::vector<double> band_energies(const SampledFunction& f,
                                  const DyadicPartition& partition) {
    const auto bands = lp_bands(f, partition);
    const double cell = std::pow(f.grid().spacing(), f.grid().dim());
    std::vector<double> out;
    out.reserve(bands.size());
    for (const auto& b : bands) {
        double s = 0.0;
        for (std::size_t i = 0; i < b.re().size(); ++i)
            s += b.re()[i] * b.re()[i] + b.im()[i] * b.im()[i];
        out.push_back(s * cell);
    }
    return out;
}

double lp_norm(const SampledFunction& f, const ValidatedParams& params,
               const DyadicPartition& partition) {
    const Grid& grid = f.grid();
    if (params.dim() != grid.dim())
        throw ParamError("parameter dimension does not match the grid");
    const auto bands = lp_bands(f, partition);
    const std::size_t count = grid.node_count();

    const double s = params.s();
    const Exponent q = params.q();
    std::vector<double> plane(count, 0.0);
    for (int j = 0; j < partition.bands(); ++j) {
        const double weight = std::pow(2.0, j * s);
        const auto mod = bands[static_cast<std::size_t>(j)].modulus();
        if (q.is_inf()) {
            for (std::size_t i = 0; i < count; ++i)
                plane[i] = std::max(plane[i], weight * mod[i]);
        } else {
            for (std::size_t i = 0; i < count; ++i)
                plane[i] += std::pow(weight * mod[i], q.value());
        }
    }
    if (!q.is_inf()) {
        const double inv = 1.0 / q.value();
        for (auto& x : plane) x = std::pow(x, inv);
    }
    return morrey_plane_norm(grid, FullTorus{}, plane, params.p(), params.u(),
                             RadiusLadder::full(grid));
}

NormReport lp_quasinorm(const SampledFunction& f, const ValidatedParams& params) {
    auto start = std::chrono::steady_clock::now();
    NormReport report;
    report.route = Route::lp;
    report.base_term = BaseTerm::plain;
    report.domain = domain_name(FullTorus{});
    report.n = f.grid().nodes_per_axis();
    report.dim = f.grid().dim();
    report.params = params.raw();
    report.lower_window = params.lower_window();
    report.window_ok = params.window_ok();

    const auto partition = DyadicPartition::build(f.grid());
    // One indivisible Morrey norm: no base/seminorm split.
    report.base = 0.0;
    report.seminorm = lp_norm(f, params, partition);
    report.total = report.seminorm;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace smnorm
