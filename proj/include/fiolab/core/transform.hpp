#pragma once

// Discrete Fourier transform pair on a GridSpec, FFTW-backed.
//
// Convention (used by every operator in the library):
//   forward:  u_hat(xi) = integral u(x) e^{-i<x,xi>} dx
//   inverse:  u(x)      = (2pi)^{-n} integral u_hat(xi) e^{+i<x,xi>} dxi
// On the grid the integrals are h^n resp. (pi/L)^n weighted sums, and the
// pair is an exact inverse of itself (up to round-off).
//
// The reduction to a plain DFT: with x_i = -L + i h and xi_k = k pi / L,
//   e^{-i x_i xi_k} = (-1)^k e^{-2 pi i i k / N},
// so the forward transform is an FFT followed by a (-1)^k twist, a
// reordering to ascending k, and an h^n scale.

#include <fftw3.h>

#include <mutex>
#include <map>
#include <tuple>

#include "fiolab/core/field.hpp"

namespace fiolab {

namespace detail {

// FFTW planning is not thread-safe; executing a plan on fresh buffers is.
class FftwPlanCache {
  public:
    static FftwPlanCache& instance() {
        static FftwPlanCache cache;
        return cache;
    }

    fftw_plan get(int rank, int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_tuple(rank, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::size_t count = 1;
        for (int d = 0; d < rank; ++d) count *= static_cast<std::size_t>(n);
        std::vector<cplx> scratch(count);
        int dims[3] = {n, n, n};
        fftw_plan p = fftw_plan_dft(rank, dims, reinterpret_cast<fftw_complex*>(scratch.data()),
                                    reinterpret_cast<fftw_complex*>(scratch.data()), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

  private:
    FftwPlanCache() = default;
    ~FftwPlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

inline void execute_dft(int rank, int n, int sign, std::vector<cplx>& data) {
    fftw_plan p = FftwPlanCache::instance().get(rank, n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

}  // namespace detail

inline SpectralField fourier_transform(const Field& f) {
    f.validate();
    const GridSpec& g = f.grid;
    const int n = g.points_per_axis;
    std::vector<cplx> buf = f.values;
    detail::execute_dft(g.dim, n, FFTW_FORWARD, buf);

    SpectralField out = SpectralField::zeros(g);
    const double scale = g.cell_measure();
    for (std::size_t flat = 0; flat < out.coefficients.size(); ++flat) {
        const auto idx = g.axis_indices(flat);
        std::array<int, 2> src{};
        int ksum = 0;
        for (int d = 0; d < g.dim; ++d) {
            const int k = g.freq_k(idx[d]);
            ksum += k;
            src[d] = (k + n) % n;
        }
        const double sign = (ksum % 2 == 0) ? 1.0 : -1.0;
        out.coefficients[flat] = scale * sign * buf[g.flat_index(src)];
    }
    return out;
}

inline Field inverse_fourier_transform(const SpectralField& F) {
    F.validate();
    const GridSpec& g = F.grid;
    const int n = g.points_per_axis;

    std::vector<cplx> buf(g.total_points());
    for (std::size_t flat = 0; flat < buf.size(); ++flat) {
        const auto idx = g.axis_indices(flat);
        std::array<int, 2> dst{};
        int ksum = 0;
        for (int d = 0; d < g.dim; ++d) {
            const int k = g.freq_k(idx[d]);
            ksum += k;
            dst[d] = (k + n) % n;
        }
        const double sign = (ksum % 2 == 0) ? 1.0 : -1.0;
        buf[g.flat_index(dst)] = sign * F.coefficients[flat];
    }
    detail::execute_dft(g.dim, n, FFTW_BACKWARD, buf);

    Field out = Field::zeros(g);
    double scale = F.grid.freq_cell_measure();
    for (int d = 0; d < g.dim; ++d) scale /= 2.0 * pi;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = scale * buf[i];
    return out;
}

}  // namespace fiolab
