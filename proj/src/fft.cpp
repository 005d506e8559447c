#include "bisar/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "bisar/parallel.hpp"

namespace bisar::fft {

namespace {

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex, FftwFree>;

Buffer make_buffer(std::size_t n) {
    return Buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// Plans are created once per (size, direction) with FFTW_ESTIMATE so the
// chosen algorithm never depends on timing. Planning is not thread safe in
// FFTW; execution with fftw_execute_dft on aligned buffers is.
class PlanCache {
public:
    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        Buffer in = make_buffer(n);
        Buffer out = make_buffer(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign, FFTW_ESTIMATE);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

struct Scratch {
    std::size_t n = 0;
    Buffer in;
    Buffer out;
    void ensure(std::size_t size) {
        if (size == n) return;
        in = make_buffer(size);
        out = make_buffer(size);
        n = size;
    }
};

void transform(std::span<cplx> data, int sign) {
    const std::size_t n = data.size();
    if (n == 0) return;
    thread_local Scratch scratch;
    scratch.ensure(n);
    fftw_plan plan = cache().get(n, sign);
    auto* in = reinterpret_cast<cplx*>(scratch.in.get());
    std::copy(data.begin(), data.end(), in);
    fftw_execute_dft(plan, scratch.in.get(), scratch.out.get());
    const auto* out = reinterpret_cast<const cplx*>(scratch.out.get());
    if (sign == FFTW_BACKWARD) {
        const double scale = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) data[i] = out[i] * scale;
    } else {
        std::copy(out, out + n, data.begin());
    }
}

void transform_cols(Grid2D<cplx>& grid, int sign) {
    const std::size_t rows = grid.rows();
    parallel_for(0, grid.cols(), [&](std::size_t c) {
        std::vector<cplx> column(rows);
        for (std::size_t r = 0; r < rows; ++r) column[r] = grid(r, c);
        transform(column, sign);
        for (std::size_t r = 0; r < rows; ++r) grid(r, c) = column[r];
    });
}

}  // namespace

void forward(std::span<cplx> data) { transform(data, FFTW_FORWARD); }
void inverse(std::span<cplx> data) { transform(data, FFTW_BACKWARD); }

void forward_rows(Grid2D<cplx>& grid) {
    parallel_for(0, grid.rows(), [&](std::size_t r) { forward(grid.row(r)); });
}

void inverse_rows(Grid2D<cplx>& grid) {
    parallel_for(0, grid.rows(), [&](std::size_t r) { inverse(grid.row(r)); });
}

void forward_cols(Grid2D<cplx>& grid) { transform_cols(grid, FFTW_FORWARD); }
void inverse_cols(Grid2D<cplx>& grid) { transform_cols(grid, FFTW_BACKWARD); }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::size_t next_fast_size(std::size_t n) {
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
        std::size_t r = m;
        for (std::size_t f : {2u, 3u, 5u})
            while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

}  // namespace bisar::fft
