// Copyright 2026 The weakmeas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakmeas/fourier.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "weakmeas/errors.hpp"

namespace weakmeas::fourier {

namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex *p) const { fftw_free(p); }
};

struct PlanDestroy {
    void operator()(fftw_plan_s *p) const {
        const std::scoped_lock lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

} // namespace

void transform_axis(std::span<cplx> data, std::span<const std::size_t> shape,
                    std::size_t axis, Direction dir) {
    if (axis >= shape.size()) {
        throw DimensionError("transform_axis: axis out of range");
    }
    std::size_t total = 1;
    for (auto s : shape) {
        total *= s;
    }
    if (total != data.size()) {
        throw DimensionError("transform_axis: shape does not match data");
    }
    if (total == 0) {
        return;
    }

    std::size_t outer = 1;
    for (std::size_t k = 0; k < axis; ++k) {
        outer *= shape[k];
    }
    const std::size_t n = shape[axis];
    const std::size_t inner = total / (outer * n);

    // Copy into an FFTW-aligned buffer so plan choice does not depend on the
    // caller's allocation alignment; this keeps results bit-reproducible.
    std::unique_ptr<fftw_complex, FftwFree> buf(
        static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * total)));
    auto *raw = reinterpret_cast<cplx *>(buf.get());
    std::copy(data.begin(), data.end(), raw);

    fftw_iodim dim{static_cast<int>(n), static_cast<int>(inner),
                   static_cast<int>(inner)};
    fftw_iodim loops[2] = {
        {static_cast<int>(outer), static_cast<int>(n * inner),
         static_cast<int>(n * inner)},
        {static_cast<int>(inner), 1, 1},
    };
    const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;

    std::unique_ptr<fftw_plan_s, PlanDestroy> plan;
    {
        const std::scoped_lock lock(planner_mutex());
        plan.reset(fftw_plan_guru_dft(1, &dim, 2, loops, buf.get(), buf.get(),
                                      sign, FFTW_ESTIMATE));
    }
    if (!plan) {
        throw Error("transform_axis: FFTW could not create a plan");
    }
    fftw_execute(plan.get());
    std::copy(raw, raw + total, data.begin());
}

} // namespace weakmeas::fourier
