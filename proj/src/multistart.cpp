// Copyright 2026 The qihe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qihe/multistart.hpp"

#include <cmath>
#include <memory>
#include <mutex>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

namespace qihe {

namespace {

std::once_flag gsl_handler_once;

void disable_gsl_abort() {
    std::call_once(gsl_handler_once, [] { gsl_set_error_handler_off(); });
}

struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
using GslVector = std::unique_ptr<gsl_vector, VectorDeleter>;
using GslMinimizer = std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter>;

struct CallContext {
    const Objective* f;
    RealVector scratch;
    int evaluations = 0;
    double best_value = MinimizeResult::kHuge;
    RealVector best_x;
};

double trampoline(const gsl_vector* v, void* params) {
    auto* ctx = static_cast<CallContext*>(params);
    for (Eigen::Index i = 0; i < ctx->scratch.size(); ++i) ctx->scratch(i) = gsl_vector_get(v, static_cast<size_t>(i));
    ++ctx->evaluations;
    double value = (*ctx->f)(ctx->scratch);
    if (!std::isfinite(value)) value = MinimizeResult::kHuge;
    if (value < ctx->best_value) {
        ctx->best_value = value;
        ctx->best_x = ctx->scratch;
    }
    return value;
}

GslVector to_gsl(const RealVector& x) {
    GslVector v(gsl_vector_alloc(static_cast<size_t>(x.size())));
    for (Eigen::Index i = 0; i < x.size(); ++i) gsl_vector_set(v.get(), static_cast<size_t>(i), x(i));
    return v;
}

} // namespace

MinimizeResult simplex_minimize(const Objective& f, const RealVector& start, const SimplexOptions& options) {
    disable_gsl_abort();
    const auto n = static_cast<size_t>(start.size());
    CallContext ctx{&f, start, 0, MinimizeResult::kHuge, start};

    if (n == 0) {
        MinimizeResult r;
        r.x = start;
        r.value = f(start);
        r.evaluations = 1;
        r.converged = true;
        return r;
    }

    gsl_multimin_function fn{&trampoline, n, &ctx};
    GslMinimizer minimizer(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));

    bool converged = false;
    double step = options.initial_step;
    RealVector x0 = start;
    for (int round = 0; round <= options.reinitializations; ++round) {
        GslVector x = to_gsl(x0);
        GslVector steps(gsl_vector_alloc(n));
        gsl_vector_set_all(steps.get(), step);
        gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), steps.get());
        const double value_at_round_start = ctx.best_value;

        converged = false;
        while (ctx.evaluations < options.max_evaluations) {
            if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
            const double size = gsl_multimin_fminimizer_size(minimizer.get());
            if (size < options.size_tolerance) {
                converged = true;
                break;
            }
        }
        if (!converged || ctx.evaluations >= options.max_evaluations) break;
        // A re-seeded simplex that finds nothing better means we are done.
        if (round > 0 && !(ctx.best_value < value_at_round_start - 1e-15)) break;
        x0 = ctx.best_x;
        step = std::max(options.initial_step * 0.1, 1e3 * options.size_tolerance);
    }

    MinimizeResult r;
    r.x = ctx.best_x;
    r.value = ctx.best_value;
    r.evaluations = ctx.evaluations;
    r.converged = converged;
    return r;
}

MultistartResult multistart_minimize(const Objective& f, const std::vector<RealVector>& starts,
                                     const SimplexOptions& options, Execution execution) {
    disable_gsl_abort();
    const int n = static_cast<int>(starts.size());
    std::vector<MinimizeResult> runs(static_cast<size_t>(n));

    if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < n; ++i) runs[static_cast<size_t>(i)] = simplex_minimize(f, starts[static_cast<size_t>(i)], options);
    } else {
        for (int i = 0; i < n; ++i) runs[static_cast<size_t>(i)] = simplex_minimize(f, starts[static_cast<size_t>(i)], options);
    }

    MultistartResult out;
    out.restart_values.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& r = runs[static_cast<size_t>(i)];
        out.restart_values.push_back(r.value);
        out.total_evaluations += r.evaluations;
        if (out.best_restart < 0 || r.value < out.best.value) {
            out.best = r;
            out.best_restart = i;
        }
    }
    return out;
}

} // namespace qihe
