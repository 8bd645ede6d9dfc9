/* Copyright 2026 The laceprep Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <cmath>
#include <cstdint>

namespace laceprep {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter).  Streams keyed by trial or site index make results
// independent of evaluation order and thread count.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(stream * 0xbf58476d1ce4e5b9ull)) {}

    std::uint64_t next_u64() { return at(counter_++); }

    // Stateless access: value at an explicit counter.
    std::uint64_t at(std::uint64_t counter) const {
        std::uint64_t v = key_ + counter * 0x9e3779b97f4a7c15ull;
        v = mix(v);
        v = mix(v ^ (counter << 1));
        return v;
    }

    double next_double() { // uniform in [0,1)
        return (next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    // Bernoulli(p) draw.
    bool bernoulli(double p) { return next_double() < p; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Binomial(n, p) sampled by inverse CDF on a single uniform: walk outward
// from the mode using the pmf recurrence.  Exact to double precision and
// O(sigma) per draw.
inline std::int64_t binomial_inverse_cdf(std::int64_t n, double p, double u) {
    if (n <= 0) return 0;
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    const std::int64_t mode = static_cast<std::int64_t>((n + 1) * p);
    // log pmf at mode via lgamma
    auto log_pmf = [&](std::int64_t k) {
        return std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) -
               std::lgamma(double(n - k + 1)) + k * std::log(p) +
               (n - k) * std::log1p(-p);
    };
    double pm = std::exp(log_pmf(mode));
    // Expand symmetrically around the mode, accumulating probability mass.
    double lo_p = pm, hi_p = pm, total = pm;
    std::int64_t lo = mode, hi = mode;
    const double ratio_up_num = p, ratio_up_den = 1.0 - p;
    while (total < u && (lo > 0 || hi < n)) {
        if (hi < n) {
            hi_p *= (double(n - hi) / double(hi + 1)) * (ratio_up_num / ratio_up_den);
            ++hi;
            total += hi_p;
            if (total >= u) return hi;
        }
        if (lo > 0) {
            lo_p *= (double(lo) / double(n - lo + 1)) * (ratio_up_den / ratio_up_num);
            --lo;
            total += lo_p;
            if (total >= u) return lo;
        }
    }
    return mode;
}

} // namespace laceprep
