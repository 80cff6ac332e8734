// Sampling estimators of a_n, b_n, delta_n for blocklengths beyond the
// exhaustive limit. Each sample classifies its output word with exact
// rational comparisons; only the final aggregation is floating point.

#pragma once

#include "mapties/classify.hpp"
#include "mapties/rng.hpp"

#include <cmath>

namespace mapties {

struct Estimate {
    double point = 0.0;
    double stderr_value = 0.0;  // sqrt(p(1-p)/samples) for a Bernoulli mean
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

struct MetricEstimates {
    Estimate a, b, delta;
};

/// Draw `samples` (codeword, output) pairs and estimate the three metrics.
/// Deterministic in (instance, samples, seed); per-sample streams make block
/// order irrelevant.
inline MetricEstimates estimate_metrics(const Instance& inst, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("estimate_metrics requires samples >= 1");
    const ScoreTable table(inst);
    const int M = inst.M();
    const int n = inst.n();

    // Priors over a common denominator for exact index sampling.
    BigInt common_den = 1;
    for (const auto& pr : inst.prior()) common_den = boost::multiprecision::lcm(common_den, denominator(pr));
    std::vector<BigInt> cumulative(static_cast<std::size_t>(M) + 1, 0);
    for (int i = 1; i <= M; ++i) {
        const Rational& pr = inst.prior_of(i);
        cumulative[static_cast<std::size_t>(i)] =
            cumulative[static_cast<std::size_t>(i - 1)] + numerator(pr) * (common_den / denominator(pr));
    }
    const bool small_den = common_den <= BigInt(UINT64_MAX);
    const std::uint64_t den64 = small_den ? common_den.convert_to<std::uint64_t>() : 0;

    const std::uint64_t flip_num = numerator(inst.p()).convert_to<std::uint64_t>();
    const std::uint64_t flip_den = denominator(inst.p()).convert_to<std::uint64_t>();

    std::uint64_t err_count = 0, tiefree_count = 0, tie_count = 0;
    std::vector<BigInt> s;
    for (std::uint64_t sample = 0; sample < samples; ++sample) {
        CounterRng rng = CounterRng::keyed(seed, sample);

        const BigInt draw = small_den ? BigInt(rng.below(den64)) : rng.below_big(common_den);
        int sent = M;
        for (int i = 1; i <= M; ++i)
            if (draw < cumulative[static_cast<std::size_t>(i)]) {
                sent = i;
                break;
            }

        Word flips = 0;
        for (int t = 0; t < n; ++t)
            if (rng.below(flip_den) < flip_num) flips |= Word{1} << t;
        const Word y = inst.codeword(sent) ^ flips;

        table.scores(y, s);
        std::size_t best = 0;
        int mult = 1;
        for (std::size_t r = 1; r < s.size(); ++r) {
            if (s[r] > s[best]) {
                best = r;
                mult = 1;
            } else if (s[r] == s[best]) {
                ++mult;
            }
        }
        const std::size_t sent_idx = static_cast<std::size_t>(sent - 1);
        if (sent_idx != best) ++err_count;  // least argmax is the decoder's pick
        if (s[sent_idx] < s[best]) ++tiefree_count;
        if (s[sent_idx] == s[best] && mult >= 2) ++tie_count;
    }

    const auto make = [&](std::uint64_t count) {
        Estimate e;
        e.point = static_cast<double>(count) / static_cast<double>(samples);
        e.stderr_value = std::sqrt(e.point * (1.0 - e.point) / static_cast<double>(samples));
        e.samples = samples;
        e.seed = seed;
        return e;
    };
    return MetricEstimates{make(err_count), make(tiefree_count), make(tie_count)};
}

}  // namespace mapties
