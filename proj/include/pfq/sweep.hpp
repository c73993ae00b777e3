// SPDX-License-Identifier: Apache-2.0
//
// Seeded random verification sweeps.  Draws come from SplitMix64 streams
// (one per draw index), so a (seed, config) pair reproduces bit-identical
// inputs on any platform and any worker-thread count.
#pragma once

#include <cstdint>
#include <variant>

#include "pfq/identities.hpp"

namespace pfq {

/// SplitMix64 (Steele, Lea, Vigna): state advances by the 64-bit golden
/// ratio; each output is a finalizing mix of the state.  Stream for draw k
/// starts at state = seed + k * 0x9e3779b97f4a7c15.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(seed + index * 0x9e3779b97f4a7c15ULL);
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1) with 53 random bits
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

struct ParameterBox {
    double re_min = -2.0;
    double re_max = 3.0;
    double im_min = -1.0;
    double im_max = 1.0;
};

enum class OutputFormat { json, csv, text };

struct SweepConfig {
    Theorem theorem = Theorem::T1;
    int p = 1;
    int draws = 200;
    std::uint64_t seed = 0;
    ParameterBox box;
    double tol = 1e-10;
    bool relaxed_domain = false;
    OutputFormat format = OutputFormat::text;
    int threads = 1;
};

ComplexDD draw_parameter(SplitMix64 &rng, const ParameterBox &box);

/// Box draw redrawn until at least 0.1 away from every nonpositive integer.
ComplexDD draw_denominator(SplitMix64 &rng, const ParameterBox &box);

/// Uniform in the closed disk |z| <= radius (rejection from the square).
ComplexDD draw_in_disk(SplitMix64 &rng, double radius);

/// The random verification case for one theorem: T1/T2 produce an
/// AdditionInput, T3/T4 a HyperSpec.  Arguments are drawn inside the
/// theorem's stated domain; with relaxed_domain, T2 draws explore the wider
/// |y| < |1-x| region (such records come back flagged experimental).
std::variant<AdditionInput, HyperSpec> make_draw(Theorem theorem, int p,
                                                 const ParameterBox &box, SplitMix64 &rng,
                                                 bool relaxed_domain = false);

/// Deterministic single draw: case construction and verification.
IdentityReport run_draw(const SweepConfig &config, std::uint64_t index);

struct SweepResult {
    std::vector<IdentityReport> reports;
    std::vector<double> millis; ///< wall time per draw; CSV output only
    double max_rel_diff = 0.0;
    int failures = 0;
};

SweepResult run_sweep(const SweepConfig &config);

/// Full sweep artifact in the requested format (JSON and text are
/// byte-deterministic for a fixed seed and config; CSV appends timings).
std::string render_sweep(const SweepConfig &config, const SweepResult &result);

} // namespace pfq
