#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wcec/benchmark.hpp"
#include "wcec/fit.hpp"

namespace wcec {

enum class Objective { Maximize, Minimize };

struct GaConfig {
    int population = 64;
    int generations = 100;
    int tournament_size = 4;
    double crossover_rate = 0.9;
    double mutation_rate = -1.0; // per bit; negative means 1/(8 * chromosome bytes)
    Objective objective = Objective::Maximize;
    uint64_t seed = 1;
};

struct GaGenerationStat {
    int generation;
    double best;  // avg power, mW
    double mean;
};

struct GaResult {
    InputDataset best_dataset;
    double best_fitness = 0.0; // avg power of the best individual, mW
    std::vector<GaGenerationStat> trace;
};

// Average power over n_runs datasets drawn uniformly over all input bits.
EmpiricalSample random_profile(BenchmarkId benchmark, const PowerModelParams& params,
                               int n_runs, uint64_t seed);

// Byte-string GA: tournament selection, uniform crossover, per-bit mutation,
// elitism of one. Fitness is the simulated average power (negated when
// minimizing); deterministic for a fixed config.
GaResult ga_optimize(BenchmarkId benchmark, const PowerModelParams& params,
                     const GaConfig& config);

enum class PatternId {
    AllZero,
    AllOne,
    StridedOnes,
    StridedRandom,
    PatternBytes,
    SparseOne,
    RestrictedBits,
    AllSame,
};

struct PatternSpec {
    PatternId id;
    int stride = 0;    // strided_*
    uint8_t byte = 0;  // pattern_bytes
    int position = 0;  // sparse_one, element index
    int n = 0;         // restricted_bits: random bits
    int m = 0;         // restricted_bits: bit offset
    uint8_t value = 0; // all_same

    std::string name() const;
};

// The hand-crafted suite: all-zero/all-one, strided ones and strided random
// at strides 2/4/8/16, 0xAA/0x55 byte patterns, one-hot elements, random
// n-bit values at m-bit offsets swept over the element width, and an
// all-elements-same sweep. Randomized patterns draw from `seed`.
std::vector<std::pair<PatternSpec, InputDataset>> generate_patterns(BenchmarkId benchmark,
                                                                    uint64_t seed);

struct PatternResult {
    PatternSpec spec;
    double avg_power_mw;
};

std::vector<PatternResult> pattern_sweep(BenchmarkId benchmark,
                                         const PowerModelParams& params, uint64_t seed);

} // namespace wcec
