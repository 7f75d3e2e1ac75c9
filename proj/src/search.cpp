#include "wcec/search.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "wcec/rng.hpp"

namespace wcec {

EmpiricalSample random_profile(BenchmarkId benchmark, const PowerModelParams& params,
                               int n_runs, uint64_t seed) {
    if (n_runs < 1) throw std::invalid_argument("random_profile: n_runs must be positive");
    EmpiricalSample sample;
    sample.unit = Unit::MilliWatt;
    sample.values.resize(n_runs);
    for (int i = 0; i < n_runs; ++i) {
        const InputDataset data = random_dataset(benchmark, mix_seed(seed, 2 * i));
        const EnergyTrace trace =
            run_benchmark(benchmark, data, params, mix_seed(seed, 2 * i + 1));
        sample.values[i] = trace.avg_power_mw;
    }
    return sample;
}

namespace {

struct Individual {
    std::vector<uint8_t> genes;
    double avg_power = 0.0;
    double score = 0.0; // avg power, sign-flipped when minimizing
};

} // namespace

GaResult ga_optimize(BenchmarkId benchmark, const PowerModelParams& params,
                     const GaConfig& config) {
    if (config.population < 2) throw std::invalid_argument("ga_optimize: population must be >= 2");
    if (config.tournament_size < 1 || config.tournament_size > config.population)
        throw std::invalid_argument("ga_optimize: bad tournament size");

    const size_t len = layout_for(benchmark).bytes;
    const double mut_rate =
        config.mutation_rate >= 0.0 ? config.mutation_rate : 1.0 / (8.0 * double(len));
    const double sign = config.objective == Objective::Maximize ? 1.0 : -1.0;

    auto rng = make_rng(mix_seed(config.seed, 0x6a5));
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, config.population - 1);

    uint64_t eval_counter = 0;
    auto evaluate = [&](Individual& ind) {
        const InputDataset data{benchmark, ind.genes};
        const EnergyTrace trace =
            run_benchmark(benchmark, data, params, mix_seed(config.seed, eval_counter++));
        ind.avg_power = trace.avg_power_mw;
        ind.score = sign * trace.avg_power_mw;
    };

    std::vector<Individual> pop(config.population);
    for (auto& ind : pop) {
        ind.genes.resize(len);
        for (auto& g : ind.genes) g = static_cast<uint8_t>(byte(rng));
        evaluate(ind);
    }

    auto best_of = [](const std::vector<Individual>& v) {
        size_t best = 0;
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i].score > v[best].score) best = i;
        return best;
    };
    auto tournament = [&]() -> const Individual& {
        size_t best = size_t(pick(rng));
        for (int t = 1; t < config.tournament_size; ++t) {
            const size_t c = size_t(pick(rng));
            if (pop[c].score > pop[best].score) best = c;
        }
        return pop[best];
    };

    GaResult result;
    Individual global_best = pop[best_of(pop)];

    for (int gen = 0; gen < config.generations; ++gen) {
        double mean = 0.0;
        for (const auto& ind : pop) mean += ind.avg_power;
        mean /= double(pop.size());
        const Individual& gen_best = pop[best_of(pop)];
        result.trace.push_back({gen, gen_best.avg_power, mean});
        if (gen_best.score > global_best.score) global_best = gen_best;

        std::vector<Individual> next;
        next.reserve(pop.size());
        next.push_back(gen_best); // elitism of one, fitness kept
        while (next.size() < pop.size()) {
            const Individual& a = tournament();
            const Individual& b = tournament();
            Individual child;
            child.genes = a.genes;
            if (unit(rng) < config.crossover_rate) {
                for (size_t i = 0; i < len; ++i)
                    if (unit(rng) < 0.5) child.genes[i] = b.genes[i];
            }
            for (size_t i = 0; i < len; ++i)
                for (int bit = 0; bit < 8; ++bit)
                    if (unit(rng) < mut_rate) child.genes[i] ^= uint8_t(1u << bit);
            evaluate(child);
            next.push_back(std::move(child));
        }
        pop = std::move(next);
    }
    const Individual& final_best = pop[best_of(pop)];
    if (final_best.score > global_best.score) global_best = final_best;

    result.best_dataset = InputDataset{benchmark, global_best.genes};
    result.best_fitness = global_best.avg_power;
    return result;
}

std::string PatternSpec::name() const {
    std::ostringstream os;
    switch (id) {
    case PatternId::AllZero: return "all_zero";
    case PatternId::AllOne: return "all_one";
    case PatternId::StridedOnes: os << "strided_ones(" << stride << ")"; break;
    case PatternId::StridedRandom: os << "strided_random(" << stride << ")"; break;
    case PatternId::PatternBytes:
        os << "pattern_bytes(0x" << std::hex << int(byte) << ")";
        break;
    case PatternId::SparseOne: os << "sparse_one(" << position << ")"; break;
    case PatternId::RestrictedBits: os << "restricted_bits(" << n << "," << m << ")"; break;
    case PatternId::AllSame: os << "all_same(" << int(value) << ")"; break;
    }
    return os.str();
}

namespace {

void set_element(std::vector<uint8_t>& bytes, int element_bits, int index, uint16_t value) {
    if (element_bits == 8) {
        bytes[index] = static_cast<uint8_t>(value);
    } else {
        bytes[2 * index] = static_cast<uint8_t>(value & 0xff); // little-endian
        bytes[2 * index + 1] = static_cast<uint8_t>(value >> 8);
    }
}

} // namespace

std::vector<std::pair<PatternSpec, InputDataset>> generate_patterns(BenchmarkId benchmark,
                                                                    uint64_t seed) {
    const InputLayout& layout = layout_for(benchmark);
    const size_t bytes = layout.bytes;
    const int ebits = layout.element_bits;
    const int elements = int(bytes) / (ebits / 8);
    auto rng = make_rng(mix_seed(seed, 0x9a77));
    std::uniform_int_distribution<int> byte_dist(0, 255);

    std::vector<std::pair<PatternSpec, InputDataset>> out;
    auto emit = [&](PatternSpec spec, std::vector<uint8_t> data) {
        out.push_back({spec, InputDataset{benchmark, std::move(data)}});
    };

    emit({.id = PatternId::AllZero}, std::vector<uint8_t>(bytes, 0x00));
    emit({.id = PatternId::AllOne}, std::vector<uint8_t>(bytes, 0xff));

    for (int stride : {2, 4, 8, 16}) {
        std::vector<uint8_t> ones(bytes, 0x00);
        std::vector<uint8_t> rand(bytes, 0x00);
        for (size_t i = 0; i < bytes; i += size_t(stride)) {
            ones[i] = 0x01;
            rand[i] = static_cast<uint8_t>(byte_dist(rng));
        }
        emit({.id = PatternId::StridedOnes, .stride = stride}, std::move(ones));
        emit({.id = PatternId::StridedRandom, .stride = stride}, std::move(rand));
    }

    for (uint8_t b : {uint8_t(0xaa), uint8_t(0x55)})
        emit({.id = PatternId::PatternBytes, .byte = b}, std::vector<uint8_t>(bytes, b));

    // one-hot elements: first, middle, last, plus five random positions
    std::vector<int> positions = {0, elements / 2, elements - 1};
    std::uniform_int_distribution<int> pos_dist(0, elements - 1);
    for (int r = 0; r < 5; ++r) positions.push_back(pos_dist(rng));
    for (int pos : positions) {
        std::vector<uint8_t> data(bytes, 0x00);
        set_element(data, ebits, pos, 1);
        emit({.id = PatternId::SparseOne, .position = pos}, std::move(data));
    }

    for (int n : {2, 4, 6}) {
        for (int m = 0; n + m <= ebits; m += 2) {
            std::vector<uint8_t> data(bytes, 0x00);
            std::uniform_int_distribution<int> bits(0, (1 << n) - 1);
            for (int e = 0; e < elements; ++e)
                set_element(data, ebits, e, static_cast<uint16_t>(bits(rng) << m));
            emit({.id = PatternId::RestrictedBits, .n = n, .m = m}, std::move(data));
        }
    }

    for (uint8_t v : {uint8_t(0), uint8_t(1), uint8_t(85), uint8_t(170), uint8_t(181),
                      uint8_t(221), uint8_t(245), uint8_t(247), uint8_t(253), uint8_t(255)}) {
        std::vector<uint8_t> data(bytes, 0x00);
        for (int e = 0; e < elements; ++e) set_element(data, ebits, e, v);
        emit({.id = PatternId::AllSame, .value = v}, std::move(data));
    }
    return out;
}

std::vector<PatternResult> pattern_sweep(BenchmarkId benchmark,
                                         const PowerModelParams& params, uint64_t seed) {
    std::vector<PatternResult> out;
    const auto patterns = generate_patterns(benchmark, seed);
    uint64_t salt = 0xbeef;
    for (const auto& [spec, data] : patterns) {
        const EnergyTrace trace = run_benchmark(benchmark, data, params, mix_seed(seed, salt++));
        out.push_back({spec, trace.avg_power_mw});
    }
    return out;
}

} // namespace wcec
