#include "wcec/transitions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wcec/errors.hpp"
#include "wcec/rng.hpp"

namespace wcec {

std::string transition_key_name(const TransitionKey& key) {
    return "(" + opcode_name(key.a) + ", " + opcode_name(key.b) + ")";
}

void TransitionTable::set(Opcode i, Opcode j, const WeibullParams& params, size_t n_samples) {
    entries_[TransitionKey(i, j)] = TransitionEntry{params, n_samples};
}

const TransitionEntry& TransitionTable::get(Opcode i, Opcode j) const {
    const auto it = entries_.find(TransitionKey(i, j));
    if (it == entries_.end())
        throw MissingTransition("no transition " + transition_key_name(TransitionKey(i, j)));
    return it->second;
}

bool TransitionTable::contains(Opcode i, Opcode j) const {
    return entries_.count(TransitionKey(i, j)) > 0;
}

std::string TransitionTable::to_json() const {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& [key, entry] : entries_) {
        nlohmann::ordered_json row;
        row["op_a"] = opcode_name(key.a);
        row["op_b"] = opcode_name(key.b);
        row["k"] = entry.params.k;
        row["mu"] = entry.params.mu;
        row["sigma"] = entry.params.sigma;
        row["n_samples"] = entry.n_samples;
        list.push_back(row);
    }
    return list.dump(2);
}

TransitionTable TransitionTable::from_json(const std::string& text) {
    TransitionTable table;
    for (const auto& row : nlohmann::json::parse(text)) {
        const Opcode a = opcode_from_name(row.at("op_a").get<std::string>());
        const Opcode b = opcode_from_name(row.at("op_b").get<std::string>());
        WeibullParams p{row.at("k").get<double>(), row.at("mu").get<double>(),
                        row.at("sigma").get<double>()};
        table.set(a, b, p, row.at("n_samples").get<size_t>());
    }
    return table;
}

SequencePrediction predict_sequence(const std::vector<Opcode>& opcodes,
                                    const TransitionTable& table, double grid_step) {
    if (opcodes.size() < 2)
        throw std::invalid_argument("predict_sequence: need at least two opcodes");
    SequencePrediction pred;
    pred.keys.reserve(opcodes.size() - 1);
    for (size_t i = 0; i + 1 < opcodes.size(); ++i) {
        const TransitionKey key(opcodes[i], opcodes[i + 1]);
        if (!table.contains(key.a, key.b))
            throw MissingTransition("no transition " + transition_key_name(key));
        pred.keys.push_back(key);
    }
    bool first = true;
    for (const auto& key : pred.keys) {
        const GriddedPdf part = discretize(table.get(key.a, key.b).params, grid_step);
        pred.pdf = first ? part : convolve(pred.pdf, part);
        first = false;
    }
    return pred;
}

double default_grid_step(const std::vector<Opcode>& opcodes, const TransitionTable& table) {
    double acc = 0.0;
    int count = 0;
    for (size_t i = 0; i + 1 < opcodes.size(); ++i) {
        const auto& p = table.get(opcodes[i], opcodes[i + 1]).params;
        acc += (weibull_quantile(1.0 - 1e-9, p) - p.mu) / 512.0;
        ++count;
    }
    if (count == 0) throw std::invalid_argument("default_grid_step: empty sequence");
    return acc / count;
}

WeibullParams characterize_mov_mov(const EmpiricalSample& sample) {
    if (sample.values.size() < 1000)
        throw std::invalid_argument("characterize_mov_mov: need at least 1000 samples");
    const SampleMoments m = moments(sample);
    // four-fold self-convolution: cumulants divide by 4
    const double mean = m.mean / 4.0;
    const double variance = m.variance / 4.0;
    const double third = m.third_central / 4.0;
    return weibull_from_moments(mean, variance, third / std::pow(variance, 1.5));
}

WeibullParams characterize_transition(const EmpiricalSample& sample,
                                      const std::vector<WeibullParams>& known,
                                      int multiplicity) {
    if (multiplicity < 1)
        throw std::invalid_argument("characterize_transition: multiplicity must be >= 1");
    const SampleMoments m = moments(sample);
    double mean = m.mean;
    double variance = m.variance;
    double third = m.third_central;
    for (const auto& p : known) {
        mean -= weibull_mean(p);
        variance -= weibull_variance(p);
        third -= weibull_third_central_moment(p);
    }
    mean /= multiplicity;
    variance /= multiplicity;
    third /= multiplicity;
    if (variance <= 0.0)
        throw NegativeResidualVariance(
            "characterize_transition: known variances exceed the sample variance");
    return weibull_from_moments(mean, variance, third / std::pow(variance, 1.5));
}

namespace {

// context mov: sets up a random bus value; its cycle never enters a sample
const Instruction kWarmMov{Opcode::Mov, 30, 31};

std::array<uint8_t, kNumRegs> random_regs(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    std::array<uint8_t, kNumRegs> regs;
    for (auto& r : regs) r = static_cast<uint8_t>(byte(rng));
    return regs;
}

EmpiricalSample measure_block_impl(const std::vector<Instruction>& block, int runs,
                                   const PowerModelParams& params, uint64_t seed,
                                   int skip_cycles) {
    EmpiricalSample sample;
    sample.unit = Unit::PicoJoule;
    sample.values.resize(runs);
    auto reg_rng = make_rng(mix_seed(seed, 0x5eed));
    for (int r = 0; r < runs; ++r) {
        const auto regs = random_regs(reg_rng);
        const EnergyTrace trace = run_sequence(block, regs, params, mix_seed(seed, r));
        double value = trace.total_energy;
        for (int c = 0; c < skip_cycles; ++c) value -= trace.per_cycle[c];
        sample.values[r] = value;
    }
    return sample;
}

} // namespace

std::vector<Instruction> protocol_mov_block() {
    // four movs alternating between two destinations, unique random sources
    return {kWarmMov,
            {Opcode::Mov, 17, 9},
            {Opcode::Mov, 16, 10},
            {Opcode::Mov, 17, 11},
            {Opcode::Mov, 16, 12}};
}

std::vector<Instruction> protocol_mov_op_block(Opcode op) {
    return {kWarmMov,
            {Opcode::Mov, 17, 9},
            {Opcode::Mov, 16, 10},
            {op, 18, 19},
            {Opcode::Mov, 17, 11}};
}

std::vector<Instruction> protocol_pair_block(Opcode i, Opcode j) {
    // mirrored placement so both orders of the pair appear once
    return {kWarmMov,
            {Opcode::Mov, 17, 9},
            {i, 18, 19},
            {j, 20, 21},
            {i, 22, 23},
            {Opcode::Mov, 16, 10}};
}

EmpiricalSample measure_protocol_block(const std::vector<Instruction>& block, int runs,
                                       const PowerModelParams& params, uint64_t seed) {
    return measure_block_impl(block, runs, params, seed, 1);
}

EmpiricalSample measure_sequence_energy(const std::vector<Instruction>& seq, int runs,
                                        const PowerModelParams& params, uint64_t seed) {
    std::vector<Instruction> block;
    block.reserve(seq.size() + 1);
    block.push_back(kWarmMov);
    block.insert(block.end(), seq.begin(), seq.end());
    return measure_block_impl(block, runs, params, seed, 2);
}

TransitionTable build_transition_table(const std::vector<Opcode>& opcodes,
                                       const PowerModelParams& params,
                                       const ProtocolConfig& config) {
    bool has_mov = false;
    for (const auto op : opcodes)
        if (op == Opcode::Mov) has_mov = true;
    if (!has_mov)
        throw std::invalid_argument("build_transition_table: opcode set must contain mov");

    TransitionTable table;
    auto named = [](const TransitionKey& key, const Error& e) {
        return Error("characterizing " + transition_key_name(key) + ": " + e.what());
    };

    // E(mov,mov) anchors everything else
    const TransitionKey mm(Opcode::Mov, Opcode::Mov);
    try {
        const auto sample =
            measure_protocol_block(protocol_mov_block(), config.runs, params,
                                   mix_seed(config.seed, 0));
        table.set(Opcode::Mov, Opcode::Mov, characterize_mov_mov(sample), config.runs);
    } catch (const Error& e) {
        throw named(mm, e);
    }
    const WeibullParams e_mm = table.get(Opcode::Mov, Opcode::Mov).params;

    std::vector<Opcode> rest;
    for (const auto op : opcodes)
        if (op != Opcode::Mov) rest.push_back(op);

    // E(mov,i): block decomposes as 2x E(mov,mov) + 2x E(mov,i)
    for (size_t idx = 0; idx < rest.size(); ++idx) {
        const Opcode op = rest[idx];
        const TransitionKey key(Opcode::Mov, op);
        try {
            const auto sample =
                measure_protocol_block(protocol_mov_op_block(op), config.runs, params,
                                       mix_seed(config.seed, 1 + idx));
            table.set(Opcode::Mov, op,
                      characterize_transition(sample, {e_mm, e_mm}, 2), config.runs);
        } catch (const Error& e) {
            throw named(key, e);
        }
    }

    // E(i,j): block decomposes as E(mov,mov) + 2x E(mov,i) + 2x E(i,j)
    size_t salt = 1 + rest.size();
    for (size_t ia = 0; ia < rest.size(); ++ia) {
        for (size_t ib = ia; ib < rest.size(); ++ib) {
            const Opcode i = rest[ia], j = rest[ib];
            const TransitionKey key(i, j);
            try {
                const auto sample =
                    measure_protocol_block(protocol_pair_block(i, j), config.runs, params,
                                           mix_seed(config.seed, salt));
                const WeibullParams e_mi = table.get(Opcode::Mov, i).params;
                table.set(i, j, characterize_transition(sample, {e_mm, e_mi, e_mi}, 2),
                          config.runs);
            } catch (const Error& e) {
                throw named(key, e);
            }
            ++salt;
        }
    }
    return table;
}

} // namespace wcec
