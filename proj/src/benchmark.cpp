#include "wcec/benchmark.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wcec/errors.hpp"
#include "wcec/rng.hpp"

namespace wcec {

namespace {

const InputLayout kMatmultLayout{"matmult-20x20-u8x2", 2 * 20 * 20, 8};
const InputLayout kMatmult8Layout{"matmult-8x8-u8x2", 2 * 8 * 8, 8};
const InputLayout kFdctLayout{"fdct-8x8-i16le", 2 * 8 * 8, 16};

const std::array<std::string, 3> kBenchmarkNames = {"matmult", "matmult8", "fdct"};

} // namespace

BenchmarkId benchmark_from_name(const std::string& name) {
    if (name == "matmult" || name == "matmult-int") return BenchmarkId::Matmult;
    if (name == "matmult8" || name == "matmult-int-8") return BenchmarkId::Matmult8;
    if (name == "fdct") return BenchmarkId::Fdct;
    throw std::invalid_argument("unknown benchmark: " + name);
}

const std::string& benchmark_name(BenchmarkId id) {
    return kBenchmarkNames[static_cast<size_t>(id)];
}

const InputLayout& layout_for(BenchmarkId id) {
    switch (id) {
    case BenchmarkId::Matmult: return kMatmultLayout;
    case BenchmarkId::Matmult8: return kMatmult8Layout;
    case BenchmarkId::Fdct: return kFdctLayout;
    }
    throw std::invalid_argument("bad benchmark id");
}

void validate_dataset(const InputDataset& data) {
    const auto& layout = layout_for(data.layout);
    if (data.bytes.size() != layout.bytes) {
        std::ostringstream os;
        os << "dataset length " << data.bytes.size() << " does not match layout "
           << layout.tag << " (" << layout.bytes << " bytes)";
        throw LayoutMismatch(os.str());
    }
}

InputDataset load_dataset_binary(const std::string& path, BenchmarkId layout) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open dataset file: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    InputDataset data{layout, std::move(bytes)};
    validate_dataset(data);
    return data;
}

InputDataset load_dataset_hex(const std::string& path, BenchmarkId layout) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset file: " + path);
    std::vector<uint8_t> bytes;
    std::string tok;
    while (in >> tok) {
        if (tok.rfind("0x", 0) == 0 || tok.rfind("0X", 0) == 0) tok = tok.substr(2);
        bytes.push_back(static_cast<uint8_t>(std::stoul(tok, nullptr, 16)));
    }
    InputDataset data{layout, std::move(bytes)};
    validate_dataset(data);
    return data;
}

InputDataset load_dataset(const std::string& path, BenchmarkId layout) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".hex")
        return load_dataset_hex(path, layout);
    return load_dataset_binary(path, layout);
}

InputDataset random_dataset(BenchmarkId layout, uint64_t seed) {
    auto rng = make_rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    InputDataset data{layout, {}};
    data.bytes.resize(layout_for(layout).bytes);
    for (auto& b : data.bytes) b = static_cast<uint8_t>(byte(rng));
    return data;
}

namespace {

// matmult kernel, C = A*B over 8-bit modular arithmetic. Registers:
// r2/r3 operand staging, r4 accumulator, r5 result store.
Program build_matmult(int n) {
    Program prog;
    auto inject = [&prog](uint8_t reg, uint16_t input_index) {
        prog.writes.push_back({uint32_t(prog.instrs.size()), reg, true, input_index});
    };
    const int b_base = n * n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            prog.instrs.push_back({Opcode::Eor, 4, 4}); // clear accumulator
            for (int k = 0; k < n; ++k) {
                inject(2, uint16_t(i * n + k));
                inject(3, uint16_t(b_base + k * n + j));
                prog.instrs.push_back({Opcode::Mul, 2, 3});
                prog.instrs.push_back({Opcode::Add, 4, 0});
            }
            prog.instrs.push_back({Opcode::Mov, 5, 4}); // store C[i][j]
        }
    }
    return prog;
}

// Scaled cosine constants for the rotation stage, low/high byte paths.
constexpr std::array<uint8_t, 4> kFdctC1 = {91, 118, 64, 35};
constexpr std::array<uint8_t, 4> kFdctC2 = {83, 106, 49, 18};

// fdct kernel: 8 row passes then 8 column passes over the 8x8 block of
// little-endian 16-bit elements. Each pass does butterfly add/sub on low and
// high bytes separately (no carry chain on this core) and a fixed multiply
// schedule against the constant tables. With small-valued data the high-byte
// path runs on zeros, which is what separates the low/high power groups.
Program build_fdct() {
    Program prog;
    auto inject = [&prog](uint8_t reg, uint16_t input_index) {
        prog.writes.push_back({uint32_t(prog.instrs.size()), reg, true, input_index});
    };
    auto inject_const = [&prog](uint8_t reg, uint8_t value) {
        prog.writes.push_back({uint32_t(prog.instrs.size()), reg, false, value});
    };
    auto emit = [&prog](Opcode op, uint8_t d, uint8_t s) {
        prog.instrs.push_back({op, d, s});
    };

    auto line_pass = [&](const std::array<int, 8>& elems) {
        emit(Opcode::Eor, 14, 14);
        emit(Opcode::Eor, 15, 15);
        for (int k = 0; k < 4; ++k) {
            const int ea = elems[k], eb = elems[7 - k];
            inject(2, uint16_t(2 * ea));     // lo(a)
            inject(3, uint16_t(2 * eb));     // lo(b)
            inject(6, uint16_t(2 * ea + 1)); // hi(a)
            inject(7, uint16_t(2 * eb + 1)); // hi(b)
            inject_const(10, kFdctC1[k]);
            inject_const(11, kFdctC2[k]);
            emit(Opcode::Mov, 4, 2);  // s_lo = lo(a) + lo(b)
            emit(Opcode::Add, 4, 3);
            emit(Opcode::Mov, 5, 2);  // d_lo = lo(a) - lo(b)
            emit(Opcode::Sub, 5, 3);
            emit(Opcode::Mov, 8, 6);  // s_hi
            emit(Opcode::Add, 8, 7);
            emit(Opcode::Mov, 9, 6);  // d_hi
            emit(Opcode::Sub, 9, 7);
            emit(Opcode::Mul, 4, 10); // rotate sums
            emit(Opcode::Mov, 12, 0);
            emit(Opcode::Mov, 13, 1);
            emit(Opcode::Mul, 8, 10);
            emit(Opcode::Add, 13, 0);
            emit(Opcode::Mul, 5, 11); // rotate diffs
            emit(Opcode::Eor, 12, 0);
            emit(Opcode::Mul, 9, 11);
            emit(Opcode::Add, 13, 0);
            emit(Opcode::Lsl, 12, 12); // descale
            emit(Opcode::Or, 14, 12);
            emit(Opcode::Add, 15, 13);
        }
    };

    for (int r = 0; r < 8; ++r) {
        std::array<int, 8> elems;
        for (int c = 0; c < 8; ++c) elems[c] = 8 * r + c;
        line_pass(elems);
    }
    for (int c = 0; c < 8; ++c) {
        std::array<int, 8> elems;
        for (int r = 0; r < 8; ++r) elems[r] = 8 * r + c;
        line_pass(elems);
    }
    return prog;
}

} // namespace

const Program& benchmark_program(BenchmarkId id) {
    static const Program matmult = build_matmult(20);
    static const Program matmult8 = build_matmult(8);
    static const Program fdct = build_fdct();
    switch (id) {
    case BenchmarkId::Matmult: return matmult;
    case BenchmarkId::Matmult8: return matmult8;
    case BenchmarkId::Fdct: return fdct;
    }
    throw std::invalid_argument("bad benchmark id");
}

EnergyTrace run_program(const Program& program, const std::vector<uint8_t>& input,
                        const PowerModelParams& params, uint64_t seed) {
    MachineState state;
    EnergyTrace trace;
    trace.per_cycle.reserve(program.instrs.size());
    double sum = 0.0;
    size_t w = 0;
    for (uint32_t pos = 0; pos < program.instrs.size(); ++pos) {
        for (; w < program.writes.size() && program.writes[w].position == pos; ++w) {
            const auto& wr = program.writes[w];
            state.regs[wr.reg] = wr.from_input ? input[wr.value]
                                               : static_cast<uint8_t>(wr.value);
        }
        const double e = step(state, program.instrs[pos], params);
        trace.per_cycle.push_back(e);
        sum += e;
    }
    auto rng = make_rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    trace.total_energy = sum + params.noise_sigma * noise(rng);
    trace.cycles = program.instrs.size();
    trace.avg_power_mw = trace.total_energy / (double(trace.cycles) * params.cycle_time_ns);
    return trace;
}

EnergyTrace run_benchmark(BenchmarkId id, const InputDataset& data,
                          const PowerModelParams& params, uint64_t seed) {
    if (data.layout != id) throw LayoutMismatch("dataset layout does not match benchmark");
    validate_dataset(data);
    return run_program(benchmark_program(id), data.bytes, params, seed);
}

} // namespace wcec
