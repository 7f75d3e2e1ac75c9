#include "wcec/isa.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "wcec/rng.hpp"

namespace wcec {

namespace {

const std::array<std::string, kNumOpcodes> kOpcodeNames = {
    "mov", "add", "sub", "mul", "lsl", "eor", "and", "or", "nop"};

} // namespace

const std::string& opcode_name(Opcode op) {
    return kOpcodeNames[static_cast<size_t>(op)];
}

Opcode opcode_from_name(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    for (int i = 0; i < kNumOpcodes; ++i) {
        if (kOpcodeNames[i] == lower) return static_cast<Opcode>(i);
    }
    throw std::invalid_argument("unknown opcode: " + name);
}

std::string format_instruction(const Instruction& instr) {
    if (instr.op == Opcode::Nop) return "nop";
    std::ostringstream os;
    os << opcode_name(instr.op) << " r" << int(instr.dest) << ", r" << int(instr.src);
    return os.str();
}

namespace {

uint8_t parse_reg(const std::string& tok) {
    std::string t = tok;
    while (!t.empty() && (t.back() == ',' || std::isspace(static_cast<unsigned char>(t.back()))))
        t.pop_back();
    if (t.size() < 2 || (t[0] != 'r' && t[0] != 'R'))
        throw std::invalid_argument("bad register token: " + tok);
    int idx = std::stoi(t.substr(1));
    if (idx < 0 || idx >= kNumRegs)
        throw std::invalid_argument("register index out of range: " + tok);
    return static_cast<uint8_t>(idx);
}

} // namespace

Instruction parse_instruction(const std::string& line) {
    std::istringstream is(line);
    std::string op_tok;
    is >> op_tok;
    if (op_tok.empty()) throw std::invalid_argument("empty instruction");
    Instruction instr;
    instr.op = opcode_from_name(op_tok);
    if (instr.op == Opcode::Nop) return instr;
    std::string dest_tok, src_tok;
    is >> dest_tok >> src_tok;
    if (dest_tok.empty() || src_tok.empty())
        throw std::invalid_argument("expected 'op rD, rS': " + line);
    instr.dest = parse_reg(dest_tok);
    instr.src = parse_reg(src_tok);
    return instr;
}

std::vector<Instruction> parse_program(const std::string& text) {
    std::vector<Instruction> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = std::all_of(line.begin(), line.end(),
                                 [](unsigned char c) { return std::isspace(c); });
        if (blank) continue;
        out.push_back(parse_instruction(line));
    }
    return out;
}

PowerModelParams default_power_model() {
    PowerModelParams p;
    auto set = [&p](Opcode op, double v) { p.base[static_cast<size_t>(op)] = v; };
    set(Opcode::Nop, 380.0);
    set(Opcode::Mov, 400.0);
    set(Opcode::Or, 420.0);
    set(Opcode::And, 430.0);
    set(Opcode::Eor, 440.0);
    set(Opcode::Lsl, 460.0);
    set(Opcode::Mul, 480.0);
    set(Opcode::Sub, 500.0);
    set(Opcode::Add, 575.0);
    p.alpha = 2.9;
    p.beta = 100.0;
    p.gamma = 2.2046875; // 16*alpha + 64*gamma = 187.5 pJ, 15 % of 20 mW at 62.5 ns
    p.noise_sigma = 150.0;
    p.cycle_time_ns = 62.5;
    return p;
}

double step(MachineState& state, const Instruction& instr, const PowerModelParams& params) {
    const Opcode op = instr.op;
    double energy = params.base_for(op);

    if (op == Opcode::Nop) {
        ++state.cycle;
        return energy;
    }

    const uint8_t src_val = state.regs[instr.src];
    const uint8_t dest_val = state.regs[instr.dest];
    energy += params.alpha * (hamming_weight(src_val) + hamming_weight(dest_val));

    uint16_t result = 0;
    switch (op) {
    case Opcode::Mov:
        result = src_val;
        state.regs[instr.dest] = src_val;
        break;
    case Opcode::Add:
        result = static_cast<uint8_t>(dest_val + src_val);
        state.regs[instr.dest] = static_cast<uint8_t>(result);
        break;
    case Opcode::Sub:
        result = static_cast<uint8_t>(dest_val - src_val);
        state.regs[instr.dest] = static_cast<uint8_t>(result);
        break;
    case Opcode::Mul: {
        const uint16_t product = static_cast<uint16_t>(dest_val * src_val);
        result = product;
        state.regs[0] = static_cast<uint8_t>(product & 0xff);
        state.regs[1] = static_cast<uint8_t>(product >> 8);
        int pp = 0; // sum_i [bit i of a set] * HW(b)
        for (int i = 0; i < 8; ++i)
            if (dest_val & (1u << i)) pp += hamming_weight(src_val);
        energy += params.gamma * pp;
        break;
    }
    case Opcode::Lsl:
        result = static_cast<uint8_t>(src_val << 1);
        state.regs[instr.dest] = static_cast<uint8_t>(result);
        break;
    case Opcode::Eor:
        result = static_cast<uint8_t>(dest_val ^ src_val);
        state.regs[instr.dest] = static_cast<uint8_t>(result);
        break;
    case Opcode::And:
        result = static_cast<uint8_t>(dest_val & src_val);
        state.regs[instr.dest] = static_cast<uint8_t>(result);
        break;
    case Opcode::Or:
        result = static_cast<uint8_t>(dest_val | src_val);
        state.regs[instr.dest] = static_cast<uint8_t>(result);
        break;
    case Opcode::Nop:
        break;
    }

    energy += params.beta * hamming_distance(state.prev_bus, result);
    state.prev_bus = result;
    ++state.cycle;
    return energy;
}

EnergyTrace run_sequence(const std::vector<Instruction>& instrs,
                         const std::array<uint8_t, kNumRegs>& initial_regs,
                         const PowerModelParams& params, uint64_t seed) {
    if (instrs.empty()) throw std::invalid_argument("run_sequence: empty program");
    MachineState state;
    state.regs = initial_regs;
    EnergyTrace trace;
    trace.per_cycle.reserve(instrs.size());
    double sum = 0.0;
    for (const auto& instr : instrs) {
        const double e = step(state, instr, params);
        trace.per_cycle.push_back(e);
        sum += e;
    }
    auto rng = make_rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    trace.total_energy = sum + params.noise_sigma * noise(rng);
    trace.cycles = instrs.size();
    trace.avg_power_mw = trace.total_energy / (double(trace.cycles) * params.cycle_time_ns);
    return trace;
}

std::vector<Instruction> mul_chain_program() {
    std::vector<Instruction> prog;
    prog.push_back({Opcode::Mov, kMulChainResultReg, kMulChainRegA}); // r3 = a
    prog.push_back({Opcode::Mov, 4, kMulChainRegB});                  // r4 = b
    // Each block multiplies the two freshest values; two passes land a^13*b^8
    // in r3. Only the low product byte propagates, through r0.
    for (int rep = 0; rep < 2; ++rep) {
        prog.push_back({Opcode::Mul, 3, 4});
        prog.push_back({Opcode::Mov, 2, 0});
        prog.push_back({Opcode::Mul, 2, 3});
        prog.push_back({Opcode::Mov, 4, 0});
        prog.push_back({Opcode::Mul, 4, 2});
        prog.push_back({Opcode::Mov, 3, 0});
    }
    return prog;
}

Eigen::ArrayXXd mul_power_map(const PowerModelParams& params) {
    Eigen::ArrayXXd map(256, 256);
    const double base = params.base_for(Opcode::Mul);
    for (int a = 0; a < 256; ++a) {
        const int hw_a = hamming_weight(static_cast<uint16_t>(a));
        for (int b = 0; b < 256; ++b) {
            const int hw_b = hamming_weight(static_cast<uint16_t>(b));
            // repeated identical multiply: prev_bus equals the product, HD = 0
            map(a, b) = base + params.alpha * (hw_a + hw_b) + params.gamma * (hw_a * hw_b);
        }
    }
    return map;
}

} // namespace wcec
