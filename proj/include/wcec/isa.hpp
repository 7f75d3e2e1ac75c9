#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace wcec {

// Two-operand register ISA of the synthetic 8-bit core. mul writes its
// 16-bit product to the register pair r1:r0.
enum class Opcode : uint8_t { Mov, Add, Sub, Mul, Lsl, Eor, And, Or, Nop };

inline constexpr int kNumOpcodes = 9;
inline constexpr int kNumRegs = 32;

const std::string& opcode_name(Opcode op);
Opcode opcode_from_name(const std::string& name);

struct Instruction {
    Opcode op = Opcode::Nop;
    uint8_t dest = 0; // register index, < 32
    uint8_t src = 0;  // register index, < 32; ignored by nop

    bool operator==(const Instruction&) const = default;
};

// Textual form "op rD, rS" (just "nop" for nop).
std::string format_instruction(const Instruction& instr);
Instruction parse_instruction(const std::string& line);

// Parses a one-instruction-per-line program. '#' starts a comment; blank
// lines are skipped.
std::vector<Instruction> parse_program(const std::string& text);

struct MachineState {
    std::array<uint8_t, kNumRegs> regs{};
    uint16_t prev_bus = 0; // last value driven onto the result bus
    uint64_t cycle = 0;
};

// Per-cycle energy model. Energy of one step is
//   base[op] + alpha*(HW(src) + HW(dest_before)) + beta*HD(prev_bus, result)
//   + (op == mul ? gamma * popcount_partial_products(a, b) : 0)
// where the partial-product count is sum_i [bit i of a] * HW(b).
// nop drives nothing: it costs base[nop] and leaves the bus untouched.
struct PowerModelParams {
    std::array<double, kNumOpcodes> base{}; // pJ per cycle, indexed by Opcode
    double alpha = 0.0;                     // pJ per operand Hamming-weight bit
    double beta = 0.0;                      // pJ per bus Hamming-distance bit
    double gamma = 0.0;                     // pJ per active multiplier partial-product bit
    double noise_sigma = 0.0;               // pJ, one Gaussian draw per run
    double cycle_time_ns = 1.0;

    double base_for(Opcode op) const { return base[static_cast<size_t>(op)]; }
};

// Calibrated so that the mul power map spans 15 % of a 20 mW SoC baseline
// and random-data matmult power variation lands in the low single digits.
PowerModelParams default_power_model();

struct EnergyTrace {
    std::vector<double> per_cycle; // pJ, noise-free
    double total_energy = 0.0;     // pJ, sum(per_cycle) + noise draw
    uint64_t cycles = 0;
    double avg_power_mw = 0.0;     // total_energy / (cycles * cycle_time)
};

inline int hamming_weight(uint16_t v) { return std::popcount(v); }
inline int hamming_distance(uint16_t a, uint16_t b) { return std::popcount(static_cast<uint16_t>(a ^ b)); }

// Advances the state by one instruction and returns the cycle energy in pJ.
// Deterministic; measurement noise is applied per run, not per cycle.
double step(MachineState& state, const Instruction& instr, const PowerModelParams& params);

// Runs a program over a fresh machine with the given register file and adds
// one Gaussian noise draw (from `seed`) to the total. Identical inputs give
// bit-identical traces.
EnergyTrace run_sequence(const std::vector<Instruction>& instrs,
                         const std::array<uint8_t, kNumRegs>& initial_regs,
                         const PowerModelParams& params, uint64_t seed);

// The mul/mov chain computing a^13 * b^8 mod 256 with a in r20, b in r21.
// The result is left in r3 (low bytes propagate through r0).
std::vector<Instruction> mul_chain_program();
inline constexpr uint8_t kMulChainRegA = 20;
inline constexpr uint8_t kMulChainRegB = 21;
inline constexpr uint8_t kMulChainResultReg = 3;

// Steady-state mul cycle energy for every 8-bit operand pair. Entry (a, b)
// repeats the same multiply, so the bus term vanishes; noise is excluded.
Eigen::ArrayXXd mul_power_map(const PowerModelParams& params);

} // namespace wcec
