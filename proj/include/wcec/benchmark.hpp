#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wcec/isa.hpp"

namespace wcec {

// Fixed benchmark kernels compiled to straight-line code: no data-dependent
// branches, so the cycle count is a constant of the benchmark. matmult is the
// paper-scale 20x20 kernel; matmult8 is the 8x8 CI-scale variant.
enum class BenchmarkId { Matmult, Matmult8, Fdct };

BenchmarkId benchmark_from_name(const std::string& name);
const std::string& benchmark_name(BenchmarkId id);

struct InputLayout {
    std::string tag;
    size_t bytes = 0;        // exact dataset length
    int element_bits = 8;    // 8 for matmult matrices, 16 for fdct elements
};

const InputLayout& layout_for(BenchmarkId id);
inline uint64_t nbits_for(BenchmarkId id) { return uint64_t(layout_for(id).bytes) * 8; }

struct InputDataset {
    BenchmarkId layout;
    std::vector<uint8_t> bytes;
};

// Throws LayoutMismatch unless the byte count matches the layout exactly.
void validate_dataset(const InputDataset& data);

InputDataset load_dataset_binary(const std::string& path, BenchmarkId layout);
InputDataset load_dataset_hex(const std::string& path, BenchmarkId layout);
// Dispatches on extension: ".hex" as hex text, anything else as raw bytes.
InputDataset load_dataset(const std::string& path, BenchmarkId layout);

InputDataset random_dataset(BenchmarkId layout, uint64_t seed);

// A register write staged by the harness before instruction `position`
// executes. Stand-in for the load path, which this model does not
// characterize; it costs no cycle and drives no bus value.
struct RegWrite {
    uint32_t position;
    uint8_t reg;
    bool from_input;  // true: dataset byte, false: immediate constant
    uint16_t value;   // byte index or immediate
};

struct Program {
    std::vector<Instruction> instrs;
    std::vector<RegWrite> writes; // sorted by position
};

const Program& benchmark_program(BenchmarkId id);

EnergyTrace run_program(const Program& program, const std::vector<uint8_t>& input,
                        const PowerModelParams& params, uint64_t seed);

// Simulates the benchmark on the given dataset. Cycle count depends only on
// the benchmark; energy carries all the data dependence.
EnergyTrace run_benchmark(BenchmarkId id, const InputDataset& data,
                          const PowerModelParams& params, uint64_t seed);

} // namespace wcec
