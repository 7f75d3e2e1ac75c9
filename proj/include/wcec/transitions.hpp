#pragma once

#include <map>
#include <string>
#include <vector>

#include "wcec/fit.hpp"
#include "wcec/gridded_pdf.hpp"
#include "wcec/isa.hpp"

namespace wcec {

// Unordered opcode pair; E(i,j) and E(j,i) are the same distribution.
struct TransitionKey {
    Opcode a;
    Opcode b;

    TransitionKey(Opcode i, Opcode j) : a(i < j ? i : j), b(i < j ? j : i) {}
    auto operator<=>(const TransitionKey&) const = default;
};

std::string transition_key_name(const TransitionKey& key);

struct TransitionEntry {
    WeibullParams params;
    size_t n_samples = 0;
};

class TransitionTable {
public:
    void set(Opcode i, Opcode j, const WeibullParams& params, size_t n_samples);
    // symmetric lookup; throws MissingTransition
    const TransitionEntry& get(Opcode i, Opcode j) const;
    bool contains(Opcode i, Opcode j) const;
    const std::map<TransitionKey, TransitionEntry>& entries() const { return entries_; }

    std::string to_json() const;
    static TransitionTable from_json(const std::string& text);

private:
    std::map<TransitionKey, TransitionEntry> entries_;
};

struct SequencePrediction {
    GriddedPdf pdf;
    std::vector<TransitionKey> keys; // one per consecutive pair
};

// Convolves the per-pair transition pdfs of consecutive opcodes; no
// per-instruction base cost enters anywhere.
SequencePrediction predict_sequence(const std::vector<Opcode>& opcodes,
                                    const TransitionTable& table, double grid_step);

// Grid step sized so each transition pdf lands on about 512 bins.
double default_grid_step(const std::vector<Opcode>& opcodes, const TransitionTable& table);

// Recovers the single mov-mov transition from the four-mov loop sample:
// cumulants divide by four, then a moment-matched Weibull.
WeibullParams characterize_mov_mov(const EmpiricalSample& sample);

// Removes the known transitions from a measured convolution by cumulant
// subtraction; the residual (split over `multiplicity` identical unknowns)
// is moment-matched back to a Weibull. Throws NegativeResidualVariance when
// the knowns already exceed the sample variance.
WeibullParams characterize_transition(const EmpiricalSample& sample,
                                      const std::vector<WeibullParams>& known,
                                      int multiplicity = 1);

struct ProtocolConfig {
    int runs = 10000;
    uint64_t seed = 1;
};

// Measurement harness. Every run randomizes the whole register file; the
// leading context mov stands in for the steady loop surrounding a block and
// its cycle is excluded from the sample.
std::vector<Instruction> protocol_mov_block();
std::vector<Instruction> protocol_mov_op_block(Opcode op);
std::vector<Instruction> protocol_pair_block(Opcode i, Opcode j);

EmpiricalSample measure_protocol_block(const std::vector<Instruction>& block,
                                       int runs, const PowerModelParams& params,
                                       uint64_t seed);

// Energy attributable to a sequence's internal transitions: the context mov
// and the first instruction are excluded, leaving one cycle per transition.
EmpiricalSample measure_sequence_energy(const std::vector<Instruction>& seq,
                                        int runs, const PowerModelParams& params,
                                        uint64_t seed);

// Runs the full characterization protocol: E(mov,mov) first, then E(mov,i)
// for every opcode, then every remaining unordered pair through Eq.-style
// elimination of the staging transitions.
TransitionTable build_transition_table(const std::vector<Opcode>& opcodes,
                                       const PowerModelParams& params,
                                       const ProtocolConfig& config);

} // namespace wcec
