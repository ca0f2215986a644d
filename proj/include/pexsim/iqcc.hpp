// Copyright 2026 The pexsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pexsim/hamiltonian.hpp"
#include "pexsim/state.hpp"

namespace pexsim {

/// A loaded ansatz: reference state plus ordered QCC entanglers
/// exp(-i beta_k P_k / 2), grouped into steps of step_size entanglers.
struct AnsatzBundle {
    int n_qubits = 0;
    u128 reference = 0;
    std::vector<std::pair<PauliString, double>> entanglers;  // (pauli, beta)
    int step_size = 20;

    /// Number of (possibly partial) steps.
    std::size_t steps() const {
        return (entanglers.size() + static_cast<std::size_t>(step_size) - 1) /
               static_cast<std::size_t>(step_size);
    }

    /// Circuit form, theta_k = -beta_k / 2.
    std::vector<ExponentialGate> gates() const;
};

/// Loads an ansatz file: a mandatory `convention: theta` or
/// `convention: beta` header, then `<angle> <pauli>` lines. Theta angles are
/// stored as beta = -2 theta. n_qubits < 1 infers the count from the file.
AnsatzBundle load_ansatz(const std::filesystem::path& path, int n_qubits, u128 reference,
                         int step_size = 20);

/// One sweep row; `failed` rows carry the error text instead of results.
struct SweepRow {
    double cutoff = 0.0;
    double energy = 0.0;      // Hartree
    double delta_mha = 0.0;   // vs the sweep's minimum energy
    double sim_time_s = 0.0;  // gate application only
    double meas_time_s = 0.0; // energy measurement only
    std::size_t n_elements = 0;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    std::size_t steps = 0;
    std::vector<SweepRow> rows;  // sorted by descending cutoff
};

/// Simulates the full ansatz at one cutoff and measures the energy. When
/// final_state is non-null the evolved state is moved into it (for
/// checkpointing or further inspection).
SweepRow run_single(const PauliSumOperator& h, const AnsatzBundle& bundle, double cutoff,
                    int workers, SparseState* final_state = nullptr);

/// One row per cutoff; per-row failures are recorded and the sweep
/// continues. Delta is relative to the minimum energy over successful rows.
SweepResult run_sweep(const PauliSumOperator& h, const AnsatzBundle& bundle,
                      std::vector<double> cutoffs, int workers);

struct StepRow {
    std::size_t step = 0;  // 0 = reference state
    double energy = 0.0;
    std::size_t n_elements = 0;
    double meas_time_s = 0.0;
};

/// Energy after each block of step_size entanglers (step 0 = reference).
std::vector<StepRow> per_step_trace(const PauliSumOperator& h, const AnsatzBundle& bundle,
                                    double cutoff, int workers);

struct CrosscheckResult {
    double e_transform = 0.0;   // <ref| H_prefix |ref> via iterated transforms
    double e_simulation = 0.0;  // sparse energy of the equivalent circuit, cutoff 0
    double difference = 0.0;
    std::size_t transformed_terms = 0;
    double pruned_weight = 0.0;  // total |h| removed across the per-step prunes
};

/// Transforms H by the first prefix_len entanglers (pruning after each) and
/// compares the reference expectation of the transformed operator against
/// the cutoff-0 simulation measured with the original H. The transformed
/// frame corresponds to the circuit applying the newest entangler first, so
/// the simulation runs the reversed prefix. With prune_threshold 0 the two
/// energies agree to numerical precision.
CrosscheckResult transform_crosscheck(const PauliSumOperator& h, const AnsatzBundle& bundle,
                                      std::size_t prefix_len, double prune_threshold,
                                      std::size_t max_terms, int workers);

/// CSV in the fixed column order
/// steps,cutoff,energy_ha,delta_mha,sim_time_s,meas_time_s,n_elements.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

void write_trace_csv(std::ostream& out, const std::vector<StepRow>& rows);

}  // namespace pexsim
