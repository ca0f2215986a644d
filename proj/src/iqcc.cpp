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

#include "pexsim/iqcc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "pexsim/errors.hpp"
#include "pexsim/io_detail.hpp"

namespace pexsim {

namespace {

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

std::vector<ExponentialGate> AnsatzBundle::gates() const {
    std::vector<ExponentialGate> out;
    out.reserve(entanglers.size());
    for (const auto& [pauli, beta] : entanglers) {
        out.emplace_back(pauli, -beta / 2.0);
    }
    return out;
}

AnsatzBundle load_ansatz(const std::filesystem::path& path, int n_qubits, u128 reference,
                         int step_size) {
    if (step_size < 1) throw InputError("step size must be >= 1");
    const auto file = detail::read_term_file(path, /*allow_convention=*/true);
    if (file.convention.empty()) {
        throw InputError(path.string() +
                         ": missing required header 'convention: theta' or 'convention: beta'");
    }
    bool theta_convention = false;
    if (file.convention == "theta") {
        theta_convention = true;
    } else if (file.convention != "beta") {
        throw InputError(path.string() + ": unknown convention '" + file.convention + "'");
    }
    if (n_qubits < 1) n_qubits = std::max(file.max_qubit_index + 1, 1);

    AnsatzBundle bundle;
    bundle.n_qubits = n_qubits;
    bundle.reference = reference;
    bundle.step_size = step_size;
    if ((reference & ~low_mask128(n_qubits)) != 0) {
        throw InputError("reference state has bits set above qubit " +
                         std::to_string(n_qubits - 1));
    }
    bundle.entanglers.reserve(file.terms.size());
    for (const auto& line : file.terms) {
        if (!std::isfinite(line.coefficient)) {
            throw InputError(path.string() + ":" + std::to_string(line.line_number) +
                             ": angle must be finite");
        }
        try {
            const double beta =
                theta_convention ? -2.0 * line.coefficient : line.coefficient;
            bundle.entanglers.emplace_back(detail::make_pauli(line.factors, n_qubits), beta);
        } catch (const InputError& e) {
            throw InputError(path.string() + ":" + std::to_string(line.line_number) + ": " +
                             e.what());
        }
    }
    return bundle;
}

SweepRow run_single(const PauliSumOperator& h, const AnsatzBundle& bundle, double cutoff,
                    int workers, SparseState* final_state) {
    if (h.n_qubits() != bundle.n_qubits) {
        throw InputError("Hamiltonian and ansatz qubit counts differ");
    }
    SparseState state = SparseState::from_reference(bundle.n_qubits, bundle.reference, cutoff);
    const auto gates = bundle.gates();
    const CircuitTrace trace = apply_circuit(state, gates);
    const EnergyResult measured = energy(state, h, workers);

    SweepRow row;
    row.cutoff = cutoff;
    row.energy = measured.energy;
    row.sim_time_s = trace.seconds;
    row.meas_time_s = measured.seconds;
    row.n_elements = state.size();
    if (final_state != nullptr) *final_state = std::move(state);
    return row;
}

SweepResult run_sweep(const PauliSumOperator& h, const AnsatzBundle& bundle,
                      std::vector<double> cutoffs, int workers) {
    if (cutoffs.empty()) throw InputError("sweep requires at least one cutoff");
    std::sort(cutoffs.begin(), cutoffs.end(), std::greater<>());

    SweepResult result;
    result.steps = bundle.steps();
    result.rows.reserve(cutoffs.size());
    for (const double cutoff : cutoffs) {
        try {
            result.rows.push_back(run_single(h, bundle, cutoff, workers));
        } catch (const std::exception& e) {
            SweepRow row;
            row.cutoff = cutoff;
            row.failed = true;
            row.error = e.what();
            result.rows.push_back(std::move(row));
        }
    }

    double min_energy = std::numeric_limits<double>::infinity();
    for (const auto& row : result.rows) {
        if (!row.failed) min_energy = std::min(min_energy, row.energy);
    }
    for (auto& row : result.rows) {
        if (!row.failed) row.delta_mha = (row.energy - min_energy) * 1e3;
    }
    return result;
}

std::vector<StepRow> per_step_trace(const PauliSumOperator& h, const AnsatzBundle& bundle,
                                    double cutoff, int workers) {
    if (h.n_qubits() != bundle.n_qubits) {
        throw InputError("Hamiltonian and ansatz qubit counts differ");
    }
    SparseState state = SparseState::from_reference(bundle.n_qubits, bundle.reference, cutoff);
    const auto gates = bundle.gates();

    std::vector<StepRow> rows;
    rows.reserve(bundle.steps() + 1);

    const auto measure = [&](std::size_t step) {
        const EnergyResult measured = energy(state, h, workers);
        rows.push_back({step, measured.energy, state.size(), measured.seconds});
    };

    measure(0);
    const auto block = static_cast<std::size_t>(bundle.step_size);
    for (std::size_t begin = 0; begin < gates.size(); begin += block) {
        const std::size_t end = std::min(begin + block, gates.size());
        for (std::size_t k = begin; k < end; ++k) {
            try {
                state.apply(gates[k]);
            } catch (const EmptyStateError&) {
                throw EmptyStateError(k + 1);
            }
        }
        measure(begin / block + 1);
    }
    return rows;
}

CrosscheckResult transform_crosscheck(const PauliSumOperator& h, const AnsatzBundle& bundle,
                                      std::size_t prefix_len, double prune_threshold,
                                      std::size_t max_terms, int workers) {
    if (prefix_len > bundle.entanglers.size()) {
        throw InputError("prefix exceeds the ansatz length");
    }
    if (h.n_qubits() != bundle.n_qubits) {
        throw InputError("Hamiltonian and ansatz qubit counts differ");
    }

    PauliSumOperator transformed = h;
    double pruned_weight = 0.0;
    for (std::size_t k = 0; k < prefix_len; ++k) {
        const auto& [pauli, beta] = bundle.entanglers[k];
        transformed = similarity_transform(transformed, pauli, beta);
        if (prune_threshold > 0.0) {
            PruneResult pruned = prune(transformed, prune_threshold);
            pruned_weight += pruned.removed_weight;
            transformed = std::move(pruned.op);
        }
        if (transformed.term_count() > max_terms) {
            throw NumericalError("transformed operator reached " +
                                 std::to_string(transformed.term_count()) +
                                 " terms, above the guard of " + std::to_string(max_terms));
        }
    }

    const SparseState reference =
        SparseState::from_reference(bundle.n_qubits, bundle.reference, 0.0);
    const double e_transform = energy(reference, transformed, workers).energy;

    // The iterated transform frame equals the circuit that applies entangler
    // prefix_len first and entangler 1 last.
    std::vector<ExponentialGate> gates;
    gates.reserve(prefix_len);
    for (std::size_t k = prefix_len; k-- > 0;) {
        const auto& [pauli, beta] = bundle.entanglers[k];
        gates.emplace_back(pauli, -beta / 2.0);
    }
    SparseState state = SparseState::from_reference(bundle.n_qubits, bundle.reference, 0.0);
    apply_circuit(state, gates);
    const double e_simulation = energy(state, h, workers).energy;

    return CrosscheckResult{e_transform, e_simulation, std::abs(e_transform - e_simulation),
                            transformed.term_count(), pruned_weight};
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "steps,cutoff,energy_ha,delta_mha,sim_time_s,meas_time_s,n_elements\n";
    for (const auto& row : result.rows) {
        if (row.failed) {
            std::string quoted;
            for (const char c : row.error) {
                quoted += c;
                if (c == '"') quoted += '"';
            }
            out << result.steps << ',' << format_double(row.cutoff) << ",\"error: " << quoted
                << "\",,,,\n";
            continue;
        }
        out << result.steps << ',' << format_double(row.cutoff) << ','
            << format_double(row.energy) << ',' << format_double(row.delta_mha) << ','
            << format_double(row.sim_time_s) << ',' << format_double(row.meas_time_s) << ','
            << row.n_elements << '\n';
    }
}

void write_trace_csv(std::ostream& out, const std::vector<StepRow>& rows) {
    out << "step,energy_ha,n_elements,meas_time_s\n";
    for (const auto& row : rows) {
        out << row.step << ',' << format_double(row.energy) << ',' << row.n_elements << ','
            << format_double(row.meas_time_s) << '\n';
    }
}

}  // namespace pexsim
