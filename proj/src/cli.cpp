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

#include "pexsim/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "pexsim/dense_oracle.hpp"
#include "pexsim/errors.hpp"
#include "pexsim/hamiltonian.hpp"
#include "pexsim/iqcc.hpp"
#include "pexsim/resources.hpp"
#include "pexsim/sparsity.hpp"
#include "pexsim/state.hpp"

namespace pexsim {

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

u128 parse_occupied_list(const std::string& list) {
    u128 value = 0;
    std::size_t pos = 0;
    while (pos < list.size()) {
        std::size_t end = list.find(',', pos);
        if (end == std::string::npos) end = list.size();
        int index = -1;
        const auto [ptr, ec] = std::from_chars(list.data() + pos, list.data() + end, index);
        if (ec != std::errc{} || ptr != list.data() + end || index < 0 || index >= kMaxQubits) {
            throw InputError("bad occupied index '" + list.substr(pos, end - pos) + "'");
        }
        const u128 bit = u128{1} << index;
        if (value & bit) throw InputError("occupied index " + std::to_string(index) + " repeated");
        value |= bit;
        pos = end + 1;
    }
    return value;
}

int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// PEXSIM_WORKERS, when set, overrides the flag value.
int resolve_workers(int flag_value) {
    if (const char* env = std::getenv("PEXSIM_WORKERS")) {
        int value = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
        if (ec != std::errc{} || *ptr != '\0' || value < 1) {
            throw InputError("PEXSIM_WORKERS must be a positive integer");
        }
        return value;
    }
    return flag_value;
}

void write_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty() || path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    writer(out);
    if (!out) throw InputError("write failed for '" + path + "'");
}

json sweep_row_json(const SweepRow& row) {
    json j;
    j["cutoff"] = row.cutoff;
    if (row.failed) {
        j["error"] = row.error;
        return j;
    }
    j["energy_ha"] = row.energy;
    j["delta_mha"] = row.delta_mha;
    j["sim_time_s"] = row.sim_time_s;
    j["meas_time_s"] = row.meas_time_s;
    j["n_elements"] = row.n_elements;
    j["state_memory_model_bytes"] = hash_map_model_bytes(row.n_elements);
    return j;
}

json metadata_json(const std::string& command, int n_qubits, int workers,
                   const AnsatzBundle& bundle, const PauliSumOperator& h) {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["n_qubits"] = n_qubits;
    j["workers"] = workers;
    j["reference"] = to_bitstring(bundle.reference, n_qubits);
    j["entanglers"] = bundle.entanglers.size();
    j["step_size"] = bundle.step_size;
    j["steps"] = bundle.steps();
    j["hamiltonian_terms"] = h.term_count();
    j["hamiltonian_memory_model_bytes"] = h.memory_estimate_bytes();
    return j;
}

void report_memory(std::ostream& log, const PauliSumOperator& h, std::size_t n_elements) {
    log << "memory model: state " << hash_map_model_bytes(n_elements) << " B ("
        << n_elements << " elements), hamiltonian " << h.memory_estimate_bytes() << " B ("
        << h.term_count() << " terms)";
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            log << "; peak RSS" << line.substr(6);
            break;
        }
    }
#if defined(__GLIBC__)
    const struct mallinfo2 mi = mallinfo2();
    log << "; allocator in use " << mi.uordblks << " B";
#endif
    log << "\n";
}

struct CommonInputs {
    int n_qubits = 0;
    PauliSumOperator hamiltonian{1};
    AnsatzBundle bundle;
};

/// Resolves the qubit count (flag > bits-length > error for occ form),
/// then loads both files against it.
CommonInputs load_inputs(const std::string& hamiltonian_path, const std::string& ansatz_path,
                         const std::string& reference_spec, int qubits_flag, int step_size) {
    int n_qubits = qubits_flag;
    if (n_qubits < 1) n_qubits = reference_qubit_count(reference_spec);
    if (n_qubits < 1) {
        throw InputError(
            "cannot infer the qubit count: pass --qubits or use a bits:<...> reference");
    }
    CommonInputs inputs;
    inputs.n_qubits = n_qubits;
    inputs.hamiltonian = load_hamiltonian(hamiltonian_path, n_qubits);
    inputs.bundle = load_ansatz(ansatz_path, n_qubits, parse_reference(reference_spec), step_size);
    std::cerr << "loaded " << inputs.hamiltonian.term_count() << " Hamiltonian terms and "
              << inputs.bundle.entanglers.size() << " entanglers on " << n_qubits
              << " qubits\n";
    return inputs;
}

void verify_against_oracle(const CommonInputs& inputs, double sparse_energy) {
    if (inputs.n_qubits > DenseState::kMaxOracleQubits) {
        throw InputError("--verify supports at most " +
                         std::to_string(DenseState::kMaxOracleQubits) + " qubits");
    }
    DenseState dense = DenseState::from_reference(inputs.n_qubits, inputs.bundle.reference);
    const auto gates = inputs.bundle.gates();
    dense_apply_circuit(dense, gates);
    const double reference_energy = dense_energy(dense, inputs.hamiltonian);
    const double diff = std::abs(reference_energy - sparse_energy);
    std::cerr << "verify: dense oracle energy " << reference_energy << " Ha, |diff| = " << diff
              << "\n";
    if (diff > 1e-10 * std::max(1.0, std::abs(reference_energy))) {
        throw NumericalError("sparse energy deviates from the dense oracle by " +
                             std::to_string(diff) + " Ha");
    }
}

}  // namespace

u128 parse_reference(const std::string& spec) {
    if (spec.rfind("bits:", 0) == 0) return parse_bitstring(spec.substr(5));
    if (spec.rfind("occ:", 0) == 0) return parse_occupied_list(spec.substr(4));
    if (!spec.empty() && spec.find_first_not_of("01") == std::string::npos) {
        return parse_bitstring(spec);
    }
    throw InputError("reference must be bits:<01...>, occ:<i,j,...>, or a bare 0/1 string");
}

int reference_qubit_count(const std::string& spec) {
    if (spec.rfind("bits:", 0) == 0) return static_cast<int>(spec.size() - 5);
    if (spec.rfind("occ:", 0) == 0) return -1;
    if (!spec.empty() && spec.find_first_not_of("01") == std::string::npos) {
        return static_cast<int>(spec.size());
    }
    return -1;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"pexsim: sparse wavefunction simulator for Pauli-exponential VQE circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string hamiltonian_path, ansatz_path, reference_spec, output_path = "-";
    std::string format = "csv", label;
    int qubits = -1, workers = default_workers(), step_size = 20;
    double cutoff = 1e-11, prune_threshold = 0.0;
    std::vector<double> cutoffs;
    std::uint64_t enumeration_budget = std::uint64_t{1} << 24;
    std::size_t prefix_len = 0, max_terms = 2'000'000;
    bool verify = false, optimize = false;

    const auto add_common = [&](CLI::App* cmd, bool needs_hamiltonian, bool needs_reference) {
        if (needs_hamiltonian) {
            cmd->add_option("--hamiltonian", hamiltonian_path, "Hamiltonian term file")
                ->required()
                ->check(CLI::ExistingFile);
        }
        cmd->add_option("--ansatz", ansatz_path, "ansatz term file with a convention header")
            ->required()
            ->check(CLI::ExistingFile);
        if (needs_reference) {
            cmd->add_option("--reference", reference_spec,
                            "reference state: bits:<01...> (qubit 0 rightmost) or occ:<i,j,...>")
                ->required();
        }
        cmd->add_option("--qubits", qubits, "qubit count (default: inferred)");
        cmd->add_option("--workers", workers,
                        "measurement threads (PEXSIM_WORKERS overrides; default: hardware)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--step-size", step_size, "entanglers per step (default 20)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--output", output_path, "output file, '-' for stdout");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* simulate = app.add_subcommand("simulate", "run the full ansatz at one cutoff");
    add_common(simulate, true, true);
    simulate->add_option("--cutoff", cutoff, "squared-amplitude cutoff (default 1e-11)");
    simulate->add_flag("--verify", verify, "cross-check against the dense oracle (n <= 24)");
    std::string save_state_path;
    simulate->add_option("--save-state", save_state_path,
                         "write the final state as a binary checkpoint");

    auto* sweep = app.add_subcommand("sweep", "run the ansatz over a list of cutoffs");
    add_common(sweep, true, true);
    sweep->add_option("--cutoffs", cutoffs, "cutoff list")->required()->delimiter(',');

    auto* trace = app.add_subcommand("trace", "energy after each block of entanglers");
    add_common(trace, true, true);
    trace->add_option("--cutoff", cutoff, "squared-amplitude cutoff (default 1e-11)");

    auto* rank = app.add_subcommand("rank", "GF(2) rank and nonzero bound per step prefix");
    add_common(rank, false, false);
    std::string amplitude_spec;
    rank->add_option("--reference", reference_spec,
                     "reference state (required with --amplitude)");
    rank->add_option("--amplitude", amplitude_spec,
                     "also evaluate <y|circuit|reference> by solution enumeration; "
                     "y uses the reference grammar");
    rank->add_option("--enumeration-budget", enumeration_budget,
                     "cap on enumerated solutions for --amplitude (default 2^24)");

    auto* resources_cmd = app.add_subcommand("resources", "gate counts for the compiled circuit");
    resources_cmd->add_option("--ansatz", ansatz_path, "ansatz term file")
        ->required()
        ->check(CLI::ExistingFile);
    resources_cmd->add_option("--hamiltonian", hamiltonian_path,
                              "optional Hamiltonian (adds the term count column)")
        ->check(CLI::ExistingFile);
    resources_cmd->add_option("--reference", reference_spec, "reference state (X-count source)");
    resources_cmd->add_option("--qubits", qubits, "qubit count (default: inferred)");
    resources_cmd->add_option("--step-size", step_size, "entanglers per step (default 20)")
        ->check(CLI::PositiveNumber);
    resources_cmd->add_option("--label", label, "molecule label for the output row");
    resources_cmd->add_flag("--optimize", optimize, "apply the peephole pass before counting");
    resources_cmd->add_option("--output", output_path, "output file, '-' for stdout");
    resources_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* transform = app.add_subcommand("transform",
                                         "similarity-transform cross-check against simulation");
    add_common(transform, true, true);
    transform->add_option("--prefix", prefix_len, "number of leading entanglers to transform")
        ->required();
    transform->add_option("--prune-threshold", prune_threshold,
                          "coefficient prune threshold applied after each transform");
    transform->add_option("--max-terms", max_terms, "term-count guard for the transform");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        workers = resolve_workers(workers);
        if (cutoff < 0.0 || cutoff >= 1.0) throw InputError("cutoff must lie in [0, 1)");
        for (const double c : cutoffs) {
            if (c < 0.0 || c >= 1.0) throw InputError("cutoffs must lie in [0, 1)");
        }

        if (simulate->parsed()) {
            const CommonInputs inputs =
                load_inputs(hamiltonian_path, ansatz_path, reference_spec, qubits, step_size);
            SweepResult result;
            result.steps = inputs.bundle.steps();
            SparseState final_state = SparseState::from_reference(inputs.n_qubits, 0, 0.0);
            result.rows.push_back(run_single(inputs.hamiltonian, inputs.bundle, cutoff, workers,
                                             save_state_path.empty() ? nullptr : &final_state));
            if (!save_state_path.empty()) {
                save_state(final_state, save_state_path);
                std::cerr << "checkpoint written to " << save_state_path << "\n";
            }
            if (verify) verify_against_oracle(inputs, result.rows.front().energy);
            report_memory(std::cerr, inputs.hamiltonian, result.rows.front().n_elements);
            write_output(output_path, [&](std::ostream& out) {
                if (format == "csv") {
                    write_sweep_csv(out, result);
                } else {
                    json j = metadata_json("simulate", inputs.n_qubits, workers, inputs.bundle,
                                           inputs.hamiltonian);
                    j["rows"] = json::array({sweep_row_json(result.rows.front())});
                    out << j.dump(2) << "\n";
                }
            });
        } else if (sweep->parsed()) {
            const CommonInputs inputs =
                load_inputs(hamiltonian_path, ansatz_path, reference_spec, qubits, step_size);
            const SweepResult result = run_sweep(inputs.hamiltonian, inputs.bundle, cutoffs,
                                                 workers);
            write_output(output_path, [&](std::ostream& out) {
                if (format == "csv") {
                    write_sweep_csv(out, result);
                } else {
                    json j = metadata_json("sweep", inputs.n_qubits, workers, inputs.bundle,
                                           inputs.hamiltonian);
                    j["rows"] = json::array();
                    for (const auto& row : result.rows) j["rows"].push_back(sweep_row_json(row));
                    out << j.dump(2) << "\n";
                }
            });
        } else if (trace->parsed()) {
            const CommonInputs inputs =
                load_inputs(hamiltonian_path, ansatz_path, reference_spec, qubits, step_size);
            const auto rows = per_step_trace(inputs.hamiltonian, inputs.bundle, cutoff, workers);
            write_output(output_path, [&](std::ostream& out) {
                if (format == "csv") {
                    write_trace_csv(out, rows);
                } else {
                    json j = metadata_json("trace", inputs.n_qubits, workers, inputs.bundle,
                                           inputs.hamiltonian);
                    j["cutoff"] = cutoff;
                    j["rows"] = json::array();
                    for (const auto& row : rows) {
                        j["rows"].push_back({{"step", row.step},
                                             {"energy_ha", row.energy},
                                             {"n_elements", row.n_elements},
                                             {"meas_time_s", row.meas_time_s}});
                    }
                    out << j.dump(2) << "\n";
                }
            });
        } else if (rank->parsed()) {
            const AnsatzBundle bundle = load_ansatz(ansatz_path, qubits, 0, step_size);
            const auto gates = bundle.gates();
            if (gates.empty()) throw InputError("ansatz has no entanglers");
            struct RankRow {
                std::size_t step, entanglers;
                int rank;
            };
            std::vector<RankRow> rows;
            const auto block = static_cast<std::size_t>(bundle.step_size);
            for (std::size_t end = std::min(block, gates.size());;
                 end = std::min(end + block, gates.size())) {
                const std::span<const ExponentialGate> prefix(gates.data(), end);
                rows.push_back({(end + block - 1) / block, end, gf2_rank(xy_matrix(prefix))});
                if (end == gates.size()) break;
            }
            const NonzeroBound bound = upper_bound_nonzeros(gates);
            std::cerr << "upper bound on nonzero elements: "
                      << (bound.saturated ? std::string("2^128 (saturated)")
                                          : to_decimal(bound.count))
                      << " (rank " << bound.rank << ")\n";

            bool have_amplitude = false;
            std::complex<double> amplitude{0.0, 0.0};
            if (!amplitude_spec.empty()) {
                if (reference_spec.empty()) {
                    throw InputError("--amplitude requires --reference");
                }
                const u128 x = parse_reference(reference_spec);
                const u128 y = parse_reference(amplitude_spec);
                const u128 valid = low_mask128(bundle.n_qubits);
                if ((x & ~valid) != 0 || (y & ~valid) != 0) {
                    throw InputError("reference/amplitude state exceeds the qubit count");
                }
                amplitude = single_amplitude(gates, x, y, enumeration_budget);
                have_amplitude = true;
                std::cerr << "amplitude <" << to_bitstring(y, bundle.n_qubits) << "|circuit|"
                          << to_bitstring(x, bundle.n_qubits) << "> = " << amplitude.real()
                          << (amplitude.imag() < 0 ? " - " : " + ")
                          << std::abs(amplitude.imag()) << "i\n";
            }
            write_output(output_path, [&](std::ostream& out) {
                if (format == "csv") {
                    out << "step,entanglers,rank,log2_bound\n";
                    for (const auto& row : rows) {
                        out << row.step << ',' << row.entanglers << ',' << row.rank << ','
                            << row.rank << '\n';
                    }
                } else {
                    json j;
                    j["command"] = "rank";
                    j["version"] = kVersion;
                    j["n_qubits"] = bundle.n_qubits;
                    j["rank"] = bound.rank;
                    j["bound_saturated"] = bound.saturated;
                    if (!bound.saturated) j["bound"] = to_decimal(bound.count);
                    if (have_amplitude) {
                        j["amplitude_re"] = amplitude.real();
                        j["amplitude_im"] = amplitude.imag();
                    }
                    j["rows"] = json::array();
                    for (const auto& row : rows) {
                        j["rows"].push_back({{"step", row.step},
                                             {"entanglers", row.entanglers},
                                             {"rank", row.rank},
                                             {"log2_bound", row.rank}});
                    }
                    out << j.dump(2) << "\n";
                }
            });
        } else if (resources_cmd->parsed()) {
            const AnsatzBundle bundle = load_ansatz(ansatz_path, qubits, 0, step_size);
            const u128 occupied =
                reference_spec.empty() ? u128{0} : parse_reference(reference_spec);
            if ((occupied & ~low_mask128(bundle.n_qubits)) != 0) {
                throw InputError("reference state exceeds the qubit count");
            }
            const auto gates = bundle.gates();
            std::size_t identity_count = 0;
            for (const auto& g : gates) {
                if (g.pauli.is_identity()) ++identity_count;
            }
            if (identity_count > 0) {
                std::cerr << "note: " << identity_count
                          << " identity entangler(s) skipped (global phase only)\n";
            }
            const GateCounts counts =
                circuit_resources(gates, occupied, bundle.n_qubits, optimize);
            std::string terms_column;
            std::uint64_t term_count = 0;
            if (!hamiltonian_path.empty()) {
                const PauliSumOperator h = load_hamiltonian(hamiltonian_path, bundle.n_qubits);
                term_count = h.term_count();
                terms_column = std::to_string(term_count);
            }
            const std::string molecule =
                label.empty() ? std::filesystem::path(ansatz_path).stem().string() : label;
            write_output(output_path, [&](std::ostream& out) {
                if (format == "csv") {
                    out << "molecule,steps,qubits,cnot,x,h,rx,rz,hamiltonian_terms\n";
                    out << molecule << ',' << bundle.steps() << ',' << bundle.n_qubits << ','
                        << counts.cnot << ',' << counts.x << ',' << counts.h << ',' << counts.rx
                        << ',' << counts.rz << ',' << terms_column << '\n';
                } else {
                    json j;
                    j["command"] = "resources";
                    j["version"] = kVersion;
                    j["molecule"] = molecule;
                    j["steps"] = bundle.steps();
                    j["qubits"] = bundle.n_qubits;
                    j["optimized"] = optimize;
                    j["cnot"] = counts.cnot;
                    j["x"] = counts.x;
                    j["h"] = counts.h;
                    j["rx"] = counts.rx;
                    j["rz"] = counts.rz;
                    if (!hamiltonian_path.empty()) j["hamiltonian_terms"] = term_count;
                    out << j.dump(2) << "\n";
                }
            });
        } else if (transform->parsed()) {
            const CommonInputs inputs =
                load_inputs(hamiltonian_path, ansatz_path, reference_spec, qubits, step_size);
            const CrosscheckResult result =
                transform_crosscheck(inputs.hamiltonian, inputs.bundle, prefix_len,
                                     prune_threshold, max_terms, workers);
            write_output(output_path, [&](std::ostream& out) {
                if (format == "csv") {
                    out << "prefix,prune_threshold,e_transform_ha,e_simulation_ha,difference_ha,"
                           "transformed_terms,pruned_weight\n";
                    out << prefix_len << ',' << fmt_double(prune_threshold) << ','
                        << fmt_double(result.e_transform) << ','
                        << fmt_double(result.e_simulation) << ','
                        << fmt_double(result.difference) << ',' << result.transformed_terms
                        << ',' << fmt_double(result.pruned_weight) << '\n';
                } else {
                    json j = metadata_json("transform", inputs.n_qubits, workers, inputs.bundle,
                                           inputs.hamiltonian);
                    j["prefix"] = prefix_len;
                    j["prune_threshold"] = prune_threshold;
                    j["e_transform_ha"] = result.e_transform;
                    j["e_simulation_ha"] = result.e_simulation;
                    j["difference_ha"] = result.difference;
                    j["transformed_terms"] = result.transformed_terms;
                    j["pruned_weight"] = result.pruned_weight;
                    out << j.dump(2) << "\n";
                }
            });
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace pexsim
