// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file qsd_cli.cpp
 * @brief Command-line front end: fci, vqe, qsci, sqd, sample, coupon.
 *
 * Options may come from a TOML/INI file given with --config; values on the
 * command line win over the file, the file wins over the defaults.
 */

#include <qsd/qsd.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using qsd::json;

constexpr int kExitInput = 2;
constexpr int kExitNonConvergence = 3;

struct Options {
    std::string command;
    std::string fcidump;
    std::vector<std::size_t> shots{100, 1000, 10000, 100000, 1000000};
    bool noisy = false;
    double p01 = 0.01;
    double p10 = 0.01;
    qsd::u64 seed = 42;
    int batches = 3;
    std::size_t batch_size = 300;
    double tolerance = 1e-6;
    int max_iter = 5;
    std::string state = "vqe";
    int sweeps = 3;
    std::string vqe_mode = "exact";
    std::size_t shots_per_group = 1000;
    double cutoff = qsd::kDefaultCoefficientCutoff;
    std::vector<std::size_t> m_grid{10, 15, 20, 25, 30, 35, 40, 45, 50};
    std::vector<double> p_max{0.972};
    std::size_t mc_trials = 10000;
    std::size_t mc_max_m = 30;
    std::size_t curve_trials = 20;
    std::string out;
    std::string format = "json";
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json options_json(const Options& o) {
    json j{{"command", o.command},       {"fcidump", o.fcidump},       {"shots", o.shots},
           {"noisy", o.noisy},           {"noise_p01", o.p01},         {"noise_p10", o.p10},
           {"seed", o.seed},             {"batches", o.batches},       {"batch_size", o.batch_size},
           {"tolerance", o.tolerance},   {"max_iter", o.max_iter},     {"state", o.state},
           {"sweeps", o.sweeps},         {"vqe_mode", o.vqe_mode},     {"shots_per_group", o.shots_per_group},
           {"cutoff", o.cutoff},         {"m_grid", o.m_grid},         {"p_max", o.p_max},
           {"mc_trials", o.mc_trials},   {"mc_max_m", o.mc_max_m},     {"curve_trials", o.curve_trials},
           {"format", o.format}};
    return j;
}

/// FNV-1a over the canonical (sorted-key) JSON of the resolved options.
std::string config_hash(const Options& o) {
    json j = options_json(o);
    j.erase("format");
    const std::string s = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fixed5(double e) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5f", e);
    return buf;
}

qsd::MolecularIntegrals load(const Options& o) {
    if (o.fcidump.empty()) throw InputError("--fcidump is required for this command");
    try {
        return qsd::read_fcidump(o.fcidump);
    } catch (const qsd::ParseError& e) {
        throw InputError(e.what());
    } catch (const std::ios_base::failure& e) {
        throw InputError(e.what());
    }
}

std::optional<qsd::NoiseModel> noise_of(const Options& o) {
    if (!o.noisy) return std::nullopt;
    qsd::NoiseModel n{o.p01, o.p10};
    n.validate();
    return n;
}

double hf_energy(const qsd::MolecularIntegrals& ints) {
    const auto hf = qsd::hartree_fock(ints.n_alpha(), ints.n_beta());
    return qsd::slater_condon_element(hf, hf, ints) + ints.core_energy();
}

struct TrialState {
    qsd::StateVector state;
    double energy = 0.0;
    std::string kind;
};

TrialState trial_state(const Options& o, const qsd::MolecularIntegrals& ints) {
    if (o.state == "fci") {
        const auto f = qsd::fci_ground_state(ints);
        return {f.state, f.energy, "fci"};
    }
    const int n = ints.n_orbitals();
    const auto h = qsd::build_qubit_hamiltonian(ints, o.cutoff);
    auto a = qsd::uccsd_excitations(n, ints.n_alpha(), ints.n_beta());
    const auto ref = qsd::prepare_basis_state(qsd::hartree_fock(ints.n_alpha(), ints.n_beta()).qubit_index(n), 2 * n);
    const auto r = qsd::vqe_optimize(h, a, ref, o.sweeps, 1e-8);
    a.theta = r.theta;
    return {qsd::apply_ansatz(ref, a), r.energy, "vqe"};
}

json stamp(json rec, const Options& o, const std::string& hash) {
    rec["seed"] = o.seed;
    rec["version"] = qsd::kVersion;
    rec["config_hash"] = hash;
    return rec;
}

struct Report {
    json records = json::array();
    std::string csv;  // when set, used for --format csv
};

Report cmd_fci(const Options& o, const std::string& hash) {
    const auto ints = load(o);
    const auto f = qsd::fci_ground_state(ints);
    if (!f.converged) throw qsd::NonConvergence("full CI eigensolver did not converge");
    Report r;
    const json rec{{"method", "fci"},
                   {"fci_energy", f.energy},
                   {"hf_energy", hf_energy(ints)},
                   {"space_dimension", f.space.size()},
                   {"hf_weight", f.hf_weight}};
    r.records.push_back(stamp(rec, o, hash));
    std::cerr << "fci " << fixed5(f.energy) << " Ha, hf " << fixed5(hf_energy(ints)) << " Ha, dimension "
              << f.space.size() << '\n';
    return r;
}

Report cmd_vqe(const Options& o, const std::string& hash) {
    const auto ints = load(o);
    const double e_fci = qsd::fci_ground_state(ints).energy;
    const int n = ints.n_orbitals();
    const auto h = qsd::build_qubit_hamiltonian(ints, o.cutoff);
    auto a = qsd::uccsd_excitations(n, ints.n_alpha(), ints.n_beta());
    const auto ref = qsd::prepare_basis_state(qsd::hartree_fock(ints.n_alpha(), ints.n_beta()).qubit_index(n), 2 * n);
    const auto opt = qsd::vqe_optimize(h, a, ref, o.sweeps, 1e-8);
    a.theta = opt.theta;
    const auto state = qsd::apply_ansatz(ref, a);

    Report r;
    json rec{{"method", "vqe"}, {"trace", opt.trace}, {"sweeps", opt.sweeps}, {"n_parameters", opt.theta.size()}};
    if (o.vqe_mode == "exact") {
        rec["shots"] = 0;
        rec["energy"] = opt.energy;
        rec["stderr"] = 0.0;
    } else if (o.vqe_mode == "shots") {
        const auto groups = qsd::qubitwise_commuting_groups(h);
        const auto est = qsd::estimate_energy_by_sampling(state, h, groups, o.shots_per_group, noise_of(o), o.seed);
        rec["shots"] = est.total_shots;
        rec["n_groups"] = groups.size();
        rec["energy"] = est.energy;
        rec["stderr"] = est.std_error;
        rec["stderr_grouped"] = est.std_error_grouped;
    } else {
        throw InputError("--vqe-mode must be exact or shots");
    }
    rec["abs_error"] = std::abs(rec["energy"].get<double>() - e_fci);
    std::cerr << "vqe " << fixed5(rec["energy"].get<double>()) << " Ha\n";
    r.records.push_back(stamp(rec, o, hash));
    r.csv = "method,shots,energy,stderr,abs_error\nvqe," + rec["shots"].dump() + ',' +
            fixed5(rec["energy"].get<double>()) + ',' + fixed5(rec["stderr"].get<double>()) + ',' +
            fixed5(rec["abs_error"].get<double>()) + '\n';
    return r;
}

Report cmd_subspace(const Options& o, const std::string& hash, bool sqd) {
    const auto ints = load(o);
    const double e_fci = qsd::fci_ground_state(ints).energy;
    const auto trial = trial_state(o, ints);
    const auto noise = noise_of(o);
    const int n = ints.n_orbitals();

    Report r;
    std::ostringstream csv;
    csv << "method,shots,energy,abs_error,subspace_size,n_discovered,n_valid\n";
    for (std::size_t shots : o.shots) {
        const auto d = qsd::sample_bitstrings(trial.state, shots, noise, o.seed);
        const auto filt = qsd::symmetry_filter(d, n, ints.n_alpha(), ints.n_beta());
        json rec{{"method", sqd ? "sqd" : "qsci"},
                 {"shots", shots},
                 {"trial_state", trial.kind},
                 {"noisy", o.noisy},
                 {"n_discovered", d.unique()},
                 {"n_valid", filt.valid.unique()},
                 {"n_invalid_unique", filt.invalid_unique}};
        double energy = 0.0;
        std::size_t dim = 0;
        if (sqd) {
            qsd::SqdConfig cfg;
            cfg.n_batches = o.batches;
            cfg.batch_size = o.batch_size;
            cfg.tolerance = o.tolerance;
            cfg.max_iterations = o.max_iter;
            cfg.seed = o.seed;
            const auto res = qsd::sqd_run(d, ints, cfg);
            energy = res.energy;
            dim = res.subspace_size;
            const json detail = qsd::to_json(res);
            rec["iterations"] = detail["iterations"];
            rec["occupations"] = detail["occupations"];
            rec["converged"] = res.converged;
        } else {
            if (filt.valid.total == 0) throw InputError("no valid samples at " + std::to_string(shots) + " shots");
            const auto res = qsd::qsci_from_samples(d, ints);
            if (!res.converged) throw qsd::NonConvergence("QSCI eigensolver did not converge");
            energy = res.energy;
            dim = res.subspace_size;
            rec["pool_sizes"] = {res.n_alpha_strings, res.n_beta_strings};
        }
        rec["energy"] = energy;
        rec["abs_error"] = std::abs(energy - e_fci);
        rec["subspace_size"] = dim;
        r.records.push_back(stamp(rec, o, hash));
        csv << (sqd ? "sqd," : "qsci,") << shots << ',' << fixed5(energy) << ',' << fixed5(std::abs(energy - e_fci))
            << ',' << dim << ',' << d.unique() << ',' << filt.valid.unique() << '\n';
        std::cerr << (sqd ? "sqd " : "qsci ") << shots << " shots: " << fixed5(energy) << " Ha, subspace " << dim
                  << '\n';
    }
    r.csv = csv.str();
    return r;
}

Report cmd_sample(const Options& o, const std::string& hash) {
    const auto ints = load(o);
    const auto trial = trial_state(o, ints);
    Report r;
    std::ostringstream csv;
    csv << "shots,bitstring,count\n";
    for (std::size_t shots : o.shots) {
        const auto d = qsd::sample_bitstrings(trial.state, shots, noise_of(o), o.seed);
        const auto filt = qsd::symmetry_filter(d, ints.n_orbitals(), ints.n_alpha(), ints.n_beta());
        json rec{{"method", "sample"},
                 {"shots", shots},
                 {"trial_state", trial.kind},
                 {"distribution", qsd::to_json(d)},
                 {"n_discovered", d.unique()},
                 {"n_valid", filt.valid.unique()},
                 {"n_invalid_shots", filt.n_invalid}};
        r.records.push_back(stamp(rec, o, hash));
        for (const auto& [bits, c] : d.counts) csv << shots << ',' << qsd::mask_to_string(bits, d.n_qubits) << ',' << c << '\n';
    }
    r.csv = csv.str();
    return r;
}

Report cmd_coupon(const Options& o, const std::string& hash) {
    Report r;
    std::ostringstream csv;
    csv.precision(10);
    if (!o.fcidump.empty()) {
        // Discovery curve of the trial state.
        const auto ints = load(o);
        const auto trial = trial_state(o, ints);
        const auto curve = qsd::discovery_curve(trial.state, o.shots, o.curve_trials, o.seed);
        for (const auto& c : curve)
            r.records.push_back(stamp({{"method", "discovery_curve"},
                                       {"shots", c.shots},
                                       {"mean_unique", c.mean_unique},
                                       {"stderr", c.std_error}},
                                      o, hash));
        r.csv = qsd::curve_to_csv(curve);
        return r;
    }
    csv << "m,p_max,lower_bound,lower_bound_integral,uniform,mc_mean,mc_stderr\n";
    for (double pm : o.p_max) {
        for (std::size_t m : o.m_grid) {
            if (m < 2) throw InputError("m must be >= 2");
            const auto q = qsd::AmplitudeDistribution::skewed(pm, m);
            const double lb = qsd::expected_shots_lower_bound(q);
            const double integral = qsd::expected_shots_integral(q);
            const double uni = qsd::expected_shots_uniform(m);
            json rec{{"method", "coupon"},    {"m", m},         {"p_max", pm},
                     {"lower_bound", lb},     {"lower_bound_integral", integral},
                     {"uniform", uni}};
            csv << m << ',' << pm << ',' << lb << ',' << integral << ',' << uni;
            if (m <= o.mc_max_m) {
                const auto mc = qsd::simulate_discovery(q, o.mc_trials, qsd::derive_key(o.seed, m));
                rec["mc_mean"] = mc.mean;
                rec["mc_stderr"] = mc.std_error;
                csv << ',' << mc.mean << ',' << mc.std_error;
            } else {
                csv << ",,";
            }
            csv << '\n';
            r.records.push_back(stamp(rec, o, hash));
        }
    }
    r.csv = csv.str();
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Sample-based quantum diagonalization toolkit"};
    app.set_version_flag("--version", std::string(qsd::kVersion));
    app.set_config("--config", "", "TOML or INI file with option values");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--fcidump", o.fcidump, "FCIDUMP file");
    app.add_option("--shots", o.shots, "Shot budgets")->delimiter(',');
    app.add_flag("--noisy", o.noisy, "Apply readout flips");
    app.add_option("--noise-p01", o.p01, "P(read 1 | 0)")->check(CLI::Range(0.0, 1.0));
    app.add_option("--noise-p10", o.p10, "P(read 0 | 1)")->check(CLI::Range(0.0, 1.0));
    app.add_option("--seed", o.seed, "RNG seed");
    app.add_option("--batches", o.batches, "SQD batches per iteration")->check(CLI::PositiveNumber);
    app.add_option("--batch-size", o.batch_size, "SQD determinants per batch")->check(CLI::PositiveNumber);
    app.add_option("--tolerance", o.tolerance, "SQD batch-spread tolerance (Ha)")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", o.max_iter, "SQD iterations")->check(CLI::PositiveNumber);
    app.add_option("--state", o.state, "Trial state")->check(CLI::IsMember({"vqe", "fci"}));
    app.add_option("--sweeps", o.sweeps, "VQE sweeps")->check(CLI::PositiveNumber);
    app.add_option("--vqe-mode", o.vqe_mode, "VQE energy: exact or shots")->check(CLI::IsMember({"exact", "shots"}));
    app.add_option("--shots-per-group", o.shots_per_group, "Shots per measurement group")->check(CLI::PositiveNumber);
    app.add_option("--cutoff", o.cutoff, "Pauli coefficient cutoff");
    app.add_option("--m", o.m_grid, "Coupon m grid")->delimiter(',');
    app.add_option("--p-max", o.p_max, "Coupon p_max values")->delimiter(',');
    app.add_option("--mc-trials", o.mc_trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    app.add_option("--mc-max-m", o.mc_max_m, "Largest m cross-checked by Monte Carlo");
    app.add_option("--curve-trials", o.curve_trials, "Trials per discovery-curve point")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "Output file (default stdout)");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    for (const char* name : {"fci", "vqe", "qsci", "sqd", "sample", "coupon"})
        app.add_subcommand(name, std::string("Run ") + name)->callback([&o, name] { o.command = name; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    const std::string hash = config_hash(o);
    try {
        Report r;
        if (o.command == "fci") r = cmd_fci(o, hash);
        else if (o.command == "vqe") r = cmd_vqe(o, hash);
        else if (o.command == "qsci") r = cmd_subspace(o, hash, false);
        else if (o.command == "sqd") r = cmd_subspace(o, hash, true);
        else if (o.command == "sample") r = cmd_sample(o, hash);
        else r = cmd_coupon(o, hash);

        std::string text;
        if (o.format == "csv") {
            if (r.csv.empty()) {
                std::ostringstream os;
                for (const auto& rec : r.records) os << rec.dump() << '\n';
                text = os.str();
            } else {
                text = r.csv;
            }
        } else {
            const json doc{{"command", o.command},
                           {"version", qsd::kVersion},
                           {"seed", o.seed},
                           {"config_hash", hash},
                           {"config", options_json(o)},
                           {"records", r.records}};
            text = doc.dump(2) + '\n';
        }
        if (o.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(o.out);
            if (!f) throw InputError("cannot write " + o.out);
            f << text;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const qsd::NonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const qsd::QuadratureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
