// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The dcasim Authors
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

#include "dcasim/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dcasim/analytic.hpp"
#include "dcasim/config.hpp"
#include "dcasim/engine.hpp"
#include "dcasim/errors.hpp"
#include "dcasim/io.hpp"

namespace dcasim {

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--config", opts.config_path, "Run configuration (INI)")->required();
    cmd->add_option("--seed", opts.seed, "Master seed (overrides system.seed)");
    cmd->add_option("--out", opts.out_dir, "Output directory (overrides output.dir)");
    cmd->add_option("--set", opts.sets, "Override, section.key=value");
}

RunConfig load(const CommonOptions& opts)
{
    std::vector<Override> overrides;
    for (const auto& s : opts.sets) {
        overrides.push_back(parse_override(s));
    }
    if (opts.seed) {
        overrides.emplace_back("system.seed", std::to_string(*opts.seed));
    }
    if (opts.out_dir) {
        overrides.emplace_back("output.dir", *opts.out_dir);
    }
    return load_config(opts.config_path, overrides);
}

// "0.8:50x39" or "0.2:5" or "1:20,20,20".
TimeShareMode parse_mode_spec(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ParameterError("--mode: expected FRACTION:T1,T2,..., got '" + text + "'");
    }
    TimeShareMode mode;
    try {
        mode.fraction = std::stod(text.substr(0, colon));
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            int repeat = 1;
            if (const auto x = item.find('x'); x != std::string::npos) {
                repeat = std::stoi(item.substr(x + 1));
                item = item.substr(0, x);
            }
            const int t = std::stoi(item);
            mode.coherence.insert(mode.coherence.end(), static_cast<std::size_t>(std::max(repeat, 0)), t);
        }
    } catch (const std::logic_error&) {
        throw ParameterError("--mode: cannot parse '" + text + "'");
    }
    return mode;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Frame-level MU-MIMO downlink scheduling simulator", "dcasim"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    auto* simulate = app.add_subcommand("simulate", "Run one simulation and write frames.csv, queues.csv, summary.txt");
    add_common(simulate, sim_opts);

    CommonOptions cap_opts;
    std::optional<double> cap_v;
    std::optional<double> cap_w;
    auto* capacity = app.add_subcommand("capacity", "Estimate the ergodic sum capacity with admission control");
    add_common(capacity, cap_opts);
    capacity->add_option("--V", cap_v, "Admission threshold in bits");
    capacity->add_option("--wmax", cap_w, "Bits granted per admitted frame");

    CommonOptions sweep_opts;
    std::string axis;
    std::vector<double> values;
    unsigned workers = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "One run per value of a numeric config key");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--axis", axis, "Config key (M, T, theta, K, V, or section.key)")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->delimiter(',');
    sweep_cmd->add_option("--jobs", workers, "Concurrent runs");

    auto* analytic = app.add_subcommand("analytic", "Closed-form training DoF and time-sharing rate");
    analytic->require_subcommand(1);
    double tc = 0.0;
    int ns = 0;
    std::optional<int> m;
    bool unbounded = false;
    auto* dof = analytic->add_subcommand("dof", "Training degrees of freedom");
    dof->add_option("--tc", tc, "Block length T_c")->required();
    dof->add_option("--ns", ns, "Scheduled users N_s")->required();
    auto* m_opt = dof->add_option("--m", m, "BS antennas");
    dof->add_flag("--unbounded-m", unbounded, "Unbounded antenna array")->excludes(m_opt);
    std::vector<std::string> mode_specs;
    auto* timeshare = analytic->add_subcommand("timeshare", "Time-sharing sum rate with unit user rates");
    timeshare->add_option("--mode", mode_specs, "FRACTION:T1,T2,... (Tx3 repeats T)")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        if (*simulate) {
            const RunConfig config = load(sim_opts);
            const RunResult result = run_simulation(config);
            write_run_outputs(config.output_dir, config, result);
            out << summary_text(config, result.summary);
        } else if (*capacity) {
            RunConfig config = load(cap_opts);
            AdmissionControl ac = config.admission.value_or(AdmissionControl{});
            if (cap_v) {
                ac.threshold = *cap_v;
                if (!cap_w && !config.admission) {
                    ac.grant = *cap_v;
                }
            } else if (!config.admission) {
                ac = default_admission(config);
            }
            if (cap_w) {
                ac.grant = *cap_w;
            }
            config.admission = ac;
            config.validate();
            const RunResult result = run_simulation(config);
            write_run_outputs(config.output_dir, config, result);
            out << "A_avg=" << format_number(result.summary.admitted_rate.value_or(0.0)) << '\n';
        } else if (*sweep_cmd) {
            const RunConfig config = load(sweep_opts);
            const auto rows = sweep(config, axis, values, workers);
            const std::string table = sweep_csv(axis, rows);
            std::filesystem::create_directories(config.output_dir);
            write_file_atomic(config.output_dir / "sweep.csv", table);
            out << table;
        } else if (*dof) {
            const std::optional<int> antennas = unbounded ? std::nullopt : m;
            if (!unbounded && !m) {
                throw ParameterError("dof: give --m or --unbounded-m");
            }
            out << format_number(training_dof(tc, ns, antennas)) << '\n';
        } else if (*timeshare) {
            std::vector<TimeShareMode> modes;
            for (const auto& spec : mode_specs) {
                modes.push_back(parse_mode_spec(spec));
            }
            out << format_number(timeshare_sum_rate(modes)) << '\n';
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace dcasim
