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

#include "dcasim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dcasim/errors.hpp"

namespace dcasim {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kKnownKeys = {
    "system.antennas",  "system.snr_db",       "system.horizon",     "system.seed",
    "system.channel",   "system.carrier_freq", "system.cell_radius", "system.packet_bits",
    "users.count",      "users.coherence",     "users.velocity",     "users.arrival_rate",
    "policy.kind",      "policy.theta",        "policy.period",      "policy.groups",
    "policy.t_stc",     "policy.k_random",     "policy.subset_limit",
    "admission.enabled", "admission.V",        "admission.W_max",
    "output.dir",
};

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(value)) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
    return value;
}

std::int64_t to_int(const std::string& key, const std::string& text)
{
    const double v = to_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    }
    return static_cast<std::int64_t>(v);
}

bool to_bool(const std::string& key, const std::string& text)
{
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "1" || t == "true" || t == "yes" || t == "on") {
        return true;
    }
    if (t == "0" || t == "false" || t == "no" || t == "off") {
        return false;
    }
    throw ConfigError(key + ": expected a boolean, got '" + text + "'");
}

// Comma-separated list; "100x3" repeats 100 three times.
std::vector<double> to_list(const std::string& key, const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw ConfigError(key + ": empty list element");
        }
        std::int64_t repeat = 1;
        if (const auto x = item.find('x'); x != std::string::npos) {
            repeat = to_int(key, item.substr(x + 1));
            if (repeat < 1) {
                throw ConfigError(key + ": repeat count must be >= 1");
            }
            item = item.substr(0, x);
        }
        const double v = to_double(key, item);
        out.insert(out.end(), static_cast<std::size_t>(repeat), v);
    }
    return out;
}

std::vector<double> broadcast(const std::string& key, std::vector<double> values, std::size_t n)
{
    if (values.size() == 1 && n > 1) {
        values.assign(n, values.front());
    }
    if (values.size() != n) {
        throw ConfigError(key + ": expected 1 or " + std::to_string(n) + " values, got " +
                          std::to_string(values.size()));
    }
    return values;
}

int to_count(const std::string& key, const std::string& text)
{
    const std::int64_t v = to_int(key, text);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(key + ": out of range");
    }
    return static_cast<int>(v);
}

RunConfig from_tree(const pt::ptree& tree)
{
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw ConfigError(section + ": key outside of a section");
        }
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            if (!kKnownKeys.count(full)) {
                throw ConfigError(full + ": unknown configuration key");
            }
        }
    }
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '.'))) {
            return *v;
        }
        return std::nullopt;
    };

    RunConfig c;
    if (auto v = get("system.antennas")) c.antennas = to_count("system.antennas", *v);
    if (auto v = get("system.snr_db")) c.snr_db = to_double("system.snr_db", *v);
    if (auto v = get("system.horizon")) c.horizon_slots = to_int("system.horizon", *v);
    if (auto v = get("system.seed")) {
        const std::int64_t s = to_int("system.seed", *v);
        if (s < 0) {
            throw ConfigError("system.seed: must be nonnegative");
        }
        c.seed = static_cast<std::uint64_t>(s);
    }
    if (auto v = get("system.channel")) {
        const std::string m = trim(*v);
        if (m == "rayleigh") {
            c.channel_model = ChannelModel::rayleigh;
        } else if (m == "fixed") {
            c.channel_model = ChannelModel::fixed;
        } else {
            throw ConfigError("system.channel: expected 'rayleigh' or 'fixed', got '" + m + "'");
        }
    }
    if (auto v = get("system.carrier_freq")) c.radio.carrier_freq = to_double("system.carrier_freq", *v);
    if (auto v = get("system.cell_radius")) c.radio.cell_radius = to_double("system.cell_radius", *v);
    if (auto v = get("system.packet_bits")) c.packet_bits = to_double("system.packet_bits", *v);

    std::vector<double> coherence;
    std::vector<double> velocity;
    if (auto v = get("users.coherence")) coherence = to_list("users.coherence", *v);
    if (auto v = get("users.velocity")) velocity = to_list("users.velocity", *v);
    std::size_t n = std::max(coherence.size(), velocity.size());
    if (auto v = get("users.count")) {
        const int count = to_count("users.count", *v);
        if (count < 1) {
            throw ConfigError("users.count: must be >= 1");
        }
        n = static_cast<std::size_t>(count);
    }
    if (n == 0) {
        throw ConfigError("users.coherence: no users configured (give users.coherence or users.velocity)");
    }
    if (!coherence.empty()) coherence = broadcast("users.coherence", coherence, n);
    if (!velocity.empty()) velocity = broadcast("users.velocity", velocity, n);
    std::vector<double> rates(n, 1.5);
    if (auto v = get("users.arrival_rate")) rates = broadcast("users.arrival_rate", to_list("users.arrival_rate", *v), n);

    c.users.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        UserProfile& u = c.users[i];
        u.user_id = static_cast<int>(i);
        if (!coherence.empty()) {
            const double t = coherence[i];
            if (t != std::floor(t) || t < 1 || t > 1e9) {
                throw ConfigError("users.coherence: block lengths must be integers >= 1");
            }
            u.coherence_len = static_cast<int>(t);
        }
        if (!velocity.empty()) {
            u.velocity = velocity[i];
        }
        u.arrival_rate = rates[i];
    }

    if (auto v = get("policy.kind")) c.policy.kind = parse_policy_kind(trim(*v));
    if (auto v = get("policy.theta")) c.policy.theta = to_count("policy.theta", *v);
    if (auto v = get("policy.period")) c.policy.reschedule_period = to_count("policy.period", *v);
    if (auto v = get("policy.groups")) c.policy.num_groups = to_count("policy.groups", *v);
    if (auto v = get("policy.t_stc")) c.policy.t_stc = to_count("policy.t_stc", *v);
    if (auto v = get("policy.k_random")) c.policy.k_random = to_count("policy.k_random", *v);
    if (auto v = get("policy.subset_limit")) c.policy.subset_limit = to_count("policy.subset_limit", *v);

    const bool has_v = get("admission.V").has_value();
    const bool has_w = get("admission.W_max").has_value();
    bool admission = has_v || has_w;
    if (auto v = get("admission.enabled")) admission = to_bool("admission.enabled", *v);
    if (admission) {
        AdmissionControl ac;
        if (has_v) {
            ac.threshold = to_double("admission.V", *get("admission.V"));
        } else {
            ac = default_admission(c);
        }
        ac.grant = has_w ? to_double("admission.W_max", *get("admission.W_max")) : ac.threshold;
        c.admission = ac;
    }

    if (auto v = get("output.dir")) c.output_dir = trim(*v);

    c.validate();
    return c;
}

RunConfig from_stream(std::istream& in, const std::vector<Override>& overrides)
{
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    for (const auto& [key, value] : overrides) {
        if (key.find('.') == std::string::npos) {
            throw ConfigError(key + ": override keys take the form section.key");
        }
        tree.put(pt::ptree::path_type(key, '.'), value);
    }
    return from_tree(tree);
}

} // namespace

void AdmissionControl::validate() const
{
    if (!(threshold > 0.0)) {
        throw ConfigError("admission.V: threshold must be positive");
    }
    if (!(grant >= 0.0)) {
        throw ConfigError("admission.W_max: grant must be nonnegative");
    }
}

double RunConfig::noise_var() const
{
    return total_power() * std::pow(10.0, -snr_db / 10.0);
}

std::vector<int> RunConfig::coherence() const
{
    std::vector<int> out;
    out.reserve(users.size());
    for (const auto& u : users) {
        out.push_back(resolve_coherence(u, radio));
    }
    return out;
}

LinkParams RunConfig::link() const
{
    return {antennas, total_power(), noise_var(), policy.t_stc};
}

void RunConfig::validate() const
{
    if (antennas < 1) {
        throw ConfigError("system.antennas: must be >= 1");
    }
    if (!std::isfinite(snr_db)) {
        throw ConfigError("system.snr_db: must be finite");
    }
    if (horizon_slots < 0) {
        throw ConfigError("system.horizon: must be >= 0");
    }
    if (!(radio.carrier_freq > 0.0)) {
        throw ConfigError("system.carrier_freq: must be positive");
    }
    if (!(radio.cell_radius > 0.0)) {
        throw ConfigError("system.cell_radius: must be positive");
    }
    if (!(packet_bits > 0.0)) {
        throw ConfigError("system.packet_bits: must be positive");
    }
    if (users.empty()) {
        throw ConfigError("users.count: at least one user is required");
    }
    for (const auto& u : users) {
        if (u.velocity && !(*u.velocity > 0.0) && !u.coherence_len) {
            throw ConfigError("users.velocity: velocities must be positive");
        }
        if (!u.velocity && !u.coherence_len) {
            throw ConfigError("users.coherence: user " + std::to_string(u.user_id) + " has no block length or velocity");
        }
        if (!(u.arrival_rate >= 0.0) || u.arrival_rate > packet_bits) {
            throw ConfigError("users.arrival_rate: rates must lie in [0, system.packet_bits]");
        }
    }
    policy.validate();
    if (policy.uses_genie() && num_users() > policy.subset_limit) {
        throw ConfigError("policy.kind: " + std::string(to_string(policy.kind)) + " exceeds the subset search limit of " +
                          std::to_string(policy.subset_limit) + " users (N=" + std::to_string(num_users()) +
                          "); use a QQS policy");
    }
    if (admission) {
        admission->validate();
    }
}

Override parse_override(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError(std::string(text) + ": override must look like section.key=value");
    }
    return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot read '" + path.string() + "'");
    }
    return from_stream(in, overrides);
}

RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides)
{
    std::istringstream in{std::string(text)};
    return from_stream(in, overrides);
}

void set_numeric(RunConfig& c, std::string_view key, double value)
{
    const std::string k(key);
    auto as_int = [&](const std::string& name) {
        if (value != std::floor(value)) {
            throw ConfigError(name + ": expected an integer");
        }
        return static_cast<int>(value);
    };
    if (k == "M" || k == "antennas" || k == "system.antennas") {
        c.antennas = as_int("system.antennas");
    } else if (k == "T" || k == "period" || k == "policy.period") {
        c.policy.reschedule_period = as_int("policy.period");
    } else if (k == "theta" || k == "policy.theta") {
        c.policy.theta = as_int("policy.theta");
    } else if (k == "K" || k == "groups" || k == "policy.groups") {
        c.policy.num_groups = as_int("policy.groups");
    } else if (k == "t_stc" || k == "policy.t_stc") {
        c.policy.t_stc = as_int("policy.t_stc");
    } else if (k == "k_random" || k == "policy.k_random") {
        c.policy.k_random = as_int("policy.k_random");
    } else if (k == "V" || k == "admission.V") {
        AdmissionControl ac = c.admission.value_or(AdmissionControl{});
        const bool tied = !c.admission || ac.grant == ac.threshold;
        ac.threshold = value;
        if (tied) {
            ac.grant = value;
        }
        c.admission = ac;
    } else if (k == "W_max" || k == "admission.W_max") {
        AdmissionControl ac = c.admission ? *c.admission : default_admission(c);
        ac.grant = value;
        c.admission = ac;
    } else if (k == "snr_db" || k == "system.snr_db") {
        c.snr_db = value;
    } else if (k == "horizon" || k == "system.horizon") {
        c.horizon_slots = as_int("system.horizon");
    } else if (k == "lambda" || k == "arrival_rate" || k == "users.arrival_rate") {
        for (auto& u : c.users) {
            u.arrival_rate = value;
        }
    } else if (k == "seed" || k == "system.seed") {
        c.seed = static_cast<std::uint64_t>(as_int("system.seed"));
    } else {
        throw ConfigError(k + ": unknown or non-numeric sweep axis");
    }
    c.validate();
}

AdmissionControl default_admission(const RunConfig& config)
{
    double lambda = 0.0;
    for (const auto& u : config.users) {
        lambda = std::max(lambda, u.arrival_rate);
    }
    if (!(lambda > 0.0)) {
        throw ConfigError("admission.V: no positive arrival rate to derive a default threshold from; set admission.V");
    }
    const auto coh = config.coherence();
    const int t_max = coh.empty() ? 1 : *std::max_element(coh.begin(), coh.end());
    const double v = 100.0 * lambda * t_max;
    return {v, v};
}

} // namespace dcasim
