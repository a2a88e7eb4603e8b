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

#include "dcasim/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dcasim {

namespace {

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::vector<std::string> lines_of(std::string_view text)
{
    std::vector<std::string> out;
    for (auto& line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            out.push_back(std::move(line));
        }
    }
    return out;
}

double parse_double(const std::string& s, std::string_view column)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("csv: bad number '" + s + "' in column " + std::string(column));
    }
    return v;
}

template <typename T, typename Fmt>
std::string join(const std::vector<T>& values, Fmt&& fmt)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ';';
        }
        out += fmt(values[i]);
    }
    return out;
}

std::vector<double> parse_list(const std::string& field, std::string_view column)
{
    std::vector<double> out;
    if (field.empty()) {
        return out;
    }
    for (const auto& item : split(field, ';')) {
        out.push_back(parse_double(item, column));
    }
    return out;
}

Mode parse_mode(const std::string& s)
{
    if (s == "SM") return Mode::sm;
    if (s == "STC") return Mode::stc;
    if (s == "IDLE") return Mode::idle;
    throw std::runtime_error("csv: bad mode '" + s + "' in column mode");
}

} // namespace

std::string format_number(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string frames_csv(std::span<const FrameRecord> frames)
{
    std::string out(kFramesHeader);
    out += '\n';
    for (const auto& f : frames) {
        out += std::to_string(f.frame_index) + ',' + std::to_string(f.t_start) + ',' + std::to_string(f.frame_len) +
               ',' + std::string(to_string(f.mode)) + ',' +
               join(f.users, [](int u) { return std::to_string(u + 1); }) + ',' +
               join(f.allocated_bits, format_number) + ',' + join(f.served_bits, format_number) + '\n';
    }
    return out;
}

std::string queues_csv(const SlotTrace& trace)
{
    std::string out = "slot";
    for (int n = 1; n <= trace.num_users; ++n) {
        out += ",q_" + std::to_string(n);
    }
    for (int n = 1; n <= trace.num_users; ++n) {
        out += ",hol_" + std::to_string(n);
    }
    out += '\n';
    const Slot slots = trace.size();
    for (Slot s = 0; s < slots; ++s) {
        out += std::to_string(s);
        const auto base = static_cast<std::size_t>(s * trace.num_users);
        for (int n = 0; n < trace.num_users; ++n) {
            out += ',' + format_number(trace.backlog[base + static_cast<std::size_t>(n)]);
        }
        for (int n = 0; n < trace.num_users; ++n) {
            out += ',' + format_number(trace.hol[base + static_cast<std::size_t>(n)]);
        }
        out += '\n';
    }
    return out;
}

std::string summary_text(const RunConfig& config, const RunSummary& s)
{
    std::ostringstream out;
    out << "policy=" << to_string(config.policy.kind) << '\n'
        << "users=" << config.num_users() << '\n'
        << "antennas=" << config.antennas << '\n'
        << "seed=" << config.seed << '\n'
        << "total_slots=" << s.total_slots << '\n'
        << "frames=" << s.frames << '\n'
        << "degenerate_frames=" << s.degenerate_frames << '\n'
        << "sum_rate=" << format_number(s.sum_rate) << '\n';
    if (s.admitted_rate) {
        out << "admitted_rate=" << format_number(*s.admitted_rate) << '\n';
    }
    out << "stability_slope=" << format_number(s.stability_slope) << '\n'
        << "stable=" << (s.stable ? "true" : "false") << '\n'
        << "mean_delay=" << format_number(s.mean_delay()) << '\n';
    auto per_user = [&](std::string_view name, const std::vector<double>& v) {
        for (std::size_t n = 0; n < v.size(); ++n) {
            out << name << '_' << (n + 1) << '=' << format_number(v[n]) << '\n';
        }
    };
    per_user("avg_delay", s.avg_delay);
    per_user("mean_queue", s.mean_queue);
    per_user("arrived_bits", s.arrived_bits);
    per_user("served_bits", s.served_bits);
    per_user("final_backlog", s.final_backlog);
    return out.str();
}

std::string sweep_csv(std::string_view axis, std::span<const SweepRow> rows)
{
    std::string out = std::string(axis) + ",total_slots,sum_rate,admitted_rate,stability_slope,stable,mean_delay\n";
    for (const auto& r : rows) {
        const auto& s = r.summary;
        out += format_number(r.value) + ',' + std::to_string(s.total_slots) + ',' + format_number(s.sum_rate) + ',' +
               (s.admitted_rate ? format_number(*s.admitted_rate) : std::string()) + ',' +
               format_number(s.stability_slope) + ',' + (s.stable ? "true" : "false") + ',' +
               format_number(s.mean_delay()) + '\n';
    }
    return out;
}

std::vector<FrameRecord> parse_frames_csv(std::string_view text)
{
    const auto lines = lines_of(text);
    if (lines.empty()) {
        throw std::runtime_error("frames.csv: empty file");
    }
    const auto header = split(lines.front(), ',');
    const auto expected = split(kFramesHeader, ',');
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i >= header.size() || header[i] != expected[i]) {
            throw std::runtime_error("frames.csv: missing column " + expected[i]);
        }
    }
    std::vector<FrameRecord> frames;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto f = split(lines[l], ',');
        if (f.size() != expected.size()) {
            throw std::runtime_error("frames.csv: wrong field count on line " + std::to_string(l + 1));
        }
        FrameRecord r;
        r.frame_index = static_cast<std::int64_t>(parse_double(f[0], "frame_index"));
        r.t_start = static_cast<Slot>(parse_double(f[1], "t_start"));
        r.frame_len = static_cast<int>(parse_double(f[2], "frame_len"));
        r.mode = parse_mode(f[3]);
        for (double u : parse_list(f[4], "scheduled_users")) {
            r.users.push_back(static_cast<int>(u) - 1);
        }
        r.allocated_bits = parse_list(f[5], "alloc_bits");
        r.served_bits = parse_list(f[6], "served_bits");
        frames.push_back(std::move(r));
    }
    return frames;
}

SlotTrace parse_queues_csv(std::string_view text)
{
    const auto lines = lines_of(text);
    if (lines.empty()) {
        throw std::runtime_error("queues.csv: empty file");
    }
    const auto header = split(lines.front(), ',');
    if (header.empty() || header[0] != "slot" || header.size() % 2 != 1) {
        throw std::runtime_error("queues.csv: missing column slot");
    }
    SlotTrace trace;
    trace.num_users = static_cast<int>((header.size() - 1) / 2);
    for (int n = 1; n <= trace.num_users; ++n) {
        const std::string q = "q_" + std::to_string(n);
        const std::string h = "hol_" + std::to_string(n);
        if (header[static_cast<std::size_t>(n)] != q) {
            throw std::runtime_error("queues.csv: missing column " + q);
        }
        if (header[static_cast<std::size_t>(trace.num_users + n)] != h) {
            throw std::runtime_error("queues.csv: missing column " + h);
        }
    }
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto f = split(lines[l], ',');
        if (f.size() != header.size()) {
            throw std::runtime_error("queues.csv: wrong field count on line " + std::to_string(l + 1));
        }
        for (int n = 1; n <= trace.num_users; ++n) {
            trace.backlog.push_back(parse_double(f[static_cast<std::size_t>(n)], header[static_cast<std::size_t>(n)]));
        }
        for (int n = 1; n <= trace.num_users; ++n) {
            const auto i = static_cast<std::size_t>(trace.num_users + n);
            trace.hol.push_back(parse_double(f[i], header[i]));
        }
    }
    return trace;
}

std::map<std::string, std::string> parse_summary(std::string_view text)
{
    std::map<std::string, std::string> out;
    for (const auto& line : lines_of(text)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("summary: malformed line '" + line + "'");
        }
        out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

void write_run_outputs(const std::filesystem::path& dir, const RunConfig& config, const RunResult& result)
{
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "frames.csv", frames_csv(result.frames));
    write_file_atomic(dir / "queues.csv", queues_csv(result.trace));
    write_file_atomic(dir / "summary.txt", summary_text(config, result.summary));
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace dcasim
