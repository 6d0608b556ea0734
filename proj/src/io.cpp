#include "spiketools/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spiketools/wfdb.hpp" // ParseError

namespace spiketools {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot open " + path.string() + " for writing");
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return in;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double parse_double(const std::string& s, const std::filesystem::path& path, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (trim(s.substr(pos)).empty()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + s + "'");
}

// Reads (t, value) rows after verifying the expected header.
std::vector<std::pair<double, double>> read_two_column(const std::filesystem::path& path,
                                                       const char* header) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != header) {
        throw ParseError(path.string() + ":1: expected header '" + header + "'");
    }
    std::vector<std::pair<double, double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto comma = body.find(',');
        if (comma == std::string::npos) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected two columns");
        }
        rows.emplace_back(parse_double(body.substr(0, comma), path, line_no),
                          parse_double(body.substr(comma + 1), path, line_no));
    }
    return rows;
}

} // namespace

void write_spike_csv(const std::filesystem::path& path, const SpikeTrain& train) {
    std::ofstream out = open_out(path);
    out << "t,amplitude\n";
    for (const Spike& s : train) {
        out << format_value(s.t) << "," << format_value(s.amplitude) << "\n";
    }
}

SpikeTrain read_spike_csv(const std::filesystem::path& path) {
    const auto rows = read_two_column(path, "t,amplitude");
    std::vector<Spike> spikes;
    spikes.reserve(rows.size());
    for (const auto& [t, a] : rows) {
        spikes.push_back({t, a});
    }
    try {
        return SpikeTrain::from_sorted(std::move(spikes));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_signal_csv(const std::filesystem::path& path, const UniformSignal& x) {
    std::ofstream out = open_out(path);
    out << "t,value\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << format_value(x.time_at(i)) << "," << format_value(x.samples[i]) << "\n";
    }
}

UniformSignal read_signal_csv(const std::filesystem::path& path) {
    const auto rows = read_two_column(path, "t,value");
    if (rows.size() < 2) {
        throw ParseError(path.string() + ": signal needs at least 2 samples");
    }
    UniformSignal x;
    x.t0 = rows[0].first;
    x.dt = rows[1].first - rows[0].first;
    if (!(x.dt > 0.0)) {
        throw ParseError(path.string() + ": times must be strictly increasing");
    }
    x.samples.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double expected = x.t0 + x.dt * static_cast<double>(i);
        if (std::abs(rows[i].first - expected) > 1e-3 * x.dt) {
            throw ParseError(path.string() + ":" + std::to_string(i + 2) +
                             ": non-uniform sample time");
        }
        x.samples.push_back(rows[i].second);
    }
    return x;
}

void write_detection_csv(const std::filesystem::path& path, const std::vector<Detection>& dets) {
    std::ofstream out = open_out(path);
    out << "t\n";
    for (const Detection& d : dets) {
        out << format_value(d.t) << "\n";
    }
}

CsvKind sniff_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) {
        return CsvKind::Unknown;
    }
    const std::string header = trim(line);
    if (header == "t,amplitude") {
        return CsvKind::Spikes;
    }
    if (header == "t,value") {
        return CsvKind::Signal;
    }
    return CsvKind::Unknown;
}

} // namespace spiketools
