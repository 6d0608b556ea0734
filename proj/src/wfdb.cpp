#include "spiketools/wfdb.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace spiketools {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> fields;
    std::string f;
    while (in >> f) {
        fields.push_back(f);
    }
    return fields;
}

long parse_int(const std::string& s, int line_no, const char* what) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr == s.data()) {
        throw ParseError("header line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
    }
    return value;
}

double parse_leading_double(const std::string& s, int line_no, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == 0) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("header line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
    }
}

} // namespace

RecordHeader read_wfdb_header(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    RecordHeader hdr;

    // record line: name n_signals [sample_rate [n_samples ...]]
    bool have_record_line = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line);
        if (fields.size() < 2) {
            throw ParseError("header line " + std::to_string(line_no) + ": record line needs at least name and signal count");
        }
        hdr.record_name = fields[0].substr(0, fields[0].find('/'));
        hdr.n_channels = static_cast<int>(parse_int(fields[1], line_no, "signal count"));
        if (hdr.n_channels < 1) {
            throw ParseError("header line " + std::to_string(line_no) + ": signal count must be >= 1");
        }
        hdr.sample_rate = fields.size() > 2
                              ? parse_leading_double(fields[2], line_no, "sample rate")
                              : 250.0; // WFDB default
        if (!(hdr.sample_rate > 0.0)) {
            throw ParseError("header line " + std::to_string(line_no) + ": sample rate must be > 0");
        }
        if (fields.size() > 3) {
            hdr.n_samples = parse_int(fields[3], line_no, "sample count");
        }
        have_record_line = true;
        break;
    }
    if (!have_record_line) {
        throw ParseError("header: missing record line");
    }

    // signal lines: file format gain[(baseline)][/units] [adc_res [adc_zero [init [..]]]]
    for (int sig = 0; sig < hdr.n_channels; ++sig) {
        if (!std::getline(in, line)) {
            throw ParseError("header: expected " + std::to_string(hdr.n_channels) +
                             " signal lines, got " + std::to_string(sig));
        }
        ++line_no;
        if (line.empty() || line[0] == '#') {
            --sig;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() < 2) {
            throw ParseError("header line " + std::to_string(line_no) + ": signal line needs file name and format");
        }
        SignalSpec spec;
        spec.file_name = fields[0];
        spec.format = static_cast<int>(parse_int(fields[1], line_no, "format"));
        if (spec.format != 212) {
            throw UnsupportedFormatError("header line " + std::to_string(line_no) + ": unsupported signal format " +
                                         std::to_string(spec.format) + " (only 212 is supported)");
        }
        bool baseline_set = false;
        if (fields.size() > 2) {
            const std::string& g = fields[2];
            spec.gain = parse_leading_double(g.substr(0, g.find_first_of("(/")), line_no, "gain");
            const auto open = g.find('(');
            if (open != std::string::npos) {
                const auto close = g.find(')', open);
                if (close == std::string::npos) {
                    throw ParseError("header line " + std::to_string(line_no) + ": unterminated baseline in '" + g + "'");
                }
                spec.baseline = static_cast<int>(parse_int(g.substr(open + 1, close - open - 1), line_no, "baseline"));
                baseline_set = true;
            }
        }
        if (spec.gain == 0.0) {
            spec.gain = 200.0; // WFDB: zero means unspecified
        }
        if (fields.size() > 4 && !baseline_set) {
            spec.baseline = static_cast<int>(parse_int(fields[4], line_no, "adc zero"));
        }
        if (fields.size() > 5) {
            spec.initial_value = static_cast<int>(parse_int(fields[5], line_no, "initial value"));
        }
        if (fields.size() > 8) {
            spec.description = fields[8];
            for (std::size_t i = 9; i < fields.size(); ++i) {
                spec.description += " " + fields[i];
            }
        }
        hdr.signals.push_back(std::move(spec));
    }
    return hdr;
}

std::vector<std::uint8_t> pack_wfdb_212(const std::vector<int>& adu) {
    for (int v : adu) {
        if (v < -2048 || v > 2047) {
            throw std::invalid_argument("pack_wfdb_212: value outside 12-bit range");
        }
    }
    std::vector<std::uint8_t> out;
    out.reserve((adu.size() + 1) / 2 * 3);
    for (std::size_t i = 0; i < adu.size(); i += 2) {
        const unsigned a = static_cast<unsigned>(adu[i]) & 0xFFFu;
        const unsigned b = (i + 1 < adu.size()) ? static_cast<unsigned>(adu[i + 1]) & 0xFFFu : 0u;
        out.push_back(static_cast<std::uint8_t>(a & 0xFFu));
        out.push_back(static_cast<std::uint8_t>(((a >> 8) & 0x0Fu) | ((b >> 4) & 0xF0u)));
        out.push_back(static_cast<std::uint8_t>(b & 0xFFu));
    }
    return out;
}

std::vector<int> unpack_wfdb_212(const std::vector<std::uint8_t>& bytes, std::size_t n_values) {
    const std::size_t needed = (n_values + 1) / 2 * 3;
    if (bytes.size() < needed) {
        throw ParseError("format 212: expected " + std::to_string(needed) + " bytes for " +
                         std::to_string(n_values) + " samples, got " + std::to_string(bytes.size()));
    }
    std::vector<int> out;
    out.reserve(n_values);
    for (std::size_t i = 0; out.size() < n_values; i += 3) {
        int s1 = ((bytes[i + 1] & 0x0F) << 8) | bytes[i];
        if (s1 & 0x800) s1 -= 0x1000;
        out.push_back(s1);
        if (out.size() < n_values) {
            int s2 = ((bytes[i + 1] & 0xF0) << 4) | bytes[i + 2];
            if (s2 & 0x800) s2 -= 0x1000;
            out.push_back(s2);
        }
    }
    return out;
}

std::vector<UniformSignal> read_wfdb_212(const std::vector<std::uint8_t>& bytes,
                                         const RecordHeader& header) {
    if (header.n_channels < 1) {
        throw std::invalid_argument("read_wfdb_212: header has no channels");
    }
    for (const SignalSpec& s : header.signals) {
        if (s.format != 212) {
            throw UnsupportedFormatError("read_wfdb_212: signal format " + std::to_string(s.format));
        }
    }
    const std::size_t n_ch = static_cast<std::size_t>(header.n_channels);
    std::size_t n_samples = static_cast<std::size_t>(header.n_samples);
    if (n_samples == 0) {
        n_samples = bytes.size() / 3 * 2 / n_ch; // header left the count open
    }
    const std::vector<int> flat = unpack_wfdb_212(bytes, n_samples * n_ch);

    std::vector<UniformSignal> channels(n_ch);
    for (std::size_t c = 0; c < n_ch; ++c) {
        const double gain = c < header.signals.size() ? header.signals[c].gain : 200.0;
        const double baseline = c < header.signals.size() ? header.signals[c].baseline : 0;
        channels[c].t0 = 0.0;
        channels[c].dt = 1.0 / header.sample_rate;
        channels[c].samples.resize(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) {
            channels[c].samples[i] = (flat[i * n_ch + c] - baseline) / gain;
        }
    }
    return channels;
}

std::vector<Annotation> read_wfdb_annotations(const std::vector<std::uint8_t>& bytes,
                                              double sample_rate) {
    if (!(sample_rate > 0.0)) {
        throw std::invalid_argument("read_wfdb_annotations: sample rate must be > 0");
    }
    std::vector<Annotation> out;
    std::int64_t sample = 0;
    std::size_t i = 0;
    bool terminated = false;
    while (i + 2 <= bytes.size()) {
        const unsigned word = bytes[i] | (static_cast<unsigned>(bytes[i + 1]) << 8);
        i += 2;
        if (word == 0) {
            terminated = true;
            break;
        }
        const unsigned code = word >> 10;
        const unsigned delta = word & 0x3FFu;
        switch (code) {
        case 59: { // SKIP: 4-byte interval, PDP-11 order (high word first)
            if (i + 4 > bytes.size()) {
                throw ParseError("annotation stream truncated inside SKIP");
            }
            const auto high = static_cast<std::int32_t>(
                static_cast<std::int16_t>(bytes[i] | (bytes[i + 1] << 8)));
            const std::uint16_t low = static_cast<std::uint16_t>(bytes[i + 2] | (bytes[i + 3] << 8));
            sample += (static_cast<std::int64_t>(high) << 16) | low;
            i += 4;
            break;
        }
        case 63: { // AUX: delta counts payload bytes, padded to even length
            const std::size_t skip = delta + (delta & 1u);
            if (i + skip > bytes.size()) {
                throw ParseError("annotation stream truncated inside AUX payload");
            }
            i += skip;
            break;
        }
        case 60: // NUM
        case 61: // SUBTYP
        case 62: // CHAN
            break;
        default:
            sample += delta;
            out.push_back({static_cast<double>(sample) / sample_rate, static_cast<int>(code)});
        }
    }
    if (!terminated) {
        throw ParseError("annotation stream ended without terminator word");
    }
    return out;
}

std::vector<std::uint8_t> write_wfdb_annotations(const std::vector<Annotation>& annotations,
                                                 double sample_rate) {
    if (!(sample_rate > 0.0)) {
        throw std::invalid_argument("write_wfdb_annotations: sample rate must be > 0");
    }
    std::vector<std::uint8_t> out;
    auto push_word = [&](unsigned word) {
        out.push_back(static_cast<std::uint8_t>(word & 0xFF));
        out.push_back(static_cast<std::uint8_t>((word >> 8) & 0xFF));
    };
    std::int64_t prev = 0;
    for (const Annotation& a : annotations) {
        if (a.code < 1 || a.code > 49) {
            throw std::invalid_argument("write_wfdb_annotations: code outside [1, 49]");
        }
        const std::int64_t sample = std::llround(a.t * sample_rate);
        const std::int64_t delta = sample - prev;
        if (delta < 0) {
            throw std::invalid_argument("write_wfdb_annotations: times must be non-decreasing");
        }
        prev = sample;
        if (delta > 0x3FF) {
            push_word(59u << 10);
            push_word(static_cast<unsigned>((delta >> 16) & 0xFFFF)); // PDP-11: high word first
            push_word(static_cast<unsigned>(delta & 0xFFFF));
            push_word(static_cast<unsigned>(a.code) << 10);
        } else {
            push_word((static_cast<unsigned>(a.code) << 10) | static_cast<unsigned>(delta));
        }
    }
    push_word(0);
    return out;
}

std::string write_wfdb_header(const RecordHeader& hdr) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s %d %g %lld\n", hdr.record_name.c_str(), hdr.n_channels,
                  hdr.sample_rate, static_cast<long long>(hdr.n_samples));
    std::string text = buf;
    for (const SignalSpec& s : hdr.signals) {
        std::snprintf(buf, sizeof(buf), "%s %d %g(%d) 12 %d %d 0 0 %s\n", s.file_name.c_str(),
                      s.format, s.gain, s.baseline, s.baseline, s.initial_value,
                      s.description.c_str());
        text += buf;
    }
    return text;
}

void save_record(const std::filesystem::path& dir, const AnnotatedRecord& rec) {
    if (rec.channels.empty() || rec.header.signals.size() != rec.channels.size()) {
        throw std::invalid_argument("save_record: one SignalSpec per channel required");
    }
    std::filesystem::create_directories(dir);
    const std::size_t n_samples = rec.channels[0].size();
    for (const UniformSignal& ch : rec.channels) {
        if (ch.size() != n_samples) {
            throw std::invalid_argument("save_record: channel lengths differ");
        }
    }
    std::vector<int> flat;
    flat.reserve(n_samples * rec.channels.size());
    for (std::size_t i = 0; i < n_samples; ++i) {
        for (std::size_t c = 0; c < rec.channels.size(); ++c) {
            const SignalSpec& spec = rec.header.signals[c];
            const long adu = std::lround(rec.channels[c].samples[i] * spec.gain) + spec.baseline;
            flat.push_back(static_cast<int>(std::clamp(adu, -2048L, 2047L)));
        }
    }
    const std::string name = rec.header.record_name;
    {
        RecordHeader hdr = rec.header;
        hdr.n_channels = static_cast<int>(rec.channels.size());
        hdr.n_samples = static_cast<std::int64_t>(n_samples);
        std::ofstream out(dir / (name + ".hea"));
        out << write_wfdb_header(hdr);
    }
    {
        const auto bytes = pack_wfdb_212(flat);
        std::ofstream out(dir / (name + ".dat"), std::ios::binary);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
    {
        const auto bytes = write_wfdb_annotations(rec.beats, rec.header.sample_rate);
        std::ofstream out(dir / (name + ".atr"), std::ios::binary);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
}

bool is_beat_code(int code) {
    if (code >= 1 && code <= 13) return true;
    return code == 16 || code == 25 || code == 34 || code == 38;
}

namespace {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

AnnotatedRecord load_record(const std::filesystem::path& dir, const std::string& name) {
    AnnotatedRecord rec;
    {
        std::ifstream in(dir / (name + ".hea"));
        if (!in) {
            throw ParseError("cannot open " + (dir / (name + ".hea")).string());
        }
        std::stringstream buf;
        buf << in.rdbuf();
        rec.header = read_wfdb_header(buf.str());
    }
    rec.channels = read_wfdb_212(read_file_bytes(dir / (name + ".dat")), rec.header);

    const auto atr = dir / (name + ".atr");
    if (std::filesystem::exists(atr)) {
        for (const Annotation& a : read_wfdb_annotations(read_file_bytes(atr), rec.header.sample_rate)) {
            if (is_beat_code(a.code)) {
                rec.beats.push_back(a);
            }
        }
    }
    return rec;
}

std::vector<std::string> list_records(const std::filesystem::path& dir) {
    std::vector<std::string> names;
    if (!std::filesystem::exists(dir)) {
        return names;
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".hea") {
            names.push_back(entry.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

} // namespace spiketools
