#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "spiketools/types.hpp"

namespace spiketools {

/// Malformed input file; the message carries file/line context.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Signal format the reader does not decode (only format 212 is supported).
class UnsupportedFormatError : public ParseError {
public:
    using ParseError::ParseError;
};

struct SignalSpec {
    std::string file_name;
    int format = 0;
    double gain = 200.0; ///< adu per physical unit (default per WFDB convention)
    int baseline = 0;    ///< adu reading at 0 physical units
    int initial_value = 0;
    std::string description;
};

struct RecordHeader {
    std::string record_name;
    int n_channels = 0;
    double sample_rate = 0.0;
    std::int64_t n_samples = 0;
    std::vector<SignalSpec> signals;
};

/// One annotation event: time in seconds plus the annotation type code.
struct Annotation {
    double t = 0.0;
    int code = 0;

    friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// ECG record with physical-unit channels and ground-truth beat times.
struct AnnotatedRecord {
    RecordHeader header;
    std::vector<UniformSignal> channels; ///< physical units (mV)
    std::vector<Annotation> beats;       ///< beat annotations only
};

/// Parses a WFDB '.hea' header. Only format 212 signal lines are accepted.
RecordHeader read_wfdb_header(const std::string& text);

/// Packs 12-bit two's-complement values, two per 3 bytes (format 212).
std::vector<std::uint8_t> pack_wfdb_212(const std::vector<int>& adu);

/// Unpacks n_values 12-bit samples from a format-212 byte stream.
std::vector<int> unpack_wfdb_212(const std::vector<std::uint8_t>& bytes, std::size_t n_values);

/// Decodes a format-212 data file into per-channel physical-unit signals
/// (channel-interleaved samples, value = (adu - baseline) / gain).
std::vector<UniformSignal> read_wfdb_212(const std::vector<std::uint8_t>& bytes,
                                         const RecordHeader& header);

/// Decodes a MIT annotation ('.atr') stream into absolute-time annotations.
std::vector<Annotation> read_wfdb_annotations(const std::vector<std::uint8_t>& bytes,
                                              double sample_rate);

/// Encodes time-sorted annotations as a MIT annotation stream (SKIP words
/// for gaps beyond the 10-bit delta range, terminator included).
std::vector<std::uint8_t> write_wfdb_annotations(const std::vector<Annotation>& annotations,
                                                 double sample_rate);

/// Renders a header back to '.hea' text.
std::string write_wfdb_header(const RecordHeader& hdr);

/// Writes <dir>/<name>.hea/.dat/.atr for a record whose channels are in
/// physical units; samples are digitized per each channel's gain/baseline
/// and clipped to the 12-bit range.
void save_record(const std::filesystem::path& dir, const AnnotatedRecord& rec);

/// True for the MIT-BIH beat annotation codes {1..13, 16, 25, 34, 38}.
bool is_beat_code(int code);

/// Loads <dir>/<name>.hea/.dat/.atr; beats are filtered to beat codes.
/// A missing annotation file yields an empty beat list.
AnnotatedRecord load_record(const std::filesystem::path& dir, const std::string& name);

/// Record names (sorted) for every '.hea' file in the directory.
std::vector<std::string> list_records(const std::filesystem::path& dir);

} // namespace spiketools
