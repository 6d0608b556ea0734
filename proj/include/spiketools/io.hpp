#pragma once

#include <filesystem>
#include <vector>

#include "spiketools/qrs.hpp"
#include "spiketools/types.hpp"

namespace spiketools {

/// Spike-train CSV: header "t,amplitude", one spike per row, times with 12
/// significant digits, strictly increasing t.
void write_spike_csv(const std::filesystem::path& path, const SpikeTrain& train);
SpikeTrain read_spike_csv(const std::filesystem::path& path);

/// Signal CSV: header "t,value", one sample per row on a uniform grid.
void write_signal_csv(const std::filesystem::path& path, const UniformSignal& x);
UniformSignal read_signal_csv(const std::filesystem::path& path);

/// Detection CSV: header "t", one detection time per row.
void write_detection_csv(const std::filesystem::path& path, const std::vector<Detection>& dets);

enum class CsvKind { Spikes, Signal, Unknown };

/// Classifies a CSV file by its header line ("t,amplitude" vs "t,value").
CsvKind sniff_csv(const std::filesystem::path& path);

} // namespace spiketools
