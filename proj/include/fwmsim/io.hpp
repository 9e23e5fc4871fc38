#ifndef FWMSIM_IO_HPP
#define FWMSIM_IO_HPP

#include <string>
#include <vector>

#include "fwmsim/storage.hpp"

namespace fwmsim {

// "%.17g" -- full round-trip precision, the golden-file contract.
std::string format_g17(double v);

// Every CSV starts with '#'-prefixed metadata lines (the resolved
// parameter set), then a column-name line, then LF-terminated rows.
void write_spectrum_csv(const std::string& path, const SpectralResponse& spec,
                        const std::string& meta);
void write_pulse_csv(const std::string& path, const PulseEnvelope& pulse,
                     const std::string& meta);
void write_storage_csv(const std::string& path, const StorageRun& run,
                       const std::string& meta);
void write_sweep_csv(const std::string& path, const SweepResult& result,
                     const std::string& meta);
void write_text_file(const std::string& path, const std::string& content);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

} // namespace fwmsim

#endif
