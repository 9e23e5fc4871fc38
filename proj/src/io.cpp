#include "fwmsim/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fwmsim {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void open_or_throw(std::ofstream& out, const std::string& path) {
    out.open(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
}

void write_meta(std::ofstream& out, const std::string& meta) {
    std::stringstream ss(meta);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        out << "# " << line << "\n";
    }
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace

void write_spectrum_csv(const std::string& path, const SpectralResponse& spec,
                        const std::string& meta) {
    std::ofstream out;
    open_or_throw(out, path);
    write_meta(out, meta);
    out << "delta2_mhz,re,im,abs\n";
    for (size_t i = 0; i < spec.freq_mhz.size(); ++i) {
        const Complex a = spec.amplitude[i];
        out << format_g17(spec.freq_mhz[i]) << ',' << format_g17(a.real()) << ','
            << format_g17(a.imag()) << ',' << format_g17(std::abs(a)) << "\n";
    }
    finish(out, path);
}

void write_pulse_csv(const std::string& path, const PulseEnvelope& pulse,
                     const std::string& meta) {
    std::ofstream out;
    open_or_throw(out, path);
    write_meta(out, meta);
    out << "t_us,re,im,abs\n";
    for (int i = 0; i < pulse.grid.n; ++i) {
        const Complex a = pulse.amplitude[static_cast<size_t>(i)];
        out << format_g17(pulse.grid.time(i)) << ',' << format_g17(a.real()) << ','
            << format_g17(a.imag()) << ',' << format_g17(std::abs(a)) << "\n";
    }
    finish(out, path);
}

void write_storage_csv(const std::string& path, const StorageRun& run,
                       const std::string& meta) {
    std::ofstream out;
    open_or_throw(out, path);
    write_meta(out, meta);
    out << "t_us,re,im,abs,channel\n";
    auto block = [&](const PulseEnvelope& tr, const char* name) {
        for (int i = 0; i < tr.grid.n; ++i) {
            const Complex a = tr.amplitude[static_cast<size_t>(i)];
            out << format_g17(tr.grid.time(i)) << ',' << format_g17(a.real()) << ','
                << format_g17(a.imag()) << ',' << format_g17(std::abs(a)) << ',' << name << "\n";
        }
    };
    block(run.leak, "leak");
    block(run.retrieval, "retrieval");
    block(run.reference, "reference");
    finish(out, path);
}

void write_sweep_csv(const std::string& path, const SweepResult& result,
                     const std::string& meta) {
    std::ofstream out;
    open_or_throw(out, path);
    write_meta(out, meta);
    out << "param,peak_rising,peak_falling,contrast,energy_fraction\n";
    for (const auto& r : result.rows) {
        out << format_g17(r.param) << ',' << format_g17(r.peak_rising) << ','
            << format_g17(r.peak_falling) << ',' << format_g17(r.contrast) << ','
            << format_g17(r.energy_fraction) << "\n";
    }
    finish(out, path);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out;
    open_or_throw(out, path);
    out << content;
    finish(out, path);
}

namespace {

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b"};

} // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
    const double width = 860, height = 520;
    const double ml = 70, mr = 20, mt = 40, mb = 55;

    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool first = true;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (first) {
                x_min = x_max = s.x[i];
                y_min = y_max = s.y[i];
                first = false;
            }
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    }
    if (x_max <= x_min) x_max = x_min + 1;
    if (y_max <= y_min) y_max = y_min + 1;
    const double px = (width - ml - mr) / (x_max - x_min);
    const double py = (height - mt - mb) / (y_max - y_min);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
          "font-family=\"sans-serif\">" << title << "</text>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
       << "\" height=\"" << height - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << height / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 18 "
       << height / 2 << ")\">" << y_label << "</text>\n";
    os << "<text x=\"" << ml << "\" y=\"" << height - mb + 18
       << "\" font-size=\"11\" font-family=\"sans-serif\">" << svg_num(x_min) << "</text>\n";
    os << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 18
       << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << svg_num(x_max)
       << "</text>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << height - mb
       << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << svg_num(y_min)
       << "</text>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 10
       << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << svg_num(y_max)
       << "</text>\n";

    for (size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = palette[k % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            const double sx = ml + (s.x[i] - x_min) * px;
            const double sy = height - mb - (s.y[i] - y_min) * py;
            os << svg_num(sx) << ',' << svg_num(sy) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 + 15 * static_cast<double>(k)
           << "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << color << "\">" << s.label
           << "</text>\n";
    }
    os << "</svg>\n";
    write_text_file(path, os.str());
}

} // namespace fwmsim
