#include "mslab/report.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mslab/errors.hpp"

namespace mslab {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void atomic_write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) throw ValidationError("cannot open for writing: " + tmp);
    std::size_t off = 0;
    while (off < content.size()) {
        ssize_t n = ::write(fd, content.data() + off, content.size() - off);
        if (n < 0) {
            ::close(fd);
            throw ValidationError("write failed: " + tmp);
        }
        off += std::size_t(n);
    }
    ::fsync(fd);
    ::close(fd);
    if (::rename(tmp.c_str(), path.c_str()) != 0)
        throw ValidationError("rename failed: " + tmp + " -> " + path);
}

void emit_scan_csv(const std::vector<ScanRow>& rows, const std::string& path) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].x < rows[i - 1].x) throw ValidationError("emit_scan_csv: rows not ascending");
    std::string out = "x,sum,main_term,error_term,ratio\n";
    for (const auto& r : rows) {
        out += std::to_string(r.x);
        out += ',';
        out += to_string(r.sum);
        out += ',';
        out += format_double(r.main);
        out += ',';
        out += format_double(r.e);
        out += ',';
        out += format_double(r.ratio);
        out += '\n';
    }
    atomic_write_file(path, out);
}

std::vector<ScanRow> read_scan_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty CSV: " + path);
    if (line == "x,sum,main_term,error_term,ratio\r") line.pop_back();
    if (line != "x,sum,main_term,error_term,ratio")
        throw ValidationError("unexpected CSV header in " + path);
    std::vector<ScanRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            std::size_t c = line.find(',', start);
            if (c == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, c - start));
            start = c + 1;
        }
        if (fields.size() != 5)
            throw ValidationError("CSV line " + std::to_string(lineno) + ": expected 5 fields");
        ScanRow r;
        r.x = std::stoull(fields[0]);
        r.sum = parse_int128(fields[1]);
        r.main = std::strtod(fields[2].c_str(), nullptr);
        r.e = std::strtod(fields[3].c_str(), nullptr);
        r.ratio = std::strtod(fields[4].c_str(), nullptr);
        rows.push_back(r);
    }
    return rows;
}

namespace {

double field_value(const ScanRow& r, const std::string& field) {
    if (field == "sum") return to_double(r.sum);
    if (field == "main_term") return r.main;
    if (field == "error_term") return r.e;
    if (field == "ratio") return r.ratio;
    throw ValidationError("emit_svg_plot: unknown y-field '" + field + "'");
}

std::string fixed2(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

}  // namespace

void emit_svg_plot(const std::vector<ScanRow>& rows, const std::string& y_field,
                   const std::string& path) {
    if (rows.size() < 2) throw ValidationError("emit_svg_plot: need at least 2 rows");
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        if (r.x == 0) throw ValidationError("emit_svg_plot: x must be positive for a log axis");
        xs.push_back(std::log10(double(r.x)));
        ys.push_back(field_value(r, y_field));
    }
    double x_lo = *std::min_element(xs.begin(), xs.end());
    double x_hi = *std::max_element(xs.begin(), xs.end());
    double y_lo = *std::min_element(ys.begin(), ys.end());
    double y_hi = *std::max_element(ys.begin(), ys.end());
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) {
        y_hi += 0.5;
        y_lo -= 0.5;
    }
    double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    const double W = 900, H = 540;
    const double ml = 80, mr = 24, mt = 24, mb = 56;
    auto px = [&](double lx) { return ml + (lx - x_lo) / (x_hi - x_lo) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y_lo) / (y_hi - y_lo) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (W - ml - mr)
        << "\" height=\"" << (H - mt - mb)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // decade ticks on the log-x axis
    for (int d = int(std::ceil(x_lo)); d <= int(std::floor(x_hi)); ++d) {
        double x = px(double(d));
        svg << "<line x1=\"" << fixed2(x) << "\" y1=\"" << fixed2(H - mb) << "\" x2=\"" << fixed2(x)
            << "\" y2=\"" << fixed2(H - mb + 6) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fixed2(x) << "\" y=\"" << fixed2(H - mb + 22)
            << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">1e" << d
            << "</text>\n";
    }
    // five linear y ticks
    for (int i = 0; i <= 4; ++i) {
        double yv = y_lo + (y_hi - y_lo) * i / 4;
        double y = py(yv);
        svg << "<line x1=\"" << fixed2(ml - 6) << "\" y1=\"" << fixed2(y) << "\" x2=\"" << fixed2(ml)
            << "\" y2=\"" << fixed2(y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fixed2(ml - 10) << "\" y=\"" << fixed2(y + 4)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">"
            << format_double(yv) << "</text>\n";
    }

    svg << "<text x=\"" << fixed2(ml + (W - ml - mr) / 2) << "\" y=\"" << fixed2(H - 12)
        << "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">x (log scale)"
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << fixed2(mt + (H - mt - mb) / 2)
        << "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 "
        << fixed2(mt + (H - mt - mb) / 2) << ")\">" << y_field << "</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) svg << ' ';
        svg << fixed2(px(xs[i])) << ',' << fixed2(py(ys[i]));
    }
    svg << "\"/>\n</svg>\n";
    atomic_write_file(path, svg.str());
}

}  // namespace mslab
