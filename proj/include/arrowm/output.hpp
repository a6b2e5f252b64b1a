#pragma once

#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arrowm {

/// 17 significant digits, "%.17g".
std::string format_double(double v);

// Column-oriented CSV writer; the file is written once by `write`.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    void write(const std::filesystem::path& path) const;

    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
    std::vector<double> numeric_column(const std::string& name) const;
};

CsvData read_csv(const std::filesystem::path& path);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal self-contained SVG line plot.
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    std::span<const PlotSeries> series);

// Flat `key = value` summary, one entry per line, insertion order preserved.
class Summary {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::size_t value);
    void set_bool(const std::string& key, bool value);

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
        return entries_;
    }
    const std::string* find(const std::string& key) const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

Summary read_summary(const std::filesystem::path& path);

}  // namespace arrowm
