#pragma once

#include "diracstep/bohm.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace diracstep {

/// Real-valued table. Every row must match the header arity and hold finite values.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void validate() const;
};

/// "%.12e", with negative zero written as zero.
[[nodiscard]] std::string format_real(double x);

[[nodiscard]] std::string render_csv(const Table& table);
/// JSON array of flat objects keyed by column name.
[[nodiscard]] std::string render_json(const Table& table);

/// Flat key/value record; numbers render with format_real.
using RecordValue = std::variant<double, std::string>;
using Record = std::vector<std::pair<std::string, RecordValue>>;

[[nodiscard]] std::string render_csv(const Record& record);
[[nodiscard]] std::string render_json(const Record& record);

struct SvgCanvas {
    double width = 800.0;
    double height = 600.0;
};

struct Polyline {
    std::vector<std::pair<double, double>> points;  // data (x, y)
};

struct SvgLayout {
    std::string x_label;
    std::string y_label;
    /// Data x coordinate of a vertical guide line; always kept inside the plotted range.
    std::optional<double> guide_x;
};

[[nodiscard]] std::string render_svg(std::span<const Polyline> lines, SvgCanvas canvas,
                                     const SvgLayout& layout);

/// Trajectories drawn with z horizontal, t vertical, and a guide at z = 0.
[[nodiscard]] std::string render_svg(std::span<const Trajectory> trajectories, SvgCanvas canvas);

/// Writers return the number of bytes written. Stream or file failures throw IoError.
std::size_t write_text(std::string_view text, std::ostream& os);
std::size_t write_text(std::string_view text, const std::filesystem::path& path);

std::size_t write_csv(const Table& table, std::ostream& os);
std::size_t write_csv(const Table& table, const std::filesystem::path& path);
std::size_t write_svg(std::span<const Trajectory> trajectories, SvgCanvas canvas, std::ostream& os);
std::size_t write_svg(std::span<const Trajectory> trajectories, SvgCanvas canvas,
                      const std::filesystem::path& path);

}  // namespace diracstep
