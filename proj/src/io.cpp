#include "diracstep/io.hpp"

#include "diracstep/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace diracstep {

void Table::validate() const {
    if (columns.empty()) {
        throw DomainError("table needs at least one column");
    }
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw DomainError("table row arity does not match header");
        }
        for (const double x : row) {
            if (!std::isfinite(x)) {
                throw NumericError("table contains a non-finite value");
            }
        }
    }
}

std::string format_real(double x) {
    if (x == 0.0) {
        x = 0.0;
    }
    std::array<char, 40> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.12e", x);
    return {buf.data(), static_cast<std::size_t>(n)};
}

namespace {

std::string json_string(const std::string& s) {
    return nlohmann::json(s).dump();
}

template <typename Items, typename Key, typename Value>
std::string json_object(const Items& items, Key key, Value value) {
    std::string out = "{";
    bool first = true;
    for (const auto& item : items) {
        if (!first) {
            out += ",";
        }
        first = false;
        out += json_string(key(item));
        out += ":";
        out += value(item);
    }
    out += "}";
    return out;
}

std::string render_value(const RecordValue& v) {
    if (const auto* d = std::get_if<double>(&v)) {
        return format_real(*d);
    }
    return std::get<std::string>(v);
}

}  // namespace

std::string render_csv(const Table& table) {
    table.validate();
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ",";
            }
            out += format_real(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::string render_json(const Table& table) {
    table.validate();
    std::string out = "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (r) {
            out += ",\n ";
        }
        std::vector<std::size_t> idx(table.columns.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            idx[i] = i;
        }
        const auto& row = table.rows[r];
        out += json_object(
            idx, [&](std::size_t i) { return table.columns[i]; },
            [&](std::size_t i) { return format_real(row[i]); });
    }
    out += "]\n";
    return out;
}

std::string render_csv(const Record& record) {
    std::string header;
    std::string values;
    for (std::size_t i = 0; i < record.size(); ++i) {
        header += (i ? "," : "") + record[i].first;
        values += (i ? "," : "") + render_value(record[i].second);
    }
    return header + "\n" + values + "\n";
}

std::string render_json(const Record& record) {
    return json_object(
               record, [](const auto& kv) { return kv.first; },
               [](const auto& kv) {
                   if (const auto* s = std::get_if<std::string>(&kv.second)) {
                       return json_string(*s);
                   }
                   return render_value(kv.second);
               }) +
           "\n";
}

namespace {

constexpr std::array<const char*, 6> palette = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#17becf"};

std::string coord(double x) {
    std::array<char, 32> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.3f", x);
    return {buf.data(), static_cast<std::size_t>(n)};
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    void widen_if_flat() {
        if (hi - lo <= 0.0) {
            const double pad = std::max(0.5, 0.5 * std::abs(lo));
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

std::string render_svg(std::span<const Polyline> lines, SvgCanvas canvas,
                       const SvgLayout& layout) {
    if (lines.empty()) {
        throw DomainError("svg needs at least one polyline");
    }
    if (!(canvas.width > 0.0) || !(canvas.height > 0.0)) {
        throw DomainError("svg canvas must be positive");
    }
    Range xr;
    Range yr;
    for (const auto& line : lines) {
        if (line.points.empty()) {
            throw DomainError("svg polyline has no samples");
        }
        for (const auto& [x, y] : line.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) {
                throw NumericError("svg point is not finite");
            }
            xr.include(x);
            yr.include(y);
        }
    }
    if (layout.guide_x) {
        xr.include(*layout.guide_x);
    }
    xr.widen_if_flat();
    yr.widen_if_flat();

    const double mx = 0.05 * canvas.width;
    const double my = 0.05 * canvas.height;
    const double left = mx;
    const double right = canvas.width - mx;
    const double top = my;
    const double bottom = canvas.height - my;
    const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * (right - left); };
    const auto py = [&](double y) { return bottom - (y - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           coord(canvas.width) + "\" height=\"" + coord(canvas.height) + "\" viewBox=\"0 0 " +
           coord(canvas.width) + " " + coord(canvas.height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + coord(canvas.width) + "\" height=\"" +
           coord(canvas.height) + "\" fill=\"white\"/>\n";
    out += "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(bottom) + "\" x2=\"" + coord(right) +
           "\" y2=\"" + coord(bottom) + "\"/>\n";
    out += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(bottom) + "\" x2=\"" + coord(left) +
           "\" y2=\"" + coord(top) + "\"/>\n";
    out += "</g>\n";
    if (layout.guide_x) {
        const double gx = px(*layout.guide_x);
        out += "<line id=\"guide\" x1=\"" + coord(gx) + "\" y1=\"" + coord(bottom) + "\" x2=\"" +
               coord(gx) + "\" y2=\"" + coord(top) +
               "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    }
    out += "<text x=\"" + coord(right) + "\" y=\"" + coord(canvas.height - 0.2 * my) +
           "\" font-size=\"12\" text-anchor=\"end\">" + xml_escape(layout.x_label) + "</text>\n";
    out += "<text x=\"" + coord(0.2 * mx) + "\" y=\"" + coord(top) +
           "\" font-size=\"12\">" + xml_escape(layout.y_label) + "</text>\n";
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += "<polyline fill=\"none\" stroke=\"" + std::string(palette[i % palette.size()]) +
               "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& [x, y] : lines[i].points) {
            out += (first ? "" : " ") + coord(px(x)) + "," + coord(py(y));
            first = false;
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string render_svg(std::span<const Trajectory> trajectories, SvgCanvas canvas) {
    std::vector<Polyline> lines;
    lines.reserve(trajectories.size());
    for (const auto& tr : trajectories) {
        Polyline line;
        line.points.reserve(tr.samples.size());
        for (const auto& s : tr.samples) {
            line.points.emplace_back(s.z, s.t);
        }
        lines.push_back(std::move(line));
    }
    return render_svg(lines, canvas, SvgLayout{"z", "t", 0.0});
}

std::size_t write_text(std::string_view text, std::ostream& os) {
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    os.flush();
    if (!os) {
        throw IoError("failed to write output stream");
    }
    return text.size();
}

std::size_t write_text(std::string_view text, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return write_text(text, file);
}

std::size_t write_csv(const Table& table, std::ostream& os) {
    return write_text(render_csv(table), os);
}

std::size_t write_csv(const Table& table, const std::filesystem::path& path) {
    return write_text(render_csv(table), path);
}

std::size_t write_svg(std::span<const Trajectory> trajectories, SvgCanvas canvas,
                      std::ostream& os) {
    return write_text(render_svg(trajectories, canvas), os);
}

std::size_t write_svg(std::span<const Trajectory> trajectories, SvgCanvas canvas,
                      const std::filesystem::path& path) {
    return write_text(render_svg(trajectories, canvas), path);
}

}  // namespace diracstep
