#include "skinbabble/svg.hpp"

#include "skinbabble/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace skinbabble {

namespace fs = std::filesystem;

namespace {

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

double parse_num(const std::string& s, double fallback = std::nan("")) {
    if (s.empty())
        return fallback;
    return std::stod(s);
}

std::string run_hash(const fs::path& result_dir) {
    std::ifstream in(result_dir / "meta.json");
    if (!in)
        return "unknown";
    nlohmann::json meta = nlohmann::json::parse(in, nullptr, false);
    if (meta.is_discarded() || !meta.contains("hash"))
        return "unknown";
    return meta["hash"].get<std::string>();
}

std::string bytes_hash(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

// Maps a data rectangle onto a pixel rectangle, v growing upward.
struct Mapper {
    double x0, x1, y0, y1;    // data
    double px, py, pw, ph;    // pixels

    double X(double x) const {
        const double s = x1 > x0 ? (x - x0) / (x1 - x0) : 0.5;
        return px + s * pw;
    }
    double Y(double y) const {
        const double s = y1 > y0 ? (y - y0) / (y1 - y0) : 0.5;
        return py + ph - s * ph;
    }
};

void expand(double& lo, double& hi, double pad_fraction) {
    if (!(hi > lo)) {
        lo -= 1e-3;
        hi += 1e-3;
    }
    const double pad = (hi - lo) * pad_fraction;
    lo -= pad;
    hi += pad;
}

struct Svg {
    std::ostringstream body;
    int width, height;

    Svg(int w, int h, const std::string& kind, const std::string& hash)
        : width(w), height(h) {
        body << "<!-- skinbabble plot kind=" << kind << " width=" << w
             << " height=" << h << " hash=" << hash << " -->\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
             << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
             << "\">\n"
             << "<rect width=\"" << w << "\" height=\"" << h
             << "\" fill=\"white\"/>\n";
    }

    void frame(const Mapper& m) {
        body << "<rect x=\"" << m.px << "\" y=\"" << m.py << "\" width=\"" << m.pw
             << "\" height=\"" << m.ph
             << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill,
                const std::string& stroke = "none", double sw = 1.0,
                double opacity = 1.0) {
        body << "<circle cx=\"" << short_num(cx) << "\" cy=\"" << short_num(cy)
             << "\" r=\"" << short_num(r) << "\" fill=\"" << fill << "\"";
        if (stroke != "none")
            body << " stroke=\"" << stroke << "\" stroke-width=\"" << sw << "\"";
        if (opacity < 1.0)
            body << " opacity=\"" << short_num(opacity) << "\"";
        body << "/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& stroke) {
        if (pts.empty())
            return;
        body << "<polyline fill=\"none\" stroke=\"" << stroke
             << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts)
            body << short_num(x) << ',' << short_num(y) << ' ';
        body << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, int size = 11,
              const std::string& anchor = "start", const std::string& color = "#222") {
        body << "<text x=\"" << short_num(x) << "\" y=\"" << short_num(y)
             << "\" font-family=\"sans-serif\" font-size=\"" << size
             << "\" text-anchor=\"" << anchor << "\" fill=\"" << color << "\">" << s
             << "</text>\n";
    }

    void axis_labels(const Mapper& m, const std::string& xlab, const std::string& ylab) {
        text(m.px, m.py + m.ph + 14, short_num(m.x0), 10);
        text(m.px + m.pw, m.py + m.ph + 14, short_num(m.x1), 10, "end");
        text(m.px - 4, m.py + m.ph, short_num(m.y0), 10, "end");
        text(m.px - 4, m.py + 10, short_num(m.y1), 10, "end");
        text(m.px + m.pw / 2, m.py + m.ph + 28, xlab, 11, "middle");
        text(m.px + m.pw / 2, m.py - 6, ylab, 11, "middle");
    }

    void save(const fs::path& file) {
        body << "</svg>\n";
        std::ofstream out(file, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write '" + file.string() + "'");
        out << body.str();
    }
};

const char* CLASS_COLORS[][2] = {
    {"blue", "#1f4fd0"}, {"magenta", "#d01fd0"}, {"red", "#d02a1f"}};

std::string class_color(const std::string& cls) {
    for (const auto& [name, hex] : CLASS_COLORS)
        if (cls == name)
            return hex;
    return "#999";
}

const char* PALETTE[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

} // namespace

void write_skin_svg(const fs::path& result_dir) {
    const CsvTable uv = read_csv(result_dir / "taxels_uv.csv");
    const CsvTable summary = read_csv(result_dir / "taxel_summary.csv");

    // Touched outcome positions across all trials, thinned to at most 2000.
    std::vector<std::pair<double, double>> touches;
    for (int t = 0;; ++t) {
        const fs::path f = result_dir / ("trial_" + std::to_string(t)) / "outcomes.csv";
        if (!fs::exists(f)) {
            if (t == 0)
                continue; // failed trial 0 should not hide the others
            if (!fs::exists(result_dir / ("trial_" + std::to_string(t))))
                break;
            continue;
        }
        const CsvTable out = read_csv(f);
        const int cu = out.column("x_u"), cv = out.column("x_v");
        if (cu < 0 || cv < 0)
            continue;
        for (const auto& row : out.rows)
            if (!row[cu].empty())
                touches.emplace_back(parse_num(row[cu]), parse_num(row[cv]));
    }
    std::size_t stride = touches.size() > 2000 ? (touches.size() + 1999) / 2000 : 1;

    double u0 = 0, u1 = 0, v0 = 0, v1 = 0;
    bool first = true;
    auto grow = [&](double u, double v) {
        if (first) {
            u0 = u1 = u;
            v0 = v1 = v;
            first = false;
        } else {
            u0 = std::min(u0, u);
            u1 = std::max(u1, u);
            v0 = std::min(v0, v);
            v1 = std::max(v1, v);
        }
    };
    const int tu = uv.column("u"), tv = uv.column("v");
    for (const auto& row : uv.rows)
        grow(parse_num(row[tu]), parse_num(row[tv]));
    for (std::size_t i = 0; i < touches.size(); i += stride)
        grow(touches[i].first, touches[i].second);
    expand(u0, u1, 0.08);
    expand(v0, v1, 0.08);

    // Isotropic: observation space is metric, so circles must stay circles.
    const int W = 640, H = 640;
    const double margin = 48;
    double scale = std::min((W - 2 * margin) / (u1 - u0), (H - 2 * margin) / (v1 - v0));
    Mapper m{u0, u1, v0, v1, 0, 0, (u1 - u0) * scale, (v1 - v0) * scale};
    m.px = (W - m.pw) / 2;
    m.py = (H - m.ph) / 2;

    Svg svg(W, H, "skin", run_hash(result_dir));
    svg.frame(m);
    for (std::size_t i = 0; i < touches.size(); i += stride)
        svg.circle(m.X(touches[i].first), m.Y(touches[i].second), 1.2, "#bbbbbb",
                   "none", 1.0, 0.6);
    for (const auto& row : uv.rows)
        svg.circle(m.X(parse_num(row[tu])), m.Y(parse_num(row[tv])), 2.0, "none",
                   "#cccccc", 0.8);
    const int si = summary.column("id"), su = summary.column("u"),
              sv = summary.column("v"), se = summary.column("mean_error"),
              sc = summary.column("class");
    (void)si;
    for (const auto& row : summary.rows) {
        const double x = m.X(parse_num(row[su])), y = m.Y(parse_num(row[sv]));
        const std::string color = class_color(row[sc]);
        svg.circle(x, y, 3.0, color);
        const double err = parse_num(row[se], 0.0);
        if (row[sc] == "magenta" && err > 0.0)
            svg.circle(x, y, err / 5.0 * scale, "none", color, 1.0);
    }
    svg.axis_labels(m, "u", "v");
    svg.text(m.px, m.py - 20, "skin reach map (blue exact, magenta error/5, red unreached)",
             12);
    svg.save(result_dir / "skin.svg");
}

void write_curves_svg(const fs::path& result_dir) {
    const CsvTable cp = read_csv(result_dir / "checkpoints_mean.csv");
    const int ci = cp.column("iteration"), cm = cp.column("mean_mre"),
              ct = cp.column("mean_touches");

    std::vector<std::pair<double, double>> mre, touches;
    for (const auto& row : cp.rows) {
        const double it = parse_num(row[ci]);
        if (!row[cm].empty())
            mre.emplace_back(it, parse_num(row[cm]));
        touches.emplace_back(it, parse_num(row[ct], 0.0));
    }

    const int W = 640, H = 480;
    Svg svg(W, H, "curves", run_hash(result_dir));
    auto panel = [&](const std::vector<std::pair<double, double>>& pts, double py,
                     double ph, const std::string& color, const std::string& ylab) {
        double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
        if (!pts.empty()) {
            x0 = x1 = pts.front().first;
            y0 = y1 = pts.front().second;
            for (const auto& [x, y] : pts) {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
        }
        x0 = 0;
        expand(y0, y1, 0.08);
        y0 = std::max(0.0, y0);
        Mapper m{x0, x1, y0, y1, 64, py, W - 96.0, ph};
        svg.frame(m);
        std::vector<std::pair<double, double>> px;
        px.reserve(pts.size());
        for (const auto& [x, y] : pts)
            px.emplace_back(m.X(x), m.Y(y));
        svg.polyline(px, color);
        for (const auto& [x, y] : px)
            svg.circle(x, y, 2.2, color);
        svg.axis_labels(m, "iteration", ylab);
    };
    panel(mre, 28, 160, "#d62728", "mean reaching error");
    panel(touches, 272, 160, "#1f77b4", "cumulative touches");
    svg.save(result_dir / "curves.svg");
}

void write_comparison_svg(const fs::path& matrix_dir) {
    const fs::path csv = matrix_dir / "comparison.csv";
    const CsvTable cp = read_csv(csv);
    const int cs = cp.column("strategy"), ci = cp.column("iteration"),
              cm = cp.column("mean_mre"), ct = cp.column("mean_touches");

    std::vector<std::string> order; // first-seen strategy order
    std::map<std::string, std::vector<std::pair<double, double>>> mre, touches;
    for (const auto& row : cp.rows) {
        const std::string& s = row[cs];
        if (std::find(order.begin(), order.end(), s) == order.end())
            order.push_back(s);
        const double it = parse_num(row[ci]);
        if (!row[cm].empty())
            mre[s].emplace_back(it, parse_num(row[cm]));
        if (!row[ct].empty())
            touches[s].emplace_back(it, parse_num(row[ct]));
    }

    const int W = 720, H = 520;
    Svg svg(W, H, "comparison", bytes_hash(csv));
    auto panel = [&](std::map<std::string, std::vector<std::pair<double, double>>>& series,
                     double py, double ph, const std::string& ylab) {
        double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
        bool first = true;
        for (const auto& [s, pts] : series)
            for (const auto& [x, y] : pts) {
                if (first) {
                    x1 = x;
                    y0 = y1 = y;
                    first = false;
                }
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
        expand(y0, y1, 0.08);
        y0 = std::max(0.0, y0);
        Mapper m{x0, x1, y0, y1, 64, py, W - 224.0, ph};
        svg.frame(m);
        int k = 0;
        for (const std::string& s : order) {
            const std::string color = PALETTE[k % 8];
            ++k;
            std::vector<std::pair<double, double>> px;
            for (const auto& [x, y] : series[s])
                px.emplace_back(m.X(x), m.Y(y));
            svg.polyline(px, color);
            for (const auto& [x, y] : px)
                svg.circle(x, y, 1.8, color);
            svg.text(m.px + m.pw + 12, py + 12 + 14 * (k - 1), s, 11, "start", color);
        }
        svg.axis_labels(m, "iteration", ylab);
    };
    panel(mre, 28, 190, "mean reaching error");
    panel(touches, 300, 190, "mean cumulative touches");
    svg.save(matrix_dir / "comparison.svg");
}

} // namespace skinbabble
