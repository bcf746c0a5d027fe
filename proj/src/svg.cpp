#include "eikonal/svg.hpp"

#include <cstdio>
#include <sstream>

namespace eik {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

/** Maps (edge, offset, t) to canvas coordinates. */
class Canvas {
public:
    Canvas(const MetricGraph& g, const Rational& horizon) : g_(g) {
        double total = 0;
        for (size_t e = 0; e < g.edge_count(); ++e) total += g.edge(e).length.to_double();
        scale_x_ = kPlotWidth / std::max(total, 1e-9);
        double x = kMargin;
        for (size_t e = 0; e < g.edge_count(); ++e) {
            left_.push_back(x);
            x += g.edge(e).length.to_double() * scale_x_ + kGap;
        }
        width_ = x - kGap + kMargin;
        horizon_ = std::max(horizon.to_double(), 1e-9);
    }
    double x(size_t edge, const Rational& off) const { return left_[edge] + off.to_double() * scale_x_; }
    double y(const Rational& t) const { return kMargin + kPlotHeight * (1.0 - t.to_double() / horizon_); }
    double width() const { return width_; }
    double height() const { return kPlotHeight + 2 * kMargin + 20; }

    void frame(std::ostringstream& os, const Rational& horizon) const {
        for (size_t e = 0; e < g_.edge_count(); ++e) {
            const Edge& ed = g_.edge(e);
            double x0 = x(e, Rational(0)), x1 = x(e, ed.length);
            os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y(horizon)) << "\" width=\"" << num(x1 - x0)
               << "\" height=\"" << num(y(Rational(0)) - y(horizon))
               << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
            os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(y(Rational(0)) + 16)
               << "\" font-size=\"11\" text-anchor=\"middle\">" << escape(ed.id) << " ("
               << escape(g_.vertex(ed.from).id) << " &#8594; " << escape(g_.vertex(ed.to).id) << ", "
               << ed.length << ")</text>\n";
        }
        os << "<text x=\"4\" y=\"" << num(y(horizon) + 4) << "\" font-size=\"10\">t=" << horizon << "</text>\n";
        os << "<text x=\"4\" y=\"" << num(y(Rational(0))) << "\" font-size=\"10\">t=0</text>\n";
    }

private:
    static constexpr double kPlotWidth = 760, kPlotHeight = 360, kMargin = 40, kGap = 24;
    const MetricGraph& g_;
    std::vector<double> left_;
    double scale_x_ = 1, width_ = 0, horizon_ = 1;
};

std::string open_svg(const Canvas& c) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(c.width()) + "\" height=\"" +
           num(c.height()) + "\" viewBox=\"0 0 " + num(c.width()) + " " + num(c.height()) +
           "\" font-family=\"monospace\">\n";
}

}  // namespace

std::string render_hydra_svg(const MetricGraph& g, const Hydra& h) {
    Canvas c(g, h.horizon);
    std::ostringstream os;
    os << open_svg(c);
    os << "<title>hydra from " << escape(g.vertex(h.source).id) << ", T=" << h.horizon << ", " << to_string(h.kind)
       << "</title>\n";
    c.frame(os, h.horizon);
    for (const auto& s : h.segments) {
        os << "<line x1=\"" << num(c.x(s.edge, s.off0)) << "\" y1=\"" << num(c.y(s.t0)) << "\" x2=\""
           << num(c.x(s.edge, s.off1)) << "\" y2=\"" << num(c.y(s.t1))
           << "\" stroke=\"#000000\" stroke-width=\"1.2\"/>\n";
    }
    for (const auto& s : h.segments) {
        Rational mo = (s.off0 + s.off1) / Rational(2), mt = (s.t0 + s.t1) / Rational(2);
        std::string label = s.value.str();
        if (s.norm_sq != Rational(1)) label += "/sqrt(" + s.norm_sq.str() + ")";
        os << "<text x=\"" << num(c.x(s.edge, mo) + 3) << "\" y=\"" << num(c.y(mt) - 3)
           << "\" font-size=\"10\" fill=\"#b00000\">" << escape(label) << "</text>\n";
    }
    for (const auto& p : h.corners)
        os << "<circle cx=\"" << num(c.x(p.x.edge, p.x.offset)) << "\" cy=\"" << num(c.y(p.t))
           << "\" r=\"2\" fill=\"#0050b0\"/>\n";
    os << "</svg>\n";
    return os.str();
}

std::string render_partition_svg(const MetricGraph& g, const Partition& p) {
    Canvas c(g, p.horizon);
    std::ostringstream os;
    os << open_svg(c);
    os << "<title>partition, T=" << p.horizon << "</title>\n";
    c.frame(os, p.horizon);
    for (const auto& fam : p.families) {
        const char* color = kPalette[(fam.id - 1) % (sizeof kPalette / sizeof kPalette[0])];
        for (const auto& cell : fam.cells) {
            double x0 = c.x(cell.edge, cell.lo), x1 = c.x(cell.edge, cell.hi);
            double y0 = c.y(Rational(0));
            os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0 - 6) << "\" width=\"" << num(x1 - x0)
               << "\" height=\"6\" fill=\"" << color << "\" opacity=\"0.6\"/>\n";
            os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(y0 - 8)
               << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"" << color << "\">" << fam.id << "</text>\n";
            for (const auto& sr : fam.sources)
                for (const auto& row : sr.rows) {
                    Rational o0 = cell.offset_at(Rational(0)), o1 = cell.offset_at(fam.eps);
                    os << "<line x1=\"" << num(c.x(cell.edge, o0)) << "\" y1=\"" << num(c.y(row.at(Rational(0))))
                       << "\" x2=\"" << num(c.x(cell.edge, o1)) << "\" y2=\"" << num(c.y(row.at(fam.eps)))
                       << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
                }
        }
    }
    for (const auto& x : p.critical) {
        double px = c.x(x.edge, x.offset), py = c.y(Rational(0));
        os << "<line x1=\"" << num(px) << "\" y1=\"" << num(py - 10) << "\" x2=\"" << num(px) << "\" y2=\"" << num(py + 2)
           << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace eik
