#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace flatdyn {

// Minimal SVG writer; enough for cobweb plots, foliation and partition overlays.
class SvgDoc {
  public:
    SvgDoc(double width, double height) : w_(width), h_(height) {}

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double sw = 1.0) {
        body_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
              << "\" stroke=\"" << stroke << "\" stroke-width=\"" << sw << "\"/>\n";
    }
    void circle(double cx, double cy, double r, const std::string& fill) {
        body_ << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"" << fill << "\"/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double sw = 1.0) {
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << sw << "\" points=\"";
        for (auto& [x, y] : pts) body_ << x << "," << y << " ";
        body_ << "\"/>\n";
    }
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
                 const std::string& stroke, double sw = 1.0) {
        body_ << "<polygon fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << sw
              << "\" points=\"";
        for (auto& [x, y] : pts) body_ << x << "," << y << " ";
        body_ << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, double size = 12.0) {
        body_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
              << "\" font-family=\"monospace\">" << s << "</text>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
            << "\" viewBox=\"0 0 " << w_ << " " << h_ << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

    void save(const std::string& path) const {
        std::ofstream f(path);
        f << str();
    }

  private:
    double w_, h_;
    std::ostringstream body_;
};

} // namespace flatdyn
