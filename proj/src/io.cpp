#include "resonance/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace resonance {

namespace {

using nlohmann::json;

double get_field(const json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_number())
        throw Error(ErrorCode::InvalidParameter,
                    std::string("missing or non-numeric field '") + name + "'");
    return j[name].get<double>();
}

} // namespace

ParamsInput params_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidParameter, std::string("JSON parse error: ") + e.what());
    }

    ParamsInput in;
    if (j.contains("natural")) {
        const json& n = j["natural"];
        NaturalCoefficients nat;
        nat.b30 = get_field(n, "b30");
        nat.b12 = get_field(n, "b12");
        nat.b40 = get_field(n, "b40");
        nat.b22 = get_field(n, "b22");
        nat.b04 = get_field(n, "b04");
        const double delta = get_field(j, "delta");
        in.natural = nat;
        in.alphas = alphas_from_natural(nat, delta);
        in.rp = reduced_from_alphas(*in.alphas);
    } else if (j.contains("reduced")) {
        const json& r = j["reduced"];
        in.rp.A = get_field(r, "A");
        in.rp.B = get_field(r, "B");
        in.rp.C = get_field(r, "C");
        in.rp.Delta = get_field(r, "Delta");
        if (r.contains("A1")) {
            in.rp.A1 = get_field(r, "A1");
        } else {
            in.rp.A1 = 0.0;
            in.a1_defaulted = true;
        }
    } else {
        throw Error(ErrorCode::InvalidParameter,
                    "parameter JSON needs a 'natural' or 'reduced' object");
    }
    return in;
}

ParamsInput params_from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorCode::InvalidParameter, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return params_from_json(ss.str());
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : n_cols_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_)
        throw Error(ErrorCode::InvalidParameter, "CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
    ++n_rows_;
}

void CsvWriter::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::InvalidParameter, "cannot write " + path);
    f << text_;
}

SvgScene::SvgScene(double x_min, double x_max, double y_min, double y_max, int width, int height)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max),
      width_(width), height_(height) {}

double SvgScene::to_px(double x) const {
    return 40.0 + (x - x_min_) / (x_max_ - x_min_) * (width_ - 60.0);
}

double SvgScene::to_py(double y) const {
    return height_ - 30.0 - (y - y_min_) / (y_max_ - y_min_) * (height_ - 50.0);
}

void SvgScene::polyline(const std::vector<std::pair<double, double>>& pts,
                        const std::string& cls) {
    if (pts.size() < 2) return;
    std::string d = "<polyline class=\"" + cls + "\" points=\"";
    char buf[64];
    for (const auto& [x, y] : pts) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", to_px(x), to_py(y));
        d += buf;
    }
    d += "\"/>\n";
    body_ += d;
}

void SvgScene::dot(double x, double y, const std::string& cls) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "<circle class=\"%s\" cx=\"%.2f\" cy=\"%.2f\" r=\"1.2\"/>\n",
                  cls.c_str(), to_px(x), to_py(y));
    body_ += buf;
}

void SvgScene::axis_labels(const std::string& x_label, const std::string& y_label) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" class=\"label\">%s</text>"
                  "<text x=\"12\" y=\"16\" class=\"label\">%s</text>\n",
                  width_ / 2, height_ - 8, x_label.c_str(), y_label.c_str());
    labels_ += buf;
}

std::string SvgScene::render() const {
    std::string out;
    char head[256];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  width_, height_, width_, height_);
    out += head;
    out += "<style>\n"
           ".stable{fill:none;stroke:#1f5fbf;stroke-width:1.4}\n"
           ".unstable{fill:none;stroke:#1f5fbf;stroke-width:1.4;stroke-dasharray:6 4}\n"
           ".envelope-stable{fill:none;stroke:#b02a2a;stroke-width:1.4}\n"
           ".envelope-unstable{fill:none;stroke:#2a8a2a;stroke-width:1.4;stroke-dasharray:6 4}\n"
           ".line{fill:none;stroke:#444;stroke-width:1}\n"
           ".point{fill:#333;stroke:none}\n"
           ".label{font:12px sans-serif;fill:#222}\n"
           "</style>\n";
    out += body_;
    out += labels_;
    out += "</svg>\n";
    return out;
}

void SvgScene::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::InvalidParameter, "cannot write " + path);
    f << render();
}

} // namespace resonance
