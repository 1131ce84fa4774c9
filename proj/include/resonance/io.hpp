#pragma once
#include <optional>
#include <string>
#include <vector>

#include "resonance/params.hpp"

namespace resonance {

/// Parameter bundle parsed from JSON. Accepted forms:
///   {"natural": {"b30":..,"b12":..,"b40":..,"b22":..,"b04":..}, "delta": x}
///   {"reduced": {"A":..,"B":..,"C":..,"Delta":..,"A1":..}}
/// A missing A1 defaults to 0 and sets a1_defaulted.
struct ParamsInput {
    ReducedParams rp;
    std::optional<Alphas> alphas;
    std::optional<NaturalCoefficients> natural;
    bool a1_defaulted = false;
};

ParamsInput params_from_json(const std::string& json_text);
ParamsInput params_from_json_file(const std::string& path);

/// CSV writer with a fixed format: header row, '.' decimal separator,
/// 17 significant digits. Cells may also hold status strings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }
    std::size_t rows() const { return n_rows_; }
    void save(const std::string& path) const;

private:
    std::string text_;
    std::size_t n_cols_;
    std::size_t n_rows_ = 0;
};

/// Lossless decimal rendering of a double (17 significant digits).
std::string format_double(double x);

/// Minimal SVG scene: polylines and dots on a rectangular viewport with
/// data-space coordinates. Stable curves are solid, unstable dashed.
class SvgScene {
public:
    SvgScene(double x_min, double x_max, double y_min, double y_max,
             int width = 720, int height = 540);
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& cls);
    void dot(double x, double y, const std::string& cls);
    void axis_labels(const std::string& x_label, const std::string& y_label);
    std::string render() const;
    void save(const std::string& path) const;

private:
    double to_px(double x) const;
    double to_py(double y) const;
    double x_min_, x_max_, y_min_, y_max_;
    int width_, height_;
    std::string body_;
    std::string labels_;
};

} // namespace resonance
