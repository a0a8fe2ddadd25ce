#pragma once

#include <string>
#include <vector>

namespace dualsolver {

// Tiny self-contained line-plot renderer; enough for parameter curves and
// log-log convergence plots without a plotting dependency.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label, bool log_x = false,
            bool log_y = false);

    void add_series(const std::string& name, const std::vector<double>& x,
                    const std::vector<double>& y);

    std::string render() const;
    void save(const std::string& path) const;

  private:
    std::string title_, x_label_, y_label_;
    bool log_x_, log_y_;
    struct Series {
        std::string name;
        std::vector<double> x, y;
    };
    std::vector<Series> series_;
};

}  // namespace dualsolver
