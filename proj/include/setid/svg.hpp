#pragma once

#include "setid/polytope.hpp"

#include <string>
#include <vector>

namespace setid::svg {

// Unit-square sketch in the style of the paper's figures: axes, the simplex
// boundary, filled regions back to front, and corner guide labels.
class Figure {
  public:
    Figure(std::string x_label, std::string y_label);

    void add_region(const geom::ConvexRegion2D& region, const std::string& fill, double opacity);
    // dashed guides from the region's max-x/max-y corners to the axes
    void add_corner_guides(const geom::ConvexRegion2D& region);

    std::string render() const;

  private:
    struct Poly {
        std::vector<std::pair<double, double>> pts;
        std::string fill;
        double opacity;
    };
    std::string x_label_, y_label_;
    std::vector<Poly> polys_;
    std::vector<std::pair<double, double>> guides_; // data coordinates
};

} // namespace setid::svg
