#include "smnorm/grid.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "smnorm/errors.hpp"

namespace smnorm {

Grid Grid::make(int dim, int nodes_per_axis, std::array<double, 2> origin,
                double extent, bool periodic) {
    if (dim != 1 && dim != 2)
        throw ParamError("grid dimension must be 1 or 2, got " + std::to_string(dim));
    if (nodes_per_axis < 16 || !std::has_single_bit(static_cast<unsigned>(nodes_per_axis)))
        throw ParamError("nodes per axis must be a power of two >= 16, got " +
                         std::to_string(nodes_per_axis));
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw ParamError("grid extent must be positive and finite");
    if (!std::isfinite(origin[0]) || !std::isfinite(origin[1]))
        throw ParamError("grid origin must be finite");
    if (dim == 1) origin[1] = 0.0;
    return Grid(dim, nodes_per_axis, origin, extent, periodic);
}

Grid make_grid(int dim, int nodes_per_axis, std::array<double, 2> origin,
               double extent, bool periodic) {
    return Grid::make(dim, nodes_per_axis, origin, extent, periodic);
}

SampledFunction::SampledFunction(Grid grid, std::vector<double> re, std::vector<double> im)
    : grid_(grid), re_(std::move(re)), im_(std::move(im)) {
    if (re_.size() != grid_.node_count())
        throw ParamError("sample count does not match grid node count");
    if (!im_.empty() && im_.size() != re_.size())
        throw ParamError("imaginary plane size does not match real plane");
    auto check = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) throw ParamError("non-finite sample value");
    };
    check(re_);
    check(im_);
}

std::vector<double> SampledFunction::modulus() const {
    std::vector<double> out(re_.size());
    if (im_.empty()) {
        for (std::size_t i = 0; i < re_.size(); ++i) out[i] = std::fabs(re_[i]);
    } else {
        for (std::size_t i = 0; i < re_.size(); ++i) out[i] = std::hypot(re_[i], im_[i]);
    }
    return out;
}

} // namespace smnorm
