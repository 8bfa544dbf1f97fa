#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace smnorm {

/**
 * Uniform tensor-product grid on an axis-aligned box in dimension 1 or 2.
 *
 * Nodes sit at origin[a] + i * spacing along each axis a, i = 0..n-1, with
 * the same node count n (a power of two, >= 16) and the same extent on every
 * axis, so spacing = extent / n.  A periodic grid identifies index n with
 * index 0 and is the sampling lattice for the torus; a non-periodic grid
 * covers [origin, origin + extent) with no wrap.
 *
 * Flat storage order is row-major: flat = i0 * n + i1 for d = 2.
 */
class Grid {
public:
    /// Validates and builds a grid; rejects d outside {1,2}, non-power-of-two
    /// or too-small n, and non-positive extent.
    static Grid make(int dim, int nodes_per_axis, std::array<double, 2> origin,
                     double extent, bool periodic);

    int dim() const noexcept { return dim_; }
    int nodes_per_axis() const noexcept { return n_; }
    bool periodic() const noexcept { return periodic_; }
    double extent() const noexcept { return extent_; }
    double origin(int axis) const noexcept { return origin_[static_cast<std::size_t>(axis)]; }
    double spacing() const noexcept { return extent_ / n_; }

    std::size_t node_count() const noexcept {
        auto n = static_cast<std::size_t>(n_);
        return dim_ == 1 ? n : n * n;
    }

    std::array<int, 2> index_of(std::size_t flat) const noexcept {
        if (dim_ == 1) return {static_cast<int>(flat), 0};
        return {static_cast<int>(flat) / n_, static_cast<int>(flat) % n_};
    }

    std::size_t flat_of(std::array<int, 2> idx) const noexcept {
        if (dim_ == 1) return static_cast<std::size_t>(idx[0]);
        return static_cast<std::size_t>(idx[0]) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(idx[1]);
    }

    std::array<double, 2> coords(std::size_t flat) const noexcept {
        auto idx = index_of(flat);
        return {origin_[0] + idx[0] * spacing(),
                dim_ == 2 ? origin_[1] + idx[1] * spacing() : 0.0};
    }

    /// Node reached from `flat` by an integer offset per axis.  Periodic grids
    /// wrap; on non-periodic grids a step off the grid returns false.
    bool shift(std::size_t flat, std::array<int, 2> offset, std::size_t& out) const noexcept {
        auto idx = index_of(flat);
        for (int a = 0; a < dim_; ++a) {
            int i = idx[static_cast<std::size_t>(a)] + offset[static_cast<std::size_t>(a)];
            if (periodic_) {
                i %= n_;
                if (i < 0) i += n_;
            } else if (i < 0 || i >= n_) {
                return false;
            }
            idx[static_cast<std::size_t>(a)] = i;
        }
        out = flat_of(idx);
        return true;
    }

    bool operator==(const Grid&) const = default;

private:
    Grid(int dim, int n, std::array<double, 2> origin, double extent, bool periodic)
        : dim_(dim), n_(n), origin_(origin), extent_(extent), periodic_(periodic) {}

    int dim_;
    int n_;
    std::array<double, 2> origin_;
    double extent_;
    bool periodic_;
};

/// Free-function form of Grid::make.
Grid make_grid(int dim, int nodes_per_axis, std::array<double, 2> origin,
               double extent, bool periodic);

/**
 * Samples of a function on a grid.  Real-valued data keeps `im` empty;
 * complex data carries both planes.  All values are finite by construction.
 */
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<double> re, std::vector<double> im = {});

    const Grid& grid() const noexcept { return grid_; }
    bool is_complex() const noexcept { return !im_.empty(); }
    const std::vector<double>& re() const noexcept { return re_; }
    const std::vector<double>& im() const noexcept { return im_; }

    /// Pointwise modulus: |re| for real data, hypot(re, im) for complex.
    std::vector<double> modulus() const;

private:
    Grid grid_;
    std::vector<double> re_;
    std::vector<double> im_;
};

/// Reads a gridded-function file (SMNORM1 header + little-endian f64/c64
/// payload).  Malformed headers, short payloads, and non-finite values throw
/// IoError.
SampledFunction read_gridfun(const std::filesystem::path& path);

/// Writes the matching file format atomically (temp file + rename), so
/// write_gridfun followed by read_gridfun is a bit-exact round trip.
void write_gridfun(const std::filesystem::path& path, const SampledFunction& f);

} // namespace smnorm
