#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "smnorm/errors.hpp"
#include "smnorm/grid.hpp"

// Payload doubles are written raw; the format pins little-endian IEEE-754.
static_assert(std::endian::native == std::endian::little,
              "gridded-function files require a little-endian host");

namespace smnorm {

namespace {

constexpr const char* kMagic = "SMNORM1";

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Expects `token` to look like key=value; returns the value or throws.
std::string take_value(const std::string& token, const char* key) {
    std::string prefix = std::string(key) + "=";
    if (token.rfind(prefix, 0) != 0)
        throw IoError("gridded-function header: expected '" + prefix +
                      "...', got '" + token + "'");
    return token.substr(prefix.size());
}

double parse_double(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string("gridded-function header: bad ") + what + " '" + text + "'");
    }
}

int parse_int(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string("gridded-function header: bad ") + what + " '" + text + "'");
    }
}

} // namespace

SampledFunction read_gridfun(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

    std::string header;
    if (!std::getline(in, header)) throw IoError("missing gridded-function header");

    std::istringstream hs(header);
    std::string magic, tok;
    hs >> magic;
    if (magic != kMagic)
        throw IoError("bad magic '" + magic + "', expected " + kMagic);

    auto next = [&](const char* key) {
        if (!(hs >> tok)) throw IoError(std::string("gridded-function header: missing ") + key);
        return take_value(tok, key);
    };

    int d = parse_int(next("d"), "dimension");
    int n = parse_int(next("n"), "node count");
    int periodic = parse_int(next("periodic"), "periodic flag");
    if (periodic != 0 && periodic != 1)
        throw IoError("gridded-function header: periodic flag must be 0 or 1");
    std::string origin_text = next("origin");
    std::array<double, 2> origin{0.0, 0.0};
    {
        auto comma = origin_text.find(',');
        if (comma == std::string::npos) {
            origin[0] = parse_double(origin_text, "origin");
        } else {
            origin[0] = parse_double(origin_text.substr(0, comma), "origin");
            origin[1] = parse_double(origin_text.substr(comma + 1), "origin");
        }
    }
    double extent = parse_double(next("extent"), "extent");
    std::string dtype = next("dtype");
    if (dtype != "f64" && dtype != "c64")
        throw IoError("gridded-function header: dtype must be f64 or c64, got '" + dtype + "'");
    if (hs >> tok) throw IoError("gridded-function header: trailing token '" + tok + "'");

    Grid grid = [&] {
        try {
            return Grid::make(d, n, origin, extent, periodic == 1);
        } catch (const ParamError& e) {
            throw IoError(std::string("gridded-function header: ") + e.what());
        }
    }();

    bool complex_payload = dtype == "c64";
    std::size_t scalars = grid.node_count() * (complex_payload ? 2 : 1);
    std::vector<double> raw(scalars);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(scalars * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != scalars * sizeof(double))
        throw IoError("gridded-function payload shorter than header promises");
    char extra;
    if (in.read(&extra, 1) && in.gcount() == 1)
        throw IoError("gridded-function payload longer than header promises");

    for (double x : raw)
        if (!std::isfinite(x)) throw IoError("non-finite value in gridded-function payload");

    if (!complex_payload) return SampledFunction(grid, std::move(raw));

    std::vector<double> re(grid.node_count()), im(grid.node_count());
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        re[i] = raw[2 * i];
        im[i] = raw[2 * i + 1];
    }
    return SampledFunction(grid, std::move(re), std::move(im));
}

void write_gridfun(const std::filesystem::path& path, const SampledFunction& f) {
    const Grid& g = f.grid();
    std::string origin_text = format_double(g.origin(0));
    if (g.dim() == 2) origin_text += "," + format_double(g.origin(1));

    std::string header = std::string(kMagic) + " d=" + std::to_string(g.dim()) +
                         " n=" + std::to_string(g.nodes_per_axis()) +
                         " periodic=" + (g.periodic() ? "1" : "0") +
                         " origin=" + origin_text +
                         " extent=" + format_double(g.extent()) +
                         " dtype=" + (f.is_complex() ? "c64" : "f64") + "\n";

    for (double x : f.re())
        if (!std::isfinite(x)) throw IoError("refusing to write non-finite sample");
    for (double x : f.im())
        if (!std::isfinite(x)) throw IoError("refusing to write non-finite sample");

    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(header.data(), static_cast<std::streamsize>(header.size()));
        if (f.is_complex()) {
            std::vector<double> inter(2 * f.re().size());
            for (std::size_t i = 0; i < f.re().size(); ++i) {
                inter[2 * i] = f.re()[i];
                inter[2 * i + 1] = f.im()[i];
            }
            out.write(reinterpret_cast<const char*>(inter.data()),
                      static_cast<std::streamsize>(inter.size() * sizeof(double)));
        } else {
            out.write(reinterpret_cast<const char*>(f.re().data()),
                      static_cast<std::streamsize>(f.re().size() * sizeof(double)));
        }
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
    }
}

} // namespace smnorm
