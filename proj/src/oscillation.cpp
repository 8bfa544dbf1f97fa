#include "smnorm/oscillation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "ball_detail.hpp"
#include "plane_ops.hpp"
#include "smnorm/errors.hpp"

namespace smnorm {

namespace {

double mono_eval(std::array<int, 2> g, std::array<double, 2> z) {
    double r = 1.0;
    for (int i = 0; i < g[0]; ++i) r *= z[0];
    for (int i = 0; i < g[1]; ++i) r *= z[1];
    return r;
}

std::size_t block_size(int dim, int order) {
    auto o = static_cast<std::size_t>(order);
    return dim == 1 ? o : o * (o + 1) / 2;
}

// Attempts a Cholesky factorization of the leading k x k block of G (m x m,
// row-major, symmetric).  Pivots are measured against the largest diagonal
// entry, so rank-deficient blocks fail instead of producing wild solves.
bool chol_block(const double* G, int m, int k, double* L) {
    double maxd = 0.0;
    for (int j = 0; j < k; ++j) maxd = std::max(maxd, G[j * m + j]);
    if (!(maxd > 0.0)) return false;
    for (int j = 0; j < k; ++j) {
        double s = G[j * m + j];
        for (int r = 0; r < j; ++r) s -= L[j * k + r] * L[j * k + r];
        if (!(s > 1e-10 * maxd)) return false;
        L[j * k + j] = std::sqrt(s);
        for (int i = j + 1; i < k; ++i) {
            double w = G[i * m + j];
            for (int r = 0; r < j; ++r) w -= L[i * k + r] * L[j * k + r];
            L[i * k + j] = w / L[j * k + j];
        }
    }
    return true;
}

// Solves L L^T c = b for one right-hand side.
void chol_solve(const double* L, int k, const double* b, double* c) {
    for (int i = 0; i < k; ++i) {
        double s = b[i];
        for (int r = 0; r < i; ++r) s -= L[i * k + r] * c[r];
        c[i] = s / L[i * k + i];
    }
    for (int i = k - 1; i >= 0; --i) {
        double s = c[i];
        for (int r = i + 1; r < k; ++r) s -= L[r * k + i] * c[r];
        c[i] = s / L[i * k + i];
    }
}

enum class PowKind { one, two, general, sup };
PowKind pow_kind(Exponent v) {
    if (v.is_inf()) return PowKind::sup;
    if (v.value() == 1.0) return PowKind::one;
    if (v.value() == 2.0) return PowKind::two;
    return PowKind::general;
}

} // namespace

std::vector<std::array<int, 2>> local_monomials(int dim, int order) {
    if (dim != 1 && dim != 2) throw ParamError("monomial dimension must be 1 or 2");
    if (order < 1) throw ParamError("polynomial order must be >= 1");
    std::vector<std::array<int, 2>> out;
    out.reserve(block_size(dim, order));
    for (int degree = 0; degree < order; ++degree) {
        if (dim == 1) {
            out.push_back({degree, 0});
        } else {
            for (int g1 = degree; g1 >= 0; --g1) out.push_back({g1, degree - g1});
        }
    }
    return out;
}

LocalPolyBasis LocalPolyBasis::build(const DomainShape& domain, const Grid& grid,
                                     std::size_t center, double radius, int order) {
    if (!(radius > 0.0)) throw ParamError("ball radius must be positive");
    if (center >= grid.node_count()) throw ParamError("center index out of range");
    ensure_compatible(domain, grid);

    LocalPolyBasis b;
    b.center_ = grid.coords(center);
    b.radius_ = radius;
    b.dim_ = grid.dim();
    b.order_ = order;
    b.mono_ = local_monomials(grid.dim(), order);
    b.quad_ = ball_quadrature(grid, domain, center, radius);

    const std::size_t m = b.mono_.size();
    const std::size_t nodes = b.quad_.nodes.size();
    if (nodes == 0) throw DegenerateBall("ball holds no domain nodes", 0);
    b.inner_scale_ = b.quad_.weight / std::pow(radius, grid.dim());

    // Local coordinates (y - x)/t of the quadrature nodes; periodic grids
    // take the canonical offset representative in (-n/2, n/2] so wrap-around
    // neighbors stay local.
    const int n = grid.nodes_per_axis();
    const auto ci = grid.index_of(center);
    std::vector<std::array<double, 2>> z(nodes, {0.0, 0.0});
    for (std::size_t k = 0; k < nodes; ++k) {
        const auto yi = grid.index_of(b.quad_.nodes[k]);
        for (int a = 0; a < grid.dim(); ++a) {
            auto ia = static_cast<std::size_t>(a);
            int diff = yi[ia] - ci[ia];
            if (grid.periodic()) {
                diff %= n;
                if (diff < 0) diff += n;
                if (diff > n / 2) diff -= n;
            }
            z[k][ia] = diff * grid.spacing() / radius;
        }
    }

    b.values_.assign(m * nodes, 0.0);
    b.change_.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < nodes; ++k)
            b.values_[i * nodes + k] = mono_eval(b.mono_[i], z[k]);
        b.change_[i * m + i] = 1.0;
    }

    const auto dot = [&](const double* x, const double* y) {
        double s = 0.0;
        for (std::size_t k = 0; k < nodes; ++k) s += x[k] * y[k];
        return s * b.inner_scale_;
    };

    // Modified Gram-Schmidt with one re-orthogonalization pass; the rank
    // test compares the surviving mass against the monomial's own norm.
    for (std::size_t i = 0; i < m; ++i) {
        double* vi = &b.values_[i * nodes];
        const double orig = dot(vi, vi);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < i; ++j) {
                const double* vj = &b.values_[j * nodes];
                const double c = dot(vi, vj);
                for (std::size_t k = 0; k < nodes; ++k) vi[k] -= c * vj[k];
                for (std::size_t col = 0; col <= j; ++col)
                    b.change_[i * m + col] -= c * b.change_[j * m + col];
            }
        }
        const double nrm2 = dot(vi, vi);
        if (!(nrm2 > 1e-10 * orig))
            throw DegenerateBall("ball nodes cannot resolve the polynomial order",
                                 static_cast<int>(i));
        const double inv = 1.0 / std::sqrt(nrm2);
        for (std::size_t k = 0; k < nodes; ++k) vi[k] *= inv;
        for (std::size_t col = 0; col <= i; ++col) b.change_[i * m + col] *= inv;
    }

    b.ortho_residual_ = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double g = dot(&b.values_[i * nodes], &b.values_[j * nodes]);
            b.ortho_residual_ =
                std::max(b.ortho_residual_, std::fabs(g - (i == j ? 1.0 : 0.0)));
        }
    if (b.ortho_residual_ > 1e-8)
        throw DegenerateBall("ball quadrature too ill-conditioned for the order",
                             static_cast<int>(m) - 1);

    b.sup_norms_.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < nodes; ++k)
            b.sup_norms_[i] = std::max(b.sup_norms_[i], std::fabs(b.values_[i * nodes + k]));
    return b;
}

double LocalPolyBasis::element(std::size_t i, std::array<double, 2> y) const {
    std::array<double, 2> z{(y[0] - center_[0]) / radius_,
                            dim_ == 2 ? (y[1] - center_[1]) / radius_ : 0.0};
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j)
        s += change_[i * mono_.size() + j] * mono_eval(mono_[j], z);
    return s;
}

std::complex<double> LocalPolyBasis::inner(const SampledFunction& f, std::size_t i) const {
    const double* v = &values_[i * quad_.nodes.size()];
    double sre = 0.0, sim = 0.0;
    for (std::size_t k = 0; k < quad_.nodes.size(); ++k) {
        sre += f.re()[quad_.nodes[k]] * v[k];
        if (f.is_complex()) sim += f.im()[quad_.nodes[k]] * v[k];
    }
    return {sre * inner_scale_, sim * inner_scale_};
}

double LocalPolyBasis::inner_self(const SampledFunction& f) const {
    double s = 0.0;
    for (std::size_t k = 0; k < quad_.nodes.size(); ++k) {
        const double re = f.re()[quad_.nodes[k]];
        const double im = f.is_complex() ? f.im()[quad_.nodes[k]] : 0.0;
        s += re * re + im * im;
    }
    return s * inner_scale_;
}

std::complex<double> LocalPolynomial::operator()(std::array<double, 2> y) const {
    std::array<double, 2> z{(y[0] - center[0]) / radius,
                            dim == 2 ? (y[1] - center[1]) / radius : 0.0};
    const auto mono = local_monomials(dim, order);
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < mono_coeffs.size(); ++j)
        s += mono_coeffs[j] * mono_eval(mono[j], z);
    return s;
}

LocalPolynomial project(const SampledFunction& f, const LocalPolyBasis& basis) {
    const std::size_t m = basis.size();
    LocalPolynomial poly;
    poly.center = basis.center();
    poly.radius = basis.radius();
    poly.dim = basis.dim();
    poly.order = basis.order();
    poly.mono_coeffs.assign(m, {0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) {
        const auto c = basis.inner(f, i);
        for (std::size_t j = 0; j <= i; ++j)
            poly.mono_coeffs[j] += c * basis.change()[i * m + j];
    }
    return poly;
}

double osc(const SampledFunction& f, const DomainShape& domain, std::size_t center,
           double radius, int order, Exponent v) {
    if (order < 1) throw ParamError("oscillation order must be >= 1");
    for (int reduced = order; reduced >= 1; --reduced) {
        std::optional<LocalPolyBasis> basis;
        try {
            basis.emplace(LocalPolyBasis::build(domain, f.grid(), center, radius, reduced));
        } catch (const DegenerateBall&) {
            continue;
        }
        const auto& quad = basis->quadrature();
        const std::size_t nodes = quad.nodes.size();
        const std::size_t m = basis->size();
        std::vector<std::complex<double>> c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = basis->inner(f, i);

        // Pointwise residual of the projection, so annihilation of low
        // degree polynomials is exact to rounding for every v.
        const double iscale = quad.weight / std::pow(radius, f.grid().dim());
        double acc = 0.0;
        for (std::size_t k = 0; k < nodes; ++k) {
            std::complex<double> p = 0.0;
            for (std::size_t i = 0; i < m; ++i) p += c[i] * basis->node_value(i, k);
            const double re = f.re()[quad.nodes[k]] - p.real();
            const double im =
                (f.is_complex() ? f.im()[quad.nodes[k]] : 0.0) - p.imag();
            const double r = std::sqrt(re * re + im * im);
            if (v.is_inf())
                acc = std::max(acc, r);
            else
                acc += std::pow(r, v.value());
        }
        if (v.is_inf()) return acc;
        return std::pow(acc * iscale, 1.0 / v.value());
    }
    return 0.0;  // even the constant failed: the ball holds no domain nodes
}

std::vector<OscillationProfile> osc_profiles(const SampledFunction& f,
                                             const DomainShape& domain, int order,
                                             const std::vector<Exponent>& vs,
                                             const RadiusLadder& ladder) {
    if (order < 1) throw ParamError("oscillation order must be >= 1");
    if (vs.empty()) throw ParamError("oscillation profile needs at least one exponent");
    const Grid& grid = f.grid();
    ensure_compatible(domain, grid);

    const bool torus = std::holds_alternative<FullTorus>(domain);
    const auto mask = domain_mask(domain, grid);
    const int n = grid.nodes_per_axis();
    const std::size_t count = grid.node_count();
    const int dim = grid.dim();
    const double h = grid.spacing();
    const double cell = std::pow(h, dim);
    const int levels = ladder.levels();

    const auto mono = local_monomials(dim, order);
    const int m = static_cast<int>(mono.size());
    if (m > 20)
        throw ParamError("oscillation order too large for the bulk profile solver");
    const auto kernels = local_monomials(dim, 2 * order - 1);
    const int nk = static_cast<int>(kernels.size());
    std::vector<int> kof(static_cast<std::size_t>(m) * m, -1);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const std::array<int, 2> g{mono[a][0] + mono[b][0], mono[a][1] + mono[b][1]};
            for (int k = 0; k < nk; ++k)
                if (kernels[k] == g) kof[static_cast<std::size_t>(a) * m + b] = k;
        }
    std::vector<int> deg(m);
    for (int a = 0; a < m; ++a) deg[a] = mono[a][0] + mono[a][1];

    const bool complex_data = f.is_complex();
    std::vector<double> fre_z(count, 0.0), fim_z(complex_data ? count : 0, 0.0);
    std::vector<double> maskd(torus ? 0 : count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        if (!mask[i]) continue;
        fre_z[i] = f.re()[i];
        if (complex_data) fim_z[i] = f.im()[i];
        if (!torus) maskd[i] = 1.0;
    }

    // Raw moment accumulators: mask kernels (the Gram data; scalars on the
    // torus where every ball looks the same) and f moments per monomial.
    std::vector<double> sker(torus ? static_cast<std::size_t>(nk) : 0, 0.0);
    std::vector<std::vector<double>> mker(
        torus ? 0 : static_cast<std::size_t>(nk), std::vector<double>(count, 0.0));
    std::vector<std::vector<double>> fmre(static_cast<std::size_t>(m),
                                          std::vector<double>(count, 0.0));
    std::vector<std::vector<double>> fmim(
        complex_data ? static_cast<std::size_t>(m) : 0, std::vector<double>(count, 0.0));

    // Offsets bucketed by the finest level admitting them, as in the
    // difference profiles: each offset's moments are folded in exactly once.
    const auto offsets = ball_offsets(grid, ladder.radius(0));
    std::vector<std::vector<std::size_t>> bucket(static_cast<std::size_t>(levels));
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        int finest = 0;
        for (int level = levels - 1; level >= 1; --level) {
            if (detail::offset_in_ball(offsets[k][0], offsets[k][1], h, ladder.radius(level))) {
                finest = level;
                break;
            }
        }
        bucket[static_cast<std::size_t>(finest)].push_back(k);
    }

    const auto raw_pow = [&](std::array<int, 2> o, std::array<int, 2> g) {
        double r = 1.0;
        for (int i = 0; i < g[0]; ++i) r *= o[0] * h;
        for (int i = 0; i < g[1]; ++i) r *= o[1] * h;
        return r;
    };

    std::vector<OscillationProfile> out(vs.size());
    for (auto& profile : out)
        profile.levels.assign(static_cast<std::size_t>(levels),
                              std::vector<double>(count, 0.0));
    std::vector<PowKind> kinds(vs.size());
    for (std::size_t iv = 0; iv < vs.size(); ++iv) kinds[iv] = pow_kind(vs[iv]);

    std::vector<int> blocks;
    for (int o = order; o >= 1; --o) blocks.push_back(static_cast<int>(block_size(dim, o)));

    std::vector<double> cre(static_cast<std::size_t>(m) * count);
    std::vector<double> cim(complex_data ? static_cast<std::size_t>(m) * count : 0);
    std::vector<double> acc(vs.size() * count);

    for (int level = levels - 1; level >= 0; --level) {
        for (std::size_t k : bucket[static_cast<std::size_t>(level)]) {
            const auto o = offsets[k];
            for (int kk = 0; kk < nk; ++kk) {
                const double c = raw_pow(o, kernels[kk]);
                if (torus)
                    sker[static_cast<std::size_t>(kk)] += c;
                else
                    detail::add_shifted_rect(grid, maskd.data(), o, c,
                                             mker[static_cast<std::size_t>(kk)].data());
            }
            for (int a = 0; a < m; ++a) {
                const double c = raw_pow(o, mono[static_cast<std::size_t>(a)]);
                if (torus) {
                    detail::add_shifted_plane(grid, fre_z.data(), {o[0], o[1]}, c,
                                              fmre[static_cast<std::size_t>(a)].data());
                    if (complex_data)
                        detail::add_shifted_plane(grid, fim_z.data(), {o[0], o[1]}, c,
                                                  fmim[static_cast<std::size_t>(a)].data());
                } else {
                    detail::add_shifted_rect(grid, fre_z.data(), o, c,
                                             fmre[static_cast<std::size_t>(a)].data());
                    if (complex_data)
                        detail::add_shifted_rect(grid, fim_z.data(), o, c,
                                                 fmim[static_cast<std::size_t>(a)].data());
                }
            }
        }

        const double t = ladder.radius(level);
        const double iscale = cell / std::pow(t, dim);
        std::vector<double> tp(static_cast<std::size_t>(2 * order - 1));
        for (std::size_t k = 0; k < tp.size(); ++k) tp[k] = std::pow(t, -static_cast<double>(k));

        // Projection coefficients per center: solve the normal equations of
        // the monomial basis in ball-local coordinates.  Rank-deficient
        // Grams fall back to the largest graded block that factorizes.
        std::fill(cre.begin(), cre.end(), 0.0);
        if (complex_data) std::fill(cim.begin(), cim.end(), 0.0);
        double G[400], L[400], rhs[20], sol[20];

        int torus_block = 0;
        if (torus) {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b <= a; ++b) {
                    const double g = sker[static_cast<std::size_t>(
                                         kof[static_cast<std::size_t>(a) * m + b])] *
                                     iscale * tp[static_cast<std::size_t>(deg[a])] *
                                     tp[static_cast<std::size_t>(deg[b])];
                    G[a * m + b] = G[b * m + a] = g;
                }
            for (int blk : blocks)
                if (chol_block(G, m, blk, L)) {
                    torus_block = blk;
                    break;
                }
        }

        for (std::size_t x = 0; x < count; ++x) {
            if (!mask[x]) continue;
            int blk = torus_block;
            if (!torus) {
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b <= a; ++b) {
                        const double g =
                            mker[static_cast<std::size_t>(
                                kof[static_cast<std::size_t>(a) * m + b])][x] *
                            iscale * tp[static_cast<std::size_t>(deg[a])] *
                            tp[static_cast<std::size_t>(deg[b])];
                        G[a * m + b] = G[b * m + a] = g;
                    }
                blk = 0;
                for (int cand : blocks)
                    if (chol_block(G, m, cand, L)) {
                        blk = cand;
                        break;
                    }
                if (blk == 0) continue;  // empty ball: the profile stays 0
            }
            for (int a = 0; a < blk; ++a)
                rhs[a] = fmre[static_cast<std::size_t>(a)][x] * iscale *
                         tp[static_cast<std::size_t>(deg[a])];
            chol_solve(L, blk, rhs, sol);
            for (int a = 0; a < blk; ++a) cre[static_cast<std::size_t>(a) * count + x] = sol[a];
            if (complex_data) {
                for (int a = 0; a < blk; ++a)
                    rhs[a] = fmim[static_cast<std::size_t>(a)][x] * iscale *
                             tp[static_cast<std::size_t>(deg[a])];
                chol_solve(L, blk, rhs, sol);
                for (int a = 0; a < blk; ++a)
                    cim[static_cast<std::size_t>(a) * count + x] = sol[a];
            }
        }

        // Level ball in bucket order, with per-offset monomial powers in the
        // normalized coordinates (o h / t)^alpha.
        std::vector<std::array<int, 2>> ball;
        for (int j = level; j < levels; ++j)
            for (std::size_t k : bucket[static_cast<std::size_t>(j)]) ball.push_back(offsets[k]);
        std::vector<double> pow_tab(ball.size() * static_cast<std::size_t>(m));
        for (std::size_t idx = 0; idx < ball.size(); ++idx)
            for (int a = 0; a < m; ++a)
                pow_tab[idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)] =
                    raw_pow(ball[idx], mono[static_cast<std::size_t>(a)]) *
                    tp[static_cast<std::size_t>(deg[a])];

        // Pointwise residual pass shared by every v.
        std::fill(acc.begin(), acc.end(), 0.0);
        double ccre[20], ccim[20];
        for (std::size_t x = 0; x < count; ++x) {
            if (!mask[x]) continue;
            const auto xi = grid.index_of(x);
            for (int a = 0; a < m; ++a) {
                ccre[a] = cre[static_cast<std::size_t>(a) * count + x];
                ccim[a] = complex_data ? cim[static_cast<std::size_t>(a) * count + x] : 0.0;
            }
            for (std::size_t idx = 0; idx < ball.size(); ++idx) {
                const auto o = ball[idx];
                int y1 = xi[0] + o[0];
                int y2 = xi[1] + o[1];
                if (grid.periodic()) {
                    y1 = detail::reduce_mod(y1, n);
                    y2 = dim == 2 ? detail::reduce_mod(y2, n) : 0;
                } else if (y1 < 0 || y1 >= n || (dim == 2 && (y2 < 0 || y2 >= n))) {
                    continue;
                }
                const std::size_t y =
                    dim == 1 ? static_cast<std::size_t>(y1)
                             : static_cast<std::size_t>(y1) * static_cast<std::size_t>(n) +
                                   static_cast<std::size_t>(y2);
                if (!mask[y]) continue;
                const double* pw = &pow_tab[idx * static_cast<std::size_t>(m)];
                double pre = 0.0, pim = 0.0;
                for (int a = 0; a < m; ++a) pre += ccre[a] * pw[a];
                if (complex_data)
                    for (int a = 0; a < m; ++a) pim += ccim[a] * pw[a];
                const double dre = fre_z[y] - pre;
                const double dim_ = (complex_data ? fim_z[y] : 0.0) - pim;
                const double r =
                    complex_data ? std::sqrt(dre * dre + dim_ * dim_) : std::fabs(dre);
                for (std::size_t iv = 0; iv < vs.size(); ++iv) {
                    double& dst = acc[iv * count + x];
                    switch (kinds[iv]) {
                        case PowKind::sup: dst = std::max(dst, r); break;
                        case PowKind::one: dst += r; break;
                        case PowKind::two: dst += r * r; break;
                        case PowKind::general: dst += std::pow(r, vs[iv].value()); break;
                    }
                }
            }
        }

        for (std::size_t iv = 0; iv < vs.size(); ++iv) {
            auto& plane = out[iv].levels[static_cast<std::size_t>(level)];
            if (vs[iv].is_inf()) {
                for (std::size_t i = 0; i < count; ++i)
                    plane[i] = mask[i] ? acc[iv * count + i] : 0.0;
            } else {
                const double vv = vs[iv].value();
                for (std::size_t i = 0; i < count; ++i)
                    plane[i] =
                        mask[i] ? std::pow(acc[iv * count + i] * iscale, 1.0 / vv) : 0.0;
            }
        }
    }
    return out;
}

OscillationProfile osc_profile(const SampledFunction& f, const DomainShape& domain,
                               int order, Exponent v, const RadiusLadder& ladder) {
    auto profiles = osc_profiles(f, domain, order, {v}, ladder);
    return std::move(profiles.front());
}

double osc_seminorm(const SampledFunction& f, const DomainShape& domain,
                    const ValidatedParams& params) {
    const Grid& grid = f.grid();
    if (params.dim() != grid.dim())
        throw ParamError("parameter dimension does not match the grid");
    auto time_ladder = RadiusLadder::up_to(grid, params.time_horizon());
    auto profile = osc_profile(f, domain, params.order(), params.v(), time_ladder);
    auto plane = scale_integral(time_ladder, profile.levels, params.s(), params.q());
    return morrey_plane_norm(grid, domain, plane, params.p(), params.u(),
                             RadiusLadder::full(grid));
}

NormReport osc_quasinorm(const SampledFunction& f, const DomainShape& domain,
                         const ValidatedParams& params, BaseTerm base) {
    auto start = std::chrono::steady_clock::now();
    NormReport report;
    report.route = Route::osc;
    report.base_term = base;
    report.domain = domain_name(domain);
    report.n = f.grid().nodes_per_axis();
    report.dim = f.grid().dim();
    report.params = params.raw();
    report.lower_window = params.lower_window();
    report.window_ok = params.window_ok();

    auto full = RadiusLadder::full(f.grid());
    report.base = base == BaseTerm::plain
                      ? morrey_norm(f, domain, params.p(), params.u(), full)
                      : local_average_term(f, domain, params.v(), params.base_radius(),
                                           params.p(), params.u(), full);
    report.seminorm = osc_seminorm(f, domain, params);
    report.total = report.base + report.seminorm;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double clubsuit_norm(const SampledFunction& f, const ValidatedParams& params, int j_max) {
    const Grid& grid = f.grid();
    if (params.dim() != grid.dim())
        throw ParamError("parameter dimension does not match the grid");
    if (!grid.periodic()) throw GeometryError("the club norm needs the full torus");
    if (grid.extent() != 1.0) throw ParamError("the club norm is defined on the unit torus");
    const DomainShape domain = FullTorus{};

    const auto full = RadiusLadder::full(grid);
    if (j_max < 1 || j_max > full.j_max())
        throw ParamError("dyadic depth exceeds the grid resolution");

    const auto ladder = RadiusLadder::full(grid, 1);
    const auto profile = osc_profile(f, domain, params.order(), params.v(), ladder);

    // Base term: the raw v-integral of f over the unit ball (no radius
    // normalization; at radius 1 the two conventions coincide).
    const std::size_t count = grid.node_count();
    const double cell = std::pow(grid.spacing(), grid.dim());
    const auto mod = f.modulus();
    std::vector<double> base(count);
    if (params.v().is_inf()) {
        base = ball_max_map(grid, mod, 1.0);
    } else {
        const double vv = params.v().value();
        std::vector<double> fv(count);
        for (std::size_t i = 0; i < count; ++i) fv[i] = std::pow(mod[i], vv);
        const auto sums = ball_sum_map(grid, fv, 1.0);
        for (std::size_t i = 0; i < count; ++i)
            base[i] = std::pow(std::max(0.0, sums[i]) * cell, 1.0 / vv);
    }

    std::vector<double> plane(count);
    const double s = params.s();
    if (params.q().is_inf()) {
        for (std::size_t i = 0; i < count; ++i) {
            double g = base[i];
            for (int j = 1; j <= j_max; ++j)
                g = std::max(g, std::pow(ladder.radius(j - 1), -s) *
                                    profile.levels[static_cast<std::size_t>(j - 1)][i]);
            plane[i] = g;
        }
    } else {
        const double qq = params.q().value();
        for (std::size_t i = 0; i < count; ++i) {
            double g = std::pow(base[i], qq);
            for (int j = 1; j <= j_max; ++j)
                g += std::pow(std::pow(ladder.radius(j - 1), -s) *
                                  profile.levels[static_cast<std::size_t>(j - 1)][i],
                              qq);
            plane[i] = std::pow(g, 1.0 / qq);
        }
    }
    return morrey_plane_norm(grid, domain, plane, params.p(), params.u(), full);
}

NormReport clubsuit_quasinorm(const SampledFunction& f, const ValidatedParams& params,
                              int j_max) {
    auto start = std::chrono::steady_clock::now();
    NormReport report;
    report.route = Route::clubsuit;
    report.base_term = BaseTerm::plain;
    report.domain = domain_name(FullTorus{});
    report.n = f.grid().nodes_per_axis();
    report.dim = f.grid().dim();
    report.params = params.raw();
    report.lower_window = params.lower_window();
    report.window_ok = params.window_ok();
    // The club norm is one indivisible Morrey norm: no base/seminorm split.
    report.base = 0.0;
    report.seminorm = clubsuit_norm(f, params, j_max);
    report.total = report.seminorm;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<BasisStats> basis_diagnostics(const DomainShape& domain, const Grid& grid,
                                          int order, const RadiusLadder& ladder,
                                          std::size_t stride) {
    if (stride == 0) stride = 1;
    const auto mask = domain_mask(domain, grid);
    std::vector<BasisStats> out;
    for (int level = 0; level < ladder.levels(); ++level) {
        BasisStats st;
        st.level = level;
        st.radius = ladder.radius(level);
        bool any = false;
        for (std::size_t x = 0; x < grid.node_count(); x += stride) {
            if (!mask[x]) continue;
            int rank = 0;
            try {
                const auto basis = LocalPolyBasis::build(domain, grid, x, st.radius, order);
                rank = static_cast<int>(basis.size());
                for (double s : basis.sup_norms()) st.max_sup_norm = std::max(st.max_sup_norm, s);
                st.max_ortho_residual = std::max(st.max_ortho_residual, basis.ortho_residual());
            } catch (const DegenerateBall& e) {
                rank = e.achieved_rank();
            }
            st.min_rank = any ? std::min(st.min_rank, rank) : rank;
            any = true;
        }
        if (!any) st.min_rank = 0;
        out.push_back(st);
    }
    return out;
}

} // namespace smnorm
