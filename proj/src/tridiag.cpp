#include "dicke/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dicke {

namespace {

constexpr double kRescaleLimit = 1e150;
const double kPivMin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

// Views of an irreducible block [lo, hi) of a SectorMatrix.
struct Block {
    const double* diag;
    const double* off;  // off[i] couples i and i+1 inside the block
    int d;
};

double block_bound(const Block& b) {
    double r = 0.0;
    for (int i = 0; i < b.d; ++i) {
        double g = std::abs(b.diag[i]);
        if (i > 0) g += std::abs(b.off[i - 1]);
        if (i + 1 < b.d) g += std::abs(b.off[i]);
        r = std::max(r, g);
    }
    return r;
}

int block_sturm_count(const Block& b, double nu) {
    int count = 0;
    double q = 1.0;
    for (int i = 0; i < b.d; ++i) {
        const double esq = (i > 0) ? b.off[i - 1] * b.off[i - 1] : 0.0;
        q = (b.diag[i] - nu) - esq / q;
        if (q == 0.0) q = kPivMin;
        if (std::abs(q) < kPivMin) q = (q < 0.0 ? -kPivMin : kPivMin);
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> block_bisect(const Block& b, double tol) {
    if (b.d == 1) return {b.diag[0]};
    const double bound = block_bound(b);
    const double width = tol * std::max(1.0, bound);
    std::vector<double> vals(b.d);
    for (int k = 0; k < b.d; ++k) {
        double lo = -bound - width, hi = bound + width;
        for (int iter = 0; iter < 200 && hi - lo > width; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (block_sturm_count(b, mid) <= k)
                lo = mid;
            else
                hi = mid;
        }
        vals[k] = 0.5 * (lo + hi);
    }
    return vals;
}

// Tridiagonal LU with partial pivoting for (M - nu*I); exact-singular pivots
// are bumped to a tiny value so inverse iteration can proceed.
struct TridiagPLU {
    std::vector<double> d, u1, u2, l;
    std::vector<char> swapped;
    int n;

    TridiagPLU(const Block& b, double nu) : n(b.d) {
        d.resize(n);
        u1.assign(std::max(0, n - 1), 0.0);
        u2.assign(std::max(0, n - 2), 0.0);
        l.assign(std::max(0, n - 1), 0.0);
        swapped.assign(std::max(0, n - 1), 0);
        std::vector<double> sub(std::max(0, n - 1)), sup(std::max(0, n - 1));
        for (int i = 0; i < n; ++i) d[i] = b.diag[i] - nu;
        for (int i = 0; i + 1 < n; ++i) sub[i] = sup[i] = b.off[i];
        for (int i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(sub[i])) {
                double piv = d[i];
                if (piv == 0.0) piv = kPivMin;
                const double m = sub[i] / piv;
                l[i] = m;
                d[i] = piv;
                u1[i] = sup[i];
                d[i + 1] -= m * sup[i];
                // u2[i] stays 0
            } else {
                swapped[i] = 1;
                const double m = d[i] / sub[i];
                l[i] = m;
                d[i] = sub[i];
                u1[i] = d[i + 1];
                if (i + 2 < n) u2[i] = sup[i + 1];
                d[i + 1] = sup[i] - m * d[i + 1];
                if (i + 2 < n) {
                    sup[i + 1] = -m * u2[i];
                    // sub[i+1] unchanged
                }
            }
        }
        if (d[n - 1] == 0.0) d[n - 1] = kPivMin;
    }

    void solve(std::vector<double>& x) const {
        for (int i = 0; i + 1 < n; ++i) {
            if (swapped[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= l[i] * x[i];
        }
        for (int i = n - 1; i >= 0; --i) {
            double v = x[i];
            if (i + 1 < n) v -= u1[i] * x[i + 1];
            if (i + 2 < n) v -= u2[i] * x[i + 2];
            x[i] = v / d[i];
        }
    }
};

void normalize_sign(std::vector<double>& v) {
    double nrm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (nrm == 0.0) throw std::runtime_error("inverse iteration produced a zero vector");
    int imax = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    const double sgn = (v[imax] < 0.0) ? -1.0 : 1.0;
    for (double& x : v) x *= sgn / nrm;
}

// Rayleigh quotient of a unit vector; squares the eigenvector error away,
// recovering full relative accuracy lost to the bound-scaled bisection width.
double block_rayleigh(const Block& b, const std::vector<double>& v) {
    double r = 0.0;
    for (int i = 0; i < b.d; ++i) {
        double mv = b.diag[i] * v[i];
        if (i > 0) mv += b.off[i - 1] * v[i - 1];
        if (i + 1 < b.d) mv += b.off[i] * v[i + 1];
        r += v[i] * mv;
    }
    return r;
}

// start_index >= 0 seeds from a basis vector instead of the uniform start;
// used to escape the span of previously found vectors in a degenerate cluster.
std::vector<double> block_inverse_iteration(const Block& b, double nu, int start_index = -1) {
    if (b.d == 1) return {1.0};
    TridiagPLU lu(b, nu);
    std::vector<double> v(b.d, 1.0 / std::sqrt(static_cast<double>(b.d)));
    if (start_index >= 0) {
        std::fill(v.begin(), v.end(), 0.0);
        v[start_index % b.d] = 1.0;
    }
    for (int pass = 0; pass < 3; ++pass) {
        lu.solve(v);
        // rescale by the largest component first: near-exact shifts can grow
        // the iterate to ~1/pivmin, whose squared norm overflows
        double amax = 0.0;
        for (double x : v) amax = std::max(amax, std::abs(x));
        if (!std::isfinite(amax) || amax == 0.0) {
            // restart from a skewed vector if the start was deficient
            for (int i = 0; i < b.d; ++i) v[i] = 1.0 + 0.5 * (i % 3);
            lu.solve(v);
            amax = 0.0;
            for (double x : v) amax = std::max(amax, std::abs(x));
            if (!std::isfinite(amax) || amax == 0.0)
                throw std::runtime_error("inverse iteration diverged");
        }
        for (double& x : v) x /= amax;
        const double nrm =
            std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        for (double& x : v) x /= nrm;
        // no early exit: the convergence ratio is (shift error / gap) per
        // pass, so the fixed pass count squares the error well past rounding
    }
    normalize_sign(v);
    return v;
}

}  // namespace

CharPolySequence charpoly_eval(const SectorMatrix& matrix, double nu) {
    const int d = matrix.dim();
    CharPolySequence seq;
    seq.values.resize(d + 1);
    // minors taken from the high-m end, matching the recurrence that starts
    // at the top Dicke index
    double pm2 = 0.0, pm1 = 1.0;
    seq.values[0] = 1.0;
    int prev_sign = 1;
    for (int k = 1; k <= d; ++k) {
        const int i = d - k;  // row entering the minor
        const double offsq = (k >= 2) ? matrix.offdiag[i] * matrix.offdiag[i] : 0.0;
        double p = (nu - matrix.diag[i]) * pm1 - offsq * pm2;
        pm2 = pm1;
        pm1 = p;
        if (std::abs(pm1) > kRescaleLimit || std::abs(pm2) > kRescaleLimit) {
            const double scale = 1.0 / std::max(std::abs(pm1), std::abs(pm2));
            pm1 *= scale;
            pm2 *= scale;
        }
        seq.values[k] = pm1;
        const int sgn = (pm1 > 0.0) ? 1 : (pm1 < 0.0 ? -1 : -prev_sign);
        if (sgn == prev_sign) ++seq.sign_agreements;
        prev_sign = sgn;
    }
    return seq;
}

int sturm_count(const SectorMatrix& matrix, double nu) {
    Block b{matrix.diag.data(), matrix.offdiag.data(), matrix.dim()};
    return block_sturm_count(b, nu);
}

std::vector<double> eigenvalues_bisect(const SectorMatrix& matrix, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    Block b{matrix.diag.data(), matrix.offdiag.data(), matrix.dim()};
    return block_bisect(b, tol);
}

std::vector<double> eigenvector(const SectorMatrix& matrix, double nu) {
    Block b{matrix.diag.data(), matrix.offdiag.data(), matrix.dim()};
    return block_inverse_iteration(b, nu);
}

std::vector<double> eigenvector_recurrence(const SectorMatrix& matrix, double nu) {
    const int d = matrix.dim();
    const double tiny = 1e-12 * std::max(1.0, matrix.spectral_bound());
    std::vector<double> c(d);
    c[0] = 1.0;
    for (int i = 0; i + 1 < d; ++i) {
        if (std::abs(matrix.offdiag[i]) < tiny)
            throw std::runtime_error("recurrence breakdown: vanishing off-diagonal pivot");
        double next = (nu - matrix.diag[i]) * c[i];
        if (i > 0) next -= matrix.offdiag[i - 1] * c[i - 1];
        c[i + 1] = next / matrix.offdiag[i];
        if (std::abs(c[i + 1]) > kRescaleLimit)
            for (int k = 0; k <= i + 1; ++k) c[k] /= kRescaleLimit;
    }
    normalize_sign(c);
    return c;
}

Eigensystem diagonalize(const SectorMatrix& matrix, double tol) {
    const int d = matrix.dim();
    Eigensystem eig;
    eig.s = matrix.s;
    eig.eigenvalues.reserve(d);
    eig.vectors.assign(static_cast<std::size_t>(d) * d, 0.0);

    struct Entry {
        double value;
        int lo;
        std::vector<double> vec;
    };
    std::vector<Entry> entries;
    entries.reserve(d);

    const double scale = std::max(1.0, matrix.spectral_bound());
    // generous cluster width: orthogonalizing against well-separated
    // neighbours only strips O(eps * bound / gap) overlap, so widening the
    // window costs nothing and keeps pairwise dots at rounding level
    const double cluster_gap = 1e-4 * scale;

    int lo = 0;
    while (lo < d) {
        int hi = lo;
        while (hi + 1 < d && matrix.offdiag[hi] != 0.0) ++hi;
        ++hi;  // block is [lo, hi)
        Block b{matrix.diag.data() + lo, matrix.offdiag.data() + lo, hi - lo};
        std::vector<double> vals = block_bisect(b, tol);
        int cluster_start = 0;
        std::vector<std::vector<double>> vecs(b.d);
        for (int k = 0; k < b.d; ++k) {
            if (k > 0 && vals[k] - vals[k - 1] > cluster_gap) cluster_start = k;
            // orthogonalize inside a cluster of close eigenvalues; a (near-)
            // degenerate level can hand inverse iteration a vector already in
            // the span of its predecessors, in which case restart from basis
            // vectors until an independent direction survives
            for (int attempt = -1; attempt <= b.d; ++attempt) {
                vecs[k] = block_inverse_iteration(b, vals[k], attempt < 0 ? -1 : k + attempt);
                bool collapsed = false;
                for (int pass = 0; pass < 2 && cluster_start < k && !collapsed; ++pass) {
                    for (int j = cluster_start; j < k; ++j) {
                        double dot = std::inner_product(vecs[k].begin(), vecs[k].end(),
                                                        vecs[j].begin(), 0.0);
                        for (int i = 0; i < b.d; ++i) vecs[k][i] -= dot * vecs[j][i];
                    }
                    const double nrm = std::sqrt(std::inner_product(
                        vecs[k].begin(), vecs[k].end(), vecs[k].begin(), 0.0));
                    if (nrm < 1e-2) {
                        collapsed = true;
                        break;
                    }
                    normalize_sign(vecs[k]);
                }
                if (!collapsed) break;
                if (attempt == b.d)
                    throw std::runtime_error("could not complete a degenerate eigenbasis");
            }
            vals[k] = block_rayleigh(b, vecs[k]);
        }
        for (int k = 0; k < b.d; ++k)
            entries.push_back(Entry{vals[k], lo, std::move(vecs[k])});
        lo = hi;
    }

    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.value < b.value; });

    for (int k = 0; k < d; ++k) {
        eig.eigenvalues.push_back(entries[k].value);
        double* col = eig.vectors.data() + static_cast<std::size_t>(k) * d;
        const int blo = entries[k].lo;
        for (int i = 0; i < static_cast<int>(entries[k].vec.size()); ++i)
            col[blo + i] = entries[k].vec[i];
    }
    return eig;
}

}  // namespace dicke
