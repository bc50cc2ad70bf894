#include "scc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scc/analytic.hpp"
#include "scc/errors.hpp"

namespace scc {

namespace {

void require_graph_params(int n, int r) {
    if (r < 1 || r >= n)
        throw std::invalid_argument("J(n, r) walk quantities need 1 <= r < n (got n=" +
                                    std::to_string(n) + ", r=" + std::to_string(r) + ")");
}

std::uint64_t checked_draw_count(int n, int r) {
    const std::uint64_t total = binomial_u64(n, r);
    if (total > kMissEnumLimit)
        throw CapacityError("C(" + std::to_string(n) + ", " + std::to_string(r) + ") = " +
                            std::to_string(total) + " draws exceed the enumeration limit " +
                            std::to_string(kMissEnumLimit));
    return total;
}

} // namespace

Rational exact_miss_prob(int n, int r, const std::vector<CouponSet>& family) {
    if (n < 1) throw std::invalid_argument("exact_miss_prob needs n >= 1");
    if (r < 0 || r > n) throw std::invalid_argument("exact_miss_prob needs 0 <= r <= n");
    for (const CouponSet& f : family)
        if (!f.ids().empty() && (f.ids().front() < 0 || f.ids().back() >= n))
            throw std::invalid_argument("family member outside universe [0, n)");

    const std::uint64_t total = checked_draw_count(n, r);
    std::uint64_t misses = 0;
    for_each_combination(n, r, [&](std::span<const int> draw) {
        for (const CouponSet& f : family) {
            if (std::includes(draw.begin(), draw.end(), f.ids().begin(), f.ids().end()))
                return; // hit: not a miss
        }
        ++misses;
    });
    return Rational(misses, total);
}

Rational exact_expected_T(int n, int r, int s, const StopRule& rule) {
    require_model_params(n, r, s);
    if (rule.kind() != StopRule::Kind::All)
        throw std::invalid_argument(
            "exact_expected_T covers the collect-all rule only; the fraction rule is not an "
            "intersection of per-coupon events");
    const std::uint64_t m_wide = binomial_u64(n, s);
    if (m_wide > static_cast<std::uint64_t>(kInclExclFamilyLimit))
        throw CapacityError("inclusion-exclusion over m = " + std::to_string(m_wide) +
                            " super-coupons exceeds the family limit " +
                            std::to_string(kInclExclFamilyLimit));
    const int m = static_cast<int>(m_wide);
    const std::uint64_t total = checked_draw_count(n, r);

    // Family in colex order; membership tests below use sorted inclusion.
    std::vector<CouponSet> family;
    family.reserve(static_cast<std::size_t>(m));
    for (std::uint64_t i = 0; i < m_wide; ++i)
        family.push_back(unrank_colex(i, s, n));

    // One pass over all draws: f[mask] first counts draws whose hit-set is
    // exactly `mask`, then a subset-sum (zeta) transform turns it into the
    // number of draws whose hit-set is contained in `mask`.
    std::vector<std::uint32_t> f(static_cast<std::size_t>(1) << m, 0);
    for_each_combination(n, r, [&](std::span<const int> draw) {
        std::uint32_t mask = 0;
        for (int i = 0; i < m; ++i) {
            const auto& ids = family[static_cast<std::size_t>(i)].ids();
            if (std::includes(draw.begin(), draw.end(), ids.begin(), ids.end()))
                mask |= 1u << i;
        }
        ++f[mask];
    });
    for (int b = 0; b < m; ++b) {
        const std::size_t bit = static_cast<std::size_t>(1) << b;
        for (std::size_t mask = 0; mask < f.size(); ++mask)
            if (mask & bit) f[mask] += f[mask ^ bit];
    }

    // E T = sum over nonempty subfamilies J of (-1)^{|J|+1} / (1 - q_J) with
    // q_J = P(one draw misses all of J) = f[complement of J] / total. Group
    // the signed terms by the avoid count a = f[K]: every J with the same a
    // contributes total / (total - a) up to sign.
    const std::size_t full = (static_cast<std::size_t>(1) << m) - 1;
    std::vector<std::int64_t> coeff(total + 1, 0);
    for (std::size_t k_mask = 0; k_mask < full; ++k_mask) {
        const int j_size = m - std::popcount(k_mask);
        coeff[f[k_mask]] += (j_size % 2 == 1) ? 1 : -1;
    }

    Rational result = 0;
    for (std::uint64_t a = 0; a <= total; ++a) {
        if (coeff[a] == 0) continue;
        // a < total always: any nonempty subfamily is hit by some draw.
        result += Rational(BigInt(coeff[a]) * total, BigInt(total - a));
    }
    return result;
}

const Rational& HittingProfile::at(int k) const {
    if (k < k_min || k > r)
        throw std::out_of_range("hitting time index " + std::to_string(k) + " outside [" +
                                std::to_string(k_min) + ", " + std::to_string(r) + "]");
    return h[static_cast<std::size_t>(k - k_min)];
}

double HittingProfile::at_d(int k) const { return rational_to_double(at(k)); }

HittingProfile hitting_profile(int n, int r) {
    require_graph_params(n, r);
    const int k_min = std::max(0, 2 * r - n);
    const int u = r - k_min; // unknowns h_k, k in [k_min, r - 1]
    const Rational steps = r * (n - r);

    // Tridiagonal first-step system, exact Thomas elimination. Row i is
    // intersection size k = k_min + i:
    //   -A_k h_{k-1} + (A_k + C_k) h_k - C_k h_{k+1} = r (n - r)
    // A_{k_min} = 0 closes the left edge; h_r = 0 closes the right.
    std::vector<Rational> diag(static_cast<std::size_t>(u)), lower(static_cast<std::size_t>(u)),
        upper(static_cast<std::size_t>(u)), rhs(static_cast<std::size_t>(u), steps);
    for (int i = 0; i < u; ++i) {
        const int k = k_min + i;
        const long long A = static_cast<long long>(k) * (n - 2 * r + k);
        const long long C = static_cast<long long>(r - k) * (r - k);
        diag[static_cast<std::size_t>(i)] = A + C;
        lower[static_cast<std::size_t>(i)] = -A;
        upper[static_cast<std::size_t>(i)] = -C;
    }
    for (int i = 1; i < u; ++i) {
        const Rational factor =
            lower[static_cast<std::size_t>(i)] / diag[static_cast<std::size_t>(i - 1)];
        diag[static_cast<std::size_t>(i)] -= factor * upper[static_cast<std::size_t>(i - 1)];
        rhs[static_cast<std::size_t>(i)] -= factor * rhs[static_cast<std::size_t>(i - 1)];
    }

    HittingProfile out;
    out.n = n;
    out.r = r;
    out.k_min = k_min;
    out.h.assign(static_cast<std::size_t>(u) + 1, 0); // h[r] = 0
    for (int i = u - 1; i >= 0; --i) {
        Rational v = rhs[static_cast<std::size_t>(i)] -
                     upper[static_cast<std::size_t>(i)] * out.h[static_cast<std::size_t>(i + 1)];
        out.h[static_cast<std::size_t>(i)] = v / diag[static_cast<std::size_t>(i)];
    }
    return out;
}

XProfile x_profile(int n, int r) {
    const HittingProfile hp = hitting_profile(n, r);
    XProfile out;
    out.k_lo = hp.k_min + 1;
    out.x.reserve(hp.h.size() - 1);
    for (std::size_t i = 1; i < hp.h.size(); ++i) out.x.push_back(hp.h[i] - hp.h[i - 1]);
    return out;
}

double harmonic_number(std::uint64_t v) {
    if (v == 0) return 0;
    if (v <= 100'000'000ULL) {
        double sum = 0;
        for (std::uint64_t i = v; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
        return sum;
    }
    const double x = static_cast<double>(v);
    return std::log(x) + kEulerGamma + 1 / (2 * x) - 1 / (12 * x * x);
}

CoverBounds matthews_bounds(int n, int r) {
    const HittingProfile hp = hitting_profile(n, r);
    const std::uint64_t vertices = binomial_u64(n, r);
    CoverBounds out;
    out.harmonic = harmonic_number(vertices);
    // Extremes over ordered distinct-vertex pairs, i.e. k in [k_min, r - 1].
    Rational lo = hp.h.front(), hi = hp.h.front();
    for (std::size_t i = 1; i + 1 < hp.h.size(); ++i) {
        lo = std::min(lo, hp.h[i]);
        hi = std::max(hi, hp.h[i]);
    }
    out.lower = out.harmonic * rational_to_double(lo);
    out.upper = out.harmonic * rational_to_double(hi);
    return out;
}

double exact_T_rw_rs(int n, int r) {
    require_graph_params(n, r);
    const std::uint64_t vcount = binomial_u64(n, r);
    if (vcount > kCoverDpVertexLimit)
        throw CapacityError("cover-time DP over " + std::to_string(vcount) +
                            " vertices exceeds the limit " + std::to_string(kCoverDpVertexLimit));
    const int V = static_cast<int>(vcount);
    const int deg = r * (n - r);

    // Vertices as element bitmasks; adjacency = one-swap (intersection r - 1).
    std::vector<std::uint64_t> vmask(static_cast<std::size_t>(V));
    for (int v = 0; v < V; ++v) {
        const CouponSet cs = unrank_colex(static_cast<SubsetRank>(v), r, n);
        std::uint64_t mask = 0;
        for (int id : cs.ids()) mask |= 1ULL << id;
        vmask[static_cast<std::size_t>(v)] = mask;
    }
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(V));
    for (int a = 0; a < V; ++a)
        for (int b = 0; b < V; ++b)
            if (a != b && std::popcount(vmask[static_cast<std::size_t>(a)] &
                                        vmask[static_cast<std::size_t>(b)]) == r - 1)
                adj[static_cast<std::size_t>(a)].push_back(b);

    // g[M][v] = expected steps to visit every vertex, standing at v with
    // visited set M (v in M). Masks are processed in descending order: adding
    // a vertex always increases the mask, so cross-mask references are ready.
    const std::size_t masks = static_cast<std::size_t>(1) << V;
    std::vector<long double> g(masks * static_cast<std::size_t>(V), 0.0L);
    std::vector<int> verts;
    std::vector<long double> a_mat, b_vec;
    for (std::size_t M = masks - 2; M >= 1; --M) {
        verts.clear();
        for (int v = 0; v < V; ++v)
            if (M & (static_cast<std::size_t>(1) << v)) verts.push_back(v);
        const int t = static_cast<int>(verts.size());

        // Row i: g[vi] - (1/deg) sum_{w in adj(vi) cap M} g[w]
        //      = 1 + (1/deg) sum_{w in adj(vi) \ M} g[M + w][w]
        a_mat.assign(static_cast<std::size_t>(t) * static_cast<std::size_t>(t), 0.0L);
        b_vec.assign(static_cast<std::size_t>(t), 1.0L);
        for (int i = 0; i < t; ++i) {
            a_mat[static_cast<std::size_t>(i) * t + i] = 1.0L;
            for (int w : adj[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])]) {
                if (M & (static_cast<std::size_t>(1) << w)) {
                    const int j = static_cast<int>(
                        std::lower_bound(verts.begin(), verts.end(), w) - verts.begin());
                    a_mat[static_cast<std::size_t>(i) * t + j] -= 1.0L / deg;
                } else {
                    const std::size_t M2 = M | (static_cast<std::size_t>(1) << w);
                    b_vec[static_cast<std::size_t>(i)] +=
                        g[M2 * V + static_cast<std::size_t>(w)] / deg;
                }
            }
        }

        // Gaussian elimination with partial pivoting, t <= 12.
        for (int col = 0; col < t; ++col) {
            int piv = col;
            for (int row = col + 1; row < t; ++row)
                if (std::fabs(static_cast<double>(a_mat[static_cast<std::size_t>(row) * t + col])) >
                    std::fabs(static_cast<double>(a_mat[static_cast<std::size_t>(piv) * t + col])))
                    piv = row;
            if (piv != col) {
                for (int c = 0; c < t; ++c)
                    std::swap(a_mat[static_cast<std::size_t>(col) * t + c],
                              a_mat[static_cast<std::size_t>(piv) * t + c]);
                std::swap(b_vec[static_cast<std::size_t>(col)], b_vec[static_cast<std::size_t>(piv)]);
            }
            const long double d = a_mat[static_cast<std::size_t>(col) * t + col];
            for (int row = col + 1; row < t; ++row) {
                const long double factor = a_mat[static_cast<std::size_t>(row) * t + col] / d;
                if (factor == 0.0L) continue;
                for (int c = col; c < t; ++c)
                    a_mat[static_cast<std::size_t>(row) * t + c] -=
                        factor * a_mat[static_cast<std::size_t>(col) * t + c];
                b_vec[static_cast<std::size_t>(row)] -= factor * b_vec[static_cast<std::size_t>(col)];
            }
        }
        for (int row = t - 1; row >= 0; --row) {
            long double acc = b_vec[static_cast<std::size_t>(row)];
            for (int c = row + 1; c < t; ++c)
                acc -= a_mat[static_cast<std::size_t>(row) * t + c] *
                       g[M * V + static_cast<std::size_t>(verts[static_cast<std::size_t>(c)])];
            g[M * V + static_cast<std::size_t>(verts[static_cast<std::size_t>(row)])] =
                acc / a_mat[static_cast<std::size_t>(row) * t + row];
        }
    }

    long double total = 0;
    for (int v = 0; v < V; ++v)
        total += g[(static_cast<std::size_t>(1) << v) * V + static_cast<std::size_t>(v)];
    return 1.0 + static_cast<double>(total / V);
}

} // namespace scc
