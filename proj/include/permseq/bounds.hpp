#pragma once

#include "permseq/dynamics.hpp"
#include "permseq/numerics.hpp"
#include "permseq/perm.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace permseq {

/// Derived constants for one P(a,b,c,d) (with b > d) and one numerical floor X0.
///
///   eps    = (ab-a-1) / (X0-ab+a+1)
///   alpha  = log(cd) - log(ab),  beta = log(b) - log(d),  rho = beta/alpha
///   delta1 = log_d(b) + 1
///   alpha1 = -ab/cd + ab - a - 1
///   gamma1 = ab/cd + alpha1 / X0^(delta1+1)
struct BoundContext {
    PabcdParams params;
    BigInt x0;
    unsigned precision = kDefaultPrecision;
    PrecReal eps, alpha, beta, rho, delta1, alpha1, gamma1;

    /// Throws ParameterError unless b > d, a(b-1) = c(d-1) and X0 > ab-a-1.
    /// With `strict`, also requires alpha > eps, delta1 > 1, alpha1 > 0 and
    /// ab/cd < gamma1 < 1.
    static BoundContext make(const PabcdParams& params, const BigInt& x0, unsigned precision = kDefaultPrecision,
                             bool strict = true);

    /// ab - a - 1, the largest residue offset in an increasing step.
    std::uint64_t slack() const { return params.a * params.b - params.a - 1; }
    /// ln beta1(m) with beta1 = gamma1^(((delta1+1)^(m-1) - 1) / delta1).
    PrecReal log_beta1(std::uint64_t m) const;
    PrecReal beta1(std::uint64_t m) const { return exp(log_beta1(m)); }
};

/// Lower bound |Lambda| > exp(-c_mult * (c_add + ln L)) from Rhin's estimate for
/// linear forms in log 2 and log 3.
struct RhinParams {
    PrecReal c_mult{PrecReal(13.3)};
    PrecReal c_add;
    /// Coefficients (k, l) of the dominating height form H = k*K + l*L.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> h_coeff;
};

/// c_add = ln(k*beta/(alpha-eps) + l) for the largest height form of Lambda in
/// log 2 and log 3; nullopt when ab, cd, b or d has a prime factor other than
/// 2 or 3 (only general Baker-type bounds would apply).
std::optional<RhinParams> rhin_params_for(const BoundContext& ctx);
RhinParams rhin_params_fixed(double c_add);

PrecReal lambda_form(const BoundContext& ctx, const BigInt& K, const BigInt& L);
/// 0 < |Lambda| < eps*K.
bool laubk_check(const BoundContext& ctx, const BigInt& K, const BigInt& L);
/// 0 < Lambda < eps*beta/(alpha-eps)*L, or 0 < -Lambda < eps*beta/alpha*L.
bool laubl_check(const BoundContext& ctx, const BigInt& K, const BigInt& L);

/// beta/(alpha-eps) * L * (1+eps)(ab-a-1) / (d^(L/m) / beta1)^(1/(delta1+1)^(m-1)).
PrecReal ublm_bound(const BoundContext& ctx, const PrecReal& L, std::uint64_t m);
PrecReal log_ublm_bound(const BoundContext& ctx, const PrecReal& L, std::uint64_t m);

PrecReal rhin_lower_bound(const RhinParams& params, const PrecReal& L);
PrecReal log_rhin_lower_bound(const RhinParams& params, const PrecReal& L);

/// Convergents of rho up to q_limit (plus the first beyond).
std::vector<Convergent> rho_convergents(const BoundContext& ctx, const BigInt& q_limit);

/// Largest convergent denominator q_n with
/// q_n + q_{n+1} <= alpha(alpha-eps)/beta * (X0-ab+a+1)/(ab-a-1) / q_n,
/// so that every cycle with elements above X0 has L > q_n.
BigInt min_cycle_length_lower_bound(const BoundContext& ctx);

inline constexpr unsigned kReferencePartialQuotient = 55;

struct CrossoverRow {
    std::uint64_t m = 0;
    PrecReal x3;  ///< rhin_lower_bound = ublm_bound
    PrecReal x1;  ///< ublm_bound = alpha / (2x)
    PrecReal x2;  ///< ublm_bound = alpha / ((amax + 2) x)
    BigInt l_max;  ///< ceil(x3): L <= l_max
    BigInt l1;     ///< ceil(x1)
    BigInt l2;     ///< floor(x2)
    BigInt amax;
    bool amax_is_reference = true;  ///< amax == 55
};

/// Largest partial quotient of rho among convergents with q <= x3(m_ref).
BigInt reduction_partial_quotient(const BoundContext& ctx, const RhinParams& rhin, std::uint64_t m_ref = 20);

PrecReal crossover_x3(const BoundContext& ctx, const RhinParams& rhin, std::uint64_t m);
PrecReal crossover_x1(const BoundContext& ctx, std::uint64_t m);
PrecReal crossover_x2(const BoundContext& ctx, std::uint64_t m, const BigInt& amax);

/// All three cross-overs for one m. When `amax` is not given it is measured
/// over q <= x3(max(m, 20)).
CrossoverRow crossover_tables(const BoundContext& ctx, const RhinParams& rhin, std::uint64_t m,
                              std::optional<BigInt> amax = std::nullopt);

struct KLPair {
    BigInt K;
    std::uint64_t L = 0;
    friend bool operator==(const KLPair&, const KLPair&) = default;
};

/// (K, L) pairs passing laubl_check for L in [l_min, l_max]; K ranges over
/// round(rho*L) - 1 .. round(rho*L) + 1, which contains every passing K.
std::vector<KLPair> candidate_scan(const BoundContext& ctx, std::uint64_t l_min, std::uint64_t l_max);

struct ExclusionReport {
    std::uint64_t m = 0;
    BigInt l_floor;  ///< cycles above X0 have L > l_floor
    CrossoverRow row;
    std::vector<Convergent> window_convergents;  ///< l1 <= q <= l2, q > l_floor
    std::vector<KLPair> candidates;              ///< LaubL pairs with l_floor < L < l1
    std::vector<CycleRecord> census_cycles;      ///< census cycles with this m
    bool no_cycles_above_x0 = false;
    std::string conclusion;
};

ExclusionReport mcycle_exclusion_report(const BoundContext& ctx, const RhinParams& rhin, std::uint64_t m,
                                        std::span<const CycleRecord> census_cycles,
                                        std::optional<BigInt> amax = std::nullopt);

/// Checks a found cycle against the LaubK / LaubL bounds with the constants
/// recomputed at X0' = min - 1. nullopt when min - 1 <= ab - a - 1.
struct CycleBoundCheck {
    bool laubk = false;
    std::optional<bool> laubl;  ///< nullopt when alpha <= eps at X0'
    std::optional<bool> chain;  ///< max/min chain inequality over local minima; nullopt for one minimum
};

std::optional<CycleBoundCheck> check_cycle_bounds(const PabcdParams& params, const CycleRecord& cycle);

}  // namespace permseq
