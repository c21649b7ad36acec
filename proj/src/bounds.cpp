#include "permseq/bounds.hpp"

#include "permseq/errors.hpp"

#include <algorithm>
#include <sstream>

namespace permseq {

namespace {

BigRational ratio(std::uint64_t num, std::uint64_t den) {
    BigRational q(to_big(num), to_big(den));
    q.canonicalize();
    return q;
}

// Exponents (i, j) with n = 2^i 3^j, or nullopt.
std::optional<std::pair<long, long>> smooth23(std::uint64_t n) {
    if (n == 0) return std::nullopt;
    long i = 0, j = 0;
    while (n % 2 == 0) n /= 2, ++i;
    while (n % 3 == 0) n /= 3, ++j;
    if (n != 1) return std::nullopt;
    return std::make_pair(i, j);
}

PrecReal ln(const PrecReal& x) { return log(x); }

void require_m(std::uint64_t m, const char* where) {
    if (m == 0) throw ParameterError(std::string(where) + ": m must be at least 1");
}

void require_alpha_gap(const BoundContext& ctx, const char* where) {
    if (!(ctx.alpha > ctx.eps)) throw ParameterError(std::string(where) + ": alpha <= eps at this X0");
}

}  // namespace

BoundContext BoundContext::make(const PabcdParams& p, const BigInt& x0, unsigned precision, bool strict) {
    if (p.a == 0 || p.c == 0 || p.d < 2) throw ParameterError("BoundContext: a, c >= 1 and d >= 2 required");
    if (p.b <= p.d) throw ParameterError("BoundContext: b > d required");
    if (p.a * (p.b - 1) != p.c * (p.d - 1)) throw ParameterError("BoundContext: a(b-1) != c(d-1)");

    BoundContext ctx;
    ctx.params = p;
    ctx.x0 = x0;
    ctx.precision = precision;
    const std::uint64_t ab = p.a * p.b, cd = p.c * p.d, s = ctx.slack();
    if (s == 0) throw ParameterError("BoundContext: ab - a - 1 = 0 gives no bounds");
    if (x0 <= to_big(s)) throw ParameterError("BoundContext: X0 must exceed ab - a - 1");

    BigRational eps(to_big(s), x0 - to_big(s));
    eps.canonicalize();
    ctx.eps = PrecReal(eps, precision);
    ctx.alpha = hp_log(ratio(cd, ab), precision);
    ctx.beta = hp_log(ratio(p.b, p.d), precision);
    ctx.rho = ctx.beta / ctx.alpha;
    ctx.delta1 = hp_log(BigRational(to_big(p.b)), precision) / hp_log(BigRational(to_big(p.d)), precision) +
                 PrecReal(1L, precision);
    const BigRational ab_cd = ratio(ab, cd);
    ctx.alpha1 = PrecReal(BigRational(to_big(s)) - ab_cd, precision);
    const PrecReal x0r(x0, precision);
    ctx.gamma1 = PrecReal(ab_cd, precision) +
                 ctx.alpha1 / exp((ctx.delta1 + PrecReal(1L, precision)) * log(x0r));

    if (strict) {
        const PrecReal one(1L, precision);
        if (!(ctx.alpha > ctx.eps)) throw ParameterError("BoundContext: alpha <= eps; raise X0");
        if (!(ctx.delta1 > one)) throw ParameterError("BoundContext: delta1 <= 1");
        if (!(ctx.alpha1.sign() > 0)) throw ParameterError("BoundContext: alpha1 <= 0");
        if (!(ctx.gamma1 > PrecReal(ab_cd, precision) && ctx.gamma1 < one)) {
            throw ParameterError("BoundContext: gamma1 outside (ab/cd, 1); raise X0");
        }
    }
    return ctx;
}

PrecReal BoundContext::log_beta1(std::uint64_t m) const {
    require_m(m, "log_beta1");
    const PrecReal one(1L, precision);
    const PrecReal growth = pow(delta1 + one, PrecReal(static_cast<double>(m - 1), precision));
    return (growth - one) / delta1 * log(gamma1);
}

std::optional<RhinParams> rhin_params_for(const BoundContext& ctx) {
    const auto& p = ctx.params;
    const auto ab = smooth23(p.a * p.b), cd = smooth23(p.c * p.d), b = smooth23(p.b), d = smooth23(p.d);
    if (!ab || !cd || !b || !d) return std::nullopt;
    require_alpha_gap(ctx, "rhin_params_for");

    // Lambda = K log(cd/ab) - L log(b/d) = (eK2 K + eL2 L) log 2 + (eK3 K + eL3 L) log 3.
    const long eK2 = cd->first - ab->first, eL2 = d->first - b->first;
    const long eK3 = cd->second - ab->second, eL3 = d->second - b->second;
    const PrecReal slope = ctx.beta / (ctx.alpha - ctx.eps);  // K < slope * L
    RhinParams out;
    PrecReal best(0L, ctx.precision);
    for (auto [k, l] : {std::pair{std::labs(eK2), std::labs(eL2)}, std::pair{std::labs(eK3), std::labs(eL3)}}) {
        if (k == 0 && l == 0) continue;
        const PrecReal h = PrecReal(k, ctx.precision) * slope + PrecReal(l, ctx.precision);
        if (h > best) {
            best = h;
            out.h_coeff = std::make_pair(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(l));
        }
    }
    if (!out.h_coeff) return std::nullopt;
    out.c_mult = PrecReal(13.3, ctx.precision);
    out.c_add = log(best);
    return out;
}

RhinParams rhin_params_fixed(double c_add) {
    RhinParams out;
    out.c_add = PrecReal(c_add);
    return out;
}

PrecReal lambda_form(const BoundContext& ctx, const BigInt& K, const BigInt& L) {
    return ctx.alpha * PrecReal(K, ctx.precision) - ctx.beta * PrecReal(L, ctx.precision);
}

bool laubk_check(const BoundContext& ctx, const BigInt& K, const BigInt& L) {
    const PrecReal lam = abs(lambda_form(ctx, K, L));
    return lam.sign() > 0 && lam < ctx.eps * PrecReal(K, ctx.precision);
}

bool laubl_check(const BoundContext& ctx, const BigInt& K, const BigInt& L) {
    const PrecReal lam = lambda_form(ctx, K, L);
    const PrecReal scaled = ctx.eps * ctx.beta * PrecReal(L, ctx.precision);
    if (lam.sign() > 0) {
        if (!(ctx.alpha > ctx.eps)) return true;  // no constraint
        return lam < scaled / (ctx.alpha - ctx.eps);
    }
    if (lam.sign() < 0) return -lam < scaled / ctx.alpha;
    return false;
}

PrecReal log_ublm_bound(const BoundContext& ctx, const PrecReal& L, std::uint64_t m) {
    require_m(m, "ublm_bound");
    require_alpha_gap(ctx, "ublm_bound");
    if (!(L.sign() > 0)) throw DomainError("ublm_bound: L must be positive");
    const unsigned prec = std::max(ctx.precision, L.precision());
    const PrecReal one(1L, prec);
    const PrecReal mr(static_cast<double>(m), prec);
    const PrecReal spread = pow(ctx.delta1 + one, PrecReal(static_cast<double>(m - 1), prec));
    const PrecReal ln_d = hp_log(BigRational(to_big(ctx.params.d)), prec);
    const PrecReal front = ln(ctx.beta / (ctx.alpha - ctx.eps)) + ln(L) +
                           ln((one + ctx.eps) * PrecReal(static_cast<long>(ctx.slack()), prec));
    return front - (L / mr * ln_d - ctx.log_beta1(m)) / spread;
}

PrecReal ublm_bound(const BoundContext& ctx, const PrecReal& L, std::uint64_t m) {
    if (L.is_zero()) return PrecReal(0L, ctx.precision);
    return exp(log_ublm_bound(ctx, L, m));
}

PrecReal log_rhin_lower_bound(const RhinParams& params, const PrecReal& L) {
    if (!(L.sign() > 0)) throw DomainError("rhin_lower_bound: L must be positive");
    return -(params.c_mult * (params.c_add + ln(L)));
}

PrecReal rhin_lower_bound(const RhinParams& params, const PrecReal& L) { return exp(log_rhin_lower_bound(params, L)); }

std::vector<Convergent> rho_convergents(const BoundContext& ctx, const BigInt& q_limit) {
    // A convergent p/q of a float is only trustworthy while 2 log2(q) stays
    // well below the working precision.
    const std::size_t bits = mpz_sizeinbase(q_limit.get_mpz_t(), 2);
    if (2 * bits + 64 > ctx.precision) {
        const BoundContext wide = BoundContext::make(ctx.params, ctx.x0, static_cast<unsigned>(2 * bits + 128), false);
        return cf_expand(wide.rho, q_limit);
    }
    return cf_expand(ctx.rho, q_limit);
}

BigInt min_cycle_length_lower_bound(const BoundContext& ctx) {
    require_alpha_gap(ctx, "min_cycle_length_lower_bound");
    const PrecReal scale = PrecReal(BigInt(ctx.x0 - to_big(ctx.slack())), ctx.precision) /
                           PrecReal(static_cast<long>(ctx.slack()), ctx.precision);
    const PrecReal T = ctx.alpha * (ctx.alpha - ctx.eps) / ctx.beta * scale;
    const BigInt q_limit = sqrt(T).floor() + 1;
    const auto conv = rho_convergents(ctx, q_limit);
    BigInt best = 0;
    for (std::size_t n = 0; n + 1 < conv.size(); ++n) {
        const BigInt lhs = (conv[n].q + conv[n + 1].q) * conv[n].q;
        if (!(PrecReal(lhs, ctx.precision) <= T)) break;
        best = conv[n].q;
    }
    return best;
}

PrecReal crossover_x3(const BoundContext& ctx, const RhinParams& rhin, std::uint64_t m) {
    require_m(m, "crossover_x3");
    return solve_crossover([&](const PrecReal& x) { return log_rhin_lower_bound(rhin, x); },
                           [&](const PrecReal& x) { return log_ublm_bound(ctx, x, m); },
                           PrecReal(2L, ctx.precision));
}

namespace {

PrecReal crossover_alpha_over(const BoundContext& ctx, std::uint64_t m, const BigInt& k) {
    require_m(m, "crossover");
    const PrecReal ln_alpha_k = log(ctx.alpha) - log(PrecReal(k, ctx.precision));
    return solve_crossover([&](const PrecReal& x) { return log_ublm_bound(ctx, x, m); },
                           [&](const PrecReal& x) { return ln_alpha_k - log(x); }, PrecReal(2L, ctx.precision));
}

}  // namespace

PrecReal crossover_x1(const BoundContext& ctx, std::uint64_t m) { return crossover_alpha_over(ctx, m, 2); }

PrecReal crossover_x2(const BoundContext& ctx, std::uint64_t m, const BigInt& amax) {
    return crossover_alpha_over(ctx, m, amax + 2);
}

BigInt reduction_partial_quotient(const BoundContext& ctx, const RhinParams& rhin, std::uint64_t m_ref) {
    const BigInt q_limit = crossover_x3(ctx, rhin, m_ref).floor();
    BigInt best = 0;
    for (const auto& c : rho_convergents(ctx, q_limit)) {
        if (c.q > q_limit) break;
        if (c.a > best) best = c.a;
    }
    return best;
}

CrossoverRow crossover_tables(const BoundContext& ctx, const RhinParams& rhin, std::uint64_t m,
                              std::optional<BigInt> amax) {
    require_m(m, "crossover_tables");
    CrossoverRow row;
    row.m = m;
    row.amax = amax ? *amax : reduction_partial_quotient(ctx, rhin, std::max<std::uint64_t>(m, 20));
    row.amax_is_reference = row.amax == kReferencePartialQuotient;
    row.x3 = crossover_x3(ctx, rhin, m);
    row.x1 = crossover_x1(ctx, m);
    row.x2 = crossover_x2(ctx, m, row.amax);
    row.l_max = row.x3.ceil();
    row.l1 = row.x1.ceil();
    row.l2 = row.x2.floor();
    return row;
}

std::vector<KLPair> candidate_scan(const BoundContext& ctx, std::uint64_t l_min, std::uint64_t l_max) {
    std::vector<KLPair> out;
    const PrecReal half(0.5, ctx.precision);
    for (std::uint64_t L = std::max<std::uint64_t>(l_min, 1); L <= l_max; ++L) {
        const BigInt Lb = to_big(L);
        const BigInt k0 = (ctx.rho * PrecReal(Lb, ctx.precision) + half).floor();
        for (BigInt K = k0 - 1; K <= k0 + 1; ++K) {
            if (sgn(K) > 0 && laubl_check(ctx, K, Lb)) out.push_back({K, L});
        }
    }
    return out;
}

ExclusionReport mcycle_exclusion_report(const BoundContext& ctx, const RhinParams& rhin, std::uint64_t m,
                                        std::span<const CycleRecord> census_cycles, std::optional<BigInt> amax) {
    ExclusionReport r;
    r.m = m;
    r.l_floor = min_cycle_length_lower_bound(ctx);
    r.row = crossover_tables(ctx, rhin, m, std::move(amax));
    for (const auto& c : census_cycles) {
        if (c.m == m) r.census_cycles.push_back(c);
    }

    if (r.l_floor < r.row.l2) {
        for (const auto& c : rho_convergents(ctx, r.row.l2)) {
            if (c.q >= r.row.l1 && c.q <= r.row.l2 && c.q > r.l_floor) r.window_convergents.push_back(c);
        }
        const BigInt lo = r.l_floor + 1, hi = r.row.l1 - 1;
        if (lo <= hi) {
            const auto lo64 = to_u64(lo), hi64 = to_u64(hi);
            if (!lo64 || !hi64) throw ResourceError("mcycle_exclusion_report: L window too large to scan");
            r.candidates = candidate_scan(ctx, *lo64, *hi64);
        }
    }
    r.no_cycles_above_x0 = r.window_convergents.empty() && r.candidates.empty();

    std::ostringstream s;
    s << "m=" << m << ": ";
    if (r.no_cycles_above_x0) {
        s << "no cycle with all elements >= " << ctx.x0.get_str() << " has " << m << " local maxima";
    } else {
        s << "cycles with all elements >= " << ctx.x0.get_str() << " need (K,L) among";
        for (const auto& c : r.window_convergents) s << " (" << c.p.get_str() << "," << c.q.get_str() << ")";
        std::size_t shown = 0;
        for (const auto& c : r.candidates) {
            if (shown++ == 8) {
                s << " ... (" << r.candidates.size() << " pairs in L < " << r.row.l1.get_str() << ")";
                break;
            }
            s << " (" << c.K.get_str() << "," << c.L << ")";
        }
    }
    s << "; census cycles with m=" << m << ":";
    if (r.census_cycles.empty()) s << " none";
    for (const auto& c : r.census_cycles) {
        s << " (" << c.min.get_str() << "," << c.max.get_str() << "," << c.length << ")";
    }
    r.conclusion = s.str();
    return r;
}

std::optional<CycleBoundCheck> check_cycle_bounds(const PabcdParams& params, const CycleRecord& cycle) {
    if (!cycle.elements) throw ParameterError("check_cycle_bounds: cycle elements required");
    const BigInt x0 = cycle.min - 1;
    const std::uint64_t s = params.a * params.b - params.a - 1;
    if (x0 <= to_big(s)) return std::nullopt;
    const BoundContext ctx = BoundContext::make(params, x0, kDefaultPrecision, false);

    CycleBoundCheck out;
    const BigInt K = to_big(cycle.K), L = to_big(cycle.L);
    out.laubk = laubk_check(ctx, K, L);
    if (ctx.alpha > ctx.eps) out.laubl = laubl_check(ctx, K, L);

    const auto& xs = *cycle.elements;
    const auto minima = local_minima_positions(xs);
    if (minima.size() > 1) {
        BigInt lo = xs[minima.front()], hi = lo;
        for (auto i : minima) {
            lo = std::min(lo, xs[i]);
            hi = std::max(hi, xs[i]);
        }
        const std::uint64_t m = minima.size();
        const PrecReal one(1L, ctx.precision);
        const PrecReal spread = pow(ctx.delta1 + one, PrecReal(static_cast<double>(m - 1), ctx.precision));
        const PrecReal rhs = ctx.log_beta1(m) + spread * log(PrecReal(lo, ctx.precision));
        out.chain = log(PrecReal(hi, ctx.precision)) < rhs;
    }
    return out;
}

}  // namespace permseq
