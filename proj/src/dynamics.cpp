#include "permseq/dynamics.hpp"

#include "permseq/detail/walk.hpp"
#include "permseq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace permseq {

namespace {

std::vector<BigInt> collect_period(const Mapping& map, const BigInt& x0, std::uint64_t length, Direction dir) {
    std::vector<BigInt> out;
    out.reserve(length);
    BigInt x = x0;
    for (std::uint64_t i = 0; i < length; ++i) {
        out.push_back(x);
        x = dir == Direction::forward ? map.apply(x) : map.apply_inv(x);
    }
    return out;
}

}  // namespace

TrajectoryOutcome run_trajectory(const Mapping& map, const BigInt& x0, const TrajectorySettings& settings,
                                 Direction direction) {
    const auto w = detail::walk(map, x0, settings, direction, [](std::uint64_t) {});
    switch (w.kind) {
        case detail::WalkResult::Kind::cycle: {
            CycleFound found{classify_cycle(collect_period(map, x0, w.steps, direction), map.class_modulus()), 0};
            if (!settings.keep_elements) found.cycle.elements.reset();
            return found;
        }
        case detail::WalkResult::Kind::escaped:
            return Escaped{w.last, w.steps, w.maxima, w.min_seen};
        case detail::WalkResult::Kind::step_limit:
            break;
    }
    return StepLimit{w.steps};
}

std::uint64_t count_local_maxima(std::span<const BigInt> x) {
    const std::size_t n = x.size();
    if (n < 2) return 0;
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const BigInt& prev = x[(i + n - 1) % n];
        const BigInt& next = x[(i + 1) % n];
        if (prev < x[i] && x[i] > next) ++m;
    }
    return m;
}

std::vector<std::size_t> local_minima_positions(std::span<const BigInt> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> out;
    if (n < 2) {
        if (n == 1) out.push_back(0);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const BigInt& prev = x[(i + n - 1) % n];
        const BigInt& next = x[(i + 1) % n];
        if (prev > x[i] && x[i] < next) out.push_back(i);
    }
    return out;
}

CycleRecord classify_cycle(std::span<const BigInt> elements, std::uint64_t modulus) {
    if (elements.empty()) throw ParameterError("classify_cycle: empty element list");
    if (modulus == 0) throw ParameterError("classify_cycle: modulus must be positive");
    {
        std::vector<BigInt> sorted(elements.begin(), elements.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw IntegrityError("classify_cycle: repeated element within one period");
        }
    }
    const auto min_it = std::min_element(elements.begin(), elements.end());
    std::vector<BigInt> rotated;
    rotated.reserve(elements.size());
    rotated.insert(rotated.end(), min_it, elements.end());
    rotated.insert(rotated.end(), elements.begin(), min_it);

    CycleRecord rec;
    rec.min = rotated.front();
    rec.max = *std::max_element(rotated.begin(), rotated.end());
    rec.length = rotated.size();
    for (const auto& x : rotated) {
        if (mpz_divisible_ui_p(x.get_mpz_t(), modulus)) {
            ++rec.L;
        } else {
            ++rec.K;
        }
    }
    rec.m = count_local_maxima(rotated);
    rec.elements = std::move(rotated);
    return rec;
}

MultiplicationFactors multiplication_factors(const PabcdParams& p, double fb, double fd) {
    const double a = static_cast<double>(p.a), b = static_cast<double>(p.b);
    const double c = static_cast<double>(p.c), d = static_cast<double>(p.d);
    MultiplicationFactors f;
    f.left_right = std::pow(d / b, fb) * std::pow((c * d) / (a * b), 1.0 - fb);
    f.right_left = std::pow(b / d, fd) * std::pow((a * b) / (c * d), 1.0 - fd);
    return f;
}

BranchStats branch_stats(std::span<const BigInt> elements, const PabcdParams& params) {
    if (elements.empty()) throw ParameterError("branch_stats: empty branch");
    std::uint64_t zb = 0, zd = 0;
    for (const auto& x : elements) {
        if (mpz_divisible_ui_p(x.get_mpz_t(), params.b)) ++zb;
        if (mpz_divisible_ui_p(x.get_mpz_t(), params.d)) ++zd;
    }
    BranchStats s;
    const double n = static_cast<double>(elements.size());
    s.frac_zero_mod_b = static_cast<double>(zb) / n;
    s.frac_zero_mod_d = static_cast<double>(zd) / n;
    s.factors = multiplication_factors(params, s.frac_zero_mod_b, s.frac_zero_mod_d);
    return s;
}

std::vector<BigInt> orbit_segment(const Mapping& map, const BigInt& x0, std::uint64_t steps, Direction direction) {
    std::vector<BigInt> out;
    out.reserve(steps + 1);
    out.push_back(x0);
    BigInt x = x0;
    for (std::uint64_t i = 0; i < steps; ++i) {
        x = direction == Direction::forward ? map.apply(x) : map.apply_inv(x);
        out.push_back(x);
    }
    return out;
}

}  // namespace permseq
