#include "permseq/perm.hpp"

#include "permseq/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace permseq {

namespace {

constexpr std::uint64_t kTableLcmLimit = 1u << 20;

std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y, const char* what) {
    const unsigned __int128 r = static_cast<unsigned __int128>(x) * y;
    if (r > (static_cast<unsigned __int128>(1) << 62)) throw ParameterError(std::string(what) + ": parameters too large");
    return static_cast<std::uint64_t>(r);
}

std::string params_text(std::initializer_list<std::uint64_t> v) {
    std::string s;
    for (auto x : v) {
        if (!s.empty()) s += ',';
        s += std::to_string(x);
    }
    return s;
}

std::string order_text(std::span<const std::size_t> order) {
    std::string s = "{";
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(order[i]);
    }
    return s + "}";
}

bool is_permutation_of_iota(std::span<const std::size_t> order) {
    std::vector<bool> seen(order.size(), false);
    for (auto v : order) {
        if (v >= order.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

}  // namespace

std::vector<ResidueClass> PermSpec::sources() const {
    std::vector<ResidueClass> out;
    out.reserve(rules.size());
    for (const auto& r : rules) out.push_back(r.source());
    return out;
}

std::vector<ResidueClass> PermSpec::targets() const {
    std::vector<ResidueClass> out;
    out.reserve(rules.size());
    for (const auto& r : rules) out.push_back(r.target());
    return out;
}

std::string BijectionReport::describe() const {
    return std::string(valid() ? "bijection" : "not a bijection") + "; sources: " + sources.describe() +
           "; targets: " + targets.describe();
}

BijectionReport verify_bijection(const PermSpec& spec) {
    if (spec.rules.empty()) throw ParameterError("verify_bijection: spec has no rules");
    const auto src = spec.sources();
    const auto dst = spec.targets();
    return {ccset_validate(src), ccset_validate(dst)};
}

PermSpec make_pabcd(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    if (a == 0 || c == 0) throw ParameterError("P(a,b,c,d): a and c must be positive");
    if (b <= 1 || d <= 1) throw ParameterError("P(a,b,c,d): b and d must exceed 1");
    const std::uint64_t n_src = checked_mul(a, b - 1, "P(a,b,c,d)");
    const std::uint64_t n_dst = checked_mul(c, d - 1, "P(a,b,c,d)");
    if (n_src != n_dst) {
        throw ParameterError("P(a,b,c,d): a(b-1) = " + std::to_string(n_src) + " differs from c(d-1) = " +
                             std::to_string(n_dst));
    }
    const std::uint64_t ab = checked_mul(a, b, "P(a,b,c,d)");
    const std::uint64_t cd = checked_mul(c, d, "P(a,b,c,d)");
    if (n_src > (1u << 24)) throw ParameterError("P(a,b,c,d): too many residue classes");

    PermSpec spec;
    spec.label = "P(" + params_text({a, b, c, d}) + ")";
    spec.params = PabcdParams{a, b, c, d};
    spec.rules.reserve(n_src + 1);
    spec.rules.push_back({b, 0, d, 0});
    std::uint64_t s = 0;
    for (std::uint64_t r = 1; r < ab; ++r) {
        if (r % b == 0) continue;
        do {
            ++s;
        } while (s % d == 0);
        spec.rules.push_back({ab, r, cd, s});
    }
    return spec;
}

PermSpec inverse(const PermSpec& spec) {
    PermSpec out;
    out.rules.reserve(spec.rules.size());
    for (const auto& r : spec.rules) out.rules.push_back(r.inverted());
    if (spec.params) out.params = PabcdParams{spec.params->c, spec.params->d, spec.params->a, spec.params->b};
    // P(a,b,c,d)^-1 is literally P(c,d,a,b).
    if (spec.params && spec.label == make_pabcd(spec.params->a, spec.params->b, spec.params->c, spec.params->d).label) {
        out.label = "P(" + params_text({spec.params->c, spec.params->d, spec.params->a, spec.params->b}) + ")";
    } else {
        out.label = "inv(" + spec.label + ")";
    }
    return out;
}

PermSpec generalize(const PermSpec& base, std::span<const std::size_t> order, GeneralizationMode mode, bool proper) {
    if (!base.params) throw ParameterError("generalize: base spec has no P(a,b,c,d) parameters");
    const auto& p = *base.params;
    const PermSpec canonical = make_pabcd(p.a, p.b, p.c, p.d);
    if (canonical.rules != base.rules) throw ParameterError("generalize: base spec is not P(a,b,c,d) in canonical order");
    const std::size_t n = canonical.rules.size() - 1;

    if (!is_permutation_of_iota(order)) throw ParameterError("generalize: order is not a permutation");
    PermSpec out;
    out.params = p;
    out.rules = canonical.rules;
    if (mode == GeneralizationMode::simple) {
        if (order.size() != n) {
            throw ParameterError("generalize: simple order needs " + std::to_string(n) + " entries, got " +
                                 std::to_string(order.size()));
        }
        if (proper && std::is_sorted(order.begin(), order.end())) {
            throw ParameterError("generalize: identity order is not a proper simple generalization");
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto& target = canonical.rules[1 + order[i]];
            out.rules[1 + i].dst_mod = target.dst_mod;
            out.rules[1 + i].dst_res = target.dst_res;
        }
        out.label = base.label + "/simple" + order_text(order);
    } else {
        if (order.size() != n + 1) {
            throw ParameterError("generalize: extended order needs " + std::to_string(n + 1) + " entries, got " +
                                 std::to_string(order.size()));
        }
        if (proper && order[0] == 0) {
            throw ParameterError("generalize: order keeps bn -> dn, not a proper extended generalization");
        }
        for (std::size_t i = 0; i <= n; ++i) {
            const auto& target = canonical.rules[order[i]];
            out.rules[i].dst_mod = target.dst_mod;
            out.rules[i].dst_res = target.dst_res;
        }
        out.label = base.label + "/ext" + order_text(order);
    }
    return out;
}

namespace {

BigInt factorial(std::size_t n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Lexicographic unranking of permutations of {0..n-1}.
std::vector<std::size_t> unrank(std::size_t n, BigInt index) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<std::size_t> out;
    out.reserve(n);
    for (std::size_t k = n; k > 0; --k) {
        const BigInt f = factorial(k - 1);
        BigInt digit = index / f;
        index -= digit * f;
        const auto pos = static_cast<std::size_t>(digit.get_ui());
        out.push_back(pool[pos]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    return out;
}

}  // namespace

BigInt generalization_count(std::size_t n_residues, GeneralizationMode mode) {
    if (mode == GeneralizationMode::simple) return factorial(n_residues) - 1;
    return factorial(n_residues + 1) - factorial(n_residues);
}

std::vector<std::size_t> generalization_order(std::size_t n_residues, GeneralizationMode mode, std::uint64_t rank) {
    const BigInt count = generalization_count(n_residues, mode);
    if (to_big(rank) > count) {
        throw ParameterError("generalization rank " + std::to_string(rank) + " exceeds count " + count.get_str());
    }
    if (mode == GeneralizationMode::simple) return unrank(n_residues, to_big(rank));
    if (rank == 0) return unrank(n_residues + 1, 0);
    // Orders with order[0] == 0 occupy the first N! lexicographic slots.
    return unrank(n_residues + 1, factorial(n_residues) - 1 + to_big(rank));
}

PermSpec make_generalization(const PabcdParams& p, GeneralizationMode mode, std::uint64_t rank) {
    const PermSpec base = make_pabcd(p.a, p.b, p.c, p.d);
    const auto order = generalization_order(base.rules.size() - 1, mode, rank);
    PermSpec out = generalize(base, order, mode);
    out.label = base.label + (mode == GeneralizationMode::simple ? "/simple:" : "/ext:") + std::to_string(rank);
    return out;
}

PermSpec make_fafc(std::uint64_t a, std::uint64_t b, std::uint64_t f_a, std::uint64_t c, std::uint64_t d,
                   std::uint64_t f_c) {
    if (a == 0 || c == 0) throw ParameterError("fafc: a and c must be positive");
    if (b <= 1 || d <= 1) throw ParameterError("fafc: b and d must exceed 1");
    if (f_a == 0 || f_a > a || a % f_a != 0) throw ParameterError("fafc: f_a must divide a");
    if (f_c == 0 || f_c > c || c % f_c != 0) throw ParameterError("fafc: f_c must divide c");
    if (std::gcd(a, c) != 1 || std::gcd(b, d) != 1) throw ParameterError("fafc: need gcd(a,c) = gcd(b,d) = 1");
    const std::uint64_t n_src = checked_mul(a, b - 1, "fafc") + f_a;
    const std::uint64_t n_dst = checked_mul(c, d - 1, "fafc") + f_c;
    if (n_src != n_dst) {
        throw ParameterError("fafc: a(b-1)+f_a = " + std::to_string(n_src) + " differs from c(d-1)+f_c = " +
                             std::to_string(n_dst));
    }
    if (n_src > (1u << 24)) throw ParameterError("fafc: too many residue classes");
    const std::uint64_t ab = checked_mul(a, b, "fafc");
    const std::uint64_t cd = checked_mul(c, d, "fafc");

    auto side = [](std::uint64_t f, std::uint64_t step, std::uint64_t big) {
        std::vector<ResidueClass> cls;
        for (std::uint64_t j = 0; j < f; ++j) cls.push_back({f * step, j * step});
        for (std::uint64_t r = 1; r < big; ++r) {
            if (r % step != 0) cls.push_back({big, r});
        }
        std::sort(cls.begin(), cls.end(), [](const ResidueClass& x, const ResidueClass& y) {
            return x.residue != y.residue ? x.residue < y.residue : x.modulus < y.modulus;
        });
        return cls;
    };
    const auto src = side(f_a, b, ab);
    const auto dst = side(f_c, d, cd);

    PermSpec spec;
    spec.label = "F(" + params_text({a, b, f_a, c, d, f_c}) + ")";
    spec.params = PabcdParams{a, b, c, d};
    spec.rules.reserve(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        spec.rules.push_back({src[i].modulus, src[i].residue, dst[i].modulus, dst[i].residue});
    }
    return spec;
}

// ---------------------------------------------------------------------------
// ResidueMap

void ResidueMap::Side::build() {
    lcm = 1;
    bool fits = true;
    for (const auto& r : rules) {
        const std::uint64_t g = std::gcd(lcm, r.src_mod);
        const unsigned __int128 next = static_cast<unsigned __int128>(lcm / g) * r.src_mod;
        if (next > kTableLcmLimit) {
            fits = false;
            break;
        }
        lcm = static_cast<std::uint64_t>(next);
    }
    table.clear();
    if (!fits) {
        lcm = 0;
        return;
    }
    table.assign(lcm, 0);
    for (std::uint32_t i = 0; i < rules.size(); ++i) {
        for (std::uint64_t x = rules[i].src_res; x < lcm; x += rules[i].src_mod) table[x] = i;
    }
}

const ResidueRule& ResidueMap::Side::find(std::uint64_t x) const {
    if (lcm != 0) return rules[table[x % lcm]];
    for (const auto& r : rules) {
        if (x % r.src_mod == r.src_res) return r;
    }
    throw IntegrityError("no rule matches " + std::to_string(x));
}

const ResidueRule& ResidueMap::Side::find(const BigInt& x) const {
    if (lcm != 0) return rules[table[mpz_fdiv_ui(x.get_mpz_t(), lcm)]];
    for (const auto& r : rules) {
        if (mpz_fdiv_ui(x.get_mpz_t(), r.src_mod) == r.src_res) return r;
    }
    throw IntegrityError("no rule matches " + x.get_str());
}

ResidueMap::ResidueMap(PermSpec spec) : spec_(std::move(spec)) {
    const auto report = verify_bijection(spec_);
    if (!report.valid()) throw IntegrityError(spec_.label + ": " + report.describe());
    forward_.rules = spec_.rules;
    for (const auto& r : spec_.rules) backward_.rules.push_back(r.inverted());
    forward_.build();
    backward_.build();
    if (spec_.params) class_modulus_ = spec_.params->b;
}

BigInt ResidueMap::step(const Side& side, const BigInt& x) {
    if (sgn(x) < 0) throw DomainError("negative element " + x.get_str());
    const ResidueRule& r = side.find(x);
    BigInt n = x - to_big(r.src_res);
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), r.src_mod);
    n *= to_big(r.dst_mod);
    n += to_big(r.dst_res);
    return n;
}

bool ResidueMap::step_fast(const Side& side, std::uint64_t x, std::uint64_t& out) {
    const ResidueRule& r = side.find(x);
    const unsigned __int128 y = static_cast<unsigned __int128>((x - r.src_res) / r.src_mod) * r.dst_mod + r.dst_res;
    if (y >> 64) return false;
    out = static_cast<std::uint64_t>(y);
    return true;
}

BigInt ResidueMap::apply(const BigInt& x) const { return step(forward_, x); }
BigInt ResidueMap::apply_inv(const BigInt& x) const { return step(backward_, x); }
bool ResidueMap::apply_fast(std::uint64_t x, std::uint64_t& out) const { return step_fast(forward_, x, out); }
bool ResidueMap::apply_inv_fast(std::uint64_t x, std::uint64_t& out) const { return step_fast(backward_, x, out); }

BigInt apply(const PermSpec& spec, const BigInt& x) { return ResidueMap(spec).apply(x); }
BigInt apply_inv(const PermSpec& spec, const BigInt& x) { return ResidueMap(spec).apply_inv(x); }

}  // namespace permseq
