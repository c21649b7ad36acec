#include "permseq/census.hpp"

#include "permseq/detail/walk.hpp"
#include "permseq/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace permseq {

std::vector<CycleRecord> CensusReport::nontrivial_cycles() const {
    std::vector<CycleRecord> out;
    for (const auto& c : cycles) {
        if (!is_trivial_zero_cycle(c)) out.push_back(c);
    }
    return out;
}

namespace {

constexpr std::int32_t kUnvisited = 0;
constexpr std::int32_t kInCycle = -1;
constexpr std::int32_t kStepLimited = -2;

class DisjointSets {
public:
    std::int32_t make(BigInt key) {
        parent_.push_back(static_cast<std::int32_t>(parent_.size()));
        key_.push_back(std::move(key));
        return parent_.back();
    }
    std::int32_t find(std::int32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        if (key_[b] < key_[a]) key_[a] = key_[b];
    }
    void lower_key(std::int32_t x, const BigInt& k) {
        x = find(x);
        if (k < key_[x]) key_[x] = k;
    }
    std::size_t size() const { return parent_.size(); }
    const BigInt& key(std::int32_t root) const { return key_[root]; }

private:
    std::vector<std::int32_t> parent_;
    std::vector<BigInt> key_;
};

}  // namespace

CensusReport cycle_census(const Mapping& map, std::uint64_t x0, const CensusSettings& settings) {
    if (x0 < 1) throw ParameterError("cycle_census: X0 must be at least 1");
    if (x0 > (1ULL << 31)) throw ResourceError("cycle_census: X0 above 2^31 is not supported");

    CensusReport report;
    report.label = map.label();
    if (const auto* rm = dynamic_cast<const ResidueMap*>(&map)) report.params = rm->spec().params;
    report.x0 = x0;
    report.first_seed = std::min(map.domain_start(), x0);
    report.settings = settings.trajectory;

    // Tag per element below x0: 0 unvisited, -1 cycle, -2 step limit, k > 0 escaped class k-1.
    std::vector<std::int32_t> tag(x0, kUnvisited);
    std::map<BigInt, CycleRecord> cycles;
    DisjointSets classes;
    std::vector<std::uint64_t> visited;

    TrajectorySettings walk_settings = settings.trajectory;
    for (std::uint64_t seed = report.first_seed; seed < x0; ++seed) {
        if (tag[seed] != kUnvisited) continue;
        visited.clear();
        visited.push_back(seed);
        auto collect = [&](std::uint64_t x) {
            if (x < x0) visited.push_back(x);
        };
        const BigInt start = to_big(seed);
        const auto fw = detail::walk(map, start, walk_settings, Direction::forward, collect);

        if (fw.kind == detail::WalkResult::Kind::cycle) {
            for (auto x : visited) tag[x] = kInCycle;
            std::vector<BigInt> elems;
            elems.reserve(fw.steps);
            BigInt x = start;
            for (std::uint64_t i = 0; i < fw.steps; ++i) {
                elems.push_back(x);
                x = map.apply(x);
            }
            CycleRecord rec = classify_cycle(elems, map.class_modulus());
            if (!settings.trajectory.keep_elements) rec.elements.reset();
            cycles.emplace(rec.min, std::move(rec));
            continue;
        }
        if (fw.kind == detail::WalkResult::Kind::step_limit) {
            for (auto x : visited) {
                if (tag[x] == kUnvisited) tag[x] = kStepLimited;
            }
            continue;
        }

        // Escaped: open a class keyed by the minimum witnessed, merging with
        // any class whose elements this walk touches.
        const std::int32_t id = classes.make(fw.min_seen);
        const std::int32_t mark = id + 1;
        auto absorb = [&](std::span<const std::uint64_t> xs) {
            for (auto v : xs) {
                if (tag[v] > 0) {
                    classes.unite(id, tag[v] - 1);
                } else if (tag[v] == kUnvisited) {
                    tag[v] = mark;
                }
            }
        };
        absorb(visited);
        if (settings.explore_backward) {
            visited.clear();
            const auto bw = detail::walk(map, start, walk_settings, Direction::backward, collect);
            absorb(visited);
            classes.lower_key(id, bw.min_seen);
            if (bw.kind != detail::WalkResult::Kind::escaped) ++report.one_sided_escapes;
        }
    }

    for (std::uint64_t s = report.first_seed; s < x0; ++s) {
        if (tag[s] == kInCycle) {
            ++report.seeds_in_cycles;
        } else if (tag[s] == kStepLimited) {
            ++report.seeds_step_limited;
        } else if (tag[s] > 0) {
            ++report.divergent_seed_count;
        }
    }
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(classes.size()); ++i) {
        if (classes.find(i) == i) report.divergent_minima.push_back(classes.key(i));
    }
    std::sort(report.divergent_minima.begin(), report.divergent_minima.end());
    report.divergent_min_count = report.divergent_minima.size();
    report.cycles.reserve(cycles.size());
    for (auto& [_, rec] : cycles) report.cycles.push_back(std::move(rec));
    return report;
}

std::vector<GeneralizationSummary> sweep_generalizations(const PabcdParams& base, GeneralizationMode mode,
                                                         std::uint64_t first_n, std::uint64_t x0,
                                                         const CensusSettings& settings, unsigned threads) {
    const PermSpec canonical = make_pabcd(base.a, base.b, base.c, base.d);
    const BigInt total = generalization_count(canonical.rules.size() - 1, mode);
    if (to_big(first_n) > total) {
        throw ParameterError("sweep_generalizations: only " + total.get_str() + " proper generalizations exist");
    }
    std::vector<GeneralizationSummary> out(first_n);
    if (first_n == 0) return out;

    CensusSettings local = settings;
    local.trajectory.keep_elements = false;
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
        for (std::uint64_t i = next++; i < first_n; i = next++) {
            const std::uint64_t rank = i + 1;
            const ResidueMap map(make_generalization(base, mode, rank));
            const CensusReport rep = cycle_census(map, x0, local);
            GeneralizationSummary s;
            s.rank = rank;
            s.max_element = 0;
            s.divergent_min_count = rep.divergent_min_count;
            for (const auto& c : rep.cycles) {
                if (is_trivial_zero_cycle(c)) continue;
                ++s.cycles;
                s.max_cycle_length = std::max(s.max_cycle_length, c.length);
                if (c.max > s.max_element) s.max_element = c.max;
            }
            out[i] = std::move(s);
        }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = first_n;
        }
    };
    unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::uint64_t>(n_threads, first_n));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

DivergenceRatio divergence_ratio(const Mapping& map, std::uint64_t x0, const CensusSettings& settings) {
    CensusSettings local = settings;
    local.explore_backward = true;
    local.trajectory.keep_elements = false;
    const CensusReport rep = cycle_census(map, x0, local);
    DivergenceRatio r;
    r.classes = rep.divergent_min_count;
    r.x0 = x0;
    r.ratio = BigRational(to_big(r.classes), to_big(x0));
    r.ratio.canonicalize();
    return r;
}

}  // namespace permseq
