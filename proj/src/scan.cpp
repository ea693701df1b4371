#include "gptcompat/scan.hpp"

#include "gptcompat/linalg.hpp"
#include "gptcompat/random.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace gptcompat {

const char* origin_name(WitnessOrigin origin)
{
    switch (origin) {
        case WitnessOrigin::Sampled: return "sampled";
        case WitnessOrigin::Planted: return "planted";
        case WitnessOrigin::Injected: return "injected";
        case WitnessOrigin::Extremal: return "extremal";
    }
    return "";
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn)
{
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                fn(i);
        });
}

std::optional<InfeasibilityWitness> incompatibility(const Effect& a, const Effect& b)
{
    auto verdict = compatible_2outcome(a, b);
    if (auto* inc = std::get_if<Incompatible>(&verdict))
        return std::move(inc->certificate);
    return std::nullopt;
}

// Effect x -> (w.x - lo) / (hi - lo), or nullopt when w is constant on K.
std::optional<Effect> normalized_effect(const SpacePtr& space, const RationalVector& w)
{
    const AffineFunctional raw(space, 0, w);
    const RationalVector vals = raw.vertex_values();
    const Rational lo = *std::min_element(vals.begin(), vals.end());
    const Rational hi = *std::max_element(vals.begin(), vals.end());
    if (lo == hi)
        return std::nullopt;
    const Rational scale = 1 / (hi - lo);
    AffineFunctional f = scale * raw;
    f += AffineFunctional::constant_function(space, -lo * scale);
    return Effect(std::move(f));
}

template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

std::vector<Effect> direction_effects(const SpacePtr& space)
{
    const auto& vs = space->vertices();
    const std::size_t d = space->dimension();
    std::vector<RationalVector> dirs;
    for (std::size_t k = 0; k < d; ++k) {
        RationalVector e(d, Rational(0));
        e[k] = 1;
        dirs.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            RationalVector w(d);
            for (std::size_t k = 0; k < d; ++k)
                w[k] = vs[j][k] - vs[i][k];
            // scale so that the first nonzero entry is 1
            const auto lead = std::find_if(w.begin(), w.end(), [](const Rational& q) { return sgn(q) != 0; });
            const Rational s = *lead;
            for (auto& c : w)
                c /= s;
            dirs.push_back(std::move(w));
        }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

    std::vector<Effect> out;
    for (const auto& w : dirs)
        if (auto e = normalized_effect(space, w))
            out.push_back(std::move(*e));
    return out;
}

std::vector<Effect> extremal_effects(const SpacePtr& space)
{
    const auto& vs = space->vertices();
    const std::size_t d = space->dimension();

    // Affine basis of K and affine coordinates of every vertex in it; an
    // affine functional on K is determined by its values on the basis.
    Matrix lifted(vs.size(), d + 1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        lifted(i, 0) = 1;
        for (std::size_t k = 0; k < d; ++k)
            lifted(i, k + 1) = vs[i][k];
    }
    const std::vector<std::size_t> basis = independent_rows(lifted);
    const std::size_t r = basis.size();
    Matrix basis_cols(d + 1, r);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t k = 0; k <= d; ++k)
            basis_cols(k, c) = lifted(basis[c], k);
    std::vector<RationalVector> coords;
    for (std::size_t i = 0; i < vs.size(); ++i)
        coords.push_back(*solve_any(basis_cols, lifted.row(i)));

    // Each extreme point has r linearly independent tight constraints, each
    // pinning some vertex value to 0 or 1.
    std::vector<RationalVector> found;
    for_each_combination(vs.size(), r, [&](const std::vector<std::size_t>& pick) {
        Matrix sys(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t c = 0; c < r; ++c)
                sys(i, c) = coords[pick[i]][c];
        if (rank(sys) != r)
            return;
        for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
            RationalVector target(r);
            for (std::size_t i = 0; i < r; ++i)
                target[i] = (mask >> i) & 1U;
            RationalVector z = *solve_any(sys, target);
            bool inside = true;
            for (const auto& lam : coords) {
                const Rational val = dot(lam, z);
                if (sgn(val) < 0 || val > 1) {
                    inside = false;
                    break;
                }
            }
            if (inside)
                found.push_back(std::move(z));
        }
    });
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());

    Matrix interp(r, d + 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k <= d; ++k)
            interp(i, k) = lifted(basis[i], k);
    std::vector<Effect> out;
    for (const auto& z : found) {
        const RationalVector coef = *solve_any(interp, z);
        out.emplace_back(AffineFunctional(space, coef[0], RationalVector(coef.begin() + 1, coef.end())));
    }
    return out;
}

ScanReport theorem_scan(const SpacePtr& space, std::size_t pairs, std::uint64_t seed, const std::string& space_id,
                        const ScanOptions& options)
{
    if (pairs == 0)
        throw std::invalid_argument("theorem_scan: pairs must be at least 1");
    const auto start = Clock::now();
    ScanReport report;
    report.space_id = space_id;
    report.seed = seed;

    std::vector<std::optional<ScanWitness>> failures(pairs);
    parallel_for(pairs, options.threads, [&](std::size_t i) {
        const std::uint64_t sub = mix_seed(seed, i);
        Effect a = sample_effect(space, mix_seed(sub, 0));
        Effect b = sample_effect(space, mix_seed(sub, 1));
        if (auto cert = incompatibility(a, b))
            failures[i] = ScanWitness{{a.functional(), b.functional()}, std::move(*cert), WitnessOrigin::Sampled, i};
    });
    report.sampled_pairs = pairs;
    for (auto& f : failures) {
        if (!f)
            continue;
        ++report.incompatible_count;
        if (!report.first_witness)
            report.first_witness = std::move(f);
    }

    auto search = [&](const std::vector<Effect>& family, WitnessOrigin origin) {
        std::size_t tested = 0;
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                ++tested;
                if (auto cert = incompatibility(family[i], family[j])) {
                    ++report.incompatible_count;
                    if (!report.first_witness)
                        report.first_witness = ScanWitness{{family[i].functional(), family[j].functional()},
                                                           std::move(*cert), origin, tested - 1};
                    return tested;
                }
            }
        return tested;
    };

    const std::size_t before = report.incompatible_count;
    report.injected_pairs = search(direction_effects(space), WitnessOrigin::Injected);
    if (report.incompatible_count == 0 && before == 0 && options.exhaustive_fallback) {
        const auto family = extremal_effects(space);
        report.extremal_effects = family.size();
        report.exhaustive = true;
        report.injected_pairs += search(family, WitnessOrigin::Extremal);
    }
    report.pairs_tested = report.sampled_pairs + report.injected_pairs;
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

RieszInstance sample_riesz_instance(const SpacePtr& space, std::uint64_t seed)
{
    SeededRng rng(seed);
    auto scaled = [&](std::uint64_t k) {
        return make_rational(rng.integer(1, 4), 2) * sample_effect(space, mix_seed(seed, k)).functional();
    };
    const AffineFunctional v1 = scaled(1);
    const AffineFunctional v2 = scaled(2);
    const AffineFunctional w = sample_effect(space, mix_seed(seed, 3)).functional();
    const AffineFunctional total = v1 + v2;

    // Largest t with t*w <= v1 + v2 on K.
    std::optional<Rational> t;
    for (const auto& v : space->vertices()) {
        const Rational wv = w(v);
        if (sgn(wv) <= 0)
            continue;
        Rational ratio = total(v) / wv;
        if (!t || ratio < *t)
            t = std::move(ratio);
    }
    const Rational kappa = make_rational(rng.integer(0, 4), 4);
    const Rational rho = make_rational(rng.integer(0, 4), 4);
    const Rational sigma = make_rational(rng.integer(0, 4), 4);
    AffineFunctional u = (1 - kappa) * (rho * v1 + sigma * v2);
    if (t)
        u += (kappa * *t) * w;
    return RieszInstance(std::move(u), v1, v2);
}

ScanReport riesz_property_scan(const SpacePtr& space, std::size_t samples, std::uint64_t seed,
                               const std::vector<RieszInstance>& planted, const std::string& space_id)
{
    if (samples == 0)
        throw std::invalid_argument("riesz_property_scan: samples must be at least 1");
    const auto start = Clock::now();
    ScanReport report;
    report.space_id = space_id;
    report.seed = seed;

    auto record = [&](const RieszInstance& inst, WitnessOrigin origin, std::size_t index) {
        ++report.pairs_tested;
        auto result = riesz_decompose(inst);
        if (auto* w = std::get_if<InfeasibilityWitness>(&result)) {
            ++report.incompatible_count;
            if (!report.first_witness)
                report.first_witness = ScanWitness{{inst.u(), inst.v1(), inst.v2()}, std::move(*w), origin, index};
        }
    };
    for (std::size_t i = 0; i < samples; ++i)
        record(sample_riesz_instance(space, mix_seed(seed, i)), WitnessOrigin::Sampled, i);
    report.sampled_pairs = samples;
    for (std::size_t i = 0; i < planted.size(); ++i) {
        if (!same_space(planted[i].u().space(), space))
            throw SpaceMismatch("riesz_property_scan: planted instance on another space");
        record(planted[i], WitnessOrigin::Planted, i);
    }
    report.injected_pairs = planted.size();
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

} // namespace gptcompat
