#ifndef GPTCOMPAT_SCAN_HPP
#define GPTCOMPAT_SCAN_HPP

#include "gptcompat/compatibility.hpp"
#include "gptcompat/riesz.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gptcompat {

/// Where a scan witness came from.
enum class WitnessOrigin { Sampled, Planted, Injected, Extremal };

const char* origin_name(WitnessOrigin origin);

/// The functionals of a failing case (a, b for a compatibility scan; u, v1,
/// v2 for a Riesz scan) together with the LP certificate of failure.
struct ScanWitness
{
    std::vector<AffineFunctional> functionals;
    InfeasibilityWitness certificate;
    WitnessOrigin origin = WitnessOrigin::Sampled;
    std::size_t index = 0;
};

struct ScanReport
{
    std::string space_id;
    std::uint64_t seed = 0;
    std::size_t pairs_tested = 0;
    std::size_t incompatible_count = 0;
    std::optional<ScanWitness> first_witness;
    double wall_time_ms = 0;

    std::size_t sampled_pairs = 0;
    std::size_t injected_pairs = 0;
    /// Extremal effects enumerated by the exhaustive fallback (0 if it did
    /// not run).
    std::size_t extremal_effects = 0;
    bool exhaustive = false;
};

struct ScanOptions
{
    /// Worker threads for the sampled part. Results do not depend on it.
    std::size_t threads = 1;
    /// Run the complete extremal-effect search when nothing else found a
    /// witness. On a simplex this proves that no incompatible pair exists.
    bool exhaustive_fallback = true;
};

/**
 * Samples effect pairs and tests them with compatible_2outcome, then runs a
 * deterministic search over direction effects (x -> (w.x - min)/(max - min)
 * for w a vertex difference or coordinate axis). If neither finds an
 * incompatible pair, all pairs of extremal effects are tried; since the set
 * of effects compatible with a fixed effect is convex, that search is
 * complete.
 *
 * Throws std::invalid_argument if pairs == 0.
 */
ScanReport theorem_scan(const SpacePtr& space, std::size_t pairs, std::uint64_t seed, const std::string& space_id = "",
                        const ScanOptions& options = {});

/// Random valid Riesz instances plus any planted ones, each decomposed.
/// Throws std::invalid_argument if samples == 0.
ScanReport riesz_property_scan(const SpacePtr& space, std::size_t samples, std::uint64_t seed,
                               const std::vector<RieszInstance>& planted = {}, const std::string& space_id = "");

/// Random RieszInstance, deterministic per seed.
RieszInstance sample_riesz_instance(const SpacePtr& space, std::uint64_t seed);

/// Direction effects used by the injected search, in search order.
std::vector<Effect> direction_effects(const SpacePtr& space);

/// Every extreme point of the effect set {f : 0 <= f <= 1 on K}, as
/// functionals. Exponential in the affine dimension; desk scale only.
std::vector<Effect> extremal_effects(const SpacePtr& space);

} // namespace gptcompat

#endif
