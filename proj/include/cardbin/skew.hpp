#pragma once

#include <optional>
#include <vector>

#include "cardbin/config.hpp"
#include "cardbin/image.hpp"
#include "cardbin/memory.hpp"

namespace cardbin {

enum class ProfileSide { Bottom, Top };

struct ProfileEntry {
    int column = 0; // absolute x
    int height = 0; // pixels from the region edge to the first sub-255 pixel
    bool operator==(const ProfileEntry&) const = default;
};

struct Profile {
    ProfileSide side = ProfileSide::Bottom;
    std::vector<ProfileEntry> entries; // columns strictly increasing
    int n() const { return int(entries.size()); }
};

struct ProfileStats {
    int mu = 0;  // integer mean height
    int tau = 0; // integer mean deviation
};

enum class SkewSource { Bottom, Top, SmallerOfBoth, None };

const char* to_string(SkewSource source);

struct AngleTriple {
    double alpha = 0; // leftmost-rightmost slope
    double beta = 0;  // leftmost-middle slope
    double gamma = 0; // middle-rightmost slope
};

// Angles are in radians; positive means the text rises left to right.
struct SkewEstimate {
    double angle = 0.0;
    SkewSource source = SkewSource::None;
    std::optional<AngleTriple> bottom;
    std::optional<AngleTriple> top; // sign-normalized to the shared convention
};

// Per-column distance from the region edge to the first sub-255 pixel.
// Columns with no sub-255 pixel, or whose sub-255 run is shorter than
// min_shade_extent, are excluded; nullopt when no column qualifies.
std::optional<Profile> compute_profile(const Box& region, const GrayImage& image,
                                       ProfileSide side, const PipelineConfig& config);

// mu = sum(h)/N, tau = sum(|mu - h|)/N, integer division. Requires n >= 1.
ProfileStats profile_stats(const Profile& profile);

// Keeps entries with |h - mu| <= tau; at least one entry always survives.
Profile filter_profile(const Profile& profile, const ProfileStats& stats);

// Slopes through the leftmost, middle (index n/2) and rightmost entries,
// each over its own column distance. nullopt when n < 3.
std::optional<AngleTriple> three_point_angles(const Profile& profile);

// The agreement rule: a side wins when its three angles pairwise deviate by
// at most epsilon; bottom is preferred, then top, then the
// smaller-in-magnitude of the two averages.
SkewEstimate arbitrate_skew(const std::optional<AngleTriple>& bottom,
                            const std::optional<AngleTriple>& top, double epsilon);

// Bottom-profile estimate with top-profile fallback. Degenerate profiles on
// both sides fold to angle 0.
SkewEstimate estimate_skew(const Box& region, const GrayImage& image,
                           const PipelineConfig& config);

// Nearest-neighbor inverse-mapped rotation about the patch center, visually
// counterclockwise for positive angles; unmapped cells become 255.
GrayImage rotate_patch(const GrayImage& patch, double ccw_angle);

// Copies the region and rotates it by -angle to undo the measured skew.
// angle == 0 returns the patch bit-exactly.
GrayImage rotate_region(const GrayImage& image, const Box& bbox, double angle,
                        MemoryLedger* ledger = nullptr);

} // namespace cardbin
