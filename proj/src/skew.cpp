#include "cardbin/skew.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace cardbin {
namespace {

std::optional<AngleTriple> side_angles(const Box& region, const GrayImage& image,
                                       ProfileSide side, const PipelineConfig& config) {
    auto profile = compute_profile(region, image, side, config);
    if (!profile) return std::nullopt;
    Profile filtered = filter_profile(*profile, profile_stats(*profile));
    auto tri = three_point_angles(filtered);
    if (!tri) return std::nullopt;
    if (side == ProfileSide::Top) {
        // Top heights grow downward; negate to the rises-to-the-right convention.
        tri->alpha = -tri->alpha;
        tri->beta = -tri->beta;
        tri->gamma = -tri->gamma;
    }
    return tri;
}

bool agrees(const AngleTriple& t, double epsilon) {
    return std::abs(t.alpha - t.beta) <= epsilon && std::abs(t.alpha - t.gamma) <= epsilon &&
           std::abs(t.beta - t.gamma) <= epsilon;
}

double average(const AngleTriple& t) { return (t.alpha + t.beta + t.gamma) / 3.0; }

} // namespace

const char* to_string(SkewSource source) {
    switch (source) {
        case SkewSource::Bottom: return "bottom";
        case SkewSource::Top: return "top";
        case SkewSource::SmallerOfBoth: return "smaller-of-both";
        case SkewSource::None: return "none";
    }
    return "none";
}

std::optional<Profile> compute_profile(const Box& region, const GrayImage& image,
                                       ProfileSide side, const PipelineConfig& config) {
    Profile profile;
    profile.side = side;
    const int y_edge = side == ProfileSide::Bottom ? region.y + region.h - 1 : region.y;
    const int step = side == ProfileSide::Bottom ? -1 : 1;

    for (int x = region.x; x < region.x + region.w; ++x) {
        int height = -1;
        int y = y_edge;
        for (int d = 0; d < region.h; ++d, y += step) {
            if (image.at(x, y) < 255) {
                height = d;
                break;
            }
        }
        if (height < 0) continue; // column has no shade at all

        int run = 0;
        for (; y >= region.y && y < region.y + region.h && image.at(x, y) < 255; y += step)
            ++run;
        if (run < config.min_shade_extent) continue;

        profile.entries.push_back({x, height});
    }
    if (profile.entries.empty()) return std::nullopt;
    return profile;
}

ProfileStats profile_stats(const Profile& profile) {
    const long long n = profile.n();
    long long sum = 0;
    for (const ProfileEntry& e : profile.entries) sum += e.height;
    const long long mu = sum / n;
    long long dev = 0;
    for (const ProfileEntry& e : profile.entries) dev += std::llabs(mu - e.height);
    return {int(mu), int(dev / n)};
}

Profile filter_profile(const Profile& profile, const ProfileStats& stats) {
    Profile out;
    out.side = profile.side;
    for (const ProfileEntry& e : profile.entries)
        if (std::abs(e.height - stats.mu) <= stats.tau) out.entries.push_back(e);
    return out;
}

std::optional<AngleTriple> three_point_angles(const Profile& profile) {
    const int n = profile.n();
    if (n < 3) return std::nullopt;
    const ProfileEntry& h1 = profile.entries.front();
    const ProfileEntry& h2 = profile.entries.back();
    const ProfileEntry& h3 = profile.entries[n / 2];
    AngleTriple tri;
    tri.alpha = std::atan(double(h2.height - h1.height) / double(h2.column - h1.column));
    tri.beta = std::atan(double(h3.height - h1.height) / double(h3.column - h1.column));
    tri.gamma = std::atan(double(h2.height - h3.height) / double(h2.column - h3.column));
    return tri;
}

SkewEstimate arbitrate_skew(const std::optional<AngleTriple>& bottom,
                            const std::optional<AngleTriple>& top, double epsilon) {
    SkewEstimate est;
    est.bottom = bottom;
    est.top = top;
    if (bottom && agrees(*bottom, epsilon)) {
        est.angle = average(*bottom);
        est.source = SkewSource::Bottom;
        return est;
    }
    if (top && agrees(*top, epsilon)) {
        est.angle = average(*top);
        est.source = SkewSource::Top;
        return est;
    }
    if (!bottom && !top) return est; // angle 0, source None
    est.source = SkewSource::SmallerOfBoth;
    if (bottom && top) {
        const double b = average(*bottom), t = average(*top);
        est.angle = std::abs(b) <= std::abs(t) ? b : t;
    } else {
        est.angle = average(bottom ? *bottom : *top);
    }
    return est;
}

SkewEstimate estimate_skew(const Box& region, const GrayImage& image,
                           const PipelineConfig& config) {
    auto bottom = side_angles(region, image, ProfileSide::Bottom, config);
    if (bottom && agrees(*bottom, config.epsilon)) {
        SkewEstimate est;
        est.angle = average(*bottom);
        est.source = SkewSource::Bottom;
        est.bottom = bottom;
        return est; // top profile skipped entirely
    }
    auto top = side_angles(region, image, ProfileSide::Top, config);
    return arbitrate_skew(bottom, top, config.epsilon);
}

GrayImage rotate_patch(const GrayImage& patch, double ccw_angle) {
    if (ccw_angle == 0.0) return patch;
    GrayImage out(patch.width, patch.height, 255);
    const double cx = (patch.width - 1) / 2.0;
    const double cy = (patch.height - 1) / 2.0;
    const double c = std::cos(ccw_angle);
    const double s = std::sin(ccw_angle);
    for (int y = 0; y < patch.height; ++y) {
        const double dy = y - cy;
        for (int x = 0; x < patch.width; ++x) {
            const double dx = x - cx;
            // inverse map of a visually-CCW rotation in y-down coordinates
            const int sx = int(std::lround(cx + dx * c - dy * s));
            const int sy = int(std::lround(cy + dx * s + dy * c));
            if (patch.in_bounds(sx, sy)) out.at(x, y) = patch.at(sx, sy);
        }
    }
    return out;
}

GrayImage rotate_region(const GrayImage& image, const Box& bbox, double angle,
                        MemoryLedger* ledger) {
    GrayImage patch(bbox.w, bbox.h);
    for (int y = 0; y < bbox.h; ++y)
        std::copy_n(image.row(bbox.y + y) + bbox.x, bbox.w, patch.row(y));
    if (angle == 0.0) return patch;
    // Source copy plus destination are both live while resampling runs; the
    // caller re-registers the returned patch.
    ScopedBytes source_bytes(ledger, patch.bytes());
    ScopedBytes dest_bytes(ledger, patch.bytes());
    GrayImage rotated = rotate_patch(patch, -angle);
    dest_bytes.release();
    return rotated;
}

} // namespace cardbin
