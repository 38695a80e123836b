#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cardbin/eval.hpp"
#include "cardbin/image.hpp"

namespace cardbin {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TextBar {
    Box box;              // pre-rotation placement
    double skew_deg = 0;  // positive rises left to right
};

// Layout for one synthetic card. Stands in for real card photos when
// scoring classification: every element maps to one connected component
// with a known ground-truth kind.
struct CardSpec {
    int width = 1024;
    int height = 768;
    int background = 208; // base intensity at the left edge
    int gradient = 0;     // total intensity drop across the width
    int ink = 48;         // stroke intensity before jitter
    int jitter = 3;       // +- background noise amplitude
    int speckle = 0;      // count of small dark dots
    std::vector<TextBar> texts;
    std::vector<Box> hlines;
    std::vector<Box> vlines;
};

// Line-based layout: "size W H", "background N", "gradient N", "ink N",
// "jitter N", "speckle N", "text X Y W H SKEW_DEG", "hline X Y W H",
// "vline X Y W H". '#' comments.
CardSpec parse_card_spec(std::istream& in);
CardSpec load_card_spec(const std::string& path);

struct GeneratedCard {
    GrayImage image;
    std::vector<Annotation> annotations;
};

// Deterministic for (spec, seed). Text annotations carry the bounding box
// of the rendered (rotated) strokes; rules and speckles produce nontext
// annotations. Throws SpecError when an element falls outside the canvas
// or a text box's aspect ratio leaves the text-classifiable range.
GeneratedCard generate_card(const CardSpec& spec, std::uint64_t seed);

} // namespace cardbin
