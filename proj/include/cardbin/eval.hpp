#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cardbin/image.hpp"
#include "cardbin/pipeline.hpp"
#include "cardbin/regions.hpp"

namespace cardbin {

class AnnotationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when there is nothing to score.
class EmptyScore : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AnnotationKind { Text, NonText };

struct Annotation {
    AnnotationKind kind = AnnotationKind::Text;
    Box box;
    bool operator==(const Annotation&) const = default;
};

// One record per line: "<kind> <x> <y> <w> <h>", kind in {text, nontext},
// '#' comment lines ignored. Malformed lines raise line-numbered errors.
std::vector<Annotation> parse_annotations(std::istream& in);
std::vector<Annotation> load_annotations(const std::string& path);
void write_annotations(const std::vector<Annotation>& annotations, std::ostream& out);
void save_annotations(const std::vector<Annotation>& annotations, const std::string& path);

struct ConfusionCounts {
    long long bb = 0; // truth background, classified background
    long long bt = 0; // truth background, classified text
    long long tb = 0; // truth text, classified background
    long long tt = 0; // truth text, classified text
    long long total() const { return bb + bt + tb + tt; }
    bool operator==(const ConfusionCounts&) const = default;
};

// A component's ground truth is text iff more than half of its member
// pixels fall inside the union of text annotation boxes.
ConfusionCounts score(const std::vector<ConnectedComponent>& components,
                      const std::vector<RegionClass>& classes,
                      const std::vector<Annotation>& annotations);
ConfusionCounts score(const CardResult& result, const std::vector<Annotation>& annotations);

// 100 * (bb + tt) / total; throws EmptyScore when total == 0.
double accuracy(const ConfusionCounts& counts);

} // namespace cardbin
