#include "cardbin/eval.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cardbin {
namespace {

[[noreturn]] void fail(int line, const std::string& message) {
    throw AnnotationError("annotation line " + std::to_string(line) + ": " + message);
}

// Member pixels of one span covered by the union of text boxes intersecting
// its row. Boxes may overlap, so intersections are merged before counting.
long long covered_in_span(const PixelSpan& span, const std::vector<Annotation>& annotations,
                          std::vector<std::pair<int, int>>& scratch) {
    scratch.clear();
    for (const Annotation& a : annotations) {
        if (a.kind != AnnotationKind::Text) continue;
        if (span.y < a.box.y || span.y >= a.box.y + a.box.h) continue;
        const int lo = std::max(span.x0, a.box.x);
        const int hi = std::min(span.x1, a.box.x + a.box.w);
        if (lo < hi) scratch.emplace_back(lo, hi);
    }
    if (scratch.empty()) return 0;
    std::sort(scratch.begin(), scratch.end());
    long long covered = 0;
    int cur_lo = scratch[0].first, cur_hi = scratch[0].second;
    for (std::size_t i = 1; i < scratch.size(); ++i) {
        if (scratch[i].first <= cur_hi) {
            cur_hi = std::max(cur_hi, scratch[i].second);
        } else {
            covered += cur_hi - cur_lo;
            cur_lo = scratch[i].first;
            cur_hi = scratch[i].second;
        }
    }
    covered += cur_hi - cur_lo;
    return covered;
}

} // namespace

std::vector<Annotation> parse_annotations(std::istream& in) {
    std::vector<Annotation> annotations;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream fields(raw);
        std::string kind;
        if (!(fields >> kind)) continue; // blank line
        if (kind.front() == '#') continue;

        Annotation a;
        if (kind == "text") a.kind = AnnotationKind::Text;
        else if (kind == "nontext") a.kind = AnnotationKind::NonText;
        else fail(line, "unknown kind '" + kind + "'");

        if (!(fields >> a.box.x >> a.box.y >> a.box.w >> a.box.h))
            fail(line, "expected '<kind> <x> <y> <w> <h>'");
        std::string extra;
        if (fields >> extra) fail(line, "trailing field '" + extra + "'");
        if (a.box.w < 1 || a.box.h < 1) fail(line, "box must be at least 1x1");
        annotations.push_back(a);
    }
    return annotations;
}

std::vector<Annotation> load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AnnotationError("cannot open annotations " + path);
    return parse_annotations(in);
}

void write_annotations(const std::vector<Annotation>& annotations, std::ostream& out) {
    for (const Annotation& a : annotations)
        out << (a.kind == AnnotationKind::Text ? "text" : "nontext") << " " << a.box.x << " "
            << a.box.y << " " << a.box.w << " " << a.box.h << "\n";
}

void save_annotations(const std::vector<Annotation>& annotations, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw AnnotationError("cannot open " + path + " for writing");
    write_annotations(annotations, out);
}

namespace {

void tally(const ConnectedComponent& cc, RegionClass cls,
           const std::vector<Annotation>& annotations, ConfusionCounts& counts,
           std::vector<std::pair<int, int>>& scratch) {
    long long covered = 0;
    for (const PixelSpan& span : cc.spans) covered += covered_in_span(span, annotations, scratch);
    const bool truth_text = 2 * covered > cc.area;
    const bool predicted_text = cls == RegionClass::Text;
    if (truth_text)
        (predicted_text ? counts.tt : counts.tb) += 1;
    else
        (predicted_text ? counts.bt : counts.bb) += 1;
}

} // namespace

ConfusionCounts score(const std::vector<ConnectedComponent>& components,
                      const std::vector<RegionClass>& classes,
                      const std::vector<Annotation>& annotations) {
    ConfusionCounts counts;
    std::vector<std::pair<int, int>> scratch;
    for (std::size_t i = 0; i < components.size(); ++i)
        tally(components[i], classes[i], annotations, counts, scratch);
    return counts;
}

ConfusionCounts score(const CardResult& result, const std::vector<Annotation>& annotations) {
    ConfusionCounts counts;
    std::vector<std::pair<int, int>> scratch;
    for (const RegionResult& r : result.regions)
        tally(r.cc, r.cls, annotations, counts, scratch);
    return counts;
}

double accuracy(const ConfusionCounts& counts) {
    if (counts.total() == 0) throw EmptyScore("no components to score");
    return 100.0 * double(counts.bb + counts.tt) / double(counts.total());
}

} // namespace cardbin
