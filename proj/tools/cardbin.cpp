// cardbin: batch front end for the card binarization pipeline.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cardbin/config.hpp"
#include "cardbin/eval.hpp"
#include "cardbin/generator.hpp"
#include "cardbin/pipeline.hpp"
#include "cardbin/pnm.hpp"
#include "cardbin/regions.hpp"

namespace {

using namespace cardbin;

PipelineConfig resolve_config(const std::string& config_path) {
    if (!config_path.empty()) return load_config(config_path);
    if (const char* env = std::getenv("CARDBIN_CONFIG"); env && *env)
        return load_config(env);
    return PipelineConfig{};
}

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

std::string format_angle(double rad) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", rad);
    return buf;
}

void print_region_diagnostics(const CardResult& result) {
    std::cout << "region\tclass\tsource\talpha\tbeta\tgamma\talpha2\tbeta2\tgamma2\tangle\n";
    for (const RegionResult& region : result.regions) {
        std::cout << region.cc.label << "\t" << to_string(region.cls);
        if (region.skew) {
            const SkewEstimate& est = *region.skew;
            std::cout << "\t" << to_string(est.source);
            for (const auto& tri : {est.bottom, est.top}) {
                if (tri)
                    std::cout << "\t" << format_angle(tri->alpha) << "\t"
                              << format_angle(tri->beta) << "\t" << format_angle(tri->gamma);
                else
                    std::cout << "\t-\t-\t-";
            }
            std::cout << "\t" << format_angle(est.angle) << "\n";
        } else {
            std::cout << "\t-\t-\t-\t-\t-\t-\t-\t-\n";
        }
    }
}

void write_report(const CardResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open report " + path + " for writing");
    for (const StageReport& report : result.reports)
        out << report.stage << "\t" << format_ms(report.ms) << "\t" << report.peak_bytes << "\n";
}

GrayImage resize_nearest(const GrayImage& src, int w, int h) {
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* srow = src.row(std::min(src.height - 1, y * src.height / h));
        std::uint8_t* drow = out.row(y);
        for (int x = 0; x < w; ++x)
            drow[x] = srow[std::min(src.width - 1, x * src.width / w)];
    }
    return out;
}

std::vector<Annotation> scale_annotations(const std::vector<Annotation>& src, int sw, int sh,
                                          int dw, int dh) {
    std::vector<Annotation> out;
    out.reserve(src.size());
    for (const Annotation& a : src) {
        Box b;
        b.x = a.box.x * dw / sw;
        b.y = a.box.y * dh / sh;
        b.w = std::max(1, (a.box.x + a.box.w) * dw / sw - b.x);
        b.h = std::max(1, (a.box.y + a.box.h) * dh / sh - b.y);
        out.push_back({a.kind, b});
    }
    return out;
}

int run_binarize(const std::string& input, const std::string& output,
                 const std::string& overlay, const std::string& config_path,
                 const std::string& report, bool verbose) {
    const PipelineConfig config = resolve_config(config_path);
    const GrayImage image = load_image(input);
    const CardResult result = process_card(image, config);
    save_binary(result.binary, output);

    if (!overlay.empty()) {
        std::vector<ConnectedComponent> components;
        std::vector<RegionClass> classes;
        for (const RegionResult& r : result.regions) {
            components.push_back(r.cc);
            classes.push_back(r.cls);
        }
        save_gray(render_overlay(image.width, image.height, components, classes), overlay);
    }
    if (!report.empty()) write_report(result, report);
    if (verbose) print_region_diagnostics(result);
    return 0;
}

int run_eval(const std::string& input, const std::string& truth,
             const std::string& config_path) {
    const PipelineConfig config = resolve_config(config_path);
    const GrayImage image = load_image(input);
    const CardResult result = process_card(image, config);
    const auto annotations = load_annotations(truth);
    const ConfusionCounts counts = score(result, annotations);

    std::cout << "bb\tbt\ttb\ttt\taccuracy_pct\n";
    std::cout << counts.bb << "\t" << counts.bt << "\t" << counts.tb << "\t" << counts.tt
              << "\t";
    if (counts.total() == 0) {
        std::cout << "-\n";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", accuracy(counts));
        std::cout << buf << "\n";
    }
    return 0;
}

int run_gen(const std::string& spec_path, std::uint64_t seed, const std::string& image_out,
            const std::string& annotations_out) {
    const CardSpec spec = load_card_spec(spec_path);
    const GeneratedCard card = generate_card(spec, seed);
    save_gray(card.image, image_out);
    save_annotations(card.annotations, annotations_out);
    return 0;
}

int run_sweep(const std::string& input, const std::string& resolutions,
              const std::string& truth, const std::string& config_path) {
    const PipelineConfig config = resolve_config(config_path);
    const GrayImage image = load_image(input);
    std::vector<Annotation> annotations;
    if (!truth.empty()) annotations = load_annotations(truth);

    std::cout << "resolution\tmegapixels\ttotal_ms\tbackground_ms\tregions_ms\tskew_ms\t"
                 "binarize_ms\tpeak_bytes\taccuracy_pct\n";

    std::stringstream list(resolutions);
    std::string token;
    while (std::getline(list, token, ',')) {
        int w = 0, h = 0;
        if (std::sscanf(token.c_str(), "%dx%d", &w, &h) != 2 || w < 1 || h < 1)
            throw std::runtime_error("bad resolution '" + token + "', expected WxH");

        const GrayImage scaled = resize_nearest(image, w, h);
        const CardResult result = process_card(scaled, config);

        double total = 0;
        for (const StageReport& r : result.reports) total += r.ms;
        char mp[32];
        std::snprintf(mp, sizeof mp, "%.2f", double(w) * h / 1e6);

        std::cout << w << "x" << h << "\t" << mp << "\t" << format_ms(total);
        for (const StageReport& r : result.reports) std::cout << "\t" << format_ms(r.ms);
        std::cout << "\t" << peak_auxiliary_bytes(result) << "\t";

        if (truth.empty()) {
            std::cout << "-\n";
        } else {
            const auto scaled_truth =
                scale_annotations(annotations, image.width, image.height, w, h);
            const ConfusionCounts counts = score(result, scaled_truth);
            if (counts.total() == 0) {
                std::cout << "-\n";
            } else {
                char acc[32];
                std::snprintf(acc, sizeof acc, "%.2f", accuracy(counts));
                std::cout << acc << "\n";
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"business card image binarizer"};
    app.require_subcommand(1);

    std::string input, output, overlay, config_path, report, truth;
    std::string spec_path, annotations_out, resolutions;
    std::uint64_t seed = 0;
    bool verbose = false;

    auto* binarize = app.add_subcommand("binarize", "binarize one card image");
    binarize->add_option("input", input, "input image (P2/P5/P6)")->required();
    binarize->add_option("-o,--output", output, "output bitmap (P4)")->required();
    binarize->add_option("--overlay", overlay, "write a class overlay graymap");
    binarize->add_option("--config", config_path, "pipeline config file");
    binarize->add_option("--report", report, "write per-stage timing/memory report");
    binarize->add_flag("-v,--verbose", verbose, "print per-region skew diagnostics");

    auto* eval_cmd = app.add_subcommand("eval", "score component classification");
    eval_cmd->add_option("input", input, "input image")->required();
    eval_cmd->add_option("--truth", truth, "annotation file")->required();
    eval_cmd->add_option("--config", config_path, "pipeline config file");

    auto* gen = app.add_subcommand("gen", "synthesize an annotated card");
    gen->add_option("--spec", spec_path, "card layout spec")->required();
    gen->add_option("--seed", seed, "generator seed")->required();
    gen->add_option("-o,--output", output, "output graymap")->required();
    gen->add_option("-a,--annotations", annotations_out, "output annotation file")->required();

    auto* sweep = app.add_subcommand("sweep", "timing/accuracy across resolutions");
    sweep->add_option("input", input, "input image")->required();
    sweep->add_option("--resolutions", resolutions, "comma-separated WxH list")->required();
    sweep->add_option("--truth", truth, "annotation file for the input image");
    sweep->add_option("--config", config_path, "pipeline config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (binarize->parsed())
            return run_binarize(input, output, overlay, config_path, report, verbose);
        if (eval_cmd->parsed()) return run_eval(input, truth, config_path);
        if (gen->parsed()) return run_gen(spec_path, seed, output, annotations_out);
        if (sweep->parsed()) return run_sweep(input, resolutions, truth, config_path);
    } catch (const std::exception& e) {
        std::cerr << "cardbin: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
