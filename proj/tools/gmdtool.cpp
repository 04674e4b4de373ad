// gmdtool: command-line front end for the gmd library.
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmd/all.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct Options {
    double cv = 4.5;
    double ce = 1.0;
    std::vector<int> ks{1, 3, 5};
    std::uint64_t seed = 1;
    std::size_t jobs = 0;
    std::string format = "text";
    std::string out;
    double eps = gmd::kDefaultEmbeddingEps;

    std::vector<std::string> inputs;
    std::string prototypes;
    std::vector<std::string> levels{"LOW", "MED", "HIGH"};
    std::string confusion_dir;
    std::size_t trials = 100;
    std::size_t bench_trials = 5;
    std::vector<std::size_t> sizes{50, 100, 200};
};

std::string fixed9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    gmd::write_file(o.out, text);
}

std::string format_scalar(const Options& o, const std::string& name, double value) {
    if (o.format == "csv") return name + "\n" + fixed9(value) + "\n";
    if (o.format == "json") return "{\"" + name + "\": " + fixed9(value) + "}\n";
    return fixed9(value) + "\n";
}

int run_gmd(const Options& o) {
    const auto g = gmd::load_graph(o.inputs.at(0));
    const auto h = gmd::load_graph(o.inputs.at(1));
    emit(o, format_scalar(o, "gmd", gmd::gmd_value(g, h, gmd::CostParams(o.cv, o.ce))));
    return 0;
}

int run_ggd(const Options& o) {
    const auto g = gmd::load_graph(o.inputs.at(0));
    const auto h = gmd::load_graph(o.inputs.at(1));
    if (g.vertex_count() > gmd::kGgdVertexLimit || h.vertex_count() > gmd::kGgdVertexLimit) {
        std::cerr << "error: ggd uses the exhaustive solver, limited to 7 vertices per graph (got "
                  << g.vertex_count() << " and " << h.vertex_count() << ")\n";
        return kExitData;
    }
    emit(o, format_scalar(o, "ggd", gmd::ggd_exact(g, h, gmd::CostParams(o.cv, o.ce)).value));
    return 0;
}

int run_planarize(const Options& o) {
    emit(o, gmd::write_json_graph(gmd::planarize(gmd::load_graph(o.inputs.at(0)), o.eps)));
    return 0;
}

int run_convert(const Options& o) {
    emit(o, gmd::write_json_graph(gmd::load_graph(o.inputs.at(0))));
    return 0;
}

int run_classify(const Options& o) {
    const fs::path root = o.inputs.at(0);
    const auto protos = gmd::load_prototypes(o.prototypes);
    const gmd::CostParams params(o.cv, o.ce);

    std::vector<gmd::RetrievalReport> reports;
    for (const auto& name : o.levels) {
        const auto level = gmd::parse_distortion(name);
        auto records = gmd::load_letter_level(root / gmd::to_string(level), level);
        const auto skipped = gmd::planarize_records(records, o.eps, o.jobs);
        for (const auto& id : skipped)
            std::cerr << "warning: " << id << " has collinear overlapping edges; used without planarization\n";
        auto r = gmd::classify_topk(records, protos, params, o.ks, o.jobs);
        std::cerr << r.distortion << ": " << r.total << " graphs in " << fixed9(r.runtime_seconds) << " s\n";
        if (!o.confusion_dir.empty()) {
            std::ofstream cf(fs::path(o.confusion_dir) / ("confusion_" + r.distortion + ".csv"));
            if (!cf) throw gmd::DataError("cannot write confusion matrix into " + o.confusion_dir);
            gmd::write_confusion_csv(cf, r);
        }
        reports.push_back(std::move(r));
    }
    std::ostringstream os;
    gmd::write_retrieval_csv(os, reports);
    emit(o, os.str());
    return 0;
}

int run_stability(const Options& o) {
    const gmd::CostParams params(o.cv, o.ce);
    std::vector<gmd::StabilityReport> reports{
        gmd::run_gmd_stability(o.trials, o.seed, params),
        gmd::run_ggd_stability(o.trials, o.seed, params, gmd::Move::Translation),
        gmd::run_ggd_stability(o.trials, o.seed, params, gmd::Move::Jitter),
    };
    const auto tri = gmd::triangle_inequality_trials(o.trials, o.seed, params);
    std::ostringstream os;
    gmd::write_stability_csv(os, reports);
    std::cerr << "triangle inequality: " << tri.violations << " violations in " << tri.triples
              << " triples (max excess " << fixed9(tri.max_excess) << ")\n";
    emit(o, os.str());
    return 0;
}

int run_bench(const Options& o) {
    const auto rows = gmd::scaling_benchmark(o.sizes, o.bench_trials, o.seed, gmd::CostParams(o.cv, o.ce),
                                             o.jobs == 0 ? 1 : o.jobs);
    std::ostringstream os;
    gmd::write_bench_csv(os, rows);
    emit(o, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph Mover's Distance tools"};
    app.require_subcommand(1);
    Options o;

    auto add_costs = [&](CLI::App* sc) {
        sc->add_option("--cv", o.cv, "vertex cost coefficient")->check(CLI::PositiveNumber);
        sc->add_option("--ce", o.ce, "edge cost coefficient")->check(CLI::PositiveNumber);
    };
    auto add_out = [&](CLI::App* sc) { sc->add_option("--out", o.out, "write output to this file"); };
    auto add_format = [&](CLI::App* sc) {
        sc->add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    };

    auto* gmd_cmd = app.add_subcommand("gmd", "Graph Mover's Distance between two graphs");
    gmd_cmd->add_option("graphs", o.inputs, "two graph files (.json or .gxl)")->required()->expected(2);
    add_costs(gmd_cmd);
    add_format(gmd_cmd);
    add_out(gmd_cmd);

    auto* ggd_cmd = app.add_subcommand("ggd", "exact Geometric Graph Distance (at most 7 vertices per graph)");
    ggd_cmd->add_option("graphs", o.inputs, "two graph files (.json or .gxl)")->required()->expected(2);
    add_costs(ggd_cmd);
    add_format(ggd_cmd);
    add_out(ggd_cmd);

    auto* planar_cmd = app.add_subcommand("planarize", "split edges at crossings, write native JSON");
    planar_cmd->add_option("graph", o.inputs, "input graph")->required()->expected(1);
    planar_cmd->add_option("--eps", o.eps, "snapping tolerance")->check(CLI::PositiveNumber);
    add_out(planar_cmd);

    auto* convert_cmd = app.add_subcommand("convert", "convert a graph (e.g. GXL) to native JSON");
    convert_cmd->add_option("graph", o.inputs, "input graph")->required()->expected(1);
    add_out(convert_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "top-k prototype retrieval on the LETTER dataset");
    classify_cmd->add_option("root", o.inputs, "dataset root containing LOW/MED/HIGH")->required()->expected(1);
    classify_cmd->add_option("--prototypes", o.prototypes, "directory with <letter>.json prototypes")->required();
    classify_cmd->add_option("--levels", o.levels, "distortion levels")->delimiter(',');
    classify_cmd->add_option("--k", o.ks, "k values")->delimiter(',')->check(CLI::PositiveNumber);
    classify_cmd->add_option("--jobs", o.jobs, "worker threads (0 = all processors)");
    classify_cmd->add_option("--confusion-dir", o.confusion_dir, "write confusion_<LEVEL>.csv here");
    classify_cmd->add_option("--eps", o.eps, "planarization tolerance")->check(CLI::PositiveNumber);
    add_costs(classify_cmd);
    add_out(classify_cmd);

    auto* stab_cmd = app.add_subcommand("stability", "stability and triangle-inequality trials");
    stab_cmd->add_option("--trials", o.trials, "trials per suite");
    stab_cmd->add_option("--seed", o.seed, "random seed");
    add_costs(stab_cmd);
    add_out(stab_cmd);

    auto* bench_cmd = app.add_subcommand("bench", "median gmd wall time versus graph size");
    bench_cmd->add_option("--sizes", o.sizes, "vertex counts")->delimiter(',');
    bench_cmd->add_option("--trials", o.bench_trials, "pairs per size");
    bench_cmd->add_option("--seed", o.seed, "random seed");
    bench_cmd->add_option("--jobs", o.jobs, "worker threads (default 1)");
    add_costs(bench_cmd);
    add_out(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gmd_cmd) return run_gmd(o);
        if (*ggd_cmd) return run_ggd(o);
        if (*planar_cmd) return run_planarize(o);
        if (*convert_cmd) return run_convert(o);
        if (*classify_cmd) return run_classify(o);
        if (*stab_cmd) return run_stability(o);
        if (*bench_cmd) return run_bench(o);
    } catch (const gmd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
