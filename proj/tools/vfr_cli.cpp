// Copyright 2026-present the vfr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vfr/augment.hpp"
#include "vfr/bench.hpp"
#include "vfr/detector.hpp"
#include "vfr/error.hpp"
#include "vfr/image_io.hpp"
#include "vfr/library.hpp"
#include "vfr/matcher.hpp"
#include "vfr/raster.hpp"
#include "vfr/synth.hpp"

namespace fs = std::filesystem;
using namespace vfr;

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kFormat = 3,
    kRuntime = 4,
};

std::string
num(double v, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

std::string
exact(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

struct Globals {
    std::uint64_t seed = 42;
    bool csv = false;
};

struct SecondaryFlags {
    bool enabled = false;
    std::string combine = "or";
    std::size_t expansion = 3;
    std::size_t ef_second = kDefaultQueryEf;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--secondary", enabled, "Run the two-pass secondary search");
        cmd->add_option("--combine", combine, "Pass combination: and|or")
            ->check(CLI::IsMember({"and", "or"}));
        cmd->add_option("--expansion", expansion, "Top hits re-queried in the second pass");
        cmd->add_option("--ef-second", ef_second, "Beam width of the second pass");
    }

    [[nodiscard]] std::optional<SecondaryConfig> config(std::size_t k, std::size_t ef) const {
        if (!enabled) {
            return std::nullopt;
        }
        SecondaryConfig c;
        c.k = k;
        c.ef_first = ef;
        c.ef_second = std::max(ef_second, k);
        c.expansion_count = std::min(expansion, k);
        c.combine = parse_combine_op(combine);
        return c;
    }
};

std::vector<ScoredBox>
read_boxes(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open boxes file " + path.string());
    }
    std::vector<ScoredBox> boxes;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        ScoredBox b;
        std::string extra;
        if (!(ls >> b.bbox.x_min >> b.bbox.y_min >> b.bbox.x_max >> b.bbox.y_max >> b.score) ||
            (ls >> extra)) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected 'x_min y_min x_max y_max score'");
        }
        boxes.push_back(b);
    }
    return boxes;
}

std::vector<int>
parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error&) {
            throw InvalidArgument("not an integer list: '" + text + "'");
        }
    }
    return out;
}

// enhance

struct EnhanceArgs {
    std::string in, out;
    int median = 3;
    int wiener = 3;
    std::optional<double> noise;
};

int
run_enhance(const EnhanceArgs& a, const Globals& g) {
    const auto img = read_pnm(fs::path(a.in));
    EnhanceConfig cfg;
    cfg.median_window = a.median;
    cfg.wiener_window = a.wiener;
    cfg.noise_variance = a.noise;
    const auto params = NormalizeParams::defaults_for<std::uint8_t>();
    cfg.normalization = params;
    const auto tensor = enhance_for_recognition(img, cfg);
    const auto restored = denormalize<std::uint8_t>(tensor, params);
    write_pnm(fs::path(a.out), restored);
    const double mae = mean_absolute_error(img, restored);
    if (g.csv) {
        std::cout << "input,output,width,height,channels,mae_vs_input\n"
                  << a.in << ',' << a.out << ',' << img.width() << ',' << img.height() << ','
                  << img.channels() << ',' << exact(mae) << '\n';
    } else {
        std::cout << "enhanced " << a.in << " -> " << a.out << " (" << img.width() << "x"
                  << img.height() << "x" << img.channels() << ", median " << a.median
                  << ", wiener " << a.wiener << ", mean abs change " << num(mae, 4) << ")\n";
    }
    return kOk;
}

// augment

struct AugmentArgs {
    std::string image, annotations, out_dir;
    AugmentConfig cfg;
};

int
run_augment(AugmentArgs a, const Globals& g) {
    a.cfg.rng_seed = g.seed;
    const auto img = read_pnm(fs::path(a.image));
    const auto anns = read_annotations(fs::path(a.annotations));
    const auto result = multiscale_augment(img, anns, a.cfg);
    fs::create_directories(a.out_dir);
    if (g.csv) {
        std::cout << "crop,scale,origin_x,origin_y,faces,valid_faces,image,annotations\n";
    }
    for (std::size_t i = 0; i < result.crops.size(); ++i) {
        const auto& c = result.crops[i];
        char stem[32];
        std::snprintf(stem, sizeof(stem), "crop_%03zu", i);
        const fs::path img_path = fs::path(a.out_dir) / (std::string(stem) + ".pnm");
        const fs::path ann_path = fs::path(a.out_dir) / (std::string(stem) + ".txt");
        std::vector<FaceAnnotation> kept;
        for (const auto& f : c.faces) {
            if (f.valid) {
                kept.push_back(f);
            }
        }
        write_pnm(img_path, c.image);
        write_annotations(ann_path, kept);
        const std::size_t valid = kept.size();
        if (g.csv) {
            std::cout << i << ',' << exact(c.transform.scale) << ',' << c.transform.origin_x << ','
                      << c.transform.origin_y << ',' << c.faces.size() << ',' << valid << ','
                      << img_path.string() << ',' << ann_path.string() << '\n';
        } else {
            std::cout << stem << "  scale " << num(c.transform.scale, 2) << "  origin ("
                      << c.transform.origin_x << ", " << c.transform.origin_y << ")  faces "
                      << valid << "/" << c.faces.size() << " valid\n";
        }
    }
    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    if (!g.csv) {
        std::cout << result.crops.size() << " crops written to " << a.out_dir << '\n';
    }
    return kOk;
}

// anchors

struct AnchorArgs {
    int width = 320;
    int height = 320;
    std::string profile = "faster";
    std::string strides;
};

int
run_anchors(const AnchorArgs& a, const Globals& g) {
    auto cfg = a.profile == "baseline" ? AnchorConfig::baseline(a.width, a.height)
                                       : AnchorConfig::faster(a.width, a.height);
    if (!a.strides.empty()) {
        const bool landmarks = a.profile == "baseline";
        cfg.levels.clear();
        for (int s : parse_int_list(a.strides)) {
            cfg.levels.push_back(StrideLevel::standard(s, landmarks));
        }
    }
    const auto set = generate_anchors(cfg);
    if (g.csv) {
        std::cout << "stride,cols,rows,anchors_per_cell,count,landmarks\n";
        for (std::size_t i = 0; i < set.levels.size(); ++i) {
            const auto& l = set.levels[i];
            std::cout << l.stride << ',' << l.cols << ',' << l.rows << ','
                      << cfg.levels[i].scales.size() << ',' << l.count << ','
                      << (l.emit_landmarks ? 1 : 0) << '\n';
        }
        return kOk;
    }
    std::cout << set.boxes.size() << '\n';
    for (std::size_t i = 0; i < set.levels.size(); ++i) {
        const auto& l = set.levels[i];
        std::cout << "  stride " << l.stride << ": " << l.cols << "x" << l.rows << " x "
                  << cfg.levels[i].scales.size() << " = " << l.count
                  << (l.emit_landmarks ? "  (landmarks)" : "") << '\n';
    }
    return kOk;
}

// nms

struct NmsArgs {
    std::string boxes;
    double iou = 0.4;
    double score = 0.5;
};

int
run_nms(const NmsArgs& a, const Globals& g) {
    const auto boxes = read_boxes(fs::path(a.boxes));
    const auto keep = nms_indices(boxes, a.iou, a.score);
    if (g.csv) {
        std::cout << "index,x_min,y_min,x_max,y_max,score\n";
    }
    for (std::size_t i : keep) {
        const auto& b = boxes[i];
        const char sep = g.csv ? ',' : ' ';
        if (g.csv) {
            std::cout << i << sep;
        }
        std::cout << exact(b.bbox.x_min) << sep << exact(b.bbox.y_min) << sep
                  << exact(b.bbox.x_max) << sep << exact(b.bbox.y_max) << sep << exact(b.score)
                  << '\n';
    }
    if (!g.csv) {
        std::cerr << keep.size() << " of " << boxes.size() << " boxes kept\n";
    }
    return kOk;
}

// lib build

struct LibArgs {
    std::string bulk, out;
    std::optional<std::int64_t> created_at;
};

int
run_lib_build(const LibArgs& a, const Globals& g) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = read_bulk_embeddings(fs::path(a.bulk));
    const auto lib = build_library(records, a.bulk, a.created_at);
    save_library(lib, fs::path(a.out));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (g.csv) {
        std::cout << "library,records,dimension,created_at,build_s\n"
                  << a.out << ',' << lib.size() << ',' << lib.dimension() << ','
                  << lib.created_at() << ',' << exact(secs) << '\n';
    } else {
        std::cout << "library " << a.out << ": " << lib.size() << " records, dimension "
                  << lib.dimension() << ", built in " << num(secs, 3) << " s\n";
    }
    return kOk;
}

// index build

struct IndexArgs {
    std::string lib, out;
    std::uint32_t m = 16;
    std::optional<std::uint32_t> m0;
    std::uint32_t efc = 200;
    std::string metric = "cosine";
    std::string selection = "nearest";
};

int
run_index_build(const IndexArgs& a, const Globals& g) {
    const auto lib = load_library(fs::path(a.lib));
    auto params = HnswParams::with_m(a.m);
    if (a.m0) {
        params.m0 = *a.m0;
    }
    params.ef_construction = a.efc;
    params.metric = parse_metric(a.metric);
    params.rng_seed = g.seed;
    params.selection =
        a.selection == "diverse" ? NeighborSelection::Diverse : NeighborSelection::Nearest;
    const auto t0 = std::chrono::steady_clock::now();
    const auto indexed = index_library(lib, params);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    indexed.index.save(fs::path(a.out));
    if (g.csv) {
        std::cout << "index,elements,dimension,m,m0,ef_construction,max_level,build_s\n"
                  << a.out << ',' << indexed.index.size() << ',' << indexed.index.dimension() << ','
                  << params.m << ',' << params.m0 << ',' << params.ef_construction << ','
                  << indexed.index.max_level() << ',' << exact(secs) << '\n';
    } else {
        std::cout << "index " << a.out << ": " << indexed.index.size() << " elements, M "
                  << params.m << ", efc " << params.ef_construction << ", top layer "
                  << indexed.index.max_level() << ", built in " << num(secs, 3) << " s\n";
    }
    return kOk;
}

HnswIndex
load_index_for(const fs::path& index_path, const FeatureLibrary& lib) {
    auto index = HnswIndex::load(index_path);
    if (index.dimension() != lib.dimension()) {
        throw DimensionMismatch("index and library dimensions differ");
    }
    for (RecordId id : index.ids()) {
        if (!lib.contains(id)) {
            throw InvalidArgument("index holds id " + std::to_string(id) +
                                  " that the library does not");
        }
    }
    return index;
}

// query

struct QueryArgs {
    std::string index, lib, emb;
    std::size_t k = 10;
    std::size_t ef = kDefaultQueryEf;
    SecondaryFlags secondary;
    std::optional<double> threshold;
};

int
run_query(const QueryArgs& a, const Globals& g) {
    const auto lib = load_library(fs::path(a.lib));
    const auto index = load_index_for(fs::path(a.index), lib);
    const auto q = read_embedding(fs::path(a.emb));
    const auto sec = a.secondary.config(a.k, a.ef);
    const auto result = sec ? secondary_search(index, q, *sec) : index.knn_search(q, a.k, a.ef);

    if (g.csv) {
        std::cout << "rank,id,label,distance,similarity\n";
    }
    for (std::size_t r = 0; r < result.hits.size(); ++r) {
        const auto& h = result.hits[r];
        const auto& rec = lib.record(h.id);
        const double sim = cosine_similarity(q.values(), rec.embedding.values());
        if (g.csv) {
            std::cout << r + 1 << ',' << h.id << ',' << rec.label << ',' << exact(h.distance) << ','
                      << exact(sim) << '\n';
        } else {
            std::cout << r + 1 << "  " << rec.label << "  id " << h.id << "  similarity "
                      << num(sim) << "  distance " << num(h.distance) << '\n';
        }
    }
    if (result.k_clamped) {
        std::cerr << "warning: only " << result.hits.size() << " results for k=" << a.k << '\n';
    }
    if (a.threshold) {
        LabelMap labels;
        for (RecordId id : index.ids()) {
            labels.emplace(id, lib.record(id).label);
        }
        const auto who = identify(q, index, labels, *a.threshold, sec);
        if (g.csv) {
            std::cout << "# identity," << who.identity.value_or("Unknown") << ','
                      << exact(who.similarity) << '\n';
        } else {
            std::cout << "identity: " << who.identity.value_or("Unknown") << " (similarity "
                      << num(who.similarity) << ", threshold " << num(*a.threshold, 3) << ")\n";
        }
    }
    return kOk;
}

// sweep

struct SweepArgs {
    std::string pairs;
    std::vector<double> thresholds{0.2, 0.3, 0.4, 0.5, 0.6};
};

int
run_sweep(const SweepArgs& a, const Globals& g) {
    const auto pairs = read_pair_list(fs::path(a.pairs));
    const auto rows = threshold_sweep(pairs, a.thresholds);
    if (g.csv) {
        write_sweep_csv(std::cout, rows);
    } else {
        std::cout << pairs.size() << " pairs\n" << format_sweep_table(rows);
    }
    return kOk;
}

// bench

struct BenchArgs {
    std::string index, lib;
    std::string stream = "simple";
    std::size_t frames = 200;
    double sigma = 0.05;
    std::size_t k = 10;
    std::size_t ef = kDefaultQueryEf;
    std::size_t repetitions = 3;
    bool parallel = false;
    SecondaryFlags secondary;
};

int
run_bench(const BenchArgs& a, const Globals& g) {
    const auto lib = load_library(fs::path(a.lib));
    const auto index = load_index_for(fs::path(a.index), lib);
    const auto flat = flat_index_of(lib, index.metric());

    FrameStreamConfig sc;
    sc.frame_count = a.frames;
    sc.kind = parse_stream_kind(a.stream);
    sc.query_noise_sigma = a.sigma;
    sc.rng_seed = g.seed;
    const auto stream = simulate_stream(lib, sc);

    BenchConfig bc;
    bc.k = a.k;
    bc.ef = a.ef;
    bc.repetitions = a.repetitions;
    bc.parallel = a.parallel;
    bc.secondary = a.secondary.config(a.k, a.ef);
    const auto cmp = bench_compare(index, flat, stream, sc.kind, bc);

    const std::vector<BenchReport> reports{cmp.hnsw, cmp.violence};
    if (g.csv) {
        write_bench_csv(std::cout, reports);
        return kOk;
    }
    std::cout << "per-frame time covers retrieval only; detection and embedding are not timed\n"
              << lib.size() << " library records, " << a.frames << " " << to_string(sc.kind)
              << " frames, k " << a.k << ", ef " << a.ef
              << (bc.secondary ? ", secondary " + std::string(to_string(bc.secondary->combine)) : "")
              << '\n'
              << format_bench_table(reports) << "hnsw/violence mean ratio "
              << num(cmp.hnsw.mean_ms / cmp.violence.mean_ms, 4) << '\n';
    return kOk;
}

// synth

struct SynthGalleryArgs {
    GalleryConfig cfg;
    std::string out;
};

int
run_synth_gallery(SynthGalleryArgs a, const Globals& g) {
    a.cfg.rng_seed = g.seed;
    const auto records = synthetic_gallery(a.cfg);
    std::ofstream out(a.out);
    if (!out) {
        throw IoError("cannot write " + a.out);
    }
    write_bulk_embeddings(out, records);
    if (!out) {
        throw IoError("write failed: " + a.out);
    }
    if (!g.csv) {
        std::cout << records.size() << " embeddings written to " << a.out << '\n';
    }
    return kOk;
}

struct SynthPairsArgs {
    PairsConfig cfg;
    std::string out_dir;
};

int
run_synth_pairs(SynthPairsArgs a, const Globals& g) {
    a.cfg.rng_seed = g.seed;
    const auto list = write_pair_fixture(fs::path(a.out_dir), synthetic_pairs(a.cfg));
    if (!g.csv) {
        std::cout << 2 * a.cfg.per_side << " pairs written, list " << list.string() << '\n';
    } else {
        std::cout << list.string() << '\n';
    }
    return kOk;
}

}  // namespace

int
main(int argc, char** argv) {
    CLI::App app{"vfr: face recognition retrieval toolkit", "vfr"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_flag("--csv", g.csv, "Emit reports as CSV");

    EnhanceArgs enhance;
    auto* c_enh = app.add_subcommand("enhance", "Median, Wiener and normalization chain on a PNM");
    c_enh->add_option("input", enhance.in)->required()->check(CLI::ExistingFile);
    c_enh->add_option("output", enhance.out)->required();
    c_enh->add_option("--median", enhance.median, "Median window")->capture_default_str();
    c_enh->add_option("--wiener", enhance.wiener, "Wiener window")->capture_default_str();
    c_enh->add_option("--noise", enhance.noise, "Wiener noise variance (estimated when absent)");

    AugmentArgs augment;
    auto* c_aug = app.add_subcommand("augment", "Multi-scale random crops with annotations");
    c_aug->add_option("image", augment.image)->required()->check(CLI::ExistingFile);
    c_aug->add_option("annotations", augment.annotations)->required()->check(CLI::ExistingFile);
    c_aug->add_option("--out-dir", augment.out_dir)->required();
    c_aug->add_option("--crops", augment.cfg.crops_per_image)->capture_default_str();
    c_aug->add_option("--crop-size", augment.cfg.crop_size)->capture_default_str();
    c_aug->add_option("--scales", augment.cfg.scales)->delimiter(',');
    c_aug->add_option("--min-overlap", augment.cfg.min_face_overlap)->capture_default_str();

    AnchorArgs anchors;
    auto* c_anc = app.add_subcommand("anchors", "Count and describe the anchor layout");
    c_anc->add_option("--width", anchors.width)->capture_default_str();
    c_anc->add_option("--height", anchors.height)->capture_default_str();
    c_anc->add_option("--profile", anchors.profile)
        ->check(CLI::IsMember({"faster", "baseline"}))
        ->capture_default_str();
    c_anc->add_option("--strides", anchors.strides, "Comma-separated strides, e.g. 4,8");

    NmsArgs nmsa;
    auto* c_nms = app.add_subcommand("nms", "Non-maximum suppression over a boxes file");
    c_nms->add_option("boxes", nmsa.boxes)->required()->check(CLI::ExistingFile);
    c_nms->add_option("--iou", nmsa.iou)->capture_default_str();
    c_nms->add_option("--score", nmsa.score)->capture_default_str();

    LibArgs liba;
    auto* c_lib = app.add_subcommand("lib", "Feature library operations");
    c_lib->require_subcommand(1);
    auto* c_lib_build = c_lib->add_subcommand("build", "Build a library from a bulk embedding file");
    c_lib_build->add_option("bulk", liba.bulk)->required()->check(CLI::ExistingFile);
    c_lib_build->add_option("--out", liba.out)->required();
    c_lib_build->add_option("--created-at", liba.created_at, "Unix timestamp (default: now)");

    IndexArgs indexa;
    auto* c_idx = app.add_subcommand("index", "HNSW index operations");
    c_idx->require_subcommand(1);
    auto* c_idx_build = c_idx->add_subcommand("build", "Index a saved library");
    c_idx_build->add_option("lib", indexa.lib)->required()->check(CLI::ExistingFile);
    c_idx_build->add_option("--out", indexa.out)->required();
    c_idx_build->add_option("--m", indexa.m)->capture_default_str();
    c_idx_build->add_option("--m0", indexa.m0, "Layer-0 capacity (default 2*M)");
    c_idx_build->add_option("--efc", indexa.efc)->capture_default_str();
    c_idx_build->add_option("--metric", indexa.metric)
        ->check(CLI::IsMember({"cosine", "l2sq"}))
        ->capture_default_str();
    c_idx_build->add_option("--selection", indexa.selection)
        ->check(CLI::IsMember({"nearest", "diverse"}))
        ->capture_default_str();

    QueryArgs query;
    auto* c_q = app.add_subcommand("query", "k-NN query of one embedding");
    c_q->add_option("index", query.index)->required()->check(CLI::ExistingFile);
    c_q->add_option("lib", query.lib)->required()->check(CLI::ExistingFile);
    c_q->add_option("embedding", query.emb)->required()->check(CLI::ExistingFile);
    c_q->add_option("-k", query.k)->capture_default_str();
    c_q->add_option("--ef", query.ef)->capture_default_str();
    c_q->add_option("--threshold", query.threshold, "Accept the top hit at this similarity");
    query.secondary.attach(c_q);

    SweepArgs sweep;
    auto* c_sw = app.add_subcommand("sweep", "Verification threshold sweep over a pair list");
    c_sw->add_option("pairs", sweep.pairs)->required()->check(CLI::ExistingFile);
    c_sw->add_option("--thresholds", sweep.thresholds)->delimiter(',');

    BenchArgs bench;
    auto* c_b = app.add_subcommand("bench", "HNSW vs brute-force per-frame retrieval latency");
    c_b->add_option("index", bench.index)->required()->check(CLI::ExistingFile);
    c_b->add_option("lib", bench.lib)->required()->check(CLI::ExistingFile);
    c_b->add_option("--stream", bench.stream)
        ->check(CLI::IsMember({"simple", "complex"}))
        ->capture_default_str();
    c_b->add_option("--frames", bench.frames)->capture_default_str();
    c_b->add_option("--sigma", bench.sigma)->capture_default_str();
    c_b->add_option("-k", bench.k)->capture_default_str();
    c_b->add_option("--ef", bench.ef)->capture_default_str();
    c_b->add_option("--repetitions", bench.repetitions)->capture_default_str();
    c_b->add_flag("--parallel", bench.parallel, "Spread frames over threads");
    bench.secondary.attach(c_b);

    SynthGalleryArgs sgal;
    SynthPairsArgs spairs;
    auto* c_syn = app.add_subcommand("synth", "Synthetic fixtures");
    c_syn->require_subcommand(1);
    auto* c_syn_gal = c_syn->add_subcommand("gallery", "Clustered labeled embeddings (bulk format)");
    c_syn_gal->add_option("--identities", sgal.cfg.identities)->capture_default_str();
    c_syn_gal->add_option("--photos", sgal.cfg.photos_per_identity)->capture_default_str();
    c_syn_gal->add_option("--dim", sgal.cfg.dimension)->capture_default_str();
    c_syn_gal->add_option("--spread", sgal.cfg.spread)->capture_default_str();
    c_syn_gal->add_option("--out", sgal.out)->required();
    auto* c_syn_pairs = c_syn->add_subcommand("pairs", "Gaussian genuine/impostor pair fixture");
    c_syn_pairs->add_option("--per-side", spairs.cfg.per_side)->capture_default_str();
    c_syn_pairs->add_option("--genuine", spairs.cfg.genuine_mean)->capture_default_str();
    c_syn_pairs->add_option("--impostor", spairs.cfg.impostor_mean)->capture_default_str();
    c_syn_pairs->add_option("--sd", spairs.cfg.sd)->capture_default_str();
    c_syn_pairs->add_option("--dim", spairs.cfg.dimension)->capture_default_str();
    c_syn_pairs->add_option("--noface", spairs.cfg.noface)->capture_default_str();
    c_syn_pairs->add_option("--out-dir", spairs.out_dir)->required();

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed") {
            ++i;
            continue;
        }
        if (arg.empty() || arg[0] == '-') {
            continue;
        }
        if (app.get_subcommand_no_throw(arg) == nullptr) {
            std::cerr << "unknown subcommand '" << arg << "'\n\n" << app.help();
            return kUsage;
        }
        break;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        if (!e.get_name().empty() && e.get_exit_code() != 0) {
            std::cerr << '\n' << app.help();
        }
        return kUsage;
    }

    try {
        if (c_enh->parsed()) return run_enhance(enhance, g);
        if (c_aug->parsed()) return run_augment(augment, g);
        if (c_anc->parsed()) return run_anchors(anchors, g);
        if (c_nms->parsed()) return run_nms(nmsa, g);
        if (c_lib_build->parsed()) return run_lib_build(liba, g);
        if (c_idx_build->parsed()) return run_index_build(indexa, g);
        if (c_q->parsed()) return run_query(query, g);
        if (c_sw->parsed()) return run_sweep(sweep, g);
        if (c_b->parsed()) return run_bench(bench, g);
        if (c_syn_gal->parsed()) return run_synth_gallery(sgal, g);
        if (c_syn_pairs->parsed()) return run_synth_pairs(spairs, g);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    std::cerr << app.help();
    return kUsage;
}
