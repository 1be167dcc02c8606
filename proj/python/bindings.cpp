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


#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vfr/augment.hpp"
#include "vfr/bench.hpp"
#include "vfr/detector.hpp"
#include "vfr/error.hpp"
#include "vfr/hnsw_index.hpp"
#include "vfr/library.hpp"
#include "vfr/matcher.hpp"
#include "vfr/raster.hpp"
#include "vfr/secondary_search.hpp"

namespace py = pybind11;
using namespace vfr;

namespace {

using F32 = py::array_t<float, py::array::c_style | py::array::forcecast>;
using F64 = py::array_t<double, py::array::c_style | py::array::forcecast>;
using U8 = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

std::span<const float>
as_vector(const F32& a) {
    if (a.ndim() != 1) {
        throw InvalidArgument("expected a 1-d float array");
    }
    return {a.data(), static_cast<std::size_t>(a.shape(0))};
}

std::vector<Embedding>
as_embeddings(const F32& a, std::optional<std::vector<RecordId>> ids = std::nullopt) {
    if (a.ndim() != 2) {
        throw InvalidArgument("expected a 2-d (n, dim) float array");
    }
    const auto n = static_cast<std::size_t>(a.shape(0));
    const auto d = static_cast<std::size_t>(a.shape(1));
    if (ids && ids->size() != n) {
        throw InvalidArgument("ids length does not match the number of rows");
    }
    std::vector<Embedding> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const float* row = a.data() + i * d;
        out.emplace_back(std::vector<float>(row, row + d), ids ? (*ids)[i] : i);
    }
    return out;
}

py::tuple
result_arrays(const SearchResult& r) {
    const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(r.hits.size())};
    py::array_t<std::uint64_t> ids(shape);
    py::array_t<double> dist(shape);
    auto pi = ids.mutable_unchecked<1>();
    auto pd = dist.mutable_unchecked<1>();
    for (std::size_t i = 0; i < r.hits.size(); ++i) {
        pi(i) = r.hits[i].id;
        pd(i) = r.hits[i].distance;
    }
    return py::make_tuple(ids, dist);
}

ImageU8
to_image(const U8& a) {
    if (a.ndim() != 2 && !(a.ndim() == 3 && (a.shape(2) == 1 || a.shape(2) == 3))) {
        throw InvalidArgument("expected an (h, w) or (h, w, 1|3) uint8 array");
    }
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    const int c = a.ndim() == 3 ? static_cast<int>(a.shape(2)) : 1;
    return ImageU8(w, h, c, std::vector<std::uint8_t>(a.data(), a.data() + a.size()));
}

template <typename T>
py::array_t<T>
from_image(const Raster<T>& img, bool squeeze) {
    std::vector<py::ssize_t> shape{img.height(), img.width()};
    if (!(squeeze && img.channels() == 1)) {
        shape.push_back(img.channels());
    }
    py::array_t<T> out(shape);
    std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
    return out;
}

std::vector<Box>
to_boxes(const F64& a) {
    if (a.ndim() != 2 || a.shape(1) != 4) {
        throw InvalidArgument("expected an (n, 4) box array");
    }
    std::vector<Box> out;
    for (py::ssize_t i = 0; i < a.shape(0); ++i) {
        const double* r = a.data() + 4 * i;
        out.push_back({r[0], r[1], r[2], r[3]});
    }
    return out;
}

py::array_t<double>
from_boxes(const std::vector<Box>& boxes) {
    py::array_t<double> out({static_cast<py::ssize_t>(boxes.size()), py::ssize_t{4}});
    auto p = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        p(i, 0) = boxes[i].x_min;
        p(i, 1) = boxes[i].y_min;
        p(i, 2) = boxes[i].x_max;
        p(i, 3) = boxes[i].y_max;
    }
    return out;
}

py::dict
sweep_row(const SweepRow& r) {
    py::dict d;
    d["threshold"] = r.threshold;
    d["matched_correct"] = r.matched_correct;
    d["matched_error"] = r.matched_error;
    d["matched_noface"] = r.matched_noface;
    d["dismatched_correct"] = r.dismatched_correct;
    d["dismatched_error"] = r.dismatched_error;
    d["dismatched_noface"] = r.dismatched_noface;
    d["accuracy"] = r.accuracy;
    return d;
}

py::dict
bench_report(const BenchReport& r) {
    py::dict d;
    d["mode"] = std::string(to_string(r.mode));
    d["stream"] = std::string(to_string(r.stream));
    d["frames"] = r.frames;
    d["repetitions"] = r.repetitions;
    d["total_queries"] = r.total_queries;
    d["mean_ms"] = r.mean_ms;
    d["median_ms"] = r.median_ms;
    d["p95_ms"] = r.p95_ms;
    d["recall"] = r.recall_vs_oracle;
    return d;
}

}  // namespace

PYBIND11_MODULE(_vfr, m) {
    m.doc() = "HNSW retrieval, detector geometry and image preparation for face recognition";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", invalid.ptr());
    py::register_exception<ZeroNorm>(m, "ZeroNorm", invalid.ptr());
    py::register_exception<DuplicateId>(m, "DuplicateId", invalid.ptr());
    py::register_exception<EmptyInput>(m, "EmptyInput", invalid.ptr());
    auto format = py::register_exception<FormatError>(m, "FormatError", error.ptr());
    py::register_exception<BadMagic>(m, "BadMagic", format.ptr());
    py::register_exception<VersionMismatch>(m, "VersionMismatch", format.ptr());
    py::register_exception<TruncatedFile>(m, "TruncatedFile", format.ptr());
    py::register_exception<ChecksumMismatch>(m, "ChecksumMismatch", format.ptr());
    py::register_exception<IoError>(m, "IoError", format.ptr());

    py::enum_<DistanceMetric>(m, "Metric")
        .value("Cosine", DistanceMetric::Cosine)
        .value("EuclideanSquared", DistanceMetric::EuclideanSquared);
    py::enum_<NeighborSelection>(m, "Selection")
        .value("Nearest", NeighborSelection::Nearest)
        .value("Diverse", NeighborSelection::Diverse);
    py::enum_<CombineOp>(m, "Combine").value("And", CombineOp::And).value("Or", CombineOp::Or);

    m.def(
        "distance",
        [](const F32& a, const F32& b, DistanceMetric metric) {
            return distance(as_vector(a), as_vector(b), metric);
        },
        py::arg("a"), py::arg("b"), py::arg("metric") = DistanceMetric::Cosine);
    m.def(
        "cosine_similarity",
        [](const F32& a, const F32& b) { return cosine_similarity(as_vector(a), as_vector(b)); },
        py::arg("a"), py::arg("b"));

    py::class_<HnswIndex>(m, "HnswIndex")
        .def(py::init([](std::size_t dim, std::uint32_t m, std::uint32_t ef_construction,
                         DistanceMetric metric, std::uint64_t seed, NeighborSelection selection) {
                 auto p = HnswParams::with_m(m);
                 p.ef_construction = ef_construction;
                 p.metric = metric;
                 p.rng_seed = seed;
                 p.selection = selection;
                 return HnswIndex(dim, p);
             }),
             py::arg("dim"), py::arg("m") = 16, py::arg("ef_construction") = 200,
             py::arg("metric") = DistanceMetric::Cosine, py::arg("seed") = 42,
             py::arg("selection") = NeighborSelection::Nearest)
        .def(
            "add",
            [](HnswIndex& self, const F32& data, std::optional<std::vector<RecordId>> ids) {
                const auto rows = as_embeddings(data, std::move(ids));
                py::gil_scoped_release release;
                for (const auto& e : rows) {
                    self.insert(e);
                }
            },
            py::arg("data"), py::arg("ids") = std::nullopt,
            "Insert the rows of an (n, dim) array; ids default to 0..n-1.")
        .def(
            "knn_search",
            [](const HnswIndex& self, const F32& q, std::size_t k, std::size_t ef) {
                return result_arrays(self.knn_search(as_vector(q), k, ef));
            },
            py::arg("query"), py::arg("k") = 10, py::arg("ef") = kDefaultQueryEf,
            "Returns (ids, distances), nearest first.")
        .def(
            "secondary_search",
            [](const HnswIndex& self, const F32& q, std::size_t k, std::size_t ef,
               std::size_t expansion, CombineOp combine) {
                SecondaryConfig c;
                c.k = k;
                c.ef_first = c.ef_second = std::max(ef, k);
                c.expansion_count = std::min(expansion, k);
                c.combine = combine;
                return result_arrays(secondary_search(self, as_vector(q), c));
            },
            py::arg("query"), py::arg("k") = 10, py::arg("ef") = kDefaultQueryEf,
            py::arg("expansion") = 3, py::arg("combine") = CombineOp::Or)
        .def("vector",
             [](const HnswIndex& self, RecordId id) {
                 const auto v = self.vector(id);
                 return py::array_t<float>(
                     std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())}, v.data());
             })
        .def("neighbors", &HnswIndex::neighbors, py::arg("id"), py::arg("layer") = 0)
        .def("level", &HnswIndex::level)
        .def("contains", &HnswIndex::contains)
        .def("validate", [](const HnswIndex& self) { return self.validate().problems; })
        .def("structurally_equal", &HnswIndex::structurally_equal)
        .def("save", &HnswIndex::save)
        .def_static("load", &HnswIndex::load)
        .def("__len__", &HnswIndex::size)
        .def_property_readonly("dimension", &HnswIndex::dimension)
        .def_property_readonly("metric", &HnswIndex::metric)
        .def_property_readonly("max_level", &HnswIndex::max_level)
        .def_property_readonly("ids", &HnswIndex::ids);

    m.def(
        "brute_force_knn",
        [](const F32& data, const F32& q, std::size_t k, DistanceMetric metric) {
            return result_arrays(brute_force_knn(as_embeddings(data), as_vector(q), k, metric));
        },
        py::arg("data"), py::arg("query"), py::arg("k") = 10,
        py::arg("metric") = DistanceMetric::Cosine);

    py::class_<FeatureLibrary>(m, "FeatureLibrary")
        .def(py::init([](const std::vector<std::string>& labels, const F32& data,
                         std::string manifest, std::optional<std::int64_t> created_at) {
                 const auto rows = as_embeddings(data);
                 if (labels.size() != rows.size()) {
                     throw InvalidArgument("labels length does not match the number of rows");
                 }
                 std::vector<LabeledEmbedding> recs;
                 for (std::size_t i = 0; i < rows.size(); ++i) {
                     recs.emplace_back(labels[i], rows[i]);
                 }
                 return build_library(recs, std::move(manifest), created_at);
             }),
             py::arg("labels"), py::arg("data"), py::arg("manifest") = "",
             py::arg("created_at") = std::nullopt)
        .def("__len__", &FeatureLibrary::size)
        .def("__eq__", [](const FeatureLibrary& a, const FeatureLibrary& b) { return a == b; })
        .def_property_readonly("dimension", &FeatureLibrary::dimension)
        .def_property_readonly("created_at", &FeatureLibrary::created_at)
        .def_property_readonly("manifest", &FeatureLibrary::source_manifest)
        .def("label", [](const FeatureLibrary& self, RecordId id) { return self.record(id).label; })
        .def("save", [](const FeatureLibrary& self, const std::filesystem::path& p) {
            save_library(self, p);
        })
        .def_static("load", &load_library)
        .def(
            "index",
            [](const FeatureLibrary& self, std::uint32_t m, std::uint32_t ef_construction,
               std::uint64_t seed) {
                auto p = HnswParams::with_m(m);
                p.ef_construction = ef_construction;
                p.rng_seed = seed;
                py::gil_scoped_release release;
                return index_library(self, p).index;
            },
            py::arg("m") = 16, py::arg("ef_construction") = 200, py::arg("seed") = 42)
        .def(
            "bench",
            [](const FeatureLibrary& self, const HnswIndex& index, std::size_t frames,
               const std::string& stream, double sigma, std::size_t k, std::size_t ef,
               std::size_t repetitions, std::uint64_t seed) {
                FrameStreamConfig sc;
                sc.frame_count = frames;
                sc.kind = parse_stream_kind(stream);
                sc.query_noise_sigma = sigma;
                sc.rng_seed = seed;
                BenchConfig bc;
                bc.k = k;
                bc.ef = ef;
                bc.repetitions = repetitions;
                BenchComparison cmp;
                {
                    py::gil_scoped_release release;
                    const auto flat = flat_index_of(self, index.metric());
                    cmp = bench_compare(index, flat, simulate_stream(self, sc), sc.kind, bc);
                }
                return py::make_tuple(bench_report(cmp.hnsw), bench_report(cmp.violence));
            },
            py::arg("index"), py::arg("frames") = 200, py::arg("stream") = "simple",
            py::arg("sigma") = 0.05, py::arg("k") = 10, py::arg("ef") = kDefaultQueryEf,
            py::arg("repetitions") = 3, py::arg("seed") = 42,
            "Per-frame retrieval latency of the index against a brute-force scan.");

    m.def(
        "threshold_sweep",
        [](const F32& a, const F32& b, const std::vector<bool>& same,
           const std::vector<double>& thresholds, std::optional<std::vector<bool>> noface) {
            const auto ea = as_embeddings(a);
            const auto eb = as_embeddings(b);
            if (ea.size() != eb.size() || ea.size() != same.size() ||
                (noface && noface->size() != same.size())) {
                throw InvalidArgument("pair arrays differ in length");
            }
            std::vector<PairRecord> pairs;
            for (std::size_t i = 0; i < ea.size(); ++i) {
                PairRecord p{ea[i], eb[i], same[i]};
                if (noface && (*noface)[i]) {
                    p.b.reset();
                }
                pairs.push_back(std::move(p));
            }
            py::list rows;
            for (const auto& r : threshold_sweep(pairs, thresholds)) {
                rows.append(sweep_row(r));
            }
            return rows;
        },
        py::arg("a"), py::arg("b"), py::arg("same"),
        py::arg("thresholds") = std::vector<double>{0.2, 0.3, 0.4, 0.5, 0.6},
        py::arg("noface") = std::nullopt);

    m.def(
        "anchors",
        [](const std::string& profile, int width, int height) {
            const auto cfg = profile == "baseline" ? AnchorConfig::baseline(width, height)
                                                   : AnchorConfig::faster(width, height);
            if (profile != "baseline" && profile != "faster") {
                throw InvalidArgument("profile must be faster or baseline");
            }
            return from_boxes(generate_anchors(cfg).boxes);
        },
        py::arg("profile") = "faster", py::arg("width") = 320, py::arg("height") = 320,
        "(n, 4) anchor boxes as x_min, y_min, x_max, y_max.");
    m.def(
        "iou",
        [](const F64& a, const F64& b) {
            const auto x = to_boxes(a);
            const auto y = to_boxes(b);
            py::array_t<double> out({static_cast<py::ssize_t>(x.size()), static_cast<py::ssize_t>(y.size())});
            auto p = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < x.size(); ++i) {
                for (std::size_t j = 0; j < y.size(); ++j) {
                    p(i, j) = iou(x[i], y[j]);
                }
            }
            return out;
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "nms",
        [](const F64& boxes, const std::vector<double>& scores, double iou_threshold,
           double score_threshold) {
            const auto b = to_boxes(boxes);
            if (scores.size() != b.size()) {
                throw InvalidArgument("scores length does not match boxes");
            }
            std::vector<ScoredBox> sb;
            for (std::size_t i = 0; i < b.size(); ++i) {
                sb.push_back({b[i], scores[i]});
            }
            return nms_indices(sb, iou_threshold, score_threshold);
        },
        py::arg("boxes"), py::arg("scores"), py::arg("iou_threshold") = 0.4,
        py::arg("score_threshold") = 0.5, "Indices of kept boxes, highest score first.");
    m.def(
        "assign_labels",
        [](const F64& anchors, const F64& gt, double pos, double neg) {
            const auto labels = assign_labels(to_boxes(anchors), to_boxes(gt), pos, neg);
            py::array_t<std::int64_t> out(
                std::vector<py::ssize_t>{static_cast<py::ssize_t>(labels.size())});
            auto p = out.mutable_unchecked<1>();
            for (std::size_t i = 0; i < labels.size(); ++i) {
                p(i) = labels[i].kind == LabelKind::Positive
                           ? static_cast<std::int64_t>(labels[i].gt)
                           : (labels[i].kind == LabelKind::Ignore ? -2 : -1);
            }
            return out;
        },
        py::arg("anchors"), py::arg("gt"), py::arg("pos_threshold") = 0.5,
        py::arg("neg_threshold") = 0.3,
        "Per anchor: matched gt index, -1 for negative, -2 for ignore.");

    m.def(
        "median_filter",
        [](const U8& img, int window) {
            return from_image(median_filter(to_image(img), window), img.ndim() == 2);
        },
        py::arg("image"), py::arg("window") = 3);
    m.def(
        "wiener_restore",
        [](const U8& img, int window, std::optional<double> noise) {
            return from_image(wiener_restore(to_image(img), window, noise), img.ndim() == 2);
        },
        py::arg("image"), py::arg("window") = 3, py::arg("noise_variance") = std::nullopt);
    m.def(
        "enhance",
        [](const U8& img, int median_window, int wiener_window) {
            EnhanceConfig cfg;
            cfg.median_window = median_window;
            cfg.wiener_window = wiener_window;
            return from_image(enhance_for_recognition(to_image(img), cfg), img.ndim() == 2);
        },
        py::arg("image"), py::arg("median_window") = 3, py::arg("wiener_window") = 3,
        "Median, Wiener and normalization; returns the float32 normalized tensor.");
}
