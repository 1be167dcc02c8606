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


#include "vfr/matcher.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "number_text.hpp"
#include "vfr/error.hpp"

namespace vfr {

bool
verify_pair(const Embedding& a, const Embedding& b, double threshold) {
    return cosine_similarity(a, b) >= threshold;
}

namespace {

bool
usable(const std::optional<Embedding>& e) {
    return e.has_value() && e->norm() > 0.0;
}

}  // namespace

std::vector<SweepRow>
threshold_sweep(const std::vector<PairRecord>& pairs, const std::vector<double>& thresholds) {
    if (pairs.empty()) {
        throw EmptyInput("threshold_sweep: no pairs");
    }
    if (thresholds.empty()) {
        throw InvalidArgument("threshold_sweep: no thresholds");
    }
    std::vector<std::optional<double>> sims;
    sims.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (usable(p.a) && usable(p.b)) {
            sims.push_back(cosine_similarity(*p.a, *p.b));
        } else {
            sims.push_back(std::nullopt);
        }
    }
    std::vector<SweepRow> rows;
    for (double t : thresholds) {
        SweepRow row;
        row.threshold = t;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const bool genuine = pairs[i].same_identity;
            if (!sims[i]) {
                ++(genuine ? row.matched_noface : row.dismatched_noface);
                continue;
            }
            const bool accept = *sims[i] >= t;
            if (genuine) {
                ++(accept ? row.matched_correct : row.matched_error);
            } else {
                ++(accept ? row.dismatched_error : row.dismatched_correct);
            }
        }
        row.accuracy = static_cast<double>(row.matched_correct + row.dismatched_correct) /
                       static_cast<double>(pairs.size());
        rows.push_back(row);
    }
    return rows;
}

namespace {

constexpr const char* kSweepHeader =
    "threshold,matched_correct,matched_error,matched_noface,"
    "dismatched_correct,dismatched_error,dismatched_noface,accuracy";

}  // namespace

std::string
format_sweep_table(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%9s | %8s %8s %8s | %8s %8s %8s | %8s\n", "threshold",
                  "m.corr", "m.err", "m.noface", "d.corr", "d.err", "d.noface", "accuracy");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof(line), "%9.4f | %8zu %8zu %8zu | %8zu %8zu %8zu | %8.4f\n",
                      r.threshold, r.matched_correct, r.matched_error, r.matched_noface,
                      r.dismatched_correct, r.dismatched_error, r.dismatched_noface, r.accuracy);
        out << line;
    }
    return out.str();
}

void
write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << detail::shortest(r.threshold) << ',' << r.matched_correct << ',' << r.matched_error
            << ',' << r.matched_noface << ',' << r.dismatched_correct << ','
            << r.dismatched_error << ',' << r.dismatched_noface << ','
            << detail::shortest(r.accuracy) << '\n';
    }
}

std::vector<SweepRow>
parse_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepHeader) {
        throw FormatError("sweep csv: missing or unexpected header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream ss(line);
        SweepRow r;
        char c[7];
        ss >> r.threshold >> c[0] >> r.matched_correct >> c[1] >> r.matched_error >> c[2] >>
            r.matched_noface >> c[3] >> r.dismatched_correct >> c[4] >> r.dismatched_error >>
            c[5] >> r.dismatched_noface >> c[6] >> r.accuracy;
        bool commas = true;
        for (char x : c) {
            commas = commas && x == ',';
        }
        if (!ss || !commas || !(ss >> std::ws).eof()) {
            throw FormatError("sweep csv: malformed row '" + line + "'");
        }
        rows.push_back(r);
    }
    return rows;
}

namespace {

std::optional<Embedding>
load_pair_side(const std::filesystem::path& base, const std::string& token) {
    if (token == "-") {
        return std::nullopt;
    }
    const auto path = base / token;
    std::ifstream in(path);
    if (!in) {
        throw IoError("pair list: cannot open " + path.string());
    }
    if ((in >> std::ws).peek() == std::char_traits<char>::eof()) {
        return std::nullopt;
    }
    return parse_embedding(in);
}

}  // namespace

std::vector<PairRecord>
read_pair_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    const auto base = path.parent_path();
    std::vector<PairRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string a, b, flag, extra;
        if (!(ss >> a) || a[0] == '#') {
            continue;
        }
        if (!(ss >> b >> flag) || (ss >> extra) || (flag != "0" && flag != "1")) {
            throw FormatError("pair list line " + std::to_string(lineno) +
                              ": expected '<emb_a> <emb_b> <0|1>'");
        }
        out.push_back({load_pair_side(base, a), load_pair_side(base, b), flag == "1"});
    }
    return out;
}

Identification
identify(const Embedding& q, const HnswIndex& index, const LabelMap& labels, double threshold,
         const std::optional<SecondaryConfig>& secondary) {
    SearchResult r;
    if (secondary) {
        r = secondary_search(index, q.values(), *secondary);
    } else {
        r = index.knn_search(q.values(), 1);
    }
    Identification out;
    if (r.hits.empty()) {
        return out;
    }
    const RecordId top = r.hits.front().id;
    out.id = top;
    out.similarity = cosine_similarity(q.values(), index.vector(top));
    if (out.similarity >= threshold) {
        const auto it = labels.find(top);
        if (it == labels.end()) {
            throw InvalidArgument("identify: no label for id " + std::to_string(top));
        }
        out.identity = it->second;
    }
    return out;
}

}  // namespace vfr
