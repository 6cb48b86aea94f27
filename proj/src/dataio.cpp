#include "nqsvdd/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nqsvdd {

namespace {

std::uint32_t read_be32(std::istream& in, const char* what) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw FormatError(std::string("idx: truncated ") + what);
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

}  // namespace

ImageSet load_idx(const std::string& images_path,
                  const std::string& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw FormatError("idx: cannot open " + images_path);
    if (read_be32(img, "image magic") != 0x00000803u)
        throw FormatError("idx: bad image magic in " + images_path);

    ImageSet set;
    set.count = static_cast<int>(read_be32(img, "count"));
    set.rows = static_cast<int>(read_be32(img, "rows"));
    set.cols = static_cast<int>(read_be32(img, "cols"));
    if (set.count <= 0 || set.rows <= 0 || set.cols <= 0)
        throw FormatError("idx: bad dimensions in " + images_path);
    std::size_t n =
        std::size_t(set.count) * std::size_t(set.rows) * std::size_t(set.cols);
    set.pixels.resize(n);
    img.read(reinterpret_cast<char*>(set.pixels.data()),
             static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(img.gcount()) != n)
        throw FormatError("idx: truncated pixel data in " + images_path);

    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) throw FormatError("idx: cannot open " + labels_path);
    if (read_be32(lab, "label magic") != 0x00000801u)
        throw FormatError("idx: bad label magic in " + labels_path);
    int label_count = static_cast<int>(read_be32(lab, "label count"));
    if (label_count != set.count)
        throw FormatError("idx: label count does not match image count");
    set.labels.resize(set.count);
    lab.read(reinterpret_cast<char*>(set.labels.data()), set.count);
    if (static_cast<int>(lab.gcount()) != set.count)
        throw FormatError("idx: truncated label data in " + labels_path);
    return set;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\"");
    std::size_t b = s.find_last_not_of(" \t\"");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

bool parse_number(const std::string& s, double* out) {
    if (s.empty()) return false;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) return false;
    while (*end == ' ' || *end == '\t') ++end;
    if (*end != '\0') return false;
    *out = v;
    return true;
}

}  // namespace

Table load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw FormatError("csv: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw FormatError("csv: empty file " + path);
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = trim(h);

    auto find_col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw FormatError("csv: missing column '" + name + "' in " + path);
    };

    int label_col = find_col(schema.label_column);
    std::vector<int> feat_cols;
    Table t;
    if (schema.feature_columns.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (static_cast<int>(i) == label_col) continue;
            feat_cols.push_back(static_cast<int>(i));
            t.feature_names.push_back(header[i]);
        }
    } else {
        for (const auto& name : schema.feature_columns) {
            feat_cols.push_back(find_col(name));
            t.feature_names.push_back(name);
        }
    }
    t.n_cols = static_cast<int>(feat_cols.size());

    std::vector<double> row(t.n_cols);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() < header.size()) {
            ++t.dropped_rows;
            continue;
        }
        bool ok = true;
        for (int i = 0; i < t.n_cols; ++i) {
            double v;
            if (!parse_number(trim(cells[feat_cols[i]]), &v) ||
                !std::isfinite(v)) {
                ok = false;
                break;
            }
            row[i] = v;
        }
        if (!ok) {
            ++t.dropped_rows;
            continue;
        }

        std::string label_cell = trim(cells[label_col]);
        double num;
        int label;
        if (parse_number(label_cell, &num)) {
            label = static_cast<int>(num);
        } else {
            bool matched = false;
            label = 0;
            for (const auto& [needle, value] : schema.label_substrings) {
                if (label_cell.find(needle) != std::string::npos) {
                    label = value;
                    matched = true;
                    break;
                }
            }
            if (!matched)
                throw FormatError("csv: unmapped label '" + label_cell + "'");
        }
        t.values.insert(t.values.end(), row.begin(), row.end());
        t.labels.push_back(label);
        ++t.n_rows;
    }
    if (t.n_rows == 0) throw FormatError("csv: no data rows in " + path);
    return t;
}

namespace {

struct Scaler {
    std::vector<double> lo, hi;

    static Scaler fit(const std::vector<std::vector<double>>& rows) {
        Scaler s;
        if (rows.empty()) throw StructuralError("scaler: empty training set");
        std::size_t d = rows.front().size();
        s.lo.assign(d, std::numeric_limits<double>::infinity());
        s.hi.assign(d, -std::numeric_limits<double>::infinity());
        for (const auto& r : rows)
            for (std::size_t i = 0; i < d; ++i) {
                s.lo[i] = std::min(s.lo[i], r[i]);
                s.hi[i] = std::max(s.hi[i], r[i]);
            }
        return s;
    }

    void apply(std::vector<double>& r, bool clip) const {
        for (std::size_t i = 0; i < r.size(); ++i) {
            double span = hi[i] - lo[i];
            r[i] = span > 0.0 ? (r[i] - lo[i]) / span : 0.0;
            if (clip) r[i] = std::clamp(r[i], 0.0, 1.0);
        }
    }
};

std::vector<double> image_row(const ImageSet& set, std::size_t idx) {
    std::size_t px = std::size_t(set.rows) * set.cols;
    std::vector<double> out(px);
    const std::uint8_t* p = set.pixels.data() + idx * px;
    for (std::size_t i = 0; i < px; ++i) out[i] = static_cast<double>(p[i]);
    return out;
}

std::vector<std::size_t> indices_with_label(const std::vector<std::uint8_t>& labels,
                                            int want) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == want) out.push_back(i);
    return out;
}

}  // namespace

OccTask make_task_images(const ImageSet& train_set, const ImageSet& test_set,
                         const std::string& dataset, int target,
                         std::uint64_t seed, const TaskSizes& sizes) {
    OccTask task;
    task.dataset = dataset;
    task.target_label = target;
    task.seed = seed;
    task.input_shape = {1, train_set.rows, train_set.cols};

    Rng rng(seed);

    auto train_pool = indices_with_label(train_set.labels, target);
    if (train_pool.size() < static_cast<std::size_t>(sizes.train))
        throw StructuralError("make_task: not enough training samples");
    for (std::size_t k :
         rng.sample_without_replacement(train_pool.size(), sizes.train))
        task.train_x.push_back(image_row(train_set, train_pool[k]));

    auto test_target_pool = indices_with_label(test_set.labels, target);
    if (test_target_pool.size() < static_cast<std::size_t>(sizes.test_target))
        throw StructuralError("make_task: not enough target test samples");
    for (std::size_t k : rng.sample_without_replacement(
             test_target_pool.size(), sizes.test_target)) {
        task.test_x.push_back(image_row(test_set, test_target_pool[k]));
        task.test_is_outlier.push_back(0);
    }

    for (int cls = 0; cls <= 9; ++cls) {
        if (cls == target) continue;
        auto pool = indices_with_label(test_set.labels, cls);
        if (pool.size() < static_cast<std::size_t>(sizes.outliers_per_class))
            throw StructuralError("make_task: not enough outlier test samples");
        for (std::size_t k : rng.sample_without_replacement(
                 pool.size(), sizes.outliers_per_class)) {
            task.test_x.push_back(image_row(test_set, pool[k]));
            task.test_is_outlier.push_back(1);
        }
    }

    Scaler s = Scaler::fit(task.train_x);
    for (auto& r : task.train_x) s.apply(r, false);
    for (auto& r : task.test_x) s.apply(r, true);
    task.scale_min = s.lo;
    task.scale_max = s.hi;
    return task;
}

OccTask make_task_table(const Table& table, const std::string& dataset,
                        int target_label, std::uint64_t seed,
                        const TaskSizes& sizes) {
    OccTask task;
    task.dataset = dataset;
    task.target_label = target_label;
    task.seed = seed;
    task.input_shape = {1, table.n_cols};

    std::vector<std::size_t> target_pool, outlier_pool;
    for (int r = 0; r < table.n_rows; ++r) {
        if (table.labels[r] == target_label)
            target_pool.push_back(r);
        else
            outlier_pool.push_back(r);
    }
    if (target_pool.size() <
        static_cast<std::size_t>(sizes.train + sizes.test_target))
        throw StructuralError("make_task: not enough target samples");
    if (outlier_pool.size() < static_cast<std::size_t>(sizes.test_outlier))
        throw StructuralError("make_task: not enough outlier samples");

    Rng rng(seed);
    auto picked = rng.sample_without_replacement(
        target_pool.size(), sizes.train + sizes.test_target);
    auto row_of = [&](std::size_t r) {
        auto span = table.row(static_cast<int>(r));
        return std::vector<double>(span.begin(), span.end());
    };
    for (int i = 0; i < sizes.train; ++i)
        task.train_x.push_back(row_of(target_pool[picked[i]]));
    for (int i = sizes.train; i < sizes.train + sizes.test_target; ++i) {
        task.test_x.push_back(row_of(target_pool[picked[i]]));
        task.test_is_outlier.push_back(0);
    }
    for (std::size_t k : rng.sample_without_replacement(outlier_pool.size(),
                                                        sizes.test_outlier)) {
        task.test_x.push_back(row_of(outlier_pool[k]));
        task.test_is_outlier.push_back(1);
    }

    Scaler s = Scaler::fit(task.train_x);
    for (auto& r : task.train_x) s.apply(r, false);
    for (auto& r : task.test_x) s.apply(r, true);
    task.scale_min = s.lo;
    task.scale_max = s.hi;
    return task;
}

std::vector<double> bilinear_resize(std::span<const double> img, int h, int w,
                                    int oh, int ow) {
    if (static_cast<int>(img.size()) != h * w)
        throw StructuralError("bilinear_resize: size mismatch");
    std::vector<double> out(static_cast<std::size_t>(oh) * ow);
    const double sy = static_cast<double>(h) / oh;
    const double sx = static_cast<double>(w) / ow;
    for (int y = 0; y < oh; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(fy));
        double wy = fy - y0;
        int y0c = std::clamp(y0, 0, h - 1);
        int y1c = std::clamp(y0 + 1, 0, h - 1);
        for (int x = 0; x < ow; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            double wx = fx - x0;
            int x0c = std::clamp(x0, 0, w - 1);
            int x1c = std::clamp(x0 + 1, 0, w - 1);
            double v00 = img[y0c * w + x0c], v01 = img[y0c * w + x1c];
            double v10 = img[y1c * w + x0c], v11 = img[y1c * w + x1c];
            out[y * static_cast<std::size_t>(ow) + x] =
                (1 - wy) * ((1 - wx) * v00 + wx * v01) +
                wy * ((1 - wx) * v10 + wx * v11);
        }
    }
    return out;
}

}  // namespace nqsvdd
