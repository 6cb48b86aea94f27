#pragma once

#include <span>
#include <string>

#include "nqsvdd/core.hpp"

namespace nqsvdd {

/// IDX-format image set (big-endian magic + dims + raw bytes).
struct ImageSet {
    int count = 0, rows = 0, cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols
    std::vector<std::uint8_t> labels;  // count
};

ImageSet load_idx(const std::string& images_path,
                  const std::string& labels_path);

struct CsvSchema {
    /// Empty means: every column except the label column.
    std::vector<std::string> feature_columns;
    std::string label_column;
    /// Checked when the label cell is not numeric; first substring match
    /// wins. E.g. {"BENIGN",0},{"Brute Force",1},{"Sql Injection",2},{"XSS",3}.
    std::vector<std::pair<std::string, int>> label_substrings;
};

struct Table {
    std::vector<std::string> feature_names;
    std::vector<double> values;  // row-major, n_rows x n_cols
    std::vector<int> labels;
    int n_rows = 0, n_cols = 0;
    long dropped_rows = 0;  // rows removed for NaN/inf features

    std::span<const double> row(int r) const {
        return {values.data() + static_cast<std::size_t>(r) * n_cols,
                static_cast<std::size_t>(n_cols)};
    }
};

/// Rows containing NaN or +-inf in any feature are dropped and counted.
Table load_csv(const std::string& path, const CsvSchema& schema);

struct TaskSizes {
    int train = 1000;
    int test_target = 100;
    int test_outlier = 90;        // tabular datasets: one merged outlier pool
    int outliers_per_class = 10;  // image datasets: per non-target class
};

/// One OCC experiment instance: target-only training set, labeled test set,
/// min-max bounds fit on the training rows (test rows are clipped).
struct OccTask {
    std::string dataset;
    int target_label = 0;
    std::uint64_t seed = 0;
    std::vector<int> input_shape;
    std::vector<std::vector<double>> train_x;
    std::vector<std::vector<double>> test_x;
    std::vector<int> test_is_outlier;
    std::vector<double> scale_min, scale_max;
};

OccTask make_task_images(const ImageSet& train_set, const ImageSet& test_set,
                         const std::string& dataset, int target,
                         std::uint64_t seed, const TaskSizes& sizes);

OccTask make_task_table(const Table& table, const std::string& dataset,
                        int target_label, std::uint64_t seed,
                        const TaskSizes& sizes);

/// Deterministic bilinear resampling (pixel-center aligned) used by the
/// amplitude and compact-ZZ input paths.
std::vector<double> bilinear_resize(std::span<const double> img, int h, int w,
                                    int oh, int ow);

}  // namespace nqsvdd
