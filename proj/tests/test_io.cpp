#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "kgroups/io.hpp"
#include "kgroups/rng.hpp"
#include "test_helpers.hpp"

using namespace kgroups;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

// A file with the dermatology shape: 34 integer-ish attributes plus a class
// column, 366 rows, the expected class histogram, and 8 '?' cells in
// the age column (index 33).
std::string write_dermatology_fixture(const std::string& path) {
  const int histogram[6] = {112, 61, 72, 49, 52, 20};
  Rng rng(4242);
  std::ofstream file(path);
  int row = 0;
  for (int cls = 0; cls < 6; ++cls) {
    for (int c = 0; c < histogram[cls]; ++c, ++row) {
      for (int a = 0; a < 33; ++a)
        file << (rng.index(4)) << ",";
      if (row % 46 == 3 && row / 46 < 8)  // exactly 8 missing ages
        file << "?";
      else
        file << (10 + rng.index(60));
      file << "," << (cls + 1) << "\n";
    }
  }
  return path;
}

}  // namespace

TEST_CASE("load_csv") {
  SUBCASE("plain numeric table") {
    FileGuard guard{temp_path("kg_plain.csv")};
    std::ofstream(guard.path) << "1,2\n3,4\n5,6\n";
    CsvOptions options;
    options.has_header = false;
    const RawTable table = load_csv(guard.path, options);
    CHECK(table.values.rows() == 3);
    CHECK(table.values.cols() == 2);
    CHECK(table.values(2, 1) == 6.0);
    CHECK(table.missing_cells.empty());
    CHECK_FALSE(table.labels.has_value());
  }
  SUBCASE("missing token flags the cell") {
    FileGuard guard{temp_path("kg_missing.csv")};
    std::ofstream(guard.path) << "1,?\n3,4\n";
    CsvOptions options;
    options.has_header = false;
    const RawTable table = load_csv(guard.path, options);
    REQUIRE(table.missing_cells.size() == 1);
    CHECK(table.missing_cells[0] == std::pair<int, int>{0, 1});
    CHECK(std::isnan(table.values(0, 1)));
  }
  SUBCASE("header + named label column") {
    FileGuard guard{temp_path("kg_header.csv")};
    std::ofstream(guard.path) << "x0,x1,label\n1,2,0\n3,4,1\n";
    CsvOptions options;
    options.label_column = "label";
    const RawTable table = load_csv(guard.path, options);
    CHECK(table.values.cols() == 2);
    REQUIRE(table.labels.has_value());
    CHECK((*table.labels)[1] == 1.0);
    CHECK(table.column_names == std::vector<std::string>{"x0", "x1"});
  }
  SUBCASE("label column by index without header") {
    FileGuard guard{temp_path("kg_index.csv")};
    std::ofstream(guard.path) << "1,2,0\n3,4,1\n";
    CsvOptions options;
    options.has_header = false;
    options.label_column = "2";
    const RawTable table = load_csv(guard.path, options);
    CHECK(table.values.cols() == 2);
    REQUIRE(table.labels.has_value());
  }
  SUBCASE("errors") {
    FileGuard ragged{temp_path("kg_ragged.csv")};
    std::ofstream(ragged.path) << "1,2\n3\n";
    CsvOptions options;
    options.has_header = false;
    CHECK_THROWS_AS(load_csv(ragged.path, options), std::invalid_argument);

    FileGuard junk{temp_path("kg_junk.csv")};
    std::ofstream(junk.path) << "1,abc\n";
    CHECK_THROWS_AS(load_csv(junk.path, options), std::invalid_argument);

    CsvOptions bad_label = options;
    bad_label.label_column = "9";
    FileGuard ok{temp_path("kg_ok.csv")};
    std::ofstream(ok.path) << "1,2\n";
    CHECK_THROWS_AS(load_csv(ok.path, bad_label), std::invalid_argument);

    CHECK_THROWS_AS(load_csv(temp_path("kg_does_not_exist.csv"), options),
                    std::runtime_error);
  }
}

TEST_CASE("dataset CSV round-trip is bit-exact") {
  Rng rng(81);
  const Eigen::MatrixXd points = test_helpers::random_points(rng, 40, 3);
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) labels.push_back(static_cast<int>(rng.index(2)));

  FileGuard guard{temp_path("kg_roundtrip.csv")};
  write_dataset_csv(guard.path, points, &labels);

  CsvOptions options;
  options.label_column = "label";
  const RawTable table = load_csv(guard.path, options);
  REQUIRE(table.values.rows() == 40);
  CHECK(table.values == points);  // %.17g round-trips doubles exactly
  for (int i = 0; i < 40; ++i)
    CHECK((*table.labels)[static_cast<std::size_t>(i)] ==
          static_cast<double>(labels[static_cast<std::size_t>(i)]));
}

TEST_CASE("labels_to_partition maps sorted distinct values") {
  const Partition part = labels_to_partition({3.0, 1.0, 3.0, 7.0});
  CHECK(part.k == 3);
  CHECK(part.labels == std::vector<int>{1, 0, 1, 2});
}

TEST_CASE("dermatology preprocessing") {
  FileGuard guard{temp_path("kg_derm.csv")};
  write_dermatology_fixture(guard.path);
  CsvOptions options;
  options.has_header = false;
  options.missing_token = "?";
  const RawTable raw = load_csv(guard.path, options);

  SUBCASE("fixture has the expected shape") {
    CHECK(raw.values.rows() == 366);
    CHECK(raw.values.cols() == 35);
    CHECK(raw.missing_cells.size() == 8);
    for (const auto& [row, column] : raw.missing_cells) CHECK(column == 33);
  }
  SUBCASE("mean imputation and standardization") {
    const DermatologyData data = preprocess_dermatology(raw);
    CHECK(data.points.rows() == 366);
    CHECK(data.points.cols() == 34);
    for (Eigen::Index c = 0; c < 34; ++c) {
      CHECK(std::abs(data.points.col(c).mean()) <= 1e-9);
      const double variance =
          data.points.col(c).squaredNorm() / 366.0;
      CHECK(variance == doctest::Approx(1.0).epsilon(1e-9));
    }
    // class histogram preserved through the label shift
    std::vector<int> counts(6, 0);
    for (int label : data.truth.labels) ++counts[static_cast<std::size_t>(label)];
    CHECK(counts == std::vector<int>{112, 61, 72, 49, 52, 20});
  }
  SUBCASE("drop_missing removes exactly the incomplete rows") {
    const DermatologyData data = preprocess_dermatology(raw, true);
    CHECK(data.points.rows() == 358);
  }
  SUBCASE("schema violations rejected") {
    RawTable wrong = raw;
    wrong.values = raw.values.leftCols(30);
    CHECK_THROWS_AS(preprocess_dermatology(wrong), std::invalid_argument);
  }
}
