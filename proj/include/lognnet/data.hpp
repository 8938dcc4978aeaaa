#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lognnet {

enum class DomainKind { Real, Integer, Binary, Ternary };

struct Schema {
  std::string id;  // "ctg", "covid", or a sidecar-defined name
  std::vector<std::string> feature_names;
  std::vector<DomainKind> domains;
  std::vector<std::string> class_names;  // index = numeric label

  std::size_t features() const { return feature_names.size(); }
  std::size_t classes() const { return class_names.size(); }
};

struct Record {
  std::vector<double> features;
  std::size_t label = 0;
  std::size_t row_id = 0;  // 1-based data row in the source file
};

struct LoadReport {
  std::size_t source_rows = 0;
  std::size_t loaded = 0;
  std::size_t dropped_missing = 0;        // empty or unparseable feature cell
  std::size_t dropped_bad_label = 0;      // label outside the vocabulary
  std::size_t dropped_indeterminate = 0;  // e.g. PCR result "other"
  std::size_t dropped_bad_date = 0;
  std::size_t out_of_window = 0;          // valid rows outside both date windows

  std::size_t dropped_total() const {
    return dropped_missing + dropped_bad_label + dropped_indeterminate +
           dropped_bad_date;
  }
};

struct Dataset {
  Schema schema;
  std::vector<Record> records;  // Type 2: everything; Type 1: the training split
  std::vector<Record> test;     // Type 1 only
  bool pre_split = false;
  LoadReport report;
};

// The fixed schemas of the two built-in loaders, reconstructable from a
// stored model's schema id without reloading a dataset.
Schema ctg_schema();
Schema covid_schema();

// Cardiotocography: 25 features selected by header name (b, e, LBE, LB, AC,
// FM, UC, ASTV, mSTV, ALTV, mLTV, DL, DS, DP, DR, Width, Min, Max, Nmax,
// Nzeros, Mode, Mean, Median, Variance, Tendency; case-insensitive fallback
// for exports that capitalize mSTV/mLTV), labels from the NSP column
// (N/S/P or 1/2/3 -> 0/1/2). Any absent feature column is a schema error;
// rows with a missing/unparseable cell are dropped and counted.
Dataset load_ctg(const std::string& path);

// Column names of a COVID screening snapshot; defaults match the common
// public export. `day_first_dates` enables the fallback date pattern dd/mm/yyyy
// (or dd-mm-yyyy / dd.mm.yyyy) for rows that are not ISO yyyy-mm-dd.
struct CovidColumns {
  std::string date = "test_date";
  std::string gender = "gender";
  std::string age = "age_60_and_above";
  std::string cough = "cough";
  std::string fever = "fever";
  std::string sore_throat = "sore_throat";
  std::string shortness_of_breath = "shortness_of_breath";
  std::string head_ache = "head_ache";
  std::string test_indication = "test_indication";
  std::string corona_result = "corona_result";
  bool day_first_dates = false;
};

// COVID-19 screening: canonical feature order sex, age>=60, cough, fever,
// sore throat, dyspnea, headache, contact (all binary); result negative->0,
// positive->1, "other" dropped as indeterminate. Pre-split by test date:
// train 2020-03-22..2020-03-31, test 2020-04-01..2020-04-07; valid rows
// outside both windows are counted but belong to neither split.
Dataset load_covid(const std::string& path, const CovidColumns& columns = {});

// Generic delimited file: last column is the label unless `label_column`
// names one; feature domains all Real; label vocabulary in first-appearance
// order. Rows with missing cells are dropped and counted.
Dataset load_generic_csv(const std::string& path, const std::string& schema_id,
                         const std::string& label_column = "");

// Violation names ("length", or offending feature names); empty means ok.
std::vector<std::string> validate_vector(const Schema& schema,
                                         const std::vector<double>& v);

std::string format_load_summary(const Dataset& ds);

}  // namespace lognnet
