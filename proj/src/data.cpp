#include "lognnet/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "lognnet/csv.hpp"

namespace lognnet {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int find_column(const CsvTable& t, const std::string& name) {
  int idx = t.column(name);
  if (idx >= 0) return idx;
  const std::string want = lower(name);
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (lower(t.header[i]) == want) return static_cast<int>(i);
  return -1;
}

const std::vector<std::string> kCtgFeatures = {
    "b",    "e",      "LBE",  "LB",   "AC",   "FM",     "UC",
    "ASTV", "mSTV",   "ALTV", "mLTV", "DL",   "DS",     "DP",
    "DR",   "Width",  "Min",  "Max",  "Nmax", "Nzeros", "Mode",
    "Mean", "Median", "Variance", "Tendency"};

// yyyymmdd, or nullopt when unparseable.
std::optional<int> parse_date(const std::string& cell, bool day_first_fallback) {
  auto all_digits = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  };
  // ISO-8601: yyyy-mm-dd
  if (cell.size() == 10 && cell[4] == '-' && cell[7] == '-') {
    const std::string y = cell.substr(0, 4), m = cell.substr(5, 2), d = cell.substr(8, 2);
    if (all_digits(y) && all_digits(m) && all_digits(d))
      return std::stoi(y) * 10000 + std::stoi(m) * 100 + std::stoi(d);
  }
  if (day_first_fallback && cell.size() == 10 &&
      (cell[2] == '/' || cell[2] == '-' || cell[2] == '.') && cell[5] == cell[2]) {
    const std::string d = cell.substr(0, 2), m = cell.substr(3, 2), y = cell.substr(6, 4);
    if (all_digits(y) && all_digits(m) && all_digits(d))
      return std::stoi(y) * 10000 + std::stoi(m) * 100 + std::stoi(d);
  }
  return std::nullopt;
}

// 1 / 0 / missing for the binary answer vocabularies.
std::optional<double> parse_binary_answer(const std::string& cell) {
  const std::string v = lower(cell);
  if (v == "1" || v == "yes") return 1.0;
  if (v == "0" || v == "no") return 0.0;
  return std::nullopt;
}

}  // namespace

Schema ctg_schema() {
  Schema s;
  s.id = "ctg";
  s.feature_names = kCtgFeatures;
  s.domains.assign(kCtgFeatures.size(), DomainKind::Integer);
  s.domains[8] = DomainKind::Real;      // mSTV
  s.domains[10] = DomainKind::Real;     // mLTV
  s.domains[24] = DomainKind::Ternary;  // Tendency
  s.class_names = {"N", "S", "P"};
  return s;
}

Schema covid_schema() {
  Schema s;
  s.id = "covid";
  s.feature_names = {"sex",         "age_60_and_above",
                     "cough",       "fever",
                     "sore_throat", "shortness_of_breath",
                     "head_ache",   "contact"};
  s.domains.assign(8, DomainKind::Binary);
  s.class_names = {"Negative", "Positive"};
  return s;
}

Dataset load_ctg(const std::string& path) {
  const CsvTable t = read_csv(path);
  std::vector<int> cols;
  std::vector<std::string> missing_cols;
  for (const std::string& name : kCtgFeatures) {
    const int idx = find_column(t, name);
    if (idx < 0) missing_cols.push_back(name);
    cols.push_back(idx);
  }
  const int label_col = find_column(t, "NSP");
  if (label_col < 0) missing_cols.push_back("NSP");
  if (!missing_cols.empty()) {
    std::string msg = "ctg: missing columns:";
    for (const std::string& c : missing_cols) msg += " " + c;
    throw std::runtime_error(msg);
  }

  Dataset ds;
  ds.schema = ctg_schema();

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::vector<std::string>& row = t.rows[r];
    ++ds.report.source_rows;
    Record rec;
    rec.row_id = r + 1;
    rec.features.reserve(cols.size());
    bool missing = false;
    for (int c : cols) {
      const std::string& cell =
          static_cast<std::size_t>(c) < row.size() ? row[static_cast<std::size_t>(c)] : "";
      const std::optional<double> v = parse_number(cell);
      if (!v) {
        missing = true;
        break;
      }
      rec.features.push_back(*v);
    }
    if (missing || !validate_vector(ds.schema, rec.features).empty()) {
      ++ds.report.dropped_missing;
      continue;
    }
    const std::string& label_cell =
        static_cast<std::size_t>(label_col) < row.size()
            ? row[static_cast<std::size_t>(label_col)]
            : "";
    const std::string lv = lower(label_cell);
    const std::optional<double> ln = parse_number(label_cell);
    if (lv == "n" || (ln && *ln == 1.0))
      rec.label = 0;
    else if (lv == "s" || (ln && *ln == 2.0))
      rec.label = 1;
    else if (lv == "p" || (ln && *ln == 3.0))
      rec.label = 2;
    else {
      ++ds.report.dropped_bad_label;
      continue;
    }
    ++ds.report.loaded;
    ds.records.push_back(std::move(rec));
  }
  if (ds.records.empty()) throw std::runtime_error("ctg: no usable rows in '" + path + "'");
  return ds;
}

Dataset load_covid(const std::string& path, const CovidColumns& columns) {
  const CsvTable t = read_csv(path);
  struct Col {
    const std::string* name;
    int idx;
  };
  const std::vector<const std::string*> names = {
      &columns.date,        &columns.gender,
      &columns.age,         &columns.cough,
      &columns.fever,       &columns.sore_throat,
      &columns.shortness_of_breath, &columns.head_ache,
      &columns.test_indication,     &columns.corona_result};
  std::vector<int> idx;
  std::vector<std::string> missing_cols;
  for (const std::string* n : names) {
    const int i = find_column(t, *n);
    if (i < 0) missing_cols.push_back(*n);
    idx.push_back(i);
  }
  if (!missing_cols.empty()) {
    std::string msg = "covid: missing columns:";
    for (const std::string& c : missing_cols) msg += " " + c;
    throw std::runtime_error(msg);
  }
  const int c_date = idx[0], c_gender = idx[1], c_age = idx[2], c_cough = idx[3],
            c_fever = idx[4], c_sore = idx[5], c_breath = idx[6], c_head = idx[7],
            c_indication = idx[8], c_result = idx[9];

  Dataset ds;
  ds.pre_split = true;
  ds.schema = covid_schema();

  constexpr int kTrainLo = 20200322, kTrainHi = 20200331;
  constexpr int kTestLo = 20200401, kTestHi = 20200407;

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::vector<std::string>& row = t.rows[r];
    ++ds.report.source_rows;
    auto cell = [&](int c) -> const std::string& {
      static const std::string empty;
      return static_cast<std::size_t>(c) < row.size() ? row[static_cast<std::size_t>(c)]
                                                      : empty;
    };

    const std::optional<int> date = parse_date(cell(c_date), columns.day_first_dates);
    if (!date) {
      ++ds.report.dropped_bad_date;
      continue;
    }

    const std::string result = lower(cell(c_result));
    std::size_t label;
    if (result == "negative")
      label = 0;
    else if (result == "positive")
      label = 1;
    else if (result.empty()) {
      ++ds.report.dropped_missing;
      continue;
    } else {
      ++ds.report.dropped_indeterminate;
      continue;
    }

    const std::string gender = lower(cell(c_gender));
    std::optional<double> sex;
    if (gender == "male")
      sex = 1.0;
    else if (gender == "female")
      sex = 0.0;
    const std::optional<double> age = parse_binary_answer(cell(c_age));
    const std::optional<double> cough = parse_binary_answer(cell(c_cough));
    const std::optional<double> fever = parse_binary_answer(cell(c_fever));
    const std::optional<double> sore = parse_binary_answer(cell(c_sore));
    const std::optional<double> breath = parse_binary_answer(cell(c_breath));
    const std::optional<double> head = parse_binary_answer(cell(c_head));
    const std::string indication = cell(c_indication);
    std::optional<double> contact;
    if (!indication.empty())
      contact = lower(indication) == "contact with confirmed" ? 1.0 : 0.0;

    if (!sex || !age || !cough || !fever || !sore || !breath || !head || !contact) {
      ++ds.report.dropped_missing;
      continue;
    }

    Record rec;
    rec.row_id = r + 1;
    rec.label = label;
    rec.features = {*sex, *age, *cough, *fever, *sore, *breath, *head, *contact};

    if (*date >= kTrainLo && *date <= kTrainHi) {
      ++ds.report.loaded;
      ds.records.push_back(std::move(rec));
    } else if (*date >= kTestLo && *date <= kTestHi) {
      ++ds.report.loaded;
      ds.test.push_back(std::move(rec));
    } else {
      ++ds.report.out_of_window;
    }
  }
  if (ds.records.empty() && ds.test.empty())
    throw std::runtime_error("covid: no usable rows in '" + path + "'");
  return ds;
}

Dataset load_generic_csv(const std::string& path, const std::string& schema_id,
                         const std::string& label_column) {
  const CsvTable t = read_csv(path);
  if (t.header.empty()) throw std::runtime_error("csv: empty header in '" + path + "'");
  int label_col;
  if (label_column.empty()) {
    label_col = static_cast<int>(t.header.size()) - 1;
  } else {
    label_col = find_column(t, label_column);
    if (label_col < 0)
      throw std::runtime_error("csv: no label column '" + label_column + "'");
  }

  Dataset ds;
  ds.schema.id = schema_id;
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (static_cast<int>(i) != label_col) ds.schema.feature_names.push_back(t.header[i]);
  ds.schema.domains.assign(ds.schema.feature_names.size(), DomainKind::Real);

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::vector<std::string>& row = t.rows[r];
    ++ds.report.source_rows;
    Record rec;
    rec.row_id = r + 1;
    bool missing = false;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (static_cast<int>(i) == label_col) continue;
      const std::optional<double> v =
          parse_number(i < row.size() ? row[i] : std::string());
      if (!v) {
        missing = true;
        break;
      }
      rec.features.push_back(*v);
    }
    if (missing || !validate_vector(ds.schema, rec.features).empty()) {
      ++ds.report.dropped_missing;
      continue;
    }
    const std::string& label_cell = static_cast<std::size_t>(label_col) < row.size()
                                        ? row[static_cast<std::size_t>(label_col)]
                                        : std::string();
    if (label_cell.empty()) {
      ++ds.report.dropped_bad_label;
      continue;
    }
    auto found = std::find(ds.schema.class_names.begin(), ds.schema.class_names.end(),
                           label_cell);
    if (found == ds.schema.class_names.end()) {
      ds.schema.class_names.push_back(label_cell);
      found = std::prev(ds.schema.class_names.end());
    }
    rec.label = static_cast<std::size_t>(found - ds.schema.class_names.begin());
    ++ds.report.loaded;
    ds.records.push_back(std::move(rec));
  }
  if (ds.records.empty()) throw std::runtime_error("csv: no usable rows in '" + path + "'");
  return ds;
}

std::vector<std::string> validate_vector(const Schema& schema,
                                         const std::vector<double>& v) {
  std::vector<std::string> violations;
  if (v.size() != schema.features()) {
    violations.push_back("length");
    return violations;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    bool ok = std::isfinite(x);
    if (ok) switch (schema.domains[i]) {
        case DomainKind::Real: break;
        case DomainKind::Integer: ok = x == std::floor(x); break;
        case DomainKind::Binary: ok = x == 0.0 || x == 1.0; break;
        case DomainKind::Ternary: ok = x == -1.0 || x == 0.0 || x == 1.0; break;
      }
    if (!ok) violations.push_back(schema.feature_names[i]);
  }
  return violations;
}

std::string format_load_summary(const Dataset& ds) {
  std::ostringstream out;
  const LoadReport& r = ds.report;
  out << "dataset " << ds.schema.id << ": " << r.source_rows << " source rows, "
      << r.loaded << " loaded";
  if (ds.pre_split)
    out << " (train " << ds.records.size() << ", test " << ds.test.size() << ")";
  out << ", dropped " << r.dropped_total() << " (missing " << r.dropped_missing
      << ", bad label " << r.dropped_bad_label << ", indeterminate "
      << r.dropped_indeterminate << ", bad date " << r.dropped_bad_date << ")";
  if (r.out_of_window) out << ", out of window " << r.out_of_window;
  out << "\n";
  std::vector<std::size_t> per_class(ds.schema.classes(), 0);
  for (const Record& rec : ds.records) ++per_class[rec.label];
  out << "  train/all per class:";
  for (std::size_t k = 0; k < per_class.size(); ++k)
    out << " " << ds.schema.class_names[k] << "=" << per_class[k];
  out << "\n";
  if (ds.pre_split) {
    std::vector<std::size_t> test_per_class(ds.schema.classes(), 0);
    for (const Record& rec : ds.test) ++test_per_class[rec.label];
    out << "  test per class:";
    for (std::size_t k = 0; k < test_per_class.size(); ++k)
      out << " " << ds.schema.class_names[k] << "=" << test_per_class[k];
    out << "\n";
  }
  return out.str();
}

}  // namespace lognnet
