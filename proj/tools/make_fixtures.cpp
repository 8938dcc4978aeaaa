// Deterministic generator for the two dataset fixtures committed under data/.
// Both files are synthetic snapshots shaped like their public counterparts:
// same columns, value vocabularies, class mix, and enough messy rows (missing
// cells, indeterminate labels, out-of-window dates) to exercise the loaders.
//
//   make_fixtures --out <dir> [--covid-only] [--ctg-only]
//
// Every draw flows from fixed seeds, so regenerating produces byte-identical
// files; the CSVs in the repository are exactly this program's output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lognnet/rng.hpp"

using lognnet::Rng;

namespace {

// Portable normal draw: Box-Muller from the engine's uniforms, so output does
// not depend on any library's distribution implementation.
double normal(Rng& rng) {
  double u1 = rng.uniform();
  while (u1 <= 1e-300) u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

bool bern(Rng& rng, double p) { return rng.uniform() < p; }

int clampi(double v, int lo, int hi) {
  const int r = static_cast<int>(std::lround(v));
  return std::max(lo, std::min(hi, r));
}

double round1(double v) { return std::round(v * 10.0) / 10.0; }

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Screening-questionnaire dataset: eight binary answers, a swab result, and a
// test date. Mixture model per class; all eight answers independent given the
// latent component.
// ---------------------------------------------------------------------------

// Feature order: sex(male), age60, cough, fever, sore_throat, dyspnea,
// headache, contact.
constexpr double kClean[8] = {0.47, 0.13, 0.002, 0.001, 0.0015, 0.001, 0.002, 0.006};
constexpr double kSickNeg[8] = {0.47, 0.16, 0.55, 0.35, 0.25, 0.12, 0.20, 0.02};
constexpr double kSilent[8] = {0.52, 0.15, 0.002, 0.001, 0.0015, 0.001, 0.002, 0.008};
constexpr double kSymptomatic[8] = {0.52, 0.17, 0.62, 0.52, 0.18, 0.13, 0.22, 0.68};

struct CovidRow {
  std::string date;
  int f[8];        // -1 encodes a missing answer cell
  int label;       // 0 negative, 1 positive, 2 "other"
  bool drop_age = false, drop_gender = false, blank_cough = false;
};

void draw_answers(Rng& rng, bool positive, int out[8]) {
  const double* p;
  if (positive)
    p = bern(rng, 0.73) ? kSymptomatic : kSilent;
  else
    p = bern(rng, 0.016) ? kSickNeg : kClean;
  for (int i = 0; i < 8; ++i) out[i] = bern(rng, p[i]) ? 1 : 0;
}

std::string iso_date(int month, int day) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "2020-%02d-%02d", month, day);
  return buf;
}

// Day grid: a screening campaign that ramps up, with weekday dips.
std::vector<int> spread_over_days(Rng& rng, int total, int days) {
  std::vector<double> weight(days);
  double sum = 0.0;
  for (int d = 0; d < days; ++d) {
    weight[d] = 0.6 + 0.08 * d + 0.25 * rng.uniform();
    sum += weight[d];
  }
  std::vector<int> count(days, 0);
  int assigned = 0;
  for (int d = 0; d < days; ++d) {
    count[d] = static_cast<int>(total * weight[d] / sum);
    assigned += count[d];
  }
  for (int d = 0; assigned < total; d = (d + 1) % days, ++assigned) ++count[d];
  return count;
}

void emit_covid(const std::string& path) {
  Rng rng(20200322);

  struct Window {
    std::vector<std::string> dates;
    int negatives, positives;
    int other, no_age, no_gender, no_cough;
  };
  Window train, test;
  for (int d = 22; d <= 31; ++d) train.dates.push_back(iso_date(3, d));
  for (int d = 1; d <= 7; ++d) test.dates.push_back(iso_date(4, d));
  train.negatives = 42998; train.positives = 3874;
  train.other = 350; train.no_age = 280; train.no_gender = 170; train.no_cough = 120;
  test.negatives = 40546; test.positives = 3370;
  test.other = 250; test.no_age = 220; test.no_gender = 130; test.no_cough = 80;

  std::vector<CovidRow> rows;
  rows.reserve(92500);

  auto push_class = [&](const std::vector<std::string>& dates,
                        const std::vector<int>& per_day, bool positive) {
    for (std::size_t d = 0; d < dates.size(); ++d)
      for (int k = 0; k < per_day[d]; ++k) {
        CovidRow r;
        r.date = dates[d];
        r.label = positive ? 1 : 0;
        draw_answers(rng, positive, r.f);
        rows.push_back(std::move(r));
      }
  };

  auto push_fodder = [&](const Window& w) {
    auto messy = [&](int count, auto mutate) {
      for (int k = 0; k < count; ++k) {
        CovidRow r;
        r.date = w.dates[rng.below(w.dates.size())];
        const bool positive = bern(rng, 0.08);
        r.label = positive ? 1 : 0;
        draw_answers(rng, positive, r.f);
        mutate(r);
        rows.push_back(std::move(r));
      }
    };
    messy(w.other, [](CovidRow& r) { r.label = 2; });
    messy(w.no_age, [](CovidRow& r) { r.drop_age = true; });
    messy(w.no_gender, [](CovidRow& r) { r.drop_gender = true; });
    messy(w.no_cough, [](CovidRow& r) { r.blank_cough = true; });
  };

  const std::vector<int> train_neg = spread_over_days(rng, train.negatives, 10);
  const std::vector<int> train_pos = spread_over_days(rng, train.positives, 10);
  const std::vector<int> test_neg = spread_over_days(rng, test.negatives, 7);
  const std::vector<int> test_pos = spread_over_days(rng, test.positives, 7);
  push_class(train.dates, train_neg, false);
  push_class(train.dates, train_pos, true);
  push_class(test.dates, test_neg, false);
  push_class(test.dates, test_pos, true);
  push_fodder(train);
  push_fodder(test);

  // Valid-looking rows outside both windows: the tail of the prior campaign
  // and the start of the next one.
  std::vector<std::string> outside;
  for (int d = 15; d <= 21; ++d) outside.push_back(iso_date(3, d));
  for (int d = 8; d <= 10; ++d) outside.push_back(iso_date(4, d));
  for (int k = 0; k < 400; ++k) {
    CovidRow r;
    r.date = outside[rng.below(outside.size())];
    const bool positive = bern(rng, 0.05);
    r.label = positive ? 1 : 0;
    draw_answers(rng, positive, r.f);
    rows.push_back(std::move(r));
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const CovidRow& a, const CovidRow& b) { return a.date < b.date; });
  // Shuffle within each day so classes interleave the way arrivals would.
  for (std::size_t lo = 0; lo < rows.size();) {
    std::size_t hi = lo;
    while (hi < rows.size() && rows[hi].date == rows[lo].date) ++hi;
    for (std::size_t i = hi - lo; i > 1; --i) {
      const std::size_t j = rng.below(i);
      std::swap(rows[lo + i - 1], rows[lo + j]);
    }
    lo = hi;
  }

  std::ofstream out(path);
  out << "test_date,cough,fever,sore_throat,shortness_of_breath,head_ache,"
         "corona_result,age_60_and_above,gender,test_indication\n";
  for (const CovidRow& r : rows) {
    const char* result = r.label == 1 ? "positive" : r.label == 0 ? "negative" : "other";
    const std::string cough = r.blank_cough ? "" : std::to_string(r.f[2]);
    const std::string age = r.drop_age ? "None" : (r.f[1] ? "Yes" : "No");
    const std::string gender = r.drop_gender ? "None" : (r.f[0] ? "male" : "female");
    const char* indication = r.f[7]              ? "Contact with confirmed"
                             : bern(rng, 0.10) ? "Abroad"
                                               : "Other";
    out << r.date << ',' << cough << ',' << r.f[3] << ',' << r.f[4] << ',' << r.f[5]
        << ',' << r.f[6] << ',' << result << ',' << age << ',' << gender << ','
        << indication << '\n';
  }
  std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
}

// ---------------------------------------------------------------------------
// Cardiotocography dataset: 25 exam features over three states (normal,
// suspect, pathologic). Rows are driven by a latent severity with overlapping
// class bands, so a few percent of exams are intrinsically ambiguous; the
// discriminative signal lives mostly in relations between features
// (variability pairs, histogram skew, deceleration mix), not in any single
// column's magnitude.
// ---------------------------------------------------------------------------

struct CtgRow {
  double v[25];
  int nsp;  // 1 N, 2 S, 3 P
};

// Feature indices within the 25-column block.
enum {
  kB, kE, kLBE, kLB, kAC, kFM, kUC, kASTV, kMSTV, kALTV, kMLTV,
  kDL, kDS, kDP, kDR, kWidth, kMin, kMax, kNmax, kNzeros,
  kMode, kMean, kMedian, kVariance, kTendency
};

CtgRow draw_ctg(Rng& rng, int cls) {
  CtgRow r{};
  r.nsp = cls;

  // Latent severity: bands with small gaps; ambiguity comes from emission
  // noise near the gaps rather than from overlapping bands.
  double s;
  if (cls == 1)
    s = rng.uniform(0.0, 0.30);
  else if (cls == 2)
    s = rng.uniform(0.34, 0.62);
  else
    s = rng.uniform(0.66, 1.0);
  const double q = rng.uniform(0.8, 1.2);  // recording length/quality nuisance
  // Per-record physiology offsets shared by feature pairs: overall short-term
  // variability level and long-term analog. Severity moves each pair in
  // opposite directions while these offsets move both members together, so
  // the offsets cancel under signed feature contrasts but not under purely
  // additive mixing.
  // Record-level physiology offsets shared by feature pairs: severity moves
  // each pair's members in opposite directions while the offsets move both
  // together, so part of the class signal sits in within-pair contrasts.
  const double vlevel = normal(rng);
  const double ulevel = normal(rng);

  const int start = static_cast<int>(rng.below(1200));
  const int span = 600 + static_cast<int>(rng.below(2400));
  r.v[kB] = start;
  r.v[kE] = start + span;

  const int lb = clampi(130 + 12 * normal(rng) + 6 * (s - 0.35), 106, 160);
  r.v[kLB] = lb;
  r.v[kLBE] = lb;

  r.v[kAC] = clampi((5.2 - 4.6 * s) * q + 0.8 * normal(rng), 0, 26);
  r.v[kFM] = clampi(9.0 * q * rng.uniform() * rng.uniform() * 3.0, 0, 98);
  r.v[kUC] = clampi(4.0 * q + 1.6 * normal(rng), 0, 16);

  // Variability block carries the clinical core: raised abnormal short-term
  // percentage with depressed mean variability as severity grows, riding on
  // the record-level variability offsets above.
  r.v[kASTV] = clampi(38 + 30 * s + 16 * vlevel + 4 * normal(rng), 12, 87);
  r.v[kMSTV] = std::min(
      7.0, std::max(0.2, round1(2.6 - 1.5 * s + 0.70 * vlevel + 0.14 * normal(rng))));
  r.v[kALTV] = clampi(8 + 40 * (s - 0.22) + 16 * ulevel + 3.5 * normal(rng), 0, 91);
  r.v[kMLTV] = std::min(
      50.7, std::max(0.0, round1(9.0 - 3.0 * s + 1.55 * ulevel + 0.45 * normal(rng))));

  r.v[kDL] = clampi((5.5 * s - 0.8) * q + 0.8 * normal(rng), 0, 16);
  r.v[kDS] = (s > 0.84 && bern(rng, 0.3)) ? 1 : 0;
  r.v[kDP] = clampi(3.6 * (s - 0.45) * q + 0.45 * normal(rng), 0, 4);
  r.v[kDR] = 0;

  const int width = clampi(26 + 95 * (1.0 - 0.8 * s) * rng.uniform(0.5, 1.0), 8, 180);
  const int lo = clampi(lb - width * rng.uniform(0.35, 0.6), 50, 150);
  r.v[kWidth] = width;
  r.v[kMin] = lo;
  r.v[kMax] = lo + width;
  r.v[kNmax] = clampi(1 + width / 28.0 + normal(rng), 0, 18);
  r.v[kNzeros] = bern(rng, 0.12) ? 1 + static_cast<int>(rng.below(3)) : 0;

  // Histogram skew: decelerations drag the mean below the mode as severity
  // rises; the mode itself stays near baseline for every class.
  const int mode = clampi(lb + 2 + 3 * normal(rng), 60, 187);
  const int drag = clampi(12 * s * (1.0 + 0.3 * normal(rng)), 0, 38);
  const int mean = clampi(mode - drag + 1.2 * normal(rng), 60, 182);
  const int median = clampi((mode + mean) / 2.0 + 1.0 * normal(rng) + 2, 60, 185);
  r.v[kMode] = mode;
  r.v[kMean] = mean;
  r.v[kMedian] = median;
  r.v[kVariance] = clampi(width * width / 280.0 * rng.uniform(0.3, 1.4), 0, 269);

  const double skew = (mode - mean) / 9.0 - 0.4 + 0.55 * normal(rng);
  r.v[kTendency] = skew > 0.55 ? -1 : (skew > -0.6 ? 0 : 1);
  return r;
}

void emit_ctg(const std::string& path) {
  Rng rng(2126);
  std::vector<CtgRow> rows;
  const int counts[3] = {1655, 295, 176};
  for (int cls = 1; cls <= 3; ++cls)
    for (int k = 0; k < counts[cls - 1]; ++k) rows.push_back(draw_ctg(rng, cls));
  rng.shuffle(rows);

  std::ofstream out(path);
  out << "FileName,Date,b,e,LBE,LB,AC,FM,UC,ASTV,mSTV,ALTV,mLTV,DL,DS,DP,DR,"
         "Width,Min,Max,Nmax,Nzeros,Mode,Mean,Median,Variance,Tendency,NSP\n";
  int file_no = 1;
  for (const CtgRow& r : rows) {
    out << "exam" << file_no << ".txt,"
        << iso_date(1 + (file_no % 12), 1 + (file_no * 7) % 28) << ',';
    ++file_no;
    for (int i = 0; i < 25; ++i) {
      if (i == kMSTV || i == kMLTV)
        out << fmt1(r.v[i]);
      else
        out << static_cast<long long>(r.v[i]);
      out << ',';
    }
    out << r.nsp << '\n';
  }
  std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = ".";
  bool covid = true, ctg = true;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--out" && i + 1 < argc)
      out_dir = argv[++i];
    else if (a == "--covid-only")
      ctg = false;
    else if (a == "--ctg-only")
      covid = false;
    else {
      std::cerr << "usage: make_fixtures --out <dir> [--covid-only|--ctg-only]\n";
      return 2;
    }
  }
  if (covid) emit_covid(out_dir + "/covid_synthetic.csv");
  if (ctg) emit_ctg(out_dir + "/ctg_synthetic.csv");
  return 0;
}
