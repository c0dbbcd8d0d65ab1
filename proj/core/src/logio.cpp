#include "relnav/logio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace relnav {

namespace {

void append(std::string& row, double v) {
  row += ',';
  row += format_double(v);
}

void append_vec3(std::string& row, const Vec3& v) {
  append(row, v[0]);
  append(row, v[1]);
  append(row, v[2]);
}

void append_mat3(std::string& row, const Mat3& m) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) append(row, m(r, c));
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  out.push_back(field);
  return out;
}

double parse_num(const std::string& token, int line_no) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("log line " + std::to_string(line_no) +
                             ": not a number: '" + token + "'");
  }
  if (pos != token.size()) {
    throw std::runtime_error("log line " + std::to_string(line_no) +
                             ": trailing characters in '" + token + "'");
  }
  return v;
}

Mat3 parse_mat3(const std::vector<std::string>& f, std::size_t at,
                int line_no) {
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m(r, c) = parse_num(f[at + 3 * r + c], line_no);
  }
  return m;
}

Vec3 parse_vec3(const std::vector<std::string>& f, std::size_t at,
                int line_no) {
  return Vec3(parse_num(f[at], line_no), parse_num(f[at + 1], line_no),
              parse_num(f[at + 2], line_no));
}

bool is_header(const std::string& line) {
  return !line.empty() && (line[0] < '0' || line[0] > '9') && line[0] != '-' &&
         line[0] != '+' && line[0] != '.';
}

void require_columns(const std::vector<std::string>& f, std::size_t n,
                     int line_no, const char* what) {
  if (f.size() != n) {
    throw std::runtime_error("log line " + std::to_string(line_no) + ": " +
                             what + " row needs " + std::to_string(n) +
                             " columns, got " + std::to_string(f.size()));
  }
}

// Median sample-period gap scan for one timestamp stream.
void scan_gaps(const std::vector<double>& ts, const char* name,
               std::vector<std::string>& warnings) {
  if (ts.size() < 3) return;
  std::vector<double> diffs(ts.size() - 1);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) diffs[i] = ts[i + 1] - ts[i];
  std::vector<double> sorted = diffs;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (median <= 0.0) return;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > 10.0 * median) {
      std::ostringstream os;
      os << name << ": gap of " << diffs[i] << " s after t=" << ts[i]
         << " (median period " << median << " s)";
      warnings.push_back(os.str());
    }
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_estimate_csv(std::ostream& os,
                        const std::vector<EstimateRow>& rows) {
  os << "t,C0,C1,C2,C3,C4,C5,C6,C7,C8,v0,v1,v2,r0,r1,r2,"
        "beta_gyr0,beta_gyr1,beta_gyr2,beta_acc_rel0,beta_acc_rel1,"
        "beta_acc_rel2,P0,P1,P2,P3,P4,P5,P6,P7,P8,P9,P10,P11,P12,P13,P14,"
        "nees\n";
  for (const auto& row : rows) {
    std::string line = format_double(row.t);
    append_mat3(line, row.T.C);
    append_vec3(line, row.T.v);
    append_vec3(line, row.T.r);
    append_vec3(line, row.bias_gyro);
    append_vec3(line, row.bias_accel_rel);
    for (int k = 0; k < 15; ++k) append(line, row.p_diag[k]);
    append(line, row.nees_value);
    os << line << '\n';
  }
}

std::vector<EstimateRow> read_estimate_csv(std::istream& is) {
  std::vector<EstimateRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || (line_no == 1 && is_header(line))) continue;
    const auto f = split(line);
    require_columns(f, 38, line_no, "estimate");
    EstimateRow row;
    row.t = parse_num(f[0], line_no);
    row.T.C = parse_mat3(f, 1, line_no);
    row.T.v = parse_vec3(f, 10, line_no);
    row.T.r = parse_vec3(f, 13, line_no);
    row.bias_gyro = parse_vec3(f, 16, line_no);
    row.bias_accel_rel = parse_vec3(f, 19, line_no);
    for (int k = 0; k < 15; ++k) row.p_diag[k] = parse_num(f[22 + k], line_no);
    row.nees_value = parse_num(f[37], line_no);
    rows.push_back(row);
  }
  return rows;
}

void write_truth_csv(std::ostream& os, const std::vector<TruthRecord>& recs,
                     int stride) {
  os << "t,"
        "C0_0,C0_1,C0_2,C0_3,C0_4,C0_5,C0_6,C0_7,C0_8,v0_0,v0_1,v0_2,"
        "r0_0,r0_1,r0_2,bg0_0,bg0_1,bg0_2,ba0_0,ba0_1,ba0_2,"
        "Ci_0,Ci_1,Ci_2,Ci_3,Ci_4,Ci_5,Ci_6,Ci_7,Ci_8,vi_0,vi_1,vi_2,"
        "ri_0,ri_1,ri_2,bgi_0,bgi_1,bgi_2,bai_0,bai_1,bai_2\n";
  const int step = stride < 1 ? 1 : stride;
  for (std::size_t k = 0; k < recs.size(); k += step) {
    const TruthRecord& rec = recs[k];
    std::string line = format_double(rec.t);
    append_mat3(line, rec.X0.C);
    append_vec3(line, rec.X0.v);
    append_vec3(line, rec.X0.r);
    append_vec3(line, rec.bias_gyro_0);
    append_vec3(line, rec.bias_accel_0);
    append_mat3(line, rec.Xi.C);
    append_vec3(line, rec.Xi.v);
    append_vec3(line, rec.Xi.r);
    append_vec3(line, rec.bias_gyro_i);
    append_vec3(line, rec.bias_accel_i);
    os << line << '\n';
  }
}

std::vector<TruthRecord> read_truth_csv(std::istream& is) {
  std::vector<TruthRecord> recs;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || (line_no == 1 && is_header(line))) continue;
    const auto f = split(line);
    require_columns(f, 43, line_no, "truth");
    TruthRecord rec;
    rec.t = parse_num(f[0], line_no);
    rec.X0.C = parse_mat3(f, 1, line_no);
    rec.X0.v = parse_vec3(f, 10, line_no);
    rec.X0.r = parse_vec3(f, 13, line_no);
    rec.X0.c = rec.t;
    rec.bias_gyro_0 = parse_vec3(f, 16, line_no);
    rec.bias_accel_0 = parse_vec3(f, 19, line_no);
    rec.Xi.C = parse_mat3(f, 22, line_no);
    rec.Xi.v = parse_vec3(f, 31, line_no);
    rec.Xi.r = parse_vec3(f, 34, line_no);
    rec.Xi.c = rec.t;
    rec.bias_gyro_i = parse_vec3(f, 37, line_no);
    rec.bias_accel_i = parse_vec3(f, 40, line_no);
    recs.push_back(rec);
  }
  return recs;
}

void write_nees_csv(std::ostream& os, const std::vector<NeesCsvRow>& rows) {
  os << "trial,t,nees\n";
  for (const auto& row : rows) {
    os << row.trial << ',' << format_double(row.t) << ','
       << format_double(row.value) << '\n';
  }
}

std::vector<NeesCsvRow> read_nees_csv(std::istream& is) {
  std::vector<NeesCsvRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || (line_no == 1 && is_header(line))) continue;
    const auto f = split(line);
    require_columns(f, 3, line_no, "nees");
    NeesCsvRow row;
    row.trial = static_cast<int>(parse_num(f[0], line_no));
    row.t = parse_num(f[1], line_no);
    row.value = parse_num(f[2], line_no);
    rows.push_back(row);
  }
  return rows;
}

ReplayStreams to_streams(const TrialData& data, int truth_stride) {
  ReplayStreams s;
  s.imu0 = data.imu0;
  s.imui = data.imui;
  const int m = data.sched.steps_rmi;
  for (std::size_t j = 0; j < s.imui.size(); ++j) {
    const std::size_t w = j / static_cast<std::size_t>(m);
    if (data.neighbour_bias_estimates.empty()) break;
    const Vec3& est = w < data.neighbour_bias_estimates.size()
                          ? data.neighbour_bias_estimates[w]
                          : data.neighbour_bias_estimates.back();
    s.imui[j].gyro -= est;
  }
  for (const auto& epoch : data.ranges) {
    s.ranges.insert(s.ranges.end(), epoch.begin(), epoch.end());
  }
  if (truth_stride > 0) {
    for (std::size_t k = 0; k < data.truth.size();
         k += static_cast<std::size_t>(truth_stride)) {
      s.truth.push_back(data.truth[k]);
    }
  }
  return s;
}

void write_event_log(std::ostream& os, const ReplayStreams& streams) {
  struct Row {
    double t;
    int rank;
    int robot;
    std::string text;
  };
  std::vector<Row> rows;
  rows.reserve(streams.imu0.size() + streams.imui.size() +
               streams.ranges.size() + 2 * streams.truth.size());

  const auto imu_row = [&](const ImuSample& u, int robot) {
    std::string line = format_double(u.t);
    line += ',';
    line += std::to_string(robot);
    line += ",imu";
    append_vec3(line, u.gyro);
    append_vec3(line, u.accel);
    rows.push_back({u.t, 0, robot, std::move(line)});
  };
  for (const auto& u : streams.imu0) imu_row(u, 0);
  for (const auto& u : streams.imui) imu_row(u, 1);

  for (const auto& z : streams.ranges) {
    std::string line = format_double(z.t);
    line += ",1,range";
    append(line, z.range);
    append(line, z.sigma);
    append_vec3(line, z.tag0);
    append_vec3(line, z.tagi);
    rows.push_back({z.t, 1, 1, std::move(line)});
  }

  for (const auto& rec : streams.truth) {
    std::string line0 = format_double(rec.t);
    line0 += ",0,truth";
    append_mat3(line0, rec.X0.C);
    append_vec3(line0, rec.X0.v);
    append_vec3(line0, rec.X0.r);
    append_vec3(line0, rec.bias_gyro_0);
    append_vec3(line0, rec.bias_accel_0);
    rows.push_back({rec.t, 2, 0, std::move(line0)});

    std::string linei = format_double(rec.t);
    linei += ",1,truth";
    append_mat3(linei, rec.Xi.C);
    append_vec3(linei, rec.Xi.v);
    append_vec3(linei, rec.Xi.r);
    append_vec3(linei, rec.bias_gyro_i);
    append_vec3(linei, rec.bias_accel_i);
    rows.push_back({rec.t, 2, 1, std::move(linei)});
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.robot < b.robot;
  });

  os << "t,robot_id,type,payload...\n";
  for (const auto& row : rows) os << row.text << '\n';
}

ReplayStreams ingest_log(std::istream& is) {
  struct Row {
    double t = 0.0;
    int rank = 0;
    int robot = 0;
    int line_no = 0;
    std::vector<std::string> fields;
  };
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || (line_no == 1 && is_header(line))) continue;
    Row row;
    row.fields = split(line);
    if (row.fields.size() < 3) {
      throw std::runtime_error("log line " + std::to_string(line_no) +
                               ": needs at least t, robot_id, type");
    }
    row.line_no = line_no;
    row.t = parse_num(row.fields[0], line_no);
    row.robot = static_cast<int>(parse_num(row.fields[1], line_no));
    const std::string& type = row.fields[2];
    if (type == "imu") {
      row.rank = 0;
      require_columns(row.fields, 9, line_no, "imu");
    } else if (type == "range") {
      row.rank = 1;
      require_columns(row.fields, 11, line_no, "range");
    } else if (type == "truth") {
      row.rank = 2;
      require_columns(row.fields, 24, line_no, "truth");
    } else {
      throw std::runtime_error("log line " + std::to_string(line_no) +
                               ": unknown type '" + type + "'");
    }
    rows.push_back(std::move(row));
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.robot < b.robot;
  });

  ReplayStreams s;
  int neighbour_id = -1;
  const auto neighbour_check = [&](int robot, int at_line) {
    if (robot == 0) return;
    if (neighbour_id == -1) {
      neighbour_id = robot;
    } else if (robot != neighbour_id) {
      throw std::runtime_error(
          "log line " + std::to_string(at_line) +
          ": more than one neighbour id (replay handles a single pair)");
    }
  };

  for (const auto& row : rows) {
    if (row.rank == 0) {
      ImuSample u;
      u.t = row.t;
      u.gyro = parse_vec3(row.fields, 3, row.line_no);
      u.accel = parse_vec3(row.fields, 6, row.line_no);
      std::vector<ImuSample>* stream = nullptr;
      if (row.robot == 0) {
        stream = &s.imu0;
      } else {
        neighbour_check(row.robot, row.line_no);
        stream = &s.imui;
      }
      if (!stream->empty() && stream->back().t >= u.t) {
        throw std::runtime_error("log line " + std::to_string(row.line_no) +
                                 ": non-monotonic imu timestamps");
      }
      stream->push_back(u);
    } else if (row.rank == 1) {
      neighbour_check(row.robot, row.line_no);
      RangeMeasurement z;
      z.t = row.t;
      z.range = parse_num(row.fields[3], row.line_no);
      z.sigma = parse_num(row.fields[4], row.line_no);
      z.tag0 = parse_vec3(row.fields, 5, row.line_no);
      z.tagi = parse_vec3(row.fields, 8, row.line_no);
      s.ranges.push_back(z);
    } else {
      if (row.robot != 0) neighbour_check(row.robot, row.line_no);
      if (s.truth.empty() || s.truth.back().t != row.t) {
        if (!s.truth.empty() && s.truth.back().t > row.t) {
          throw std::runtime_error("log line " + std::to_string(row.line_no) +
                                   ": non-monotonic truth timestamps");
        }
        TruthRecord rec;
        rec.t = row.t;
        rec.X0.c = row.t;
        rec.Xi.c = row.t;
        s.truth.push_back(rec);
      }
      TruthRecord& rec = s.truth.back();
      const Mat3 C = parse_mat3(row.fields, 3, row.line_no);
      const Vec3 v = parse_vec3(row.fields, 12, row.line_no);
      const Vec3 r = parse_vec3(row.fields, 15, row.line_no);
      const Vec3 bg = parse_vec3(row.fields, 18, row.line_no);
      const Vec3 ba = parse_vec3(row.fields, 21, row.line_no);
      if (row.robot == 0) {
        rec.X0.C = C;
        rec.X0.v = v;
        rec.X0.r = r;
        rec.bias_gyro_0 = bg;
        rec.bias_accel_0 = ba;
      } else {
        rec.Xi.C = C;
        rec.Xi.v = v;
        rec.Xi.r = r;
        rec.bias_gyro_i = bg;
        rec.bias_accel_i = ba;
      }
    }
  }

  if (rows.empty()) {
    s.warnings.push_back("log contains no rows");
  }

  std::vector<double> ts0(s.imu0.size());
  for (std::size_t i = 0; i < s.imu0.size(); ++i) ts0[i] = s.imu0[i].t;
  scan_gaps(ts0, "imu stream robot 0", s.warnings);
  std::vector<double> tsi(s.imui.size());
  for (std::size_t i = 0; i < s.imui.size(); ++i) tsi[i] = s.imui[i].t;
  scan_gaps(tsi, "imu stream neighbour", s.warnings);

  return s;
}

}  // namespace relnav
