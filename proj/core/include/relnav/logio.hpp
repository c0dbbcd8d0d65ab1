#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relnav/simulation.hpp"

namespace relnav {

// All floating-point output uses 17 significant digits so that every value
// round-trips through text exactly.
std::string format_double(double v);

// Estimate log, one row per recorded instant:
// t, C(9 row-major), v(3), r(3), beta_gyr(3), beta_acc_rel(3), P_diag(15),
// nees.
void write_estimate_csv(std::ostream& os, const std::vector<EstimateRow>& rows);
std::vector<EstimateRow> read_estimate_csv(std::istream& is);

// Truth log, absolute states of both robots:
// t, C0(9), v0(3), r0(3), bg0(3), ba0(3), Ci(9), vi(3), ri(3), bgi(3),
// bai(3).  Clock entries are implied by t.
void write_truth_csv(std::ostream& os, const std::vector<TruthRecord>& recs,
                     int stride);
std::vector<TruthRecord> read_truth_csv(std::istream& is);

struct NeesCsvRow {
  int trial = 0;  // -1 marks the across-trial average
  double t = 0.0;
  double value = 0.0;
};
void write_nees_csv(std::ostream& os, const std::vector<NeesCsvRow>& rows);
std::vector<NeesCsvRow> read_nees_csv(std::istream& is);

// Sensor event log for replay: `t, robot_id, type, payload...` rows of type
// imu (gyro 3, accel 3), range (range, sigma, tag0 3, tagi 3) and truth
// (C 9, v 3, r 3, bias_gyr 3, bias_acc 3).  Rows may arrive in any order;
// ingest sorts by (t, type, robot_id).
struct ReplayStreams {
  std::vector<ImuSample> imu0;
  std::vector<ImuSample> imui;   // the neighbour's broadcast stream
  std::vector<RangeMeasurement> ranges;
  std::vector<TruthRecord> truth;  // may be empty or sparse
  std::vector<std::string> warnings;
};

// The neighbour's rows carry its broadcast stream: gyro corrected by the
// per-window bias estimate, accel raw.  Truth rows written every
// truth_stride steps (0 disables them).
ReplayStreams to_streams(const TrialData& data, int truth_stride);

void write_event_log(std::ostream& os, const ReplayStreams& streams);

// Throws std::runtime_error naming the line for malformed rows, duplicate
// timestamps within one stream, or more than one neighbour id.  Gaps larger
// than 10x the median sample period are reported in warnings.
ReplayStreams ingest_log(std::istream& is);

}  // namespace relnav
