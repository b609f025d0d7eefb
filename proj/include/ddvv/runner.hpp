#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ddvv/config.hpp"
#include "ddvv/construction.hpp"
#include "ddvv/geometry.hpp"

namespace ddvv {

// One grid sample after the full pipeline. `error` holds the kind + message
// of any per-point failure; such records keep their chart point and whatever
// was computed before the failure, and never abort the run.
struct SampleRecord {
  int index = 0;
  ChartPoint point;
  Vec phi;
  double s = 0.0, sN = 0.0, H2 = 0.0, residual = 0.0;
  double lambda = 0.0, mu = 0.0;
  DdvvFlags flags;
  double rank_margin = 0.0;
  std::optional<double> cf_residual;   // canonical-frame pattern deviation
  std::optional<double> law_residual;  // inversion shape-law residual
  std::string error;
  bool ok = false;
};

// Runs fn(i) for i in [0, count) across `workers` threads, worker w taking
// the indices congruent to w. Deterministic output placement is the caller's
// job (write to slot i); exceptions inside fn must not escape.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

// Full pipeline over a chart: construction jets, optional transform chain,
// curvatures, equality residual, canonical frame. With want_law and a single
// transform, each record carries the shape-operator transformation residual.
std::vector<SampleRecord> evaluate_grid(const HolomorphicCurve& curve,
                                        const std::vector<ChartPoint>& points,
                                        const std::vector<AmbientMap>& chain,
                                        bool want_law, const Tolerances& tol,
                                        int workers);

// Shortest representation that parses back to the same double.
std::string fmt_double(double x);

// NDJSON, one SampleRecord per line, key order fixed. Returns bytes written.
void write_samples_ndjson(const std::string& path,
                          const std::vector<SampleRecord>& records);

// Fixed-angle slice of the construction as a triangulated OBJ grid over the
// first three ambient coordinates. Records that failed are skipped along with
// their incident faces.
void write_obj_slice(const std::string& path, const HolomorphicCurve& curve,
                     const GridSpec& grid, const std::vector<double>& thetas,
                     const Tolerances& tol, int workers);

}  // namespace ddvv
