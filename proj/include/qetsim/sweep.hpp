#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qetsim/core.hpp"

namespace qetsim {

enum class AxisScale { Linear, Log10 };

const char* axis_scale_name(AxisScale s);
AxisScale axis_scale_from_name(const std::string& name);

struct AxisSpec {
  std::string param;  // must name a settable parameter of the target model
  double min;
  double max;
  std::size_t n_points;
  AxisScale scale = AxisScale::Linear;

  void validate() const;
  double coord(std::size_t i) const;
  std::vector<double> coords() const;
};

using ParamMap = std::map<std::string, double>;

// A named scalar model with a full parameter set. Axis parameters are
// overridden per grid point; everything else stays fixed.
struct Model {
  std::string id;
  ParamMap params;
  double (*eval)(const ParamMap&);
};

std::vector<std::string> model_ids();
const ParamMap& model_defaults(const std::string& id);
// Unknown model ids and unknown override keys are rejected by name.
Model make_model(const std::string& id, const ParamMap& overrides = {});

using Polyline = std::vector<std::array<double, 2>>;

struct ContourSet {
  double level;
  std::vector<Polyline> polylines;
};

struct SweepResult {
  std::string model_id;
  ParamMap fixed;              // non-axis parameters, fully recorded
  std::vector<AxisSpec> axes;  // 1 or 2
  // Row-major, axis 0 outer: values[i0 * axes[1].n_points + i1].
  std::vector<double> values;
  std::vector<ContourSet> contours;

  double value_at(std::size_t i0, std::size_t i1 = 0) const;
};

// Evaluates the model at every grid point. Results are identical to
// point-wise model calls and independent of thread count (n_threads = 0
// selects hardware concurrency). A non-finite output aborts with the
// offending coordinates.
SweepResult run_sweep(const Model& model, const std::vector<AxisSpec>& axes,
                      unsigned n_threads = 0);

enum class ContourSpace { Value, Log10 };

// Marching-squares iso-lines with linear interpolation along cell edges.
// Saddle cells are disambiguated by the cell midpoint value. In Log10 space
// the crossing fractions are computed on log10(values); positions along log
// axes always interpolate in log coordinates. A level outside the value
// range yields an empty list.
std::vector<Polyline> extract_contour(const SweepResult& result, double level,
                                      ContourSpace space = ContourSpace::Value);

}  // namespace qetsim
