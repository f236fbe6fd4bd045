#include "ballneedlets/io.hpp"

#include <cstdio>

namespace ballneedlets {

Json envelope(const RunInfo& info, const std::string& kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["command_line"] = info.command_line;
  j["seed"] = info.seed;
  return j;
}

Json matrix_columns(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Json col = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) col.push_back(m(r, c));
    out.push_back(std::move(col));
  }
  return out;
}

Json vector_values(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const PointSet& ps) {
  Json j;
  j["epsilon"] = ps.epsilon;
  j["d"] = ps.d;
  j["mu"] = ps.mu;
  j["M"] = ps.M;
  j["count"] = ps.size();
  j["points"] = matrix_columns(ps.points);
  j["surrogates"] = vector_values(ps.surrogates);
  return j;
}

Json to_json(const CubatureRule& rule) {
  Json j;
  j["n"] = rule.degree;
  j["mu"] = rule.mu;
  j["d"] = rule.d;
  j["delta"] = rule.delta;
  j["gamma"] = rule.gamma;
  j["epsilon"] = rule.points.epsilon;
  j["points"] = matrix_columns(rule.points.points);
  j["weights"] = vector_values(rule.weights);
  j["residual_max"] = rule.residual_max;
  j["weight_ratio_bounds"] = {rule.ratio_lo, rule.ratio_hi};
  j["lp_iterations"] = rule.lp_iterations;
  return j;
}

Json to_json(const NeedletFrame& frame) {
  Json j;
  j["mu"] = frame.params.mu;
  j["d"] = frame.params.d;
  j["J"] = frame.J;
  Json levels = Json::array();
  for (const FrameLevel& level : frame.levels) {
    Json l;
    l["j"] = level.j;
    l["degree"] = level.rule_degree;
    l["kernel_degree"] = level.kernel_degree();
    if (level.rule) {
      l["delta"] = level.rule->delta;
      l["points"] = matrix_columns(level.rule->nodes());
      l["weights"] = vector_values(level.rule->weights);
    } else {
      l["points"] = Json::array();
      l["weights"] = Json::array();
    }
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j;
}

namespace {

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_number_float()) {
    out += format_double(j.get<double>());
  } else if (scalar(j)) {
    out += j.dump();
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    bool flat = true;
    for (const auto& e : j) flat = flat && scalar(e);
    out += '[';
    bool first = true;
    for (const auto& e : j) {
      if (!first) out += flat ? ", " : ",";
      if (!flat) out += "\n" + inner;
      write(e, indent + 2, out);
      first = false;
    }
    if (!flat) out += "\n" + pad;
    out += ']';
  } else {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ',';
      out += "\n" + inner + Json(it.key()).dump() + ": ";
      write(it.value(), indent + 2, out);
      first = false;
    }
    out += "\n" + pad + '}';
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(j, 0, out);
  out += '\n';
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace ballneedlets
