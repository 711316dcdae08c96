#include "llab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace llab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(e.what(), static_cast<int>(e.byte));
  }
}

void require_object(const ordered_json& j, const char* what) {
  if (!j.is_object())
    throw ConfigError(std::string(what) + ": expected a JSON object");
}

void reject_unknown_keys(const ordered_json& j,
                         std::initializer_list<const char*> allowed,
                         const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError(std::string(what) + ": unknown key \"" + it.key() +
                        "\"");
  }
}

double number_at(const ordered_json& j, const char* what) {
  if (!j.is_number())
    throw ConfigError(std::string(what) + ": expected a number");
  return j.get<double>();
}

int positive_int_at(const ordered_json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw ConfigError(std::string(what) + ": expected a positive integer");
  return static_cast<int>(j.get<long long>());
}

void fill_part(Cmat& m, const ordered_json& part, bool imag, const char* what) {
  if (!part.is_array() || static_cast<int>(part.size()) != m.rows())
    throw ConfigError(std::string(what) + ": expected " +
                      std::to_string(m.rows()) + " rows");
  for (int r = 0; r < m.rows(); ++r) {
    const ordered_json& row = part[r];
    if (!row.is_array() || static_cast<int>(row.size()) != m.cols())
      throw ConfigError(std::string(what) + ": row " + std::to_string(r) +
                        " must have " + std::to_string(m.cols()) +
                        " entries");
    for (int c = 0; c < m.cols(); ++c) {
      const double v = number_at(row[c], what);
      m(r, c) += imag ? cplx(0.0, v) : cplx(v, 0.0);
    }
  }
}

Cmat cmat_from_object(const ordered_json& j, int rows, int cols,
                      const char* what) {
  if (!j.contains("re"))
    throw ConfigError(std::string(what) + ": missing \"re\"");
  Cmat m(rows, cols);
  fill_part(m, j["re"], false, what);
  if (j.contains("im")) fill_part(m, j["im"], true, what);
  return m;
}

HermitianMatrix matrix_from(const ordered_json& j, const char* what) {
  require_object(j, what);
  reject_unknown_keys(j, {"dim", "re", "im"}, what);
  if (!j.contains("dim"))
    throw ConfigError(std::string(what) + ": missing \"dim\"");
  const int dim = positive_int_at(j["dim"], what);
  return HermitianMatrix(cmat_from_object(j, dim, dim, what));
}

Cmat rect_matrix_from(const ordered_json& j, const char* what) {
  require_object(j, what);
  reject_unknown_keys(j, {"rows", "cols", "re", "im"}, what);
  if (!j.contains("rows") || !j.contains("cols"))
    throw ConfigError(std::string(what) + ": missing \"rows\" or \"cols\"");
  const int rows = positive_int_at(j["rows"], what);
  const int cols = positive_int_at(j["cols"], what);
  return cmat_from_object(j, rows, cols, what);
}

ordered_json part_to_json(const Cmat& m, bool imag) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

bool has_imag(const Cmat& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c).imag() != 0.0) return true;
  return false;
}

OperatorField field_from(const ordered_json& j, const char* what) {
  if (!j.is_array())
    throw ConfigError(std::string(what) + ": expected a JSON array");
  std::vector<FieldPoint> pts;
  for (const ordered_json& entry : j) {
    require_object(entry, what);
    reject_unknown_keys(entry, {"weight", "matrix"}, what);
    if (!entry.contains("weight") || !entry.contains("matrix"))
      throw ConfigError(std::string(what) +
                        ": each point needs \"weight\" and \"matrix\"");
    pts.push_back({number_at(entry["weight"], what),
                   matrix_from(entry["matrix"], what)});
  }
  return OperatorField(std::move(pts));
}

PositiveLinearMap map_from(const ordered_json& j, const char* what) {
  require_object(j, what);
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ConfigError(std::string(what) + ": missing string key \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "compression") {
    reject_unknown_keys(j, {"kind", "inDim", "indices"}, what);
    if (!j.contains("inDim") || !j.contains("indices"))
      throw ConfigError(std::string(what) +
                        ": compression needs \"inDim\" and \"indices\"");
    std::vector<int> indices;
    for (const ordered_json& v : j["indices"])
      indices.push_back(positive_int_at(v, what));
    return PositiveLinearMap::compression(positive_int_at(j["inDim"], what),
                                          std::move(indices));
  }
  if (kind == "kraus") {
    reject_unknown_keys(j, {"kind", "factors"}, what);
    if (!j.contains("factors") || !j["factors"].is_array())
      throw ConfigError(std::string(what) + ": kraus needs \"factors\"");
    std::vector<Cmat> factors;
    for (const ordered_json& v : j["factors"])
      factors.push_back(rect_matrix_from(v, what));
    return PositiveLinearMap::kraus(std::move(factors));
  }
  if (kind == "dsavg") {
    reject_unknown_keys(j, {"kind", "blockDims", "weights"}, what);
    if (!j.contains("blockDims") || !j.contains("weights"))
      throw ConfigError(std::string(what) +
                        ": dsavg needs \"blockDims\" and \"weights\"");
    std::vector<int> dims;
    for (const ordered_json& v : j["blockDims"])
      dims.push_back(positive_int_at(v, what));
    std::vector<double> weights;
    for (const ordered_json& v : j["weights"])
      weights.push_back(number_at(v, what));
    return PositiveLinearMap::direct_sum_average(std::move(dims),
                                                 std::move(weights));
  }
  if (kind == "pinching") {
    reject_unknown_keys(j, {"kind", "projections"}, what);
    if (!j.contains("projections") || !j["projections"].is_array())
      throw ConfigError(std::string(what) + ": pinching needs \"projections\"");
    std::vector<Cmat> projections;
    for (const ordered_json& v : j["projections"])
      projections.push_back(rect_matrix_from(v, what));
    return PositiveLinearMap::pinching(std::move(projections));
  }
  throw ConfigError(std::string(what) + ": unknown kind \"" + kind + "\"");
}

ordered_json report_entry(const std::string& check, std::uint64_t seed,
                          const std::vector<int>& dims, const char* verdict,
                          double min_eig, double tolerance) {
  ordered_json line;
  line["check"] = check;
  line["seed"] = seed;
  line["dims"] = dims;
  line["verdict"] = verdict;
  line["minEig"] = min_eig;
  line["tolerance"] = tolerance;
  return line;
}

}  // namespace

HermitianMatrix matrix_from_json(const std::string& text) {
  return matrix_from(parse_json(text), "matrix");
}

std::string matrix_to_json(const HermitianMatrix& a) {
  ordered_json j;
  j["dim"] = a.dim();
  j["re"] = part_to_json(a.mat(), false);
  if (has_imag(a.mat())) j["im"] = part_to_json(a.mat(), true);
  return j.dump();
}

OperatorField field_from_json(const std::string& text) {
  return field_from(parse_json(text), "field");
}

PositiveLinearMap map_from_json(const std::string& text) {
  return map_from(parse_json(text), "map");
}

CampaignConfig campaign_config_from_json(const std::string& text) {
  const ordered_json j = parse_json(text);
  require_object(j, "campaign config");
  reject_unknown_keys(
      j, {"checks", "dims", "trials", "seed", "tolerance", "function"},
      "campaign config");
  CampaignConfig cfg;
  cfg.checks = check_names();
  if (j.contains("checks")) {
    if (!j["checks"].is_array())
      throw ConfigError("campaign config: \"checks\" must be an array");
    cfg.checks.clear();
    for (const ordered_json& v : j["checks"]) {
      if (!v.is_string())
        throw ConfigError("campaign config: check names must be strings");
      cfg.checks.push_back(v.get<std::string>());
    }
  }
  if (j.contains("dims")) {
    if (!j["dims"].is_array())
      throw ConfigError("campaign config: \"dims\" must be an array");
    cfg.dims.clear();
    for (const ordered_json& v : j["dims"])
      cfg.dims.push_back(positive_int_at(v, "campaign config dims"));
  }
  if (j.contains("trials")) {
    if (!j["trials"].is_number_integer() || j["trials"].get<long long>() < 0)
      throw ConfigError("campaign config: \"trials\" must be >= 0");
    cfg.trials = static_cast<int>(j["trials"].get<long long>());
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned())
      throw ConfigError("campaign config: \"seed\" must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerance")) {
    const double t = number_at(j["tolerance"], "campaign config tolerance");
    if (!(t > 0.0))
      throw ConfigError("campaign config: \"tolerance\" must be positive");
    cfg.rel_tol = t;
  }
  if (j.contains("function")) {
    if (!j["function"].is_string())
      throw ConfigError("campaign config: \"function\" must be a string");
    cfg.function = j["function"].get<std::string>();
  }
  return cfg;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open \"" + path + "\" for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

HermitianMatrix load_matrix(const std::string& path) {
  return matrix_from_json(read_text_file(path));
}

OperatorField load_field(const std::string& path) {
  return field_from_json(read_text_file(path));
}

PositiveLinearMap load_map(const std::string& path) {
  return map_from_json(read_text_file(path));
}

CampaignConfig load_campaign_config(const std::string& path) {
  return campaign_config_from_json(read_text_file(path));
}

std::string report_lines(const std::vector<CheckResult>& results) {
  std::string out;
  for (const CheckResult& res : results) {
    out += report_entry(res.check_name, res.config.seed, res.config.dims,
                        res.failures.empty() ? "pass" : "fail",
                        res.worst_slack, res.config.rel_tol)
               .dump();
    out += '\n';
    for (const FailureRecord& rec : res.failures) {
      out += report_entry(res.check_name, rec.seed, rec.dims, "violation",
                          rec.witness_min_eig, res.config.rel_tol)
                 .dump();
      out += '\n';
    }
  }
  return out;
}

std::string classifier_verdict_to_json(const ClassifierVerdict& v) {
  ordered_json j;
  j["function"] = v.function;
  j["claims"] = {{"operatorMonotone", v.claims.operator_monotone},
                 {"operatorDecreasing", v.claims.operator_decreasing},
                 {"operatorConvex", v.claims.operator_convex},
                 {"operatorLogConvex", v.claims.operator_log_convex}};
  ordered_json probes = ordered_json::array();
  for (const ProbeReport& p : v.probes) {
    ordered_json entry;
    entry["criterion"] = p.criterion;
    entry["trials"] = p.trials;
    if (p.counterexample.has_value()) {
      entry["counterexample"] = {{"seed", p.counterexample->seed},
                                 {"dim", p.counterexample->dim},
                                 {"minEig", p.counterexample->min_eig}};
    } else {
      entry["counterexample"] = nullptr;
    }
    probes.push_back(std::move(entry));
  }
  j["probes"] = std::move(probes);
  j["anyCounterexample"] = v.any_counterexample();
  j["crossProbeConsistent"] = v.cross_probe_consistent();
  return j.dump(2);
}

std::string format_matrix(const HermitianMatrix& a, int precision) {
  if (precision < 0) precision = 0;
  const int n = a.dim();
  const double display_eps = 0.5 * std::pow(10.0, -precision);
  bool with_imag = false;
  for (int r = 0; r < n && !with_imag; ++r)
    for (int c = 0; c < n; ++c)
      if (std::abs(a(r, c).imag()) >= display_eps) {
        with_imag = true;
        break;
      }

  const auto cell = [&](int r, int c) {
    char buf[96];
    if (with_imag)
      std::snprintf(buf, sizeof(buf), "%.*f%+.*fi", precision, a(r, c).real(),
                    precision, a(r, c).imag());
    else
      std::snprintf(buf, sizeof(buf), "%.*f", precision, a(r, c).real());
    return std::string(buf);
  };

  std::vector<std::size_t> width(n, 0);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      width[c] = std::max(width[c], cell(r, c).size());

  std::string out;
  for (int r = 0; r < n; ++r) {
    out += "[ ";
    for (int c = 0; c < n; ++c) {
      const std::string s = cell(r, c);
      out.append(width[c] - s.size(), ' ');
      out += s;
      if (c + 1 < n) out += "  ";
    }
    out += " ]\n";
  }
  return out;
}

}  // namespace llab
