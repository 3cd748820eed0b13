#include "lcbound/io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lcb {

namespace {

template <class T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad field '") + key + "': " + e.what());
  }
}

std::int64_t require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be an integer");
  }
  return j.at(key).get<std::int64_t>();
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

DistributionSpec distribution_spec_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("distribution spec must be a JSON object");
  const auto fam = require<std::string>(j, "family");
  if (fam == "bernoulli") return family::Bernoulli{require_number(j, "p")};
  if (fam == "rademacher") return family::Rademacher{require_number(j, "p")};
  if (fam == "binomial") return family::Binomial{static_cast<int>(require_int(j, "n")), require_number(j, "p")};
  if (fam == "uniform_interval") return family::UniformInterval{require_int(j, "a"), require_int(j, "b")};
  if (fam == "uniform_set") {
    if (!j.contains("support") || !j.at("support").is_array()) {
      throw std::invalid_argument("uniform_set needs an integer array 'support'");
    }
    family::UniformSet out;
    for (const auto& v : j.at("support")) {
      if (!v.is_number_integer()) throw std::invalid_argument("uniform_set support must be integers");
      out.support.push_back(v.get<std::int64_t>());
    }
    return out;
  }
  if (fam == "two_point") {
    return family::TwoPoint{require_int(j, "x1"), require_int(j, "x2"), require_number(j, "theta")};
  }
  if (fam == "explicit") {
    if (!j.contains("pmf") || !j.at("pmf").is_array()) throw std::invalid_argument("explicit needs an array 'pmf'");
    family::Explicit out{j.contains("offset") ? require_int(j, "offset") : 0, {}};
    for (const auto& v : j.at("pmf")) {
      if (!v.is_number()) throw std::invalid_argument("explicit pmf entries must be numbers");
      out.probs.push_back(v.get<double>());
    }
    return out;
  }
  throw std::invalid_argument("unknown family '" + fam + "'");
}

json to_json(const DistributionSpec& spec) {
  struct Visitor {
    json operator()(const family::Bernoulli& f) const { return {{"family", "bernoulli"}, {"p", f.p}}; }
    json operator()(const family::Rademacher& f) const { return {{"family", "rademacher"}, {"p", f.p}}; }
    json operator()(const family::Binomial& f) const { return {{"family", "binomial"}, {"n", f.n}, {"p", f.p}}; }
    json operator()(const family::UniformInterval& f) const {
      return {{"family", "uniform_interval"}, {"a", f.a}, {"b", f.b}};
    }
    json operator()(const family::UniformSet& f) const { return {{"family", "uniform_set"}, {"support", f.support}}; }
    json operator()(const family::TwoPoint& f) const {
      return {{"family", "two_point"}, {"x1", f.x1}, {"x2", f.x2}, {"theta", f.theta}};
    }
    json operator()(const family::Explicit& f) const {
      return {{"family", "explicit"}, {"offset", f.offset}, {"pmf", f.probs}};
    }
  };
  return std::visit(Visitor{}, spec);
}

json to_json(const LatticeDistribution& d) {
  return {{"family", "explicit"}, {"offset", d.offset()}, {"pmf", std::vector<double>(d.pmf().begin(), d.pmf().end())}};
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("coefficients must be integers or strings \"p/q\"");
}

ParsedInput parse_spec(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("input must be a JSON object");
  if (j.contains("family")) return make_distribution(distribution_spec_from_json(j));
  if (!j.contains("components") || !j.at("components").is_array()) {
    throw std::invalid_argument("input needs either 'family' or a 'components' array");
  }
  WeightedSumSpec spec;
  for (const auto& c : j.at("components")) spec.components.push_back(make_distribution(distribution_spec_from_json(c)));
  if (j.contains("coefficients")) {
    if (!j.at("coefficients").is_array()) throw std::invalid_argument("'coefficients' must be an array");
    for (const auto& c : j.at("coefficients")) spec.coefficients.push_back(rational_from_json(c));
  } else {
    spec.coefficients.assign(spec.components.size(), Rational(1));
  }
  spec.validate();
  return spec;
}

ParsedInput parse_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return parse_spec(j);
}

std::string serialize(const WeightedSumSpec& spec) {
  json j;
  j["coefficients"] = json::array();
  for (const auto& c : spec.coefficients) j["coefficients"].push_back(c.to_string());
  j["components"] = json::array();
  for (const auto& d : spec.components) j["components"].push_back(to_json(d));
  return j.dump();
}

std::string serialize(const LatticeDistribution& d) { return to_json(d).dump(); }

json to_json(const BoundReport& report) {
  json inputs = json::object();
  for (const auto& [k, v] : report.inputs) inputs[k] = v;
  return {{"theorem", report.theorem},
          {"bound", report.bound},
          {"raw_bound", report.raw_bound},
          {"c", report.c},
          {"applicable", report.applicable},
          {"informative", report.informative},
          {"branch", report.branch},
          {"inputs", inputs}};
}

json to_json(const StochasticMatrixCertificate& cert) {
  json rows = json::array();
  for (std::size_t i = 0; i < cert.size; ++i) {
    rows.push_back(std::vector<double>(cert.matrix.begin() + static_cast<std::ptrdiff_t>(i * cert.size),
                                       cert.matrix.begin() + static_cast<std::ptrdiff_t>((i + 1) * cert.size)));
  }
  return {{"size", cert.size},
          {"matrix", rows},
          {"row_permutation", cert.labels},
          {"source", cert.source},
          {"target", cert.target},
          {"residual", certificate_residual(cert)}};
}

std::string to_string(CaseStatus status) {
  switch (status) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::precondition_failed: return "precondition_failed";
  }
  return "unknown";
}

std::string to_string(Direction direction) { return direction == Direction::upper ? "upper" : "lower"; }

json to_json(const CaseRecord& r) {
  json comps = json::array();
  for (const auto& c : r.components) comps.push_back(to_json(c));
  json j = {{"id", r.id},
            {"theorem", r.theorem},
            {"parameters", r.parameters},
            {"components", comps},
            {"n", r.components.size()},
            {"bound", r.bound},
            {"achieved", r.achieved},
            {"slack", r.slack},
            {"direction", to_string(r.direction)},
            {"tolerance", r.tolerance},
            {"witness_a", r.witness_a},
            {"pass", r.pass()},
            {"status", to_string(r.status)}};
  j["witness_x"] = r.witness_x ? json(r.witness_x->to_string()) : json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const VerificationReport& report) {
  json cases = json::array();
  for (const auto& r : report.cases) cases.push_back(to_json(r));
  return {{"summary",
           {{"total", report.cases.size()},
            {"passed", report.passed},
            {"failed", report.failed},
            {"precondition_failed", report.precondition_failed},
            {"wall_seconds", report.wall_seconds}}},
          {"cases", cases}};
}

void write_csv(std::ostream& os, const VerificationReport& report) {
  os << "id,theorem,parameters,n,families,bound,achieved,slack,direction,witness_a,witness_x,pass,status\n";
  for (const auto& r : report.cases) {
    std::string families;
    for (std::size_t i = 0; i < r.components.size(); ++i) families += (i ? ";" : "") + describe(r.components[i]);
    std::string witness;
    for (std::size_t i = 0; i < r.witness_a.size(); ++i) witness += (i ? " " : "") + std::to_string(r.witness_a[i]);
    os << csv_field(r.id) << ',' << csv_field(r.theorem) << ',' << csv_field(r.parameters) << ','
       << r.components.size() << ',' << csv_field(families) << ',' << csv_number(r.bound) << ','
       << csv_number(r.achieved) << ',' << csv_number(r.slack) << ',' << to_string(r.direction) << ','
       << csv_field(witness) << ',' << (r.witness_x ? csv_field(r.witness_x->to_string()) : "") << ','
       << (r.pass() ? "true" : "false") << ',' << to_string(r.status) << '\n';
  }
}

void apply_config_json(SweepConfig& c, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  auto get_int = [&](const char* key, int& dst) {
    if (j.contains(key)) dst = static_cast<int>(require_int(j, key));
  };
  get_int("max_n", c.max_n);
  get_int("box", c.box);
  get_int("ap_max_n", c.ap_max_n);
  get_int("two_point_max_n", c.two_point_max_n);
  get_int("uniform_trials", c.uniform_trials);
  get_int("uniform_max_n", c.uniform_max_n);
  get_int("uniform_max_set", c.uniform_max_set);
  get_int("uniform_range", c.uniform_range);
  get_int("pushforward_trials", c.pushforward_trials);
  if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(require_int(j, "seed"));
  if (j.contains("jobs")) c.jobs = static_cast<unsigned>(require_int(j, "jobs"));
  if (j.contains("window_cap")) c.window_cap = static_cast<std::size_t>(require_int(j, "window_cap"));
  if (j.contains("violation_tolerance")) c.violation_tolerance = require_number(j, "violation_tolerance");
  if (j.contains("exact_tolerance")) c.exact_tolerance = require_number(j, "exact_tolerance");
  if (j.contains("alphas")) {
    c.alphas.clear();
    for (const auto& a : j.at("alphas")) {
      c.alphas.push_back(a.is_string() ? RenyiOrder::parse(a.get<std::string>()) : RenyiOrder::of(a.get<double>()));
    }
  }
  if (j.contains("ap_lengths")) c.ap_lengths = require<std::vector<int>>(j, "ap_lengths");
  if (j.contains("ap_steps")) {
    c.ap_steps.clear();
    for (const auto& m : j.at("ap_steps")) c.ap_steps.push_back(rational_from_json(m));
  }
  auto get_families = [&](const char* key, std::vector<DistributionSpec>& dst) {
    if (!j.contains(key)) return;
    dst.clear();
    for (const auto& f : j.at(key)) dst.push_back(distribution_spec_from_json(f));
  };
  get_families("families", c.families);
  get_families("two_point_families", c.two_point_families);
}

}  // namespace lcb
