#include "lcbound/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "lcbound/bounds.hpp"
#include "lcbound/entropy.hpp"
#include "lcbound/io.hpp"
#include "lcbound/lattice_dist.hpp"
#include "lcbound/verify.hpp"

namespace lcb::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::string alpha;
  int box = 3;
  int max_n = 4;
  int length = 1;
  std::string step = "1";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct Invocation {
  std::string command;
  Options opts;
  bool has_alpha = false;
  bool has_box = false;
  bool has_max_n = false;
  bool has_length = false;
  bool has_step = false;
  bool has_seed = false;
  bool has_jobs = false;
};

std::vector<RenyiOrder> parse_alpha_grid(const std::string& text) {
  std::vector<RenyiOrder> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(RenyiOrder::parse(item));
  }
  return out;
}

std::vector<RenyiOrder> default_alpha_grid() { return SweepConfig::defaults().alphas; }

std::string read_input(const std::string& source, std::istream& in) {
  if (source.empty()) throw std::invalid_argument("--input is required for this command");
  if (source == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return source;
  std::ifstream file(source);
  if (!file) throw std::invalid_argument("cannot open input file '" + source + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

WeightedSumSpec as_sum(ParsedInput parsed) {
  if (auto* spec = std::get_if<WeightedSumSpec>(&parsed)) return std::move(*spec);
  WeightedSumSpec spec;
  spec.coefficients = {Rational(1)};
  spec.components = {std::get<LatticeDistribution>(std::move(parsed))};
  return spec;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

void print_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(width[i])) << (i < r.size() ? r[i] : "");
      os << (i + 1 < header.size() ? "  " : "\n");
    }
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::vector<std::string> report_row(const BoundReport& r) {
  return {r.theorem, r.branch, fmt(r.c), fmt(r.bound), fmt(r.raw_bound), r.applicable ? "true" : "false",
          r.informative ? "true" : "false"};
}

const std::vector<std::string> kReportHeader{"theorem", "branch", "c", "bound", "raw_bound", "applicable",
                                             "informative"};

void emit_reports(std::ostream& os, const std::string& format, const std::vector<BoundReport>& reports,
                  json extra = json::object()) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    extra["reports"] = arr;
    os << extra.dump(2) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) rows.push_back(report_row(r));
  if (format == "csv") {
    print_csv(os, kReportHeader, rows);
  } else {
    for (auto it = extra.begin(); it != extra.end(); ++it) os << it.key() << ": " << it.value().dump() << '\n';
    if (!extra.empty()) os << '\n';
    print_table(os, kReportHeader, rows);
  }
}

// Every bound whose preconditions the components meet.
std::vector<BoundReport> applicable_bounds(const std::vector<LatticeDistribution>& dists,
                                           const std::vector<RenyiOrder>& alphas, int length, bool with_ap) {
  std::vector<BoundReport> out;
  const bool lc = all_log_concave(dists);
  const bool sym = all_symmetric(dists);
  const double s = total_variance(dists);
  if (lc) {
    out.push_back(bound_concentration(dists, sym));
    for (const auto& a : alphas) out.push_back(bound_entropy_power(dists, a, sym));
    if (with_ap) out.push_back(bound_ap(dists, length, sym));
    for (const auto& a : alphas) {
      if (a.value() <= 1.0) continue;
      BoundReport r;
      r.theorem = "logconcave_upper_renyi";
      r.branch = "alpha=" + a.to_string();
      r.bound = r.raw_bound = renyi_upper_bound(s, a);
      r.c = a.is_infinite() ? 12.0 : 4.0 * (3.0 * a.value() - 1.0) / (a.value() - 1.0);
      r.inputs = {{"alpha", a.value()}, {"sum_variance", s}};
      out.push_back(r);
    }
    BoundReport sh;
    sh.theorem = "logconcave_upper_shannon";
    sh.branch = "alpha>=1";
    sh.bound = sh.raw_bound = shannon_upper_bound(s);
    sh.c = 2.0 * std::numbers::pi * std::numbers::e;
    sh.inputs = {{"sum_variance", s}};
    out.push_back(sh);
  }
  {
    BoundReport r;
    r.theorem = "sharpness_lower";
    r.branch = "any";
    r.c = 12.0;
    r.bound = r.raw_bound = sharpness_lower(dists);
    r.inputs = {{"n", static_cast<double>(dists.size())}, {"sum_variance", s}};
    out.push_back(r);
  }
  std::vector<TwoPointSpec> two;
  for (const auto& d : dists) {
    if (auto t = as_two_point(d)) two.push_back(*t);
  }
  if (two.size() == dists.size()) out.push_back(bound_two_point(two));
  if (with_ap && length >= 2) {
    if (auto inputs = bernoulli_inputs(dists, length)) out.push_back(bound_bernoulli_ap(*inputs));
  }
  if (std::all_of(dists.begin(), dists.end(), [](const auto& d) { return is_uniform_on_set(d); })) {
    for (const auto& a : alphas) {
      if (a.value() <= 2.0) out.push_back(epi_uniform_rhs(dists, a));
    }
  }
  return out;
}

int cmd_dist(const Invocation& inv, std::istream& in, std::ostream& os) {
  auto parsed = parse_spec(std::string_view(read_input(inv.opts.input, in)));
  json j = json::object();
  LatticeDistribution d = LatticeDistribution::point_mass(0);
  if (auto* spec = std::get_if<WeightedSumSpec>(&parsed)) {
    auto res = weighted_sum(*spec);
    j["scale"] = res.scale;
    j["integer_coefficients"] = res.integer_coefficients;
    d = std::move(res.distribution);
  } else {
    d = std::get<LatticeDistribution>(parsed);
  }
  const auto mom = moments(d);
  const auto center = symmetry_center(d);
  const auto alphas = inv.has_alpha ? parse_alpha_grid(inv.opts.alpha) : default_alpha_grid();
  j["distribution"] = to_json(d);
  j["mean"] = mom.mean;
  j["variance"] = mom.variance;
  j["log_concave"] = is_log_concave(d);
  j["symmetry_center"] = center ? json(*center) : json(nullptr);
  j["m_functional"] = m_functional(d);
  json table = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& a : alphas) {
    const double h = renyi_entropy(d, a);
    table.push_back({{"alpha", a.to_string()}, {"renyi_entropy", h}, {"entropy_power", entropy_power(d, a)},
                     {"delta", delta(d, a)}});
    rows.push_back({a.to_string(), fmt(h), fmt(entropy_power(d, a)), fmt(delta(d, a))});
  }
  j["entropies"] = table;
  const std::vector<std::string> header{"alpha", "renyi_entropy", "entropy_power", "delta"};
  if (inv.opts.format == "json") {
    os << j.dump(2) << '\n';
  } else if (inv.opts.format == "csv") {
    print_csv(os, header, rows);
  } else {
    os << "offset: " << d.offset() << "\npmf: " << j["distribution"]["pmf"].dump() << "\nmean: " << fmt(mom.mean)
       << "\nvariance: " << fmt(mom.variance) << "\nlog_concave: " << (is_log_concave(d) ? "yes" : "no")
       << "\nsymmetry_center: " << (center ? fmt(*center) : "none") << "\nM: " << fmt(m_functional(d)) << "\n\n";
    print_table(os, header, rows);
  }
  return kExitOk;
}

int cmd_bound(const Invocation& inv, std::istream& in, std::ostream& os) {
  const auto spec = as_sum(parse_spec(std::string_view(read_input(inv.opts.input, in))));
  const auto alphas = inv.has_alpha ? parse_alpha_grid(inv.opts.alpha) : default_alpha_grid();
  const auto reports = applicable_bounds(spec.components, alphas, inv.opts.length, inv.has_length);
  emit_reports(os, inv.opts.format, reports);
  return kExitOk;
}

int cmd_search(const Invocation& inv, std::istream& in, std::ostream& os) {
  const auto spec = as_sum(parse_spec(std::string_view(read_input(inv.opts.input, in))));
  const auto result = worst_case_search(spec.components, inv.opts.box);
  json extra = {{"worst_value", result.worst_value},
                {"witness", result.witness},
                {"evaluated", result.evaluated},
                {"box", inv.opts.box}};
  std::vector<BoundReport> reports;
  if (all_log_concave(spec.components)) {
    reports.push_back(bound_concentration(spec.components, all_symmetric(spec.components)));
  }
  BoundReport low;
  low.theorem = "sharpness_lower";
  low.branch = "any";
  low.c = 12.0;
  low.bound = low.raw_bound = sharpness_lower(spec.components);
  reports.push_back(low);
  emit_reports(os, inv.opts.format, reports, extra);
  return kExitOk;
}

int cmd_ap(const Invocation& inv, std::istream& in, std::ostream& os) {
  const auto spec = as_sum(parse_spec(std::string_view(read_input(inv.opts.input, in))));
  const auto step = Rational::parse(inv.opts.step);
  const int l = inv.opts.length;
  const auto res = weighted_sum(spec);
  // The computed law is that of scale * (a.X); rescale the progression with it.
  const Rational scaled_step = step * Rational(res.scale);
  const auto hit = ap_sup_probability(res.distribution, l, scaled_step);
  const double conv = ap_sup_probability_via_convolution(res.distribution, l, scaled_step);
  json extra = {{"l", l},
                {"m", step.to_string()},
                {"value", hit.value},
                {"witness_x", (hit.witness_x / Rational(res.scale)).to_string()},
                {"via_convolution", conv}};
  std::vector<BoundReport> reports;
  if (all_log_concave(spec.components)) reports.push_back(bound_ap(spec.components, l, all_symmetric(spec.components)));
  if (l >= 2) {
    if (auto inputs = bernoulli_inputs(spec.components, l)) reports.push_back(bound_bernoulli_ap(*inputs));
  }
  emit_reports(os, inv.opts.format, reports, extra);
  return kExitOk;
}

int cmd_verify(const Invocation& inv, std::ostream& os, std::ostream& err) {
  auto config = SweepConfig::defaults();
  if (const char* path = std::getenv(kConfigEnv); path != nullptr && *path != '\0') {
    std::ifstream file(path);
    if (!file) throw std::invalid_argument(std::string("cannot open config file '") + path + "'");
    json j;
    try {
      j = json::parse(file);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
    }
    apply_config_json(config, j);
  }
  if (inv.has_alpha) config.alphas = parse_alpha_grid(inv.opts.alpha);
  if (inv.has_box) config.box = inv.opts.box;
  if (inv.has_max_n) config.max_n = inv.opts.max_n;
  if (inv.has_length) config.ap_lengths = {inv.opts.length};
  if (inv.has_step) config.ap_steps = {Rational::parse(inv.opts.step)};
  if (inv.has_seed) config.seed = inv.opts.seed;
  if (inv.has_jobs) config.jobs = inv.opts.jobs;

  const auto report = run_suite(config);
  if (inv.opts.format == "json") {
    os << to_json(report).dump(2) << '\n';
  } else if (inv.opts.format == "csv") {
    write_csv(os, report);
  } else {
    struct Tally {
      std::size_t total = 0, pass = 0, fail = 0, pre = 0;
      double min_slack = std::numeric_limits<double>::infinity();
    };
    std::map<std::string, Tally> by_theorem;
    for (const auto& r : report.cases) {
      auto& t = by_theorem[r.theorem];
      ++t.total;
      if (r.status == CaseStatus::pass) ++t.pass;
      if (r.status == CaseStatus::fail) ++t.fail;
      if (r.status == CaseStatus::precondition_failed) ++t.pre;
      if (r.status != CaseStatus::precondition_failed) t.min_slack = std::min(t.min_slack, r.slack);
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& [name, t] : by_theorem) {
      rows.push_back({name, std::to_string(t.total), std::to_string(t.pass), std::to_string(t.fail),
                      std::to_string(t.pre), t.pass + t.fail ? fmt(t.min_slack) : "-"});
    }
    print_table(os, {"theorem", "cases", "pass", "fail", "precondition_failed", "min_slack"}, rows);
    os << "\ntotal " << report.cases.size() << ", failed " << report.failed << ", " << fmt(report.wall_seconds)
       << " s\n";
  }
  if (!report.all_pass()) {
    err << "verification failed: " << report.failed << " case(s) violate their bound\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Invocation inv;
  CLI::App app{"Anti-concentration and entropy bounds for weighted sums of discrete log-concave variables",
               "lcbound"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  auto* input = app.add_option("--input", inv.opts.input, "Input JSON: a file path, '-' for stdin, or inline JSON");
  app.add_option("--output", inv.opts.output, "Write the report to this path instead of stdout");
  app.add_option("--format", inv.opts.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
  auto* alpha = app.add_option("--alpha", inv.opts.alpha, "Comma-separated Renyi orders, e.g. 0,0.5,1,2,inf");
  auto* box = app.add_option("--box", inv.opts.box, "Coefficient magnitude cap for searches")->check(CLI::PositiveNumber);
  auto* max_n = app.add_option("--max-n", inv.opts.max_n, "Largest number of components in sweeps")
                    ->check(CLI::PositiveNumber);
  auto* length = app.add_option("--l", inv.opts.length, "Arithmetic progression length")->check(CLI::PositiveNumber);
  auto* step = app.add_option("--m", inv.opts.step, "Arithmetic progression step, integer or p/q");
  auto* seed = app.add_option("--seed", inv.opts.seed, "Seed for sampled pushforward-map and uniform-set cases");
  auto* jobs = app.add_option("--jobs", inv.opts.jobs, "Worker threads for verify")->check(CLI::PositiveNumber);
  (void)input;

  app.add_subcommand("dist", "Moments, log-concavity, symmetry and Renyi entropies of a distribution");
  app.add_subcommand("bound", "Every applicable closed-form bound for the given components");
  app.add_subcommand("verify", "Run the certification sweep");
  app.add_subcommand("search", "Exhaustive worst-case coefficient search for M(a.X)");
  app.add_subcommand("ap", "Arithmetic-progression concentration and its bounds");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("lcbound");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  inv.command = app.get_subcommands().front()->get_name();
  inv.has_alpha = alpha->count() > 0;
  inv.has_box = box->count() > 0;
  inv.has_max_n = max_n->count() > 0;
  inv.has_length = length->count() > 0;
  inv.has_step = step->count() > 0;
  inv.has_seed = seed->count() > 0;
  inv.has_jobs = jobs->count() > 0;

  std::ofstream file;
  std::ostringstream buffer;
  try {
    int code = kExitOk;
    if (inv.command == "dist") code = cmd_dist(inv, in, buffer);
    if (inv.command == "bound") code = cmd_bound(inv, in, buffer);
    if (inv.command == "search") code = cmd_search(inv, in, buffer);
    if (inv.command == "ap") code = cmd_ap(inv, in, buffer);
    if (inv.command == "verify") code = cmd_verify(inv, buffer, err);
    if (!inv.opts.output.empty()) {
      file.open(inv.opts.output);
      if (!file) throw std::invalid_argument("cannot open output file '" + inv.opts.output + "'");
      file << buffer.str();
    } else {
      out << buffer.str();
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace lcb::cli
