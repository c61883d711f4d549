#include "hypergon/cli.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "hypergon/io.hpp"
#include "hypergon/verify.hpp"

namespace hypergon::cli {

namespace {

using io::Json;

struct Globals {
  double tol = 1e-11;
  long max_iters = 1'000'000;
  std::uint64_t seed = 1;
  std::string model = "ball";
  int jobs = 1;
};

class Context {
 public:
  Context(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  Json read(const std::string& path) const {
    if (path == "-") return io::parse_json(in_);
    return io::read_json(path);
  }

  void write_text(const std::string& path, const std::string& text) const {
    if (path == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << text;
    if (!f) throw IoError("write failed for '" + path + "'");
  }

  void write(const std::string& path, const Json& doc) const { write_text(path, io::dump(doc)); }

 private:
  std::istream& in_;
  std::ostream& out_;
};

gaussmap::FixedPointOptions solver_options(const Globals& g, bool anderson) {
  gaussmap::FixedPointOptions o;
  o.tol = g.tol;
  o.max_iterations = g.max_iters;
  o.anderson = anderson;
  return o;
}

Json stability_json(const gaussmap::StabilityClass& s) {
  Json j;
  j["class"] = gaussmap::stability_name(s.kind);
  j["clusters"] = s.clusters;
  j["cluster_weights"] = s.cluster_weights;
  return j;
}

// Accepts a bare object or one wrapped in a typed document.
const Json& payload(const Json& doc, const char* key) {
  if (doc.contains(key) && doc[key].is_object()) return doc[key];
  return doc;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw IoError("bad number '" + item + "' in list");
    }
  }
  return out;
}

// ------------------------------------------------------------- commands

void cmd_close(const Context& ctx, const Globals& g, const std::string& input, const std::string& output,
               bool anderson) {
  const Json doc = ctx.read(input);
  io::check_document(doc, "");
  const auto c = io::configuration_from_json(payload(doc, "configuration"));
  const auto cls = gaussmap::classify_stability(c);
  if (cls.kind != gaussmap::Stability::Stable)
    throw DomainError(std::string("configuration not stable (") + gaussmap::stability_name(cls.kind) + ")");
  const auto inv = gaussmap::inverse_gauss_h(c, solver_options(g, anderson));
  Json out = io::document("close");
  out["polygon"] = io::to_json(inv.polygon, hyp3::model_from_name(g.model));
  out["basing"] = io::to_json(inv.basing);
  out["report"] = io::to_json(inv.report);
  out["closure_residual"] = moduli::closure_residual(inv.polygon);
  ctx.write(output, out);
}

void cmd_gauss(const Context& ctx, const std::string& input, const std::string& output, const std::string& space) {
  const Json doc = ctx.read(input);
  io::check_document(doc, "");
  const Json& body = payload(doc, "polygon");
  gaussmap::Configuration c;
  if (space == "h")
    c = gaussmap::gauss_h(io::hpolygon_from_json(body));
  else if (space == "e")
    c = gaussmap::gauss_e(io::epolygon_from_json(body));
  else
    throw IoError("--space must be h or e");
  Json out = io::document("configuration");
  out["configuration"] = io::to_json(c);
  out["stability"] = stability_json(gaussmap::classify_stability(c));
  ctx.write(output, out);
}

void cmd_bend(const Context& ctx, const Globals& g, const std::string& input, const std::string& output, int k,
              const std::string& ts, bool normalized, bool period, int steps) {
  const Json doc = ctx.read(input);
  io::check_document(doc, "");
  const auto p = io::hpolygon_from_json(payload(doc, "polygon"));
  const int n = static_cast<int>(p.size());
  if (k < 1 || k > n) throw DomainError("k must lie in 1..n");
  std::vector<double> grid;
  if (period) {
    if (steps < 1) throw IoError("--steps must be positive");
    const double T = bending::bend_period(p.word(), k, normalized);
    for (int s = 0; s <= steps; ++s) grid.push_back(T * s / steps);
  } else {
    grid = parse_list(ts);
  }
  const auto model = hyp3::model_from_name(g.model);

  std::ostringstream csv;
  csv << "t";
  for (int v = 1; v <= n + 1; ++v)
    for (int c = 0; c < (model == hyp3::Model::Hyperboloid ? 4 : 3); ++c) csv << ",x" << v << "_" << c;
  for (int m = 1; m <= n - 3; ++m) csv << ",l" << m;
  for (int m = 1; m <= n - 3; ++m) csv << ",theta" << m;
  csv << "\n";
  for (double t : grid) {
    const moduli::HPolygon q(bending::bend_flow(p.word(), k, t, normalized));
    csv << io::format_double(t);
    for (const auto& x : q.vertices_h())
      for (double c : hyp3::HPoint::in_model(x, model).coords()) csv << "," << io::format_double(c);
    std::vector<double> theta(std::max(0, n - 3), std::numeric_limits<double>::quiet_NaN());
    std::vector<double> lengths;
    for (int m = 1; m <= n - 3; ++m) lengths.push_back(bending::diag_length(q.word(), 1, m + 2));
    try {
      if (n >= 4) theta = bending::measure(q).angles;
    } catch (const DomainError&) {
      // Degenerate fan triangle: angles undefined, left as nan.
    }
    for (double l : lengths) csv << "," << io::format_double(l);
    for (double a : theta) csv << "," << io::format_double(a);
    csv << "\n";
  }
  ctx.write_text(output, csv.str());
}

void cmd_sample(const Context& ctx, const Globals& g, const std::string& input, const std::string& r_list,
                const std::string& output, int count) {
  moduli::Weights r;
  if (!r_list.empty()) {
    r = moduli::Weights(parse_list(r_list));
  } else {
    const Json doc = ctx.read(input);
    io::check_document(doc, "");
    r = io::weights_from_json(payload(doc, "weights"));
  }
  if (r.size() < 3) throw DomainError("sampling needs n >= 3");
  const auto samples = bending::sample_polyhedron(r, count, g.seed);
  std::mt19937_64 rng(g.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Json items = Json::array();
  for (const auto& l : samples) {
    bending::ActionAngle aa{l, {}};
    for (std::size_t m = 0; m < l.size(); ++m) aa.angles.push_back(angle(rng));
    const auto p = bending::reconstruct(r, aa);
    Json item;
    item["action_angle"] = io::to_json(aa);
    item["in_polyhedron"] = bending::momentum_polyhedron_contains(r, l);
    item["polygon"] = io::to_json(p, hyp3::model_from_name(g.model));
    item["closure_residual"] = moduli::closure_residual(p);
    items.push_back(item);
  }
  Json out = io::document("samples");
  out["weights"] = io::to_json(r);
  out["seed"] = g.seed;
  out["samples"] = items;
  ctx.write(output, out);
}

void cmd_center(const Context& ctx, const Globals& g, const std::string& input, const std::string& output,
                const std::string& shrink) {
  const Json doc = ctx.read(input);
  io::check_document(doc, "");
  const auto c = io::configuration_from_json(payload(doc, "configuration"));
  const auto center = gaussmap::conformal_center(c);
  const auto model = hyp3::model_from_name(g.model);
  Json out = io::document("center");
  out["center"] = io::to_json(hyp3::convert(center.point, model));
  out["gradient_norm"] = center.gradient_norm;
  out["iterations"] = center.iterations;
  if (!shrink.empty()) {
    const auto ts = parse_list(shrink);
    const auto rep = gaussmap::shrink_limit_check(c, ts, solver_options(g, false));
    Json s;
    s["t"] = rep.t;
    s["distance"] = rep.distance;
    s["rate"] = rep.rate;
    s["monotone"] = rep.monotone;
    s["rate_spread"] = rep.rate_spread;
    Json pts = Json::array();
    for (const auto& x : gaussmap::shrink_curve(c, ts, solver_options(g, false)))
      pts.push_back(io::to_json(hyp3::convert(x, model)));
    s["points"] = pts;
    out["shrink"] = s;
  }
  ctx.write(output, out);
}

int cmd_verify(const Context& ctx, const Globals& g, const std::string& suite, int n, int samples,
               const std::string& output) {
  verify::Options o;
  o.n = n;
  o.samples = samples;
  o.seed = g.seed;
  o.jobs = g.jobs;
  const auto rep = verify::run(suite, o);
  Json out = io::document("verify");
  out["suite"] = suite;
  out["identity"] = rep.identity;
  out["n"] = n;
  out["seed"] = g.seed;
  out["samples"] = rep.samples;
  out["max_abs"] = rep.max_abs;
  out["fd_error_estimate"] = rep.fd_error_estimate;
  out["pass"] = rep.pass;
  Json extra = Json::object();
  for (const auto& [k, v] : rep.extra) extra[k] = v;
  out["extra"] = extra;
  ctx.write(output, out);
  return rep.pass ? 0 : 1;
}

void cmd_transfer(const Context& ctx, const Globals& g, const std::string& input, const std::string& output,
                  const std::string& direction) {
  const Json doc = ctx.read(input);
  io::check_document(doc, "");
  const Json& body = payload(doc, "polygon");
  Json out = io::document("polygon");
  if (direction == "e2h") {
    out["space"] = "h";
    out["polygon"] =
        io::to_json(gaussmap::transfer_e_to_h(io::epolygon_from_json(body), solver_options(g, false)),
                    hyp3::model_from_name(g.model));
  } else if (direction == "h2e") {
    out["space"] = "e";
    out["polygon"] = io::to_json(gaussmap::transfer_h_to_e(io::hpolygon_from_json(body)));
  } else {
    throw IoError("--direction must be e2h or h2e");
  }
  ctx.write(output, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed polygons in hyperbolic 3-space: closing, Gauss maps, bending, verification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iters", g.max_iters, "iteration budget")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--model", g.model, "output model")->check(CLI::IsMember({"ball", "half_space", "hyperboloid"}));
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string input = "-", output = "-";
  auto io_opts = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("-i,--input", input, "input path, - for stdin");
    sub->add_option("-o,--output", output, "output path, - for stdout");
  };

  bool anderson = false;
  auto* close = app.add_subcommand("close", "close a stable configuration (inverse Gauss map)");
  io_opts(close);
  close->add_flag("--anderson", anderson, "Anderson acceleration");

  std::string space = "h";
  auto* gauss = app.add_subcommand("gauss", "Gauss map of a polygon");
  io_opts(gauss);
  gauss->add_option("--space", space, "h or e")->check(CLI::IsMember({"h", "e"}));

  int k = 1, steps = 64;
  std::string ts = "0";
  bool normalized = false, period = false;
  auto* bend = app.add_subcommand("bend", "bending flow trajectory as CSV");
  io_opts(bend);
  bend->add_option("-k", k, "flow index (letters 1..k are dressed)")->required();
  bend->add_option("--t", ts, "comma-separated times");
  bend->add_flag("--normalized", normalized, "unit-period normalization");
  bend->add_flag("--period", period, "sample one full period");
  bend->add_option("--steps", steps, "grid steps with --period");

  int count = 10;
  std::string r_list;
  auto* sample = app.add_subcommand("sample", "sample the momentum polyhedron and reconstruct polygons");
  io_opts(sample);
  sample->add_option("--r", r_list, "comma-separated side lengths (instead of --input)");
  sample->add_option("--count", count, "number of samples")->check(CLI::NonNegativeNumber);

  std::string shrink;
  auto* center = app.add_subcommand("center", "conformal center of mass");
  io_opts(center);
  center->add_option("--shrink", shrink, "comma-separated t values for the shrink curve");

  std::string suite;
  int n = 5, samples = 20;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  io_opts(ver);
  ver->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(verify::suite_names()));
  ver->add_option("--n", n, "polygon size");
  ver->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);

  std::string direction;
  auto* transfer = app.add_subcommand("transfer", "E3 <-> H3 transfer");
  io_opts(transfer);
  transfer->add_option("--direction", direction, "e2h or h2e")->required()->check(CLI::IsMember({"e2h", "h2e"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }

  const Context ctx(in, out);
  try {
    if (*close) cmd_close(ctx, g, input, output, anderson);
    if (*gauss) cmd_gauss(ctx, input, output, space);
    if (*bend) cmd_bend(ctx, g, input, output, k, ts, normalized, period, steps);
    if (*sample) cmd_sample(ctx, g, input, r_list, output, count);
    if (*center) cmd_center(ctx, g, input, output, shrink);
    if (*ver) return cmd_verify(ctx, g, suite, n, samples, output);
    if (*transfer) cmd_transfer(ctx, g, input, output, direction);
  } catch (const DomainError& e) {
    err << "rejected: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << " (residual " << e.residual() << ")\n";
    return 3;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace hypergon::cli
